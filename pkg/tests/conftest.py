import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dualspace.corpus import Vocabulary
from dualspace.embedding import DualEmbedding

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


def make_vocab(tokens, counts=None, total=None) -> Vocabulary:
    counts = counts if counts is not None else [1] * len(tokens)
    return Vocabulary(
        token_to_id={t: i for i, t in enumerate(tokens)},
        id_to_token=list(tokens),
        counts=list(counts),
        total_tokens=total if total is not None else sum(counts),
    )


@pytest.fixture
def hand_embedding() -> DualEmbedding:
    """Three tokens with hand-set W vectors (C = shifted copies) for exact ranking."""
    vocab = make_vocab(["alpha", "beta", "gamma"], counts=[3, 2, 1])
    W = np.array([[1.0, 0.0], [0.8, 0.6], [0.0, 1.0]], dtype=np.float32)
    C = np.array([[0.0, 1.0], [0.6, 0.8], [1.0, 0.0]], dtype=np.float32)
    return DualEmbedding(vocab, W, C)
