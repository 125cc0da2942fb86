"""dualspace: a train-and-evaluate laboratory for dual-space word embeddings.

Both trainers (window-based prediction with negative sampling, and global
co-occurrence least squares) retain their two weight matrices W and C; the
query layer resolves compare methods (WW, WC, CW, CC, SS, AA) onto them and
the evaluation harness scores every variant on similarity, association and
analogy tasks.
"""

from .corpus import Vocabulary, build_vocab, encode, normalize
from .embedding import (
    CompareMethod,
    DualEmbedding,
    cosine,
    load_embedding,
    nearest,
    save_embedding,
)
from .estimators import GloveEmbedder, SgnsEmbedder, TextNormalizer
from .evaluation import (
    AnalogyQuestion,
    CueResponseSet,
    SimilarityPair,
    TaskScore,
    bats_join,
    eval_analogy,
    eval_association,
    eval_similarity,
    pearson,
    three_cos_mul,
)
from .glove import CoocMatrix, GloveConfig, accumulate_cooc, train_glove, weight_fn
from .manifest import TOOL_VERSION as __version__
from .sgns import SgnsConfig, sample_negatives, sgns_loss, sgns_step, train_sgns

__all__ = [
    "AnalogyQuestion",
    "CompareMethod",
    "CoocMatrix",
    "CueResponseSet",
    "DualEmbedding",
    "GloveConfig",
    "GloveEmbedder",
    "SgnsConfig",
    "SgnsEmbedder",
    "SimilarityPair",
    "TaskScore",
    "TextNormalizer",
    "Vocabulary",
    "bats_join",
    "build_vocab",
    "cosine",
    "encode",
    "eval_analogy",
    "eval_association",
    "eval_similarity",
    "load_embedding",
    "nearest",
    "normalize",
    "pearson",
    "sample_negatives",
    "save_embedding",
    "sgns_loss",
    "sgns_step",
    "three_cos_mul",
    "train_glove",
    "train_sgns",
    "accumulate_cooc",
    "weight_fn",
    "__version__",
]
