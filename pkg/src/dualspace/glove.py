"""Count-based dual embedding training: global co-occurrence accumulation and
AdaGrad weighted least-squares fitting with bias terms.

The objective per stored co-occurrence cell is
f(X_ij) * (w_i . c_j + b_i + bt_j - log X_ij)^2 with the saturating weight
f(x) = (x/x_max)^alpha below x_max and 1 at or above it.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .corpus import Vocabulary
from .embedding import DualEmbedding
from .validation import check_positive_float, check_positive_int

_COOC_MAGIC = b"COOC0001"
_TRIPLE = struct.Struct("<IId")


@dataclass(frozen=True)
class GloveConfig:
    dim: int = 100
    window: int = 5
    epochs: int = 25
    learning_rate: float = 0.05
    x_max: float = 100.0
    alpha: float = 0.75
    distance_weighting: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        check_positive_int("dim", self.dim)
        check_positive_int("window", self.window)
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        check_positive_float("learning_rate", self.learning_rate)
        check_positive_float("x_max", self.x_max)
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass
class CoocMatrix:
    """Sparse symmetric co-occurrence counts; absent pairs are implicit zeros."""

    entries: dict[tuple[int, int], float]
    vocab_size: int

    def __post_init__(self) -> None:
        for (i, j), x in self.entries.items():
            if x <= 0:
                raise ValueError(f"stored co-occurrence must be positive: ({i},{j})={x}")

    def __len__(self) -> int:
        return len(self.entries)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Stored entries as (i, j, x) arrays in sorted key order."""
        keys = sorted(self.entries)
        i = np.fromiter((k[0] for k in keys), dtype=np.int64, count=len(keys))
        j = np.fromiter((k[1] for k in keys), dtype=np.int64, count=len(keys))
        x = np.fromiter((self.entries[k] for k in keys), dtype=np.float64, count=len(keys))
        return i, j, x


def _tally_distances(stream: Iterable[Sequence[int]], window: int) -> Counter:
    """Integer (i, j, distance) counts for every in-window ordered pair."""
    tally: Counter[tuple[int, int, int]] = Counter()
    for sent in stream:
        length = len(sent)
        for t in range(length):
            a = sent[t]
            for d in range(1, window + 1):
                u = t + d
                if u >= length:
                    break
                b = sent[u]
                tally[(a, b, d)] += 1
                tally[(b, a, d)] += 1
    return tally


def _weigh_tally(
    tally: Counter, distance_weighting: bool, vocab_size: int | None
) -> CoocMatrix:
    entries: dict[tuple[int, int], float] = {}
    max_id = -1
    for (i, j, d) in sorted(tally):
        weight = 1.0 / d if distance_weighting else 1.0
        key = (i, j)
        entries[key] = entries.get(key, 0.0) + tally[(i, j, d)] * weight
        if i > max_id:
            max_id = i
    if vocab_size is None:
        vocab_size = max_id + 1
    return CoocMatrix(entries=entries, vocab_size=vocab_size)


def accumulate_cooc(
    stream: Iterable[Sequence[int]],
    window: int,
    distance_weighting: bool = True,
    vocab_size: int | None = None,
) -> CoocMatrix:
    """Count windowed co-occurrences over a sentence stream.

    Each unordered co-occurrence within `window` adds 1 (or 1/distance) to
    both the (i,j) and (j,i) cells. Counts are tallied per distance as
    integers and weighted afterwards, so the result is exactly independent of
    sentence and token order.
    """
    check_positive_int("window", window)
    return _weigh_tally(_tally_distances(stream, window), distance_weighting, vocab_size)


def accumulate_cooc_sharded(
    shards: Sequence[Iterable[Sequence[int]]],
    window: int,
    distance_weighting: bool = True,
    vocab_size: int | None = None,
) -> CoocMatrix:
    """Accumulate sentence shards independently and merge.

    The merge happens on the integer distance tallies, so the result equals
    `accumulate_cooc` over the concatenated stream exactly, regardless of how
    sentences are split across shards.
    """
    check_positive_int("window", window)
    merged: Counter = Counter()
    for shard in shards:
        merged.update(_tally_distances(shard, window))
    return _weigh_tally(merged, distance_weighting, vocab_size)


def weight_fn(x: float, x_max: float = 100.0, alpha: float = 0.75) -> float:
    """Saturating co-occurrence weight: (x/x_max)^alpha below x_max, else 1."""
    if x < 0:
        raise ValueError(f"co-occurrence value must be >= 0, got {x}")
    if x < x_max:
        return float((x / x_max) ** alpha)
    return 1.0


def glove_loss(
    w_i, c_j, b_i: float, b_j: float, x: float, x_max: float = 100.0, alpha: float = 0.75
) -> float:
    """Weighted squared residual for one stored cell; total loss sums over cells."""
    if x <= 0:
        raise ValueError(f"glove_loss requires a positive co-occurrence, got {x}")
    w_i = np.asarray(w_i, dtype=np.float64)
    c_j = np.asarray(c_j, dtype=np.float64)
    if w_i.shape != c_j.shape:
        raise ValueError(f"dimension mismatch: {w_i.shape} vs {c_j.shape}")
    residual = float(w_i @ c_j) + float(b_i) + float(b_j) - float(np.log(x))
    return weight_fn(x, x_max, alpha) * residual * residual


def glove_gradients(
    w_i, c_j, b_i: float, b_j: float, x: float, x_max: float = 100.0, alpha: float = 0.75
):
    """Analytic gradients of `glove_loss` w.r.t. (w_i, c_j, b_i, b_j)."""
    w_i = np.asarray(w_i, dtype=np.float64)
    c_j = np.asarray(c_j, dtype=np.float64)
    residual = float(w_i @ c_j) + float(b_i) + float(b_j) - float(np.log(x))
    common = 2.0 * weight_fn(x, x_max, alpha) * residual
    return common * c_j, common * w_i, common, common


def total_glove_loss(
    W: np.ndarray,
    C: np.ndarray,
    b: np.ndarray,
    bt: np.ndarray,
    cooc: CoocMatrix,
    config: GloveConfig,
) -> float:
    """Objective value summed over all stored entries (vectorized)."""
    i, j, x = cooc.arrays()
    if len(i) == 0:
        return 0.0
    fx = np.minimum((x / config.x_max) ** config.alpha, 1.0)
    resid = (
        np.einsum("ij,ij->i", W[i].astype(np.float64), C[j].astype(np.float64))
        + b[i].astype(np.float64)
        + bt[j].astype(np.float64)
        - np.log(x)
    )
    return float((fx * resid * resid).sum())


def train_glove(
    cooc: CoocMatrix,
    config: GloveConfig,
    vocab: Vocabulary | None = None,
    on_epoch_end: Callable[[int, float], None] | None = None,
) -> DualEmbedding:
    """AdaGrad SGD over the stored entries, shuffled each epoch by a seeded RNG.

    Deterministic under a fixed seed when single-threaded (the only mode for
    the entry loop; co-occurrence accumulation is the shardable stage).
    Returns a DualEmbedding retaining W, C and both bias vectors.
    """
    if len(cooc) == 0:
        raise ValueError("empty co-occurrence matrix")
    size = cooc.vocab_size
    if vocab is not None and len(vocab) != size:
        raise ValueError(
            f"vocabulary size {len(vocab)} != co-occurrence vocab_size {size}"
        )
    rng = np.random.default_rng(config.seed)
    dim = config.dim
    W = (rng.random((size, dim), dtype=np.float32) - np.float32(0.5)) / np.float32(dim)
    C = (rng.random((size, dim), dtype=np.float32) - np.float32(0.5)) / np.float32(dim)
    b = np.zeros(size, dtype=np.float32)
    bt = np.zeros(size, dtype=np.float32)
    # AdaGrad accumulators start at 1.0 to avoid first-step blowups
    Gw = np.ones((size, dim), dtype=np.float32)
    Gc = np.ones((size, dim), dtype=np.float32)
    Gb = np.ones(size, dtype=np.float32)
    Gbt = np.ones(size, dtype=np.float32)
    i_arr, j_arr, x_arr = cooc.arrays()
    logx = np.log(x_arr).astype(np.float32)
    fx = np.minimum((x_arr / config.x_max) ** config.alpha, 1.0).astype(np.float32)
    lr = np.float32(config.learning_rate)
    n = len(i_arr)
    for epoch in range(config.epochs):
        order = rng.permutation(n)
        for idx in order:
            i = i_arr[idx]
            j = j_arr[idx]
            w_row = W[i]
            c_row = C[j]
            residual = w_row @ c_row + b[i] + bt[j] - logx[idx]
            if not np.isfinite(residual):
                raise FloatingPointError(f"non-finite residual at cell ({i},{j})")
            common = 2.0 * fx[idx] * residual
            gw = common * c_row
            gc = common * w_row
            W[i] = w_row - lr * gw / np.sqrt(Gw[i])
            C[j] = c_row - lr * gc / np.sqrt(Gc[j])
            Gw[i] += gw * gw
            Gc[j] += gc * gc
            b[i] -= lr * common / np.sqrt(Gb[i])
            bt[j] -= lr * common / np.sqrt(Gbt[j])
            Gb[i] += common * common
            Gbt[j] += common * common
        if on_epoch_end is not None:
            on_epoch_end(epoch, total_glove_loss(W, C, b, bt, cooc, config))
    if vocab is None:
        tokens = [str(i) for i in range(size)]
        vocab = Vocabulary(
            token_to_id={t: i for i, t in enumerate(tokens)},
            id_to_token=tokens,
            counts=[1] * size,
            total_tokens=size,
        )
    metadata = {
        "trainer": "glove",
        "window": str(config.window),
        "dim": str(config.dim),
        "seed": str(config.seed),
        "epochs": str(config.epochs),
        "x_max": str(config.x_max),
        "alpha": str(config.alpha),
        "distance_weighting": str(int(config.distance_weighting)),
    }
    return DualEmbedding(vocab, W, C, metadata=metadata, biases=(b, bt))


def save_cooc(cooc: CoocMatrix, path, flags: dict | None = None) -> None:
    """Write binary (i, j, x) triples with a COOC0001 magic header, plus a text
    meta file `<path>.meta` carrying vocab_size and build flags."""
    with open(path, "wb") as fh:
        fh.write(_COOC_MAGIC)
        for (i, j) in sorted(cooc.entries):
            fh.write(_TRIPLE.pack(i, j, cooc.entries[(i, j)]))
    lines = [f"vocab_size={cooc.vocab_size}"]
    for key, value in sorted((flags or {}).items()):
        lines.append(f"{key}={value}")
    Path(str(path) + ".meta").write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_cooc(path) -> tuple[CoocMatrix, dict[str, str]]:
    """Inverse of `save_cooc`; returns the matrix and the build flags."""
    meta: dict[str, str] = {}
    meta_path = Path(str(path) + ".meta")
    for line in meta_path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            meta[key] = value
    if "vocab_size" not in meta:
        raise ValueError(f"{meta_path}: missing vocab_size")
    vocab_size = int(meta.pop("vocab_size"))
    entries: dict[tuple[int, int], float] = {}
    with open(path, "rb") as fh:
        if fh.read(len(_COOC_MAGIC)) != _COOC_MAGIC:
            raise ValueError(f"{path}: bad magic, not a COOC0001 file")
        while True:
            buf = fh.read(_TRIPLE.size)
            if not buf:
                break
            if len(buf) != _TRIPLE.size:
                raise ValueError(f"{path}: truncated triple")
            i, j, x = _TRIPLE.unpack(buf)
            entries[(int(i), int(j))] = x
    return CoocMatrix(entries=entries, vocab_size=vocab_size), meta
