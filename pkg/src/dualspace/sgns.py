"""Window-based dual embedding training: CBOW and skip-gram with negative sampling.

Both weight matrices are kept: W holds the input-side vectors updated for each
training example's input words, C holds the output-side vectors updated for the
predicted word and its sampled negatives. A positive pair's vectors are pulled
towards each other; negative pairs are pushed apart.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .corpus import Vocabulary
from .embedding import DualEmbedding
from .manifest import derive_seed
from .validation import check_in, check_positive_float, check_positive_int

METHODS = ("cbow", "sg")

# SG examples are (input id, predicted id) int pairs; CBOW examples are
# (context id tuple, predicted id).
SgPair = tuple[int, int]
CbowPair = tuple[tuple[int, ...], int]

LR_FLOOR_FACTOR = 1e-4  # linear decay endpoint: learning_rate / 1e4


@dataclass(frozen=True)
class SgnsConfig:
    method: str = "sg"
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    noise_power: float = 0.75
    seed: int = 0

    def __post_init__(self) -> None:
        check_in("method", self.method, METHODS)
        check_positive_int("dim", self.dim)
        check_positive_int("window", self.window)
        check_positive_int("negatives", self.negatives)
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        check_positive_float("learning_rate", self.learning_rate)


class NoiseDistribution:
    """Frequency-dependent noise distribution P_n over vocabulary ids.

    Probabilities are proportional to counts**power; power 0 gives uniform
    draws regardless of counts.
    """

    def __init__(self, counts: Sequence[int], power: float = 0.75):
        weights = np.asarray(counts, dtype=np.float64) ** power
        if weights.ndim != 1 or len(weights) == 0:
            raise ValueError("counts must be a non-empty 1-d sequence")
        if not np.all(weights > 0):
            raise ValueError("every in-vocab id needs nonzero mass")
        self.probabilities = weights / weights.sum()
        self.cumulative = np.cumsum(self.probabilities)
        # guard against cumulative rounding ever excluding the last id
        self.cumulative[-1] = 1.0
        self.power = power

    def __len__(self) -> int:
        return len(self.cumulative)


def build_noise_distribution(vocab: Vocabulary, power: float = 0.75) -> NoiseDistribution:
    return NoiseDistribution(vocab.counts, power)


def sample_negatives(
    dist: NoiseDistribution, m: int, exclude: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw m ids i.i.d. from the noise distribution, redrawing hits on `exclude`."""
    check_positive_int("m", m)
    if len(dist) < 2:
        raise ValueError("no valid negative exists for a vocabulary of size 1")
    negs = np.searchsorted(dist.cumulative, rng.random(m))
    while True:
        bad = negs == exclude
        n_bad = int(bad.sum())
        if n_bad == 0:
            return negs
        negs[bad] = np.searchsorted(dist.cumulative, rng.random(n_bad))


def generate_pairs(
    stream: Iterable[Sequence[int]], window: int, method: str
) -> Iterator[SgPair | CbowPair]:
    """Emit training examples position by position, never crossing sentences.

    For each position, the context is every token within `window` on either
    side. SG yields one (input, predicted) pair per context word; CBOW yields
    one (context tuple, predicted) example per position. Positions with no
    context yield nothing.
    """
    check_positive_int("window", window)
    check_in("method", method, METHODS)
    sg = method == "sg"
    for sent in stream:
        length = len(sent)
        for t in range(length):
            lo = max(0, t - window)
            hi = min(length, t + window + 1)
            if hi - lo <= 1:
                continue
            if sg:
                target = sent[t]
                for u in range(lo, hi):
                    if u != t:
                        yield (target, sent[u])
            else:
                context = tuple(sent[u] for u in range(lo, hi) if u != t)
                yield (context, sent[t])


def count_examples(stream: Iterable[Sequence[int]], window: int, method: str) -> int:
    """Number of examples one epoch over the stream produces (for LR scheduling)."""
    total = 0
    for sent in stream:
        length = len(sent)
        for t in range(length):
            span = min(length, t + window + 1) - max(0, t - window) - 1
            if span <= 0:
                continue
            total += span if method == "sg" else 1
    return total


def sigmoid(x):
    """Numerically stable logistic function, exact for arbitrarily large |x|."""
    x = np.asarray(x, dtype=np.float64)
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def log_sigmoid(x):
    """log(sigmoid(x)) without overflow or log(0) for large |x|."""
    x = np.asarray(x, dtype=np.float64)
    return -np.logaddexp(0.0, -x)


def sgns_loss(w_in, c_pos, c_negs=()) -> float:
    """Negated training objective for one example.

    loss = -log sigmoid(w_in . c_pos) - sum_k log sigmoid(-w_in . c_k);
    approaches 0 as the positive dot grows and the negative dots shrink.
    """
    w_in = np.asarray(w_in, dtype=np.float64)
    c_pos = np.asarray(c_pos, dtype=np.float64)
    if w_in.shape != c_pos.shape:
        raise ValueError(f"dimension mismatch: {w_in.shape} vs {c_pos.shape}")
    loss = -log_sigmoid(w_in @ c_pos)
    for c_neg in c_negs:
        c_neg = np.asarray(c_neg, dtype=np.float64)
        if c_neg.shape != w_in.shape:
            raise ValueError(f"dimension mismatch: {w_in.shape} vs {c_neg.shape}")
        loss -= log_sigmoid(-(w_in @ c_neg))
    return float(loss)


def sgns_gradients(w_in, c_pos, c_negs=()):
    """Analytic gradients of `sgns_loss` w.r.t. the input, positive and negative vectors."""
    w_in = np.asarray(w_in, dtype=np.float64)
    c_pos = np.asarray(c_pos, dtype=np.float64)
    c_negs = [np.asarray(c, dtype=np.float64) for c in c_negs]
    g_pos_coef = float(sigmoid(w_in @ c_pos)) - 1.0
    g_in = g_pos_coef * c_pos
    g_negs = []
    for c_neg in c_negs:
        coef = float(sigmoid(w_in @ c_neg))
        g_in = g_in + coef * c_neg
        g_negs.append(coef * w_in)
    return g_in, g_pos_coef * w_in, g_negs


def sgns_step(
    W: np.ndarray,
    C: np.ndarray,
    example: SgPair | CbowPair,
    negs: np.ndarray,
    lr: float,
    compute_loss: bool = False,
) -> float | None:
    """One in-place SGD step on a single training example.

    The input side is a W row (SG) or the mean of the context's W rows (CBOW);
    the predicted word and its negatives are C rows. Returns the example loss
    when `compute_loss` is set, else None.
    """
    input_ids, target = example
    cbow = not isinstance(input_ids, (int, np.integer))
    if cbow:
        ctx = np.asarray(input_ids, dtype=np.intp)
        h = W[ctx].mean(axis=0)
    else:
        h = W[input_ids]
    ids = np.empty(len(negs) + 1, dtype=np.intp)
    ids[0] = target
    ids[1:] = negs
    rows = C[ids]
    dots = rows @ h
    if not np.isfinite(dots).all():
        raise FloatingPointError(
            f"non-finite dot products for example {example!r}: {dots!r}"
        )
    sig = 0.5 * (1.0 + np.tanh(0.5 * dots))
    loss = None
    if compute_loss:
        loss = float(
            np.logaddexp(0.0, -dots[0]) + np.logaddexp(0.0, dots[1:]).sum()
        )
    g = sig.astype(W.dtype)
    g[0] -= 1.0
    grad_h = g @ rows
    np.add.at(C, ids, (-lr * g)[:, None] * h[None, :])
    if cbow:
        np.add.at(W, ctx, (-lr / len(ctx)) * grad_h[None, :])
    else:
        W[input_ids] -= lr * grad_h
    return loss


def _init_matrices(
    vocab_size: int, dim: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    # W ~ uniform(-0.5/dim, 0.5/dim) per component, C starts at zero
    W = (rng.random((vocab_size, dim), dtype=np.float32) - np.float32(0.5)) / np.float32(dim)
    C = np.zeros((vocab_size, dim), dtype=np.float32)
    return W, C


def _train_shard(
    W: np.ndarray,
    C: np.ndarray,
    shard: Sequence[Sequence[int]],
    dist: NoiseDistribution,
    config: SgnsConfig,
    rng: np.random.Generator,
    epoch_losses: list[float] | None,
) -> None:
    total = config.epochs * count_examples(shard, config.window, config.method)
    if total == 0:
        return
    lr0 = config.learning_rate
    lr_end = lr0 * LR_FLOOR_FACTOR
    track = epoch_losses is not None
    processed = 0
    for _epoch in range(config.epochs):
        loss_sum = 0.0
        n_examples = 0
        for example in generate_pairs(shard, config.window, config.method):
            lr = lr0 + (lr_end - lr0) * (processed / total)
            negs = sample_negatives(dist, config.negatives, example[1], rng)
            loss = sgns_step(W, C, example, negs, np.float32(lr), compute_loss=track)
            processed += 1
            if track:
                loss_sum += loss
                n_examples += 1
        if track:
            epoch_losses.append(loss_sum / max(n_examples, 1))


def train_sgns(
    stream: Sequence[Sequence[int]],
    vocab: Vocabulary,
    config: SgnsConfig,
    threads: int = 1,
    on_epoch_end: Callable[[int, float], None] | None = None,
) -> DualEmbedding:
    """Train one dual embedding over an encoded sentence stream.

    Single-threaded mode is bit-for-bit deterministic under a fixed seed. With
    threads > 1 the sentence stream is sharded and workers update the shared
    matrices lock-free, tolerating lost updates (relaxed consistency).
    """
    check_positive_int("threads", threads)
    if len(vocab) < 2:
        raise ValueError("vocabulary must contain at least 2 tokens")
    stream = list(stream)
    if not stream:
        raise ValueError("empty sentence stream")
    rng = np.random.default_rng(config.seed)
    W, C = _init_matrices(len(vocab), config.dim, rng)
    dist = build_noise_distribution(vocab, config.noise_power)
    if config.epochs > 0:
        if threads == 1:
            losses: list[float] | None = [] if on_epoch_end else None
            _train_shard(W, C, stream, dist, config, rng, losses)
            if on_epoch_end:
                for epoch, loss in enumerate(losses or []):
                    on_epoch_end(epoch, loss)
        else:
            shards = [stream[k::threads] for k in range(threads)]
            workers = []
            for k, shard in enumerate(shards):
                if not shard:
                    continue
                worker_rng = np.random.default_rng(derive_seed(config.seed, f"sgns-worker:{k}"))
                workers.append(
                    threading.Thread(
                        target=_train_shard,
                        args=(W, C, shard, dist, config, worker_rng, None),
                    )
                )
            for w in workers:
                w.start()
            for w in workers:
                w.join()
    metadata = {
        "trainer": f"sgns-{config.method}",
        "window": str(config.window),
        "dim": str(config.dim),
        "seed": str(config.seed),
        "negatives": str(config.negatives),
        "epochs": str(config.epochs),
    }
    return DualEmbedding(vocab, W, C, metadata=metadata)
