"""Independent brute-force oracles: pure-Python scoring loops and explicit
sorts, kept free of the package's vectorized query paths."""

from __future__ import annotations

import math


def oracle_cosine(u, v) -> float:
    du = math.sqrt(sum(float(x) * float(x) for x in u))
    dv = math.sqrt(sum(float(x) * float(x) for x in v))
    return sum(float(a) * float(b) for a, b in zip(u, v)) / (du * dv)


def oracle_pearson(x, y) -> float:
    """Direct-summation closed form."""
    n = len(x)
    sx = sum(x)
    sy = sum(y)
    sxy = sum(a * b for a, b in zip(x, y))
    sxx = sum(a * a for a in x)
    syy = sum(b * b for b in y)
    num = n * sxy - sx * sy
    den = math.sqrt((n * sxx - sx * sx) * (n * syy - sy * sy))
    return num / den


def brute_force_nearest(emb, cm, cue, n, exclude=()):
    """Per-candidate cosine loop, explicit (-score, id) sort."""
    vocab = emb.vocab
    cue_vec = emb.space(cm.cue_letter)[vocab.id_of(cue)]
    cand = emb.space(cm.candidate_letter)
    banned = {vocab.id_of(cue)} | {vocab.id_of(t) for t in exclude if t in vocab}
    scored = []
    for idx in range(len(vocab)):
        if idx in banned or not cand[idx].any():
            continue
        scored.append((idx, oracle_cosine(cue_vec, cand[idx])))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [(vocab.token_of(i), s) for i, s in scored[:n]]


def brute_force_three_cos_mul(emb, cm, q, epsilon=0.001, shift=True):
    """Per-candidate multiplicative-score loop, explicit sort."""
    vocab = emb.vocab
    cue = emb.space(cm.cue_letter)
    cand = emb.space(cm.candidate_letter)
    ids = [vocab.id_of(t) for t in (q.a, q.a_star, q.b)]
    scored = []
    for idx in range(len(vocab)):
        if idx in ids or not cand[idx].any():
            continue
        cos_a = oracle_cosine(cand[idx], cue[ids[0]])
        cos_astar = oracle_cosine(cand[idx], cue[ids[1]])
        cos_b = oracle_cosine(cand[idx], cue[ids[2]])
        if shift:
            cos_a = (cos_a + 1) / 2
            cos_astar = (cos_astar + 1) / 2
            cos_b = (cos_b + 1) / 2
        scored.append((idx, cos_astar * cos_b / (cos_a + epsilon)))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return [(vocab.token_of(i), s) for i, s in scored]


def finite_difference(loss_fn, vec, eps=1e-5):
    """Central-difference gradient of a scalar function of one vector."""
    import numpy as np

    vec = np.asarray(vec, dtype=np.float64)
    grad = np.zeros_like(vec)
    for k in range(len(vec)):
        plus = vec.copy()
        minus = vec.copy()
        plus[k] += eps
        minus[k] -= eps
        grad[k] = (loss_fn(plus) - loss_fn(minus)) / (2 * eps)
    return grad
