"""Intrinsic evaluation harness: similarity, association and analogy scoring
for one (embedding, compare method) pair, plus dataset parsers.

Evaluators are pure and read-only over the embedding; identical inputs always
produce identical TaskScores. Out-of-vocabulary items are skipped and counted,
never substituted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import DEFAULT_NORMALIZER, normalize_token
from .embedding import CompareMethod, DualEmbedding, nearest
from .validation import check_positive_int

logger = logging.getLogger(__name__)

TASKS = ("similarity", "association", "analogy")


@dataclass(frozen=True)
class SimilarityPair:
    w1: str
    w2: str
    gold: float


@dataclass(frozen=True)
class CueResponseSet:
    cue: str
    responses: dict[str, float] = field(hash=False)

    def __hash__(self):  # responses dict is frozen by convention
        return hash((self.cue, tuple(sorted(self.responses.items()))))


@dataclass(frozen=True)
class AnalogyQuestion:
    a: str
    a_star: str
    b: str
    b_star: str
    category: str = ""


@dataclass(frozen=True)
class TaskScore:
    task: str
    value: float
    aux: dict = field(hash=False, default_factory=dict)

    def __hash__(self):
        return hash((self.task, self.value))


def _norm(token: str, normalizer: str) -> str:
    return normalize_token(token, normalizer)


def parse_similarity(path, normalizer: str = DEFAULT_NORMALIZER) -> list[SimilarityPair]:
    """Read canonical `w1<TAB>w2<TAB>score` lines; tokens get the training normalizer."""
    pairs: list[SimilarityPair] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected w1<TAB>w2<TAB>score")
            try:
                gold = float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad score {parts[2]!r}") from exc
            if not np.isfinite(gold):
                raise ValueError(f"{path}:{lineno}: non-finite score")
            pairs.append(
                SimilarityPair(_norm(parts[0], normalizer), _norm(parts[1], normalizer), gold)
            )
    if not pairs:
        raise ValueError(f"{path}: no pairs")
    return pairs


def parse_association(
    path, min_strength: float = 0.10, normalizer: str = DEFAULT_NORMALIZER
) -> list[CueResponseSet]:
    """Read `cue<TAB>response<TAB>strength` rows, grouped by cue.

    Responses weaker than `min_strength` are pruned; cues left without
    responses are dropped. Strengths must lie in [0, 1].
    """
    grouped: dict[str, dict[str, float]] = {}
    order: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected cue<TAB>response<TAB>strength")
            try:
                strength = float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad strength {parts[2]!r}") from exc
            if not 0.0 <= strength <= 1.0:
                raise ValueError(f"{path}:{lineno}: strength {strength} outside [0, 1]")
            if strength < min_strength:
                continue
            cue = _norm(parts[0], normalizer)
            response = _norm(parts[1], normalizer)
            if cue not in grouped:
                grouped[cue] = {}
                order.append(cue)
            grouped[cue][response] = strength
    return [CueResponseSet(cue=c, responses=grouped[c]) for c in order]


def parse_analogy_google(path, normalizer: str = DEFAULT_NORMALIZER) -> list[AnalogyQuestion]:
    """Read the Google analogy format: `: section` headers then space-separated quadruples."""
    questions: list[AnalogyQuestion] = []
    category = ""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(":"):
                category = line[1:].strip()
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 tokens, got {len(parts)}")
            a, a_star, b, b_star = (_norm(p, normalizer) for p in parts)
            questions.append(AnalogyQuestion(a, a_star, b, b_star, category=category))
    return questions


def parse_analogy_tsv(path, normalizer: str = DEFAULT_NORMALIZER) -> list[AnalogyQuestion]:
    """Read canonical TSV quadruples `a<TAB>a*<TAB>b<TAB>b*[<TAB>category]`."""
    questions: list[AnalogyQuestion] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) not in (4, 5):
                raise ValueError(f"{path}:{lineno}: expected 4 or 5 columns, got {len(parts)}")
            category = parts[4] if len(parts) == 5 else ""
            a, a_star, b, b_star = (_norm(p, normalizer) for p in parts[:4])
            questions.append(AnalogyQuestion(a, a_star, b, b_star, category=category))
    return questions


def parse_bats_pairs(
    path,
    normalizer: str = DEFAULT_NORMALIZER,
    exclude_subclass_prefixes: Sequence[str] = ("I",),
) -> dict[str, list[tuple[str, str]]]:
    """Read partial analogy pairs grouped by subclass.

    Accepts either a directory of `<subclass>.txt` files with `a<TAB>a*` rows
    (a* may list slash-separated variants; the first is kept) or a single TSV
    of `subclass<TAB>a<TAB>a*` rows. Subclasses whose name starts with one of
    `exclude_subclass_prefixes` are dropped (the inflectional-morphology
    convention in BATS names those files with an I prefix).
    """
    path = Path(path)
    groups: dict[str, list[tuple[str, str]]] = {}

    def add(subclass: str, a: str, a_star: str) -> None:
        if any(subclass.startswith(p) for p in exclude_subclass_prefixes):
            return
        a_star = a_star.split("/")[0]
        groups.setdefault(subclass, []).append(
            (_norm(a, normalizer), _norm(a_star, normalizer))
        )

    if path.is_dir():
        for file in sorted(path.rglob("*.txt")):
            subclass = file.stem
            for lineno, line in enumerate(file.read_text(encoding="utf-8").splitlines(), 1):
                if not line.strip():
                    continue
                parts = line.split("\t") if "\t" in line else line.split()
                if len(parts) < 2:
                    raise ValueError(f"{file}:{lineno}: expected `a<TAB>a*`")
                add(subclass, parts[0], parts[1])
    else:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ValueError(f"{path}:{lineno}: expected subclass<TAB>a<TAB>a*")
                add(parts[0], parts[1], parts[2])
    return groups


def bats_join(
    pairs_by_subclass: Mapping[str, Sequence[tuple[str, str]]], seed: int
) -> list[AnalogyQuestion]:
    """Join each partial pair with one uniformly drawn distinct partner from its
    subclass, producing exactly one question per pair; deterministic under seed.

    Subclasses with fewer than 2 pairs are skipped with a warning.
    """
    rng = np.random.default_rng(seed)
    questions: list[AnalogyQuestion] = []
    for subclass in sorted(pairs_by_subclass):
        pairs = list(pairs_by_subclass[subclass])
        if len(pairs) < 2:
            logger.warning("subclass %r has < 2 pairs; skipped", subclass)
            continue
        for idx, (a, a_star) in enumerate(pairs):
            partner = int(rng.integers(0, len(pairs) - 1))
            if partner >= idx:
                partner += 1
            b, b_star = pairs[partner]
            questions.append(AnalogyQuestion(a, a_star, b, b_star, category=subclass))
    return questions


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation via the n*sum(xy) closed form."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"x and y must be 1-d of equal length: {x.shape} vs {y.shape}")
    n = len(x)
    if n < 2:
        raise ValueError("need at least 2 observations")
    sx = float(x.sum())
    sy = float(y.sum())
    sxy = float((x * y).sum())
    sxx = float((x * x).sum())
    syy = float((y * y).sum())
    vx = n * sxx - sx * sx
    vy = n * syy - sy * sy
    if vx <= 0 or vy <= 0:
        raise ValueError("zero variance: correlation undefined for constant input")
    return (n * sxy - sx * sy) / float(np.sqrt(vx) * np.sqrt(vy))


def eval_similarity(
    emb: DualEmbedding, cm: CompareMethod, pairs: Sequence[SimilarityPair]
) -> TaskScore:
    """Pearson correlation between model cosines and gold scores.

    The first word of each pair is looked up in the cue space, the second in
    the candidate space. Pairs with an OOV word (or a zero vector) are skipped
    and counted in aux.
    """
    cue_m, cand_m = emb.resolve_spaces(cm)
    vocab = emb.vocab
    xs: list[float] = []
    ys: list[float] = []
    skipped = 0
    for pair in pairs:
        if pair.w1 not in vocab or pair.w2 not in vocab:
            skipped += 1
            continue
        u = cue_m[vocab.id_of(pair.w1)]
        v = cand_m[vocab.id_of(pair.w2)]
        nu = float(np.sqrt(u @ u))
        nv = float(np.sqrt(v @ v))
        if nu == 0.0 or nv == 0.0:
            skipped += 1
            continue
        xs.append(float((u @ v) / (nu * nv)))
        ys.append(pair.gold)
    if len(xs) < 2:
        raise ValueError("fewer than 2 usable pairs")
    return TaskScore(
        task="similarity",
        value=pearson(xs, ys),
        aux={"n_evaluated": len(xs), "n_skipped_oov": skipped},
    )


def eval_association(
    emb: DualEmbedding,
    cm: CompareMethod,
    sets: Sequence[CueResponseSet],
    n: int = 10,
) -> TaskScore:
    """Hit ratio and coverage of gold responses among the model's top-n neighbors.

    Hit ratio is the fraction of cues with at least one overlap; coverage is
    the mean per-cue fraction of gold responses retrieved. The reported value
    is their arithmetic mean, with both components kept in aux.
    """
    check_positive_int("n", n)
    vocab = emb.vocab
    hits = 0
    coverage_sum = 0.0
    evaluated = 0
    skipped = 0
    for cr in sets:
        if cr.cue not in vocab:
            skipped += 1
            continue
        try:
            retrieved = {tok for tok, _ in nearest(emb, cm, cr.cue, n, exclude=(cr.cue,))}
        except ValueError:
            # zero cue vector (never-updated row): unusable, counted like OOV
            skipped += 1
            continue
        gold = set(cr.responses)
        overlap = len(gold & retrieved)
        if overlap:
            hits += 1
        coverage_sum += overlap / len(gold)
        evaluated += 1
    if evaluated == 0:
        raise ValueError("all cues out of vocabulary")
    hit_ratio = hits / evaluated
    coverage = coverage_sum / evaluated
    return TaskScore(
        task="association",
        value=(hit_ratio + coverage) / 2.0,
        aux={
            "hit_ratio": hit_ratio,
            "coverage": coverage,
            "n_evaluated": evaluated,
            "n_skipped_oov": skipped,
            "n": n,
        },
    )


def three_cos_mul(
    emb: DualEmbedding,
    cm: CompareMethod,
    q: AnalogyQuestion,
    epsilon: float = 0.001,
    shift: bool = True,
) -> list[tuple[str, float]]:
    """Rank every candidate b* by cos(b*,a*) * cos(b*,b) / (cos(b*,a) + epsilon).

    The query tokens a, a* and b come from the cue space; candidates are
    scored against the candidate space and the query tokens themselves are
    excluded. With `shift` (the default) cosines are mapped to (cos+1)/2 so
    every factor is nonnegative before multiplying and dividing.
    """
    vocab = emb.vocab
    cue_m = emb.space(cm.cue_letter)
    ids = []
    for tok in (q.a, q.a_star, q.b):
        if tok not in vocab:
            raise KeyError(f"query token {tok!r} not in vocabulary")
        ids.append(vocab.id_of(tok))
    cand, zero = emb.normalized_candidates(cm.candidate_letter)
    cosines = []
    for idx in ids:
        vec = cue_m[idx]
        norm = float(np.sqrt(vec @ vec))
        if norm == 0.0:
            raise ValueError(f"undefined cosine: zero vector for query id {idx}")
        cosines.append(cand @ (vec / norm))
    cos_a, cos_a_star, cos_b = cosines
    if shift:
        cos_a = (cos_a + 1.0) / 2.0
        cos_a_star = (cos_a_star + 1.0) / 2.0
        cos_b = (cos_b + 1.0) / 2.0
    scores = cos_a_star * cos_b / (cos_a + epsilon)
    scores[zero] = -np.inf
    for idx in ids:
        scores[idx] = -np.inf
    order = np.argsort(-scores, kind="stable")
    out: list[tuple[str, float]] = []
    for idx in order:
        s = float(scores[idx])
        if s == -np.inf:
            break
        out.append((vocab.token_of(int(idx)), s))
    return out


def eval_analogy(
    emb: DualEmbedding,
    cm: CompareMethod,
    questions: Sequence[AnalogyQuestion],
    top_n: int = 3,
    epsilon: float = 0.001,
    shift: bool = True,
) -> TaskScore:
    """Fraction of questions whose gold b* lands in the top-n ranked candidates.

    Questions with any OOV token (including the gold answer, which could never
    be retrieved) are skipped and counted in aux.
    """
    check_positive_int("top_n", top_n)
    vocab = emb.vocab
    answered = 0
    evaluated = 0
    skipped = 0
    for q in questions:
        if any(tok not in vocab for tok in (q.a, q.a_star, q.b, q.b_star)):
            skipped += 1
            continue
        try:
            ranked = three_cos_mul(emb, cm, q, epsilon=epsilon, shift=shift)
        except ValueError:
            # zero query vector: unanswerable, counted like OOV
            skipped += 1
            continue
        top = [tok for tok, _ in ranked[:top_n]]
        if q.b_star in top:
            answered += 1
        evaluated += 1
    if evaluated == 0:
        raise ValueError("zero answerable questions")
    return TaskScore(
        task="analogy",
        value=answered / evaluated,
        aux={
            "n_evaluated": evaluated,
            "n_skipped_oov": skipped,
            "n_answered": answered,
            "top_n": top_n,
        },
    )
