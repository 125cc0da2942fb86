"""Corpus pipeline: raw text -> normalized sentences -> pruned vocabulary -> id streams.

Context windows never cross sentence boundaries downstream, so everything here
preserves sentence structure. All functions are pure and deterministic.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .validation import check_in, check_positive_int

NORMALIZER_MODES = ("none", "lowercase", "lowercase+suffix-strip")
DEFAULT_NORMALIZER = "lowercase"

_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")
_TOKEN = re.compile(r"\w+")

# (suffix, replacement, minimum token length) tried in order, first match wins.
_SUFFIX_RULES = (
    ("ies", "y", 5),
    ("sses", "ss", 6),
    ("ing", "", 6),
    ("edly", "", 7),
    ("ed", "", 5),
    ("es", "", 5),
    ("s", "", 4),
)


def strip_suffix(token: str) -> str:
    """Naive English suffix stripper; a deterministic stand-in for lemmatization."""
    for suffix, repl, min_len in _SUFFIX_RULES:
        if len(token) >= min_len and token.endswith(suffix):
            if suffix == "s" and token.endswith("ss"):
                continue
            return token[: -len(suffix)] + repl
    return token


def normalize_token(token: str, normalizer: str = DEFAULT_NORMALIZER) -> str:
    check_in("normalizer", normalizer, NORMALIZER_MODES)
    if normalizer == "none":
        return token
    token = token.lower()
    if normalizer == "lowercase+suffix-strip":
        token = strip_suffix(token)
    return token


def normalize(
    text: str,
    stopwords: Iterable[str] = (),
    normalizer: str = DEFAULT_NORMALIZER,
) -> list[list[str]]:
    """Split raw text into sentences of normalized tokens.

    Sentences end at sentence-terminal punctuation or newlines. Punctuation is
    deleted, tokens are normalized per `normalizer`, and tokens found in
    `stopwords` (matched after normalization) are removed. Empty sentences are
    dropped; empty input yields an empty list.
    """
    check_in("normalizer", normalizer, NORMALIZER_MODES)
    stopset = frozenset(stopwords)
    sentences = []
    for chunk in _SENTENCE_SPLIT.split(text):
        tokens = []
        for raw in _TOKEN.findall(chunk):
            tok = normalize_token(raw, normalizer)
            if tok and tok not in stopset:
                tokens.append(tok)
        if tokens:
            sentences.append(tokens)
    return sentences


@dataclass
class Vocabulary:
    """Frequency-pruned token inventory shared by both trainers.

    `counts[i]` is the corpus frequency of token id `i`. `total_tokens` is the
    token count of the unpruned corpus, recorded before pruning so that
    frequency-based sampling can refer to it.
    """

    token_to_id: dict[str, int]
    id_to_token: list[str]
    counts: list[int]
    total_tokens: int
    min_count: int = 1

    def __post_init__(self) -> None:
        if len(self.id_to_token) != len(self.token_to_id) or len(self.counts) != len(
            self.id_to_token
        ):
            raise ValueError("vocabulary fields disagree on size")
        for i, tok in enumerate(self.id_to_token):
            if self.token_to_id.get(tok) != i:
                raise ValueError(f"token_to_id and id_to_token disagree at id {i}")

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id

    def id_of(self, token: str) -> int:
        return self.token_to_id[token]

    def token_of(self, idx: int) -> str:
        return self.id_to_token[idx]

    def decode(self, ids: Iterable[int]) -> list[str]:
        return [self.id_to_token[i] for i in ids]


def build_vocab(sentences: Iterable[Iterable[str]], min_count: int = 1) -> Vocabulary:
    """Count tokens and keep those seen at least `min_count` times.

    Ids are assigned by descending frequency, ties broken lexicographically,
    so identical input always produces identical id assignment.
    """
    check_positive_int("min_count", min_count)
    freq: Counter[str] = Counter()
    total = 0
    for sent in sentences:
        for tok in sent:
            freq[tok] += 1
            total += 1
    kept = [tok for tok, c in freq.items() if c >= min_count]
    if not kept:
        raise ValueError("empty vocabulary: every token fell below min_count")
    kept.sort(key=lambda tok: (-freq[tok], tok))
    return Vocabulary(
        token_to_id={tok: i for i, tok in enumerate(kept)},
        id_to_token=kept,
        counts=[freq[tok] for tok in kept],
        total_tokens=total,
        min_count=min_count,
    )


def iter_encode(
    sentences: Iterable[Iterable[str]], vocab: Vocabulary
) -> Iterator[list[int]]:
    """Lazily encode sentences to id lists, dropping OOV tokens and emptied sentences.

    Single-pass: safe for corpora larger than memory.
    """
    t2i = vocab.token_to_id
    for sent in sentences:
        ids = [t2i[tok] for tok in sent if tok in t2i]
        if ids:
            yield ids


def encode(sentences: Iterable[Iterable[str]], vocab: Vocabulary) -> list[list[int]]:
    """Encode sentences to token-id lists (see `iter_encode`)."""
    return list(iter_encode(sentences, vocab))


def decode(stream: Iterable[Iterable[int]], vocab: Vocabulary) -> list[list[str]]:
    return [vocab.decode(sent) for sent in stream]


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword file: one token per line, blank lines and '#' comments ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            tok = line.strip()
            if tok and not tok.startswith("#"):
                words.add(tok)
    return frozenset(words)


def save_vocabulary(vocab: Vocabulary, path) -> None:
    """Write `VOCAB <size> <total_tokens>` then one `token\\tcount` line per id."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"VOCAB {len(vocab)} {vocab.total_tokens}\n")
        for tok, count in zip(vocab.id_to_token, vocab.counts):
            fh.write(f"{tok}\t{count}\n")


def load_vocabulary(path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "VOCAB":
            raise ValueError(f"{path}: malformed vocabulary header")
        size, total = int(header[1]), int(header[2])
        tokens: list[str] = []
        counts: list[int] = []
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                tok, count = line.split("\t")
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: expected token<TAB>count") from exc
            tokens.append(tok)
            counts.append(int(count))
    if len(tokens) != size:
        raise ValueError(f"{path}: header says {size} tokens, found {len(tokens)}")
    if len(set(tokens)) != len(tokens):
        raise ValueError(f"{path}: duplicate tokens")
    return Vocabulary(
        token_to_id={tok: i for i, tok in enumerate(tokens)},
        id_to_token=tokens,
        counts=counts,
        total_tokens=total,
    )


def save_stream(stream: Iterable[Iterable[int]], path) -> None:
    """Write an encoded sentence stream: space-joined ids, one sentence per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for sent in stream:
            fh.write(" ".join(str(i) for i in sent))
            fh.write("\n")


def load_stream(path) -> list[list[int]]:
    stream = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                stream.append([int(tok) for tok in line.split()])
    return stream
