"""Dual embedding container: the W and C matrices, compare-method resolution,
cosine queries and binary persistence.

A compare method maps a (cue, candidate) lookup onto spaces: two-letter codes
pick the cue space with the first letter and the candidate space with the
second; S resolves to W+C and A to (W+C)/2 on both sides. Because A is exactly
half of S and cosine is scale invariant, S and A produce bitwise-identical
similarities.
"""

from __future__ import annotations

import enum
import logging
import struct
from typing import Iterable

import numpy as np

from .corpus import Vocabulary
from .validation import check_positive_int

logger = logging.getLogger(__name__)

_MAGIC = "DUALEMB"
_FORMAT_VERSION = 1
_FLOAT = np.dtype("<f4")


class CompareMethod(enum.Enum):
    WW = "WW"
    WC = "WC"
    CW = "CW"
    CC = "CC"
    SS = "SS"
    AA = "AA"

    @classmethod
    def parse(cls, name: str) -> "CompareMethod":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(
                f"unknown compare method {name!r}; expected one of "
                f"{[m.value for m in cls]}"
            ) from None

    @property
    def cue_letter(self) -> str:
        return self.value[0]

    @property
    def candidate_letter(self) -> str:
        return self.value[1]


METHOD_ORDER = (
    CompareMethod.WW,
    CompareMethod.WC,
    CompareMethod.CW,
    CompareMethod.CC,
    CompareMethod.SS,
    CompareMethod.AA,
)


def cosine(u, v) -> float:
    """Cosine similarity of two nonzero vectors, in [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.sqrt(u @ u))
    nv = float(np.sqrt(v @ v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("undefined cosine: zero vector")
    return float((u @ v) / (nu * nv))


class DualEmbedding:
    """Vocabulary plus the two trained weight matrices W and C.

    Immutable after construction as far as queries are concerned; resolved and
    row-normalized candidate matrices are cached per space letter.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        W: np.ndarray,
        C: np.ndarray,
        metadata: dict[str, str] | None = None,
        biases: tuple[np.ndarray, np.ndarray] | None = None,
    ):
        W = np.ascontiguousarray(W, dtype=np.float32)
        C = np.ascontiguousarray(C, dtype=np.float32)
        if W.shape != C.shape:
            raise ValueError(f"W and C shapes differ: {W.shape} vs {C.shape}")
        if W.ndim != 2 or W.shape[0] != len(vocab):
            raise ValueError(
                f"expected matrices of shape ({len(vocab)}, dim), got {W.shape}"
            )
        if W is C:
            raise ValueError("W and C must be distinct matrices")
        self.vocab = vocab
        self.W = W
        self.C = C
        self.metadata: dict[str, str] = dict(metadata or {})
        if biases is not None:
            b, bt = biases
            b = np.ascontiguousarray(b, dtype=np.float32)
            bt = np.ascontiguousarray(bt, dtype=np.float32)
            if b.shape != (W.shape[0],) or bt.shape != (W.shape[0],):
                raise ValueError("bias vectors must have one entry per vocab id")
            biases = (b, bt)
        self.biases = biases
        self._spaces: dict[str, np.ndarray] = {}
        self._normalized: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    @property
    def dim(self) -> int:
        return self.W.shape[1]

    def space(self, letter: str) -> np.ndarray:
        """Return the float64 matrix for one space letter (W, C, S or A)."""
        if letter not in ("W", "C", "S", "A"):
            raise ValueError(f"unknown space letter {letter!r}")
        if letter not in self._spaces:
            if letter == "W":
                mat = self.W.astype(np.float64)
            elif letter == "C":
                mat = self.C.astype(np.float64)
            elif letter == "S":
                mat = self.space("W") + self.space("C")
            else:
                # A = S/2 computed literally so AA and SS similarities agree bitwise
                mat = self.space("S") / 2.0
            self._spaces[letter] = mat
        return self._spaces[letter]

    def resolve_spaces(self, cm: CompareMethod) -> tuple[np.ndarray, np.ndarray]:
        """Resolve a compare method into its (cue matrix, candidate matrix)."""
        return self.space(cm.cue_letter), self.space(cm.candidate_letter)

    def normalized_candidates(self, letter: str) -> tuple[np.ndarray, np.ndarray]:
        """L2 row-normalized candidate matrix plus a boolean mask of zero rows.

        Zero rows (possible for never-updated C rows) cannot appear in any
        candidate set; they are reported once per space.
        """
        if letter not in self._normalized:
            mat = self.space(letter)
            norms = np.sqrt(np.einsum("ij,ij->i", mat, mat))
            zero = norms == 0.0
            if zero.any():
                logger.warning(
                    "%d all-zero rows in space %s excluded from candidate sets",
                    int(zero.sum()),
                    letter,
                )
            safe = np.where(zero, 1.0, norms)
            self._normalized[letter] = (mat / safe[:, None], zero)
        return self._normalized[letter]

    def vector(self, token: str, letter: str = "W") -> np.ndarray:
        return self.space(letter)[self.vocab.id_of(token)]

    def save(self, path) -> None:
        save_embedding(self, path)


def nearest(
    emb: DualEmbedding,
    cm: CompareMethod,
    cue: str,
    n: int,
    exclude: Iterable[str] = (),
) -> list[tuple[str, float]]:
    """Top-n candidates by cosine between the cue row and every candidate row.

    The cue itself is always excluded. Results are sorted by descending score,
    ties broken by ascending token id; zero candidate rows never appear.
    """
    check_positive_int("n", n)
    vocab = emb.vocab
    if cue not in vocab:
        raise KeyError(f"cue {cue!r} not in vocabulary")
    cue_id = vocab.id_of(cue)
    cue_vec = emb.space(cm.cue_letter)[cue_id]
    norm = float(np.sqrt(cue_vec @ cue_vec))
    if norm == 0.0:
        raise ValueError(f"undefined cosine: cue {cue!r} has a zero vector")
    cand, zero = emb.normalized_candidates(cm.candidate_letter)
    scores = cand @ (cue_vec / norm)
    scores[zero] = -np.inf
    scores[cue_id] = -np.inf
    for tok in exclude:
        if tok in vocab:
            scores[vocab.id_of(tok)] = -np.inf
    order = np.argsort(-scores, kind="stable")
    out: list[tuple[str, float]] = []
    for idx in order:
        if len(out) == n:
            break
        s = float(scores[idx])
        if s == -np.inf:
            # excluded entries sort last; nothing rankable remains
            break
        out.append((vocab.token_of(int(idx)), s))
    return out


def _write_token_line(fh, parts: list[str]) -> None:
    for part in parts:
        if "\t" in part or "\n" in part:
            raise ValueError(f"token contains tab/newline: {part!r}")
    fh.write(("\t".join(parts) + "\n").encode("utf-8"))


def _read_line(fh, what: str) -> str:
    raw = bytearray()
    while True:
        ch = fh.read(1)
        if not ch:
            raise ValueError(f"unexpected end of file while reading {what}")
        if ch == b"\n":
            return raw.decode("utf-8")
        raw.extend(ch)


def save_embedding(emb: DualEmbedding, path) -> None:
    """Serialize to the DUALEMB binary format.

    Layout: `DUALEMB 1 <vocab> <dim>` header line, one `key=value` metadata
    line, then a `[W]` section of `token\\tcount` lines each followed by dim
    little-endian float32 values, a `[C]` section likewise (token only), and an
    optional `[B]` section with two float32 biases per token.
    """
    vocab = emb.vocab
    zero_w = int((~emb.W.any(axis=1)).sum())
    zero_c = int((~emb.C.any(axis=1)).sum())
    if zero_w or zero_c:
        logger.warning(
            "saving embedding with all-zero rows: %d in W, %d in C", zero_w, zero_c
        )
    meta = dict(emb.metadata)
    meta["total_tokens"] = str(vocab.total_tokens)
    for key, value in meta.items():
        if any(c in f"{key}{value}" for c in " =\t\n"):
            raise ValueError(f"metadata entries must not contain spaces or '=': {key}={value}")
    with open(path, "wb") as fh:
        fh.write(f"{_MAGIC} {_FORMAT_VERSION} {len(vocab)} {emb.dim}\n".encode())
        fh.write((" ".join(f"{k}={v}" for k, v in sorted(meta.items())) + "\n").encode())
        fh.write(b"[W]\n")
        w_bytes = np.ascontiguousarray(emb.W, dtype=_FLOAT)
        for i, tok in enumerate(vocab.id_to_token):
            _write_token_line(fh, [tok, str(vocab.counts[i])])
            fh.write(w_bytes[i].tobytes())
        fh.write(b"[C]\n")
        c_bytes = np.ascontiguousarray(emb.C, dtype=_FLOAT)
        for i, tok in enumerate(vocab.id_to_token):
            _write_token_line(fh, [tok])
            fh.write(c_bytes[i].tobytes())
        if emb.biases is not None:
            fh.write(b"[B]\n")
            b, bt = emb.biases
            for i, tok in enumerate(vocab.id_to_token):
                _write_token_line(fh, [tok])
                fh.write(struct.pack("<2f", float(b[i]), float(bt[i])))


def load_embedding(path) -> DualEmbedding:
    """Load a DUALEMB file; inverse of `save_embedding`, bit-exact."""
    with open(path, "rb") as fh:
        header = _read_line(fh, "header").split()
        if len(header) != 4 or header[0] != _MAGIC:
            raise ValueError(f"{path}: malformed DUALEMB header")
        version, size, dim = int(header[1]), int(header[2]), int(header[3])
        if version != _FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported format version {version}")
        meta_line = _read_line(fh, "metadata")
        metadata: dict[str, str] = {}
        for item in meta_line.split():
            key, _, value = item.partition("=")
            metadata[key] = value
        total_tokens = int(metadata.pop("total_tokens", "0"))
        if _read_line(fh, "[W] marker") != "[W]":
            raise ValueError(f"{path}: expected [W] section")
        row_bytes = dim * _FLOAT.itemsize
        tokens: list[str] = []
        counts: list[int] = []
        W = np.empty((size, dim), dtype=np.float32)
        for i in range(size):
            line = _read_line(fh, f"W row {i}")
            try:
                tok, count = line.split("\t")
            except ValueError as exc:
                raise ValueError(f"{path}: malformed W row {i}: {line!r}") from exc
            tokens.append(tok)
            counts.append(int(count))
            buf = fh.read(row_bytes)
            if len(buf) != row_bytes:
                raise ValueError(f"{path}: truncated W row {i}")
            W[i] = np.frombuffer(buf, dtype=_FLOAT)
        if len(set(tokens)) != len(tokens):
            raise ValueError(f"{path}: duplicate tokens")
        if _read_line(fh, "[C] marker") != "[C]":
            raise ValueError(f"{path}: expected [C] section (W/C row count mismatch?)")
        C = np.empty((size, dim), dtype=np.float32)
        for i in range(size):
            tok = _read_line(fh, f"C row {i}")
            if tok != tokens[i]:
                raise ValueError(
                    f"{path}: C section token order mismatch at row {i}: "
                    f"{tok!r} != {tokens[i]!r}"
                )
            buf = fh.read(row_bytes)
            if len(buf) != row_bytes:
                raise ValueError(f"{path}: truncated C row {i}")
            C[i] = np.frombuffer(buf, dtype=_FLOAT)
        biases = None
        marker = fh.read(4)
        if marker == b"[B]\n":
            b = np.empty(size, dtype=np.float32)
            bt = np.empty(size, dtype=np.float32)
            for i in range(size):
                tok = _read_line(fh, f"B row {i}")
                if tok != tokens[i]:
                    raise ValueError(f"{path}: B section token mismatch at row {i}")
                buf = fh.read(8)
                if len(buf) != 8:
                    raise ValueError(f"{path}: truncated B row {i}")
                b[i], bt[i] = struct.unpack("<2f", buf)
            biases = (b, bt)
        elif marker:
            raise ValueError(f"{path}: trailing data after [C] section")
    vocab = Vocabulary(
        token_to_id={tok: i for i, tok in enumerate(tokens)},
        id_to_token=tokens,
        counts=counts,
        total_tokens=total_tokens,
    )
    return DualEmbedding(vocab, W, C, metadata=metadata, biases=biases)
