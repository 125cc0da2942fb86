"""Scikit-learn style facades over the functional trainers.

`TextNormalizer` turns raw documents into token sentences, `SgnsEmbedder` and
`GloveEmbedder` fit a dual embedding from token sentences and expose the
trained matrices through fitted attributes and `transform`. All three follow
the estimator contract (constructor stores params verbatim, `fit` returns
self, fitted state carries a trailing underscore), so they compose with
pipelines, `clone` and `get_params`/`set_params`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import corpus
from .embedding import DualEmbedding
from .glove import GloveConfig, accumulate_cooc, train_glove
from .sgns import SgnsConfig, train_sgns
from .validation import check_token_sentences

_SPACE_LETTERS = {"w": "W", "c": "C", "s": "S", "a": "A"}


class TextNormalizer(BaseEstimator, TransformerMixin):
    """Stateless transformer from raw documents to normalized token sentences."""

    def __init__(self, stopwords=(), normalizer: str = corpus.DEFAULT_NORMALIZER):
        self.stopwords = stopwords
        self.normalizer = normalizer

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        if isinstance(X, str):
            X = [X]
        sentences: list[list[str]] = []
        for doc in X:
            sentences.extend(corpus.normalize(doc, self.stopwords, self.normalizer))
        return sentences


class _DualEmbedderBase(BaseEstimator):
    """Shared fit plumbing: vocabulary building, encoding, fitted attributes."""

    def _fit_corpus(self, X):
        sentences = check_token_sentences(X)
        vocab = corpus.build_vocab(sentences, min_count=self.min_count)
        stream = corpus.encode(sentences, vocab)
        return vocab, stream

    def transform(self, X, space: str = "w") -> np.ndarray:
        """Map tokens to vectors from one space (w, c, s or a). OOV raises KeyError."""
        check_is_fitted(self, "embedding_")
        letter = _SPACE_LETTERS.get(space.lower())
        if letter is None:
            raise ValueError(f"space must be one of {sorted(_SPACE_LETTERS)}, got {space!r}")
        mat = self.embedding_.space(letter)
        return np.stack([mat[self.vocab_.id_of(tok)] for tok in X])

    @property
    def W_(self) -> np.ndarray:
        check_is_fitted(self, "embedding_")
        return self.embedding_.W

    @property
    def C_(self) -> np.ndarray:
        check_is_fitted(self, "embedding_")
        return self.embedding_.C


class SgnsEmbedder(_DualEmbedderBase):
    """Dual word embedding via CBOW or skip-gram with negative sampling.

    Parameters mirror `SgnsConfig` plus `min_count` for the internal
    vocabulary build. Fit is deterministic for a fixed seed and threads=1.
    """

    def __init__(
        self,
        method: str = "sg",
        dim: int = 100,
        window: int = 5,
        negatives: int = 5,
        epochs: int = 5,
        learning_rate: float = 0.025,
        noise_power: float = 0.75,
        min_count: int = 1,
        seed: int = 0,
        threads: int = 1,
    ):
        self.method = method
        self.dim = dim
        self.window = window
        self.negatives = negatives
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.noise_power = noise_power
        self.min_count = min_count
        self.seed = seed
        self.threads = threads

    def fit(self, X, y=None) -> "SgnsEmbedder":
        vocab, stream = self._fit_corpus(X)
        config = SgnsConfig(
            method=self.method,
            dim=self.dim,
            window=self.window,
            negatives=self.negatives,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            noise_power=self.noise_power,
            seed=self.seed,
        )
        self.embedding_: DualEmbedding = train_sgns(
            stream, vocab, config, threads=self.threads
        )
        self.vocab_ = vocab
        return self


class GloveEmbedder(_DualEmbedderBase):
    """Dual word embedding via global co-occurrence weighted least squares."""

    def __init__(
        self,
        dim: int = 100,
        window: int = 5,
        epochs: int = 25,
        learning_rate: float = 0.05,
        x_max: float = 100.0,
        alpha: float = 0.75,
        distance_weighting: bool = True,
        min_count: int = 1,
        seed: int = 0,
    ):
        self.dim = dim
        self.window = window
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.x_max = x_max
        self.alpha = alpha
        self.distance_weighting = distance_weighting
        self.min_count = min_count
        self.seed = seed

    def fit(self, X, y=None) -> "GloveEmbedder":
        vocab, stream = self._fit_corpus(X)
        config = GloveConfig(
            dim=self.dim,
            window=self.window,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            x_max=self.x_max,
            alpha=self.alpha,
            distance_weighting=self.distance_weighting,
            seed=self.seed,
        )
        cooc = accumulate_cooc(
            stream, config.window, config.distance_weighting, vocab_size=len(vocab)
        )
        self.embedding_: DualEmbedding = train_glove(cooc, config, vocab=vocab)
        self.vocab_ = vocab
        return self
