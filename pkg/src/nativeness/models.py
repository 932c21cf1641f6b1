"""Native and transliterable n-gram distributions and their re-estimation.

Both distributions live on the same fixed vocabulary: the n-grams that occur
in the lexicon.  Updates are pure; each returns a new distribution.

Scores are carried as a :class:`ScoreVector` holding the nativeness weight and
its complement side by side.  Computing the complement independently (rather
than as ``1 - w`` on every use) makes the native/transliterable mirror exact
in floating point: swapping the two arrays and the two distributions replays
the same arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelError
from .lexicon import Lexicon, NGram, NGramTable

DEFAULT_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class ScoreVector:
    native: np.ndarray
    translit: np.ndarray

    def __post_init__(self):
        native = np.array(self.native, dtype=float)
        translit = np.array(self.translit, dtype=float)
        if native.shape != translit.shape or native.ndim != 1:
            raise ValueError("native and translit must be 1-d arrays of equal length")
        for arr in (native, translit):
            if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValueError("scores must lie in [0, 1]")
        if np.any(np.abs(native + translit - 1.0) > 1e-9):
            raise ValueError("native and translit weights must sum to 1")
        native.flags.writeable = False
        translit.flags.writeable = False
        object.__setattr__(self, "native", native)
        object.__setattr__(self, "translit", translit)

    @classmethod
    def from_scores(cls, scores) -> "ScoreVector":
        scores = np.asarray(scores, dtype=float)
        return cls(scores, 1.0 - scores)

    @property
    def scores(self) -> np.ndarray:
        return self.native

    def mirrored(self) -> "ScoreVector":
        return ScoreVector(self.translit, self.native)

    def identical_to(self, other: "ScoreVector") -> bool:
        return np.array_equal(self.native, other.native) and np.array_equal(
            self.translit, other.translit
        )

    def __len__(self) -> int:
        return len(self.native)


@dataclass(frozen=True, eq=False)
class NGramDistribution:
    table: NGramTable
    probs: np.ndarray
    floor: float = DEFAULT_FLOOR

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.shape != (self.table.size,):
            raise ValueError("probs must have one entry per vocabulary n-gram")
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def vocab(self) -> tuple[NGram, ...]:
        return self.table.vocab

    def prob(self, gram: NGram) -> float:
        return float(self.probs[self.table.gram_ids[tuple(gram)]])

    def as_dict(self) -> dict[NGram, float]:
        return dict(zip(self.table.vocab, self.probs.tolist()))

    def identical_to(self, other: "NGramDistribution") -> bool:
        return self.table is other.table and np.array_equal(self.probs, other.probs)


def normalize(mass: np.ndarray, floor: float = DEFAULT_FLOOR) -> np.ndarray:
    """Normalize nonnegative mass to a distribution with every entry >= floor.

    Entries that would fall below the floor are pinned to it and the rest of
    the mass is rescaled to fill ``1 - k * floor``; repeated until stable.
    """
    mass = np.asarray(mass, dtype=float)
    size = mass.size
    if size * floor >= 1.0:
        raise ModelError("probability floor too large for vocabulary size")
    pinned = np.zeros(size, dtype=bool)
    while True:
        free = ~pinned
        free_total = mass[free].sum()
        budget = 1.0 - pinned.sum() * floor
        probs = np.full(size, floor)
        if free_total > 0:
            probs[free] = mass[free] / free_total * budget
        else:
            probs[free] = budget / free.sum()
        below = free & (probs < floor)
        if not below.any():
            return probs
        pinned |= below


def uniform(lex: Lexicon, n: int, pad: bool = False, floor: float = DEFAULT_FLOOR) -> NGramDistribution:
    table = lex.ngram_table(n, pad)
    return NGramDistribution(table, np.full(table.size, 1.0 / table.size), floor)


def _table_for(lex: Lexicon, dist: NGramDistribution) -> NGramTable:
    table = lex.ngram_table(dist.n, dist.table.pad)
    if table is not dist.table:
        raise ModelError("distribution was not built on this lexicon")
    return table


def _check_pair(a: NGramDistribution, b: NGramDistribution) -> None:
    if a.table is not b.table:
        raise ModelError("distributions must share n and vocabulary")


def _reestimate(
    table: NGramTable,
    own: np.ndarray,
    other: np.ndarray,
    other_dist: NGramDistribution,
    prev_own: NGramDistribution,
) -> NGramDistribution:
    ratio = other_dist.probs / prev_own.probs
    own_sq = own[table.occ_word] ** 2
    other_sq = other[table.occ_word] ** 2
    terms = own_sq / (own_sq + other_sq * ratio[table.occ_gram])
    mass = np.bincount(table.occ_gram, weights=terms, minlength=table.size)
    if not mass.sum() > 0.0:
        return prev_own
    return NGramDistribution(table, normalize(mass, prev_own.floor), prev_own.floor)


def update_native(
    lex: Lexicon, w: ScoreVector, prev_native: NGramDistribution, translit: NGramDistribution
) -> NGramDistribution:
    """One fixed-point step for the native distribution.

    Mass for n-gram ``c`` is the sum over its occurrences of
    ``w^2 / (w^2 + (1-w)^2 * T(c) / N_prev(c))``, then normalized.
    Returns ``prev_native`` itself when all mass is zero.
    """
    _check_pair(prev_native, translit)
    table = _table_for(lex, prev_native)
    return _reestimate(table, w.native, w.translit, translit, prev_native)


def update_translit(
    lex: Lexicon, w: ScoreVector, native: NGramDistribution, prev_translit: NGramDistribution
) -> NGramDistribution:
    """Mirror of :func:`update_native` with the roles of the classes swapped."""
    _check_pair(native, prev_translit)
    table = _table_for(lex, prev_translit)
    return _reestimate(table, w.translit, w.native, native, prev_translit)


def _mixture(table: NGramTable, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution):
    nat_sq = w.native[table.occ_word] ** 2
    tra_sq = w.translit[table.occ_word] ** 2
    mix = nat_sq * native.probs[table.occ_gram] + tra_sq * translit.probs[table.occ_gram]
    return nat_sq, mix


def grad_objective_max(
    lex: Lexicon, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution
) -> np.ndarray:
    """Partial derivatives of the maximizing log objective w.r.t. each N(c).

    This is the unconstrained gradient; the sum-to-one multiplier is not
    included.
    """
    _check_pair(native, translit)
    table = _table_for(lex, native)
    nat_sq, mix = _mixture(table, w, native, translit)
    return np.bincount(table.occ_gram, weights=nat_sq / mix, minlength=table.size)


def concavity_check(
    lex: Lexicon, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution, gram: NGram
) -> float:
    """Second partial derivative of the maximizing objective w.r.t. N(gram).

    Always <= 0; zero only when no occurrence of ``gram`` has w > 0.
    """
    _check_pair(native, translit)
    table = _table_for(lex, native)
    gid = table.gram_ids[tuple(gram)]
    hit = table.occ_gram == gid
    words = table.occ_word[hit]
    nat_sq = w.native[words] ** 2
    tra_sq = w.translit[words] ** 2
    mix = nat_sq * native.probs[gid] + tra_sq * translit.probs[gid]
    return -float(np.sum(nat_sq**2 / mix**2))
