"""Alternating optimization of n-gram distributions and nativeness scores.

Each iteration re-estimates the native and transliterable distributions under
the maximizing objective, then re-estimates every word's score under the
minimizing objective, using the previous scores on the right-hand side.
"""

from __future__ import annotations

import logging
from typing import Callable
from dataclasses import dataclass, field, asdict

import numpy as np

from .errors import ModelError
from .initialization import InitConfig, init_scores
from .lexicon import Lexicon, Word, ngrams
from .models import (
    DEFAULT_FLOOR,
    NGramDistribution,
    ScoreVector,
    _check_pair,
    _table_for,
    uniform,
    update_native,
    update_translit,
)

log = logging.getLogger(__name__)

SEQUENTIAL = "sequential"  # native first, translit sees the new native
TRANSLIT_FIRST = "translit-first"  # mirror image of SEQUENTIAL
SIMULTANEOUS = "simultaneous"  # both from the previous iteration's pair
SCHEDULES = (SEQUENTIAL, TRANSLIT_FIRST, SIMULTANEOUS)


@dataclass(frozen=True)
class DtimConfig:
    n: int = 2
    tau: int = 10
    stem_length: int = 2
    max_iters: int = 100
    convergence_eps: float = 1e-4
    schedule: str = SEQUENTIAL
    pad: bool = False
    floor: float = DEFAULT_FLOOR
    neutral_score: float = 0.5

    def __post_init__(self):
        if self.n not in (1, 2, 3, 4):
            raise ValueError("n must be in 1..4")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.convergence_eps > 0:
            raise ValueError("convergence_eps must be > 0")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}")
        if not 0 < self.floor < 1:
            raise ValueError("floor must lie in (0, 1)")
        self.init_config()  # validates tau, stem_length, neutral_score

    def init_config(self) -> InitConfig:
        return InitConfig(tau=self.tau, stem_length=self.stem_length, neutral_score=self.neutral_score)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class DtimResult:
    scores: ScoreVector
    native_dist: NGramDistribution
    translit_dist: NGramDistribution
    iterations_run: int
    converged: bool
    objective_trace: list[tuple[float, float]] = field(default_factory=list)
    delta_trace: list[float] = field(default_factory=list)
    eligible: np.ndarray | None = None  # False for words with no n-grams

    def score_map(self, lex: Lexicon) -> dict[str, float]:
        return dict(zip(lex.raw_words, self.scores.native.tolist()))


def _mixtures(lex, w, native, translit, swap):
    _check_pair(native, translit)
    table = _table_for(lex, native)
    nat_sq = w.native[table.occ_word] ** 2
    tra_sq = w.translit[table.occ_word] ** 2
    if swap:
        nat_sq, tra_sq = tra_sq, nat_sq
    return nat_sq * native.probs[table.occ_gram] + tra_sq * translit.probs[table.occ_gram]


def objective_max(lex: Lexicon, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution) -> float:
    """Sum over words and their n-grams of ln(w^2 N(c) + (1-w)^2 T(c))."""
    return float(np.sum(np.log(_mixtures(lex, w, native, translit, swap=False))))


def objective_min(lex: Lexicon, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution) -> float:
    """Sum over words and their n-grams of ln((1-w)^2 N(c) + w^2 T(c))."""
    return float(np.sum(np.log(_mixtures(lex, w, native, translit, swap=True))))


def grad_objective_min(
    lex: Lexicon, w: ScoreVector, native: NGramDistribution, translit: NGramDistribution
) -> np.ndarray:
    """d objective_min / d w for each word (zero for words without n-grams)."""
    _check_pair(native, translit)
    table = _table_for(lex, native)
    nat = w.native[table.occ_word]
    tra = w.translit[table.occ_word]
    n_c = native.probs[table.occ_gram]
    t_c = translit.probs[table.occ_gram]
    denom = nat**2 * t_c + tra**2 * n_c
    terms = (2 * nat * t_c - 2 * tra * n_c) / denom
    return np.bincount(table.occ_word, weights=terms, minlength=len(lex))


def update_scores(
    lex: Lexicon, prev: ScoreVector, native: NGramDistribution, translit: NGramDistribution
) -> ScoreVector:
    """Re-estimate every score as the ratio of native support to total support.

    Denominators are evaluated at the previous scores.  Words without n-grams
    keep their previous value.
    """
    _check_pair(native, translit)
    table = _table_for(lex, native)
    nat_sq = prev.native[table.occ_word] ** 2
    tra_sq = prev.translit[table.occ_word] ** 2
    n_c = native.probs[table.occ_gram]
    t_c = translit.probs[table.occ_gram]
    denom = nat_sq * t_c + tra_sq * n_c
    size = len(lex)
    num_native = np.bincount(table.occ_word, weights=n_c / denom, minlength=size)
    num_translit = np.bincount(table.occ_word, weights=t_c / denom, minlength=size)
    total = np.bincount(table.occ_word, weights=(n_c + t_c) / denom, minlength=size)

    eligible = table.eligible
    new_native = prev.native.copy()
    new_translit = prev.translit.copy()
    new_native[eligible] = num_native[eligible] / total[eligible]
    new_translit[eligible] = num_translit[eligible] / total[eligible]
    return ScoreVector(new_native, new_translit)


def positivity_terms(word: Word, w_n: float, native: NGramDistribution, translit: NGramDistribution) -> list[float]:
    """Per-n-gram numerators ``N T - (w T - (1-w) N)^2`` of the curvature."""
    out = []
    for g in ngrams(word, native.n, native.table.pad):
        n_c, t_c = native.prob(g), translit.prob(g)
        out.append(n_c * t_c - (w_n * t_c - (1 - w_n) * n_c) ** 2)
    return out


def positivity_check(word: Word, w_n: float, native: NGramDistribution, translit: NGramDistribution) -> float:
    """Second derivative of objective_min w.r.t. one word's score.

    Diagnostic only.  Can be negative when a word has outlier n-grams whose
    native and transliterable probabilities disagree strongly.
    """
    _check_pair(native, translit)
    total = 0.0
    terms = positivity_terms(word, w_n, native, translit)
    for g, numer in zip(ngrams(word, native.n, native.table.pad), terms):
        n_c, t_c = native.prob(g), translit.prob(g)
        denom = w_n**2 * t_c + (1 - w_n) ** 2 * n_c
        total += 2.0 * numer / denom**2
    return total


def _step_distributions(lex, cfg, w, native, translit):
    if cfg.schedule == SEQUENTIAL:
        native = update_native(lex, w, native, translit)
        translit = update_translit(lex, w, native, translit)
    elif cfg.schedule == TRANSLIT_FIRST:
        translit = update_translit(lex, w, native, translit)
        native = update_native(lex, w, native, translit)
    else:
        native, translit = (
            update_native(lex, w, native, translit),
            update_translit(lex, w, native, translit),
        )
    return native, translit


def run(
    lex: Lexicon,
    cfg: DtimConfig = DtimConfig(),
    initial: ScoreVector | None = None,
    callback: Callable[[int, ScoreVector, NGramDistribution, NGramDistribution], None] | None = None,
) -> DtimResult:
    """Score every word of ``lex``.

    ``initial`` overrides the stem-diversity initialization; both
    distributions always start uniform.  ``callback(it, w, N, T)`` is called
    after each iteration with the updated state.
    """
    if not len(lex):
        raise ModelError("lexicon is empty")
    if initial is None:
        w = ScoreVector.from_scores(init_scores(lex, cfg.init_config()))
    else:
        if len(initial) != len(lex):
            raise ValueError("initial scores must align with the lexicon")
        w = initial
    native = uniform(lex, cfg.n, cfg.pad, cfg.floor)
    translit = uniform(lex, cfg.n, cfg.pad, cfg.floor)
    eligible = native.table.eligible.copy()

    trace: list[tuple[float, float]] = []
    deltas: list[float] = []
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        native, translit = _step_distributions(lex, cfg, w, native, translit)
        new_w = update_scores(lex, w, native, translit)
        if np.any(new_w.native < 0.0) or np.any(new_w.native > 1.0):
            raise ModelError(f"score left [0, 1] at iteration {it}")
        delta = float(np.max(np.abs(new_w.native - w.native)))
        w = new_w
        trace.append((objective_max(lex, w, native, translit), objective_min(lex, w, native, translit)))
        deltas.append(delta)
        if callback is not None:
            callback(it, w, native, translit)
        log.debug("iteration %d: max score change %.3g, objectives %.6g / %.6g", it, delta, *trace[-1])
        if delta < cfg.convergence_eps:
            converged = True
            break

    return DtimResult(
        scores=w,
        native_dist=native,
        translit_dist=translit,
        iterations_run=it,
        converged=converged,
        objective_trace=trace,
        delta_trace=deltas,
        eligible=eligible,
    )
