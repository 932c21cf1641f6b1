"""Stem-diversity initialization of nativeness scores."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lexicon import Lexicon

CAP = 0.99


@dataclass(frozen=True)
class InitConfig:
    tau: int = 10
    stem_length: int = 2
    neutral_score: float = 0.5  # for words shorter than the stem

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be >= 1")
        if self.stem_length < 1:
            raise ValueError("stem_length must be >= 1")
        if not 0.0 < self.neutral_score < 1.0:
            raise ValueError("neutral_score must lie strictly between 0 and 1")


def init_scores(lex: Lexicon, cfg: InitConfig = InitConfig()) -> np.ndarray:
    """Initial score per word: ``min(0.99, diversity(stem) / tau)``.

    Words with no stem get ``cfg.neutral_score``.  The lexicon's own stem
    length must match the config, since the stem index is built at load time.
    """
    if not len(lex):
        raise ValueError("lexicon is empty")
    if lex.stem_length != cfg.stem_length:
        raise ValueError(
            f"lexicon was built with stem_length={lex.stem_length}, config asks for {cfg.stem_length}"
        )
    out = np.empty(len(lex), dtype=float)
    for i, word in enumerate(lex.words):
        stem = lex.stem(word)
        if stem is None:
            out[i] = cfg.neutral_score
        else:
            out[i] = min(CAP, lex.diversity(stem) / cfg.tau)
    return out
