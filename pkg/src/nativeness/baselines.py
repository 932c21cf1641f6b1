"""Comparison scorers: the raw stem-diversity score and a character LM.

The language-model baseline ranks a word by its support under an interpolated
bigram/unigram character model trained on the whole lexicon; rare character
sequences (expected to be transliterations) score low.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ModelError
from .initialization import InitConfig, init_scores
from .lexicon import Character, Lexicon, Word

DEFAULT_LAMBDA = 0.8


@dataclass(frozen=True)
class CharLanguageModel:
    unigram: dict[Character, float]
    bigram: dict[tuple[Character, Character], float]  # (prev, next) -> P(next | prev)
    lam: float = DEFAULT_LAMBDA

    def pair_prob(self, prev: Character, nxt: Character) -> float:
        return self.lam * self.bigram.get((prev, nxt), 0.0) + (1.0 - self.lam) * self.unigram[nxt]


def train_lm(lex: Lexicon, lam: float = DEFAULT_LAMBDA) -> CharLanguageModel:
    """Maximum-likelihood unigram and conditional bigram estimates over ``lex``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    if not len(lex):
        raise ModelError("lexicon is empty")
    uni: Counter = Counter()
    pairs: Counter = Counter()
    contexts: Counter = Counter()
    for word in lex.words:
        uni.update(word.chars)
        for a, b in zip(word.chars, word.chars[1:]):
            pairs[a, b] += 1
            contexts[a] += 1
    total = sum(uni.values())
    unigram = {c: k / total for c, k in uni.items()}
    bigram = {(a, b): k / contexts[a] for (a, b), k in pairs.items()}
    return CharLanguageModel(unigram, bigram, lam)


def gen_score(word: Word, lm: CharLanguageModel, per_pair: bool = False) -> float:
    """Log of the product of interpolated pair probabilities.

    A single-character word has no pairs and is scored ``ln U(c)`` instead of
    the empty product.  ``per_pair`` divides by the number of factors.
    """
    chars = word.chars
    for c in chars:
        if c not in lm.unigram:
            raise ModelError(f"character {c!r} not in language model vocabulary")
    if len(chars) == 1:
        return math.log(lm.unigram[chars[0]])
    total = 0.0
    for a, b in zip(chars, chars[1:]):
        total += math.log(lm.pair_prob(a, b))
    return total / (len(chars) - 1) if per_pair else total


def gen_scores(lex: Lexicon, lam: float = DEFAULT_LAMBDA, per_pair: bool = False) -> np.ndarray:
    lm = train_lm(lex, lam)
    return np.array([gen_score(w, lm, per_pair) for w in lex.words])


def init_baseline(lex: Lexicon, cfg: InitConfig = InitConfig()) -> np.ndarray:
    """The initialization score used directly as a ranking."""
    return init_scores(lex, cfg)
