"""Seeded two-class synthetic lexicons with ground-truth labels.

Native words are built from a small pool of productive stems, each followed
by freely varying characters, so their stems show high continuation
diversity.  Transliterable words draw every character independently from a
second distribution, so their stems are rarely shared.  The alphabet of the
second class overlaps the first by a configurable fraction.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from .evaluation import NATIVE, TRANSLIT

_SYMBOLS = (
    string.ascii_lowercase
    + "".join(chr(c) for c in range(0x03B1, 0x03CA))  # Greek
    + "".join(chr(c) for c in range(0x0430, 0x0450))  # Cyrillic
)


@dataclass(frozen=True)
class SynthConfig:
    native_alphabet: int = 13
    translit_alphabet: int = 13
    n_native: int = 500
    n_translit: int = 500
    min_len: int = 3
    max_len: int = 8
    overlap: float = 0.0
    native_stems: int = 25
    stem_length: int = 2
    zipf: float = 1.0
    identical: bool = False  # both classes from the native generator
    seed: int = 0

    def __post_init__(self):
        if self.native_alphabet < 1 or self.translit_alphabet < 1:
            raise ValueError("alphabets must be non-empty")
        if not 0.0 <= self.overlap <= 1.0:
            raise ValueError("overlap must lie in [0, 1]")
        if self.n_native < 1 or self.n_translit < 1:
            raise ValueError("both classes need at least one word")
        if not 1 <= self.min_len <= self.max_len:
            raise ValueError("need 1 <= min_len <= max_len")
        if self.native_stems < 1 or self.stem_length < 1:
            raise ValueError("native_stems and stem_length must be >= 1")
        if self.stem_length >= self.max_len:
            raise ValueError("stem_length must be shorter than max_len")
        shared = round(self.overlap * min(self.translit_alphabet, self.native_alphabet))
        if self.native_alphabet + self.translit_alphabet - shared > len(_SYMBOLS):
            raise ValueError(f"at most {len(_SYMBOLS)} distinct symbols available")


def _alphabets(cfg: SynthConfig, rng: np.random.Generator) -> tuple[list[str], list[str]]:
    native = list(_SYMBOLS[: cfg.native_alphabet])
    shared = round(cfg.overlap * min(cfg.translit_alphabet, cfg.native_alphabet))
    borrowed = [native[i] for i in sorted(rng.choice(len(native), size=shared, replace=False))]
    start = cfg.native_alphabet
    own = list(_SYMBOLS[start : start + cfg.translit_alphabet - shared])
    return native, borrowed + own


def _zipf_weights(size: int, s: float, rng: np.random.Generator) -> np.ndarray:
    w = 1.0 / np.arange(1, size + 1) ** s
    return rng.permutation(w / w.sum())


class _Sampler:
    def __init__(self, alphabet, weights, rng):
        self.alphabet = alphabet
        self.weights = weights
        self.rng = rng

    def chars(self, k: int) -> str:
        idx = self.rng.choice(len(self.alphabet), size=k, p=self.weights)
        return "".join(self.alphabet[i] for i in idx)


def generate(cfg: SynthConfig) -> tuple[list[str], dict[str, str]]:
    """Return (words in lexicon order, word -> label)."""
    rng = np.random.default_rng(cfg.seed)
    nat_alpha, tr_alpha = _alphabets(cfg, rng)
    nat = _Sampler(nat_alpha, _zipf_weights(len(nat_alpha), cfg.zipf, rng), rng)
    tr = _Sampler(tr_alpha, _zipf_weights(len(tr_alpha), cfg.zipf, rng), rng)
    stems = [nat.chars(cfg.stem_length) for _ in range(cfg.native_stems)]

    def native_word() -> str:
        length = int(rng.integers(max(cfg.min_len, cfg.stem_length + 1), cfg.max_len + 1))
        return stems[int(rng.integers(len(stems)))] + nat.chars(length - cfg.stem_length)

    def translit_word() -> str:
        return tr.chars(int(rng.integers(cfg.min_len, cfg.max_len + 1)))

    makers = {NATIVE: native_word, TRANSLIT: native_word if cfg.identical else translit_word}
    labels: dict[str, str] = {}
    for label, want in ((NATIVE, cfg.n_native), (TRANSLIT, cfg.n_translit)):
        got, attempts = 0, 0
        while got < want:
            attempts += 1
            if attempts > 1000 * want:
                raise ValueError(f"cannot draw {want} distinct {label} words with these parameters")
            word = makers[label]()
            if word in labels:
                continue
            labels[word] = label
            got += 1
    words = list(labels)
    order = rng.permutation(len(words))
    return [words[i] for i in order], labels
