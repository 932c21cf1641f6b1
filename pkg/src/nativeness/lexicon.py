"""Word lists, grapheme segmentation, n-gram extraction and the stem index.

A *character* here is one extended grapheme cluster (UAX #29, as implemented
by the ``regex`` module's ``\\X``).  For Malayalam this keeps a consonant with
its vowel sign, and since Unicode 15.1 also keeps virama-joined conjuncts
together, which matches the pipe-delimited characters used in the literature
(``|pu|ra|ttha|kki|``).  A codepoint mode is available for ablation.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
import regex

from .errors import IngestionError, ModelError

GRAPHEME = "grapheme"
CODEPOINT = "codepoint"
SEGMENTATIONS = (GRAPHEME, CODEPOINT)

# Boundary markers used only when padding is requested; they are multi-grapheme
# strings, so they can never collide with a real character.
BOW = "<w>"
EOW = "</w>"

_CLUSTER = regex.compile(r"\X")

Character = str
NGram = tuple  # tuple[Character, ...]
Stem = tuple  # tuple[Character, ...]


def segment(raw: str | bytes, mode: str = GRAPHEME) -> list[Character]:
    """Split ``raw`` into characters.

    ``raw`` may be bytes, in which case it must be valid UTF-8; the error
    reports the offending byte offset.
    """
    if isinstance(raw, (bytes, bytearray)):
        try:
            raw = bytes(raw).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestionError("malformed UTF-8", byte_offset=exc.start) from None
    if mode == GRAPHEME:
        return _CLUSTER.findall(raw)
    if mode == CODEPOINT:
        return list(raw)
    raise ValueError(f"unknown segmentation mode {mode!r}")


@dataclass(frozen=True)
class Word:
    raw: str
    chars: tuple[Character, ...]

    @classmethod
    def from_text(cls, raw: str, mode: str = GRAPHEME) -> "Word":
        return cls(raw, tuple(segment(raw, mode)))

    @property
    def length(self) -> int:
        return len(self.chars)

    def __len__(self) -> int:
        return len(self.chars)


def ngrams(word: Word | Sequence[Character], n: int, pad: bool = False) -> list[NGram]:
    """Contiguous n-grams of a word, in order.

    Without padding a word shorter than ``n`` has no n-grams.  With ``pad``
    the word is wrapped in one begin and one end marker first.
    """
    if n not in (1, 2, 3, 4):
        raise ValueError(f"n must be in 1..4, got {n}")
    chars = word.chars if isinstance(word, Word) else tuple(word)
    if pad:
        chars = (BOW, *chars, EOW)
    return [tuple(chars[i:i + n]) for i in range(len(chars) - n + 1)]


@dataclass(frozen=True)
class NGramTable:
    """Flattened word/n-gram incidence of a lexicon for one n-gram order.

    Every n-gram occurrence is one entry of ``occ_word``/``occ_gram``, in
    lexicon order, so accumulations via ``np.bincount`` are deterministic.
    """

    n: int
    pad: bool
    vocab: tuple[NGram, ...]
    gram_ids: Mapping[NGram, int]
    occ_word: np.ndarray
    occ_gram: np.ndarray
    eligible: np.ndarray  # word has at least one n-gram
    n_words: int

    @property
    def size(self) -> int:
        return len(self.vocab)

    def gram_counts(self) -> np.ndarray:
        return np.bincount(self.occ_gram, minlength=self.size).astype(float)

    def render(self, gram: NGram) -> str:
        return "".join(gram)


class Lexicon:
    """Deduplicated, ordered word list plus the stem diversity index.

    Treated as immutable once built.
    """

    def __init__(
        self,
        words: Iterable[str | Word],
        stem_length: int = 2,
        segmentation: str = GRAPHEME,
    ):
        if stem_length < 1:
            raise ValueError("stem_length must be >= 1")
        if segmentation not in SEGMENTATIONS:
            raise ValueError(f"unknown segmentation mode {segmentation!r}")
        self.stem_length = stem_length
        self.segmentation = segmentation

        seen: dict[str, int] = {}
        kept: list[Word] = []
        for item in words:
            word = item if isinstance(item, Word) else Word.from_text(item, segmentation)
            if not word.chars or word.raw in seen:
                continue
            seen[word.raw] = len(kept)
            kept.append(word)
        self.words: tuple[Word, ...] = tuple(kept)
        self._position = seen

        vocab: set[Character] = set()
        stems: dict[Stem, set[Character]] = {}
        for word in self.words:
            vocab.update(word.chars)
            if word.length >= stem_length:
                followers = stems.setdefault(word.chars[:stem_length], set())
                if word.length > stem_length:
                    followers.add(word.chars[stem_length])
        self.char_vocab: frozenset[Character] = frozenset(vocab)
        self.stem_index: Mapping[Stem, frozenset[Character]] = {
            s: frozenset(c) for s, c in stems.items()
        }
        self._tables: dict[tuple[int, bool], NGramTable] = {}

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, raw: object) -> bool:
        return raw in self._position

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return (
            self.words == other.words
            and self.stem_length == other.stem_length
            and self.segmentation == other.segmentation
        )

    def __repr__(self) -> str:
        return f"Lexicon({len(self)} words, stem_length={self.stem_length})"

    @property
    def raw_words(self) -> list[str]:
        return [w.raw for w in self.words]

    def position(self, raw: str) -> int:
        return self._position[raw]

    def stem(self, word: Word) -> Stem | None:
        if word.length < self.stem_length:
            return None
        return word.chars[: self.stem_length]

    def diversity(self, stem: Stem) -> int:
        return diversity(self, stem)

    def ngram_table(self, n: int, pad: bool = False) -> NGramTable:
        key = (n, pad)
        if key not in self._tables:
            self._tables[key] = _build_table(self, n, pad)
        return self._tables[key]

    def with_stem_length(self, stem_length: int) -> "Lexicon":
        """Same words, stem index rebuilt; n-gram tables are shared."""
        if stem_length == self.stem_length:
            return self
        other = Lexicon(self.words, stem_length=stem_length, segmentation=self.segmentation)
        other._tables = self._tables
        return other

    def serialize(self) -> str:
        return "".join(w.raw + "\n" for w in self.words)


def diversity(lex: Lexicon, stem: Stem) -> int:
    """Number of distinct characters seen right after ``stem``; 0 if unseen."""
    if len(stem) != lex.stem_length:
        raise ValueError(f"stem must have length {lex.stem_length}, got {len(stem)}")
    return len(lex.stem_index.get(tuple(stem), ()))


def _build_table(lex: Lexicon, n: int, pad: bool) -> NGramTable:
    gram_ids: dict[NGram, int] = {}
    occ_word: list[int] = []
    occ_gram: list[int] = []
    eligible = np.zeros(len(lex), dtype=bool)
    for i, word in enumerate(lex.words):
        grams = ngrams(word, n, pad)
        if grams:
            eligible[i] = True
        for g in grams:
            occ_word.append(i)
            occ_gram.append(gram_ids.setdefault(g, len(gram_ids)))
    if not gram_ids:
        raise ModelError(f"lexicon has no {n}-grams (every word is shorter than {n})")
    return NGramTable(
        n=n,
        pad=pad,
        vocab=tuple(gram_ids),
        gram_ids=gram_ids,
        occ_word=np.asarray(occ_word, dtype=np.intp),
        occ_gram=np.asarray(occ_gram, dtype=np.intp),
        eligible=eligible,
        n_words=len(lex),
    )


def _iter_byte_lines(source) -> Iterator[bytes | str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            yield from fh
    elif isinstance(source, (bytes, bytearray)):
        yield from io.BytesIO(source)
    else:
        yield from source


def read_lines(source) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for a path, byte/text stream or iterable.

    Byte input is decoded strictly; a bad line raises ``IngestionError`` with
    its line number and the byte offset within that line.
    """
    for lineno, line in enumerate(_iter_byte_lines(source), start=1):
        if isinstance(line, (bytes, bytearray)):
            try:
                line = bytes(line).decode("utf-8")
            except UnicodeDecodeError as exc:
                raise IngestionError("malformed UTF-8", line=lineno, byte_offset=exc.start) from None
        if lineno == 1:
            line = line.lstrip("\ufeff")
        yield lineno, line


def load_lexicon(source, stem_length: int = 2, segmentation: str = GRAPHEME) -> Lexicon:
    """Read one word per line; blank lines are skipped, duplicates dropped."""
    if stem_length < 1:
        raise ValueError("stem_length must be >= 1")
    words = (text.strip() for _, text in read_lines(source))
    lex = Lexicon((w for w in words if w), stem_length=stem_length, segmentation=segmentation)
    if not len(lex):
        raise IngestionError("no admissible words in input")
    return lex
