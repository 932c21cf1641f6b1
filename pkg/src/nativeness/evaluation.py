"""Ranking metrics against a labeled subset of the lexicon."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import EvaluationError, IngestionError
from .lexicon import read_lines

NATIVE = "native"
TRANSLIT = "transliterable"
UNKNOWN = "unknown"
LABELS = (NATIVE, TRANSLIT, UNKNOWN)
DEFAULT_KS = (50, 100, 150, 200)


@dataclass(frozen=True)
class LabeledSet:
    labels: Mapping[str, str]

    def __post_init__(self):
        for word, label in self.labels.items():
            if label not in LABELS:
                raise ValueError(f"bad label {label!r} for {word!r}")

    def counts(self) -> dict[str, int]:
        out = {lab: 0 for lab in LABELS}
        for label in self.labels.values():
            out[label] += 1
        return out


def load_labels(source) -> LabeledSet:
    """TSV ``word<TAB>label``; labels are case-insensitive, blank lines skipped.

    Lines starting with ``#`` are comments.  A word labelled twice keeps its
    first label.
    """
    labels: dict[str, str] = {}
    for lineno, text in read_lines(source):
        text = text.rstrip("\r\n")
        if not text.strip() or text.startswith("#"):
            continue
        parts = text.split("\t")
        if len(parts) != 2:
            raise IngestionError("expected 'word<TAB>label'", line=lineno)
        word, label = parts[0].strip(), parts[1].strip().lower()
        if not word:
            raise IngestionError("empty word", line=lineno)
        if label not in LABELS:
            raise IngestionError(f"unknown label {parts[1].strip()!r}", line=lineno)
        labels.setdefault(word, label)
    if not labels:
        raise IngestionError("label file has no entries")
    return LabeledSet(labels)


def ordering(
    scores: Mapping[str, float], labeled: LabeledSet
) -> list[tuple[str, str]]:
    """Labelled words present in ``scores``, best score first.

    Ties are broken by ascending word text; unknown labels are dropped.
    """
    rows = [
        (word, label)
        for word, label in labeled.labels.items()
        if label != UNKNOWN and word in scores
    ]
    if not rows:
        raise EvaluationError("no labelled words match the scored words")
    rows.sort(key=lambda r: (-scores[r[0]], r[0]))
    return rows


def precision_at_k(ordered: Sequence[tuple[str, str]], k: int) -> tuple[float, float, float]:
    """(top-k native precision, bottom-k transliterable precision, their mean)."""
    if k < 1 or k > len(ordered):
        raise EvaluationError(f"k={k} outside 1..{len(ordered)}")
    top = sum(1 for _, lab in ordered[:k] if lab == NATIVE) / k
    bottom = sum(1 for _, lab in ordered[-k:] if lab == TRANSLIT) / k
    return top, bottom, (top + bottom) / 2


def clustering_quality(ordered: Sequence[tuple[str, str]]) -> tuple[float, float, float]:
    """Purity of the top-N block (native) and bottom-T block (transliterable).

    N and T are the class sizes, so the two blocks partition the list.
    Returns (native quality, transliterable quality, size-weighted mean).
    """
    n_nat = sum(1 for _, lab in ordered if lab == NATIVE)
    n_tr = sum(1 for _, lab in ordered if lab == TRANSLIT)
    if n_nat == 0 or n_tr == 0:
        raise EvaluationError("clustering quality needs both classes present")
    if n_nat + n_tr != len(ordered):
        raise EvaluationError("ordering contains labels other than native/transliterable")
    native_q = sum(1 for _, lab in ordered[:n_nat] if lab == NATIVE) / n_nat
    translit_q = sum(1 for _, lab in ordered[n_nat:] if lab == TRANSLIT) / n_tr
    weighted = (n_nat * native_q + n_tr * translit_q) / (n_nat + n_tr)
    return native_q, translit_q, weighted


@dataclass
class EvalReport:
    per_k: dict[int, tuple[float, float, float]]
    clustering: tuple[float, float, float]
    n_native: int
    n_translit: int
    n_unknown: int = 0
    unmatched: list[str] = field(default_factory=list)

    def to_tsv(self, name: str = "method") -> str:
        head = ["method"]
        row = [name]
        for k, (top, bot, avg) in self.per_k.items():
            head += [f"top@{k}", f"bottom@{k}", f"avg@{k}"]
            row += [f"{top:.4f}", f"{bot:.4f}", f"{avg:.4f}"]
        head += ["cq_native", "cq_translit", "cq_weighted", "n_native", "n_translit"]
        row += [f"{x:.4f}" for x in self.clustering] + [str(self.n_native), str(self.n_translit)]
        return "\t".join(head) + "\n" + "\t".join(row) + "\n"

    def to_text(self, name: str = "method") -> str:
        lines = [
            f"# labelled: {self.n_native} native, {self.n_translit} transliterable; "
            f"{self.n_unknown} unknown excluded; {len(self.unmatched)} not in lexicon",
        ]
        width = max(len(name), 6)
        ks = list(self.per_k)
        top = " " * width + " | " + " | ".join(f"{'k=' + str(k):^20}" for k in ks)
        sub = " " * width + " | " + " | ".join(f"{'Top':>6} {'Bot':>6} {'Avg':>6}" for _ in ks)
        vals = f"{name:<{width}} | " + " | ".join(
            f"{t:6.2f} {b:6.2f} {a:6.2f}" for t, b, a in self.per_k.values()
        )
        lines += [top, sub, vals, ""]
        lines.append(f"{'':<{width}} | {'Native':>7} {'Translit':>9} {'Weighted':>9}")
        nq, tq, wq = self.clustering
        lines.append(f"{name:<{width}} | {nq:7.2f} {tq:9.2f} {wq:9.2f}")
        return "\n".join(lines) + "\n"


def evaluate(
    scores: Mapping[str, float], labeled: LabeledSet, ks: Iterable[int] = DEFAULT_KS
) -> EvalReport:
    ordered = ordering(scores, labeled)
    per_k = {k: precision_at_k(ordered, k) for k in ks}
    counts = labeled.counts()
    unmatched = [w for w, lab in labeled.labels.items() if lab != UNKNOWN and w not in scores]
    n_nat = sum(1 for _, lab in ordered if lab == NATIVE)
    return EvalReport(
        per_k=per_k,
        clustering=clustering_quality(ordered),
        n_native=n_nat,
        n_translit=len(ordered) - n_nat,
        n_unknown=counts[UNKNOWN],
        unmatched=unmatched,
    )
