"""Score files, run manifests and distribution dumps."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Iterable, Mapping

from .errors import IngestionError
from .lexicon import read_lines
from .models import NGramDistribution

HEADER_PREFIX = "# manifest-sha256: "
# Manifest keys that vary between otherwise identical runs.
_VOLATILE = ("wall_time_s", "manifest_sha256")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_hash(manifest: Mapping) -> str:
    stable = {k: v for k, v in manifest.items() if k not in _VOLATILE}
    blob = json.dumps(stable, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def ranked(scores: Mapping[str, float]) -> list[tuple[str, float]]:
    """Descending score, ties by ascending word text."""
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def format_scores(rows: Iterable[tuple[str, float]], digest: str | None = None) -> str:
    out = []
    if digest is not None:
        out.append(HEADER_PREFIX + digest + "\n")
    for word, score in rows:
        out.append(f"{word}\t{float(score)!r}\n")
    return "".join(out)


def write_scores(path, scores: Mapping[str, float], digest: str | None = None, min_chars: int = 0, lengths=None) -> None:
    rows = ranked(scores)
    if min_chars and lengths is not None:
        rows = [r for r in rows if lengths[r[0]] >= min_chars]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_scores(rows, digest))


def read_scores(source) -> tuple[dict[str, float], str | None]:
    """Parse a score TSV; returns (word -> score, manifest digest or None)."""
    scores: dict[str, float] = {}
    digest = None
    for lineno, text in read_lines(source):
        text = text.rstrip("\r\n")
        if text.startswith(HEADER_PREFIX):
            digest = text[len(HEADER_PREFIX):].strip()
            continue
        if not text.strip() or text.startswith("#"):
            continue
        parts = text.split("\t")
        if len(parts) != 2:
            raise IngestionError("expected 'word<TAB>score'", line=lineno)
        word = parts[0].strip()
        try:
            value = float(parts[1])
        except ValueError:
            raise IngestionError(f"score {parts[1]!r} is not a number", line=lineno) from None
        if not word or math.isnan(value):
            raise IngestionError("empty word or NaN score", line=lineno)
        if word in scores:
            raise IngestionError(f"duplicate word {word!r}", line=lineno)
        scores[word] = value
    if not scores:
        raise IngestionError("score file has no entries")
    return scores, digest


def manifest_path(score_path) -> Path:
    p = Path(score_path)
    return p.with_name(p.name + ".manifest.json")


def write_manifest(path, manifest: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def format_distributions(native: NGramDistribution, translit: NGramDistribution) -> str:
    """TSV ``ngram<TAB>prob_native<TAB>prob_translit`` in vocabulary order."""
    table = native.table
    lines = [
        f"{table.render(g)}\t{p!r}\t{q!r}\n"
        for g, p, q in zip(table.vocab, native.probs.tolist(), translit.probs.tolist())
    ]
    return "".join(lines)
