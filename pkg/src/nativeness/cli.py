"""Command-line entry point: ``nativeness score|eval|sweep|synth``.

Exit status: 0 on success, 1 for usage errors, 2 for data errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .baselines import DEFAULT_LAMBDA, gen_scores, init_baseline
from .errors import NativenessError
from .evaluation import DEFAULT_KS, clustering_quality, evaluate, load_labels, ordering
from .io import (
    file_digest,
    format_distributions,
    format_scores,
    manifest_hash,
    manifest_path,
    read_manifest,
    ranked,
    read_scores,
    write_manifest,
    write_scores,
)
from .lexicon import GRAPHEME, SEGMENTATIONS, load_lexicon
from .optimizer import SCHEDULES, SEQUENTIAL, DtimConfig, run
from .synth import SynthConfig, generate

log = logging.getLogger("nativeness")

EXIT_USAGE = 1
EXIT_DATA = 2

DEFAULTS = {
    "method": "dtim",
    "n": 2,
    "tau": 10,
    "stem": 2,
    "max_iters": 100,
    "eps": 1e-4,
    "schedule": SEQUENTIAL,
    "pad": False,
    "lambda": DEFAULT_LAMBDA,
    "per_pair": False,
    "segmentation": GRAPHEME,
    "min_chars": 0,
}
DTIM_ONLY = ("n", "max_iters", "eps", "schedule", "pad")
GEN_ONLY = ("lambda", "per_pair")
STEM_METHODS = ("dtim", "init")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    # Defaults are None so that explicitly given flags can be told apart.
    p.add_argument("--config", help="JSON file with default option values")
    p.add_argument("--print-config", action="store_true", help="print the effective configuration and exit")
    p.add_argument("--tau", type=int)
    p.add_argument("--stem", type=int, help="word stem length")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--eps", type=float, help="convergence threshold on the max score change")
    p.add_argument("--schedule", choices=SCHEDULES)
    p.add_argument("--pad", action="store_true", default=None, help="add word-boundary markers to n-grams")
    p.add_argument("--segmentation", choices=SEGMENTATIONS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nativeness", description="Unsupervised nativeness scoring of a word list.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("score", help="score every word of a lexicon")
    p.add_argument("lexicon")
    p.add_argument("--method", choices=("dtim", "init", "gen"))
    p.add_argument("--n", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--lambda", dest="lambda_", type=float, help="bigram weight for the gen baseline")
    p.add_argument("--per-pair", action="store_true", default=None, help="gen: average log-prob per pair")
    p.add_argument("--min-chars", type=int, help="only write words with at least this many characters")
    p.add_argument("-o", "--output", help="score TSV path (default: stdout)")
    p.add_argument("--manifest", help="manifest path (default: <output>.manifest.json)")
    p.add_argument("--dump-dists", help="dtim: write the learned distributions as TSV")
    _add_model_flags(p)

    p = sub.add_parser("eval", help="evaluate a score file against labels")
    p.add_argument("scores")
    p.add_argument("labels")
    p.add_argument("--k", type=_int_list, default=list(DEFAULT_KS), help="comma-separated k values")
    p.add_argument("--name", default=None, help="row label in the report")
    p.add_argument("--tsv", help="also write the report as TSV here")

    p = sub.add_parser("sweep", help="clustering quality over a grid of n, tau and stem length")
    p.add_argument("lexicon")
    p.add_argument("labels")
    p.add_argument("--n", type=_int_list, default=[2])
    p.add_argument("--tau", type=_int_list, default=[10])
    p.add_argument("--stem", type=_int_list, default=[2])
    p.add_argument("--max-iters", type=int, default=DEFAULTS["max_iters"])
    p.add_argument("--eps", type=float, default=DEFAULTS["eps"])
    p.add_argument("--schedule", choices=SCHEDULES, default=SEQUENTIAL)
    p.add_argument("--segmentation", choices=SEGMENTATIONS, default=GRAPHEME)
    p.add_argument("-o", "--output", help="sweep TSV path (default: stdout)")

    p = sub.add_parser("synth", help="generate a synthetic labelled lexicon")
    p.add_argument("--out-dir", required=True)
    for name in SynthConfig.__dataclass_fields__:
        if name == "identical":
            continue
        default = SynthConfig.__dataclass_fields__[name].default
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    p.add_argument("--identical", action="store_true", help="draw both classes from the native generator")
    return parser


def _effective_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(loaded)
    given = {
        "method": args.method,
        "n": args.n,
        "tau": args.tau,
        "stem": args.stem,
        "max_iters": args.max_iters,
        "eps": args.eps,
        "schedule": args.schedule,
        "pad": args.pad,
        "lambda": args.lambda_,
        "per_pair": args.per_pair,
        "segmentation": args.segmentation,
        "min_chars": args.min_chars,
    }
    explicit = {k for k, v in given.items() if v is not None}
    cfg.update({k: given[k] for k in explicit})

    method = cfg["method"]
    misplaced = []
    if method != "dtim":
        misplaced += [k for k in DTIM_ONLY if k in explicit]
        if args.dump_dists:
            misplaced.append("dump_dists")
    if method != "gen":
        misplaced += [k for k in GEN_ONLY if k in explicit]
    if method not in STEM_METHODS:
        misplaced += [k for k in ("tau", "stem") if k in explicit]
    if misplaced:
        flags = ", ".join("--" + k.replace("_", "-") for k in misplaced)
        raise UsageError(f"{flags} not applicable to --method {method}")
    return cfg


def _dtim_config(cfg: dict) -> DtimConfig:
    try:
        return DtimConfig(
            n=cfg["n"], tau=cfg["tau"], stem_length=cfg["stem"], max_iters=cfg["max_iters"],
            convergence_eps=cfg["eps"], schedule=cfg["schedule"], pad=bool(cfg["pad"]),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_score(args) -> int:
    cfg = _effective_config(args)
    if args.print_config:
        print(json.dumps(cfg, indent=2, sort_keys=True))
        return 0
    method = cfg["method"]
    dtim_cfg = _dtim_config(cfg) if method in STEM_METHODS else None
    if method == "gen" and not 0.0 <= cfg["lambda"] <= 1.0:
        raise UsageError("--lambda must lie in [0, 1]")

    started = time.perf_counter()
    lex = load_lexicon(args.lexicon, stem_length=cfg["stem"], segmentation=cfg["segmentation"])
    manifest = {
        "tool": "nativeness",
        "version": __version__,
        "method": method,
        "config": cfg,
        "inputs": {"lexicon": {"path": str(args.lexicon), "sha256": file_digest(args.lexicon)}},
        "n_words": len(lex),
    }
    if method == "dtim":
        result = run(lex, dtim_cfg)
        values = result.scores.native
        manifest.update(
            iterations_run=result.iterations_run,
            converged=result.converged,
            n_words_without_ngrams=int((~result.eligible).sum()),
        )
        if args.dump_dists:
            Path(args.dump_dists).write_text(
                format_distributions(result.native_dist, result.translit_dist), encoding="utf-8"
            )
    elif method == "init":
        values = init_baseline(lex, dtim_cfg.init_config())
    else:
        values = gen_scores(lex, cfg["lambda"], per_pair=bool(cfg["per_pair"]))
    manifest["wall_time_s"] = round(time.perf_counter() - started, 3)
    digest = manifest_hash(manifest)
    manifest["manifest_sha256"] = digest

    scores = dict(zip(lex.raw_words, values.tolist()))
    lengths = {w.raw: w.length for w in lex.words}
    if args.output:
        write_scores(args.output, scores, digest, min_chars=cfg["min_chars"], lengths=lengths)
    else:
        rows = [r for r in ranked(scores) if lengths[r[0]] >= cfg["min_chars"]]
        sys.stdout.write(format_scores(rows, digest))
    mpath = args.manifest or (manifest_path(args.output) if args.output else None)
    if mpath:
        write_manifest(mpath, manifest)
    return 0


def cmd_eval(args) -> int:
    scores, digest = read_scores(args.scores)
    labeled = load_labels(args.labels)
    mpath = manifest_path(args.scores)
    name = args.name
    if mpath.exists():
        manifest = read_manifest(mpath)
        if digest is not None and manifest_hash(manifest) != digest:
            log.warning("score file header does not match %s", mpath)
        name = name or manifest.get("method")
    elif digest is not None:
        log.warning("no manifest found next to %s", args.scores)
    report = evaluate(scores, labeled, args.k)
    name = name or "scores"
    if report.unmatched:
        log.warning("%d labelled words not found in the score file", len(report.unmatched))
    sys.stdout.write(report.to_text(name))
    if args.tsv:
        Path(args.tsv).write_text(report.to_tsv(name), encoding="utf-8")
    return 0


def cmd_sweep(args) -> int:
    labeled = load_labels(args.labels)
    base = load_lexicon(args.lexicon, stem_length=args.stem[0], segmentation=args.segmentation)
    rows = ["n\ttau\tstem\tcq_native\tcq_translit\tcq_weighted\titerations\tconverged\n"]
    for n, tau, stem in itertools.product(args.n, args.tau, args.stem):
        try:
            cfg = DtimConfig(n=n, tau=tau, stem_length=stem, max_iters=args.max_iters,
                             convergence_eps=args.eps, schedule=args.schedule)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        lex = base.with_stem_length(stem)
        result = run(lex, cfg)
        nq, tq, wq = clustering_quality(ordering(result.score_map(lex), labeled))
        log.info("n=%d tau=%d stem=%d -> %.4f", n, tau, stem, wq)
        rows.append(f"{n}\t{tau}\t{stem}\t{nq:.4f}\t{tq:.4f}\t{wq:.4f}\t{result.iterations_run}\t{int(result.converged)}\n")
    text = "".join(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_synth(args) -> int:
    fields = {name: getattr(args, name) for name in SynthConfig.__dataclass_fields__}
    try:
        cfg = SynthConfig(**fields)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    words, labels = generate(cfg)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "words.txt").write_text("".join(w + "\n" for w in words), encoding="utf-8")
    (out / "labels.tsv").write_text("".join(f"{w}\t{labels[w]}\n" for w in words), encoding="utf-8")
    (out / "synth.json").write_text(json.dumps(fields, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0


COMMANDS = {"score": cmd_score, "eval": cmd_eval, "sweep": cmd_sweep, "synth": cmd_synth}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"nativeness: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NativenessError, ValueError, OSError) as exc:
        print(f"nativeness: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
