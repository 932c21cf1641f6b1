import json

import numpy as np
import pytest

from nativeness.cli import main
from nativeness.initialization import InitConfig, init_scores
from nativeness.io import manifest_hash, manifest_path, read_manifest, read_scores
from nativeness.lexicon import load_lexicon


@pytest.fixture
def synth_dir(tmp_path):
    out = tmp_path / "synth"
    assert main(["synth", "--out-dir", str(out), "--n-native", "80", "--n-translit", "80", "--seed", "4"]) == 0
    return out


def _score(tmp_path, synth_dir, name, *extra):
    out = tmp_path / name
    code = main(["score", str(synth_dir / "words.txt"), "-o", str(out), *extra])
    return code, out


def test_score_writes_sorted_tsv_and_manifest(tmp_path, synth_dir):
    code, out = _score(tmp_path, synth_dir, "s.tsv")
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# manifest-sha256: ")
    values = [float(line.split("\t")[1]) for line in lines[1:]]
    assert values == sorted(values, reverse=True)
    manifest = read_manifest(manifest_path(out))
    scores, digest = read_scores(out)
    assert digest == manifest["manifest_sha256"] == manifest_hash(manifest)
    assert manifest["n_words"] == len(scores) == 160
    assert manifest["config"]["n"] == 2
    assert len(manifest["inputs"]["lexicon"]["sha256"]) == 64


@pytest.mark.parametrize("method", ["dtim", "init", "gen"])
def test_repeated_runs_are_byte_identical(tmp_path, synth_dir, method):
    _, a = _score(tmp_path, synth_dir, "a.tsv", "--method", method)
    _, b = _score(tmp_path, synth_dir, "b.tsv", "--method", method)
    assert a.read_bytes() == b.read_bytes()


def test_init_method_matches_library(tmp_path, synth_dir):
    _, out = _score(tmp_path, synth_dir, "i.tsv", "--method", "init", "--tau", "7")
    scores, _ = read_scores(out)
    lex = load_lexicon(synth_dir / "words.txt")
    expected = init_scores(lex, InitConfig(tau=7))
    assert [scores[w] for w in lex.raw_words] == expected.tolist()


def test_stdout_output(capsys, synth_dir):
    assert main(["score", str(synth_dir / "words.txt"), "--method", "init"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# manifest-sha256: ")
    assert len(out.splitlines()) == 161


@pytest.mark.parametrize("argv", [
    ["score", "x.txt", "--method", "init", "--n", "3"],
    ["score", "x.txt", "--method", "gen", "--tau", "3"],
    ["score", "x.txt", "--method", "dtim", "--lambda", "0.5"],
    ["score", "x.txt", "--n", "7"],
    ["score", "x.txt", "--max-iters", "0"],
    ["sweep", "x.txt", "y.tsv", "--tau", ""],
    ["bogus"],
])
def test_usage_errors_exit_1(argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_data_errors_exit_2(tmp_path, synth_dir):
    assert main(["score", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"ok\n\xff\xfe\n")
    assert main(["score", str(bad)]) == 2
    empty = tmp_path / "empty.txt"
    empty.write_text("\n\n")
    assert main(["score", str(empty)]) == 2
    _, out = _score(tmp_path, synth_dir, "s.tsv")
    assert main(["eval", str(out), str(synth_dir / "labels.tsv"), "--k", "1000"]) == 2


def test_print_config_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 3, "tau": 5}))
    assert main(["score", "unused.txt", "--config", str(cfg), "--tau", "8", "--print-config"]) == 0
    eff = json.loads(capsys.readouterr().out)
    assert (eff["n"], eff["tau"], eff["stem"]) == (3, 8, 2)
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["score", "unused.txt", "--config", str(cfg), "--print-config"]) == 1


def test_dump_dists(tmp_path, synth_dir):
    dump = tmp_path / "d.tsv"
    code, _ = _score(tmp_path, synth_dir, "s.tsv", "--dump-dists", str(dump))
    assert code == 0
    rows = [line.split("\t") for line in dump.read_text(encoding="utf-8").splitlines()]
    assert all(len(r) == 3 for r in rows)
    assert abs(sum(float(r[1]) for r in rows) - 1) < 1e-9
    assert abs(sum(float(r[2]) for r in rows) - 1) < 1e-9


def test_min_chars_filter(tmp_path):
    words = tmp_path / "w.txt"
    words.write_text("a\nab\nabc\nabd\n", encoding="utf-8")
    out = tmp_path / "s.tsv"
    assert main(["score", str(words), "-o", str(out), "--min-chars", "3"]) == 0
    scores, _ = read_scores(out)
    assert set(scores) == {"abc", "abd"}
    manifest = read_manifest(manifest_path(out))
    assert manifest["n_words"] == 4 and manifest["n_words_without_ngrams"] == 1


def test_eval_report(tmp_path, synth_dir, capsys):
    _, out = _score(tmp_path, synth_dir, "s.tsv")
    tsv = tmp_path / "r.tsv"
    assert main(["eval", str(out), str(synth_dir / "labels.tsv"), "--k", "10,20", "--tsv", str(tsv)]) == 0
    text = capsys.readouterr().out
    assert "dtim" in text and "Weighted" in text
    head, row = [line.split("\t") for line in tsv.read_text().splitlines()]
    assert head[:4] == ["method", "top@10", "bottom@10", "avg@10"]
    assert float(row[head.index("cq_weighted")]) == 1.0


def test_sweep_rows(tmp_path, synth_dir):
    out = tmp_path / "sweep.tsv"
    argv = ["sweep", str(synth_dir / "words.txt"), str(synth_dir / "labels.tsv"),
            "--n", "1,2", "--tau", "5,10", "--stem", "1,2", "-o", str(out)]
    assert main(argv) == 0
    lines = out.read_text().splitlines()
    assert lines[0].split("\t")[:3] == ["n", "tau", "stem"]
    assert len(lines) == 1 + 8
    # sweep at (2, 10, 2) agrees with a direct score + eval
    row = next(r.split("\t") for r in lines[1:] if r.startswith("2\t10\t2\t"))
    _, scored = _score(tmp_path, synth_dir, "s.tsv")
    tsv = tmp_path / "r.tsv"
    main(["eval", str(scored), str(synth_dir / "labels.tsv"), "--k", "10", "--tsv", str(tsv)])
    head, vals = [line.split("\t") for line in tsv.read_text().splitlines()]
    assert row[5] == vals[head.index("cq_weighted")]


def test_synth_deterministic(tmp_path):
    for name in ("a", "b"):
        assert main(["synth", "--out-dir", str(tmp_path / name), "--seed", "9", "--overlap", "0.5"]) == 0
    for f in ("words.txt", "labels.tsv", "synth.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    assert main(["synth", "--out-dir", str(tmp_path / "c"), "--overlap", "2"]) == 1


def test_gen_method_range(tmp_path, synth_dir):
    _, out = _score(tmp_path, synth_dir, "g.tsv", "--method", "gen")
    scores, _ = read_scores(out)
    assert all(v <= 0 for v in scores.values())
    assert np.isfinite(list(scores.values())).all()
