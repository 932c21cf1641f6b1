import pytest

from nativeness.evaluation import NATIVE, TRANSLIT
from nativeness.synth import SynthConfig, generate


def test_same_seed_same_output():
    cfg = SynthConfig(seed=11, overlap=0.3)
    assert generate(cfg) == generate(cfg)
    assert generate(cfg)[0] != generate(SynthConfig(seed=12, overlap=0.3))[0]


@pytest.mark.parametrize("overlap", [0.0, 0.5, 1.0])
def test_label_counts_and_distinct_words(overlap):
    words, labels = generate(SynthConfig(n_native=120, n_translit=90, overlap=overlap))
    assert len(words) == len(set(words)) == 210
    assert sorted(labels) == sorted(words)
    assert sum(1 for v in labels.values() if v == NATIVE) == 120
    assert sum(1 for v in labels.values() if v == TRANSLIT) == 90


def test_lengths_in_range():
    words, _ = generate(SynthConfig(min_len=4, max_len=6))
    assert all(4 <= len(w) <= 6 for w in words)


def test_disjoint_alphabets_when_no_overlap():
    words, labels = generate(SynthConfig())
    nat = {c for w in words if labels[w] == NATIVE for c in w}
    tr = {c for w in words if labels[w] == TRANSLIT for c in w}
    assert not nat & tr


@pytest.mark.parametrize("kwargs", [
    {"overlap": -0.1},
    {"n_native": 0},
    {"min_len": 5, "max_len": 4},
    {"stem_length": 8},
    {"native_alphabet": 60, "translit_alphabet": 60},
])
def test_validation(kwargs):
    with pytest.raises(ValueError):
        SynthConfig(**kwargs)
