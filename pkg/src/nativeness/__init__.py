"""Unsupervised nativeness scoring of the words in a lexicon."""

__version__ = "0.1.0"

from .baselines import CharLanguageModel, gen_score, gen_scores, init_baseline, train_lm
from .evaluation import EvalReport, LabeledSet, clustering_quality, evaluate, load_labels, ordering, precision_at_k
from .initialization import InitConfig, init_scores
from .lexicon import Lexicon, Word, diversity, load_lexicon, ngrams, segment
from .models import NGramDistribution, ScoreVector, uniform, update_native, update_translit
from .optimizer import DtimConfig, DtimResult, objective_max, objective_min, run, update_scores

__all__ = [
    "CharLanguageModel", "DtimConfig", "DtimResult", "EvalReport", "InitConfig", "LabeledSet",
    "Lexicon", "NGramDistribution", "ScoreVector", "Word", "clustering_quality", "diversity",
    "evaluate", "gen_score", "gen_scores", "init_baseline", "init_scores", "load_labels",
    "load_lexicon", "ngrams", "objective_max", "objective_min", "ordering", "precision_at_k",
    "run", "segment", "train_lm", "uniform", "update_native", "update_scores", "update_translit",
]
