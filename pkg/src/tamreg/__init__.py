"""Register identification for romanised Tamil.

Classify text as Literary or Spoken Tamil with n-gram Naive Bayes models,
audit corpora for register composition, score parallel text with
Levenshtein/BLEU/chrF, and convert Literary text to Spoken Tamil with an
ordered rewrite-rule cascade.
"""
from .corpus import Corpus, ParallelTriple, Register, Sentence, load_corpus, split_stratified, write_corpus
from .features import FeatureSpec, Vocabulary, build_vocab, extract_ngrams, featurize
from .nbayes import NBModel, fit_gaussian, fit_multinomial, load_model, predict, save_model
from .textnorm import augment, load_variant_rules, normalize

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "FeatureSpec",
    "NBModel",
    "ParallelTriple",
    "Register",
    "Sentence",
    "Vocabulary",
    "augment",
    "build_vocab",
    "extract_ngrams",
    "featurize",
    "fit_gaussian",
    "fit_multinomial",
    "load_corpus",
    "load_model",
    "load_variant_rules",
    "normalize",
    "predict",
    "save_model",
    "split_stratified",
    "write_corpus",
]
