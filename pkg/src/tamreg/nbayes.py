"""Gaussian and Multinomial Naive Bayes over n-gram count vectors."""
from __future__ import annotations

import base64
import hashlib
import json
import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .corpus import Register
from .errors import (
    ModelChecksumError,
    ModelFormatError,
    ModelTruncatedError,
    ModelVersionError,
)
from .features import FeatureSpec, FeatureVector, Vocabulary, build_vocab, featurize_many
from .textnorm import normalize

VARIANTS = ("gaussian", "multinomial")
MAGIC = b"TAMREGNB"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIQ")
_DIGEST_SIZE = 32
_GAUSS_CHUNK = 256


@dataclass(frozen=True, eq=False)
class NBModel:
    """A fitted model. ``params`` holds ``log_lik`` (multinomial) or
    ``theta``/``var`` (gaussian), each shaped ``(n_classes, n_features)``."""

    variant: str
    classes: tuple
    log_priors: np.ndarray
    params: dict
    vocab: Optional[Vocabulary] = None
    hyper: dict = field(default_factory=dict)

    @property
    def spec(self) -> Optional[FeatureSpec]:
        return self.vocab.spec if self.vocab is not None else None

    @property
    def n_features(self) -> int:
        return next(iter(self.params.values())).shape[1]

    def joint_log_likelihood(self, X) -> np.ndarray:
        """Per-class ``log prior + log likelihood`` for each row of ``X``."""
        X = _as_matrix(X, self.n_features)
        if self.variant == "multinomial":
            # sparse product never touches zero counts, so 0 * -inf cannot arise
            return np.asarray(X @ self.params["log_lik"].T) + self.log_priors
        theta, var = self.params["theta"], self.params["var"]
        norm = -0.5 * np.sum(np.log(2.0 * np.pi * var), axis=1)
        out = np.empty((X.shape[0], len(self.classes)))
        for start in range(0, X.shape[0], _GAUSS_CHUNK):
            dense = X[start:start + _GAUSS_CHUNK].toarray().astype(np.float64)
            for k in range(len(self.classes)):
                sq = ((dense - theta[k]) ** 2) / var[k]
                out[start:start + len(dense), k] = norm[k] - 0.5 * sq.sum(axis=1)
        return out + self.log_priors


def _as_matrix(X, n_features=None) -> sp.csr_matrix:
    if sp.issparse(X):
        X = sp.csr_matrix(X)
    else:
        rows = [v.counts if isinstance(v, FeatureVector) else np.asarray(v) for v in X]
        if not rows:
            raise ValueError("no feature vectors given")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("feature vectors differ in length")
        X = sp.csr_matrix(np.vstack(rows))
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"expected {n_features} features, got {X.shape[1]}")
    if X.nnz and X.data.min() < 0:
        raise ValueError("feature counts must be non-negative")
    return X


def _class_setup(X, labels):
    X = _as_matrix(X)
    labels = [Register(l) for l in labels]
    if X.shape[0] != len(labels):
        raise ValueError(f"{X.shape[0]} vectors but {len(labels)} labels")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise ValueError("training data must contain both registers")
    y = np.array([classes.index(l) for l in labels])
    counts = np.bincount(y, minlength=len(classes)).astype(np.float64)
    log_priors = np.log(counts / counts.sum())
    return X, y, classes, counts, log_priors


def fit_multinomial(vectors, labels, alpha: float = 1.0, vocab: Optional[Vocabulary] = None) -> NBModel:
    """Laplace-smoothed multinomial fit:
    ``log_lik[k, j] = log((count_kj + alpha) / (sum_j count_kj + alpha * V))``."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    X, y, classes, _, log_priors = _class_setup(vectors, labels)
    n_features = X.shape[1]
    feature_count = np.vstack([np.asarray(X[y == k].sum(axis=0)).ravel() for k in range(len(classes))])
    feature_count = feature_count.astype(np.float64)
    smoothed = feature_count + alpha
    totals = smoothed.sum(axis=1, keepdims=True)
    if np.any(totals == 0):
        raise ValueError("a class has no feature mass and alpha is 0; likelihood undefined")
    with np.errstate(divide="ignore"):
        log_lik = np.log(smoothed) - np.log(totals)
    _check_vocab(vocab, n_features)
    return NBModel("multinomial", classes, log_priors, {"log_lik": log_lik}, vocab, {"alpha": float(alpha)})


def fit_gaussian(vectors, labels, var_smoothing: float = 1e-9, vocab: Optional[Vocabulary] = None) -> NBModel:
    """Per-class feature means and population variances on raw counts.

    Every variance is raised by ``var_smoothing * max_j Var(x_j)`` over all
    training rows; when every feature is constant the increment is
    ``var_smoothing`` itself so variances stay positive.
    """
    if var_smoothing <= 0:
        raise ValueError(f"var_smoothing must be > 0, got {var_smoothing}")
    X, y, classes, counts, log_priors = _class_setup(vectors, labels)
    n_features = X.shape[1]
    theta, var = _mean_var(X, y, len(classes), counts)
    _, overall_var = _mean_var(X, np.zeros(X.shape[0], dtype=int), 1, np.array([float(X.shape[0])]))
    max_var = float(overall_var.max()) if n_features else 0.0
    epsilon = var_smoothing * (max_var if max_var > 0 else 1.0)
    var = var + epsilon
    _check_vocab(vocab, n_features)
    return NBModel(
        "gaussian", classes, log_priors, {"theta": theta, "var": var}, vocab,
        {"var_smoothing": float(var_smoothing), "epsilon": epsilon},
    )


def _mean_var(X: sp.csr_matrix, y, n_classes, counts):
    """Two-pass mean and population variance per class over sparse rows."""
    theta = np.zeros((n_classes, X.shape[1]))
    var = np.zeros((n_classes, X.shape[1]))
    for k in range(n_classes):
        Xk = X[y == k].tocsc().astype(np.float64)
        n = counts[k]
        mu = np.asarray(Xk.sum(axis=0)).ravel() / n
        nnz = np.diff(Xk.indptr)
        col = np.repeat(np.arange(Xk.shape[1]), nnz)
        sq = np.bincount(col, weights=(Xk.data - mu[col]) ** 2, minlength=Xk.shape[1])
        var[k] = (sq + (n - nnz) * mu ** 2) / n
        theta[k] = mu
    return theta, var


def _check_vocab(vocab, n_features):
    if vocab is not None and len(vocab) != n_features:
        raise ValueError(f"vocabulary has {len(vocab)} entries but vectors have {n_features}")


def train(texts, labels, spec: FeatureSpec, variant: str = "multinomial", alpha: float = 1.0,
          var_smoothing: float = 1e-9) -> NBModel:
    """Build a vocabulary on ``texts`` (already normalized) and fit."""
    texts = list(texts)
    vocab = build_vocab(texts, spec)
    X = featurize_many(texts, vocab)
    if variant == "multinomial":
        return fit_multinomial(X, labels, alpha=alpha, vocab=vocab)
    if variant == "gaussian":
        return fit_gaussian(X, labels, var_smoothing=var_smoothing, vocab=vocab)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def train_corpus(corpus, spec: FeatureSpec, variant: str = "multinomial", **kw) -> NBModel:
    if not corpus.is_labelled():
        raise ValueError("training corpus has unlabelled sentences")
    return train([normalize(s.text) for s in corpus], corpus.labels, spec, variant, **kw)


def predict(model: NBModel, text: str):
    """Return ``(register, log_posteriors)``; scores share an additive constant."""
    X = featurize_many([normalize(text)], model.vocab)
    jll = model.joint_log_likelihood(X)[0]
    return model.classes[int(np.argmax(jll))], jll


def predict_vector(model: NBModel, vector):
    """Like :func:`predict` for a ready-made count vector."""
    jll = model.joint_log_likelihood([vector])[0]
    return model.classes[int(np.argmax(jll))], jll


def predict_many(model: NBModel, texts) -> list:
    """Labels for many texts; argmax ties resolve to the earlier class."""
    texts = [normalize(t) for t in texts]
    if not texts:
        return []
    jll = model.joint_log_likelihood(featurize_many(texts, model.vocab))
    return [model.classes[i] for i in np.argmax(jll, axis=1)]


# -- persistence -----------------------------------------------------------

def _encode_array(a: np.ndarray) -> dict:
    a = np.ascontiguousarray(a, dtype="<f8")
    return {"shape": list(a.shape), "f8le": base64.b64encode(a.tobytes()).decode("ascii")}


def _decode_array(obj) -> np.ndarray:
    return np.frombuffer(base64.b64decode(obj["f8le"]), dtype="<f8").reshape(obj["shape"]).copy()


def model_to_bytes(model: NBModel) -> bytes:
    if model.vocab is None:
        raise ValueError("cannot serialize a model without a vocabulary")
    spec = model.vocab.spec
    body = {
        "variant": model.variant,
        "spec": {"c": spec.c, "w": spec.w, "char_spaces": spec.char_spaces},
        "vocab": [list(g) for g in model.vocab.grams],
        "classes": [c.label for c in model.classes],
        "log_priors": _encode_array(model.log_priors),
        "params": {k: _encode_array(v) for k, v in sorted(model.params.items())},
        "hyper": model.hyper,
    }
    payload = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
    head = _HEADER.pack(MAGIC, FORMAT_VERSION, len(payload))
    return head + payload + hashlib.sha256(head + payload).digest()


def model_from_bytes(data: bytes) -> NBModel:
    if len(data) < len(MAGIC):
        if MAGIC.startswith(data):
            raise ModelTruncatedError("model file shorter than its header")
        raise ModelFormatError("not a tamreg model file (bad magic bytes)")
    if data[:len(MAGIC)] != MAGIC:
        raise ModelFormatError("not a tamreg model file (bad magic bytes)")
    if len(data) < _HEADER.size:
        raise ModelTruncatedError("model file shorter than its header")
    _, version, body_len = _HEADER.unpack_from(data)
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"model format version {version}, this build reads {FORMAT_VERSION}")
    end = _HEADER.size + body_len
    if len(data) < end + _DIGEST_SIZE:
        raise ModelTruncatedError(f"model body truncated: need {end + _DIGEST_SIZE} bytes, have {len(data)}")
    if len(data) > end + _DIGEST_SIZE:
        raise ModelFormatError("trailing bytes after checksum")
    if hashlib.sha256(data[:end]).digest() != data[end:]:
        raise ModelChecksumError("model checksum mismatch")
    try:
        body = json.loads(data[_HEADER.size:end].decode("utf-8"))
        spec = FeatureSpec(**body["spec"])
        vocab = Vocabulary(spec, [tuple(g) for g in body["vocab"]])
        return NBModel(
            body["variant"],
            tuple(Register.parse(c) for c in body["classes"]),
            _decode_array(body["log_priors"]),
            {k: _decode_array(v) for k, v in body["params"].items()},
            vocab,
            body["hyper"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model body: {exc}") from None


def save_model(model: NBModel, path) -> None:
    with open(path, "wb") as fh:
        fh.write(model_to_bytes(model))


def load_model(path) -> NBModel:
    with open(path, "rb") as fh:
        return model_from_bytes(fh.read())
