"""Multinomial logistic regression over name feature vectors.

Training minimizes L2-regularized multinomial cross-entropy with full-batch
gradient descent and Armijo backtracking line search, which makes runs
bit-reproducible: no stochastic ordering enters the default path. A
mini-batch mode exists behind batch_size for large corpora.

Predictions rank all twelve classes by softmax confidence; a name is decided
as the top class only when its confidence exceeds 1/3, otherwise OTH.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np
from scipy import sparse

from . import labels as lbl
from .errors import (
    DegenerateDataError,
    EmptyTestSetError,
    EmptyTrainingSetError,
    UnknownLabelError,
)
from .features import FeatureConfig, FeatureVector, Vocabulary, build_vocabulary, vectorize
from .names import FullName, normalize

if TYPE_CHECKING:
    from .corpus import LabeledName

MODEL_FORMAT_VERSION = 1

# Confidence threshold of the decision rule: strictly above 1/3 or OTH.
DECISION_THRESHOLD = 1.0 / 3.0


@dataclass(frozen=True)
class Hyperparameters:
    """Training knobs. l2 is the per-example regularization strength."""

    l2: float = 1e-4
    max_epochs: int = 500
    tol: float = 1e-8
    batch_size: int | None = None
    learning_rate: float = 0.5
    class_weighted: bool = False

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "Hyperparameters":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown hyperparameter keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class Model:
    """A trained classifier: vocabulary, per-class weights and biases."""

    classes: tuple[str, ...]
    vocab: Vocabulary
    weights: np.ndarray  # (n_classes, n_features)
    biases: np.ndarray  # (n_classes,)
    feature_config: FeatureConfig
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Prediction:
    """All classes ranked by confidence, plus the decided label (may be OTH)."""

    ranked: tuple[tuple[str, float], ...]
    decided: str

    def top(self, k: int = 3) -> tuple[tuple[str, float], ...]:
        return self.ranked[:k]


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvaluationReport:
    classes: tuple[str, ...]
    accuracy: float
    per_class: dict[str, ClassMetrics]
    confusion: np.ndarray  # (true, predicted)


def softmax(scores: np.ndarray) -> np.ndarray:
    """Row-wise stable softmax."""
    shifted = scores - scores.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def loss_and_grad(
    weights: np.ndarray,
    biases: np.ndarray,
    x: sparse.csr_matrix,
    y: np.ndarray,
    l2: float,
    sample_weight: np.ndarray | None = None,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Regularized mean cross-entropy and its analytic gradient.

    Returns (loss, grad_weights, grad_biases). Biases are not regularized.
    """
    n = x.shape[0]
    scores = x @ weights.T + biases
    probs = softmax(scores)
    log_probs = scores - scores.max(axis=1, keepdims=True)
    log_probs -= np.log(np.exp(log_probs).sum(axis=1, keepdims=True))
    picked = log_probs[np.arange(n), y]
    if sample_weight is None:
        loss = -picked.mean()
        dscores = probs
        dscores[np.arange(n), y] -= 1.0
        dscores /= n
    else:
        total = sample_weight.sum()
        loss = -(picked * sample_weight).sum() / total
        dscores = probs
        dscores[np.arange(n), y] -= 1.0
        dscores *= (sample_weight / total)[:, None]
    loss += 0.5 * l2 * float((weights * weights).sum())
    grad_w = (x.T @ dscores).T + l2 * weights
    grad_b = dscores.sum(axis=0)
    return float(loss), np.asarray(grad_w), grad_b


def vectors_to_csr(vectors: Sequence[FeatureVector], n_features: int) -> sparse.csr_matrix:
    """Stack sparse feature dicts into one CSR matrix."""
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    indices: list[int] = []
    data: list[float] = []
    for row, vec in enumerate(vectors):
        items = sorted(vec.items())
        indices.extend(i for i, _ in items)
        data.extend(v for _, v in items)
        indptr[row + 1] = len(indices)
    return sparse.csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int64), indptr),
        shape=(len(vectors), n_features),
    )


def train(
    data: Sequence["LabeledName"],
    hyper: Hyperparameters = Hyperparameters(),
    seed: int = 0,
) -> Model:
    """Fit the classifier on labeled names.

    Deterministic given (data order, hyper, seed): full-batch descent ignores
    the seed entirely; mini-batch mode draws its shuffles from it.
    """
    if not data:
        raise EmptyTrainingSetError("no training examples")
    for item in data:
        if item.label not in lbl.CLASS_INDEX:
            raise UnknownLabelError(f"label {item.label!r} is not one of the trained classes")
    present = {item.label for item in data}
    if len(present) < 2:
        raise DegenerateDataError("training data contains a single class")

    config = FeatureConfig()
    vocab = build_vocabulary((item.name for item in data), config)
    vectors = [vectorize(item.name, vocab, config) for item in data]
    x = vectors_to_csr(vectors, len(vocab))
    y = np.array([lbl.CLASS_INDEX[item.label] for item in data], dtype=np.int64)

    sample_weight = None
    if hyper.class_weighted:
        counts = np.bincount(y, minlength=len(lbl.CLASSES)).astype(float)
        weights_per_class = np.where(counts > 0, len(data) / (len(present) * np.maximum(counts, 1)), 0.0)
        sample_weight = weights_per_class[y]

    n_classes = len(lbl.CLASSES)
    weights = np.zeros((n_classes, len(vocab)))
    biases = np.zeros(n_classes)

    if hyper.batch_size is None:
        weights, biases, history = _fit_full_batch(weights, biases, x, y, hyper, sample_weight)
    else:
        weights, biases, history = _fit_minibatch(weights, biases, x, y, hyper, seed, sample_weight)

    metadata = {
        "seed": seed,
        "hyperparameters": hyper.to_dict(),
        "n_train": len(data),
        "n_features": len(vocab),
        "final_loss": history["final_loss"],
        "epochs_run": history["epochs_run"],
        "converged": history["converged"],
    }
    return Model(
        classes=lbl.CLASSES,
        vocab=vocab,
        weights=weights,
        biases=biases,
        feature_config=config,
        metadata=metadata,
    )


def _fit_full_batch(weights, biases, x, y, hyper, sample_weight):
    """Gradient descent with Armijo backtracking; loss never increases."""
    loss, grad_w, grad_b = loss_and_grad(weights, biases, x, y, hyper.l2, sample_weight)
    step = 1.0
    converged = False
    epoch = 0
    for epoch in range(1, hyper.max_epochs + 1):
        g_sq = float((grad_w * grad_w).sum() + (grad_b * grad_b).sum())
        if g_sq == 0.0:
            converged = True
            break
        step = min(step * 2.0, 1e4)
        while True:
            cand_w = weights - step * grad_w
            cand_b = biases - step * grad_b
            cand_loss, cand_gw, cand_gb = loss_and_grad(cand_w, cand_b, x, y, hyper.l2, sample_weight)
            if cand_loss <= loss - 1e-4 * step * g_sq:
                break
            step *= 0.5
            if step < 1e-20:
                break
        if step < 1e-20:
            converged = True
            break
        improvement = loss - cand_loss
        weights, biases = cand_w, cand_b
        loss, grad_w, grad_b = cand_loss, cand_gw, cand_gb
        if improvement <= hyper.tol * max(1.0, abs(loss)):
            converged = True
            break
    return weights, biases, {"final_loss": loss, "epochs_run": epoch, "converged": converged}


def _fit_minibatch(weights, biases, x, y, hyper, seed, sample_weight):
    """Plain SGD over shuffled mini-batches with a decaying step size."""
    rng = np.random.default_rng(seed)
    n = x.shape[0]
    loss = math.inf
    for epoch in range(1, hyper.max_epochs + 1):
        order = rng.permutation(n)
        lr = hyper.learning_rate / (1.0 + 0.1 * (epoch - 1))
        for start in range(0, n, hyper.batch_size):
            batch = order[start : start + hyper.batch_size]
            bw = sample_weight[batch] if sample_weight is not None else None
            _, grad_w, grad_b = loss_and_grad(weights, biases, x[batch], y[batch], hyper.l2, bw)
            weights = weights - lr * grad_w
            biases = biases - lr * grad_b
        new_loss, _, _ = loss_and_grad(weights, biases, x, y, hyper.l2, sample_weight)
        if abs(loss - new_loss) <= hyper.tol * max(1.0, abs(new_loss)):
            loss = new_loss
            return weights, biases, {"final_loss": loss, "epochs_run": epoch, "converged": True}
        loss = new_loss
    return weights, biases, {"final_loss": loss, "epochs_run": hyper.max_epochs, "converged": False}


def _scores_for(model: Model, vec: FeatureVector) -> np.ndarray:
    scores = model.biases.copy()
    for idx, val in vec.items():
        scores += model.weights[:, idx] * val
    return scores


def predict(model: Model, name: FullName | str) -> Prediction:
    """Rank all classes by softmax confidence and apply the 1/3 decision rule."""
    if isinstance(name, str):
        name = normalize(name)
    vec = vectorize(name, model.vocab, model.feature_config)
    confidences = softmax(_scores_for(model, vec))
    order = sorted(range(len(model.classes)), key=lambda c: (-confidences[c], c))
    ranked = tuple((model.classes[c], float(confidences[c])) for c in order)
    top_label, top_conf = ranked[0]
    decided = top_label if top_conf > DECISION_THRESHOLD else lbl.OTH
    return Prediction(ranked=ranked, decided=decided)


def evaluate(model: Model, test: Sequence["LabeledName"]) -> EvaluationReport:
    """Per-class precision/recall/F1 and overall accuracy on argmax labels.

    The 1/3 rule is deliberately not applied here: evaluation scores the
    twelve trained classes against ground truth, with no OTH row.
    """
    if not test:
        raise EmptyTestSetError("no test examples")
    class_index = {c: i for i, c in enumerate(model.classes)}
    n = len(model.classes)
    confusion = np.zeros((n, n), dtype=np.int64)
    for item in test:
        if item.label not in class_index:
            raise UnknownLabelError(f"label {item.label!r} is not one of the trained classes")
        predicted = predict(model, item.name).ranked[0][0]
        confusion[class_index[item.label], class_index[predicted]] += 1

    per_class = {}
    for i, cls in enumerate(model.classes):
        tp = float(confusion[i, i])
        support = int(confusion[i].sum())
        predicted_as = float(confusion[:, i].sum())
        precision = tp / predicted_as if predicted_as > 0 else 0.0
        recall = tp / support if support > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        per_class[cls] = ClassMetrics(precision, recall, f1, support)
    accuracy = float(np.trace(confusion)) / float(confusion.sum())
    return EvaluationReport(
        classes=model.classes, accuracy=accuracy, per_class=per_class, confusion=confusion
    )


def split(
    data: Sequence["LabeledName"], ratio: float, seed: int
) -> tuple[list["LabeledName"], list["LabeledName"]]:
    """Deterministic shuffled split: floor(ratio * N) examples go to train."""
    if not 0.0 < ratio < 1.0:
        raise ValueError("split ratio must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(data))
    n_train = int(math.floor(ratio * len(data)))
    train_part = [data[i] for i in order[:n_train]]
    test_part = [data[i] for i in order[n_train:]]
    return train_part, test_part


def save_model(model: Model, path: str | Path) -> None:
    """Write the model as one self-describing JSON document."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "kind": "namelens-model",
        "classes": list(model.classes),
        "feature_config": model.feature_config.to_dict(),
        "vocabulary": model.vocab.feature_strings(),
        "weights": [[float(v) for v in row] for row in model.weights],
        "biases": [float(v) for v in model.biases],
        "metadata": model.metadata,
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True), encoding="utf-8")


def load_model(path: str | Path) -> Model:
    """Load a model written by save_model; predictions round-trip bit-exactly."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("format_version")
    if not isinstance(version, int) or version > MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version: {version!r}")
    return Model(
        classes=tuple(doc["classes"]),
        vocab=Vocabulary(doc["vocabulary"], frozen=True),
        weights=np.array(doc["weights"], dtype=np.float64).reshape(
            len(doc["classes"]), len(doc["vocabulary"])
        ),
        biases=np.array(doc["biases"], dtype=np.float64),
        feature_config=FeatureConfig.from_dict(doc["feature_config"]),
        metadata=doc.get("metadata", {}),
    )
