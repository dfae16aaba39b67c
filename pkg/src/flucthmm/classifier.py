"""Per-class model bank, maximum-likelihood classification, and the
percentage confusion matrix.

Classification compares raw per-class log-likelihoods (uniform class priors);
ties go to the first label in bank order. Sequences compared within one
evaluation must share a length, since log-likelihoods grow with it.
"""

import zlib
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    EmptyTestSet,
    EmptyTrainingSet,
    InvalidModel,
    LengthMismatch,
    Unclassifiable,
    UnknownLabel,
)
from .inference import log_likelihood
from .model import HmmModel
from .training import TrainingConfig, baum_welch, initialize_model


class ModelBank:
    """Ordered label -> model map; all models share one emission kind."""

    def __init__(self, entries):
        self.entries = dict(entries)
        if not self.entries:
            raise InvalidModel("a model bank needs at least one entry")
        kinds = {model.emission.kind for model in self.entries.values()}
        if len(kinds) != 1:
            raise InvalidModel(f"bank mixes emission kinds {sorted(kinds)}")
        for label in self.entries:
            if not isinstance(label, str) or not label:
                raise InvalidModel(f"labels must be nonempty strings, got {label!r}")

    @property
    def labels(self):
        return list(self.entries)

    @property
    def emission_kind(self) -> str:
        return next(iter(self.entries.values())).emission.kind

    def __getitem__(self, label) -> HmmModel:
        return self.entries[label]

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()


@dataclass
class ClassificationResult:
    scores: dict  # label -> log-likelihood
    predicted: str


def label_seed(seed: int, label: str) -> int:
    """Per-class seed: the run seed plus a stable hash of the label."""
    return seed + zlib.crc32(label.encode("utf-8"))


def train_bank(labelled_data, config: TrainingConfig, emission_kind: str = "gaussian"):
    """Train one model per label.

    Returns (ModelBank, label -> TrainingReport). Each class trains
    independently with its seed derived via label_seed, so results do not
    depend on which other classes are present.
    """
    if not labelled_data:
        raise EmptyTrainingSet("no classes to train")
    models = {}
    reports = {}
    for label, sequences in labelled_data.items():
        if not sequences:
            raise EmptyTrainingSet(f"class {label!r} has no training sequences")
        class_config = replace(config, seed=label_seed(config.seed, label))
        init = initialize_model(class_config, emission_kind, sequences)
        models[label], reports[label] = baum_welch(init, sequences, class_config)
    return ModelBank(models), reports


def classify(bank: ModelBank, seq) -> ClassificationResult:
    """Label whose model gives the sequence the highest log-likelihood."""
    scores = {label: log_likelihood(model, seq) for label, model in bank.items()}
    best = max(scores.values())
    if best == -np.inf:
        raise Unclassifiable("sequence is impossible under every model in the bank")
    predicted = next(label for label, s in scores.items() if s == best)
    return ClassificationResult(scores=scores, predicted=predicted)


@dataclass
class ConfusionMatrix:
    """Counts and row percentages of predictions, row = true class."""

    labels: list
    counts: np.ndarray

    @property
    def percentages(self) -> np.ndarray:
        row_sums = self.counts.sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore"):
            pct = 100.0 * self.counts / row_sums
        return np.where(row_sums > 0, pct, 0.0)

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "counts": self.counts.tolist(),
            "percentages": self.percentages.tolist(),
        }

    def to_csv(self) -> str:
        header = "true\\pred," + ",".join(self.labels)
        pct = self.percentages
        lines = [header]
        for i, label in enumerate(self.labels):
            lines.append(label + "," + ",".join(repr(float(v)) for v in pct[i]))
        return "\n".join(lines) + "\n"

    def to_gnuplot(self) -> str:
        # long format (true_index, pred_index, percentage) for 3-D bar plots
        pct = self.percentages
        lines = []
        for i in range(len(self.labels)):
            for j in range(len(self.labels)):
                lines.append(f"{i} {j} {float(pct[i, j])!r}")
        return "\n".join(lines) + "\n"


def evaluate(bank: ModelBank, test_data) -> ConfusionMatrix:
    """Classify a labelled test set into a confusion matrix in bank order."""
    unknown = [label for label in test_data if label not in bank.entries]
    if unknown:
        raise UnknownLabel(f"test labels {unknown} not in bank {bank.labels}")
    if all(len(seqs) == 0 for seqs in test_data.values()):
        raise EmptyTestSet("every test class is empty")
    lengths = {len(seq) for seqs in test_data.values() for seq in seqs}
    if len(lengths) > 1:
        raise LengthMismatch(
            f"sequences of lengths {sorted(lengths)} in one evaluation; "
            "log-likelihoods are only comparable at equal length"
        )
    labels = bank.labels
    index = {label: i for i, label in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for label, sequences in test_data.items():
        for seq in sequences:
            result = classify(bank, seq)
            counts[index[label], index[result.predicted]] += 1
    return ConfusionMatrix(labels=labels, counts=counts)
