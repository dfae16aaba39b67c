"""Seeded generative sampling and separated multi-class bank construction.

The stand-in for real image data: ground-truth Gaussian-emission generators
with class mean grids spaced far apart, sampled reproducibly (numpy PCG64;
record RNG_ALGORITHM in run metadata). Sampled raw series may optionally be
passed through the same zscore + cumulative-sum chain as image data; off by
default because the cumulative sum changes the dependence structure the
generators were built with.
"""

from dataclasses import dataclass

import numpy as np

from .classifier import ModelBank
from .errors import InvalidModel
from .model import GaussianEmission, HmmModel
from .preprocessing import cumulative_sum, zscore
from .training import RNG_ALGORITHM  # noqa: F401  (re-exported for manifests)


@dataclass
class SyntheticSpec:
    n_classes: int
    n_states: int
    separation: float
    self_transition: float
    seed: int

    def __post_init__(self):
        if self.n_classes < 1:
            raise InvalidModel(f"n_classes must be positive, got {self.n_classes}")
        if self.n_states < 1:
            raise InvalidModel(f"n_states must be positive, got {self.n_states}")
        if self.separation <= 0.0:
            raise InvalidModel(f"separation must be positive, got {self.separation}")
        if not 0.0 < self.self_transition < 1.0:
            raise InvalidModel(
                f"self_transition must lie in (0, 1), got {self.self_transition}"
            )
        if self.seed < 0:
            raise InvalidModel(f"seed must be nonnegative, got {self.seed}")

    def to_dict(self):
        return {
            "n_classes": self.n_classes,
            "n_states": self.n_states,
            "separation": self.separation,
            "self_transition": self.self_transition,
            "seed": self.seed,
        }


def class_labels(n_classes: int) -> list:
    return [f"class{c}" for c in range(n_classes)]


def make_separated_bank(spec: SyntheticSpec) -> ModelBank:
    """Ground-truth generator models, one per class, as a bank.

    Class c gets state means evenly spaced in [c*separation, c*separation+1]
    with unit variances, self_transition on the transition diagonal with the
    remainder spread uniformly, and a uniform initial distribution. The same
    objects serve as sampling generators and as a ready-made classifier bank.
    """
    n = spec.n_states
    if n == 1:
        trans = np.ones((1, 1))
    else:
        off = (1.0 - spec.self_transition) / (n - 1)
        trans = np.full((n, n), off)
        np.fill_diagonal(trans, spec.self_transition)
    pi = np.full(n, 1.0 / n)
    entries = {}
    for c, label in enumerate(class_labels(spec.n_classes)):
        lo = c * spec.separation
        means = np.linspace(lo, lo + 1.0, n) if n > 1 else np.array([lo])
        entries[label] = HmmModel(pi, trans, GaussianEmission(means, np.ones(n)))
    return ModelBank(entries)


def sample_sequence(model: HmmModel, length: int, seed: int):
    """Draw (observations, hidden path) from the model's generative process.

    The path follows pi then the transition rows; observations follow the
    visited state's emission. Deterministic given seed.
    """
    if length < 1:
        raise InvalidModel(f"length must be positive, got {length}")
    rng = np.random.default_rng(seed)
    n = model.n_states
    trans_cdf = np.cumsum(model.trans, axis=1)
    pi_cdf = np.cumsum(model.pi)
    draws = rng.random(length)
    path = np.zeros(length, dtype=np.int64)
    path[0] = min(int(np.searchsorted(pi_cdf, draws[0], side="right")), n - 1)
    for t in range(1, length):
        j = np.searchsorted(trans_cdf[path[t - 1]], draws[t], side="right")
        path[t] = min(int(j), n - 1)
    emission = model.emission
    if emission.kind == "gaussian":
        noise = rng.standard_normal(length)
        values = emission.means[path] + noise * np.sqrt(emission.variances[path])
    else:
        u = rng.random(length)
        cdf = np.cumsum(emission.obs, axis=1)[path]
        hit = u[:, None] < cdf
        values = np.where(hit.any(axis=1), hit.argmax(axis=1), emission.n_symbols - 1)
        values = values.astype(np.int64)
    return values, path


def sample_dataset(bank: ModelBank, n_per_class: int, length: int, seed: int, normalize=False):
    """n_per_class sequences from every generator in the bank.

    Per-sequence seeds are split from the dataset seed with numpy's
    SeedSequence, so any (class, index) sample is reproducible in isolation.
    With normalize=True each raw series runs through zscore + cumulative_sum.
    """
    if n_per_class < 1:
        raise InvalidModel(f"n_per_class must be positive, got {n_per_class}")
    seeds = np.random.SeedSequence(seed).generate_state(
        len(bank) * n_per_class, dtype=np.uint64
    )
    data = {}
    k = 0
    for label, model in bank.items():
        sequences = []
        for _ in range(n_per_class):
            values, _path = sample_sequence(model, length, int(seeds[k]))
            k += 1
            if normalize:
                values = cumulative_sum(zscore(values))
            sequences.append(values)
        data[label] = sequences
    return data
