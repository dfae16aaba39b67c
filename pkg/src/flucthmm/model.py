"""Model containers: initial distribution, transition matrix, and per-state emissions.

Observation sequences are plain 1-D numpy arrays: float values for Gaussian
emissions, integer symbol indices for discrete emissions.
"""

import numpy as np

from .errors import (
    EmptySequence,
    InvalidModel,
    InvalidObservation,
    TypeMismatch,
)

STOCHASTIC_ATOL = 1e-12

_LOG_2PI = np.log(2.0 * np.pi)


def _check_stochastic_vector(vec, name):
    if vec.ndim != 1:
        raise InvalidModel(f"{name} must be 1-D, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise InvalidModel(f"{name} contains non-finite entries")
    if np.any(vec < 0.0) or np.any(vec > 1.0):
        raise InvalidModel(f"{name} entries must lie in [0, 1]")
    total = float(vec.sum())
    if abs(total - 1.0) > STOCHASTIC_ATOL:
        raise InvalidModel(f"{name} sums to {total!r}, expected 1 within {STOCHASTIC_ATOL}")


def _check_stochastic_rows(mat, name):
    if mat.ndim != 2:
        raise InvalidModel(f"{name} must be 2-D, got shape {mat.shape}")
    for i in range(mat.shape[0]):
        _check_stochastic_vector(mat[i], f"{name} row {i}")


class GaussianEmission:
    """Per-state univariate Gaussian densities."""

    kind = "gaussian"

    def __init__(self, means, variances):
        self.means = np.asarray(means, dtype=np.float64)
        self.variances = np.asarray(variances, dtype=np.float64)
        if self.means.ndim != 1 or self.means.shape != self.variances.shape:
            raise InvalidModel(
                f"means and variances must be 1-D with equal length, got "
                f"{self.means.shape} and {self.variances.shape}"
            )
        if not np.all(np.isfinite(self.means)):
            raise InvalidModel("emission means contain non-finite entries")
        if not np.all(np.isfinite(self.variances)) or np.any(self.variances <= 0.0):
            raise InvalidModel("emission variances must be finite and positive")

    @property
    def n_states(self):
        return self.means.shape[0]

    def check_sequence(self, values) -> np.ndarray:
        values = np.asarray(values)
        if values.ndim != 1:
            raise TypeMismatch(f"expected a 1-D real series, got shape {values.shape}")
        if values.shape[0] == 0:
            raise EmptySequence("observation sequence is empty")
        if not np.issubdtype(values.dtype, np.floating) and not np.issubdtype(
            values.dtype, np.integer
        ):
            raise TypeMismatch(f"Gaussian emissions need real values, got dtype {values.dtype}")
        values = values.astype(np.float64, copy=False)
        if not np.all(np.isfinite(values)):
            raise TypeMismatch("sequence contains non-finite values")
        return values

    def density(self, state: int, value: float) -> float:
        var = self.variances[state]
        z = (value - self.means[state]) ** 2 / (2.0 * var)
        return float(np.exp(-z) / np.sqrt(2.0 * np.pi * var))

    def density_matrix(self, values: np.ndarray) -> np.ndarray:
        """Densities for every (time step, state) pair, shape (tau, n_states)."""
        z = (values[:, None] - self.means[None, :]) ** 2 / (2.0 * self.variances[None, :])
        return np.exp(-z) / np.sqrt(2.0 * np.pi * self.variances[None, :])

    def log_density_matrix(self, values: np.ndarray) -> np.ndarray:
        z = (values[:, None] - self.means[None, :]) ** 2 / (2.0 * self.variances[None, :])
        return -z - 0.5 * (_LOG_2PI + np.log(self.variances[None, :]))

    def to_dict(self):
        return {
            "kind": self.kind,
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }


class DiscreteEmission:
    """Per-state categorical distributions over a finite symbol alphabet."""

    kind = "discrete"

    def __init__(self, obs):
        self.obs = np.asarray(obs, dtype=np.float64)
        _check_stochastic_rows(self.obs, "emission matrix")

    @property
    def n_states(self):
        return self.obs.shape[0]

    @property
    def n_symbols(self):
        return self.obs.shape[1]

    def check_sequence(self, values) -> np.ndarray:
        values = np.asarray(values)
        if values.ndim != 1:
            raise TypeMismatch(f"expected a 1-D symbol series, got shape {values.shape}")
        if values.shape[0] == 0:
            raise EmptySequence("observation sequence is empty")
        if not np.issubdtype(values.dtype, np.integer):
            raise TypeMismatch(
                f"discrete emissions need integer symbols, got dtype {values.dtype}"
            )
        if np.any(values < 0) or np.any(values >= self.n_symbols):
            raise InvalidObservation(
                f"symbols must lie in [0, {self.n_symbols}), got range "
                f"[{values.min()}, {values.max()}]"
            )
        return values.astype(np.int64, copy=False)

    def density(self, state: int, value: int) -> float:
        if not 0 <= value < self.n_symbols:
            raise InvalidObservation(f"symbol {value} outside [0, {self.n_symbols})")
        return float(self.obs[state, value])

    def density_matrix(self, values: np.ndarray) -> np.ndarray:
        return self.obs[:, values].T.copy()

    def log_density_matrix(self, values: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.density_matrix(values))

    def to_dict(self):
        return {"kind": self.kind, "obs": self.obs.tolist()}


class HmmModel:
    """A hidden Markov model: initial distribution, transitions, emissions.

    Attributes:
        pi: initial state distribution, shape (n_states,).
        trans: row-stochastic transition matrix, shape (n_states, n_states).
        emission: GaussianEmission or DiscreteEmission with matching n_states.
    """

    def __init__(self, pi, trans, emission):
        self.pi = np.asarray(pi, dtype=np.float64)
        self.trans = np.asarray(trans, dtype=np.float64)
        self.emission = emission
        self.validate()

    @property
    def n_states(self) -> int:
        return self.pi.shape[0]

    def validate(self):
        _check_stochastic_vector(self.pi, "pi")
        _check_stochastic_rows(self.trans, "transition matrix")
        n = self.pi.shape[0]
        if self.trans.shape != (n, n):
            raise InvalidModel(
                f"transition matrix shape {self.trans.shape} does not match {n} states"
            )
        if not isinstance(self.emission, (GaussianEmission, DiscreteEmission)):
            raise InvalidModel(f"unsupported emission object {type(self.emission).__name__}")
        if self.emission.n_states != n:
            raise InvalidModel(
                f"emission has {self.emission.n_states} states, model has {n}"
            )

    def check_sequence(self, values) -> np.ndarray:
        """Validate a raw sequence against this model's emission kind."""
        return self.emission.check_sequence(values)

    def to_dict(self):
        return {
            "n_states": self.n_states,
            "pi": self.pi.tolist(),
            "trans": self.trans.tolist(),
            "emission": self.emission.to_dict(),
        }


def emission_density(model: HmmModel, state: int, value) -> float:
    """P(value | state) under the model's emission distribution."""
    if not 0 <= state < model.n_states:
        raise InvalidModel(f"state {state} outside [0, {model.n_states})")
    return model.emission.density(state, value)
