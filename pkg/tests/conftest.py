import numpy as np
import pytest

import flucthmm as fh


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    """Compile the jit kernels once so timed tests measure steady state."""
    fh.warmup()


def normalize_rows(a):
    return a / a.sum(axis=1, keepdims=True)


def random_model(rng, n_states, kind="gaussian", n_symbols=4):
    """A valid random model with bounded-away-from-zero probabilities."""
    pi = rng.random(n_states) + 0.1
    pi = pi / pi.sum()
    trans = normalize_rows(rng.random((n_states, n_states)) + 0.1)
    if kind == "gaussian":
        emission = fh.GaussianEmission(
            means=2.0 * rng.standard_normal(n_states),
            variances=rng.random(n_states) + 0.5,
        )
    else:
        emission = fh.DiscreteEmission(normalize_rows(rng.random((n_states, n_symbols)) + 0.1))
    return fh.HmmModel(pi, trans, emission)


def random_sequence(rng, model, tau):
    if model.emission.kind == "gaussian":
        return 2.0 * rng.standard_normal(tau)
    return rng.integers(0, model.emission.n_symbols, size=tau)
