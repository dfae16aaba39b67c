"""Brute-force path enumeration, the oracle the trellis algorithms are tested
against.

Every quantity is computed by summing (or maximizing) explicit path joints
pi(x_0) * prod emissions * prod transitions over all n_states**tau paths,
with no dynamic programming shared with the inference module.
"""

import itertools

import numpy as np

from .errors import ImpossibleSequence, InstanceTooLarge
from .model import HmmModel

MAX_PATHS = 10**7


def _path_table(model: HmmModel, seq):
    values = model.check_sequence(seq)
    tau = values.shape[0]
    n = model.n_states
    if n**tau > MAX_PATHS:
        raise InstanceTooLarge(f"{n}**{tau} paths exceed the {MAX_PATHS} guard")
    return model.emission.density_matrix(values), tau, n


def _path_joint(pi, trans, obs_probs, path):
    p = pi[path[0]] * obs_probs[0, path[0]]
    for t in range(1, len(path)):
        p *= trans[path[t - 1], path[t]] * obs_probs[t, path[t]]
    return p


def brute_force_likelihood(model: HmmModel, seq) -> float:
    """Exact P(O | model) as a sum over all state paths."""
    obs_probs, tau, n = _path_table(model, seq)
    total = 0.0
    for path in itertools.product(range(n), repeat=tau):
        total += _path_joint(model.pi, model.trans, obs_probs, path)
    return total


def brute_force_posteriors(model: HmmModel, seq):
    """State and transition posteriors by enumeration and Bayes rule.

    Returns (gamma, xi) with the same shapes and meaning as
    inference.posteriors.
    """
    obs_probs, tau, n = _path_table(model, seq)
    gamma = np.zeros((tau, n))
    xi = np.zeros((tau - 1, n, n))
    total = 0.0
    for path in itertools.product(range(n), repeat=tau):
        p = _path_joint(model.pi, model.trans, obs_probs, path)
        total += p
        for t in range(tau):
            gamma[t, path[t]] += p
        for t in range(tau - 1):
            xi[t, path[t], path[t + 1]] += p
    if not total > 0.0:
        raise ImpossibleSequence("sequence has zero probability under the model")
    return gamma / total, xi / total


def brute_force_viterbi(model: HmmModel, seq):
    """Argmax path over all enumerated joints, with its log joint probability."""
    obs_probs, tau, n = _path_table(model, seq)
    best_path = None
    best = -1.0
    for path in itertools.product(range(n), repeat=tau):
        p = _path_joint(model.pi, model.trans, obs_probs, path)
        if p > best:
            best = p
            best_path = path
    with np.errstate(divide="ignore"):
        log_best = float(np.log(best)) if best >= 0.0 else -np.inf
    return np.array(best_path, dtype=np.int64), log_best
