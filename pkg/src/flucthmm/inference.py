"""Exact inference: scaled forward/backward, posteriors, and Viterbi decoding.

All operations are pure functions of immutable inputs; models are never
modified. The forward pass uses per-step scaling, so the log-likelihood is
recovered exactly as -sum(log(scale_factors)) with no underflow for long
sequences. A sequence with probability zero at some step (possible when a
discrete symbol has zero mass under every state) yields a -inf
log-likelihood sentinel; posteriors refuse such sequences.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ImpossibleSequence, LengthMismatch
from .model import HmmModel


@dataclass
class TrellisResult:
    """Scaled trellis passes for one (model, sequence) pair.

    scale_factors[t] is the multiplier applied to the forward row at step t;
    log_likelihood == -sum(log(scale_factors)). scaled_beta is None until a
    backward pass fills it. On an impossible sequence log_likelihood is -inf
    and rows from the failing step on are zero.
    """

    log_likelihood: float
    scaled_alpha: np.ndarray
    scaled_beta: np.ndarray | None
    scale_factors: np.ndarray


@dataclass
class PosteriorStats:
    """State and transition posteriors, the EM sufficient statistics.

    gamma[t, j] = P(X_t = j | O); xi[t, i, j] = P(X_t = i, X_{t+1} = j | O).
    xi is empty (shape (0, n, n)) for a length-1 sequence.
    """

    gamma: np.ndarray
    xi: np.ndarray


def _run_forward(model: HmmModel, values: np.ndarray):
    obs_probs = model.emission.density_matrix(values)
    alpha, scale, fail = _kernels.forward_scaled(model.pi, model.trans, obs_probs)
    if fail >= 0:
        return obs_probs, alpha, scale, -np.inf
    return obs_probs, alpha, scale, -float(np.sum(np.log(scale)))


def forward(model: HmmModel, seq) -> TrellisResult:
    """Scaled forward pass; the result's beta half is left unfilled."""
    values = model.check_sequence(seq)
    _, alpha, scale, loglik = _run_forward(model, values)
    return TrellisResult(loglik, alpha, None, scale)


def backward(model: HmmModel, seq, scale_factors) -> np.ndarray:
    """Scaled backward pass using the scale factors produced by forward.

    Under the shared convention, scaled_alpha[t] . scaled_beta[t] sums to 1
    at every t, so the product is the state posterior directly.
    """
    values = model.check_sequence(seq)
    scale_factors = np.asarray(scale_factors, dtype=np.float64)
    if scale_factors.shape != (values.shape[0],):
        raise LengthMismatch(
            f"{scale_factors.shape[0]} scale factors for a length-{values.shape[0]} sequence"
        )
    obs_probs = model.emission.density_matrix(values)
    return _kernels.backward_scaled(model.trans, obs_probs, scale_factors)


def log_likelihood(model: HmmModel, seq) -> float:
    """log P(O | model), the total likelihood summed over all state paths."""
    values = model.check_sequence(seq)
    return _run_forward(model, values)[3]


def posteriors(model: HmmModel, seq) -> PosteriorStats:
    """Per-step state posteriors gamma and transition posteriors xi."""
    values = model.check_sequence(seq)
    obs_probs, alpha, scale, loglik = _run_forward(model, values)
    if not np.isfinite(loglik):
        raise ImpossibleSequence("sequence has zero probability under the model")
    beta = _kernels.backward_scaled(model.trans, obs_probs, scale)
    gamma = alpha * beta
    xi = _kernels.posterior_xi(alpha, beta, model.trans, obs_probs, scale)
    return PosteriorStats(gamma, xi)


def viterbi(model: HmmModel, seq):
    """Most probable hidden path and its log joint probability log P(O, X)."""
    values = model.check_sequence(seq)
    log_obs = model.emission.log_density_matrix(values)
    with np.errstate(divide="ignore"):
        log_pi = np.log(model.pi)
        log_trans = np.log(model.trans)
    path, log_joint = _kernels.viterbi_path(log_pi, log_trans, log_obs)
    return path, log_joint


def _logsumexp(a, axis=None):
    a_max = np.max(a, axis=axis, keepdims=True)
    a_max = np.where(np.isfinite(a_max), a_max, 0.0)
    with np.errstate(divide="ignore"):
        out = np.log(np.sum(np.exp(a - a_max), axis=axis)) + np.squeeze(a_max, axis=axis)
    return out


def log_likelihood_logdomain(model: HmmModel, seq) -> float:
    """Reference recomputation of log P(O | model) in the log domain.

    Independent of the scaled kernels: a log-sum-exp trellis in plain numpy,
    kept as a cross-check for the scaling implementation.
    """
    values = model.check_sequence(seq)
    log_obs = model.emission.log_density_matrix(values)
    with np.errstate(divide="ignore"):
        log_pi = np.log(model.pi)
        log_trans = np.log(model.trans)
    la = log_pi + log_obs[0]
    for t in range(1, values.shape[0]):
        la = _logsumexp(la[:, None] + log_trans, axis=0) + log_obs[t]
    return float(_logsumexp(la, axis=0))
