"""Pure-numpy trellis kernels, the fallback when numba is disabled or missing.

Scaling convention (shared by both backends): each forward row is normalized
to sum to 1 and scale[t] holds the multiplier c_t applied at step t, so
log P(O) = -sum(log(scale)). Betas carry the scale products of steps t+1..tau-1
only, which makes alpha[t] * beta[t] the exact state posterior at every t.
"""

import numpy as np

# smallest normal double: row sums below this cannot be inverted safely and
# are treated as an impossible step
TINY = 2.2250738585072014e-308


def forward_scaled(pi, trans, obs_probs):
    """Scaled forward pass.

    Returns (alpha, scale, fail_t). fail_t is -1 on success; otherwise the
    first step whose unnormalized row summed to zero or underflowed past the
    normal float range (impossible observation), with alpha rows and scale
    entries from that step on left at zero.
    """
    tau, n = obs_probs.shape
    alpha = np.zeros((tau, n))
    scale = np.zeros(tau)
    row = pi * obs_probs[0]
    for t in range(tau):
        if t > 0:
            row = (alpha[t - 1] @ trans) * obs_probs[t]
        total = row.sum()
        if not total >= TINY:
            return alpha, scale, t
        c = 1.0 / total
        scale[t] = c
        alpha[t] = row * c
    return alpha, scale, -1


def backward_scaled(trans, obs_probs, scale):
    """Scaled backward pass consistent with forward_scaled's convention."""
    tau, n = obs_probs.shape
    beta = np.zeros((tau, n))
    beta[tau - 1] = 1.0
    for t in range(tau - 2, -1, -1):
        beta[t] = scale[t + 1] * (trans @ (obs_probs[t + 1] * beta[t + 1]))
    return beta


def posterior_xi(alpha, beta, trans, obs_probs, scale):
    """Transition posteriors xi[t, i, j] = P(X_t=i, X_{t+1}=j | O)."""
    tau, n = obs_probs.shape
    xi = np.zeros((tau - 1, n, n))
    for t in range(tau - 1):
        xi[t] = scale[t + 1] * (
            alpha[t][:, None] * trans * (obs_probs[t + 1] * beta[t + 1])[None, :]
        )
    return xi


def viterbi_path(log_pi, log_trans, log_obs):
    """Most probable state path and its log joint probability."""
    tau, n = log_obs.shape
    psi = np.zeros((tau, n), dtype=np.int64)
    delta = log_pi + log_obs[0]
    for t in range(1, tau):
        cand = delta[:, None] + log_trans
        psi[t] = np.argmax(cand, axis=0)
        delta = cand[psi[t], np.arange(n)] + log_obs[t]
    path = np.zeros(tau, dtype=np.int64)
    path[tau - 1] = int(np.argmax(delta))
    best = float(delta[path[tau - 1]])
    for t in range(tau - 2, -1, -1):
        path[t] = psi[t + 1, path[t + 1]]
    return path, best
