"""Numba-compiled trellis kernels.

Same contracts and scaling convention as numpy_backend; see that module's
docstring. Loops are written out elementwise so numba fuses each pass into
one pass over the sequence.
"""

import numpy as np
from numba import njit

# smallest normal double, matching numpy_backend.TINY: row sums below this
# cannot be inverted safely and count as an impossible step
TINY = 2.2250738585072014e-308


@njit(cache=True)
def forward_scaled(pi, trans, obs_probs):
    tau, n = obs_probs.shape
    alpha = np.zeros((tau, n))
    scale = np.zeros(tau)
    total = 0.0
    for j in range(n):
        v = pi[j] * obs_probs[0, j]
        alpha[0, j] = v
        total += v
    if not total >= TINY:
        for j in range(n):
            alpha[0, j] = 0.0
        return alpha, scale, 0
    c = 1.0 / total
    scale[0] = c
    for j in range(n):
        alpha[0, j] *= c
    for t in range(1, tau):
        total = 0.0
        for j in range(n):
            acc = 0.0
            for i in range(n):
                acc += alpha[t - 1, i] * trans[i, j]
            v = acc * obs_probs[t, j]
            alpha[t, j] = v
            total += v
        if not total >= TINY:
            for j in range(n):
                alpha[t, j] = 0.0
            return alpha, scale, t
        c = 1.0 / total
        scale[t] = c
        for j in range(n):
            alpha[t, j] *= c
    return alpha, scale, -1


@njit(cache=True)
def backward_scaled(trans, obs_probs, scale):
    tau, n = obs_probs.shape
    beta = np.zeros((tau, n))
    for j in range(n):
        beta[tau - 1, j] = 1.0
    for t in range(tau - 2, -1, -1):
        c = scale[t + 1]
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += trans[i, j] * obs_probs[t + 1, j] * beta[t + 1, j]
            beta[t, i] = acc * c
    return beta


@njit(cache=True)
def posterior_xi(alpha, beta, trans, obs_probs, scale):
    tau, n = obs_probs.shape
    xi = np.zeros((tau - 1, n, n))
    for t in range(tau - 1):
        c = scale[t + 1]
        for i in range(n):
            a = alpha[t, i]
            for j in range(n):
                xi[t, i, j] = a * trans[i, j] * obs_probs[t + 1, j] * beta[t + 1, j] * c
    return xi


@njit(cache=True)
def viterbi_path(log_pi, log_trans, log_obs):
    tau, n = log_obs.shape
    psi = np.zeros((tau, n), dtype=np.int64)
    delta = np.empty(n)
    nxt = np.empty(n)
    for j in range(n):
        delta[j] = log_pi[j] + log_obs[0, j]
    for t in range(1, tau):
        for j in range(n):
            best = delta[0] + log_trans[0, j]
            arg = 0
            for i in range(1, n):
                v = delta[i] + log_trans[i, j]
                if v > best:
                    best = v
                    arg = i
            psi[t, j] = arg
            nxt[j] = best + log_obs[t, j]
        for j in range(n):
            delta[j] = nxt[j]
    last = 0
    best = delta[0]
    for j in range(1, n):
        if delta[j] > best:
            best = delta[j]
            last = j
    path = np.zeros(tau, dtype=np.int64)
    path[tau - 1] = last
    for t in range(tau - 2, -1, -1):
        path[t] = psi[t + 1, path[t + 1]]
    return path, best
