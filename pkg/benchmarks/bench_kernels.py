"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each trellis kernel on the same instance with both backends and prints
a table of per-call times and speedups. The numba functions are called once
before timing so compilation stays out of the numbers.

Usage: python3 benchmarks/bench_kernels.py [--tau 100000] [--states 17] [--repeat 5]
"""

import argparse
import time

import numpy as np

from flucthmm._kernels import numba_backend, numpy_backend


def build_instance(tau, n_states, seed=0):
    rng = np.random.default_rng(seed)
    pi = rng.random(n_states) + 0.1
    pi /= pi.sum()
    trans = rng.random((n_states, n_states)) + 0.1
    trans /= trans.sum(axis=1, keepdims=True)
    means = np.linspace(-2.0, 2.0, n_states)
    variances = np.full(n_states, 1.0)
    values = rng.standard_normal(tau)
    z = (values[:, None] - means[None, :]) ** 2 / (2.0 * variances[None, :])
    obs_probs = np.exp(-z) / np.sqrt(2.0 * np.pi * variances[None, :])
    with np.errstate(divide="ignore"):
        log_pi = np.log(pi)
        log_trans = np.log(trans)
    log_obs = np.log(obs_probs)
    return pi, trans, obs_probs, log_pi, log_trans, log_obs


def best_of(repeat, fn):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tau", type=int, default=100_000)
    parser.add_argument("--states", type=int, default=17)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    pi, trans, obs_probs, log_pi, log_trans, log_obs = build_instance(args.tau, args.states)

    def passes(backend):
        alpha, scale, fail = backend.forward_scaled(pi, trans, obs_probs)
        assert fail == -1
        beta = backend.backward_scaled(trans, obs_probs, scale)
        cases = {
            "forward": lambda: backend.forward_scaled(pi, trans, obs_probs),
            "backward": lambda: backend.backward_scaled(trans, obs_probs, scale),
            "xi": lambda: backend.posterior_xi(alpha, beta, trans, obs_probs, scale),
            "viterbi": lambda: backend.viterbi_path(log_pi, log_trans, log_obs),
        }

        def estep():
            a, s, _ = backend.forward_scaled(pi, trans, obs_probs)
            b = backend.backward_scaled(trans, obs_probs, s)
            backend.posterior_xi(a, b, trans, obs_probs, s)

        cases["estep (fwd+bwd+xi)"] = estep
        return cases

    numba_cases = passes(numba_backend)
    numpy_cases = passes(numpy_backend)
    for fn in numba_cases.values():
        fn()  # compile before timing

    print(f"tau={args.tau}, states={args.states}, best of {args.repeat}\n")
    print(f"{'kernel':<20} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name in numba_cases:
        t_numpy = best_of(args.repeat, numpy_cases[name])
        t_numba = best_of(args.repeat, numba_cases[name])
        print(f"{name:<20} {t_numpy * 1e3:>10.2f}ms {t_numba * 1e3:>10.2f}ms "
              f"{t_numpy / t_numba:>8.1f}x")


if __name__ == "__main__":
    main()
