"""Acceptance gate: eight end-to-end criteria with fixed tolerances.

Each test prints one [acceptance] PASS/FAIL line. Runtime caps are asserted
with the jit kernels already warmed by the session fixture.
"""

import time

import numpy as np
import pytest

import flucthmm as fh
from flucthmm.cli import main as cli_main
from flucthmm.enumeration import (
    brute_force_likelihood,
    brute_force_posteriors,
    brute_force_viterbi,
)
from flucthmm.errors import DegenerateVariance
from conftest import random_model, random_sequence


def _report(num, name, failures, elapsed, cap):
    ok = not failures and elapsed < cap
    print(f"[acceptance] criterion {num} ({name}): "
          f"{'PASS' if ok else 'FAIL'} ({elapsed:.2f}s, cap {cap:.0f}s)")
    assert not failures, f"criterion {num} ({name}): " + "; ".join(failures[:5])
    assert elapsed < cap, f"criterion {num} ({name}): {elapsed:.2f}s exceeds {cap}s"


def test_criterion_1_oracle_equivalence():
    started = time.perf_counter()
    failures = []
    for case in range(100):
        rng = np.random.default_rng(10_000 + case)
        kind = "gaussian" if case % 2 == 0 else "discrete"
        n_states = int(rng.integers(2, 4))
        tau = int(rng.integers(3, 7))
        model = random_model(rng, n_states, kind)
        seq = random_sequence(rng, model, tau)

        ll = fh.log_likelihood(model, seq)
        ref = brute_force_likelihood(model, seq)
        if abs(np.exp(ll) - ref) > 1e-10 * abs(ref):
            failures.append(f"case {case}: likelihood {np.exp(ll)!r} vs {ref!r}")

        stats = fh.posteriors(model, seq)
        gamma_ref, xi_ref = brute_force_posteriors(model, seq)
        if np.max(np.abs(stats.gamma - gamma_ref)) > 1e-10:
            failures.append(f"case {case}: gamma off by "
                            f"{np.max(np.abs(stats.gamma - gamma_ref)):.2e}")
        if np.max(np.abs(stats.xi - xi_ref)) > 1e-10:
            failures.append(f"case {case}: xi off")

        path, _ = fh.viterbi(model, seq)
        ref_path, _ = brute_force_viterbi(model, seq)
        if not np.array_equal(path, ref_path):
            failures.append(f"case {case}: viterbi {path.tolist()} vs {ref_path.tolist()}")
    _report(1, "oracle equivalence", failures, time.perf_counter() - started, 5.0)


def test_criterion_2_em_monotonicity():
    started = time.perf_counter()
    failures = []
    state_counts = [2, 5, 17]
    for run in range(20):
        rng = np.random.default_rng(20_000 + run)
        n_states = state_counts[run % 3]
        kind = "discrete" if run % 5 == 0 else "gaussian"
        config = fh.TrainingConfig(n_states=n_states, max_iterations=40, seed=run)
        if kind == "gaussian":
            data = [rng.standard_normal(200) for _ in range(10)]
            init = fh.initialize_model(config, "gaussian", data)
        else:
            data = [rng.integers(0, 6, size=200) for _ in range(10)]
            init = fh.initialize_model(config, "discrete", data, n_symbols=6)
        _, report = fh.baum_welch(init, data, config)
        trace = np.asarray(report.loglik_trace)
        drops = np.diff(trace)
        if not np.all(drops >= -1e-8):
            failures.append(f"run {run} ({n_states} states): drop {drops.min():.2e}")
        if report.iterations_run > config.max_iterations:
            failures.append(f"run {run}: iterations {report.iterations_run}")
    _report(2, "EM monotonicity", failures, time.perf_counter() - started, 60.0)


def test_criterion_3_parameter_recovery():
    started = time.perf_counter()
    em = fh.GaussianEmission([0.0, 10.0], [1.0, 1.0])
    generator = fh.HmmModel([0.5, 0.5], [[0.9, 0.1], [0.1, 0.9]], em)
    successes = 0
    details = []
    for seed in range(10):
        rng_seeds = np.random.SeedSequence(30_000 + seed).generate_state(50)
        data = [fh.sample_sequence(generator, 200, int(s))[0] for s in rng_seeds]
        config = fh.TrainingConfig(n_states=2, max_iterations=200, seed=seed)
        init = fh.initialize_model(config, "gaussian", data)
        model, _ = fh.baum_welch(init, data, config)
        order = np.argsort(model.emission.means)
        means = model.emission.means[order]
        self_trans = np.array(
            [model.trans[order[0], order[0]], model.trans[order[1], order[1]]]
        )
        mean_ok = abs(means[0]) < 0.5 and abs(means[1] - 10.0) < 0.5
        trans_ok = np.all(np.abs(self_trans - 0.9) < 0.05)
        if mean_ok and trans_ok:
            successes += 1
        else:
            details.append(
                f"seed {seed}: means {np.round(means, 3).tolist()}, "
                f"self-trans {np.round(self_trans, 3).tolist()}"
            )
    failures = [] if successes >= 9 else [f"only {successes}/10 seeds recovered"] + details
    _report(3, "parameter recovery", failures, time.perf_counter() - started, 60.0)


def test_criterion_4_synthetic_four_class():
    started = time.perf_counter()
    spec = fh.SyntheticSpec(
        n_classes=4, n_states=4, separation=12.0, self_transition=0.9, seed=0
    )
    generators = fh.make_separated_bank(spec)
    train_data = fh.sample_dataset(generators, n_per_class=40, length=500, seed=1)
    test_data = fh.sample_dataset(generators, n_per_class=100, length=500, seed=2)

    bank, _ = fh.train_bank(train_data, fh.TrainingConfig())
    matrix = fh.evaluate(bank, test_data)
    diagonal = np.diag(matrix.percentages)
    failures = []
    if diagonal.min() < 95.0:
        failures.append(
            f"diagonal {np.round(diagonal, 2).tolist()} has entries below 95%"
        )
    _report(4, "synthetic 4-class classification", failures, time.perf_counter() - started, 300.0)


def test_criterion_5_preprocessing_exactness():
    started = time.perf_counter()
    failures = []
    rng = np.random.default_rng(50_000)
    for case in range(1000):
        n = int(rng.integers(2, 400))
        series = 50.0 * rng.standard_normal(n) + rng.uniform(-100, 100)
        z = fh.zscore(series)
        if abs(z.mean()) > 1e-12:
            failures.append(f"case {case}: zscore mean {z.mean():.2e}")
        if abs(np.sqrt(np.mean(z * z)) - 1.0) > 1e-12:
            failures.append(f"case {case}: zscore std off")
        walk = fh.cumulative_sum(z)
        recovered = np.diff(walk, prepend=0.0)
        if recovered[0] != z[0] or np.max(np.abs(recovered - z)) > 1e-12:
            failures.append(f"case {case}: diff(cumsum) not the identity")
        rows, cols = int(rng.integers(1, 20)), int(rng.integers(1, 20))
        if fh.unfold_horizontal(rng.standard_normal((rows, cols))).shape != (rows * cols,):
            failures.append(f"case {case}: unfold length wrong")
    try:
        fh.preprocess(np.full((3, 5), 2.5), fh.WindowingConfig(window_length=5))
        failures.append("constant image did not error")
    except DegenerateVariance:
        pass
    _report(5, "preprocessing exactness", failures, time.perf_counter() - started, 5.0)


def test_criterion_6_long_sequence_robustness():
    started = time.perf_counter()
    rng = np.random.default_rng(60_000)
    model = random_model(rng, 17, "gaussian")
    seq = rng.standard_normal(100_000)
    ll = fh.log_likelihood(model, seq)
    failures = []
    if not np.isfinite(ll):
        failures.append(f"log-likelihood not finite: {ll!r}")
    else:
        ref = fh.log_likelihood_logdomain(model, seq)
        rel = abs(ll - ref) / abs(ref)
        if rel > 1e-8:
            failures.append(f"scaled {ll!r} vs log-domain {ref!r}, rel {rel:.2e}")
    _report(6, "long-sequence robustness", failures, time.perf_counter() - started, 10.0)


def test_criterion_7_serialization_round_trip(tmp_path):
    started = time.perf_counter()
    rng = np.random.default_rng(70_000)
    spec = fh.SyntheticSpec(
        n_classes=3, n_states=5, separation=6.0, self_transition=0.8, seed=3
    )
    generators = fh.make_separated_bank(spec)
    data = fh.sample_dataset(generators, n_per_class=4, length=100, seed=4)
    bank, _ = fh.train_bank(data, fh.TrainingConfig(n_states=5, max_iterations=30, seed=7))

    probes = [rng.standard_normal(128) for _ in range(10)]
    before = [[fh.log_likelihood(m, p) for _, m in bank.items()] for p in probes]

    path = tmp_path / "bank.json"
    fh.save_bank(path, bank)
    reloaded = fh.load_bank(path)
    after = [[fh.log_likelihood(m, p) for _, m in reloaded.items()] for p in probes]

    failures = []
    if before != after:
        failures.append("log-likelihoods changed across the JSON round trip")
    _report(7, "serialization round trip", failures, time.perf_counter() - started, 60.0)


def test_criterion_8_cli_reproducibility(tmp_path):
    started = time.perf_counter()

    def one_run(root):
        data = root / "data"
        run = root / "run"
        ev = root / "eval"
        synth = [
            "synth", "--out", str(data), "--classes", "3", "--states", "3",
            "--separation", "10", "--train-count", "5", "--test-count", "8",
            "--length", "150", "--seed", "21",
        ]
        train = [
            "train", str(data / "train"), "--out", str(run), "--states", "3",
            "--max-iters", "25", "--seed", "21",
        ]
        evaluate = ["evaluate", str(run / "bank.json"), str(data / "test"), "--out", str(ev)]
        for argv in (synth, train, evaluate):
            code = cli_main(argv)
            assert code == 0, f"{argv[0]} exited {code}"
        return (ev / "confusion.csv").read_bytes()

    first = one_run(tmp_path / "r1")
    second = one_run(tmp_path / "r2")
    failures = []
    if first != second:
        failures.append("confusion CSVs differ between identical seeded runs")
    _report(8, "CLI reproducibility", failures, time.perf_counter() - started, 120.0)
