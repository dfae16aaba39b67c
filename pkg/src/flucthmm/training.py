"""Baum-Welch EM: initialization schemes, the constrained M-step, and the
training loop with convergence monitoring.

Multi-sequence training pools gamma/xi statistics across sequences before
re-estimation, which is exact EM for the joint likelihood of independent
sequences. Statistics are summed in sequence order, so results are
deterministic for a given (init, data, config).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyTrainingSet,
    InvalidModel,
    SequenceTooShort,
    StateStarvedWarning,
)
from . import _kernels
from .errors import ImpossibleSequence
from .inference import PosteriorStats, _run_forward
from .model import DiscreteEmission, GaussianEmission, HmmModel

INIT_SCHEMES = ("quantile", "random")
EMISSION_KINDS = ("gaussian", "discrete")

RNG_ALGORITHM = "numpy-pcg64"


@dataclass
class TrainingConfig:
    n_states: int = 17
    max_iterations: int = 500
    rel_tolerance: float = 1e-6
    seed: int = 0
    init_scheme: str = "quantile"
    variance_floor: float = 1e-6

    def __post_init__(self):
        if self.n_states < 1:
            raise InvalidModel(f"n_states must be positive, got {self.n_states}")
        if self.max_iterations < 1:
            raise InvalidModel(f"max_iterations must be positive, got {self.max_iterations}")
        if not 0.0 < self.rel_tolerance < 1.0:
            raise InvalidModel(f"rel_tolerance must lie in (0, 1), got {self.rel_tolerance}")
        if self.seed < 0:
            raise InvalidModel(f"seed must be nonnegative, got {self.seed}")
        if self.variance_floor <= 0.0:
            raise InvalidModel(f"variance_floor must be positive, got {self.variance_floor}")
        if self.init_scheme not in INIT_SCHEMES:
            raise InvalidModel(f"init_scheme must be one of {INIT_SCHEMES}")


@dataclass
class TrainingReport:
    """Evidence of a training run: per-iteration log-likelihoods and outcome.

    loglik_trace[k] is the total data log-likelihood under the model at the
    start of EM cycle k; the last entry is evaluated under the returned
    model, so final_loglik == loglik_trace[-1].
    """

    iterations_run: int
    converged: bool
    loglik_trace: list = field(default_factory=list)

    @property
    def final_loglik(self) -> float:
        return self.loglik_trace[-1]

    def to_dict(self):
        return {
            "iterations_run": self.iterations_run,
            "converged": self.converged,
            "loglik_trace": list(self.loglik_trace),
            "final_loglik": self.final_loglik,
        }

    def trace_csv(self) -> str:
        lines = ["iteration,loglik"]
        lines += [f"{i},{float(v)!r}" for i, v in enumerate(self.loglik_trace)]
        return "\n".join(lines) + "\n"


def _normalize_rows(mat):
    return mat / mat.sum(axis=1, keepdims=True)


def initialize_model(
    config: TrainingConfig,
    emission_kind: str,
    data,
    n_symbols: int | None = None,
) -> HmmModel:
    """Build a valid starting model for Baum-Welch.

    The "random" scheme draws pi and transition rows as normalized absolute
    unit normals and gives Gaussian states unit-normal means with variance 1.
    The "quantile" scheme (the default) places state means at evenly spaced
    quantiles of the pooled training data with the pooled variance, keeping
    pi and transitions uniform; identical-emission random inits stall EM by
    symmetry, which this avoids. Deterministic given config.seed.
    """
    if emission_kind not in EMISSION_KINDS:
        raise InvalidModel(f"emission_kind must be one of {EMISSION_KINDS}")
    n = config.n_states
    rng = np.random.default_rng(config.seed)

    if emission_kind == "discrete":
        if n_symbols is None:
            if not data:
                raise EmptyTrainingSet("cannot infer the symbol alphabet without data")
            n_symbols = int(max(int(np.max(s)) for s in data)) + 1
        # the quantile scheme is defined for Gaussian means; discrete rows
        # are always seeded random so states start distinguishable
        obs = _normalize_rows(np.abs(rng.standard_normal((n, n_symbols))))
        emission = DiscreteEmission(obs)
        if config.init_scheme == "random":
            pi = np.abs(rng.standard_normal(n))
            trans = _normalize_rows(np.abs(rng.standard_normal((n, n))))
            pi = pi / pi.sum()
        else:
            pi = np.full(n, 1.0 / n)
            trans = np.full((n, n), 1.0 / n)
        return HmmModel(pi, trans, emission)

    if config.init_scheme == "random":
        pi = np.abs(rng.standard_normal(n))
        pi = pi / pi.sum()
        trans = _normalize_rows(np.abs(rng.standard_normal((n, n))))
        means = rng.standard_normal(n)
        variances = np.ones(n)
    else:
        if not data:
            raise EmptyTrainingSet("quantile initialization needs training data")
        pooled = np.concatenate([np.asarray(s, dtype=np.float64) for s in data])
        qs = (np.arange(n) + 0.5) / n
        means = np.quantile(pooled, qs)
        var = float(np.var(pooled))
        variances = np.full(n, max(var, config.variance_floor))
        pi = np.full(n, 1.0 / n)
        trans = np.full((n, n), 1.0 / n)
    return HmmModel(pi, trans, GaussianEmission(means, variances))


def reestimate(posterior_bundles, prev_model: HmmModel, variance_floor: float = 1e-6) -> HmmModel:
    """Closed-form M-step from pooled posterior statistics.

    Implements the textbook constrained re-estimation: pi from first-step
    gammas, transitions from summed xi over summed gamma, and emission
    parameters from gamma-weighted sample statistics (Gaussian variances
    floored at variance_floor). Rows are renormalized after division so the
    stochasticity invariants hold exactly. A state with zero total occupancy
    keeps its previous parameters and triggers a StateStarvedWarning.
    """
    if not posterior_bundles:
        raise EmptyTrainingSet("no posterior bundles to re-estimate from")
    n = prev_model.n_states

    pi_num = np.zeros(n)
    trans_num = np.zeros((n, n))
    trans_den = np.zeros(n)
    occupancy = np.zeros(n)
    for stats, seq in posterior_bundles:
        pi_num += stats.gamma[0]
        trans_num += stats.xi.sum(axis=0)
        trans_den += stats.gamma[:-1].sum(axis=0)
        occupancy += stats.gamma.sum(axis=0)

    pi = pi_num / pi_num.sum()

    trans = prev_model.trans.copy()
    starved_trans = trans_den == 0.0
    live = ~starved_trans
    trans[live] = trans_num[live] / trans_den[live, None]
    trans[live] = _normalize_rows(trans[live])

    starved_emission = occupancy == 0.0
    if prev_model.emission.kind == "gaussian":
        wsum = np.zeros(n)
        wval = np.zeros(n)
        for stats, seq in posterior_bundles:
            values = np.asarray(seq, dtype=np.float64)
            wsum += stats.gamma.sum(axis=0)
            wval += stats.gamma.T @ values
        means = prev_model.emission.means.copy()
        live_e = ~starved_emission
        means[live_e] = wval[live_e] / wsum[live_e]
        wsq = np.zeros(n)
        for stats, seq in posterior_bundles:
            values = np.asarray(seq, dtype=np.float64)
            wsq += np.einsum("tj,tj->j", stats.gamma, (values[:, None] - means[None, :]) ** 2)
        variances = prev_model.emission.variances.copy()
        variances[live_e] = np.maximum(wsq[live_e] / wsum[live_e], variance_floor)
        emission = GaussianEmission(means, variances)
    else:
        m = prev_model.emission.n_symbols
        obs_num = np.zeros((n, m))
        for stats, seq in posterior_bundles:
            symbols = np.asarray(seq)
            by_symbol = np.zeros((m, n))
            np.add.at(by_symbol, symbols, stats.gamma)
            obs_num += by_symbol.T
        obs = prev_model.emission.obs.copy()
        live_e = ~starved_emission
        obs[live_e] = obs_num[live_e] / occupancy[live_e, None]
        obs[live_e] = _normalize_rows(obs[live_e])
        emission = DiscreteEmission(obs)

    starved = np.flatnonzero(starved_trans | starved_emission)
    if starved.size:
        warnings.warn(
            f"states {starved.tolist()} had zero occupancy; parameters kept",
            StateStarvedWarning,
            stacklevel=2,
        )
    return HmmModel(pi, trans, emission)


def _check_training_data(init, data):
    if not data:
        raise EmptyTrainingSet("no training sequences")
    checked = []
    for seq in data:
        values = init.check_sequence(seq)
        if values.shape[0] < 2:
            raise SequenceTooShort("training sequences need at least one transition")
        checked.append(values)
    return checked


def baum_welch(init: HmmModel, data, config: TrainingConfig):
    """Fit a model to one or more sequences by EM.

    Each cycle runs the forward-backward E-step on every sequence, pools the
    statistics, and applies the closed-form M-step. Stops when the relative
    log-likelihood improvement |dl| / (1 + |l|) drops below
    config.rel_tolerance, or after max_iterations cycles.

    Returns (model, TrainingReport). The trace is nondecreasing up to float
    slack by EM monotonicity.
    """
    data = _check_training_data(init, data)
    model = init
    trace = []
    converged = False
    iterations = 0
    for it in range(config.max_iterations):
        bundles, total = _estep(model, data)
        trace.append(total)
        if it > 0 and abs(total - trace[-2]) / (1.0 + abs(total)) < config.rel_tolerance:
            converged = True
            break
        model = reestimate(bundles, model, config.variance_floor)
        iterations = it + 1
    else:
        # ran the full budget: evaluate the final model so the report's last
        # entry describes the returned parameters
        _, final = _estep(model, data)
        trace.append(final)
    report = TrainingReport(iterations_run=iterations, converged=converged, loglik_trace=trace)
    return model, report


def _estep(model, data):
    """Posterior bundles for every sequence plus the total log-likelihood."""
    bundles = []
    total = 0.0
    for values in data:
        obs_probs, alpha, scale, loglik = _run_forward(model, values)
        if not np.isfinite(loglik):
            raise ImpossibleSequence("a training sequence has zero probability")
        beta = _kernels.backward_scaled(model.trans, obs_probs, scale)
        gamma = alpha * beta
        xi = _kernels.posterior_xi(alpha, beta, model.trans, obs_probs, scale)
        bundles.append((PosteriorStats(gamma, xi), values))
        total += loglik
    return bundles, total
