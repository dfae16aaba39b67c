import numpy as np
import pytest
from numpy.testing import assert_allclose

import flucthmm as fh
from flucthmm.errors import (
    EmptySequence,
    InvalidModel,
    InvalidObservation,
    TypeMismatch,
)


def unit_gaussian(n=1):
    return fh.GaussianEmission(np.zeros(n), np.ones(n))


def test_gaussian_density_at_mean_unit_variance():
    em = unit_gaussian()
    assert_allclose(em.density(0, 0.0), 0.3989422804014327, rtol=1e-12)


def test_gaussian_density_at_mean_sigma_two():
    em = fh.GaussianEmission(np.array([2.0]), np.array([4.0]))
    assert_allclose(em.density(0, 2.0), 0.19947114020071635, rtol=1e-12)


def test_discrete_density_is_table_lookup():
    em = fh.DiscreteEmission(np.array([[0.25, 0.75]]))
    assert em.density(0, 1) == 0.75


def test_emission_density_dispatch_and_state_range():
    model = fh.HmmModel([1.0], [[1.0]], unit_gaussian())
    assert_allclose(fh.emission_density(model, 0, 0.0), 0.3989422804014327, rtol=1e-12)
    with pytest.raises(InvalidModel):
        fh.emission_density(model, 1, 0.0)


def test_discrete_symbol_out_of_range():
    em = fh.DiscreteEmission(np.array([[0.5, 0.5]]))
    with pytest.raises(InvalidObservation):
        em.density(0, 2)
    with pytest.raises(InvalidObservation):
        em.check_sequence(np.array([0, 1, 2]))


def test_density_matrix_matches_pointwise():
    rng = np.random.default_rng(0)
    em = fh.GaussianEmission(rng.normal(size=3), rng.random(3) + 0.5)
    values = rng.normal(size=7)
    mat = em.density_matrix(values)
    assert mat.shape == (7, 3)
    for t in range(7):
        for j in range(3):
            assert_allclose(mat[t, j], em.density(j, values[t]), rtol=1e-14)
    assert_allclose(np.log(mat), em.log_density_matrix(values), rtol=1e-12)


@pytest.mark.parametrize(
    "pi",
    [
        [0.5, 0.6],
        [1.2, -0.2],
        [0.5, np.nan],
        [[0.5, 0.5]],
    ],
)
def test_invalid_pi_rejected(pi):
    with pytest.raises(InvalidModel):
        fh.HmmModel(pi, np.eye(2), unit_gaussian(2))


def test_invalid_transition_row_rejected():
    trans = np.array([[0.9, 0.2], [0.5, 0.5]])
    with pytest.raises(InvalidModel):
        fh.HmmModel([0.5, 0.5], trans, unit_gaussian(2))


def test_stochastic_tolerance_is_tight():
    # within 1e-12 passes, beyond it fails
    fh.HmmModel([0.5, 0.5 + 9e-13], np.full((2, 2), 0.5), unit_gaussian(2))
    with pytest.raises(InvalidModel):
        fh.HmmModel([0.5, 0.5 + 1e-11], np.full((2, 2), 0.5), unit_gaussian(2))


@pytest.mark.parametrize("variances", [[0.0], [-1.0], [np.inf]])
def test_gaussian_variance_must_be_positive_finite(variances):
    with pytest.raises(InvalidModel):
        fh.GaussianEmission(np.zeros(1), np.array(variances, dtype=float))


def test_discrete_rows_must_be_stochastic():
    with pytest.raises(InvalidModel):
        fh.DiscreteEmission(np.array([[0.3, 0.3]]))


def test_emission_state_count_must_match():
    with pytest.raises(InvalidModel):
        fh.HmmModel([0.5, 0.5], np.full((2, 2), 0.5), unit_gaussian(3))


def test_gaussian_sequence_checks():
    em = unit_gaussian()
    with pytest.raises(EmptySequence):
        em.check_sequence(np.array([]))
    with pytest.raises(TypeMismatch):
        em.check_sequence(np.array([1.0, np.inf]))
    with pytest.raises(TypeMismatch):
        em.check_sequence(np.array(["a", "b"]))
    out = em.check_sequence([1, 2, 3])
    assert out.dtype == np.float64


def test_discrete_sequence_checks():
    em = fh.DiscreteEmission(np.array([[0.5, 0.5]]))
    with pytest.raises(TypeMismatch):
        em.check_sequence(np.array([0.5, 1.0]))
    out = em.check_sequence(np.array([0, 1, 0]))
    assert out.dtype == np.int64


def test_to_dict_round_shape():
    model = fh.HmmModel([0.5, 0.5], np.full((2, 2), 0.5), unit_gaussian(2))
    doc = model.to_dict()
    assert doc["n_states"] == 2
    assert doc["emission"]["kind"] == "gaussian"
    assert isinstance(doc["pi"][0], float)


def test_inference_leaves_model_unmodified():
    rng = np.random.default_rng(5)
    pi = np.array([0.4, 0.6])
    trans = np.array([[0.7, 0.3], [0.2, 0.8]])
    model = fh.HmmModel(pi.copy(), trans.copy(), unit_gaussian(2))
    seq = rng.normal(size=20)
    fh.log_likelihood(model, seq)
    fh.posteriors(model, seq)
    fh.viterbi(model, seq)
    assert np.array_equal(model.pi, pi)
    assert np.array_equal(model.trans, trans)
