import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symperm.combinatorics import SymmetryType
from symperm.errors import DomainError, ParameterError
from symperm.lpp import (
    LppSpec,
    WeightField,
    eta,
    last_passage,
    lpp_scaling,
    rho,
    sample_field,
    sample_g,
    transitional_alpha,
)

MODELS = [s.value for s in SymmetryType]


def brute_paths(A):
    """Maximum over every up/right path, listed explicitly as move words."""
    R, C = A.shape
    best = -math.inf
    for downs in itertools.combinations(range(R + C - 2), R - 1):
        r = c = 0
        tot = A[0, 0]
        for step in range(R + C - 2):
            if step in downs:
                r += 1
            else:
                c += 1
            tot += A[r, c]
        best = max(best, tot)
    return best


def test_all_zero_field():
    assert last_passage(np.zeros((5, 5), dtype=int)) == 0


def test_two_by_two_by_hand():
    # w(1,1)=1, w(1,2)=0, w(2,1)=2, w(2,2)=3: paths 1+0+3 and 1+2+3
    A = np.array([[1, 0], [2, 3]])
    assert last_passage(A) == 6


@pytest.mark.parametrize("N", range(1, 7))
def test_dp_matches_path_enumeration(N):
    rng = np.random.default_rng(N)
    for _ in range(15):
        A = rng.integers(0, 5, size=(N, N))
        assert last_passage(A) == brute_paths(A)
    B = rng.integers(0, 5, size=(N, N + 2))
    assert last_passage(B) == brute_paths(B)


def test_stacked_evaluation():
    rng = np.random.default_rng(0)
    stack = rng.integers(0, 9, size=(7, 5, 5))
    assert list(last_passage(stack)) == [last_passage(a) for a in stack]


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), N=st.integers(1, 7), bump=st.integers(1, 5))
def test_monotone_under_single_weight_increase(seed, N, bump):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 4, size=(N, N))
    r, c = rng.integers(0, N, size=2)
    B = A.copy()
    B[r, c] += bump
    assert last_passage(B) >= last_passage(A)


@pytest.mark.parametrize("model", MODELS)
def test_fields_are_exactly_symmetric(model):
    kw = {"alpha": 0.5} if model == "invol" else {"beta": 0.5} if model == "anti-invol" else {}
    if model == "signed-invol":
        kw = {"alpha": 0.5, "beta": 0.7}
    spec = LppSpec(model, 6, 0.3, **kw)
    rng = np.random.default_rng(1)
    for _ in range(10):
        f = sample_field(spec, rng)
        assert f.values.shape == (spec.side, spec.side)
        assert f.symmetry_defects() == 0


def test_symmetry_relations_explicitly():
    rng = np.random.default_rng(2)
    A = sample_field(LppSpec("invol", 5, 0.5, alpha=0.5), rng).values
    assert np.array_equal(A, A.T)
    B = sample_field(LppSpec("anti-invol", 5, 0.5, beta=0.5), rng).values
    assert np.array_equal(B, B[::-1, ::-1].T)
    C = sample_field(LppSpec("signed", 4, 0.5), rng).values
    assert np.array_equal(C, C[::-1, ::-1])
    assert not C[4].any() and not C[:, 4].any()
    D = sample_field(LppSpec("signed-invol", 4, 0.5, alpha=0.5, beta=0.5), rng).values
    assert np.array_equal(D, D.T) and np.array_equal(D, D[::-1, ::-1])


def test_broken_field_is_detected():
    spec = LppSpec("invol", 4, 0.5)
    vals = np.zeros((4, 4), dtype=int)
    vals[0, 1] = 1
    assert WeightField(spec, vals).symmetry_defects() == 1


def test_zero_alpha_gives_zero_diagonal():
    rng = np.random.default_rng(3)
    A = sample_field(LppSpec("invol", 30, 0.8), rng).values
    assert not np.diag(A).any() and A.sum() > 0
    B = sample_field(LppSpec("anti-invol", 30, 0.8), rng).values
    assert not np.diag(B[::-1]).any()


def test_geometric_mean():
    q = 0.4
    rng = np.random.default_rng(4)
    g = [sample_g(1, q, rng=rng) for _ in range(20000)]
    assert np.mean(g) == pytest.approx(q / (1 - q), rel=0.03)
    assert min(g) == 0


def test_spec_validation():
    with pytest.raises(ParameterError):
        LppSpec("plain", 3, 1.0)
    with pytest.raises(ParameterError):
        LppSpec("plain", 3, 0.5, alpha=0.2)
    with pytest.raises(ParameterError):
        LppSpec("invol", 3, 0.25, alpha=2.0)
    with pytest.raises(ParameterError):
        LppSpec("signed", 0, 0.25)
    with pytest.raises(ParameterError):
        sample_g(3, 0.5)


def test_scaling_constants():
    assert eta(0.25) == pytest.approx(2.0)
    assert rho(0.25) == pytest.approx(1.8171, abs=1e-4)
    assert lpp_scaling("plain", 10, 0.25) == pytest.approx((20.0, rho(0.25) * 10 ** (1 / 3)))
    assert lpp_scaling("signed", 10, 0.25)[0] == pytest.approx(40.0)
    assert lpp_scaling("signed", 10, 0.25)[1] == pytest.approx(2 ** (2 / 3) * rho(0.25) * 20 ** (1 / 3))


def test_transitional_alpha():
    assert transitional_alpha(0.0, "invol", 100, 0.25) == 1.0
    assert transitional_alpha(0.5, "invol", 100, 0.25) < 1
    assert transitional_alpha(1.0, "invol", 512, 0.25) == pytest.approx(1 - 2 / (1.8171 * 8), abs=1e-4)
    with pytest.raises(ParameterError):
        transitional_alpha(1.0, "plain", 100, 0.25)
    with pytest.raises(DomainError):
        transitional_alpha(-2.0, "invol", 8, 0.25)
