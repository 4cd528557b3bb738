import math
from fractions import Fraction

import numpy as np
import pytest

from symperm.combinatorics import (
    EnsembleSpec,
    Permutation,
    fp_count,
    ifp_count,
    lis_of_permutation,
    partitions,
)
from symperm.errors import ParameterError, SizeError, UnsupportedError
from symperm.exact import (
    ExactLaw,
    beta_plancherel_pmf,
    beta_plancherel_sample,
    depoissonize_check,
    enumerate_ensemble,
    enumerate_involutions,
    enumerate_signed_involutions,
    enumerate_signed_permutations,
    exact_cdf_bruteforce,
    exact_cdf_rsk,
    first_row_law,
    gaussian_ensemble_integral,
    lis_count,
    poisson_gf,
    poisson_gf_series,
    poisson_gf_toeplitz,
    poisson_tail,
    regev_lhs,
    regev_ratio,
    regev_rhs,
    toeplitz_matrix,
)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_plain_n3_by_hand():
    # 123 -> 3; 132, 213, 231, 312 -> 2; 321 -> 1
    law = exact_cdf_rsk(EnsembleSpec("plain", 3))
    assert law.cdf == (0, Fraction(1, 6), Fraction(5, 6), 1)
    assert law.pmf() == (0, Fraction(1, 6), Fraction(2, 3), Fraction(1, 6))


def test_invol_and_anti_invol_n3_by_hand():
    # involutions of 3 letters with one fixed point: 132, 321, 213
    assert exact_cdf_rsk(EnsembleSpec("invol", 1, m=1)).cdf == (0, Fraction(1, 3), 1, 1)
    # their images under reversal: 312, 123, 231
    assert exact_cdf_rsk(EnsembleSpec("anti-invol", 1, m=1)).cdf == (0, 0, Fraction(2, 3), 1)


def test_trivial_ensembles():
    assert exact_cdf_rsk(EnsembleSpec("plain", 0)).cdf == (1,)
    assert exact_cdf_rsk(EnsembleSpec("invol", 0, m=4)).cdf == (0, 0, 0, 0, 1)
    assert exact_cdf_bruteforce(EnsembleSpec("signed", 1)).cdf == (0, Fraction(1, 2), 1)


@pytest.mark.parametrize("n", range(0, 9))
def test_rsk_matches_bruteforce_plain(n):
    spec = EnsembleSpec("plain", n)
    assert exact_cdf_rsk(spec).cdf == exact_cdf_bruteforce(spec).cdf


@pytest.mark.parametrize("sym", ["invol", "anti-invol"])
def test_rsk_matches_bruteforce_involutive(sym):
    for N in range(0, 11):
        for m in range(N % 2, N + 1, 2):
            spec = EnsembleSpec(sym, (N - m) // 2, m=m)
            assert exact_cdf_rsk(spec).cdf == exact_cdf_bruteforce(spec).cdf


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_involutions(6, 2)) == 45
    assert sum(1 for _ in enumerate_signed_permutations(3)) == 2 ** 3 * 6
    # signed permutations commute with reversal
    for p in enumerate_signed_permutations(3):
        N = len(p)
        assert all(p[N - 1 - i] == N + 1 - p[i] for i in range(N))


def test_signed_involution_enumeration():
    for n, mp_, mm in [(0, 1, 1), (1, 0, 0), (1, 1, 2), (2, 1, 0)]:
        seen = set()
        for img in enumerate_signed_involutions(n, mp_, mm):
            p = Permutation(img)
            assert p.compose(p) == Permutation.identity(len(p))
            assert fp_count(p) == 2 * mp_ and ifp_count(p) == 2 * mm
            seen.add(img)
        assert seen == set(enumerate_signed_involutions(n, mp_, mm))


def test_bruteforce_bound():
    with pytest.raises(SizeError):
        exact_cdf_bruteforce(EnsembleSpec("plain", 11))
    with pytest.raises(UnsupportedError):
        exact_cdf_rsk(EnsembleSpec("signed", 3))
    with pytest.raises(SizeError):
        exact_cdf_rsk(EnsembleSpec("plain", 41))


def test_signed_bruteforce_consistent_with_enumeration():
    spec = EnsembleSpec("signed-invol", 1, m_plus=1, m_minus=1)
    law = exact_cdf_bruteforce(spec)
    lis = [lis_of_permutation(p) for p in enumerate_ensemble(spec)]
    for l in range(spec.N + 1):
        assert law(l) == Fraction(sum(x <= l for x in lis), len(lis))


def test_exact_law_validation_and_csv():
    with pytest.raises(ValueError):
        ExactLaw(EnsembleSpec("plain", 1), (Fraction(1), Fraction(1, 2)))
    csv = exact_cdf_rsk(EnsembleSpec("plain", 3)).to_csv().splitlines()
    assert csv[0] == "l,numerator,denominator,float_value"
    assert csv[3] == "2,5,6,0.833333333333"


@pytest.mark.parametrize("n", range(0, 13))
def test_catalan_identity(n):
    assert regev_lhs(n, 2, 2) == catalan(n)
    assert lis_count(n, 2) == catalan(n)


def test_lis_count_totals():
    for n in range(0, 12):
        assert lis_count(n, n) == math.factorial(n)
        assert lis_count(n, 1) == 1


def test_toeplitz_matrix_structure():
    T = toeplitz_matrix(4, 1.5)
    assert np.allclose(T, T.T)
    assert np.allclose(np.diag(T, 1), T[0, 1])


@pytest.mark.parametrize("l", [1, 2, 3, 5, 10])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 3.0])
def test_toeplitz_equals_series(l, t):
    assert abs(poisson_gf_toeplitz(l, t) - poisson_gf_series(l, t, n_max=40)) < 1e-10


def test_poisson_gf_l1_closed_form():
    # only the identity has LIS <= 1 for every n: e^{-t^2} I_0(2t)
    assert poisson_gf_toeplitz(1, 1.0) == pytest.approx(math.exp(-1) * 2.2795853023360673, rel=1e-14)


def test_poisson_gf_metadata():
    r = poisson_gf(3, 2.0, n_max=30)
    assert r.method == "series" and 0 < r.truncation_bound < 1e-10
    assert poisson_tail(0.0, 5) == 0.0
    with pytest.raises(ParameterError):
        poisson_gf(0, 1.0, method="toeplitz")
    with pytest.raises(SizeError):
        poisson_gf(3, 1.0, n_max=41)


def test_depoissonize_check_values():
    exact, pois, diff = depoissonize_check(6, 3)
    assert exact == Fraction(57, 80)
    assert diff == pytest.approx(float(exact) - pois)
    # the Poissonized value moves toward the exact one as n grows
    gaps = [abs(depoissonize_check(n, n // 2)[2]) for n in (10, 20, 30)]
    assert gaps[0] > gaps[2]


def test_beta_plancherel():
    pmf3 = {lam.parts: p for lam, p in beta_plancherel_pmf(3, 2).items()}
    assert pmf3 == {(3,): Fraction(1, 6), (2, 1): Fraction(2, 3), (1, 1, 1): Fraction(1, 6)}
    pmf = beta_plancherel_pmf(5, 1)
    assert sum(pmf.values()) == 1
    assert first_row_law(4, 1) == {1: Fraction(1, 10), 2: Fraction(1, 2), 3: Fraction(3, 10), 4: Fraction(1, 10)}
    assert sum(beta_plancherel_pmf(6, 0.5).values()) == pytest.approx(1.0)
    rng = np.random.default_rng(0)
    lam = beta_plancherel_sample(7, 2, rng)
    assert lam.size == 7


def test_first_row_law_beta2_is_lis_law():
    law = exact_cdf_rsk(EnsembleSpec("plain", 6))
    fr = first_row_law(6, 2)
    acc = Fraction(0)
    for l in range(1, 7):
        acc += fr.get(l, 0)
        assert acc == law(l)


def test_gaussian_integral_small_cases():
    # l = 1: int exp(-beta x^2 / 2) dx = sqrt(2 pi / beta)
    for beta in (1, 2, 4):
        assert float(gaussian_ensemble_integral(1, beta)) == pytest.approx(math.sqrt(2 * math.pi / beta))
    # l = 2, beta = 2: int exp(-2(x^2 + y^2)) (x - y)^2 = pi / 4 (checked by 2-d quadrature)
    assert float(gaussian_ensemble_integral(2, 2)) == pytest.approx(math.pi / 4, rel=1e-12)
    # l = 2, beta = 1: int exp(-(x^2 + y^2)) |x - y| = sqrt(2 pi)
    assert float(gaussian_ensemble_integral(2, 1)) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12)
    with pytest.raises(UnsupportedError):
        gaussian_ensemble_integral(2, 3)


def test_regev_ratio_frozen_values():
    # oracle: regev_lhs / regev_rhs computed once and frozen; the l=2, beta=2 ratio
    # tends to 1/(pi sqrt 2) = 0.2251 (see the design notes)
    assert regev_ratio(120, 2, 2) == pytest.approx(0.2229865233855767, rel=1e-9)
    assert regev_ratio(120, 3, 1) == pytest.approx(0.15597866539905236, rel=1e-9)
    assert regev_ratio(120, 2, 4) == pytest.approx(0.12414139494920277, rel=1e-9)
    r = [regev_ratio(n, 2, 2) for n in (20, 40, 80, 120)]
    assert all(a < b for a, b in zip(r, r[1:])) and r[-1] < 1 / (math.pi * math.sqrt(2))


def test_regev_rhs_rejects_small_l():
    with pytest.raises(ParameterError):
        regev_rhs(10, 1, 2)
