import math

import numpy as np
import pytest
import scipy.special as sc

from symperm.errors import DomainError, ParameterError
from symperm.painleve import (
    PIIConfig,
    TWFamily,
    default_table,
    f_box,
    f_boxtimes,
    solve_hastings_mcleod,
    solve_m,
    tw_eval,
    tw_grid_values,
    tw_moments,
)

# central differences on the uniform grid
D1 = np.array([-1 / 60, 3 / 20, -3 / 4, 0, 3 / 4, -3 / 20, 1 / 60])
D2 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])


def diff(f, stencil, h, order):
    return np.convolve(f, stencil[::-1], "valid") / h ** order


@pytest.fixture(scope="module")
def pii():
    return default_table()


def test_config_validation():
    with pytest.raises(ParameterError):
        PIIConfig(x_min=-11)
    with pytest.raises(ParameterError):
        PIIConfig(step=0.1)
    with pytest.raises(ParameterError):
        PIIConfig(step=0.007)
    with pytest.raises(ParameterError):
        PIIConfig(dps=20)
    assert PIIConfig().n_steps == 3600


def test_grid_layout(pii):
    assert pii.grid[0] == -10.0 and pii.grid[-1] == pytest.approx(8.0)
    assert np.all(np.diff(pii.grid) > 0)
    assert pii.index_of(0.0) == 2000
    with pytest.raises(DomainError):
        pii.index_of(0.0025)


def test_airy_asymptotics(pii):
    k = pii.index_of(6.0)
    assert abs(pii.u[k] + sc.airy(6.0)[0]) < 1e-8
    k = pii.index_of(-8.0)
    assert abs(pii.u[k] + 2) / 2 < 0.01


def test_solution_is_negative_and_monotone(pii):
    # the Hastings-McLeod solution is negative and increasing
    assert np.all(pii.u < 0)
    assert np.all(pii.du > 0)


def test_frozen_value_at_zero(pii):
    # literature value of the Hastings-McLeod solution at the origin
    assert pii.u[pii.index_of(0.0)] == pytest.approx(-0.367061551548078, abs=1e-12)


def test_ode_residual(pii):
    h = pii.step
    u, x = pii.u, pii.grid
    res = diff(u, D2, h, 2) - (2 * u[3:-3] ** 3 + x[3:-3] * u[3:-3])
    assert np.max(np.abs(res)) < 1e-9


def test_auxiliary_integrals_consistent(pii):
    h = pii.step
    core = slice(3, -3)
    assert np.max(np.abs(diff(pii.u, D1, h, 1) - pii.du[core])) < 1e-10
    assert np.max(np.abs(diff(pii.v, D1, h, 1) - pii.u[core] ** 2)) < 1e-10
    assert np.max(np.abs(diff(pii.W, D1, h, 1) + pii.v[core])) < 1e-10
    assert np.max(np.abs(diff(pii.iu, D1, h, 1) + pii.u[core])) < 1e-10


def test_initial_point_independence(pii):
    other = solve_hastings_mcleod(PIIConfig(x_max=7.0))
    n = len(other.grid)
    for name in ("u", "v", "W", "iu"):
        assert np.max(np.abs(getattr(other, name) - getattr(pii, name)[:n])) < 1e-10


def test_interpolation_against_finer_grid(pii):
    coarse = solve_hastings_mcleod(PIIConfig(step=0.01))
    mids = pii.grid[1::2]
    for kind in ("F1", "F2", "F4"):
        err = np.abs(tw_eval(coarse, kind, mids) - tw_grid_values(pii, kind)[1::2])
        assert np.max(err) < 1e-9


def test_closed_form_combinations(pii):
    x = np.linspace(-6, 6, 37)
    F = tw_eval(pii, "F", x)
    E = tw_eval(pii, "E", x)
    assert np.allclose(tw_eval(pii, "F2", x), F ** 2, rtol=1e-12)
    assert np.allclose(tw_eval(pii, "F1", x), F * E, rtol=1e-12)
    assert np.allclose(tw_eval(pii, "F4", x), F * (1 / E + E) / 2, rtol=1e-12)


def test_f4_dominates_f1(pii):
    F1 = tw_grid_values(pii, "F1")
    F4 = tw_grid_values(pii, "F4")
    assert np.all(F4 >= F1)


@pytest.mark.parametrize("kind", ["F1", "F2", "F4"])
def test_tw_limits_and_monotone(pii, kind):
    vals = tw_grid_values(pii, kind)
    assert np.all((vals >= 0) & (vals <= 1))
    assert np.all(np.diff(np.round(vals, 12)) >= 0)
    assert vals[0] < 1e-6 and abs(1 - vals[-1]) < 1e-6


# literature values (high-precision quadrature of the Fredholm determinants);
# the F4 here is the GSE law in the sqrt(2)-stretched convention
MOMENTS = {
    "F1": (-1.2065335745820, 1.607781034581),
    "F2": (-1.7710868074116, 0.8131947928329),
    "F4": (-2.306884893241 * math.sqrt(2), 0.5177237207726 * 2),
}


@pytest.mark.parametrize("kind", sorted(MOMENTS))
def test_moments_against_literature(pii, kind):
    mean, var = tw_moments(kind, pii)
    assert mean == pytest.approx(MOMENTS[kind][0], abs=1e-6)
    assert var == pytest.approx(MOMENTS[kind][1], abs=1e-6)


def test_mean_ordering(pii):
    means = {k: tw_moments(k, pii)[0] for k in ("F1", "F2", "F4")}
    # the GSE law of this convention sits to the left of the GOE law
    assert means["F4"] < means["F2"] < means["F1"]


def test_eval_domain(pii):
    with pytest.raises(DomainError):
        tw_eval(pii, "F2", 8.5)
    with pytest.raises(DomainError):
        tw_eval(pii, "F2", np.array([0.0, -10.1]))
    with pytest.raises(ParameterError):
        tw_eval(pii, "F3", 0.0)


# ---------------------------------------------------------------- m(-iw; x)

@pytest.mark.parametrize("w", [-2.0, -0.5, 0.0, 0.5, 2.0, 5.0])
def test_unit_determinant(pii, w):
    m = solve_m(w, pii)
    k = (pii.grid >= -6) & (pii.grid <= 6)
    assert np.max(np.abs(m.det()[k] - 1)) < 1e-6


def test_w_range():
    with pytest.raises(DomainError):
        solve_m(6.0)
    with pytest.raises(DomainError):
        solve_m(-3.0)


def test_zero_w_identities(pii):
    x = pii.grid[(pii.grid >= -6) & (pii.grid <= 4)]
    F1 = tw_eval(pii, "F1", x)
    assert np.max(np.abs(f_box(x, 0.0) - F1)) < 1e-6
    assert np.max(np.abs(f_boxtimes(x, 0.0) - F1 ** 2)) < 1e-6


def test_large_w_moves_toward_limits(pii):
    # the gap to the w -> infinity limits shrinks as w grows
    x = pii.grid[(pii.grid >= -6) & (pii.grid <= 4)]
    F2, F4 = tw_eval(pii, "F2", x), tw_eval(pii, "F4", x)
    gaps_box = [np.max(np.abs(f_box(x, w) - F4)) for w in (1.0, 2.0, 5.0)]
    gaps_cross = [np.max(np.abs(f_boxtimes(x, w) - F2)) for w in (1.0, 2.0, 5.0)]
    assert gaps_box[0] > gaps_box[1] > gaps_box[2]
    assert gaps_cross[0] > gaps_cross[1] > gaps_cross[2]


@pytest.mark.parametrize("w", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("kind", ["Fbox", "Fboxtimes"])
def test_box_families_normalized(pii, w, kind):
    vals = TWFamily(kind, w, pii).grid_values()
    assert np.all(np.diff(np.round(vals, 12)) >= 0)
    assert vals[0] < 1e-6 and abs(1 - vals[-1]) < 1e-6


def test_box_family_ordering_in_w(pii):
    # more weight on the diagonal (smaller w) pushes the law to the right
    x = np.linspace(-4, 2, 13)
    a, b = f_box(x, 0.5), f_box(x, 2.0)
    assert np.all(a <= b + 1e-12)


def test_family_api(pii):
    fam = TWFamily("F2", power=2, pii=pii)
    assert fam.label == "F2^2"
    assert fam(0.0) == pytest.approx(tw_eval(pii, "F2", 0.0) ** 2)
    assert fam(100.0, clamp=True) == pytest.approx(1.0, abs=1e-6)
    assert TWFamily("Fbox", 1.0, pii).label == "Fbox(1)"
    with pytest.raises(ParameterError):
        TWFamily("Fbox")
    with pytest.raises(ParameterError):
        TWFamily("G2")
    with pytest.raises(DomainError):
        fam(9.0)
