import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sc

from symperm.errors import DomainError
from symperm.special import airy, airy_bi, airy_mp, bessel_i


@pytest.mark.parametrize("x", [-12.0, -8.5, -3.0, -0.7, 0.0, 0.4, 2.0, 6.0, 10.0, 12.0])
def test_airy_against_scipy(x):
    ai, aip, bi, bip = sc.airy(x)
    a, ap = airy(x)
    b, bp = airy_bi(x)
    for got, want in ((a, ai), (ap, aip), (b, bi), (bp, bip)):
        assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


def test_airy_at_zero():
    a, ap = airy(0.0)
    assert a == pytest.approx(1 / (3 ** (2 / 3) * math.gamma(2 / 3)), rel=1e-15)
    assert ap == pytest.approx(-1 / (3 ** (1 / 3) * math.gamma(1 / 3)), rel=1e-15)


def test_airy_wronskian():
    for x in np.linspace(-10, 10, 21):
        a, ap = airy_mp(x, "ai")
        b, bp = airy_mp(x, "bi")
        assert float(a * bp - ap * b) == pytest.approx(1 / math.pi, rel=1e-20)


def test_airy_satisfies_ode():
    x, h = 1.3, 1e-3
    f = lambda s: float(airy_mp(s, "ai", dps=40)[0])
    second = (f(x + h) - 2 * f(x) + f(x - h)) / h ** 2
    assert second == pytest.approx(x * f(x), rel=1e-6)


def test_airy_domain():
    with pytest.raises(DomainError):
        airy(13.0)
    with pytest.raises(DomainError):
        airy(float("nan"))


def test_bessel_frozen_value():
    # oracle: mpmath.besseli(0, 2)
    assert bessel_i(0, 2.0) == pytest.approx(2.2795853023360673, rel=1e-15)


@pytest.mark.parametrize("k", [0, 1, 2, 5, 9, 20, -3])
@pytest.mark.parametrize("z", [0.1, 1.0, 2.0, 6.0, 20.0])
def test_bessel_against_mpmath(k, z):
    assert bessel_i(k, z) == pytest.approx(float(mp.besseli(k, z)), rel=1e-13)


def test_bessel_symmetries():
    assert bessel_i(3, 0.0) == 0.0 and bessel_i(0, 0.0) == 1.0
    assert bessel_i(3, -2.0) == pytest.approx(-bessel_i(3, 2.0))
    assert bessel_i(4, -2.0) == pytest.approx(bessel_i(4, 2.0))
    assert bessel_i(-7, 3.0) == bessel_i(7, 3.0)


def test_bessel_generating_function():
    # sum_k I_k(z) = e^z
    z = 3.0
    assert math.fsum(bessel_i(k, z) for k in range(-40, 41)) == pytest.approx(math.exp(z), rel=1e-14)


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_i(1.5, 1.0)
    with pytest.raises(DomainError):
        bessel_i(2, 60.0)
