"""Airy and modified Bessel functions from their power series.

Both are entire, so Maclaurin sums converge everywhere; the only issue is
cancellation (Airy on the positive axis), handled by raising the working
precision with ``|x|``.
"""
from __future__ import annotations

import math

import mpmath as mp

from .errors import DomainError

AIRY_XMAX = 12.0


def _airy_dps(x: float) -> int:
    # the largest series term is about exp((2/3)|x|^{3/2}) while Ai(x) is about
    # exp(-(2/3)x^{3/2}), so the digits lost grow like (4/3)|x|^{3/2}/ln 10
    return max(mp.mp.dps, 15) + 10 + int(math.ceil(0.58 * abs(x) ** 1.5))


def _airy_series(x, which: str):
    x = mp.mpf(x)
    c1 = 1 / (mp.cbrt(9) * mp.gamma(mp.mpf(2) / 3))   # Ai(0)
    c2 = 1 / (mp.cbrt(3) * mp.gamma(mp.mpf(1) / 3))   # -Ai'(0)
    if which == "ai":
        a0, a1 = c1, -c2
    else:
        a0, a1 = mp.sqrt(3) * c1, mp.sqrt(3) * c2
    # y'' = x y  gives  a_{n+3} = a_n / ((n+3)(n+2)), a_2 = 0
    coeffs = [a0, a1, mp.mpf(0)]
    val = a0 + a1 * x
    der = a1
    xpow = x  # x^{n-1}
    eps = mp.mpf(10) ** (-(mp.mp.dps + 2))
    n = 3
    small = 0
    while small < 3:
        an = coeffs[n - 3] / (n * (n - 1))
        coeffs.append(an)
        xpow *= x
        term_d = n * an * xpow
        term_v = an * xpow * x
        val += term_v
        der += term_d
        # three consecutive negligible terms cover one full period of the recurrence
        small = small + 1 if abs(term_v) + abs(term_d) <= eps * (abs(val) + abs(der)) else 0
        n += 1
    return val, der


def airy_mp(x, which: str = "ai", dps: int | None = None):
    """(value, derivative) of Ai (or Bi with ``which='bi'``) as mpf numbers."""
    xf = float(x)
    if not math.isfinite(xf) or abs(xf) > AIRY_XMAX:
        raise DomainError(f"airy argument {xf} outside [-{AIRY_XMAX}, {AIRY_XMAX}]")
    with mp.workdps(dps or _airy_dps(xf)):
        v, d = _airy_series(x, which)
        return +v, +d


def airy(x: float) -> tuple[float, float]:
    """Ai(x), Ai'(x) in double precision."""
    v, d = airy_mp(x, "ai")
    return float(v), float(d)


def airy_bi(x: float) -> tuple[float, float]:
    """Bi(x), Bi'(x) in double precision."""
    v, d = airy_mp(x, "bi")
    return float(v), float(d)


def bessel_i(order: int, z: float) -> float:
    """Modified Bessel function I_k(z) for integer k from its power series."""
    k = int(order)
    if k != order:
        raise DomainError("order must be an integer")
    if abs(k) > 200 or not math.isfinite(z) or abs(z) > 50:
        raise DomainError(f"bessel_i({order}, {z}) outside |order| <= 200, |z| <= 50")
    k = abs(k)
    if z == 0:
        return 1.0 if k == 0 else 0.0
    sign = -1.0 if (z < 0 and k % 2) else 1.0
    h = abs(z) / 2
    # terms (h)^{2j+k} / (j! (j+k)!) are all positive: no cancellation
    logt = k * math.log(h) - math.lgamma(k + 1)
    if logt < -745:
        return 0.0
    t = math.exp(logt)
    terms = [t]
    total = t
    j = 0
    h2 = h * h
    while True:
        j += 1
        t *= h2 / (j * (j + k))
        terms.append(t)
        total += t
        if j > h and t < 1e-18 * total:
            break
    return sign * math.fsum(terms)
