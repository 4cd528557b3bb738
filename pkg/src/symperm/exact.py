"""Exact finite-size laws of the longest increasing subsequence.

Two independent routes: exhaustive enumeration of an ensemble, and sums of
hook-length counts over Young diagrams (RSK).  Also the Poissonized generating
function in series and Toeplitz-determinant form, the beta-Plancherel measure,
and both sides of the Regev asymptotic.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import mpmath as mp
import numpy as np

from .combinatorics import (
    EnsembleSpec,
    Partition,
    SymmetryType,
    hook_dim,
    lis_of_sequence,
    partitions,
)
from .errors import ParameterError, SizeError, UnsupportedError
from .special import bessel_i

BRUTEFORCE_BOUND = {
    SymmetryType.PLAIN: 10,
    SymmetryType.INVOL: 12,
    SymmetryType.ANTI_INVOL: 12,
    SymmetryType.SIGNED: 8,
    SymmetryType.SIGNED_INVOL: 8,
}
PARTITION_BOUND = 40


@dataclass(frozen=True)
class ExactLaw:
    """Exact distribution function ``l -> Prob(L <= l)`` for ``l = 0..N``."""

    ensemble: EnsembleSpec
    cdf: tuple  # Fractions, index l

    def __post_init__(self):
        c = self.cdf
        if any(b < a for a, b in zip(c, c[1:])):
            raise ValueError("cdf must be nondecreasing")
        if c and c[-1] != 1:
            raise ValueError("cdf must reach 1 at l = N")

    def __call__(self, l: int) -> Fraction:
        if l < 0:
            return Fraction(0)
        if l >= len(self.cdf):
            return Fraction(1)
        return self.cdf[l]

    def pmf(self) -> tuple:
        return tuple(b - a for a, b in zip((Fraction(0),) + self.cdf[:-1], self.cdf))

    def rows(self):
        for l, p in enumerate(self.cdf):
            yield l, p.numerator, p.denominator, float(p)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["l", "numerator", "denominator", "float_value"])
        for l, num, den, val in self.rows():
            wr.writerow([l, num, den, f"{val:.12g}"])
        return buf.getvalue()


def _law_from_counts(spec: EnsembleSpec, counts: dict, total: int) -> ExactLaw:
    N = spec.N
    cdf = []
    acc = 0
    for l in range(N + 1):
        acc += counts.get(l, 0)
        cdf.append(Fraction(acc, total) if total else Fraction(1))
    return ExactLaw(spec, tuple(cdf))


# --------------------------------------------------------------------------
# enumeration

def _matchings(items: list) -> Iterator[list]:
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, items[i])] + m


def enumerate_involutions(N: int, m: int) -> Iterator[tuple]:
    """All involutions of ``1..N`` with exactly ``m`` fixed points (image tuples)."""
    if (N - m) % 2 or m > N or m < 0:
        return
    letters = list(range(1, N + 1))
    for fixed in itertools.combinations(letters, m):
        fs = set(fixed)
        rest = [x for x in letters if x not in fs]
        for match in _matchings(rest):
            img = list(range(N + 1))
            for a, b in match:
                img[a], img[b] = b, a
            yield tuple(img[1:])


def _signed_to_images(sigma: dict, K: int) -> tuple:
    # positions: -K..-1 -> 1..K, 1..K -> K+1..2K (1-based)
    pos = lambda x: x + K + 1 if x < 0 else x + K
    img = [0] * (2 * K)
    for x, y in sigma.items():
        img[pos(x) - 1] = pos(y)
        img[pos(-x) - 1] = pos(-y)
    return tuple(img)


def enumerate_signed_permutations(n: int) -> Iterator[tuple]:
    for tau in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            sigma = {i + 1: s * t for i, (s, t) in enumerate(zip(signs, tau))}
            yield _signed_to_images(sigma, n)


def enumerate_signed_involutions(n: int, m_plus: int, m_minus: int) -> Iterator[tuple]:
    K = 2 * n + m_plus + m_minus
    letters = list(range(1, K + 1))
    for fixed in itertools.combinations(letters, m_plus):
        rem = [x for x in letters if x not in fixed]
        for neg in itertools.combinations(rem, m_minus):
            rest = [x for x in rem if x not in neg]
            for match in _matchings(rest):
                for signs in itertools.product((1, -1), repeat=len(match)):
                    sigma = {x: x for x in fixed}
                    sigma.update({x: -x for x in neg})
                    for (a, b), s in zip(match, signs):
                        sigma[a] = s * b
                        sigma[b] = s * a
                    yield _signed_to_images(sigma, K)


def enumerate_ensemble(spec: EnsembleSpec) -> Iterator[tuple]:
    """Every element of the ensemble, as 1-based image tuples."""
    sym = spec.symmetry
    N = spec.N
    if sym is SymmetryType.PLAIN:
        return itertools.permutations(range(1, N + 1))
    if sym is SymmetryType.INVOL:
        return enumerate_involutions(N, spec.m)
    if sym is SymmetryType.ANTI_INVOL:
        return (tuple(N + 1 - v for v in p) for p in enumerate_involutions(N, spec.m))
    if sym is SymmetryType.SIGNED:
        return enumerate_signed_permutations(spec.n)
    return enumerate_signed_involutions(spec.n, spec.m_plus, spec.m_minus)


def exact_cdf_bruteforce(spec: EnsembleSpec, bound: Optional[int] = None) -> ExactLaw:
    """Exact law of L by listing the whole ensemble."""
    limit = BRUTEFORCE_BOUND[spec.symmetry] if bound is None else bound
    if spec.N > limit:
        raise SizeError(f"N={spec.N} exceeds the enumeration bound {limit} for {spec.symmetry.value}")
    counts: dict = {}
    total = 0
    for p in enumerate_ensemble(spec):
        L = lis_of_sequence(p)
        counts[L] = counts.get(L, 0) + 1
        total += 1
    return _law_from_counts(spec, counts, total)


# --------------------------------------------------------------------------
# RSK sums

@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple:
    return tuple(partitions(n))


def exact_cdf_rsk(spec: EnsembleSpec, bound: int = PARTITION_BOUND) -> ExactLaw:
    """Exact law of L from hook-length sums over Young diagrams.

    plain: weight ``d^2`` and statistic lambda_1; invol: weight ``d`` over
    shapes with ``m`` odd columns, statistic lambda_1; anti-invol: the same
    shapes with statistic the number of rows (the reversal map turns
    increasing into decreasing subsequences).
    """
    sym = spec.symmetry
    N = spec.N
    if N > bound:
        raise SizeError(f"N={N} exceeds the partition bound {bound}")
    counts: dict = {}
    total = 0
    if sym is SymmetryType.PLAIN:
        for lam in _shapes(N):
            d = hook_dim(lam)
            counts[lam.first_row] = counts.get(lam.first_row, 0) + d * d
            total += d * d
    elif sym in (SymmetryType.INVOL, SymmetryType.ANTI_INVOL):
        for lam in _shapes(N):
            if lam.odd_columns() != spec.m:
                continue
            d = hook_dim(lam)
            stat = lam.first_row if sym is SymmetryType.INVOL else lam.length
            counts[stat] = counts.get(stat, 0) + d
            total += d
    else:
        raise UnsupportedError(f"no hook-sum law for {sym.value}; use exact_cdf_bruteforce")
    return _law_from_counts(spec, counts, total)


@lru_cache(maxsize=None)
def lis_count(n: int, l: int) -> int:
    """Number of permutations of ``n`` letters with LIS at most ``l``."""
    if l >= n:
        return math.factorial(n)
    if l <= 0:
        return 1 if n == 0 else 0
    return sum(hook_dim(lam) ** 2 for lam in partitions(n, max_part=l))


# --------------------------------------------------------------------------
# Poissonization

@dataclass(frozen=True)
class PoissonGF:
    """Poissonized distribution ``exp(-t^2) sum_n t^{2n}/n! Prob(L_n <= l)``."""

    l: int
    t: float
    value: float
    truncation_bound: float = 0.0
    method: str = "series"

    def __post_init__(self):
        if not (-1e-12 <= self.value <= 1 + 1e-12):
            raise ValueError(f"Poissonized probability {self.value} outside [0, 1]")


def poisson_tail(t: float, n_max: int) -> float:
    """``exp(-t^2) sum_{n > n_max} t^{2n}/n!``, the mass dropped by truncation."""
    if t == 0:
        return 0.0
    with mp.workdps(30):
        return float(mp.gammainc(n_max + 1, 0, mp.mpf(t) ** 2, regularized=True))


def poisson_gf_series(l: int, t: float, n_max: int = 40) -> float:
    return poisson_gf(l, t, n_max=n_max, method="series").value


def poisson_gf_toeplitz(l: int, t: float) -> float:
    return poisson_gf(l, t, method="toeplitz").value


def toeplitz_matrix(l: int, t: float) -> np.ndarray:
    """``(I_{j-k}(2t))_{0 <= j,k < l}``: Fourier coefficients of ``exp(2t cos theta)``."""
    idx = np.arange(l)
    vals = {k: bessel_i(k, 2 * t) for k in range(-(l - 1), l)}
    return np.array([[vals[j - k] for k in idx] for j in idx])


def poisson_gf(l: int, t: float, n_max: int = 40, method: str = "series") -> PoissonGF:
    """Poissonized LIS law, by truncated series over exact laws or as a Toeplitz determinant."""
    if t < 0:
        raise ParameterError("t must be nonnegative")
    if l < 0:
        raise ParameterError("l must be nonnegative")
    if method == "toeplitz":
        if l < 1:
            raise ParameterError("the determinant needs l >= 1")
        det = float(np.linalg.det(toeplitz_matrix(l, t))) if t > 0 else 1.0
        return PoissonGF(l, t, math.exp(-t * t) * det, 0.0, "toeplitz")
    if method != "series":
        raise ParameterError(f"unknown method {method!r}")
    if n_max > PARTITION_BOUND:
        raise SizeError(f"n_max={n_max} exceeds the partition bound {PARTITION_BOUND}")
    with mp.workdps(30):
        t2 = mp.mpf(t) ** 2
        total = mp.mpf(0)
        for n in range(n_max + 1):
            fn = mp.factorial(n)
            total += t2 ** n / fn * mp.mpf(lis_count(n, l)) / fn
        val = float(mp.exp(-t2) * total)
    return PoissonGF(l, t, val, poisson_tail(t, n_max), "series")


def depoissonize_check(n: int, l: int):
    """(exact Prob(L_n <= l), Poissonized value at mean n, difference).

    The Poisson parameter of the generating function is ``t^2``, so mean
    ``n`` corresponds to ``t = sqrt(n)``.
    """
    if n < 0 or n > PARTITION_BOUND:
        raise SizeError(f"n={n} outside the exact range")
    exact = Fraction(lis_count(n, l), math.factorial(n))
    if l >= 1:
        pois = poisson_gf_toeplitz(l, math.sqrt(n))
    else:
        pois = math.exp(-n)
    return exact, pois, float(exact) - pois


# --------------------------------------------------------------------------
# beta-Plancherel measure and the Regev sum

def _is_integer(beta) -> bool:
    return float(beta).is_integer()


def beta_plancherel_pmf(n: int, beta) -> dict:
    """``lambda -> d_lambda^beta / sum_mu d_mu^beta`` over partitions of ``n``."""
    if beta < 0:
        raise ParameterError("beta must be nonnegative")
    if n > PARTITION_BOUND:
        raise SizeError(f"n={n} exceeds the partition bound {PARTITION_BOUND}")
    shapes = _shapes(n)
    if _is_integer(beta):
        b = int(beta)
        weights = [hook_dim(lam) ** b for lam in shapes]
        tot = sum(weights)
        return {lam: Fraction(wt, tot) for lam, wt in zip(shapes, weights)}
    with mp.workdps(30):
        weights = [mp.mpf(hook_dim(lam)) ** beta for lam in shapes]
        tot = mp.fsum(weights)
        return {lam: float(wt / tot) for lam, wt in zip(shapes, weights)}


def beta_plancherel_sample(n: int, beta, rng: np.random.Generator) -> Partition:
    """One partition from the beta-Plancherel measure by inverse CDF."""
    pmf = beta_plancherel_pmf(n, beta)
    shapes = list(pmf)
    cum = np.cumsum([float(p) for p in pmf.values()])
    k = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return shapes[min(k, len(shapes) - 1)]


def first_row_law(n: int, beta) -> dict:
    """Law of lambda_1 under the beta-Plancherel measure."""
    law: dict = {}
    for lam, p in beta_plancherel_pmf(n, beta).items():
        law[lam.first_row] = law.get(lam.first_row, 0) + p
    return dict(sorted(law.items()))


def regev_lhs(n: int, l: int, beta):
    """``sum over lambda of n with lambda_1 <= l of d_lambda^beta`` (exact for integer beta)."""
    if n < 0 or l < 0:
        raise ParameterError("n and l must be nonnegative")
    shapes = partitions(n, max_part=l) if n > 0 else iter([Partition(())])
    if _is_integer(beta):
        return sum(hook_dim(lam) ** int(beta) for lam in shapes)
    with mp.workdps(30):
        return mp.fsum(mp.mpf(hook_dim(lam)) ** beta for lam in shapes)


def gaussian_ensemble_integral(l: int, beta) -> float:
    """``int_{R^l} exp(-beta l |x|^2 / 2) prod_{j<k} |x_j - x_k|^beta dx`` in closed form."""
    if beta not in (1, 2, 4):
        raise UnsupportedError("closed form only implemented for beta in {1, 2, 4}")
    with mp.workdps(30):
        c = mp.mpf(beta) * l
        val = (2 * mp.pi) ** (mp.mpf(l) / 2) * c ** (-mp.mpf(l) / 2 - mp.mpf(beta) * l * (l - 1) / 4)
        for j in range(1, l + 1):
            val *= mp.gamma(1 + mp.mpf(j) * beta / 2) / mp.gamma(1 + mp.mpf(beta) / 2)
        return val


def regev_rhs(n: int, l: int, beta) -> float:
    """Right side of the Regev asymptotic for the sum of d^beta over shapes with lambda_1 <= l."""
    if l < 2:
        raise ParameterError("the comparison is only meaningful for l >= 2")
    integral = gaussian_ensemble_integral(l, beta)
    with mp.workdps(30):
        n_, l_ = mp.mpf(n), mp.mpf(l)
        base = l_ ** (l_ ** 2 / 2) * l_ ** n_ / (mp.sqrt(2 * mp.pi) ** ((l_ - 1) / 2)
                                                * n_ ** ((l_ - 1) * (l_ + 2) / 4))
        return float(base ** beta * n_ ** ((l_ - 1) / 2) / mp.factorial(l) * integral)


def regev_ratio(n: int, l: int, beta) -> float:
    return float(mp.mpf(regev_lhs(n, l, beta)) / mp.mpf(regev_rhs(n, l, beta)))
