"""Scalings, empirical distribution distances and moments for Monte Carlo output."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .combinatorics import EnsembleSpec
from .errors import DomainError, ParameterError
from .painleve import TWFamily


@dataclass(frozen=True)
class ScaledSample:
    """Raw values with the affine map ``(raw - center) / scale``."""

    raw: np.ndarray
    center: float
    scale: float

    def __post_init__(self):
        object.__setattr__(self, "raw", np.asarray(self.raw, dtype=float).ravel())
        if not (self.scale > 0) or not math.isfinite(self.scale):
            raise ParameterError(f"scale must be positive, got {self.scale}")

    @property
    def scaled(self) -> np.ndarray:
        return (self.raw - self.center) / self.scale

    def __len__(self):
        return len(self.raw)


def chi_transform(values, spec: EnsembleSpec) -> ScaledSample:
    """``(L - 2 sqrt N) / N^{1/6}``, with an extra ``2^{2/3}`` in the scale for signed ensembles."""
    N = spec.N
    if N <= 0:
        raise ParameterError("the scaling needs N >= 1")
    scale = N ** (1 / 6) * (2 ** (2 / 3) if spec.symmetry.is_signed else 1.0)
    return ScaledSample(values, 2 * math.sqrt(N), scale)


def chi_transform_size(values, size: int, signed: bool = False) -> ScaledSample:
    """Same scaling for an explicit size parameter (used by the unconstrained ensembles)."""
    if size <= 0:
        raise ParameterError("the scaling needs a positive size")
    scale = size ** (1 / 6) * (2 ** (2 / 3) if signed else 1.0)
    return ScaledSample(values, 2 * math.sqrt(size), scale)


def gaussian_transform(values, spec: EnsembleSpec, alpha: float) -> ScaledSample:
    """Normal-regime scaling ``(L - (a + 1/a) sqrt N) / (sqrt(1/a - 1/a^3) N^{1/4})`` for ``a > 1``."""
    if not alpha > 1:
        raise DomainError("the Gaussian regime needs alpha > 1")
    var = 1 / alpha - 1 / alpha ** 3
    if var < 1e-12:
        raise DomainError("alpha too close to 1: scale degenerates")
    N = spec.N
    return ScaledSample(values, (alpha + 1 / alpha) * math.sqrt(N), math.sqrt(var) * N ** 0.25)


def _as_callable(cdf) -> Callable:
    if isinstance(cdf, TWFamily):
        return lambda x: cdf(x, clamp=True)
    return cdf


def ks_distance(sample, cdf) -> float:
    """Sup distance between the empirical CDF of ``sample`` and ``cdf``.

    The empirical CDF is right-continuous with a jump of 1/k per point.  Both
    one-sided limits at every jump are compared, plus the midpoints between
    consecutive distinct values.
    """
    x = sample.scaled if isinstance(sample, ScaledSample) else np.asarray(sample, dtype=float).ravel()
    if len(x) == 0:
        raise ParameterError("empty sample")
    F = _as_callable(cdf)
    vals, counts = np.unique(x, return_counts=True)
    k = len(x)
    upper = np.cumsum(counts) / k
    lower = upper - counts / k
    at = np.asarray(F(vals), dtype=float)
    before = np.asarray(F(np.nextafter(vals, -np.inf)), dtype=float)
    d = max(np.max(np.abs(at - upper)), np.max(np.abs(before - lower)))
    if len(vals) > 1:
        mids = (vals[1:] + vals[:-1]) / 2
        d = max(d, np.max(np.abs(np.asarray(F(mids), dtype=float) - upper[:-1])))
    return float(d)


def sample_moments(sample) -> tuple[float, float, float]:
    """Mean, unbiased variance and moment skewness."""
    x = sample.scaled if isinstance(sample, ScaledSample) else np.asarray(sample, dtype=float).ravel()
    if len(x) < 2:
        raise ParameterError("need at least two values")
    mean = float(x.mean())
    var = float(x.var(ddof=1))
    m2 = float(np.mean((x - mean) ** 2))
    skew = float(np.mean((x - mean) ** 3) / m2 ** 1.5) if m2 > 0 else 0.0
    return mean, var, skew


def summary(sample, cdf=None, seed=None) -> dict:
    """The JSON summary record: size, moments, KS distance and seed."""
    mean, var, skew = sample_moments(sample)
    out = {"n": int(len(sample)), "mean": mean, "var": var, "skew": skew,
           "ks": None if cdf is None else ks_distance(sample, cdf), "seed": seed}
    return out


def summary_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True)
