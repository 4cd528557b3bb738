"""Last-passage percolation with geometric weights and its symmetrized variants.

Each model is realized as a square array ``A`` whose up/right paths from the
lower-left to the upper-right corner are exactly the paths of the model:

* plain:        ``A[r, c] = w(r+1, c+1)``
* invol:        the same, with ``A = A.T`` and a special diagonal
* anti-invol:   ``A[r, c] = w(r+1, c-N)``; the symmetry becomes
                ``A[r, c] = A[N-1-c, N-1-r]`` and the special line is ``r+c = N-1``
* signed:       indices ``-N..N`` shifted by ``N``; zero middle row/column and
                ``A[r, c] = A[2N-r, 2N-c]``
* signed-invol: as signed, additionally symmetric under both reflections, with
                special diagonal and anti-diagonal

Weights follow ``P(k) = (1-q) q^k`` on ``k = 0, 1, 2, ...``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .combinatorics import SymmetryType
from .errors import DomainError, ParameterError

ZERO, BULK, DIAG, ANTI = 0, 1, 2, 3


@dataclass(frozen=True)
class LppSpec:
    """Model, side length and weight parameters."""

    model: SymmetryType
    N: int
    q: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "model", SymmetryType.parse(self.model))
        if int(self.N) != self.N or self.N < 1:
            raise ParameterError("N must be a positive integer")
        object.__setattr__(self, "N", int(self.N))
        if not (0 < self.q < 1):
            raise ParameterError("q must lie in (0, 1)")
        if self.alpha < 0 or self.beta < 0:
            raise ParameterError("alpha and beta must be nonnegative")
        rq = math.sqrt(self.q)
        uses_a = self.model in (SymmetryType.INVOL, SymmetryType.SIGNED_INVOL)
        uses_b = self.model in (SymmetryType.ANTI_INVOL, SymmetryType.SIGNED_INVOL)
        if self.alpha and not uses_a:
            raise ParameterError(f"alpha is not a parameter of the {self.model.value} model")
        if self.beta and not uses_b:
            raise ParameterError(f"beta is not a parameter of the {self.model.value} model")
        if self.alpha * rq >= 1 or self.beta * rq >= 1:
            raise ParameterError("need alpha*sqrt(q) < 1 and beta*sqrt(q) < 1")

    @property
    def side(self) -> int:
        return 2 * self.N + 1 if self.model.is_signed else self.N

    def class_params(self) -> dict:
        rq = math.sqrt(self.q)
        return {BULK: self.q, DIAG: self.alpha * rq, ANTI: self.beta * rq}


@lru_cache(maxsize=32)
def _layout(model: SymmetryType, N: int):
    """(canonical flat index per cell, class per cell, representative cells per class)."""
    S = 2 * N + 1 if model.is_signed else N
    r, c = np.meshgrid(np.arange(S), np.arange(S), indexing="ij")
    flat = lambda rr, cc: rr * S + cc
    images = [flat(r, c)]
    klass = np.full((S, S), BULK, dtype=np.int8)
    if model is SymmetryType.INVOL:
        images.append(flat(c, r))
        klass[r == c] = DIAG
    elif model is SymmetryType.ANTI_INVOL:
        images.append(flat(N - 1 - c, N - 1 - r))
        klass[r + c == N - 1] = ANTI
    elif model is SymmetryType.SIGNED:
        images.append(flat(2 * N - r, 2 * N - c))
    elif model is SymmetryType.SIGNED_INVOL:
        images += [flat(c, r), flat(2 * N - r, 2 * N - c), flat(2 * N - c, 2 * N - r)]
        klass[r == c] = DIAG
        klass[r + c == 2 * N] = ANTI
    if model.is_signed:
        klass[(r == N) | (c == N)] = ZERO
    canon = np.minimum.reduce(images).ravel()
    reps = {k: np.unique(canon[klass.ravel() == k]) for k in (BULK, DIAG, ANTI)}
    return canon, klass, reps


@dataclass(frozen=True)
class WeightField:
    """Materialized weights of one model, with array index ``(r, c)``."""

    spec: LppSpec
    values: np.ndarray

    def symmetry_defects(self) -> int:
        """Number of cells whose value differs from its canonical image (0 for a valid field)."""
        canon, klass, _ = _layout(self.spec.model, self.spec.N)
        flat = self.values.ravel()
        bad = int(np.count_nonzero(flat != flat[canon]))
        bad += int(np.count_nonzero(flat[klass.ravel() == ZERO]))
        return bad


def _geometric(rng: np.random.Generator, p: float, size: int) -> np.ndarray:
    if p == 0 or size == 0:
        return np.zeros(size, dtype=np.int64)
    return rng.geometric(1.0 - p, size=size) - 1


def sample_field(spec: LppSpec, rng: np.random.Generator) -> WeightField:
    """Draw every independent cell once and copy it onto its symmetry images."""
    canon, klass, reps = _layout(spec.model, spec.N)
    S = spec.side
    flat = np.zeros(S * S, dtype=np.int64)
    params = spec.class_params()
    for k in (BULK, DIAG, ANTI):
        idx = reps[k]
        flat[idx] = _geometric(rng, params[k], len(idx))
    return WeightField(spec, flat[canon].reshape(S, S))


def last_passage(A: np.ndarray) -> np.ndarray:
    """Maximal up/right path weight from ``A[0,0]`` to ``A[-1,-1]``.

    Works on a stack of arrays ``(..., R, C)``.  Row by row,
    ``G_i[j] = S_i[j] + max_{k<=j} (G_{i-1}[k] - S_i[k-1])`` with ``S_i`` the
    cumulative sum of row ``i``.
    """
    A = np.asarray(A)
    R = A.shape[-2]
    prev = None
    for i in range(R):
        S = np.cumsum(A[..., i, :], axis=-1)
        if prev is None:
            prev = S
            continue
        shifted = np.concatenate([np.zeros_like(S[..., :1]), S[..., :-1]], axis=-1)
        prev = S + np.maximum.accumulate(prev - shifted, axis=-1)
    return prev[..., -1]


def sample_g(N: int, q: float, alpha: float = 0.0, beta: float = 0.0, model="plain",
             rng: np.random.Generator | None = None) -> int:
    """One draw of the point-to-point last-passage value of the model."""
    spec = LppSpec(model, N, q, alpha, beta)
    if rng is None:
        raise ParameterError("an explicit random generator is required")
    return int(last_passage(sample_field(spec, rng).values))


def eta(q: float) -> float:
    return 2 * math.sqrt(q) / (1 - math.sqrt(q))


def rho(q: float) -> float:
    rq = math.sqrt(q)
    return q ** (1 / 6) * (1 + rq) ** (1 / 3) / (1 - rq)


def lpp_scaling(model, N: int, q: float) -> tuple[float, float]:
    """(center, scale) for the fluctuation limit of the model."""
    if not (0 < q < 1):
        raise ParameterError("q must lie in (0, 1)")
    model = SymmetryType.parse(model)
    if model.is_signed:
        return eta(q) * 2 * N, 2 ** (2 / 3) * rho(q) * (2 * N) ** (1 / 3)
    return eta(q) * N, rho(q) * N ** (1 / 3)


def transitional_alpha(w: float, model, N: int, q: float) -> float:
    """Diagonal parameter placing the model on the crossover scale ``w``."""
    model = SymmetryType.parse(model)
    if model is SymmetryType.INVOL:
        alpha = 1 - 2 * w / (rho(q) * N ** (1 / 3))
    elif model is SymmetryType.SIGNED_INVOL:
        alpha = 1 - 2 * w / (rho(q) * (2 * N) ** (1 / 3))
    else:
        raise ParameterError("the crossover exists only for invol and signed-invol")
    if alpha < 0 or alpha * math.sqrt(q) >= 1:
        raise DomainError(f"w={w} gives alpha={alpha} outside the admissible range")
    return alpha
