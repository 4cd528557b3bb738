"""The five symmetrized permutation ensembles and their random point models.

Each ensemble is sampled two ways: as a configuration of random points in the
unit square closed under a reflection/rotation group, and directly as a
uniform element of the corresponding discrete set of permutations.  Both
routes feed :func:`lis_length` / :func:`lis_of_permutation`.
"""
from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvariantError, ParameterError


class SymmetryType(enum.Enum):
    """Symmetry class of a point configuration / permutation ensemble."""

    PLAIN = "plain"                # no constraint
    INVOL = "invol"                # reflection about the diagonal
    ANTI_INVOL = "anti-invol"      # reflection about the anti-diagonal
    SIGNED = "signed"              # rotation about the centre
    SIGNED_INVOL = "signed-invol"  # both reflections

    @classmethod
    def parse(cls, value: "SymmetryType | str") -> "SymmetryType":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if key in (member.value, member.name.lower().replace("_", "-")):
                return member
        raise ParameterError(f"unknown symmetry type {value!r}")

    @property
    def is_signed(self) -> bool:
        return self in (SymmetryType.SIGNED, SymmetryType.SIGNED_INVOL)


def floor_param(scale: float, coeff: float) -> int:
    """``[scale * coeff]``, the largest integer not exceeding the product."""
    if coeff < 0:
        raise ParameterError("coefficient must be nonnegative")
    # guard against 0.9999999 artefacts when the product is an exact integer
    val = scale * coeff
    k = math.floor(val)
    if math.isclose(val, k + 1, rel_tol=0, abs_tol=1e-9):
        k += 1
    return int(k)


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one ensemble; ``N`` is the size of the permutations drawn."""

    symmetry: SymmetryType
    n: int
    m: int = 0
    m_plus: int = 0
    m_minus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "symmetry", SymmetryType.parse(self.symmetry))
        for name in ("n", "m", "m_plus", "m_minus"):
            val = getattr(self, name)
            if int(val) != val or val < 0:
                raise ParameterError(f"{name} must be a nonnegative integer, got {val!r}")
            object.__setattr__(self, name, int(val))
        sym = self.symmetry
        if self.m and sym not in (SymmetryType.INVOL, SymmetryType.ANTI_INVOL):
            raise ParameterError(f"m={self.m} is only meaningful for invol/anti-invol, not {sym.value}")
        if (self.m_plus or self.m_minus) and sym is not SymmetryType.SIGNED_INVOL:
            raise ParameterError(f"m_plus/m_minus are only meaningful for signed-invol, not {sym.value}")

    @property
    def N(self) -> int:
        sym = self.symmetry
        if sym is SymmetryType.PLAIN:
            return self.n
        if sym in (SymmetryType.INVOL, SymmetryType.ANTI_INVOL):
            return 2 * self.n + self.m
        if sym is SymmetryType.SIGNED:
            return 2 * self.n
        return 4 * self.n + 2 * self.m_plus + 2 * self.m_minus

    @classmethod
    def scaled(cls, symmetry, n: int, alpha: float = 0.0, beta: float = 0.0) -> "EnsembleSpec":
        """Spec with the fixed-point counts tied to ``n`` through alpha/beta.

        invol: ``m = [sqrt(2n) alpha]``; anti-invol: ``m = [sqrt(2n) beta]``;
        signed-invol: ``m_+ = [sqrt(n) alpha]``, ``m_- = [sqrt(n) beta]``.
        """
        sym = SymmetryType.parse(symmetry)
        if sym is SymmetryType.INVOL:
            return cls(sym, n, m=floor_param(math.sqrt(2 * n), alpha))
        if sym is SymmetryType.ANTI_INVOL:
            return cls(sym, n, m=floor_param(math.sqrt(2 * n), beta))
        if sym is SymmetryType.SIGNED_INVOL:
            return cls(sym, n, m_plus=floor_param(math.sqrt(n), alpha),
                       m_minus=floor_param(math.sqrt(n), beta))
        return cls(sym, n)

    @classmethod
    def transitional(cls, symmetry, n: int, w: float, beta: float = 0.0) -> "EnsembleSpec":
        """Spec on the critical scaling window around alpha = 1.

        invol: ``m = [sqrt(2n) - 2w (2n)^{1/3}]``; signed-invol:
        ``m_+ = [sqrt(n) - 2w n^{1/3}]`` and ``m_- = [sqrt(n) beta]``.
        """
        sym = SymmetryType.parse(symmetry)
        if sym is SymmetryType.INVOL:
            m = math.floor(math.sqrt(2 * n) - 2 * w * (2 * n) ** (1 / 3))
            if m < 0:
                raise ParameterError(f"w={w} gives a negative fixed-point count at n={n}")
            return cls(sym, n, m=m)
        if sym is SymmetryType.SIGNED_INVOL:
            mp = math.floor(math.sqrt(n) - 2 * w * n ** (1 / 3))
            if mp < 0:
                raise ParameterError(f"w={w} gives a negative fixed-point count at n={n}")
            return cls(sym, n, m_plus=mp, m_minus=floor_param(math.sqrt(n), beta))
        raise ParameterError("transitional scaling exists only for invol and signed-invol")


class Permutation:
    """A bijection of ``{1..N}`` stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(v) for v in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise InvariantError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        self.images = imgs

    @classmethod
    def from_zero_based(cls, arr: Sequence[int]) -> "Permutation":
        return cls(int(v) + 1 for v in arr)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.images})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other`` (apply ``other`` first)."""
        return Permutation(self.images[v - 1] for v in other.images)

    def reversal_conjugate(self) -> "Permutation":
        """``x -> N+1 - pi(x)``: the map sending involutions to the anti-diagonal ensemble."""
        N = len(self.images)
        return Permutation(N + 1 - v for v in self.images)


def fp_count(p: Permutation) -> int:
    """Number of fixed points ``pi(x) = x``."""
    return sum(1 for i, v in enumerate(p.images, 1) if v == i)


def ifp_count(p: Permutation) -> int:
    """Number of negated points ``pi(x) = N+1-x``."""
    N = len(p.images)
    return sum(1 for i, v in enumerate(p.images, 1) if v == N + 1 - i)


def lis_of_sequence(seq: Iterable) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    piles: list = []
    for v in seq:
        i = bisect_left(piles, v)
        if i == len(piles):
            piles.append(v)
        else:
            piles[i] = v
    return len(piles)


def lis_of_permutation(p: Permutation | Sequence[int]) -> int:
    if isinstance(p, Permutation):
        return lis_of_sequence(p.images)
    return lis_of_sequence(p)


def lds_of_permutation(p: Permutation | Sequence[int]) -> int:
    """Length of the longest decreasing subsequence."""
    imgs = p.images if isinstance(p, Permutation) else p
    return lis_of_sequence(-v for v in imgs)


# --------------------------------------------------------------------------
# point configurations

_GROUPS = {
    SymmetryType.PLAIN: (),
    SymmetryType.INVOL: ("diag",),
    SymmetryType.ANTI_INVOL: ("anti",),
    SymmetryType.SIGNED: ("rot",),
    SymmetryType.SIGNED_INVOL: ("diag", "anti", "rot"),
}


def _apply(op: str, pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    if op == "diag":
        return np.column_stack([y, x])
    if op == "anti":
        return np.column_stack([1.0 - y, 1.0 - x])
    return np.column_stack([1.0 - x, 1.0 - y])


@dataclass(frozen=True)
class PointConfig:
    """Finite set of points in the unit square tagged with its symmetry."""

    points: np.ndarray  # shape (P, 2)
    symmetry: SymmetryType

    def __len__(self):
        return len(self.points)

    def images(self, op: str) -> np.ndarray:
        return _apply(op, self.points)

    def is_invariant(self, atol: float = 1e-12) -> bool:
        """True when the point set is mapped onto itself by every generator of its symmetry."""
        def canon(a):
            return a[np.lexsort((a[:, 1], a[:, 0]))]
        ref = canon(self.points)
        for op in _GROUPS[self.symmetry]:
            if not np.allclose(canon(self.images(op)), ref, rtol=0, atol=atol):
                return False
        return True

    def to_permutation(self) -> Permutation:
        """Permutation read off by ranking y-coordinates in x order."""
        _check_distinct(self.points)
        order = np.argsort(self.points[:, 0], kind="stable")
        ranks = np.empty(len(order), dtype=np.int64)
        ranks[np.argsort(self.points[order, 1], kind="stable")] = np.arange(len(order))
        return Permutation.from_zero_based(ranks)


def _check_distinct(points: np.ndarray) -> None:
    if len(points) == 0:
        return
    if len(np.unique(points[:, 0])) != len(points) or len(np.unique(points[:, 1])) != len(points):
        raise InvariantError("point configuration has repeated x or y coordinates")


def _draw_config(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    sym = spec.symmetry
    n = spec.n
    generic = rng.random((n, 2))
    parts = [generic]
    if sym is SymmetryType.INVOL:
        t = rng.random(spec.m)
        parts = [generic, _apply("diag", generic), np.column_stack([t, t])]
    elif sym is SymmetryType.ANTI_INVOL:
        t = rng.random(spec.m)
        parts = [generic, _apply("anti", generic), np.column_stack([t, 1.0 - t])]
    elif sym is SymmetryType.SIGNED:
        parts = [generic, _apply("rot", generic)]
    elif sym is SymmetryType.SIGNED_INVOL:
        tp = rng.random(spec.m_plus)
        tm = rng.random(spec.m_minus)
        on_diag = np.column_stack([tp, tp])
        on_anti = np.column_stack([tm, 1.0 - tm])
        parts = [generic, _apply("diag", generic), _apply("anti", generic), _apply("rot", generic),
                 on_diag, _apply("rot", on_diag), on_anti, _apply("rot", on_anti)]
    return np.concatenate(parts) if parts else np.zeros((0, 2))


def sample_point_config(spec: EnsembleSpec, rng: np.random.Generator) -> PointConfig:
    """Random points in the unit square, closed under the symmetry of ``spec``.

    ``n`` generic points are drawn uniformly and completed by their images;
    ``m`` (resp. ``m_+``, ``m_-``) points are drawn uniformly on the diagonal
    and/or anti-diagonal.  The total number of points is ``spec.N``.
    Exact coordinate collisions (probability zero in exact arithmetic) are
    handled by redrawing.
    """
    while True:
        pts = _draw_config(spec, rng)
        try:
            _check_distinct(pts)
        except InvariantError:
            continue
        return PointConfig(pts, spec.symmetry)


def lis_length(config: PointConfig) -> int:
    """Length of the longest up/right chain of points."""
    pts = config.points
    _check_distinct(pts)
    if len(pts) == 0:
        return 0
    order = np.argsort(pts[:, 0], kind="stable")
    return lis_of_sequence(pts[order, 1].tolist())


# --------------------------------------------------------------------------
# discrete uniform samplers (0-based numpy arrays internally)

def _involution_images(N: int, m: int, rng: np.random.Generator) -> np.ndarray:
    # a uniform random ordering of the letters: the first m are fixed, the rest
    # are paired consecutively; every matching gets probability 1/(2n-1)!!
    images = np.arange(N)
    order = rng.permutation(N)
    rest = order[m:]
    a, b = rest[0::2], rest[1::2]
    images[a] = b
    images[b] = a
    return images


def _signed_positions(K: int, x: np.ndarray) -> np.ndarray:
    # {-K..-1, 1..K} -> {0..2K-1}; negation becomes i -> 2K-1-i
    return np.where(x < 0, x + K, x + K - 1)


def _signed_perm_images(n: int, rng: np.random.Generator) -> np.ndarray:
    tau = rng.permutation(n) + 1
    signs = rng.integers(0, 2, size=n) * 2 - 1
    letters = np.arange(1, n + 1)
    values = signs * tau
    images = np.empty(2 * n, dtype=np.int64)
    images[_signed_positions(n, letters)] = _signed_positions(n, values)
    images[_signed_positions(n, -letters)] = _signed_positions(n, -values)
    return images


def _signed_invol_images(n: int, m_plus: int, m_minus: int, rng: np.random.Generator) -> np.ndarray:
    K = 2 * n + m_plus + m_minus
    order = rng.permutation(K) + 1
    sigma = np.empty(K + 1, dtype=np.int64)  # sigma[letter] for positive letters
    fixed = order[:m_plus]
    negated = order[m_plus:m_plus + m_minus]
    rest = order[m_plus + m_minus:]
    sigma[fixed] = fixed
    sigma[negated] = -negated
    a, b = rest[0::2], rest[1::2]
    s = rng.integers(0, 2, size=len(a)) * 2 - 1
    sigma[a] = s * b
    sigma[b] = s * a
    letters = np.arange(1, K + 1)
    vals = sigma[1:]
    images = np.empty(2 * K, dtype=np.int64)
    images[_signed_positions(K, letters)] = _signed_positions(K, vals)
    images[_signed_positions(K, -letters)] = _signed_positions(K, -vals)
    return images


def sample_images(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform element of the ensemble as a 0-based image array (fast path)."""
    sym = spec.symmetry
    if sym is SymmetryType.PLAIN:
        return rng.permutation(spec.n)
    if sym is SymmetryType.INVOL:
        return _involution_images(spec.N, spec.m, rng)
    if sym is SymmetryType.ANTI_INVOL:
        return spec.N - 1 - _involution_images(spec.N, spec.m, rng)
    if sym is SymmetryType.SIGNED:
        return _signed_perm_images(spec.n, rng)
    return _signed_invol_images(spec.n, spec.m_plus, spec.m_minus, rng)


def sample_involution(n: int, m: int, rng: np.random.Generator) -> Permutation:
    """Uniform involution of ``2n+m`` letters with exactly ``m`` fixed points."""
    if n < 0 or m < 0:
        raise ParameterError("n and m must be nonnegative")
    return Permutation.from_zero_based(_involution_images(2 * n + m, m, rng))


def sample_ensemble_element(spec: EnsembleSpec, rng: np.random.Generator) -> Permutation:
    return Permutation.from_zero_based(sample_images(spec, rng))


def involution_fixed_point_weights(size: int) -> np.ndarray:
    """Probabilities of ``m`` fixed points for a uniform involution of ``size`` letters.

    Entry ``m`` is proportional to ``size! / (m! k! 2^k)`` with ``2k + m = size``.
    """
    ms = np.arange(size % 2, size + 1, 2)
    ks = (size - ms) // 2
    logw = np.array([-math.lgamma(m + 1) - math.lgamma(k + 1) - k * math.log(2) for m, k in zip(ms, ks)])
    w = np.exp(logw - logw.max())
    probs = np.zeros(size + 1)
    probs[ms] = w / w.sum()
    return probs


def sample_unconstrained_involution(size: int, rng: np.random.Generator,
                                    signed: bool = False) -> np.ndarray:
    """Uniform involution of ``size`` letters (0-based images), any number of fixed points.

    With ``signed=True`` a uniform signed involution of ``2*size`` positions is
    returned instead (any number of fixed and negated points).
    """
    if not signed:
        m = int(rng.choice(size + 1, p=involution_fixed_point_weights(size)))
        return _involution_images(size, m, rng)
    # signed involutions of K letters: choose the number j of 2-cycles of |sigma|,
    # then split the K-2j singletons into fixed/negated uniformly (2 choices each);
    # count(j) = K! / ((K-2j)! j! 2^j) * 2^j * 2^(K-2j)
    K = size
    js = np.arange(0, K // 2 + 1)
    logw = np.array([-math.lgamma(K - 2 * j + 1) - math.lgamma(j + 1) + (K - 2 * j) * math.log(2)
                     for j in js])
    w = np.exp(logw - logw.max())
    j = int(rng.choice(js, p=w / w.sum()))
    singles = K - 2 * j
    m_plus = int(rng.binomial(singles, 0.5))
    return _signed_invol_images(j, m_plus, singles - m_plus, rng)
