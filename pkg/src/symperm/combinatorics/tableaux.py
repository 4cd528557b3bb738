"""Partitions, standard Young tableaux, row-insertion RSK and the hook-length count."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from ..errors import InvariantError
from .ensembles import Permutation


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvariantError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def first_row(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def odd_columns(self) -> int:
        """Number of columns of odd length."""
        return sum(c % 2 for c in self.conjugate().parts)

    def odd_rows(self) -> int:
        return sum(p % 2 for p in self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


def first_row(lam: Partition) -> int:
    return lam.first_row


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order, optionally with parts <= max_part."""
    if n < 0:
        return
    top = n if max_part is None else min(n, max_part)

    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    for parts in rec(n, top):
        yield Partition(parts)


@lru_cache(maxsize=None)
def _hook_dim(parts: tuple) -> int:
    n = sum(parts)
    if n == 0:
        return 1
    conj = [sum(1 for p in parts if p > j) for j in range(parts[0])]
    prod = 1
    for i, row in enumerate(parts):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    d, r = divmod(factorial(n), prod)
    assert r == 0
    return d


def hook_dim(lam: Partition | Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``lam`` (exact integer)."""
    parts = lam.parts if isinstance(lam, Partition) else Partition(tuple(lam)).parts
    return _hook_dim(parts)


@dataclass(frozen=True)
class Tableau:
    """Standard Young tableau stored as a tuple of rows."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(r) == 0 for r in rows):
            raise InvariantError("empty row in tableau")
        Partition(tuple(len(r) for r in rows))  # shape check
        entries = sorted(v for r in rows for v in r)
        if entries != list(range(1, len(entries) + 1)):
            raise InvariantError(f"tableau entries are not 1..n: {rows}")
        for r in rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise InvariantError(f"row not increasing: {r}")
        for upper, lower in zip(rows, rows[1:]):
            if any(lower[j] <= upper[j] for j in range(len(lower))):
                raise InvariantError("column not increasing")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def __repr__(self):
        return f"Tableau({[list(r) for r in self.rows]})"


def rsk(p: Permutation | Sequence[int]) -> tuple[Tableau, Tableau]:
    """Row-insertion Robinson-Schensted: returns (insertion P, recording Q)."""
    seq = p.images if isinstance(p, Permutation) else tuple(p)
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for t, x in enumerate(seq, 1):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([t])
                break
            row = P[r]
            k = bisect_left(row, x)
            if k == len(row):
                row.append(x)
                Q[r].append(t)
                break
            row[k], x = x, row[k]
            r += 1
    return Tableau(tuple(map(tuple, P))), Tableau(tuple(map(tuple, Q)))


def rsk_shape(p: Permutation | Sequence[int]) -> Partition:
    return rsk(p)[0].shape


def standard_tableaux(lam: Partition) -> Iterator[Tableau]:
    """Enumerate all standard tableaux of a shape (small shapes only)."""
    parts = lam.parts
    n = lam.size
    rows: list[list[int]] = [[] for _ in parts]

    def rec(k):
        if k > n:
            yield Tableau(tuple(tuple(r) for r in rows))
            return
        for i, cap in enumerate(parts):
            if len(rows[i]) < cap and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                yield from rec(k + 1)
                rows[i].pop()

    yield from rec(1)
