"""Random-turn vicious walkers on the integer line and their tableau encoding.

Particles start at sites ``1..p`` (``p=None`` means infinitely many).  A
particle is left-movable when the site to its left is empty; after ``k`` has
moved ``m_k`` times this is the condition ``m_k < m_{k-1}`` (always true for
the leftmost particle), i.e. exactly the condition for adding a box to row
``k`` of a Young diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from ..errors import InvariantError, ParameterError
from .ensembles import sample_unconstrained_involution
from .tableaux import Tableau, rsk


def _movable(counts: list[int], p: Optional[int]) -> list[int]:
    # 1-based labels of the particles whose left neighbour site is vacant
    out = [1]
    for k in range(2, len(counts) + 2):
        if p is not None and k > p:
            break
        prev = counts[k - 2]
        cur = counts[k - 1] if k - 1 < len(counts) else 0
        if cur < prev:
            out.append(k)
        if cur == 0:
            break  # particles further right have not moved and are blocked
    return out


@dataclass(frozen=True)
class WalkHistory:
    """Sequence of moved particle labels (1-based) and the particle count."""

    moves: tuple
    p: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(int(k) for k in self.moves))
        if self.p is not None and self.p < 1:
            raise ParameterError("particle count must be positive or None")
        counts: list[int] = []
        for t, k in enumerate(self.moves, 1):
            if k not in _movable(counts, self.p):
                raise InvariantError(f"illegal move of particle {k} at time {t}")
            if k > len(counts):
                counts.append(0)
            counts[k - 1] += 1

    @property
    def n_steps(self) -> int:
        return len(self.moves)

    def move_counts(self) -> list[int]:
        counts: list[int] = []
        for k in self.moves:
            while len(counts) < k:
                counts.append(0)
            counts[k - 1] += 1
        return counts

    def positions(self) -> list[int]:
        """Final sites of the particles that have moved."""
        return [k + 1 - c for k, c in enumerate(self.move_counts())]


def simulate_random_turn(n_steps: int, p: Optional[int], rng: np.random.Generator) -> WalkHistory:
    """Run the dynamics: each step moves a uniformly chosen left-movable particle."""
    if n_steps < 0:
        raise ParameterError("n_steps must be nonnegative")
    counts: list[int] = []
    moves = []
    for _ in range(n_steps):
        options = _movable(counts, p)
        k = options[int(rng.integers(len(options)))]
        if k > len(counts):
            counts.append(0)
        counts[k - 1] += 1
        moves.append(k)
    return WalkHistory(tuple(moves), p)


def _completion_table(counts: tuple, k: int, p: int) -> dict:
    """Map ``(move counts, steps left) -> number of legal continuations`` for every state reachable from ``counts``."""
    memo: dict = {}
    stack = [(counts, k)]
    while stack:
        c, r = stack[-1]
        if (c, r) in memo:
            stack.pop()
            continue
        if r == 0:
            memo[(c, r)] = 1
            stack.pop()
            continue
        kids = [(_bump(c, i), r - 1) for i in _movable(list(c), p)]
        todo = [kid for kid in kids if kid not in memo]
        if todo:
            stack.extend(todo)
            continue
        memo[(c, r)] = sum(memo[kid] for kid in kids)
        stack.pop()
    return memo


def _bump(c: tuple, i: int) -> tuple:
    c = list(c)
    while len(c) < i:
        c.append(0)
    c[i - 1] += 1
    return tuple(c)


def sample_uniform_history(n_steps: int, rng: np.random.Generator, p: Optional[int] = None) -> WalkHistory:
    """Uniformly random legal history of the walker with at most ``p`` particles.

    Legal histories are in bijection with standard tableaux, which RSK puts in
    bijection with involutions; so for unbounded ``p`` a uniform involution
    mapped through its insertion tableau gives a uniform history.  For bounded
    ``p`` each step is drawn with probability proportional to its number of
    legal completions.  Unlike the step-by-step dynamics, this measure pushes
    the first particle's move count forward to the first-row law of the
    beta=1 Plancherel measure (restricted to at most ``p`` rows).
    """
    if n_steps < 0:
        raise ParameterError("n_steps must be nonnegative")
    if p is not None and p < 1:
        raise ParameterError("p must be a positive integer")
    if n_steps == 0:
        return WalkHistory((), p)
    if p is None or p >= n_steps:
        P, _ = rsk([int(v) + 1 for v in sample_unconstrained_involution(n_steps, rng)])
        return tableau_to_walk(P, p)
    memo = _completion_table((), n_steps, p)
    counts: tuple = ()
    moves = []
    for r in range(n_steps, 0, -1):
        opts = _movable(list(counts), p)
        weights = np.array([memo[(_bump(counts, i), r - 1)] for i in opts], dtype=float)
        i = opts[int(rng.choice(len(opts), p=weights / weights.sum()))]
        moves.append(i)
        counts = _bump(counts, i)
    return WalkHistory(tuple(moves), p)


def walk_to_tableau(h: WalkHistory) -> Tableau:
    """Row ``k`` lists the times at which particle ``k`` moved."""
    rows: list[list[int]] = []
    for t, k in enumerate(h.moves, 1):
        while len(rows) < k:
            rows.append([])
        rows[k - 1].append(t)
    return Tableau(tuple(tuple(r) for r in rows))


def tableau_to_walk(t: Tableau, p: Optional[int] = None) -> WalkHistory:
    """Inverse of :func:`walk_to_tableau`; ``p`` must allow the number of rows."""
    if not isinstance(t, Tableau):
        t = Tableau(tuple(tuple(r) for r in t))
    if p is not None and len(t.rows) > p:
        raise ParameterError(f"tableau has {len(t.rows)} rows but only {p} particles")
    who = {}
    for k, row in enumerate(t.rows, 1):
        for time in row:
            who[time] = k
    return WalkHistory(tuple(who[s] for s in range(1, t.size + 1)), p)


def enumerate_histories(n_steps: int, p: Optional[int] = None) -> Iterator[tuple[WalkHistory, Fraction]]:
    """All legal histories with the probability the dynamics assigns to each."""
    def rec(counts, moves, prob):
        if len(moves) == n_steps:
            yield WalkHistory(tuple(moves), p), prob
            return
        options = _movable(counts, p)
        share = prob / len(options)
        for k in options:
            c = list(counts)
            if k > len(c):
                c.append(0)
            c[k - 1] += 1
            yield from rec(c, moves + [k], share)

    yield from rec([], [], Fraction(1))


def first_particle_law(n_steps: int, p: Optional[int] = None) -> dict[int, Fraction]:
    """Exact law of the leftmost particle's move count under the dynamics."""
    law: dict[int, Fraction] = {}
    for h, pr in enumerate_histories(n_steps, p):
        c = h.move_counts()
        k = c[0] if c else 0
        law[k] = law.get(k, Fraction(0)) + pr
    return dict(sorted(law.items()))
