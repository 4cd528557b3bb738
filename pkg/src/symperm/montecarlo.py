"""Reproducible Monte Carlo drivers.

Sample ``i`` of a run with seed ``s`` always uses the stream
``PCG64(SeedSequence(s, spawn_key=(i,)))``, so results depend on
``(seed, index)`` only and not on how indices are spread over workers.
The default worker count comes from ``SYMPERM_WORKERS`` (1 if unset).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

import numpy as np

from .combinatorics import (
    EnsembleSpec,
    lis_length,
    lis_of_sequence,
    sample_images,
    sample_point_config,
    sample_unconstrained_involution,
)
from .errors import ParameterError
from .lpp import LppSpec, last_passage, sample_field

WORKERS_ENV = "SYMPERM_WORKERS"
LPP_BATCH = 16


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one sample index."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, n)


# the per-chunk kernels are module-level so they pickle for worker processes

def _lis_chunk(spec: EnsembleSpec, seed: int, lo: int, hi: int, method: str) -> np.ndarray:
    out = np.empty(hi - lo, dtype=np.int64)
    for i in range(lo, hi):
        rng = stream(seed, i)
        if method == "points":
            out[i - lo] = lis_length(sample_point_config(spec, rng))
        else:
            out[i - lo] = lis_of_sequence(sample_images(spec, rng).tolist())
    return out


def _unconstrained_chunk(size: int, signed: bool, seed: int, lo: int, hi: int) -> np.ndarray:
    out = np.empty(hi - lo, dtype=np.int64)
    for i in range(lo, hi):
        img = sample_unconstrained_involution(size, stream(seed, i), signed=signed)
        out[i - lo] = lis_of_sequence(img.tolist())
    return out


def _lpp_chunk(spec: LppSpec, seed: int, lo: int, hi: int) -> np.ndarray:
    out = np.empty(hi - lo, dtype=np.int64)
    for start in range(lo, hi, LPP_BATCH):
        stop = min(hi, start + LPP_BATCH)
        stack = np.stack([sample_field(spec, stream(seed, i)).values for i in range(start, stop)])
        out[start - lo:stop - lo] = last_passage(stack)
    return out


def _run(kernel: Callable, args: tuple, count: int, seed: int, workers: Optional[int]) -> np.ndarray:
    if count < 0:
        raise ParameterError("sample count must be nonnegative")
    workers = default_workers() if workers is None else max(1, int(workers))
    if workers == 1 or count < 2 * workers:
        return kernel(*args, seed, 0, count)
    bounds = np.linspace(0, count, min(count, 4 * workers) + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futs = [pool.submit(kernel, *args, seed, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
        parts = [f.result() for f in futs]
    return np.concatenate(parts)


def lis_samples(spec: EnsembleSpec, count: int, seed: int, workers: Optional[int] = None,
                method: str = "permutation") -> np.ndarray:
    """LIS of ``count`` independent uniform elements of the ensemble.

    ``method='points'`` samples the random point configuration instead of the
    discrete permutation; both have the same law.
    """
    if method not in ("permutation", "points"):
        raise ParameterError(f"unknown method {method!r}")
    return _run(_lis_kernel, (spec, method), count, seed, workers)


def _lis_kernel(spec, method, seed, lo, hi):
    return _lis_chunk(spec, seed, lo, hi, method)


def unconstrained_lis_samples(size: int, count: int, seed: int, signed: bool = False,
                              workers: Optional[int] = None) -> np.ndarray:
    """LIS of uniform involutions of ``size`` letters (any number of fixed points).

    With ``signed=True``: uniform signed involutions of ``2*size`` positions.
    """
    return _run(_unconstrained_chunk, (size, signed), count, seed, workers)


def lpp_samples(spec: LppSpec, count: int, seed: int, workers: Optional[int] = None) -> np.ndarray:
    return _run(_lpp_chunk, (spec,), count, seed, workers)
