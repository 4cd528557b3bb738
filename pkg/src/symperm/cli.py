"""Command-line interface: ``python -m symperm <command> [options]``.

Commands: sample, exact, twtable, lpp, walk, compare.  Output is CSV (header
row, LF line endings, 12 significant digits) or JSON.  Exit status: 0 ok,
1 I/O failure, 2 bad parameters, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NumericsError, SympermError

COMMANDS = ("sample", "exact", "twtable", "lpp", "walk", "compare")


@dataclass
class ExperimentConfig:
    """Everything needed to rerun a command byte-for-byte."""

    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    output: str = "-"
    format: str = "csv"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls(**json.loads(text))


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def _render(header: Sequence[str], rows, fmt: str) -> str:
    if fmt == "json":
        recs = []
        for r in rows:
            recs.append({h: (v.item() if isinstance(v, np.generic) else v) for h, v in zip(header, r)})
        return json.dumps(recs, sort_keys=False) + "\n"
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([_fmt(v) for v in r])
    return buf.getvalue()


# --------------------------------------------------------------------------
# commands

def _ensemble_spec(p: dict):
    from .combinatorics import EnsembleSpec
    sym = p["symmetry"]
    if p.get("w") is not None:
        return EnsembleSpec.transitional(sym, p["n"], p["w"], beta=p.get("beta") or 0.0)
    if p.get("alpha") is not None or p.get("beta") is not None:
        return EnsembleSpec.scaled(sym, p["n"], alpha=p.get("alpha") or 0.0, beta=p.get("beta") or 0.0)
    return EnsembleSpec(sym, p["n"], m=p.get("m") or 0, m_plus=p.get("m_plus") or 0,
                        m_minus=p.get("m_minus") or 0)


def _cmd_sample(cfg: ExperimentConfig) -> str:
    from .montecarlo import lis_samples, unconstrained_lis_samples
    from .stats import chi_transform, chi_transform_size
    p = cfg.params
    count = p["samples"]
    if p.get("unconstrained"):
        signed = p["symmetry"] in ("signed-invol", "signed_invol")
        vals = unconstrained_lis_samples(p["n"], count, cfg.seed, signed=signed, workers=p.get("workers"))
        chi = chi_transform_size(vals, p["n"], signed=signed).scaled if p["n"] > 0 else [math.nan] * count
    else:
        spec = _ensemble_spec(p)
        vals = lis_samples(spec, count, cfg.seed, workers=p.get("workers"), method=p.get("method", "permutation"))
        chi = chi_transform(vals, spec).scaled if spec.N > 0 else [math.nan] * count
    return _render(["index", "L", "chi"], zip(range(count), vals, chi), cfg.format)


def _cmd_exact(cfg: ExperimentConfig) -> str:
    from .exact import exact_cdf_bruteforce, exact_cdf_rsk
    from .combinatorics import SymmetryType
    p = cfg.params
    spec = _ensemble_spec(p)
    method = p.get("method", "auto")
    if method == "auto":
        method = "bruteforce" if spec.symmetry.is_signed else "rsk"
    law = exact_cdf_rsk(spec) if method == "rsk" else exact_cdf_bruteforce(spec)
    return _render(["l", "numerator", "denominator", "float_value"], law.rows(), cfg.format)


def _w_label(w: float) -> str:
    return f"{w:g}"


def _cmd_twtable(cfg: ExperimentConfig) -> str:
    from .painleve import default_table, f_box, f_boxtimes, solve_m, tw_grid_values, _box_grid
    p = cfg.params
    pii = default_table()
    xs = pii.grid
    sel = np.ones(len(xs), dtype=bool)
    if p.get("xmin") is not None:
        sel &= xs >= p["xmin"] - 1e-9
    if p.get("xmax") is not None:
        sel &= xs <= p["xmax"] + 1e-9
    idx = np.nonzero(sel)[0][:: max(1, int(p.get("stride") or 1))]
    header = ["x", "F1", "F2", "F4"]
    cols = [xs[idx]] + [tw_grid_values(pii, k)[idx] for k in ("F1", "F2", "F4")]
    for w in p.get("w") or []:
        box, cross = _box_grid(pii, solve_m(w, pii))
        header += [f"Fbox_{_w_label(w)}", f"Fboxtimes_{_w_label(w)}"]
        cols += [box[idx], cross[idx]]
    return _render(header, zip(*cols), cfg.format)


def _cmd_lpp(cfg: ExperimentConfig) -> str:
    from .lpp import LppSpec, lpp_scaling, transitional_alpha
    from .montecarlo import lpp_samples
    p = cfg.params
    alpha = p.get("alpha") or 0.0
    if p.get("w") is not None:
        alpha = transitional_alpha(p["w"], p["model"], p["N"], p["q"])
    spec = LppSpec(p["model"], p["N"], p["q"], alpha, p.get("beta") or 0.0)
    vals = lpp_samples(spec, p["samples"], cfg.seed, workers=p.get("workers"))
    center, scale = lpp_scaling(spec.model, spec.N, spec.q)
    return _render(["index", "G", "scaled"], zip(range(len(vals)), vals, (vals - center) / scale), cfg.format)


def _cmd_walk(cfg: ExperimentConfig) -> str:
    from .combinatorics import sample_uniform_history, simulate_random_turn, walk_to_tableau
    from .montecarlo import stream
    p = cfg.params
    rows = []
    for i in range(p["samples"]):
        rng = stream(cfg.seed, i)
        if p.get("uniform"):
            h = sample_uniform_history(p["n_steps"], rng, p.get("p"))
        else:
            h = simulate_random_turn(p["n_steps"], p.get("p"), rng)
        counts = h.move_counts()
        tab = walk_to_tableau(h) if h.moves else None
        rows.append((i, " ".join(map(str, h.moves)), counts[0] if counts else 0,
                     "/".join(" ".join(map(str, r)) for r in tab.rows) if tab else ""))
    return _render(["index", "moves", "first_particle_moves", "tableau"], rows, cfg.format)


def _read_column(path: str, column: Optional[str], prefer: Sequence[str]) -> tuple[str, np.ndarray]:
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        names = rd.fieldnames or []
        col = column
        if col is None:
            col = next((c for c in prefer if c in names), None)
        if col is None or col not in names:
            raise KeyError(f"column {column!r} not found in {path}; have {names}")
        vals = np.array([float(r[col]) for r in rd])
    return col, vals


def _cmd_compare(cfg: ExperimentConfig) -> str:
    from .stats import ks_distance, summary, summary_json
    p = cfg.params
    try:
        _, sample = _read_column(p["sample_file"], p.get("sample_column"), ("chi", "scaled"))
        _, xs = _read_column(p["table_file"], "x", ("x",))
        _, ref = _read_column(p["table_file"], p["table_column"], ())
    except KeyError as exc:
        raise _ParamFailure(str(exc)) from exc
    order = np.argsort(xs)
    xs, ref = xs[order], ref[order]
    cdf = lambda x: np.interp(x, xs, ref)
    rec = summary(sample, cdf, seed=p.get("sample_seed"))
    return summary_json(rec) + "\n"


class _ParamFailure(SympermError):
    pass


HANDLERS = {
    "sample": _cmd_sample,
    "exact": _cmd_exact,
    "twtable": _cmd_twtable,
    "lpp": _cmd_lpp,
    "walk": _cmd_walk,
    "compare": _cmd_compare,
}


def run(cfg: ExperimentConfig, stdout=None, stderr=None) -> int:
    """Execute a configuration; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if cfg.command not in HANDLERS:
        print(f"error: unknown command {cfg.command!r}", file=stderr)
        return 2
    if cfg.format not in ("csv", "json"):
        print(f"error: unknown format {cfg.format!r}", file=stderr)
        return 2
    try:
        text = HANDLERS[cfg.command](cfg)
    except NumericsError as exc:
        print(f"numerical error: {exc}", file=stderr)
        return 3
    except (SympermError, ValueError) as exc:
        print(f"parameter error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=stderr)
        return 1
    try:
        if cfg.output == "-":
            stdout.write(text)
        else:
            with open(cfg.output, "w", newline="", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=stderr)
        return 1
    return 0


# --------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symperm", description="Symmetrized random permutations and Tracy-Widom laws.")
    parser.add_argument("--config", help="JSON experiment config to run instead of command-line flags")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, seeded=True):
        sp.add_argument("--output", "-o", default="-", help="output path ('-' for stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--dump-config", action="store_true", help="print the JSON config and exit")
        if seeded:
            sp.add_argument("--seed", type=int, default=0)

    def ensemble(sp):
        sp.add_argument("--symmetry", required=True,
                        choices=("plain", "invol", "anti-invol", "signed", "signed-invol"))
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int)
        sp.add_argument("--m-plus", type=int)
        sp.add_argument("--m-minus", type=int)
        sp.add_argument("--alpha", type=float, help="fixed points on the sqrt scale")
        sp.add_argument("--beta", type=float, help="negated points on the sqrt scale")
        sp.add_argument("--w", type=float, help="crossover parameter (invol, signed-invol)")

    sp = sub.add_parser("sample", help="Monte Carlo LIS samples with their scaled values")
    ensemble(sp)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--method", choices=("permutation", "points"), default="permutation")
    sp.add_argument("--unconstrained", action="store_true",
                    help="any number of fixed points (invol / signed-invol of size n)")
    sp.add_argument("--workers", type=int)
    common(sp)

    sp = sub.add_parser("exact", help="exact law of the LIS as rationals")
    ensemble(sp)
    sp.add_argument("--method", choices=("auto", "rsk", "bruteforce"), default="auto")
    common(sp, seeded=False)

    sp = sub.add_parser("twtable", help="tabulate F1, F2, F4 and the crossover laws")
    sp.add_argument("--w", type=float, action="append", help="add Fbox/Fboxtimes columns (repeatable)")
    sp.add_argument("--xmin", type=float)
    sp.add_argument("--xmax", type=float)
    sp.add_argument("--stride", type=int, default=1, help="keep every k-th grid point")
    common(sp, seeded=False)

    sp = sub.add_parser("lpp", help="last-passage percolation samples")
    sp.add_argument("--model", required=True, choices=("plain", "invol", "anti-invol", "signed", "signed-invol"))
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--w", type=float, help="set alpha on the crossover scale")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--workers", type=int)
    common(sp)

    sp = sub.add_parser("walk", help="random-turn walker histories and their tableaux")
    sp.add_argument("--n-steps", type=int, required=True)
    sp.add_argument("--p", type=int, help="particle count (default: unbounded)")
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--uniform", action="store_true", help="uniform over legal histories instead of the dynamics")
    common(sp)

    sp = sub.add_parser("compare", help="KS distance and moments of a sample against a table column")
    sp.add_argument("--sample-file", required=True)
    sp.add_argument("--sample-column")
    sp.add_argument("--table-file", required=True)
    sp.add_argument("--table-column", required=True)
    sp.add_argument("--sample-seed", type=int, help="seed recorded in the summary")
    common(sp, seeded=False)
    return parser


_GLOBAL_KEYS = ("command", "output", "format", "seed", "dump_config", "config")


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    params = {k: v for k, v in vars(ns).items() if k not in _GLOBAL_KEYS}
    return ExperimentConfig(ns.command, params, getattr(ns, "seed", 0) or 0, ns.output, ns.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                cfg = ExperimentConfig.from_json(fh.read())
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return 1
        except (ValueError, TypeError) as exc:
            print(f"parameter error: bad config: {exc}", file=sys.stderr)
            return 2
        return run(cfg)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return 2
    cfg = config_from_args(ns)
    if ns.dump_config:
        print(cfg.to_json())
        return 0
    return run(cfg)
