"""Command line interface: grid evaluation of registered operations and check suites.

Examples
--------
``dunklkit eval --target tree.phi --param q=3 --grid lam=0:0.1:tau/2 --grid r=0..6``

``dunklkit eval --target dunkl1d.kernel_E --param k=1 --param lam=2 --param x=1 --format json``

``dunklkit suite "tree.*"``

Exit codes are 0 on success, 1 when a check fails or a tolerance cannot be
met, and 2 for usage errors (unknown target, invalid parameter, bad grid,
empty suite selection).
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import itertools
import json
import math
import operator
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import checks
from .numerics import KernelEval
from .registry import ALIASES, REQUIRED, TARGETS, ParamError, parse_value
from .tree import Surd

__all__ = ["JobSpec", "UsageError", "parse_grid_axis", "run_eval", "run_suite", "main"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """Malformed command line, unknown target or invalid parameter."""


@dataclass
class JobSpec:
    """One batch job.

    Attributes
    ----------
    command : str
        ``eval``, ``transform``, ``heat``, ``wave`` or ``suite``.
    target : str
        Registered target id (or a glob pattern for ``suite``).
    params : dict
        Fixed parameters as raw strings.
    grid : list of (axis, values)
        Grid axes in the order given; rows run over their product.
    fmt : str
        ``csv`` or ``json``.
    tolerances : dict
        Named tolerance overrides.
    jobs : int
        Worker processes.
    """

    command: str
    target: str
    params: Dict[str, str] = field(default_factory=dict)
    grid: List[Tuple[str, List[float]]] = field(default_factory=list)
    fmt: str = "csv"
    tolerances: Dict[str, float] = field(default_factory=dict)
    jobs: int = 1


# ---------------------------------------------------------------------------
# Grid syntax
# ---------------------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv,
           ast.Pow: operator.pow}


def _safe_eval(text: str, names: Dict[str, float]) -> float:
    """Evaluate a tiny arithmetic expression with named constants."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise UsageError(f"unsupported expression {text!r}")

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except SyntaxError as exc:
        raise UsageError(f"cannot parse {text!r}") from exc


def _constants(params: Dict[str, str]) -> Dict[str, float]:
    names = {"pi": math.pi, "e": math.e}
    if "q" in params:
        try:
            names["tau"] = 2.0 * math.pi / math.log(float(params["q"]))
        except (ValueError, ZeroDivisionError):
            pass
    return names


def parse_grid_axis(spec: str, params: Optional[Dict[str, str]] = None) -> Tuple[str, List[float]]:
    """Parse ``axis=start:step:stop`` (endpoints inclusive within 1e-12) or ``axis=a..b``."""
    if "=" not in spec:
        raise UsageError(f"grid axis {spec!r} must look like name=start:step:stop")
    name, _, rng = spec.partition("=")
    name = ALIASES.get(name.strip(), name.strip())
    names = _constants(params or {})
    if ".." in rng and ":" not in rng:
        a, _, b = rng.partition("..")
        start, step, stop = _safe_eval(a, names), 1.0, _safe_eval(b, names)
    else:
        parts = rng.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid axis {spec!r} must look like name=start:step:stop")
        start, step, stop = (_safe_eval(p, names) for p in parts)
    if step == 0 or not all(map(math.isfinite, (start, step, stop))):
        raise UsageError(f"grid axis {name!r} is not finite")
    count = math.floor((stop - start) / step + 1e-12) + 1
    if count < 1:
        raise UsageError(f"grid axis {name!r} is empty")
    if count > 10**6:
        raise UsageError(f"grid axis {name!r} has too many points")
    values = [start + i * step for i in range(count)]
    last = values[-1]
    if abs(last - stop) <= 1e-12 * max(1.0, abs(stop)):
        values[-1] = stop
    return name, values


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _typed_params(target_id: str, raw: Dict[str, Any]) -> Dict[str, Any]:
    target = TARGETS[target_id]
    out = {}
    for key in raw:
        if key not in target.params:
            raise ParamError(key, f"not a parameter of {target_id}; expected {sorted(target.params)}")
    for key, spec in target.params.items():
        if key in raw:
            val = raw[key]
            try:
                if isinstance(val, str):
                    out[key] = parse_value(spec.kind, val)
                elif spec.kind == "int":
                    if val != int(val):
                        raise ValueError(f"{val!r} is not an integer")
                    out[key] = int(val)
                else:
                    out[key] = val
            except (ValueError, TypeError, json.JSONDecodeError) as exc:
                raise ParamError(key, str(exc)) from exc
        elif spec.default is REQUIRED:
            raise ParamError(key, f"required by {target_id}")
        else:
            out[key] = spec.default
    return out


def _normalize(result) -> Tuple[Any, float]:
    if isinstance(result, KernelEval):
        return _normalize(result.value)[0], float(result.err_est)
    if isinstance(result, (bool,)):
        return result, 0.0
    if isinstance(result, (Fraction, Surd)):
        return str(result), 0.0
    if isinstance(result, int):
        return result, 0.0
    if isinstance(result, complex):
        return (result.real if result.imag == 0 else result), 0.0
    if hasattr(result, "item") and getattr(result, "ndim", 1) == 0:
        return _normalize(result.item())
    if isinstance(result, float):
        return result, 0.0
    return result, 0.0


def _evaluate_point(args: Tuple[str, Dict[str, Any]]) -> Tuple[Any, float]:
    target_id, raw = args
    params = _typed_params(target_id, raw)
    return _normalize(TARGETS[target_id].fn(**params))


_CATEGORIES = {"eval": None, "transform": "transform", "heat": "heat", "wave": "wave"}


def run_eval(job: JobSpec) -> List[Dict[str, Any]]:
    """Evaluate a target over the grid product; rows come back in grid order.

    Raises
    ------
    UsageError
        Unknown target, wrong command for the target, or bad grid.
    ParamError
        Invalid, unknown or missing parameter.
    """
    if job.target not in TARGETS:
        raise UsageError(f"unknown target {job.target!r}")
    target = TARGETS[job.target]
    wanted = _CATEGORIES.get(job.command)
    if wanted is not None and target.category != wanted:
        raise UsageError(f"target {job.target!r} is a {target.category} target, not {job.command}")
    params = {ALIASES.get(k, k): v for k, v in job.params.items()}
    axes = job.grid
    for name, _ in axes:
        if name in params:
            raise ParamError(name, "given both as --param and --grid")
        if name not in target.params:
            raise ParamError(name, f"not a parameter of {job.target}; expected {sorted(target.params)}")
    axes = [(name, [int(round(v)) if target.params[name].kind == "int" and abs(v - round(v)) < 1e-9 else v for v in vals])
            for name, vals in axes]
    points = []
    for combo in itertools.product(*[vals for _, vals in axes]):
        raw = dict(params)
        raw.update({name: v for (name, _), v in zip(axes, combo)})
        points.append(raw)
    # validate once before spending time
    _typed_params(job.target, points[0] if points else params)
    tasks = [(job.target, p) for p in points]
    if job.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=job.jobs) as pool:
            results = list(pool.map(_evaluate_point, tasks))
    else:
        results = [_evaluate_point(t) for t in tasks]
    order = [k for k in target.params if k in params or k in dict(axes)]
    rows = []
    for raw, (value, err) in zip(points, results):
        row = {k: raw[k] for k in order}
        row["value"] = value
        row["err_est"] = err
        rows.append(row)
    return rows


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def format_rows(rows: List[Dict[str, Any]], fmt: str) -> str:
    """Render rows as CSV (with header) or JSON; complex values split into ``_re``/``_im``."""
    has_complex = any(isinstance(r["value"], complex) for r in rows)
    out_rows = []
    for r in rows:
        row = {k: v for k, v in r.items() if k not in ("value", "err_est")}
        v = r["value"]
        if has_complex:
            z = complex(v) if isinstance(v, (int, float, complex)) else complex("nan")
            row["value_re"], row["value_im"] = z.real, z.imag
        else:
            row["value"] = v
        row["err_est"] = r["err_est"]
        out_rows.append(row)
    if fmt == "json":
        return json.dumps(out_rows, indent=1, default=str) + "\n"
    buf = io.StringIO()
    header = list(out_rows[0]) if out_rows else ["value", "err_est"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in out_rows:
        writer.writerow([_cell(row[h]) for h in header])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def run_suite(pattern: str, tolerances: Optional[Dict[str, float]] = None, jobs: int = 1) -> Tuple[int, List[dict]]:
    """Run the checks matching ``pattern``; return the exit code and the report.

    Raises
    ------
    UsageError
        If the pattern selects no check or a tolerance name is unknown.
    """
    ids = checks.select_checks(pattern)
    if not ids:
        raise UsageError(f"empty selection: no check matches {pattern!r}")
    for name in tolerances or {}:
        if name not in checks.TOLERANCES:
            raise UsageError(f"unknown tolerance {name!r}; choose from {sorted(checks.TOLERANCES)}")
    results = checks.run_checks(ids, tolerances, jobs)
    report = [r.to_json() for r in results]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    return code, report


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _kv(items: Sequence[str], what: str) -> Dict[str, str]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"{what} {item!r} must look like key=value")
        k, _, v = item.partition("=")
        out[k.strip()] = v.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dunklkit", description="Evaluate kernels and transforms; run check suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("eval", "transform", "heat", "wave"):
        p = sub.add_parser(name, help=f"{name} a registered target on a grid")
        p.add_argument("--target", required=True, help="module.operation id")
        p.add_argument("--param", action="append", default=[], help="key=value (repeatable)")
        p.add_argument("--grid", action="append", default=[], help="axis=start:step:stop or axis=a..b (repeatable)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", action="append", default=[], help="err_est=value: fail if any err_est exceeds it")
        p.add_argument("--jobs", type=int, default=1)
    s = sub.add_parser("suite", help="run acceptance checks")
    s.add_argument("pattern", nargs="?", default="*", help="glob over check ids")
    s.add_argument("--out", default=None)
    s.add_argument("--format", choices=("json",), default="json")
    s.add_argument("--tol", action="append", default=[], help="name=value tolerance override")
    s.add_argument("--jobs", type=int, default=1)
    sub.add_parser("targets", help="list registered targets")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "targets":
            for tid, t in TARGETS.items():
                sys.stdout.write(f"{tid}\t{t.category}\t{', '.join(t.params)}\t{t.doc}\n")
            return EXIT_OK
        tol_raw = _kv(args.tol, "--tol")
        try:
            tols = {k: float(v) for k, v in tol_raw.items()}
        except ValueError as exc:
            raise UsageError(f"tolerance values must be numbers: {exc}") from exc
        if args.command == "suite":
            code, report = run_suite(args.pattern, tols, args.jobs)
            _emit(json.dumps(report, indent=1) + "\n", args.out)
            for r in report:
                if r["status"] != "pass":
                    sys.stderr.write(f"FAILED {r['check_id']} residual={r['residual']}\n")
            return code
        for name in tols:
            if name != "err_est":
                raise UsageError(f"unknown tolerance {name!r}; eval accepts err_est")
        params = _kv(args.param, "--param")
        grid = [parse_grid_axis(g, params) for g in args.grid]
        job = JobSpec(args.command, args.target, params, grid, args.format, tols, args.jobs)
        rows = run_eval(job)
        _emit(format_rows(rows, args.format), args.out)
        if "err_est" in tols:
            bad = [i for i, r in enumerate(rows) if not r["err_est"] <= tols["err_est"]]
            if bad:
                sys.stderr.write(f"tolerance unreachable: err_est > {tols['err_est']} at rows {bad[:10]}\n")
                return EXIT_FAIL
        return EXIT_OK
    except (UsageError, ParamError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, ValueError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
