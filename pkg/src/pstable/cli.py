"""Command-line interface: ``pstable {simulate,classify,fit,gof,lrt,diagnose}``.

Exit codes: 0 success, 2 usage or invalid input, 3 capability gap,
4 non-convergence, 5 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .distributions import Accelerated, Distribution, LogGev, from_dict
from .errors import InvalidParameterError, NonConvergenceError, PStableError
from .normalization import ParentFamily, SizeCoupling, canonical_family, classify_regime, supported_families

EXIT_OK, EXIT_USAGE, EXIT_CAPABILITY, EXIT_NONCONV, EXIT_NUMERIC = 0, 2, 3, 4, 5


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def jsonable(obj):
    """Convert to JSON-safe values: NaN -> null, infinities -> "inf"/"-inf"."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj) -> None:
    _atomic_write(path, json.dumps(jsonable(obj), indent=2) + "\n")


def write_csv(path, header: str, rows) -> None:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    lines = [header] + [",".join(repr(float(v)) for v in r) for r in rows]
    _atomic_write(path, "\n".join(lines) + "\n")


def read_values(path) -> np.ndarray:
    """Read a one-column CSV of reals; one optional header line is skipped.

    Raises
    ------
    InvalidParameterError
        Empty input, or non-numeric rows (listed by line number).
    """
    bad, vals = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            cell = raw.strip()
            if not cell:
                continue
            if "," in cell:
                cell = cell.split(",")[0].strip()
            try:
                v = float(cell)
            except ValueError:
                if not vals and not bad and lineno == 1:
                    continue  # header
                bad.append(lineno)
                continue
            if not math.isfinite(v):
                bad.append(lineno)
                continue
            vals.append(v)
    if bad:
        shown = ", ".join(map(str, bad[:20])) + (" ..." if len(bad) > 20 else "")
        raise InvalidParameterError(f"{path}: non-numeric values on line(s) {shown}")
    if not vals:
        raise InvalidParameterError(f"{path}: no data values")
    return np.array(vals)


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"{path}: invalid JSON ({exc})") from None


def _check_input(path) -> None:
    if not Path(path).is_file():
        raise InvalidParameterError(f"input file not found: {path}")


def _check_output(path) -> None:
    parent = Path(path).resolve().parent
    if not parent.is_dir():
        raise InvalidParameterError(f"output directory does not exist: {parent}")
    if not os.access(parent, os.W_OK):
        raise InvalidParameterError(f"output directory not writable: {parent}")


def _parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InvalidParameterError(f"bad parameter {item!r}; use key=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise InvalidParameterError(f"parameter {k.strip()!r} is not a number: {v!r}") from None
    return out


def _parent(family: str, params: str | None) -> ParentFamily:
    return ParentFamily(family, _parse_params(params))


def _model_from_json(d: dict) -> tuple[Distribution, dict | None]:
    """Accept either a model object or a full fit result."""
    if "model" in d and isinstance(d["model"], dict):
        return from_dict(d["model"]), d
    return from_dict(d), None


def _inline_model(specs: Sequence[str]) -> Distribution:
    comps = []
    for s in specs:
        try:
            mu, sigma, xi = (float(v) for v in s.split(","))
        except ValueError:
            raise InvalidParameterError(f"--loggev expects MU,SIGMA,XI, got {s!r}") from None
        comps.append(LogGev(mu, sigma, xi))
    return Accelerated(comps)


def _emit(obj, out: str | None) -> None:
    if out:
        write_json(out, obj)
    else:
        print(json.dumps(jsonable(obj), indent=2))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    from .simulation import CompetingExperiment, run_experiment

    _check_output(args.out)
    exp = CompetingExperiment(
        _parent(args.family1, args.params1),
        _parent(args.family2, args.params2),
        args.n1,
        args.n2,
        reps=args.reps,
        norm=args.norm,
        normalize_by=args.normalize_by,
        orientation=args.orientation,
        seed=args.seed,
        coupling=SizeCoupling.parse(args.coupling) if args.coupling else None,
    )
    res = run_experiment(exp)
    write_csv(args.out, "value", res.normalized_values[:, None])
    sidecar = args.sidecar or str(Path(args.out).with_suffix(".json"))
    write_json(sidecar, res.to_dict())
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.out:
        _check_output(args.out)
    report = classify_regime(
        _parent(args.family1, args.params1), _parent(args.family2, args.params2), SizeCoupling.parse(args.coupling)
    )
    _emit(report.to_dict(), args.out)
    return EXIT_OK


def _fit_table(res) -> str:
    lines = [f"{'parameter':<10} {'estimate':>14} {'std_error':>14}"]
    for name, v in res.estimates.items():
        lines.append(f"{name:<10} {v:>14.6g} {res.std_errors.get(name, math.nan):>14.6g}")
    lines.append(f"loglik {res.loglik:.6f}  converged={res.converged}")
    return "\n".join(lines)


def cmd_fit(args) -> int:
    from .inference import fit

    _check_input(args.data)
    _check_output(args.out)
    data = read_values(args.data)
    kind = args.model
    k = args.k
    if kind in ("pmax", "pmin", "acc-lmin"):
        k = None
    res = fit(kind, data, k=k, restarts=args.restarts, seed=args.seed, x0=args.x0)
    write_json(args.out, res.to_dict())
    print(_fit_table(res), file=sys.stderr)
    if not res.converged:
        print("fit did not converge; see notes in the output", file=sys.stderr)
        return EXIT_NONCONV
    return EXIT_OK


def _load_model(args) -> tuple[Distribution, dict | None]:
    if args.model_json:
        _check_input(args.model_json)
        return _model_from_json(_read_json(args.model_json))
    return _inline_model(args.loggev), None


def cmd_gof(args) -> int:
    from . import gof

    _check_input(args.data)
    if args.out:
        _check_output(args.out)
    data = read_values(args.data)
    model, fit_json = _load_model(args)
    tests = ["ks", "cvm", "ad"] if args.test == "all" else [args.test]
    results = {}
    for t in tests:
        if args.p_method == "bootstrap":
            refit = None
            if fit_json is not None and fit_json.get("kind"):
                from .inference import fit

                kind, k = fit_json["kind"], fit_json.get("k")
                k = None if kind in ("pmax", "pmin", "acc-lmin") else k
                refit = lambda x: fit(kind, x, k=k, restarts=args.refit_restarts, seed=args.seed).model
            results[t] = gof.bootstrap_pvalue(data, model, t, refit=refit, n_boot=args.n_boot, seed=args.seed).to_dict()
        else:
            results[t] = gof.TESTS[t](data, model).to_dict()
    _emit(results if len(tests) > 1 else results[tests[0]], args.out)
    return EXIT_OK


def cmd_lrt(args) -> int:
    from .gof import lrt
    from .inference import FitResult

    for p in (args.fit_single, args.fit_acc):
        _check_input(p)
    if args.out:
        _check_output(args.out)
    f1 = FitResult.from_dict(_read_json(args.fit_single))
    f2 = FitResult.from_dict(_read_json(args.fit_acc))
    _emit(lrt(f1, f2, df=args.df).to_dict(), args.out)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    from .gof import pp_qq_points

    _check_input(args.data)
    _check_output(args.out)
    data = read_values(args.data)
    model, _ = _load_model(args)
    write_csv(args.out, "empirical_p,model_p,empirical_q,model_q", pp_qq_points(data, model))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _family(text: str) -> str:
    try:
        return canonical_family(text)
    except PStableError:
        raise argparse.ArgumentTypeError(
            f"unknown family {text!r}; supported families: {', '.join(supported_families())}"
        ) from None


def _add_pair(p):
    p.add_argument("--family1", required=True, type=_family, help="parent of block 1")
    p.add_argument("--params1", default="", help="key=value list, e.g. alpha=2")
    p.add_argument("--family2", required=True, type=_family, help="parent of block 2")
    p.add_argument("--params2", default="", help="key=value list")


def _add_model_source(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--model-json", help="model or fit-result JSON")
    g.add_argument("--loggev", action="append", metavar="MU,SIGMA,XI", help="inline log-GEV component (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pstable", description="Power-normalized extremes of competing sources.")
    parser.add_argument("--threads", type=_positive_int, default=1, help="concurrency cap (work runs serially)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="replicate normalized maxima of two competing blocks")
    _add_pair(p)
    p.add_argument("--n1", type=_positive_int, required=True)
    p.add_argument("--n2", type=_positive_int, required=True)
    p.add_argument("--reps", type=_positive_int, default=10_000)
    p.add_argument("--norm", choices=("power", "linear"), default="power")
    p.add_argument("--normalize-by", type=int, choices=(1, 2), default=None)
    p.add_argument("--orientation", choices=("max", "min"), default="max")
    p.add_argument("--coupling", help="size rule for the regime analysis: prop:c, pow:a:c, logpow:c, loglogpow:c")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="CSV of normalized values")
    p.add_argument("--sidecar", help="JSON regime report (default: OUT with .json suffix)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="limit regime of a competing pair")
    _add_pair(p)
    p.add_argument("--coupling", required=True, help="prop:c, pow:a:c, logpow:c or loglogpow:c")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fit", help="maximum-likelihood fit")
    p.add_argument("--model", required=True, choices=("pmax", "acc-pmax", "pmin", "acc-pmin", "left-truncated", "acc-lmin"))
    p.add_argument("--k", type=_positive_int, default=None)
    p.add_argument("--data", required=True)
    p.add_argument("--restarts", type=_positive_int, default=20)
    p.add_argument("--x0", type=float, default=None, help="jump point for left-truncated fits")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("gof", help="goodness-of-fit tests")
    p.add_argument("--test", choices=("ks", "cvm", "ad", "all"), default="all")
    p.add_argument("--p-method", choices=("asymptotic", "bootstrap"), default="asymptotic")
    p.add_argument("--n-boot", type=_positive_int, default=999)
    p.add_argument("--refit-restarts", type=_positive_int, default=3)
    p.add_argument("--data", required=True)
    _add_model_source(p)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gof)

    p = sub.add_parser("lrt", help="likelihood-ratio test of nested fits")
    p.add_argument("--fit-single", required=True)
    p.add_argument("--fit-acc", required=True)
    p.add_argument("--df", type=_positive_int, default=3)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lrt)

    p = sub.add_parser("diagnose", help="P-P and Q-Q plot points")
    p.add_argument("--data", required=True)
    _add_model_source(p)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        return int(args.func(args))
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except PStableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FloatingPointError, OverflowError, ZeroDivisionError) as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
