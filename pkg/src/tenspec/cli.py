"""Command-line front end: ``tenspec <command> [options]``.

Every command prints a JSON report (schema ``tenspec/1``) to stdout or ``--out``.
Exit status is 0 on success, 1 on usage errors or malformed input and 2 when a
verification fails.
"""

import argparse
import csv
from dataclasses import asdict, dataclass, field
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import TenspecError
from .poly import parse_rational
from .resultant import CharPoly, char_poly
from .tensor import SymForm, eigencount, tensor_from_json, tensor_to_json

SCHEMA = "tenspec/1"
DEFAULT_SEED = 20240607
_TIMING_KEYS = {"elapsed", "seconds"}


class UsageError(Exception):
    """Bad arguments or malformed input; maps to exit status 1."""


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    tolerances: dict = field(default_factory=dict)
    trials: dict = field(default_factory=dict)
    out: str = None

    def __post_init__(self):
        if self.seed < 0:
            raise UsageError("seed must be a nonnegative integer")
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise UsageError("tolerance %s must be positive" % name)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- input helpers ---

def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s file %s: %s" % (what, path, exc.strerror)) from exc
    except json.JSONDecodeError as exc:
        raise UsageError("%s file %s is not valid JSON: %s" % (what, path, exc)) from exc


def _load_tensor(path):
    try:
        return tensor_from_json(_load_json(path, "tensor"))
    except ValueError as exc:
        raise UsageError("tensor %s: %s" % (path, exc)) from exc


def charpoly_from_json(obj):
    """``{"n", "d", "coeffs"}`` with c_1..c_D as rational strings or [re, im] pairs."""
    if not isinstance(obj, dict):
        raise ValueError("charpoly JSON must be an object")
    for key in ("n", "d", "coeffs"):
        if key not in obj:
            raise ValueError("missing field %r" % key)
    n, d, raw = obj["n"], obj["d"], obj["coeffs"]
    if not isinstance(n, int) or not isinstance(d, int):
        raise ValueError("fields 'n' and 'd' must be integers")
    if not isinstance(raw, list) or len(raw) != eigencount(n, d):
        raise ValueError("field 'coeffs' must list %d coefficients" % eigencount(n, d))
    vals = []
    for i, v in enumerate(raw):
        if isinstance(v, list) and len(v) == 2:
            vals.append(complex(v[0], v[1]))
        elif isinstance(v, (int, str)) and not isinstance(v, bool):
            try:
                vals.append(parse_rational(v))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError("field coeffs[%d]: bad rational %r" % (i, v)) from exc
        else:
            raise ValueError("field coeffs[%d]: unsupported coefficient %r" % (i, v))
    return CharPoly(n, d, vals)


def _complex_json(z):
    z = complex(z)
    return [z.real, z.imag]


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k not in _TIMING_KEYS}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return _complex_json(obj)
    return str(obj)


# --- commands: each returns (result, csv_rows, ok) ---

def cmd_charpoly(args, cfg):
    T = _load_tensor(args.tensor)
    t = _load_tensor(args.t) if args.t else None
    phi = char_poly(T, t)
    rows = [{"k": k, "c_k": c if isinstance(c, str) else "%r%+rj" % tuple(c)}
            for k, c in enumerate(phi.to_json(), start=1)]
    return {"n": phi.n, "d": phi.d, "D": phi.degree, "coeffs": phi.to_json()}, rows, True


def cmd_eigen(args, cfg):
    from .spectra import Tolerances, eigenscheme, eigenvalues

    T = _load_tensor(args.tensor)
    t = _load_tensor(args.t) if args.t else None
    evs = eigenvalues(T, t, cluster_tol=args.cluster_tol)
    result = {"eigenvalues": [{"lambda": _complex_json(z), "multiplicity": m} for z, m in evs]}
    if args.vectors:
        rep = eigenscheme(T, t, Tolerances(residual=args.residual_tol, cluster=args.cluster_tol),
                          rng=np.random.default_rng(cfg.seed))
        result["eigenscheme"] = rep.to_json()
    rows = [{"re": z.real, "im": z.imag, "multiplicity": m} for z, m in evs]
    return result, rows, True


def cmd_orbit(args, cfg):
    from .symmetry import orbit_bound, sym_orbit

    f = _load_tensor(args.tensor)
    if not isinstance(f, SymForm):
        raise UsageError("orbit needs a symmetric tensor (kind 'sym')")
    orbit = sym_orbit(f)
    members = [tensor_to_json(g) for g in orbit]
    return {"size": len(orbit), "bound": orbit_bound(f.n, f.d), "members": members}, None, True


def cmd_hurwitz(args, cfg):
    from .discgeom import hurwitz_sample

    trials = cfg.trials.get("hurwitz", args.trials)
    rep = hurwitz_sample(args.n, args.d, trials, seed=cfg.seed)
    if "histogram" in rep:
        rows = [{"order": k, "count": v} for k, v in rep["histogram"].items()]
    else:
        rows = [{"orbit": lab, "order": k, "count": v}
                for lab, o in rep["orbits"].items() for k, v in o["histogram"].items()]
    return rep, rows, bool(rep["hurwitz_empty"])


def cmd_cubic(args, cfg):
    from .cubics import InconclusiveClassification, classify_cubic, multiplicity_table, orbit_table

    if args.cubic_command == "classify":
        if args.form:
            try:
                f = SymForm.from_text(args.form, 2, 3)
            except ValueError as exc:
                raise UsageError("bad --form: %s" % exc) from exc
        elif args.tensor:
            f = _load_tensor(args.tensor)
            if not isinstance(f, SymForm) or (f.n, f.d) != (2, 3):
                raise UsageError("classify needs a ternary cubic of kind 'sym'")
        else:
            raise UsageError("classify needs --form or --tensor")
        try:
            label = classify_cubic(f, rng=np.random.default_rng(cfg.seed))
        except InconclusiveClassification as exc:
            return {"label": None, "inconclusive": str(exc)}, None, True
        desc = {o.label: o for o in orbit_table()}.get(label)
        out = {"label": label, "multiplicity": desc.multiplicity if desc else 0}
        return out, None, True
    trials = cfg.trials.get("cubic", args.trials)
    rows = multiplicity_table(trials, seed=cfg.seed)
    csv_rows = [{"label": r["label"], "expected": r["expected"], "match": r["match"]} for r in rows]
    return {"trials": trials, "orbits": rows}, csv_rows, all(r["match"] for r in rows)


def cmd_fiber(args, cfg):
    from .fibers import fiber_of_charpoly

    try:
        phi = charpoly_from_json(_load_json(args.charpoly, "charpoly"))
    except ValueError as exc:
        raise UsageError("charpoly %s: %s" % (args.charpoly, exc)) from exc
    if (phi.n, phi.d) != (args.n, args.d):
        raise UsageError("charpoly is for (n,d) = (%d,%d), not (%d,%d)" % (phi.n, phi.d, args.n, args.d))
    res = fiber_of_charpoly(phi, args.n, args.d, seed=cfg.seed, runs=args.runs)
    return res.to_json(), None, True


def cmd_rank(args, cfg):
    from .fibers import domain_dimension, jacobian_rank

    r = jacobian_rank(args.n, args.d, symmetric=args.symmetric, seed=cfg.seed)
    dim = domain_dimension(args.n, args.d, args.symmetric)
    out = {"n": args.n, "d": args.d, "symmetric": args.symmetric, "rank": r,
           "domain_dimension": dim, "D": eigencount(args.n, args.d), "fiber_dimension": dim - r}
    return out, None, True


def cmd_verify(args, cfg):
    from .acceptance import run_suite

    results = run_suite(args.suite, seed=cfg.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = [r.to_json() for r in results]
    if not args.timings:
        report = _strip_timing(report)
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed} for r in results]
    failed = [r.number for r in results if not r.passed]
    return {"suite": args.suite, "criteria": report, "failed": failed}, rows, not failed


COMMANDS = {
    "charpoly": cmd_charpoly,
    "eigen": cmd_eigen,
    "orbit": cmd_orbit,
    "hurwitz": cmd_hurwitz,
    "cubic": cmd_cubic,
    "fiber": cmd_fiber,
    "rank": cmd_rank,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (TENSPEC_SEED overrides)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--csv", help="also write a CSV table when the command has one")
    common.add_argument("--trials", type=int, default=None, help="sample count for sampling commands")

    p = _Parser(prog="tenspec", description="Tensor eigenvalues, characteristic polynomials and discriminant geometry.")
    p.add_argument("--version", action="version", version="tenspec " + __version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of a tensor")
    s.add_argument("--tensor", required=True)
    s.add_argument("--t", help="reference tensor (default: unit tensor)")

    s = sub.add_parser("eigen", parents=[common], help="eigenvalues, optionally eigenvectors")
    s.add_argument("--tensor", required=True)
    s.add_argument("--t")
    s.add_argument("--vectors", action="store_true", help="also compute the eigenscheme")
    s.add_argument("--cluster-tol", type=float, default=1e-8)
    s.add_argument("--residual-tol", type=float, default=1e-8)

    s = sub.add_parser("orbit", parents=[common], help="orbit of a symmetric form under roots of unity and permutations")
    s.add_argument("--tensor", required=True)

    s = sub.add_parser("hurwitz", parents=[common], help="sample line orders against the discriminant")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)

    s = sub.add_parser("cubic", parents=[common], help="plane cubic orbits")
    csub = s.add_subparsers(dest="cubic_command", required=True, parser_class=_Parser)
    c = csub.add_parser("classify", parents=[common])
    c.add_argument("--form", help='cubic as text, e.g. "x0^3+x1^3+x2^3"')
    c.add_argument("--tensor")
    csub.add_parser("multiplicities", parents=[common])

    s = sub.add_parser("fiber", parents=[common], help="all symmetric tensors with a given characteristic polynomial")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--charpoly", required=True)
    s.add_argument("--runs", type=int, default=1, help="independent gamma draws to merge")

    s = sub.add_parser("rank", parents=[common], help="Jacobian rank of the characteristic polynomial map")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--symmetric", dest="symmetric", action="store_true", default=True)
    g.add_argument("--partial", dest="symmetric", action="store_false", help="partially symmetric domain")

    s = sub.add_parser("verify", parents=[common], help="run acceptance criteria")
    s.add_argument("--suite", choices=["binary", "cubic", "core", "fiber", "all"], default="all")
    s.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    return p


def _config(args):
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    env = os.environ.get("TENSPEC_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError as exc:
            raise UsageError("TENSPEC_SEED must be an integer, got %r" % env) from exc
    trials = {}
    if getattr(args, "trials", None) is not None:
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        trials = {"hurwitz": args.trials, "cubic": args.trials}
    return RunConfig(seed=seed, trials=trials, out=args.out)


def _write_csv(path, rows):
    keys = list(rows[0]) if rows else []
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=keys)
        w.writeheader()
        w.writerows(rows)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        sampling = args.command == "hurwitz" or getattr(args, "cubic_command", None) == "multiplicities"
        if sampling and args.trials is None:
            args.trials = 200
        cfg = _config(args)
        result, rows, ok = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print("tenspec: error: %s" % exc, file=sys.stderr)
        return 1
    except (TenspecError, ValueError, TypeError) as exc:
        print("tenspec: error: %s" % exc, file=sys.stderr)
        return 1
    report = {
        "schema": SCHEMA,
        "command": args.command + (" " + args.cubic_command if args.command == "cubic" else ""),
        "config": asdict(cfg),
        "ok": ok,
        "result": _jsonable(result),
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv and rows is not None:
        _write_csv(args.csv, rows)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
