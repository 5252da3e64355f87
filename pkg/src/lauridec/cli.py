"""Command-line front end.

Verbs
-----
eval-fa / eval-fb
    Evaluate one function value through the decomposition (or, on request,
    the direct series or the recurrence expansion).
verify-lemma1
    Random sweep comparing the three evaluators pairwise.
verify-lemma2 / verify-lemma3
    Check one summation / limit identity.
solve-holmgren
    Solve the mixed boundary-value problem described by a JSON config.
residual
    Finite-difference residual of a catalog solution in the singular
    elliptic equation.
batch
    Run a manifest of commands (one command line per row).

Reports are serialized as JSON (default) or CSV with reals printed to 17
significant digits, which round-trips IEEE doubles exactly.  Exit status:
0 converged/passed, 2 non-convergence or sweep failure, 1 domain or
parameter errors, 64 usage errors (the schema is printed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import shlex
import sys

import numpy as np

from .decomposition import fa_decomposed, fa_recurrent, fb_decomposed, fb_recurrent
from .direct import LauricellaAParams, LauricellaBParams, fa_direct, fb_direct
from .errors import DomainError, LauridecError, ParameterError, UsageError
from .hyper import Truncation
from .identities import (
    DEFAULT_Z_SEQUENCE,
    lemma2_fa,
    lemma2_fb,
    lemma3_fa,
    lemma3_fb,
)
from .pde import (
    BoundaryData,
    PDEConfig,
    Point,
    build_boundary_grid,
    fundamental_solution,
    holmgren_solve,
    pde_residual,
)
from .sampling import random_fa_case, random_fb_case

ENV_REL_TOL = "LAURIDEC_REL_TOL"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NONCONVERGED = 2
EXIT_USAGE = 64


# --------------------------------------------------------------------------
# serialization: 17 significant digits for reals
# --------------------------------------------------------------------------


def _fmt_real(v: float) -> str:
    if math.isnan(v) or math.isinf(v):
        return f'"{v!r}"'
    return format(float(v), ".17g")


def _to_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f'{pad}  {json.dumps(str(k))}: {_to_json(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{pad}  {_to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if bool(obj) else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_real(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _flatten(obj, prefix=""):
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}{i}."))
    else:
        out.append((prefix[:-1], obj))
    return out


def _to_csv(obj) -> str:
    flat = _flatten(obj)
    header = ",".join(k for k, _ in flat)
    cells = []
    for _, v in flat:
        if isinstance(v, (bool, np.bool_)):
            cells.append("true" if bool(v) else "false")
        elif isinstance(v, (int, np.integer)):
            cells.append(str(int(v)))
        elif isinstance(v, (float, np.floating)):
            cells.append(format(float(v), ".17g"))
        elif v is None:
            cells.append("")
        else:
            cells.append(str(v))
    return header + "\n" + ",".join(cells) + "\n"


def serialize(report: dict, output_format: str) -> str:
    if output_format == "json":
        return _to_json(report) + "\n"
    if output_format == "csv":
        return _to_csv(report)
    raise UsageError(f"unknown output format {output_format!r}")


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated reals, got {text!r}") from exc


def build_parser() -> _Parser:
    top = _Parser(prog="lauridec", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="verb")

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write the report to this path")
        p.add_argument("--tol", type=float, default=None,
                       help="truncation relative tolerance "
                            f"(default from ${ENV_REL_TOL} or 1e-12)")
        p.add_argument("--max-degree", type=int, default=None,
                       help="truncation total-degree cap")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval-fa", help="evaluate the per-axis-denominator function")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=_floats, required=True)
    p.add_argument("--c", type=_floats, required=True)
    p.add_argument("--x", type=_floats, required=True)
    p.add_argument("--method", choices=("decomposed", "direct", "recurrent"),
                   default="decomposed")
    common(p)

    p = sub.add_parser("eval-fb", help="evaluate the shared-denominator function")
    p.add_argument("--a", type=_floats, required=True)
    p.add_argument("--b", type=_floats, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--x", type=_floats, required=True)
    p.add_argument("--method", choices=("decomposed", "direct", "recurrent"),
                   default="decomposed")
    common(p)

    p = sub.add_parser("verify-lemma1",
                       help="random sweep: three evaluators agree pairwise")
    p.add_argument("--variant", choices=("fa", "fb"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--draws", type=int, default=50)
    p.add_argument("--threshold", type=float, default=1e-8)
    common(p)

    p = sub.add_parser("verify-lemma2", help="check one summation identity")
    p.add_argument("--variant", choices=("fa", "fb"), required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=_floats, required=True)
    common(p)

    p = sub.add_parser("verify-lemma3", help="check one limit identity")
    p.add_argument("--variant", choices=("fa", "fb"), required=True)
    p.add_argument("--a", type=_floats, required=True,
                   help="fa: one real; fb: n reals")
    p.add_argument("--b", type=_floats, required=True)
    p.add_argument("--c", type=_floats, required=True,
                   help="fa: n reals; fb: one real")
    p.add_argument("--z", type=_floats, default=DEFAULT_Z_SEQUENCE)
    common(p)

    p = sub.add_parser("solve-holmgren",
                       help="solve the mixed boundary-value problem")
    p.add_argument("--config", required=True,
                   help="JSON file: m, n, alpha[], radius, boundary (catalog "
                        "name), grid_nodes, points[][]")
    common(p)

    p = sub.add_parser("residual",
                       help="finite-difference residual of a catalog solution")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_floats, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--solution", required=True,
                   help="constant | coordinate | axis-power-K | kernel")
    p.add_argument("--x", type=_floats, required=True)
    p.add_argument("--xi", type=_floats, default=None,
                   help="pole location (kernel solution only)")
    p.add_argument("--h", type=float, default=1e-3)
    common(p)

    p = sub.add_parser("batch", help="run a manifest of commands")
    p.add_argument("manifest")
    common(p)

    return top


def _truncation(args) -> Truncation:
    tol = args.tol
    if tol is None:
        env = os.environ.get(ENV_REL_TOL)
        tol = float(env) if env else 1e-12
    kwargs = {"rel_tol": tol}
    if args.max_degree is not None:
        kwargs["max_total_degree"] = args.max_degree
    return Truncation(**kwargs)


# --------------------------------------------------------------------------
# the analytic-solution catalog (shared by residual and solve-holmgren)
# --------------------------------------------------------------------------


def catalog_solution(cfg: PDEConfig, name: str, xi=None):
    """Return (u, phi, nu, exact) for a named analytic test case.

    ``u`` and ``phi`` take a Point; ``nu`` is the tuple of weighted normal
    traces on the plane pieces; ``exact`` is None when no closed form of the
    interior values is intended (the kernel case).
    """
    zero = tuple(lambda p: 0.0 for _ in range(cfg.n))
    if name == "constant":
        u = lambda p: 1.0
        return u, u, zero, u
    if name == "coordinate":
        if cfg.m <= cfg.n:
            raise ParameterError("coordinate solution needs a non-singular axis")
        u = lambda p: p.coords[cfg.m - 1]
        return u, u, zero, u
    if name.startswith("axis-power-"):
        try:
            k = int(name[len("axis-power-"):])
        except ValueError as exc:
            raise ParameterError(f"bad catalog name {name!r}") from exc
        if not 1 <= k <= cfg.n:
            raise ParameterError("axis-power index must satisfy 1 <= k <= n")
        expo = 1.0 - 2.0 * cfg.alpha[k - 1]
        u = lambda p: p.coords[k - 1] ** expo
        nu = tuple(
            (lambda p: expo) if j == k - 1 else (lambda p: 0.0)
            for j in range(cfg.n)
        )
        return u, u, nu, u
    if name == "kernel":
        if xi is None:
            raise ParameterError("kernel solution needs --xi")
        pole = tuple(float(v) for v in xi)
        u = lambda p: fundamental_solution(cfg, p, pole)
        return u, u, zero, None
    raise ParameterError(f"unknown catalog solution {name!r}")


# --------------------------------------------------------------------------
# verb implementations: each returns (report dict, exit status)
# --------------------------------------------------------------------------


def _run_eval(args):
    t = _truncation(args)
    if args.verb == "eval-fa":
        if sum(abs(v) for v in args.x) >= 1.0 and any(v > 0.0 for v in args.x):
            raise DomainError(
                "x must satisfy sum |x_k| < 1 (or all x_k <= 0, where the "
                "decomposition continues the function)"
            )
        p = LauricellaAParams(args.a, args.b, args.c)
        fn = {"decomposed": fa_decomposed, "direct": fa_direct,
              "recurrent": fa_recurrent}[args.method]
    else:
        p = LauricellaBParams(args.a, args.b, args.c)
        fn = {"decomposed": fb_decomposed, "direct": fb_direct,
              "recurrent": fb_recurrent}[args.method]
    r = fn(p, args.x, t)
    report = {
        "verb": args.verb,
        "method": args.method,
        "value": r.value,
        "terms_used": r.terms_used,
        "tail_estimate": r.tail_estimate,
        "converged": r.converged,
    }
    return report, EXIT_OK if r.converged else EXIT_NONCONVERGED


def _run_lemma1(args):
    t = _truncation(args)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    all_converged = True
    for _ in range(args.draws):
        if args.variant == "fa":
            p, x = random_fa_case(rng, args.n)
            results = [fa_direct(p, x, t), fa_decomposed(p, x, t),
                       fa_recurrent(p, x, t, depth=1)]
        else:
            p, x = random_fb_case(rng, args.n)
            results = [fb_direct(p, x, t), fb_decomposed(p, x, t),
                       fb_recurrent(p, x, t, depth=1)]
        vals = [r.value for r in results]
        all_converged = all_converged and all(r.converged for r in results)
        scale = max(1.0, max(abs(v) for v in vals))
        for i in range(3):
            for j in range(i + 1, 3):
                worst = max(worst, abs(vals[i] - vals[j]) / scale)
    passed = all_converged and worst <= args.threshold
    report = {
        "verb": "verify-lemma1",
        "variant": args.variant,
        "n": args.n,
        "draws": args.draws,
        "seed": args.seed,
        "max_rel_err": worst,
        "threshold": args.threshold,
        "converged": all_converged,
        "passed": passed,
    }
    return report, EXIT_OK if passed else EXIT_NONCONVERGED


def _identity_report(verb, variant, r):
    return {
        "verb": verb,
        "variant": variant,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "rel_err": r.rel_err,
        "terms_used": r.terms_used,
        "converged": r.converged,
    }


def _run_lemma2(args):
    t = _truncation(args)
    fn = lemma2_fa if args.variant == "fa" else lemma2_fb
    r = fn(args.a, args.b, t)
    return (_identity_report("verify-lemma2", args.variant, r),
            EXIT_OK if r.converged else EXIT_NONCONVERGED)


def _run_lemma3(args):
    t = _truncation(args)
    if args.variant == "fa":
        if len(args.a) != 1:
            raise UsageError("fa limit needs a single --a value")
        p = LauricellaAParams(args.a[0], args.b, args.c)
        r = lemma3_fa(p, args.z, t)
    else:
        if len(args.c) != 1:
            raise UsageError("fb limit needs a single --c value")
        p = LauricellaBParams(args.a, args.b, args.c[0])
        r = lemma3_fb(p, args.z, t)
    return (_identity_report("verify-lemma3", args.variant, r),
            EXIT_OK if r.converged else EXIT_NONCONVERGED)


def _run_holmgren(args):
    t = _truncation(args)
    with open(args.config, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        cfg = PDEConfig(int(doc["m"]), int(doc["n"]),
                        tuple(doc["alpha"]), float(doc.get("radius", 1.0)))
        name = doc["boundary"]
        nodes = int(doc.get("grid_nodes", 512))
        points = doc["points"]
    except KeyError as exc:
        raise UsageError(f"config is missing key {exc}") from exc
    _, phi, nu, exact = catalog_solution(cfg, name, doc.get("xi"))
    grid = build_boundary_grid(cfg, nodes)
    data = BoundaryData(phi=phi, nu=nu)
    rows = []
    worst = 0.0
    for coords in points:
        xi = Point(tuple(coords))
        u = holmgren_solve(cfg, data, grid, xi, t)
        row = {"xi": list(xi.coords), "u": u}
        if exact is not None:
            e = exact(xi)
            rel = abs(u - e) / max(1.0, abs(e))
            row["exact"] = e
            row["rel_err"] = rel
            worst = max(worst, rel)
        rows.append(row)
    report = {
        "verb": "solve-holmgren",
        "boundary": name,
        "grid_nodes_per_piece": nodes,
        "rows": rows,
        "max_rel_err": worst if exact is not None else None,
    }
    return report, EXIT_OK


def _run_residual(args):
    cfg = PDEConfig(args.m, args.n, args.alpha, args.radius)
    u, _, _, _ = catalog_solution(cfg, args.solution, args.xi)
    value = pde_residual(cfg, u, args.x, args.h)
    report = {
        "verb": "residual",
        "solution": args.solution,
        "x": list(args.x),
        "h": args.h,
        "residual": value,
    }
    return report, EXIT_OK


def _run_batch(args):
    rows = []
    counts = {"pass": 0, "fail": 0, "malformed": 0}
    with open(args.manifest, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            argv = shlex.split(line)
        except ValueError as exc:
            counts["malformed"] += 1
            rows.append({"line": lineno, "status": "malformed",
                         "message": str(exc)})
            continue
        try:
            sub_args = build_parser().parse_args(argv)
            if sub_args.verb is None or sub_args.verb == "batch":
                raise UsageError("manifest lines must name a non-batch verb")
            report, status = _dispatch(sub_args)
        except UsageError as exc:
            counts["malformed"] += 1
            rows.append({"line": lineno, "status": "malformed",
                         "message": str(exc)})
            continue
        except LauridecError as exc:
            counts["fail"] += 1
            rows.append({"line": lineno, "status": "error",
                         "error": type(exc).__name__, "message": str(exc)})
            continue
        ok = status == EXIT_OK
        counts["pass" if ok else "fail"] += 1
        rows.append({"line": lineno, "status": "pass" if ok else "fail",
                     "report": report})
    all_ok = counts["fail"] == 0 and counts["malformed"] == 0
    report = {
        "verb": "batch",
        "commands": counts["pass"] + counts["fail"],
        "passed": counts["pass"],
        "failed": counts["fail"],
        "malformed": counts["malformed"],
        "rows": rows,
    }
    return report, EXIT_OK if all_ok else EXIT_FAIL


_DISPATCH = {
    "eval-fa": _run_eval,
    "eval-fb": _run_eval,
    "verify-lemma1": _run_lemma1,
    "verify-lemma2": _run_lemma2,
    "verify-lemma3": _run_lemma3,
    "solve-holmgren": _run_holmgren,
    "residual": _run_residual,
    "batch": _run_batch,
}


def _dispatch(args):
    return _DISPATCH[args.verb](args)


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("a verb is required")
        report, status = _dispatch(args)
        _emit(serialize(report, args.format), args.out)
        return status
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n\n")
        sys.stderr.write(parser.format_help())
        return EXIT_USAGE
    except LauridecError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
