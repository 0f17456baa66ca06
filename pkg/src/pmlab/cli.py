"""Command-line front end: ``pmlab gen|det|verify|spectrum|interlace|solve``.

Reports go to stdout (or ``--out``) as JSON by default.  Exact numbers are
decimal strings; floats only appear in spectral output next to a precision
field.  Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import GammaSet, as_composition, b_key, clex_key, compositions, parse_gamma
from .errors import EnumerationBudgetError, PmlabError
from .matrices import build_M, build_N, scale_det_relation
from .verify import (
    FAIL,
    PASS,
    WARNING,
    enumerate_principal_minors,
    formula_check,
    lemma_max_check,
    min_det_report,
    rational_str,
    small_gamma_min_check,
    solve_constrained,
    theorem4_check,
    verify_pd,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CHECKS = ("pd", "minors", "mindet", "formula", "lemma", "pairs", "theorem4")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="enumeration processes (default: $PMLAB_WORKERS or CPU count)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmlab", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"pmlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="list I_d with zero classes and both orderings")
    p.add_argument("--degree", "-d", type=int, required=True)
    _common(p)

    p = sub.add_parser("det", help="exact det M_gamma and/or det N_gamma")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--gamma", required=True, help='e.g. "3,1,0;2,2,0;1,3,0" or a JSON array')
    p.add_argument("--which", choices=("M", "N", "both"), default="both")
    p.add_argument("--dump", action="store_true", help="include the integer matrices")
    _common(p)

    p = sub.add_parser("verify", help="run a theorem or conjecture check")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--degree", "-d", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--scope", choices=("full", "interior"), default="interior")
    p.add_argument("--budget", choices=("default", "large"), default="default")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="treat warnings as failures")
    _common(p)

    p = sub.add_parser("spectrum", help="clustered eigenvalues of M_{I_d} or M+M^T")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--sym", action="store_true", help="use M + M^T")
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--dps", type=int, default=32)
    p.add_argument("--digits", type=int, default=16)
    _common(p)

    p = sub.add_parser("interlace", help="eigenvalue structure and interlacing up to a degree")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--dps", type=int, default=32)
    _common(p)

    p = sub.add_parser("solve", help="constrained interpolation on a subset of coefficients")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--gamma", help="free coefficients (default: interior compositions)")
    p.add_argument("--boundary", help="JSON file or inline JSON map of fixed coefficients (default: zeros)")
    p.add_argument("--targets", required=True, help="JSON file or inline JSON map of target values")
    _common(p)
    return parser


# --------------------------------------------------------------------------
# output


def _config(args) -> dict:
    skip = {"out", "workers", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _envelope(args, body) -> dict:
    return {"version": __version__, "config": _config(args), **body}


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    d = args.degree
    comps = compositions(d)
    clex_rank = {c: n for n, c in enumerate(sorted(comps, key=clex_key, reverse=True))}
    ordered = sorted(comps, key=b_key, reverse=True)
    rows = [
        {
            "composition": list(c),
            "zero_class": c.zero_count,
            "edge": c.edge(),
            "b_rank": n,
            "clex_rank": clex_rank[c],
        }
        for n, c in enumerate(ordered)
    ]
    if args.format == "json":
        _emit(args, _dumps(_envelope(args, {"degree": d, "count": len(rows), "compositions": rows})))
    elif args.format == "csv":
        _emit(args, _csv(
            ["i", "j", "k", "zero_class", "edge", "b_rank", "clex_rank"],
            [[*r["composition"], r["zero_class"], r["edge"] or "", r["b_rank"], r["clex_rank"]] for r in rows],
        ))
    else:
        lines = [f"I_{d}: {len(rows)} compositions, block order"]
        for r in rows:
            c = ",".join(map(str, r["composition"]))
            lines.append(f"{r['b_rank']:4d}  ({c})  z={r['zero_class']}  {r['edge'] or '-':2s}  clex={r['clex_rank']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_det(args) -> int:
    gamma = GammaSet(args.degree, parse_gamma(args.gamma))
    out = {"degree": args.degree, "gamma": gamma.to_json()}
    det_n = det_m = None
    if args.which in ("N", "both"):
        N = build_N(gamma)
        det_n = N.det_numerator()
        out["det_N"] = str(det_n)
        if args.dump:
            out["N"] = N.to_dict()
    if args.which in ("M", "both"):
        M = build_M(gamma)
        det_m = M.det()
        out["det_M"] = rational_str(det_m)
        out["det_M_scaled"] = {"numerator": str(M.det_numerator()), "degree": args.degree,
                               "exponent": args.degree * len(gamma)}
        if args.dump:
            out["M"] = M.to_dict()
    code = EXIT_PASS
    if args.which == "both":
        ok = scale_det_relation(gamma, det_n) == det_m
        out["relation"] = "OK" if ok else "MISMATCH"
        code = EXIT_PASS if ok else EXIT_FAIL
    if args.format == "json":
        _emit(args, _dumps(_envelope(args, out)))
    elif args.format == "csv":
        keys = [k for k in ("det_N", "det_M", "relation") if k in out]
        _emit(args, _csv(["gamma", *keys], [[gamma.to_text(), *(out[k] for k in keys)]]))
    else:
        lines = [f"gamma = {gamma.to_text()}"]
        for k, label in (("det_N", "N"), ("det_M", "M"), ("relation", "relation")):
            if k in out:
                lines.append(f"{label}: {out[k]}")
        _emit(args, "\n".join(lines) + "\n")
    return code


def _degrees(args, default_max=None):
    if args.degree is not None:
        return [args.degree]
    if args.max_degree is not None:
        return list(range(1, args.max_degree + 1))
    if default_max is not None:
        return list(range(1, default_max + 1))
    raise PmlabError("give --degree or --max-degree")


def cmd_verify(args) -> int:
    c = args.check
    if c == "formula":
        top = args.max_degree if args.max_degree is not None else (args.degree or 6)
        reports = [formula_check(top)]
    else:
        run = {
            "pd": lambda d: verify_pd(d),
            "minors": lambda d: enumerate_principal_minors(d, args.scope, args.workers, args.budget),
            "mindet": lambda d: min_det_report(d, args.workers, args.budget),
            "lemma": lemma_max_check,
            "pairs": small_gamma_min_check,
            "theorem4": lambda d: theorem4_check(d, args.samples, args.seed),
        }[c]
        reports = [run(d) for d in _degrees(args)]
    statuses = [r.status for r in reports]
    if FAIL in statuses:
        overall = FAIL
    elif WARNING in statuses:
        overall = WARNING
    else:
        overall = PASS
    if args.format == "json":
        _emit(args, _dumps(_envelope(args, {"status": overall, "reports": [r.to_dict() for r in reports]})))
    elif args.format == "csv":
        _emit(args, _csv(
            ["check", "degree", "status", "witnesses", "elapsed_ms"],
            [[r.check, r.degree, r.status, len(r.witnesses), round(r.elapsed_ms, 3)] for r in reports],
        ))
    else:
        lines = [f"{r.check} d={r.degree}: {r.status} ({r.elapsed_ms:.0f} ms)"
                 + (f" - {r.notes}" if r.notes else "") for r in reports]
        lines.append(f"overall: {overall}")
        _emit(args, "\n".join(lines) + "\n")
    if overall == FAIL or (overall == WARNING and args.strict):
        return EXIT_FAIL
    return EXIT_PASS


def cmd_spectrum(args) -> int:
    from .spectral import spectrum

    rep = spectrum(args.degree, args.sym, args.threshold, args.dps)
    if args.format == "json":
        _emit(args, _dumps(_envelope(args, rep.to_dict(args.digits))))
    elif args.format == "csv":
        _emit(args, _csv(["d", "eigenvalue", "multiplicity"], rep.csv_rows(args.digits)))
    else:
        import mpmath

        lines = [f"spectrum of {'M+M^T' if args.sym else 'M'} for d={args.degree} (dps={rep.dps})"]
        lines += [f"{mpmath.nstr(v, 4):>12s}  x{m}" for v, m in rep.eigenvalues]
        lines += [f"warning: {w}" for w in rep.warnings]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_interlace(args) -> int:
    from .spectral import check_interlacing

    rep = check_interlacing(args.max_degree, args.threshold, args.dps)
    if args.format == "csv":
        _emit(args, _csv(rep.details["columns"], rep.details["plot"]))
    elif args.format == "json":
        _emit(args, _dumps(_envelope(args, {"status": rep.status, "reports": [rep.to_dict()]})))
    else:
        lines = [f"d={r['degree']}: {r['status']} multiplicities={r['multiplicities']}"
                 for r in rep.details["per_degree"]]
        lines.append(f"overall: {rep.status}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_FAIL if rep.status == FAIL else EXIT_PASS


def _load_map(spec) -> dict:
    if spec is None:
        return {}
    text = spec if spec.lstrip().startswith("{") else open(spec, encoding="utf-8").read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PmlabError(f"invalid JSON map: {exc}") from None
    out = {}
    for key, value in raw.items():
        try:
            out[as_composition(key)] = Fraction(str(value))
        except ValueError:
            raise PmlabError(f"invalid rational {value!r} for {key}") from None
    return out


def cmd_solve(args) -> int:
    d = args.degree
    gamma = GammaSet(d, parse_gamma(args.gamma)) if args.gamma else GammaSet.zero_class(d, 0)
    boundary = _load_map(args.boundary)
    if args.boundary is None:
        boundary = {c: Fraction(0) for c in compositions(d) if c not in gamma}
    targets = _load_map(args.targets)
    coeffs = solve_constrained(d, gamma, boundary, targets)
    result = {str(c): rational_str(v) for c, v in coeffs.items()}
    if args.format == "json":
        _emit(args, _dumps(_envelope(args, {"degree": d, "coefficients": result})))
    elif args.format == "csv":
        _emit(args, _csv(["i", "j", "k", "coefficient"], [[*c, rational_str(v)] for c, v in coeffs.items()]))
    else:
        _emit(args, "".join(f"c[{k}] = {v}\n" for k, v in result.items()))
    return EXIT_PASS


COMMANDS = {
    "gen": cmd_gen,
    "det": cmd_det,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "interlace": cmd_interlace,
    "solve": cmd_solve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers is None and os.environ.get("PMLAB_WORKERS"):
        args.workers = int(os.environ["PMLAB_WORKERS"])
    try:
        return COMMANDS[args.command](args)
    except EnumerationBudgetError as exc:
        print(f"pmlab: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PmlabError, OSError) as exc:
        print(f"pmlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
