"""``serival-lab``: command-line front end of the experiments.

Precedence of settings: built-in defaults < ``--config`` file < flags.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from typing import List, Optional

from ..algebra import AlgebraError, HomogForm, SeriesPoly, dehomogenize, homogenize, root_split
from ..parsing import ParseError, parse_completed, parse_poly
from ..series import SeriesError
from .params import ConfigError, ScanParams, load_config, split_seeds
from .report import EXIT_CODES, ScanReport
from . import scans

log = logging.getLogger("serival.lab")

COMMANDS = ("dioph", "loja", "artin", "greenberg", "izumi", "roots", "selftest")

_HELP = {
    "dioph": "distance of a root z to fractions x/y, bucketed by ord y",
    "loja": "max ord P(x, y) per min(ord x, ord y) for a form P in X, Y",
    "artin": "empirical Artin function of a form P in X, Y",
    "greenberg": "Artin function of Q(Z) over k[[T1]]",
    "izumi": "fit A, B in A (ord(x - Zbar y) + ord h) + B >= ord P(x, y)",
    "roots": "roots of Q(Z) in the completion (Newton polygon and lifting)",
    "selftest": "quick internal consistency checks",
}


def _add_scan_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("scan parameters (override the config file)")
    g.add_argument("--config", help="key = value file with ScanParams fields")
    for f in fields(ScanParams):
        flag = "--" + f.name.replace("_", "-")
        if f.type in ("bool", bool):
            g.add_argument(flag, dest=f.name, action="store_const", const=True, default=None)
        elif "int" in str(f.type):
            g.add_argument(flag, dest=f.name, type=int, default=None, metavar="N")
        else:
            g.add_argument(flag, dest=f.name, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--quiet", action="store_true", help="only print the verdict line")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="serival-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        _add_scan_flags(sp)
    return ap


def params_from_args(args) -> ScanParams:
    values = {}
    if args.config:
        values.update(load_config(args.config))
    for f in fields(ScanParams):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return ScanParams(**values)


def _poly(params: ScanParams, want: str):
    if not params.poly:
        raise ConfigError("no polynomial given (--poly or 'poly = ...')")
    F = params.base_field
    try:
        # literal coefficients are polynomials; give them room for lifting
        P = parse_poly(params.poly, F, params.nvars, prec=2 * params.tprec + 8)
    except ParseError as exc:
        raise ConfigError(str(exc)) from None
    if want == "form" and isinstance(P, SeriesPoly):
        P = homogenize(P)
    if want == "Z" and isinstance(P, HomogForm):
        P = dehomogenize(P, "Y=1")
    if params.swap_vars:
        cls = HomogForm if want == "form" else SeriesPoly
        P = cls([scans.swap_first_last(c) for c in P.coeffs])
    return P


def _seeds(params: ScanParams, Q: SeriesPoly):
    try:
        return [parse_completed(s, Q.field, Q.nvars - 1, params.tprec) for s in split_seeds(params.root)]
    except ParseError as exc:
        raise ConfigError(str(exc)) from None


def run_roots(params: ScanParams) -> ScanReport:
    Q = _poly(params, "Z")
    seeds = _seeds(params, Q) or None
    rs = root_split(Q, params.tprec, seeds=seeds)
    rows = [{"root": str(z), "multiplicity": m, "residual_ord": str(Q(z).ord())} for z, m in rs.roots]
    extra = {"poly": str(Q), "q": rs.q, "slopes": [s.to_json() for s in rs.slopes]}
    verdict = "COMPLETE" if rs.roots or rs.q == Q.degree else "INCONCLUSIVE"
    return ScanReport("roots", params.to_json(), ["root", "multiplicity", "residual_ord"], rows,
                      None, verdict, {"rootless_degree": rs.q}, {"roots": len(rs.roots)}, extra)


def run(command: str, params: ScanParams) -> ScanReport:
    if command == "loja":
        return scans.lojasiewicz_scan(_poly(params, "form"), params)
    if command == "artin":
        return scans.artin_estimate(_poly(params, "form"), params)
    if command == "izumi":
        return scans.izumi_probe(_poly(params, "Z"), params)
    if command == "greenberg":
        return scans.greenberg_estimate(_poly(params.replace(nvars=1), "Z"), params.replace(nvars=1))
    if command == "roots":
        return run_roots(params)
    if command == "dioph":
        if params.family:
            return scans.family_scan(params)
        Q = _poly(params, "Z")
        seeds = _seeds(params, Q)
        if not seeds:
            raise ConfigError("dioph needs --root (a seed or a completed root) or --family")
        z = scans.lift_root(Q, seeds, params.tprec)
        return scans.dioph_scan(Q, z, params)
    raise ConfigError(f"unknown command {command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "selftest":
        from .selftest import run_selftest
        return run_selftest(verbose=not args.quiet)
    try:
        params = params_from_args(args)
        report = run(args.command, params)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AlgebraError, SeriesError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["INCONCLUSIVE"]
    paths = report.write(params.out, args.command)
    if args.quiet:
        print(report.verdict)
    else:
        print(report.summary())
        if args.command == "roots":
            for r in report.rows:
                print(f"  root (multiplicity {r['multiplicity']}): {r['root']}")
        else:
            sys.stdout.write(report.csv_text())
        for ext, p in sorted(paths.items()):
            print(f"wrote {p}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
