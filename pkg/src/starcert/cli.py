"""Command-line front end.

    starcert catalog
    starcert scan   --fn koebe --functional RE_STAR
    starcert check  --fn paper_example_1 --criterion T1 --alpha sqrt3+1
    starcert sweep  --criterion T1 --start 1.1 --stop 10 --step 0.1
    starcert geometry
    starcert verify-paper

JSON is the machine interface (``--out`` or stdout).  Exit codes: 0 ok,
1 usage error, 2 an inconsistent report (hypothesis holds, conclusion
violated) or a failed verification item.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import catalog, criteria, geometry, scan, series, verify
from .errors import StarcertError

NAMED_CONSTANTS = {
    "sqrt3": math.sqrt(3),
    "sqrt3+1": math.sqrt(3) + 1,
    "sqrt3-1": math.sqrt(3) - 1,
}
SWEEP_DEFAULTS = {"T1": (1.1, 10.0, 0.1), "T2": (-20.0, 1.0, 0.1), "T3": (0.0, 50.0, 0.5)}
EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_real(text):
    key = text.strip().lower().replace(" ", "")
    if key in NAMED_CONSTANTS:
        return NAMED_CONSTANTS[key]
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number or one of {sorted(NAMED_CONSTANTS)}, got {text!r}") from None


def parse_radii(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from None


def _add_function_args(p):
    p.add_argument("--fn", default=None, help=f"catalog function: {', '.join(catalog.CATALOG)}")
    p.add_argument("--coeffs-file", default=None, help="JSON array of [re, im] Taylor coefficients")


def _add_grid_args(p):
    p.add_argument("--radii", type=parse_radii, default=None, help="comma-separated radii")
    p.add_argument("--thetas", type=int, default=scan.DEFAULT_THETAS)
    p.add_argument("--refine", type=int, default=scan.DEFAULT_REFINE)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--margin", type=float, default=criteria.DEFAULT_MARGIN)


def _add_param_args(p):
    p.add_argument("--alpha", type=parse_real, default=None)
    p.add_argument("--beta", type=parse_real, default=None)
    p.add_argument("--gamma", type=parse_real, default=None)


def _add_output_args(p, formats=("json", "csv")):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=formats, default=formats[0])


def build_parser():
    parser = _Parser(prog="starcert", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list catalog functions")
    _add_output_args(p)

    p = sub.add_parser("scan", help="sup/inf of one functional over the disc")
    _add_function_args(p)
    p.add_argument("--functional", required=True, help=", ".join(k.name for k in scan.Kind))
    p.add_argument("--mode", choices=("sup", "inf"), default=None)
    _add_param_args(p)
    _add_grid_args(p)
    _add_output_args(p)

    p = sub.add_parser("check", help="certify one criterion for one function")
    _add_function_args(p)
    p.add_argument("--criterion", required=True,
                   help=", ".join([k.name for k in criteria.CriterionKind] + ["CLASS_G"]))
    _add_param_args(p)
    _add_grid_args(p)
    _add_output_args(p)

    p = sub.add_parser("sweep", help="threshold and inscribed-disc radius over a parameter range")
    p.add_argument("--criterion", required=True, choices=("T1", "T2", "T3"))
    p.add_argument("--start", type=parse_real, default=None)
    p.add_argument("--stop", type=parse_real, default=None)
    p.add_argument("--step", type=float, default=None)
    _add_output_args(p, formats=("csv", "json"))

    p = sub.add_parser("geometry", help="radius functions, scalar minimum, boundary-lemma witnesses")
    _add_output_args(p, formats=("json",))

    p = sub.add_parser("verify-paper", help="run the full reproduction suite")
    _add_grid_args(p)
    _add_output_args(p, formats=("json",))
    return parser


# -- helpers ------------------------------------------------------------------------

def resolve_function(args):
    if args.coeffs_file and args.fn:
        raise UsageError("give either --fn or --coeffs-file, not both")
    if args.coeffs_file:
        try:
            s = series.load_coeffs(args.coeffs_file)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {args.coeffs_file}: {exc}") from None
        return catalog.from_coefficients(s, name=args.coeffs_file)
    if not args.fn:
        raise UsageError("--fn or --coeffs-file is required")
    try:
        return catalog.get(args.fn)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def resolve_grid(args):
    try:
        if args.radii is None:
            return scan.ScanGrid.default(
                r_max=args.r_max or scan.DEFAULT_R_MAX,
                thetas_per_circle=args.thetas, refine_iters=args.refine)
        r_max = args.r_max or max(scan.DEFAULT_R_MAX, max(args.radii))
        return scan.ScanGrid(radii=args.radii, thetas_per_circle=args.thetas,
                             refine_iters=args.refine, r_max=r_max)
    except ValueError as exc:
        raise UsageError(f"invalid grid: {exc}") from None


def _param_for(kind_name, args):
    name = {"T1": "alpha", "T2": "beta", "T3": "gamma",
            "ARG_SHIFTED_CONVEX": "alpha", "ARG_BETA": "beta", "ARG_GAMMA": "gamma"}.get(kind_name)
    if name is None:
        return None
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{kind_name} needs --{name}")
    return value


def _emit(text, args):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, json.dumps(v) if isinstance(v, list) else v


# -- commands ---------------------------------------------------------------------------

def cmd_catalog(args):
    rows = catalog.listing()
    if args.format == "csv":
        _emit(_csv_text([(r["name"], json.dumps(r["params"]), r["formula"]) for r in rows],
                        ("name", "params", "formula")), args)
    else:
        _emit(_dump_json(rows), args)
    return EXIT_OK


def cmd_scan(args):
    f = resolve_function(args)
    kind = args.functional.upper()
    if kind not in scan.Kind.__members__:
        raise UsageError(f"unknown functional {args.functional!r}")
    F = scan.functional_from_name(kind, _param_for(kind, args))
    mode = args.mode or ("inf" if kind.startswith("RE_") else "sup")
    grid = resolve_grid(args)
    res = (scan.scan_sup if mode == "sup" else scan.scan_inf)(f, F, grid)
    if args.format == "csv":
        _emit(_csv_text(res.per_radius, ("r", f"{mode}_{F.name}")), args)
    else:
        _emit(_dump_json(res.to_json()), args)
    return EXIT_OK


def cmd_check(args):
    f = resolve_function(args)
    grid = resolve_grid(args)
    name = args.criterion.upper()
    if name == "CLASS_G":
        payload = criteria.class_g_membership(f, grid, margin=args.margin).to_json()
        payload["function"] = f.name
        consistent = True
    else:
        if name not in criteria.CriterionKind.__members__:
            raise UsageError(f"unknown criterion {args.criterion!r}")
        c = criteria.criterion_from_name(name, _param_for(name, args))
        report = criteria.certify(f, c, grid, margin=args.margin)
        payload = report.to_json()
        consistent = report.implication_consistent
    if args.format == "csv":
        _emit(_csv_text(list(_flatten(payload)), ("key", "value")), args)
    else:
        _emit(_dump_json(payload), args)
    if not consistent:
        print("INCONSISTENT: hypothesis holds but conclusion violated", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def sweep_rows(crit, start, stop, step):
    if step is None or step <= 0:
        raise UsageError("--step must be positive")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    if n < 2:
        raise UsageError("a sweep needs at least two points")
    radius_fn = {"T1": geometry.phi_alpha, "T2": geometry.psi_beta, "T3": geometry.rho_gamma}[crit]
    rows = []
    for i in range(n):
        p = round(start + i * step, 12)
        c = criteria.criterion_from_name(crit, p)
        rows.append((p, criteria.threshold_of(c), radius_fn(p)))
    return rows


def cmd_sweep(args):
    d_start, d_stop, d_step = SWEEP_DEFAULTS[args.criterion]
    start = d_start if args.start is None else args.start
    stop = d_stop if args.stop is None else args.stop
    step = d_step if args.step is None else args.step
    rows = sweep_rows(args.criterion, start, stop, step)
    pname = criteria.PARAM_NAME[criteria.CriterionKind[args.criterion]]
    if args.format == "json":
        _emit(_dump_json([{pname: p, "threshold": t, "radius": r} for p, t, r in rows]), args)
    else:
        _emit(_csv_text(rows, (pname, "threshold", "radius")), args)
    return EXIT_OK


def geometry_payload():
    m = geometry.varphi_scalar_min()
    a_star, phi_max = geometry.phi_alpha_max()
    witnesses = []
    for rho, theta in ((0.5, math.pi / 2), (0.3, math.pi / 3), (0.9, 3 * math.pi / 2)):
        w = geometry.lemma_a_witness(rho, theta)
        witnesses.append({"rho": rho, "theta": theta, "a": w.a, "k": w.k,
                          "bound": w.bound, "equality_gap": w.equality_gap})
    discs = []
    for label, (d, s) in (("T1(alpha=4)", geometry.sector_disc_T1(4.0)),
                          ("T2(beta=1)", geometry.sector_disc_T2(1.0)),
                          ("T3(gamma=0)", geometry.sector_disc_T3(0.0))):
        discs.append({"criterion": label, "center": d.center, "radius": d.radius,
                      "half_angle": s.half_angle, "inside": geometry.disc_in_sector(d, s),
                      "inside_sampled": geometry.disc_in_sector_sampled(d, s)})
    return {
        "phi_alpha": {"argmax": a_star, "max": phi_max},
        "psi_beta": {"at_1": geometry.psi_beta(1.0), "at_-1e6": geometry.psi_beta(-1e6)},
        "rho_gamma": {"at_0": geometry.rho_gamma(0.0), "at_1e6": geometry.rho_gamma(1e6)},
        "scalar_min": {"argmin": m.argmin, "min": m.min,
                       "numeric_argmin": m.numeric_argmin, "numeric_min": m.numeric_min},
        "lemma_a": witnesses,
        "disc_in_sector": discs,
    }


def cmd_geometry(args):
    _emit(_dump_json(geometry_payload()), args)
    return EXIT_OK


def cmd_verify_paper(args):
    grid = resolve_grid(args)
    checks = verify.run_all(grid, margin=args.margin)
    for c in checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.item:2d} {c.name}: {c.detail}")
    n_pass = sum(c.passed for c in checks)
    print(f"{n_pass}/{len(checks)} items passed")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(_dump_json([c.to_json() for c in checks]))
    return EXIT_OK if n_pass == len(checks) else EXIT_INCONSISTENT


COMMANDS = {
    "catalog": cmd_catalog,
    "scan": cmd_scan,
    "check": cmd_check,
    "sweep": cmd_sweep,
    "geometry": cmd_geometry,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"starcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StarcertError as exc:
        print(f"starcert: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
