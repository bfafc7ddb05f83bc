"""Command-line entry point: ``eprkit <subcommand> ...``.

Results go to stdout (JSON by default, or CSV / plain text), diagnostics to
stderr.  Exit codes: 0 evaluated (a violated inequality is still a
successful evaluation), 2 usage error, 3 malformed input data, 4 input file
not found.  ``EPRKIT_FORMAT`` sets the default output format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import frames as fr
from . import inequalities as ineq
from . import stabilizer as stab
from .states import Direction, PSI_TILDE, expectation, ghz4, spin_obs

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NOT_FOUND = 4

FORMATS = ("json", "csv", "pretty")
FORMAT_ENV = "EPRKIT_FORMAT"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-10
    seed: int = 0
    grid_n: int = 12
    samples: int = 100_000
    output_format: str = "json"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise CliError("--tol must be positive", EXIT_USAGE)
        if self.grid_n < 2:
            raise CliError("--grid must be >= 2", EXIT_USAGE)
        if self.samples < 1:
            raise CliError("--samples must be >= 1", EXIT_USAGE)
        if self.output_format not in FORMATS:
            raise CliError(f"unknown format {self.output_format!r}", EXIT_USAGE)


_PI_EXPR = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?P<num>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*
        (?:pi|π)\s*
        (?:/\s*(?P<den>\d+(?:\.\d*)?|\.\d+))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse ``0.5``, ``pi``, ``-pi/2``, ``2pi/3``, ``3*pi/4`` into radians."""
    m = _PI_EXPR.match(text)
    if m:
        num = float(m["num"]) if m["num"] else 1.0
        den = float(m["den"]) if m["den"] else 1.0
        if den == 0:
            raise argparse.ArgumentTypeError(f"zero denominator in {text!r}")
        value = num * math.pi / den
        return -value if m["sign"] == "-" else value
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed angle {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite, got {text!r}")
    return value


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


# -- output -----------------------------------------------------------------


def _clean(x):
    """Make a result JSON-friendly: numpy scalars/arrays to Python, -0.0 to 0.0."""
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) + 0.0
    if isinstance(x, complex):
        return [x.real + 0.0, x.imag + 0.0]
    return x


def matrix_to_json(a) -> list:
    return [[[complex(z).real + 0.0, complex(z).imag + 0.0] for z in row] for row in np.asarray(a)]


def matrix_from_json(doc) -> np.ndarray:
    """Rows of entries; an entry is a number or an ``[re, im]`` pair."""
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise CliError("matrix must be a non-empty list of rows", EXIT_DATA)
    n = len(doc[0])
    out = np.zeros((len(doc), n), dtype=np.complex128)
    for i, row in enumerate(doc):
        if len(row) != n:
            raise CliError("matrix rows have unequal lengths", EXIT_DATA)
        for j, z in enumerate(row):
            if isinstance(z, bool):
                raise CliError(f"bad entry at ({i},{j})", EXIT_DATA)
            if isinstance(z, (int, float)):
                out[i, j] = z
            elif (
                isinstance(z, list)
                and len(z) == 2
                and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in z)
            ):
                out[i, j] = complex(z[0], z[1])
            else:
                raise CliError(f"bad entry at ({i},{j}): {z!r}", EXIT_DATA)
    if not np.all(np.isfinite(out)):
        raise CliError("matrix has non-finite entries", EXIT_DATA)
    return out


def _load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}", EXIT_NOT_FOUND) from None
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON ({e})", EXIT_DATA) from None
    return matrix_from_json(doc)


REPORT_COLUMNS = ("lhs", "rhs", "margin", "violated")


def _write_report_rows(out, input_cols, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow([*input_cols, *REPORT_COLUMNS])
    for inputs, r in rows:
        w.writerow([*(repr(float(x)) for x in inputs), repr(r.lhs), repr(r.rhs), repr(r.margin), str(r.violated).lower()])


def _flatten(prefix, x, acc):
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, acc)
    elif isinstance(x, list) and any(isinstance(v, (list, dict)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, acc)
    else:
        acc.append((prefix, json.dumps(x) if isinstance(x, list) else x))
    return acc


def emit(result: dict, fmt: str, out, csv_rows=None):
    result = _clean(result)
    if fmt == "json":
        out.write(json.dumps(result, indent=2) + "\n")
    elif fmt == "csv":
        if csv_rows is not None:
            _write_report_rows(out, *csv_rows)
        else:
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["key", "value"])
            for k, v in _flatten("", result, []):
                w.writerow([k, str(v).lower() if isinstance(v, bool) else v])
    else:
        for k, v in _flatten("", result, []):
            out.write(f"{k:<32} {v}\n")


# -- subcommands ------------------------------------------------------------


def cmd_bell(args, cfg: RunConfig, out):
    a = args.angles
    r = ineq.bell_check_planar(*a)
    res = {"experiment": "bell", **r.to_json()}
    res["inputs"]["expressions"] = list(args.angle_text)
    emit(res, cfg.output_format, out, csv_rows=(("angle1", "angle2", "angle3"), [(a, r)]))


def cmd_wigner(args, cfg: RunConfig, out):
    if args.classical is not None:
        if args.angles:
            raise CliError("give either three angles or --classical, not both", EXIT_USAGE)
        try:
            d = ineq.OutcomeDistribution(tuple(args.classical))
        except ValueError as e:
            raise CliError(str(e), EXIT_DATA) from None
        r = ineq.wigner_classical_sides(d)
        res = {"experiment": "wigner-classical", **r.to_json()}
        res["inputs"] = {"atoms": list(ineq.ATOMS), "p": list(d.p)}
        emit(res, cfg.output_format, out, csv_rows=(ineq.ATOMS, [(d.p, r)]))
        return
    if len(args.angles) != 3:
        raise CliError("wigner needs three angles t_ij t_jk t_ki", EXIT_USAGE)
    a = args.angles
    r = ineq.wigner_check(*a)
    res = {"experiment": "wigner", **r.to_json()}
    res["inputs"]["expressions"] = list(args.angle_text)
    emit(res, cfg.output_format, out, csv_rows=(("t_ij", "t_jk", "t_ki"), [(a, r)]))


def cmd_ghz(args, cfg: RunConfig, out):
    if args.contradiction:
        if args.theta or args.phi:
            raise CliError("--contradiction does not take --theta/--phi", EXIT_USAGE)
        if args.grid < 4 or args.grid % 2:
            raise CliError("--grid must be even and >= 4 for --contradiction", EXIT_USAGE)
        families = ("zero",) if args.zero_only else ("zero", "pi")
        r = ineq.ghz_contradiction(args.grid, families)
        res = {"mode": "contradiction", "families": list(families), **r.to_json()}
        if not r.feasible:
            res["certificate_verified"] = ineq.chain_is_contradictory(r.conflict_chain, args.grid)
        emit(res, cfg.output_format, out)
        return
    if args.zero_only:
        raise CliError("--zero-only only applies with --contradiction", EXIT_USAGE)
    theta = args.theta or [math.pi / 2] * 4
    phi = args.phi or [0.0] * 4
    if len(theta) != 4 or len(phi) != 4:
        raise CliError("--theta and --phi take four angles each", EXIT_USAGE)
    dirs = [Direction(t, p) for t, p in zip(theta, phi)]
    closed = ineq.ghz_E(*dirs)
    oracle = expectation(ghz4(), [spin_obs(d) for d in dirs])
    res = {
        "mode": "correlation",
        "theta": theta,
        "phi": phi,
        "closed_form": closed,
        "oracle": oracle,
        "difference": abs(closed - oracle),
        "agrees": abs(closed - oracle) <= cfg.tolerance,
    }
    emit(res, cfg.output_format, out)


def cmd_frames(args, cfg: RunConfig, out):
    if args.c is not None and args.species is not None:
        raise CliError("give --c or --species, not both", EXIT_USAGE)
    c = args.c if args.c is not None else fr.SPECIES[args.species or "electron"]
    t = fr.triad(args.theta, c)
    sf = fr.spinor_frames(args.theta)
    res = {
        "theta": args.theta,
        "c": c,
        "triad": t.to_json(),
        "orthonormal": t.is_orthonormal(cfg.tolerance),
        "right_handed": t.is_right_handed(cfg.tolerance),
        "decomposition": {"phi": args.phi, **fr.frame_decompose(args.theta, args.phi).to_json()},
        "spinor_frames": {"ket_plus": sf.ket_plus, "ket_minus": sf.ket_minus},
        "rotated_operator": fr.rotated_operator(args.theta),
        "identification": fr.frame_identification_check().to_json(),
    }
    emit(res, cfg.output_format, out)


_VECTORS = {"singlet": lambda: PSI_TILDE, "ghz": lambda: ghz4() * math.sqrt(2)}


def cmd_semigroup(args, cfg: RunConfig, out):
    modes = [m for m in ("sample", "check", "factor") if getattr(args, m)]
    if len(modes) > 1:
        raise CliError("--sample, --check and --factor are mutually exclusive", EXIT_USAGE)
    fam = stab.stabilizer_family(_VECTORS[args.vector]())
    mode = modes[0] if modes else "describe"
    res: dict = {"mode": mode, "vector": args.vector}
    if mode == "describe":
        res["family"] = fam.to_json()
        res["constraints_text"] = fam.describe(one_based=True)
    elif mode == "sample":
        a = stab.sample_member(fam, cfg.seed, args.scale)
        res.update(
            seed=cfg.seed,
            scale=args.scale,
            matrix=matrix_to_json(a),
            is_member=stab.is_member(fam, a, cfg.tolerance),
            residual=float(np.max(np.abs(a @ fam.fixed_vector - fam.fixed_vector))),
        )
    elif mode == "check":
        a = _load_matrix(args.check)
        if a.shape != (fam.dim, fam.dim):
            raise CliError(f"expected a {fam.dim}x{fam.dim} matrix, got {a.shape}", EXIT_DATA)
        res.update(
            is_member=stab.is_member(fam, a, cfg.tolerance),
            residual=float(np.max(np.abs(a @ fam.fixed_vector - fam.fixed_vector))),
        )
    else:
        a = _load_matrix(args.factor)
        if a.shape != (4, 4):
            raise CliError(f"--factor needs a 4x4 matrix, got {a.shape}", EXIT_DATA)
        g = stab.kron_self_factor(a, args.factor_tol)
        res.update(reducible=g is not None, g=None if g is None else matrix_to_json(g))
    emit(res, cfg.output_format, out)


def cmd_lhv(args, cfg: RunConfig, out):
    model = ineq.LhvModel.sign()
    n1, n2 = Direction.planar(0.0), Direction.planar(args.separation)
    est = ineq.lhv_correlation(model, n1, n2, cfg.samples, cfg.seed)
    quantum = ineq.bell_E(n1, n2)
    res = {
        "model": args.model,
        "separation": args.separation,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "estimate": est.estimate,
        "std_error": est.std_error,
        "analytic": ineq.sign_model_correlation(args.separation),
        "quantum": quantum,
        "gap": abs(est.estimate - quantum),
    }
    emit(res, cfg.output_format, out)


def cmd_scan(args, cfg: RunConfig, out):
    s = ineq.violation_scan(args.experiment, cfg.grid_n)
    best = s.best
    print(
        f"{args.experiment}: {len(s.reports)} configurations, max margin {best.margin!r} at {best.inputs['angles']}",
        file=sys.stderr,
    )
    rows = [(r.inputs["angles"], r) for r in s.reports]
    res = {
        "experiment": s.experiment,
        "grid_n": s.grid_n,
        "rows": [r.to_json() for r in s.reports],
        "best": best.to_json(),
        "violations": sum(r.violated for r in s.reports),
    }
    if cfg.output_format == "pretty":
        out.write(f"{'angle1':>10} {'angle2':>10} {'angle3':>10} {'lhs':>10} {'rhs':>10} {'margin':>10}\n")
        for angles, r in rows:
            out.write(" ".join(f"{x:10.6f}" for x in (*angles, r.lhs, r.rhs, r.margin)))
            out.write(" *\n" if r.violated else "\n")
        return
    emit(res, cfg.output_format, out, csv_rows=(s.columns, rows))


# -- parser -----------------------------------------------------------------


def _angle_list(text_list):
    return [parse_angle(t) for t in text_list]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default: $EPRKIT_FORMAT or json)")
    common.add_argument("--tol", type=_positive_float, default=1e-10, help="comparison tolerance")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="eprkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bell", parents=[common], help="Bell inequality at three in-plane angles")
    b.add_argument("angle_text", nargs=3, metavar="ANGLE", help="radians or fractions of pi, e.g. 2pi/3 (use -- before negative angles)")
    b.set_defaults(func=cmd_bell)

    w = sub.add_parser("wigner", parents=[common], help="Wigner inequality for angle differences")
    w.add_argument("angle_text", nargs="*", metavar="ANGLE", help="t_ij t_jk t_ki")
    w.add_argument("--classical", type=float, nargs=8, metavar="P", help="evaluate the classical sides on an outcome distribution")
    w.set_defaults(func=cmd_wigner)

    g = sub.add_parser("ghz", parents=[common], help="four-particle GHZ correlation or hidden-variable contradiction")
    g.add_argument("--theta", nargs=4, type=parse_angle, metavar="T")
    g.add_argument("--phi", nargs=4, type=parse_angle, metavar="P")
    g.add_argument("--contradiction", action="store_true")
    g.add_argument("--grid", type=int, default=8)
    g.add_argument("--zero-only", action="store_true", help="drop the pi-family constraints")
    g.set_defaults(func=cmd_ghz)

    f = sub.add_parser("frames", parents=[common], help="triads, frame decompositions and spinor frames")
    f.add_argument("--theta", type=parse_angle, default=math.pi / 2)
    f.add_argument("--phi", type=parse_angle, default=0.0)
    f.add_argument("--c", type=_positive_float, default=None)
    f.add_argument("--species", choices=sorted(fr.SPECIES), default=None)
    f.set_defaults(func=cmd_frames)

    s = sub.add_parser("semigroup", parents=[common], help="stabilizer semigroup of the singlet or GHZ vector")
    s.add_argument("--vector", choices=sorted(_VECTORS), default="singlet")
    s.add_argument("--sample", action="store_true")
    s.add_argument("--scale", type=_positive_float, default=1.0)
    s.add_argument("--check", metavar="FILE")
    s.add_argument("--factor", metavar="FILE")
    s.add_argument("--factor-tol", type=_positive_float, default=1e-8)
    s.set_defaults(func=cmd_semigroup)

    lh = sub.add_parser("lhv", parents=[common], help="local hidden-variable Monte Carlo correlation")
    lh.add_argument("--model", choices=["sign"], default="sign")
    lh.add_argument("--samples", type=int, default=100_000)
    lh.add_argument("--separation", type=parse_angle, default=math.pi / 4)
    lh.set_defaults(func=cmd_lhv)

    sc = sub.add_parser("scan", parents=[common], help="evaluate a check on the in-plane angle grid")
    sc.add_argument("experiment", choices=["bell", "wigner"])
    sc.add_argument("--grid", type=int, default=12)
    sc.set_defaults(func=cmd_scan)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if hasattr(args, "angle_text"):
            try:
                args.angles = _angle_list(args.angle_text)
            except argparse.ArgumentTypeError as e:
                raise CliError(str(e), EXIT_USAGE) from None
        fmt = args.format or os.environ.get(FORMAT_ENV, "json")
        cfg = RunConfig(
            tolerance=args.tol,
            seed=args.seed,
            grid_n=getattr(args, "grid", 12),
            samples=getattr(args, "samples", 1),
            output_format=fmt,
        )
        buf = io.StringIO()
        args.func(args, cfg, buf)
        out.write(buf.getvalue())
    except CliError as e:
        print(f"eprkit {args.command}: error: {e}", file=sys.stderr)
        return e.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
