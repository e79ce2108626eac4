"""Command-line entry point: ``grer <subcommand> ...``.

Angles are given in degrees.  Results go to ``--output`` (default stdout)
as CSV or JSON.  Exit status is 0 on success, 1 on a domain error and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import math
import os
import sys

import numpy as np

from . import bench, oracle, patterns
from .geometry import GeometryError, geometry_from_angles
from .patterns import Model, ModelParams, NormMode
from .scatter import Material, Polarization, reciprocity_residual

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(self, message)


class _UsageError(Exception):
    def __init__(self, parser, message):
        super().__init__(message)
        self.parser = parser


@contextlib.contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        # writes land in the buffer first so a failed run leaves no partial file
        buf = io.StringIO()
        yield buf
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())


def _emit(args, header, rows, extra=None):
    with _sink(args.output) as fh:
        if args.format == "json":
            doc = {"columns": header, "rows": rows}
            if extra:
                doc.update(extra)
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        else:
            bench.write_csv(fh, header, rows)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_pattern(args):
    model = Model(args.model)
    ti = math.radians(args.theta_i)
    if args.cut == "inplane":
        ts = np.linspace(-90.0, 90.0, args.points)
        f = patterns.inplane_cut(model, args.alpha, ti, np.radians(ts))
        peak = float(f.max())
        rows = [[float(t), float(v), float(v / peak) if peak > 0 else 0.0] for t, v in zip(ts, f)]
        _emit(args, ["theta_s_deg", "f", "f_over_max"], rows)
        return EXIT_OK
    n = args.points
    ts = np.linspace(0.0, 90.0, n)
    ps = np.linspace(0.0, 360.0, 2 * n - 1)
    T, P = np.meshgrid(np.radians(ts), np.radians(ps), indexing="ij")
    cpsi = np.sin(ti) * np.sin(T) * np.cos(P) + math.cos(ti) * np.cos(T)
    f = patterns.pattern(model, np.cos(T), np.clip(cpsi, -1, 1), args.alpha)
    peak = float(f.max())
    rows = [[float(a), float(b), float(v), float(v / peak)]
            for a, b, v in zip(np.degrees(T).ravel(), np.degrees(P).ravel(), f.ravel())]
    _emit(args, ["theta_s_deg", "phi_s_deg", "f", "f_over_max"], rows)
    return EXIT_OK


def cmd_normalize(args):
    params = ModelParams(Model(args.model), args.alpha)
    mode = NormMode(args.mode)
    ti = math.radians(args.theta_i)
    rows = []
    if mode is NormMode.EXACT:
        r = (patterns.F_grer_series(args.alpha, ti, args.rel_tol) if params.model is Model.GRER
             else patterns.F_rer_exact(args.alpha, ti))
        rows.append(["exact", r.value, r.terms_used, r.converged])
    elif mode is NormMode.PADE:
        if params.model is not Model.GRER:
            raise patterns.UnsupportedNormalization("the Pade route exists for G-RER only")
        k = patterns.K_grer_pade(args.alpha)
        rows.append(["pade", k * math.sqrt(math.cos(ti)), 1, True])
    else:
        r = (patterns.K_grer_series(args.alpha, args.rel_tol) if params.model is Model.GRER
             else patterns.K_rer(args.alpha))
        rows.append(["ksqrtcos", r.value * math.sqrt(math.cos(ti)), r.terms_used, r.converged])
    _emit(args, ["mode", "F", "terms", "converged"], rows)
    return EXIT_OK


def _verify_normalization():
    """Series and exact sums against the quadrature oracle."""
    out = []
    for a in (0.5, 1.0, 5.0, 20.0, 50.0, 200.0):
        for t in (0.0, 30.0, 60.0, 85.0):
            s = patterns.F_grer_series(a, math.radians(t), rel_tol=1e-12).value
            q = oracle.pattern_integral("grer", a, math.radians(t))
            out.append((f"F_grer alpha={a:g} theta_i={t:g}", abs(s / q - 1), 1e-6))
    for a in range(0, 11):
        for t in (0.0, 45.0, 80.0):
            s = patterns.F_rer_exact(a, math.radians(t)).value
            q = oracle.pattern_integral("rer", a, math.radians(t), lobe_only=True)
            out.append((f"F_rer alpha={a} theta_i={t:g}", abs(s / q - 1), 1e-8))
    return out


def _verify_reciprocity(seed: int, n: int = 200):
    rng = np.random.default_rng(seed)
    out = []
    for model in Model:
        for a in (0.5, 2.0, 10.0, 100.0):
            if model is Model.RER:
                a = max(1, round(a))
            worst = 0.0
            p = ModelParams(model, a)
            for _ in range(n):
                ti, ts = np.arccos(rng.uniform(0.01, 1.0, 2))
                pi_, ps = rng.uniform(0, 2 * math.pi, 2)
                g = geometry_from_angles(ti, pi_, ts, ps)
                worst = max(worst, reciprocity_residual(g, p, NormMode.K_SQRT_COS))
            out.append((f"reciprocity {model.value} alpha={a:g}", worst, 1e-12))
    return out


def cmd_verify(args):
    from .references import SUITES, regenerate_references
    if args.suite == "normalization":
        checks = _verify_normalization()
    elif args.suite == "reciprocity":
        checks = _verify_reciprocity(args.seed)
    else:
        rep = regenerate_references(args.suite)
        checks = [(f"references {args.suite} oracle drift", rep.max_drift, rep.oracle_tol),
                  (f"references {args.suite} deviation", rep.max_deviation, rep.check_tol)]
    rows = [[name, err, tol, err <= tol] for name, err, tol in checks]
    _emit(args, ["check", "error", "tolerance", "passed"], rows)
    return EXIT_OK if all(r[3] for r in rows) else EXIT_DOMAIN


def cmd_bench(args):
    fig = args.fig
    if fig == "3a":
        grid = list(range(int(args.alpha_min or 1), int(args.alpha_max) + 1))
        rows = bench.fig3a_rows(grid, rel_tol=args.rel_tol, repeats=args.repeats)
    elif fig == "2c":
        lo = args.alpha_min or 0.05
        grid = np.geomspace(lo, args.alpha_max, args.points) if args.points else []
        rows = bench.fig2c_rows(grid)
    elif fig == "2a":
        alphas = args.alpha or [0.0, 1.0, 5.0, 20.0]
        thetas = np.linspace(0.0, 89.0, args.points) if args.points else []
        rows = bench.fig2a_rows(thetas, alphas)
    else:
        grid = list(range(int(args.alpha_min or 1), int(args.alpha_max) + 1))
        rows = bench.fig3b_rows(grid)
    _emit(args, bench.FIG_HEADERS[fig], rows)
    return EXIT_OK


def _config(args):
    from .calib.io import CalibConfig, load_config
    return load_config(args.config) if args.config else CalibConfig()


def _seed(args, cfg):
    return cfg.seed if args.seed is None else args.seed


def cmd_synth(args):
    from .calib import default_orientations, synth_mpcs
    from .calib.io import write_mpc_csv
    cfg = _config(args)
    material = Material(args.eps_r, args.sigma, args.S, args.alpha, args.kappa)
    orients = default_orientations(args.rot_step, args.tilt_step)
    mpcs = synth_mpcs(material, cfg.geometry, orients, args.noise_db, _seed(args, cfg),
                      Model(args.model), Polarization(args.pol))
    with _sink(args.output) as fh:
        if args.format == "json":
            json.dump([{"orientation_index": m.orientation_index,
                        "rotation_deg": orients[m.orientation_index].rotation_deg,
                        "tilt_deg": orients[m.orientation_index].tilt_deg,
                        "azimuth_deg": math.degrees(m.azimuth),
                        "elevation_deg": math.degrees(m.elevation),
                        "delay_ns": m.delay, "path_gain_db": m.path_gain_db} for m in mpcs],
                      fh, indent=2)
            fh.write("\n")
        else:
            write_mpc_csv(fh, mpcs, orients)
    return EXIT_OK


def cmd_classify(args):
    from .calib import classify_campaign
    from .calib.io import MPC_HEADER, read_mpc_csv
    cfg = _config(args)
    mpcs, orients = read_mpc_csv(args.input)
    labels = classify_campaign(mpcs, orients, cfg.geometry, cfg.classifier)
    rows = []
    for m, lab in zip(mpcs, labels):
        o = orients[m.orientation_index]
        rows.append([m.orientation_index, o.rotation_deg, o.tilt_deg, math.degrees(m.azimuth),
                     math.degrees(m.elevation), m.delay, m.path_gain_db, lab.value])
    _emit(args, MPC_HEADER + ["label"], rows)
    return EXIT_OK


def cmd_calibrate(args):
    from .calib import aggregate_mpcs, classify_campaign, pso_fit
    from .calib.io import dump_fit, read_mpc_csv
    cfg = _config(args)
    mpcs, orients = read_mpc_csv(args.input)
    labels = classify_campaign(mpcs, orients, cfg.geometry, cfg.classifier)
    data = aggregate_mpcs(mpcs, labels, orients, cfg.geometry, Polarization(args.pol))
    fit = pso_fit(data, cfg.bounds, Model(args.model), _seed(args, cfg), cfg.swarm, args.kappa)
    with _sink(args.output) as fh:
        if args.format == "csv":
            m = fit.material
            bench.write_csv(fh, ["model", "eps_r", "sigma", "S", "alpha_r", "kappa", "rmse_db"],
                            [[fit.model.value, m.eps_r, m.sigma, m.S, m.alpha_r, m.kappa,
                              fit.rmse_db]])
        else:
            dump_fit(fit, fh)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _common(p, formats=("csv", "json"), default="csv"):
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--format", choices=formats, default=default)


def _positive_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="grer", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    models = [m.value for m in Model]

    p = sub.add_parser("pattern", help="evaluate a scattering pattern", allow_abbrev=False)
    p.add_argument("--model", choices=models, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta-i", type=float, required=True, help="incidence angle, deg")
    p.add_argument("--cut", choices=["inplane", "full"], default="inplane")
    p.add_argument("--points", type=int, default=361)
    _common(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("normalize", help="normalization factor F(theta_i)", allow_abbrev=False)
    p.add_argument("--model", choices=models, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta-i", type=float, default=0.0)
    p.add_argument("--mode", choices=[m.value for m in NormMode], default="exact")
    p.add_argument("--rel-tol", type=float, default=patterns.DEFAULT_REL_TOL)
    _common(p)
    p.set_defaults(func=cmd_normalize)

    from .references import SUITES
    p = sub.add_parser("verify", help="oracle and reference checks", allow_abbrev=False)
    p.add_argument("--suite", choices=["normalization", "reciprocity", *SUITES], required=True)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="figure data and term counts", allow_abbrev=False)
    p.add_argument("--fig", choices=sorted(bench.FIG_HEADERS), required=True)
    p.add_argument("--alpha-max", type=float, default=50.0)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha", type=float, action="append", help="exponent for --fig 2a (repeatable)")
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--rel-tol", type=float, default=patterns.DEFAULT_REL_TOL)
    p.add_argument("--repeats", type=int, default=1001, help="timing repetitions per point")
    _common(p)
    p.set_defaults(func=cmd_bench)

    for name, func, hlp in (("classify", cmd_classify, "label MPCs SP or DS"),
                            ("calibrate", cmd_calibrate, "fit material parameters to MPCs")):
        p = sub.add_parser(name, help=hlp, allow_abbrev=False)
        p.add_argument("--input", required=True, help="MPC CSV file")
        p.add_argument("--config", help="calibration config JSON")
        p.add_argument("--seed", type=int)
        if name == "calibrate":
            p.add_argument("--model", choices=models, default="grer")
            p.add_argument("--pol", choices=[q.value for q in Polarization], default="TE")
            p.add_argument("--kappa", type=float, default=0.0)
            _common(p, default="json")
        else:
            _common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("synth", help="synthetic MPCs for a material", allow_abbrev=False)
    p.add_argument("--eps-r", type=float, default=3.219)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--S", type=float, default=0.4)
    p.add_argument("--alpha", type=float, default=8.0)
    p.add_argument("--kappa", type=float, default=0.0)
    p.add_argument("--model", choices=models, default="grer")
    p.add_argument("--pol", choices=[q.value for q in Polarization], default="TE")
    p.add_argument("--noise-db", type=float, default=0.0)
    p.add_argument("--rot-step", type=float, default=7.5)
    p.add_argument("--tilt-step", type=float, default=15.0)
    p.add_argument("--config", help="calibration config JSON (geometry, seed)")
    p.add_argument("--seed", type=int)
    _common(p)
    p.set_defaults(func=cmd_synth)
    return ap


DOMAIN_ERRORS = (ValueError, ArithmeticError, GeometryError, patterns.SeriesConvergenceError,
                 oracle.QuadratureError, OSError, KeyError)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        exc.parser.print_help(sys.stderr)
        print(f"grer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK
    except DOMAIN_ERRORS as exc:
        print(f"grer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    code = run()
    try:
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    sys.exit(code)
