"""Command-line interface; every report is printed as one JSON object per line.

Exit codes: 0 success, 1 malformed arguments or I/O problems, 2 domain
errors, 3 numeric errors.
"""
import argparse
import json
import math
import sys

import numpy as np

from .entanglement import classify_ppt, epr_correlation, epr_minimized
from .errors import ConfigError, DomainError, NumericError
from .extremal import (ExtremalStatePair, en_extremal_at_entropy, en_extremal_p2, glems,
                       gmems)
from .figures import FigureId, FigureRequest, emit_figure
from .invariants import classify_purities, coords_from_state
from .models import ReservoirSpec, entanglement_death_time, squeezed_vacuum, trajectory
from .nodal import nodal_consistency, nodal_point
from .sampling import SamplerConfig, SamplerMode, sample_standard_forms
from .serialization import load_state
from .symplectic import to_standard_form

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _clean(obj):
    """JSON-safe copy: non-finite floats become strings, numpy scalars become Python ones."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


class _Emitter:
    def __init__(self, path):
        self._fh = open(path, "w", encoding="utf-8") if path else sys.stdout

    def __call__(self, obj):
        self._fh.write(json.dumps(_clean(obj), sort_keys=False) + "\n")

    def close(self):
        if self._fh is not sys.stdout:
            self._fh.close()


# -- subcommands -------------------------------------------------------------

def _classify(args, emit):
    sigma = load_state(args.state)
    report = classify_ppt(sigma)
    c = coords_from_state(sigma)
    emit({"report": report.asdict(),
          "class": classify_purities(c.mu1, c.mu2, c.mu).value,
          "coordinates": dict(zip(("mu1", "mu2", "mu", "delta"), c.astuple()))})


def _extremal(args, emit):
    x1, x2, x = args.x1, args.x2, args.x
    if args.entropies:
        emit(en_extremal_at_entropy(x1, x2, x, args.p).asdict())
        return
    en_max, en_min = en_extremal_p2(x1, x2, x)
    try:
        state_l = glems(x1, x2, x)
    except DomainError:
        state_l = None
    emit(ExtremalStatePair(gmems(x1, x2, x), state_l, en_max, en_min, False,
                           x1, x2, x, x).asdict())


def _nodal(args, emit):
    pt = nodal_point(args.mu1, args.mu2, args.p)
    out = {"mu1": args.mu1, "mu2": args.mu2, "mu_kappa": None, "s_p_kappa": None}
    if pt is not None:
        out = pt.asdict()
        if args.check:
            kappas = nodal_consistency(args.mu1, args.mu2, args.p)
            out["kappa_elsewhere"] = kappas
            out["consistent"] = bool(all(abs(k) <= args.tol for k in kappas))
    emit(out)


def _figure(args, emit):
    req = FigureRequest(args.figure_id, p=args.p, grid=args.grid, out=args.out,
                        seed=args.seed, workers=args.workers, samples=args.samples,
                        s_slice=args.s_slice)
    text = emit_figure(req)
    if args.out is None:
        sys.stdout.write(text)


def _sample(args, emit):
    cfg = SamplerConfig(args.count, a_max=args.a_max, seed=args.seed, mode=args.mode, mu=args.mu)
    for row in sample_standard_forms(cfg):
        emit(dict(zip(("a", "b", "c_plus", "c_minus"), row.tolist())))


def _evolve(args, emit):
    if args.nbar is not None:
        res = ReservoirSpec.from_photon_numbers(args.gamma, *args.nbar)
    else:
        res = ReservoirSpec(args.gamma, *args.n)
    t_max = args.horizon / res.gamma
    rows = trajectory(squeezed_vacuum(args.r).matrix(), res, np.linspace(0.0, t_max, args.grid))
    for t, en, mu, mu1, mu2 in rows:
        emit({"t": t, "E_N": en, "mu": mu, "mu1": mu1, "mu2": mu2})
    emit({"death_time": entanglement_death_time(args.r, res, horizon=args.horizon, xtol=args.tol),
          "horizon": t_max})


def _epr(args, emit):
    sigma = load_state(args.state)
    sf = to_standard_form(sigma)
    report = classify_ppt(sigma)
    emit({"xi": epr_correlation(sigma), "xi_bar": epr_minimized(sf, grid=args.grid),
          "two_nu_tilde": 2.0 * report.nu_tilde_minus, "symmetric": sf.is_symmetric,
          "entangled": not report.separable})


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--p", type=float, default=None, help="entropy order (1 = von Neumann)")
    common.add_argument("--grid", type=int, default=None, help="grid resolution")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--tol", type=float, default=None, help="numerical tolerance")

    parser = _Parser(prog="cvextremal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="PPT report and purity class of a state")
    p.add_argument("state", help="matrix CSV file or 'a,b,c+,c-' record")
    p.set_defaults(func=_classify)

    p = sub.add_parser("extremal", parents=[common], help="GMEMS/GLEMS and extremal negativities")
    p.add_argument("x1", type=float, help="mu1, or S_p1 with --entropies")
    p.add_argument("x2", type=float, help="mu2, or S_p2 with --entropies")
    p.add_argument("x", type=float, help="mu, or the global S_p with --entropies")
    p.add_argument("--entropies", action="store_true", help="read the values as S_p1 S_p2 S_p")
    p.set_defaults(func=_extremal)

    p = sub.add_parser("nodal", parents=[common], help="nodal point of kappa_p")
    p.add_argument("mu1", type=float)
    p.add_argument("mu2", type=float)
    p.add_argument("--check", action="store_true",
                   help="verify kappa_p = 0 at other Delta on the nodal level set")
    p.set_defaults(func=_nodal)

    p = sub.add_parser("figure", parents=[common], help="write a figure dataset as CSV")
    p.add_argument("figure_id", choices=[f.value for f in FigureId])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--s-slice", type=float, default=None, dest="s_slice")
    p.set_defaults(func=_figure)

    p = sub.add_parser("sample", parents=[common], help="random physical standard forms")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--a-max", type=float, default=10.0, dest="a_max")
    p.add_argument("--mode", choices=[m.value for m in SamplerMode],
                   default=SamplerMode.UNIFORM_STANDARD_FORM.value)
    p.add_argument("--mu", type=float, default=0.5, help="global purity of the slice mode")
    p.set_defaults(func=_sample)

    p = sub.add_parser("evolve", parents=[common], help="dissipative squeezed-vacuum trajectory")
    p.add_argument("r", type=float, help="initial two-mode squeezing")
    p.add_argument("--gamma", type=float, default=1.0)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=float, nargs=2, default=(1.0, 1.0), metavar=("N1", "N2"),
                   help="reservoir quadrature variances (vacuum = 1)")
    g.add_argument("--nbar", type=float, nargs=2, default=None, metavar=("NBAR1", "NBAR2"),
                   help="reservoir mean photon numbers")
    p.add_argument("--horizon", type=float, default=20.0, help="scan horizon in units of 1/gamma")
    p.set_defaults(func=_evolve)

    p = sub.add_parser("epr", parents=[common], help="EPR correlation and its local minimum")
    p.add_argument("state", help="matrix CSV file or 'a,b,c+,c-' record")
    p.set_defaults(func=_epr)
    return parser


_DEFAULTS = {"figure": {"grid": 50}, "evolve": {"grid": 101, "tol": 1e-9},
             "epr": {"grid": 121}, "nodal": {"p": 3.0, "tol": 1e-8}}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"cvextremal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    for key, value in _DEFAULTS.get(args.command, {}).items():
        if getattr(args, key) is None:
            setattr(args, key, value)
    if args.command == "extremal" and args.p is None:
        args.p = 2.0
    emit = _Emitter(args.out if args.command != "figure" else None)
    try:
        args.func(args, emit)
    except (ConfigError, OSError) as exc:
        print(f"cvextremal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"cvextremal: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"cvextremal: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        emit.close()
    return EXIT_OK
