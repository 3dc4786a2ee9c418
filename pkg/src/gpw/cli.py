"""Command-line front end: ``gpw <verb> [options]``.

Exit status: 0 when every checked inequality holds, 2 when one fails (the
first violation is named on stderr), 1 on input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import io as gio
from . import repro
from .errors import GPWError
from .filtering import direct_approx_report, filter_P, filter_Q, sparse_approx
from .graph import (
    cycle_graph,
    hub_cycle_graph,
    path_graph,
    star_graph,
    subset_geometry,
)
from .inequalities import plancherel_polya, poincare_iterated, poincare_power, poincare_single
from .kernel import default_order, kernel
from .lattice import PATTERNS, Torus, downsample_set, parse_dims
from .sampling import certify, dual_frame, reconstruct
from .spectral import bernstein_check, eigendecompose, out_of_band_energy, random_pw_signal, spectrum_report

VERBS = (
    "spectrum",
    "geometry",
    "poincare",
    "pp",
    "certify",
    "dual-frame",
    "reconstruct",
    "filter",
    "approx-report",
    "sparse-approx",
    "repro-examples",
)

FAMILIES = {"path": path_graph, "cycle": cycle_graph, "star": star_graph, "hub-cycle": hub_cycle_graph}


class AssertionFailure(Exception):
    pass


def _tolerance(args) -> float | None:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("GPW_TOL")
    return float(env) if env else None


def _load_graph(args):
    sources = [args.graph is not None, args.torus is not None, args.family is not None]
    if sum(sources) != 1:
        raise GPWError("give exactly one of --graph, --torus, --family")
    if args.graph is not None:
        return gio.read_edge_list(args.graph), None
    if args.torus is not None:
        torus = Torus(parse_dims(args.torus))
        return torus.graph, torus
    if args.size is None:
        raise GPWError("--family needs --size")
    return FAMILIES[args.family](args.size), None


def _parse_set(spec: str, g, torus) -> list[int]:
    n = g.vertex_count
    if spec == "evens":
        return list(range(0, n, 2))
    if spec == "odds":
        return list(range(1, n, 2))
    if spec == "all":
        return list(range(n))
    if spec in PATTERNS:
        if torus is None:
            raise GPWError(f"pattern {spec!r} needs --torus")
        return sorted(downsample_set(torus, spec))
    if spec.startswith("@"):
        text = Path(spec[1:]).read_text()
        return [int(x) for x in text.replace(",", " ").split()]
    try:
        return [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise GPWError(f"cannot parse vertex set {spec!r}") from None


def _signal(args, g, basis=None, omega=None):
    if args.signal is not None:
        return gio.read_signal(args.signal, g.vertex_count)
    rng = np.random.default_rng(args.seed)
    if basis is not None and omega is not None and args.random_pw:
        return random_pw_signal(basis, omega, rng)
    return rng.normal(size=g.vertex_count) + 1j * rng.normal(size=g.vertex_count)


def _emit(args, report: dict) -> None:
    text = gio.dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise AssertionFailure(what)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_spectrum(args):
    g, _ = _load_graph(args)
    rep = spectrum_report(eigendecompose(g))
    _emit(args, rep)
    _require(rep["within_2D"], "spectrum containment: lambda_max <= 2 D(G)")


def cmd_geometry(args):
    g, torus = _load_graph(args)
    geo = subset_geometry(g, _parse_set(args.set, g, torus), args.level)
    _emit(args, geo.to_dict())


def cmd_poincare(args):
    g, torus = _load_graph(args)
    geo = subset_geometry(g, _parse_set(args.set, g, torus), args.level)
    f = _signal(args, g)
    tol = _tolerance(args)
    kw = {} if tol is None else {"tol": tol}
    if args.form == "single":
        rep = poincare_single(g, geo, f, **kw)
    elif args.form == "power":
        rep = poincare_power(g, geo, f, args.r, **kw)
    else:
        rep = poincare_iterated(g, geo, geo.level, f, **kw)
    _emit(args, rep.to_dict())
    _require(rep.holds, f"Poincare inequality ({rep.form}, level {rep.level}): lhs {rep.lhs:.12g} > rhs {rep.rhs:.12g}")


def cmd_pp(args):
    g, torus = _load_graph(args)
    geo = subset_geometry(g, _parse_set(args.set, g, torus), args.level)
    basis = eigendecompose(g)
    args.random_pw = True
    f = _signal(args, g, basis, args.omega)
    rep = plancherel_polya(g, geo, args.omega, f, basis, n=geo.level)
    _emit(args, rep.to_dict())
    _require(rep.lower_holds, "Plancherel-Polya lower bound")
    _require(rep.upper_holds, "Plancherel-Polya upper bound")


def _certificate(args):
    g, torus = _load_graph(args)
    S = _parse_set(args.set, g, torus)
    geo = subset_geometry(g, S, 0 if len(set(S)) == g.vertex_count else 1)
    basis = eigendecompose(g)
    return g, geo, basis, certify(geo, args.omega, basis)


def cmd_certify(args):
    _, _, _, cert = _certificate(args)
    _emit(args, cert.to_dict())
    _require(cert.numerically_certified, f"S is not a uniqueness set for PW_{args.omega}")


def cmd_dual_frame(args):
    _, _, basis, cert = _certificate(args)
    frame = dual_frame(cert, basis)
    prefix = Path(args.prefix)
    prefix.with_suffix(".csv").write_text(frame.to_csv())
    prefix.with_suffix(".json").write_text(gio.dumps(cert.to_dict()))
    _emit(args, {"frame_csv": str(prefix.with_suffix(".csv")), "certificate": cert.to_dict()})


def cmd_reconstruct(args):
    g, _, basis, cert = _certificate(args)
    frame = dual_frame(cert, basis)
    if args.samples is not None:
        full = gio.read_signal(args.samples, g.vertex_count) if args.samples_full else None
        if full is None:
            values = gio.read_samples(args.samples)
        else:
            values = full[list(frame.S)]
    else:
        args.random_pw = True
        full = _signal(args, g, basis, args.omega)
        values = full[list(frame.S)]
    rec = reconstruct(values, frame)
    if args.signal_out:
        Path(args.signal_out).write_text(gio.format_signal(rec))
    rep = {"certificate": cert.to_dict(), "out_of_band_energy": out_of_band_energy(rec, args.omega, basis)}
    if full is not None:
        rep["relative_residual"] = float(np.linalg.norm(rec - full) / max(np.linalg.norm(full), 1e-300))
    _emit(args, rep)


def _kernel_for(args):
    n = args.kernel_n if args.kernel_n is not None else default_order(args.order_m)
    return kernel(n)


def cmd_filter(args):
    g, _ = _load_graph(args)
    basis = eigendecompose(g)
    f = _signal(args, g)
    k_ = _kernel_for(args)
    out = filter_Q(f, args.omega, k_, basis) if args.order_m == 0 else filter_P(f, args.omega, args.order_m, k_, basis)
    if args.signal_out:
        Path(args.signal_out).write_text(gio.format_signal(out))
    leak = out_of_band_energy(out, args.omega, basis)
    rel = float(np.sqrt(leak) / max(np.linalg.norm(out), 1e-300))
    rep = {"omega": args.omega, "m": args.order_m, "kernel_n": k_.n, "relative_out_of_band": rel}
    if args.report:
        rep["bernstein"] = bernstein_check(out, args.omega, 6, basis, tol=1e-8)
    _emit(args, rep)
    _require(rel < 1e-8, "filter output is not in PW_omega")


def cmd_approx_report(args):
    g, _ = _load_graph(args)
    basis = eigendecompose(g)
    f = _signal(args, g)
    rep = direct_approx_report(f, args.omega, args.order_m, args.k, _kernel_for(args), basis)
    _emit(args, rep.to_dict())
    _require(rep.lower_holds, "E(f, omega) <= ||P f - f||")
    _require(rep.upper_holds, "||P f - f|| <= C / omega^k * Omega_{m-k}(L^k f, 1/omega)")


def cmd_sparse_approx(args):
    g, _, basis, cert = _certificate(args)
    frame = dual_frame(cert, basis)
    f = _signal(args, g)
    approx, rep = sparse_approx(f, cert, frame, args.omega, args.order_m, _kernel_for(args), basis, k=args.k)
    if args.signal_out:
        Path(args.signal_out).write_text(gio.format_signal(approx))
    _emit(args, {"certificate": cert.to_dict(), "report": rep.to_dict()})
    _require(rep.lower_holds, "||f - sum f_omega(u) Theta_u|| <= ||f - sum P f(u) Theta_u||")
    _require(rep.upper_holds, "||f - sum P f(u) Theta_u|| <= C / omega^k * Omega_{m-k}(L^k f, 1/omega)")


def cmd_repro(args):
    which = args.which
    if which == "star":
        rep = repro.star_examples(args.n or 10)
    elif which == "hub-cycle":
        rep = repro.hub_cycle_example(args.n or 12)
    elif which == "path":
        rep = repro.path_sampling_example(args.n or 1001, seed=args.seed)
    else:
        rep = repro.lattice_sampling_example(args.n or 20, seed=args.seed)
    _emit(args, rep)
    _require(rep["holds"], f"reproduction {which!r} failed")


COMMANDS = {
    "spectrum": cmd_spectrum,
    "geometry": cmd_geometry,
    "poincare": cmd_poincare,
    "pp": cmd_pp,
    "certify": cmd_certify,
    "dual-frame": cmd_dual_frame,
    "reconstruct": cmd_reconstruct,
    "filter": cmd_filter,
    "approx-report": cmd_approx_report,
    "sparse-approx": cmd_sparse_approx,
    "repro-examples": cmd_repro,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpw", description="Sampling and filtering of Paley-Wiener signals on graphs")
    sub = p.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="tolerance override (else $GPW_TOL)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", help="edge-list file")
    graph.add_argument("--torus", help="periodic lattice, e.g. 16x16")
    graph.add_argument("--family", choices=sorted(FAMILIES))
    graph.add_argument("--size", type=int)
    graph.add_argument("--signal", help="signal CSV (vertex,re[,im]); random if omitted")
    graph.add_argument("--signal-out", help="write the output signal as CSV")

    subset = argparse.ArgumentParser(add_help=False)
    subset.add_argument("--set", default="evens", help="evens | odds | all | pattern | 0,2,4 | @file")
    subset.add_argument("--level", type=int, default=None)

    band = argparse.ArgumentParser(add_help=False)
    band.add_argument("--omega", type=float, required=True)

    filt = argparse.ArgumentParser(add_help=False)
    filt.add_argument("--order-m", type=int, default=1)
    filt.add_argument("--kernel-n", type=int, default=None)
    filt.add_argument("--k", type=int, default=0)

    sub.add_parser("spectrum", parents=[common, graph])
    sub.add_parser("geometry", parents=[common, graph, subset])
    sp = sub.add_parser("poincare", parents=[common, graph, subset])
    sp.add_argument("--form", choices=["iterated", "single", "power"], default="iterated")
    sp.add_argument("--r", type=int, default=1)
    sub.add_parser("pp", parents=[common, graph, subset, band])
    sub.add_parser("certify", parents=[common, graph, subset, band])
    sp = sub.add_parser("dual-frame", parents=[common, graph, subset, band])
    sp.add_argument("--prefix", required=True, help="writes PREFIX.csv and PREFIX.json")
    sp = sub.add_parser("reconstruct", parents=[common, graph, subset, band])
    sp.add_argument("--samples", help="CSV vertex,re[,im] over S")
    sp.add_argument("--samples-full", action="store_true", help="--samples holds the full signal")
    sp = sub.add_parser("filter", parents=[common, graph, band, filt])
    sp.add_argument("--report", action="store_true", help="include a Bernstein check of the output")
    sub.add_parser("approx-report", parents=[common, graph, band, filt])
    sub.add_parser("sparse-approx", parents=[common, graph, subset, band, filt])
    sp = sub.add_parser("repro-examples", parents=[common])
    sp.add_argument("which", choices=["star", "hub-cycle", "path", "lattice"])
    sp.add_argument("--n", type=int, default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.random_pw = getattr(args, "random_pw", False)
    try:
        COMMANDS[args.verb](args)
    except AssertionFailure as exc:
        print(f"gpw: assertion failed: {exc}", file=sys.stderr)
        return 2
    except (GPWError, OSError) as exc:
        print(f"gpw: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
