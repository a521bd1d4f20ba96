"""Command-line front end.

    pdmosc trajectory | semiclassical | spectrum | bethe | oracle | compare [flags]

Exit status: 0 success, 1 usage error, 2 domain or constraint error,
3 convergence failure (including a failed oracle comparison).
"""

import argparse
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bethe, classical, io, oracle, quantum_higgs, semiclassical
from .errors import ConvergenceError, DomainError
from .params import OrderingParameters, Potential, SpectrumEntry, SystemParams

COMMANDS = ("trajectory", "semiclassical", "spectrum", "bethe", "oracle", "compare")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    params: dict
    ordering: dict
    sector: dict
    numeric: dict
    output: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _half(text):
    return float(text) if "." in text else (0.5 if text == "1/2" else float(text))


def build_parser():
    p = _Parser(prog="pdmosc", description="Position-dependent-mass oscillator solvers.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, system=True):
        sp.add_argument("--k", type=float, default=0.0)
        sp.add_argument("--omega0", type=_positive, default=1.0)
        sp.add_argument("--hbar", type=_positive, default=1.0)
        if system:
            sp.add_argument("--system", choices=["higgs", "v2"], default="higgs")
        sp.add_argument("--dim", type=int, choices=[1, 3], default=1)
        sp.add_argument("--format", choices=["csv", "json"], default="json")
        sp.add_argument("--output", default="-")
        sp.add_argument("--json", action="store_true",
                        help="emit JSON including the resolved run configuration")

    def ordering(sp):
        sp.add_argument("--alpha-bar", type=float, default=0.0)
        sp.add_argument("--gamma-bar", type=float, default=0.0)
        sp.add_argument("--alphagamma-bar", type=float, default=0.0)

    t = sub.add_parser("trajectory", help="classical orbit (closed form or RK4)")
    common(t)
    t.add_argument("--A", type=float, default=1.0, help="amplitude")
    t.add_argument("--phase", type=float, default=0.0)
    t.add_argument("--t-end", type=_positive, default=10.0)
    t.add_argument("--samples", type=_nonneg_int, default=101)
    t.add_argument("--form", choices=["sn", "landen"], default="sn")
    t.add_argument("--integrate", action="store_true", help="use RK4 instead of the closed form")
    t.add_argument("--step", type=_positive, default=1e-3)
    t.add_argument("--C2", type=float, default=0.2)
    t.add_argument("--C3", type=float, default=1.0)
    t.set_defaults(format="csv")

    s = sub.add_parser("semiclassical", help="Bohr-Sommerfeld levels")
    common(s)
    s.add_argument("--levels", type=_nonneg_int, default=3)
    s.add_argument("--l", type=_nonneg_int, default=0)

    q = sub.add_parser("spectrum", help="exact Higgs spectra and eigenfunctions")
    common(q)
    ordering(q)
    q.add_argument("--levels", type=_nonneg_int, default=3)
    q.add_argument("--l", type=_nonneg_int, default=0)
    q.add_argument("--psi", type=_nonneg_int, default=None,
                   help="emit the eigenfunction of this level on a grid instead")
    q.add_argument("--x-min", type=float, default=None)
    q.add_argument("--x-max", type=float, default=None)
    q.add_argument("--points", type=_nonneg_int, default=201)

    b = sub.add_parser("bethe", help="quasi-exact V2 states")
    common(b, system=False)
    b.add_argument("--n", type=_nonneg_int, default=0)
    b.add_argument("--l", type=_half, default=0.0)
    b.add_argument("--mu", type=float, default=None, help="solve the root equation only")
    b.add_argument("--gamma-bar", type=float, default=0.0)
    b.add_argument("--root", type=_nonneg_int, default=None)

    o = sub.add_parser("oracle", help="finite-difference eigenvalues")
    common(o)
    ordering(o)
    o.add_argument("--levels", type=_nonneg_int, default=3)
    o.add_argument("--l", type=_nonneg_int, default=0)
    o.add_argument("--N", type=int, default=2000)
    o.add_argument("--S", type=_positive, default=None)
    o.add_argument("--L", type=_positive, default=None)
    o.add_argument("--mapping", choices=["linear", "tan", "tanh"], default=None)
    o.add_argument("--no-richardson", action="store_true")

    c = sub.add_parser("compare", help="analytic versus oracle spectra")
    common(c)
    ordering(c)
    c.add_argument("--levels", type=_nonneg_int, default=3)
    c.add_argument("--l", type=_nonneg_int, default=0)
    c.add_argument("--tol", type=_positive, default=1e-4)
    c.add_argument("--N", type=int, default=2000)
    c.add_argument("--S", type=_positive, default=None)
    c.add_argument("--L", type=_positive, default=None)
    return p


def _config(args):
    d = vars(args).copy()
    params = {k: d.pop(k) for k in ("k", "omega0", "hbar") if k in d}
    params["potential"] = d.pop("system", "v2" if args.command == "bethe" else "higgs")
    ordering = {k: d.pop(k) for k in ("alpha_bar", "gamma_bar", "alphagamma_bar") if k in d}
    sector = {k: d.pop(k) for k in ("dim", "n", "l", "levels", "psi", "root", "mu") if k in d}
    output = {k: d.pop(k) for k in ("format", "output", "json") if k in d}
    command = d.pop("command")
    numeric = {k: v for k, v in d.items() if v is not None}
    for key in ("tol", "step"):
        if key in numeric and not numeric[key] > 0:
            raise DomainError(f"{key} must be positive")
    return RunConfig(command, params, ordering, sector, numeric, output)


def _params(cfg):
    p = cfg.params
    return SystemParams(p["k"], p["omega0"], p["hbar"], Potential(p["potential"]))


def _ordering(cfg):
    o = cfg.ordering
    return OrderingParameters(o.get("alpha_bar", 0.0), o.get("gamma_bar", 0.0),
                              o.get("alphagamma_bar", 0.0))


def _grid_kwargs(cfg, params):
    kw = {}
    if params.k < 0:
        # V2 states die quickly near the edge of the domain; a shorter tanh span
        # keeps the grid where they live
        default = 12.0 if params.potential is Potential.NONPOLYNOMIAL else 40.0
        kw["S"] = cfg.numeric.get("S", default)
    if params.k == 0 or cfg.numeric.get("mapping") == "linear":
        kw["L"] = cfg.numeric.get("L")
    if cfg.numeric.get("mapping"):
        kw["mapping"] = cfg.numeric["mapping"]
    return kw


def _spectrum_result(entries):
    return {"csv": io.spectrum_csv(entries), "json": [e.to_dict() for e in entries]}


def run_trajectory(cfg):
    params = _params(cfg)
    num, sec = cfg.numeric, cfg.sector
    t = np.linspace(0.0, num["t_end"], max(num["samples"], 2))
    if sec["dim"] == 3:
        if params.potential is not Potential.HIGGS:
            raise DomainError("3D radial closed form exists for the Higgs system only")
        consts = classical.Radial3DConstants.from_integrals(num["C2"], num["C3"], params)
        r, rdot = classical.radial3d_trajectory(consts, params, t, num["phase"])
        eps = classical.radial_first_integral(r, rdot, num["C2"], params)
        rows = list(zip(t, r, rdot, eps))
        return {"csv": io.rows_csv(["t", "r", "rdot", "eps"], rows),
                "json": {"t": t, "r": r, "rdot": rdot, "eps": eps}}
    if num.get("integrate"):
        if params.potential is Potential.HIGGS:
            x0, v0 = classical.higgs_trajectory(num["A"], params, 0.0, num["phase"])
        else:
            x0, v0 = 0.0, num["A"] * params.omega0 / (1.0 + params.k * num["A"] ** 2)
        traj = classical.integrate_eom(params, float(x0), float(v0), num["t_end"], num["step"])
        stride = max(1, (traj.t.size - 1) // max(num["samples"] - 1, 1))
        traj = classical.Trajectory(traj.t[::stride], traj.x[::stride], traj.xdot[::stride],
                                    traj.eps[::stride])
    else:
        if params.potential is Potential.HIGGS:
            x, v = classical.higgs_trajectory(num["A"], params, t, num["phase"])
        else:
            x, v = classical.v2_trajectory(num["A"], params, t, num["form"])
        traj = classical.Trajectory(t, x, v, classical.first_integral(x, v, params))
    return {"csv": traj.to_csv(),
            "json": {"t": traj.t, "x": traj.x, "xdot": traj.xdot, "eps": traj.eps}}


def run_semiclassical(cfg):
    params = _params(cfg)
    n_max = cfg.sector["levels"] - 1
    if n_max < 0:
        return _spectrum_result([])
    if params.potential is Potential.HIGGS:
        if cfg.sector["dim"] == 1:
            energies = [semiclassical.higgs_semiclassical_energy(n, params) for n in range(n_max + 1)]
            l = 0
        else:
            l = cfg.sector["l"]
            energies = [semiclassical.higgs3d_semiclassical_energy(n, l, params)
                        for n in range(n_max + 1)]
        entries = [SpectrumEntry(n, l, E, "bound", "semiclassical") for n, E in enumerate(energies)]
    else:
        if cfg.sector["dim"] != 1:
            raise DomainError("semiclassical V2 is implemented in 1D only")
        levels = semiclassical.v2_semiclassical_spectrum(n_max, params)
        entries = [SpectrumEntry(lv.n, 0, lv.energy, "bound", "semiclassical") for lv in levels]
    return _spectrum_result(entries)


def run_spectrum(cfg):
    params, op = _params(cfg), _ordering(cfg)
    if params.potential is not Potential.HIGGS:
        raise DomainError("exact spectra are available for the Higgs system; use bethe for V2")
    sec = cfg.sector
    if sec.get("psi") is not None:
        return _wavefunction(cfg, params, op)
    n_max = sec["levels"] - 1
    if n_max < 0:
        return _spectrum_result([])
    if sec["dim"] == 1:
        entries = quantum_higgs.higgs1d_spectrum(n_max, op, params)
    else:
        entries = [SpectrumEntry(n, sec["l"], quantum_higgs.higgs3d_energy(n, sec["l"], op, params),
                                 "bound", "exact")
                   for n in range(n_max + 1) if quantum_higgs.higgs3d_bound(n, sec["l"], op, params)]
    return _spectrum_result(entries)


def _wavefunction(cfg, params, op):
    sec, num = cfg.sector, cfg.numeric
    n = sec["psi"]
    edge = 1.0 / math.sqrt(-params.k) if params.k < 0 else None
    if sec["dim"] == 1:
        lo = num.get("x_min", -0.999 * edge if edge else -5.0)
        hi = num.get("x_max", 0.999 * edge if edge else 5.0)
        x = np.linspace(lo, hi, max(num["points"], 2))
        y = quantum_higgs.higgs1d_wavefunction(n, op, params, x)
        header = ["x", "psi"]
    else:
        lo = num.get("x_min", 1e-3)
        hi = num.get("x_max", 0.999 * edge if edge else 5.0)
        x = np.linspace(lo, hi, max(num["points"], 2))
        y = quantum_higgs.higgs3d_radial(n, sec["l"], op, params, x)
        header = ["r", "chi"]
    return {"csv": io.rows_csv(header, zip(x, y)), "json": {header[0]: x, header[1]: y}}


def run_bethe(cfg):
    sec = cfg.sector
    dim, n, l = sec["dim"], sec["n"], sec["l"]
    variant = "nonhermitian-3D" if dim == 3 else "nonhermitian-1D"
    if sec.get("mu") is not None:
        roots = bethe.solve_roots(n, l, sec["mu"], variant)
        rows = [(i, j, z) for i, rs in enumerate(roots) for j, z in enumerate(rs)]
        return {"csv": io.rows_csv(["set", "index", "z"], rows),
                "json": {"n": n, "l": l, "mu": sec["mu"], "roots": roots}}
    params = _params(cfg)
    sets = range(len(bethe.solve_roots(n, l, params.mu, variant)))
    if sec.get("root") is not None:
        sets = [sec["root"]]
    sols = []
    for r in sets:
        op = bethe.bethe_ordering(n, l, params, cfg.ordering.get("gamma_bar", 0.0), r, dim)
        state = bethe.v2_state(n, l, op, params, dim, r)
        sols.append(state.solution)
    sols.sort(key=lambda s: s.energy)
    entries = [SpectrumEntry(s.n, s.l, s.energy, "bound", "bethe") for s in sols]
    return {"csv": io.spectrum_csv(entries), "json": [s.to_dict() for s in sols]}


def run_oracle(cfg):
    params, op = _params(cfg), _ordering(cfg)
    sec, num = cfg.sector, cfg.numeric
    if sec["levels"] < 1:
        return _spectrum_result([])
    l = sec["l"] if sec["dim"] == 3 else None
    vals = oracle.oracle_eigenvalues(params, op, sec["levels"], l, num.get("N", 2000),
                                     not num.get("no_richardson", False),
                                     **_grid_kwargs(cfg, params))
    entries = [SpectrumEntry(n, l or 0, float(E), "bound", "oracle") for n, E in enumerate(vals)]
    return _spectrum_result(entries)


def run_compare(cfg):
    params, op = _params(cfg), _ordering(cfg)
    sec, num = cfg.sector, cfg.numeric
    if params.potential is Potential.NONPOLYNOMIAL:
        return _compare_v2(cfg, params)
    n_max = sec["levels"] - 1
    if sec["dim"] == 1:
        analytic = quantum_higgs.higgs1d_spectrum(n_max, op, params)
        l = None
    else:
        l = sec["l"]
        analytic = [SpectrumEntry(n, l, quantum_higgs.higgs3d_energy(n, l, op, params))
                    for n in range(n_max + 1) if quantum_higgs.higgs3d_bound(n, l, op, params)]
    if not analytic:
        raise DomainError("no bound levels to compare")
    numeric = oracle.oracle_eigenvalues(params, op, len(analytic), l, num.get("N", 2000),
                                        **_grid_kwargs(cfg, params))
    report = oracle.compare_spectra(analytic, numeric, num["tol"], params, op)
    return {"json": report.to_dict(), "csv": _report_csv(report), "passed": report.passed}


def _compare_v2(cfg, params):
    sec, num = cfg.sector, cfg.numeric
    dim = sec["dim"]
    sectors = [(0, 0), (0, 0.5), (1, 0), (1, 0.5)] if dim == 1 else [(0, 0), (1, 0), (1, 1)]
    variant = "nonhermitian-3D" if dim == 3 else "nonhermitian-1D"
    levels, passed = [], True
    for n, l in sectors:
        for r in range(len(bethe.solve_roots(n, l, params.mu, variant))):
            op = bethe.bethe_ordering(n, l, params, cfg.ordering.get("gamma_bar", 0.0), r, dim)
            st = bethe.v2_state(n, l, op, params, dim, r)
            idx = bethe.node_index(n, l, st.solution.roots, params, dim)
            ev = oracle.oracle_eigenvalues(params, op, idx + 1, l if dim == 3 else None,
                                           num.get("N", 2000), **_grid_kwargs(cfg, params))
            rep = oracle.compare_spectra([st.energy], [ev[idx]], num["tol"])
            lv = rep.levels[0]
            lv.update({"n": n, "l": l, "root_set": r, "oracle_index": idx,
                       "ordering": op.to_dict()})
            levels.append(lv)
            passed &= rep.passed
    report = oracle.SpectrumComparison(levels, passed, num["tol"], params.to_dict(), {})
    return {"json": report.to_dict(), "csv": _report_csv(report), "passed": passed}


def _report_csv(report):
    keys = ["n", "l", "root_set"] if "root_set" in report.levels[0] else ["n"]
    keys += ["analytic", "numeric", "abs_err", "rel_err"]
    return io.rows_csv(keys, [[lv[k] for k in keys] for lv in report.levels])


_DISPATCH = {"trajectory": run_trajectory, "semiclassical": run_semiclassical,
             "spectrum": run_spectrum, "bethe": run_bethe, "oracle": run_oracle,
             "compare": run_compare}


def run(cfg):
    """Execute a RunConfig; returns (exit status, output text)."""
    if cfg.command not in _DISPATCH:
        raise UsageError(f"unknown command {cfg.command!r}")
    result = _DISPATCH[cfg.command](cfg)
    status = 0 if result.get("passed", True) else 3
    if cfg.output.get("json"):
        text = io.dumps({"config": cfg.to_dict(), "result": result["json"]})
    elif cfg.output.get("format") == "csv":
        text = result["csv"]
    else:
        text = io.dumps(result["json"])
    return status, text


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
        cfg = _config(args)
        status, text = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3
    dest = cfg.output.get("output", "-")
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
