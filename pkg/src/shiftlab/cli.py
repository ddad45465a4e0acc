"""Command-line front end: parses map/config files, dispatches analyses,
writes CSV/PGM artifacts and short human-readable summaries.

Exit codes: 0 success, 1 usage error, 2 a checked claim failed.
Identical config + seed produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import filtration as filt
from . import green as gr
from . import ktilde as kt
from . import strips as st
from . import translation as tr
from . import unstable as un
from .maps import ShiftComposition, flagship_map, load_map, parse_complex

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def emit_pgm(grid, path) -> None:
    """Binary PGM (P5, maxval 255), row-major, one byte per pixel."""
    arr = np.asarray(grid)
    if arr.ndim != 2:
        raise ValueError("PGM grid must be 2-d")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("PGM labels must lie in 0..255")
    h, w = arr.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(arr.astype(np.uint8).tobytes())


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise ValueError("not a binary PGM")
    parts = data.split(b"\n", 3)
    w, h = (int(s) for s in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8, count=w * h).reshape(h, w)


def write_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in rows:
            writer.writerow(row)


def read_config(path) -> dict:
    """Flat key=value text config; complex as re,im; rationals as num/den."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val
    return out


def _parse_point(text: str) -> np.ndarray:
    vals = [float(s) for s in text.split(",")]
    if len(vals) % 2 != 0:
        raise ValueError("point needs an even count of reals: re,im pairs")
    return np.array([complex(vals[2 * i], vals[2 * i + 1]) for i in range(len(vals) // 2)])


def _parse_rational_point(text: str) -> tr.RegionPoint:
    parts = text.split(",")
    if len(parts) % 2 != 0:
        raise ValueError("rational point needs re,im pairs (num/den each)")
    vals = [Fraction(s) for s in parts]
    half = len(vals) // 2
    return tr.RegionPoint(tuple(vals[0::2]), tuple(vals[1::2]))


def _fmt_c(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _load_map_arg(args) -> ShiftComposition:
    if getattr(args, "map", None) is None:
        return flagship_map()
    path = Path(args.map)
    if not path.exists():
        raise _UsageError(f"map file not found: {path}")
    return load_map(path)


def _load_series(args) -> un.UnstableSeries:
    path = Path(args.series)
    if not path.exists():
        raise _UsageError(f"series file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        return un.parse_unstable(fh.read())


def _build_series(F, args) -> un.UnstableSeries:
    if getattr(args, "series", None):
        return _load_series(args)
    points = un.find_fixed_points(F, search_box=getattr(args, "box", 5.0), seed=0)
    for a in points:
        S = un.classify_saddle(F, a)
        if S.type_ok:
            return un.sternberg_series(F, S, N=getattr(args, "N", 40))
    raise CheckFailed("no one-expanding saddle found for this map")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(args):
    F = _load_map_arg(args)
    if args.selftest:
        w = flagship_map(c=0).eval([1, 2, 3])
        assert np.allclose(w, [2, 3, 10])
        print("selftest eval: PASS")
        return EXIT_OK
    z = _parse_point(args.point)
    w = F.eval(z) if args.direction == "forward" else F.eval_inverse(z)
    print("(" + ", ".join(_fmt_c(c) for c in w) + ")")
    return EXIT_OK


def _cmd_orbit(args):
    F = _load_map_arg(args)
    if args.selftest:
        z = np.array([0, 0, 2.0 + 0j])
        w = F.iterate(z, 2)
        assert np.isfinite(w).all()
        print("selftest orbit: PASS")
        return EXIT_OK
    z = _parse_point(args.point)
    rows = [("n", "norm") + tuple(f"z{i+1}_{part}" for i in range(F.k) for part in ("re", "im"))]
    w = z
    for n in range(args.steps + 1):
        flat = tuple(f"{val:.17g}" for c in w for val in (c.real, c.imag))
        rows.append((n, f"{np.max(np.abs(w)):.17g}") + flat)
        if n < args.steps:
            w = F.eval(w) if args.direction == "forward" else F.eval_inverse(w)
    if args.out:
        write_csv(args.out, rows)
        print(f"wrote {args.out}")
    else:
        for row in rows[: min(len(rows), 12)]:
            print(",".join(str(x) for x in row))
    return EXIT_OK


def _cmd_filtration(args):
    F = _load_map_arg(args)
    params = filt.FiltrationParams(R=args.R, R_escape=args.R_escape, N_max=args.N_max)
    if args.selftest:
        assert filt.classify_point(np.zeros(F.k), params) == 0
        z = np.zeros(F.k, dtype=complex)
        z[-1] = 2 * args.R
        assert filt.classify_point(z, params) == F.k
        print("selftest filtration: PASS")
        return EXIT_OK
    z = _parse_point(args.point)
    tag = filt.classify_point(z, params)
    name = "V" if tag == 0 else f"V{tag}"
    extra = " (V+)" if filt.is_v_plus(tag, F.k) else (" (V-)" if filt.is_v_minus(tag, F.k) else "")
    res = filt.escape_test(F, z, params, args.direction)
    verdict = f"Escaped(n={res.n})" if res.escaped else "Bounded"
    print(f"region={name}{extra} {args.direction}:{verdict} max_seen={res.max_seen:.6g}")
    return EXIT_OK


def _cmd_thm13_verify(args):
    F = _load_map_arg(args)
    params = filt.FiltrationParams(R=args.R, N_max=args.N_max)
    if args.selftest:
        C = filt.growth_constants(flagship_map(), 0.5, 1.0)
        assert abs(C.C_plus(2) - 1.5) < 1e-12  # m=1: empty degree products
        print("selftest thm13-verify: PASS")
        return EXIT_OK
    cal = filt.calibrate_growth_offset(F, params, args.eps, samples=args.samples, seed=args.seed)
    if not cal.certified:
        print(f"offset calibration failed: {cal.note}")
        return EXIT_CHECK_FAILED
    C = filt.growth_constants(F, args.eps, max(cal.M, args.M_floor))
    pts = filt._default_backward_bounded_sampler(F, params, args.samples, args.seed + 1)
    total_viol = 0
    all_rows = [("j", "n", "lhs", "rhs", "margin", "pass")]
    for z in pts:
        rep = filt.verify_growth_bounds(F, z, C, args.n_max, params)
        total_viol += len(rep.violations)
        rows = list(rep.csv_rows())[1:]
        all_rows.extend(rows)
    if args.out:
        write_csv(args.out, all_rows)
    print(f"M={C.M:.6g} points={len(pts)} violations={total_viol}")
    return EXIT_OK if total_viol == 0 else EXIT_CHECK_FAILED


def _cmd_green_slice(args):
    F = _load_map_arg(args)
    gp = gr.GreenParams(R_escape=args.R_escape, N_max=args.N_max)
    if args.selftest:
        v = gr.green_plus(flagship_map(alpha=0.5, c=0), np.array([0, 0, 1e6]), gp)
        assert abs(v - math.log(1e6)) < 0.01
        print("selftest green-slice: PASS")
        return EXIT_OK
    base = _parse_point(args.base)
    direction = _parse_point(args.dir)
    ss = np.linspace(0.0, args.t_max, args.n)
    pts = base[None, :] + ss[:, None] * direction[None, :]
    vals = gr.green_plus_batch(F, pts, gp)
    rows = [("s", "gplus")]
    rows += [(f"{s:.17g}", f"{v:.17g}") for s, v in zip(ss, vals)]
    if args.out:
        write_csv(args.out, rows)
        print(f"wrote {args.out}")
    else:
        for row in rows[:12]:
            print(",".join(row if isinstance(row, str) else map(str, row)))
    return EXIT_OK


def _cmd_saddles(args):
    F = _load_map_arg(args)
    if args.selftest:
        pts = un.find_fixed_points(flagship_map(), n_starts=40)
        assert len(pts) >= 2
        print("selftest saddles: PASS")
        return EXIT_OK
    pts = un.find_fixed_points(F, search_box=args.box, newton_tol=args.tol, seed=args.seed)
    print(f"found {len(pts)} fixed point(s)")
    for a in pts:
        S = un.classify_saddle(F, a)
        mods = ", ".join(f"{abs(e):.6g}" for e in S.eigenvalues)
        kind = "saddle(k-1,1)" if S.type_ok else "other"
        print(f"  a=({', '.join(_fmt_c(c) for c in a)}) |eigs|=[{mods}] {kind}")
    return EXIT_OK


def _cmd_unstable(args):
    F = _load_map_arg(args)
    if args.selftest:
        F0 = flagship_map()
        a = np.array([math.sqrt(6.0)] * 3)
        H = un.sternberg_series(F0, un.classify_saddle(F0, a), N=18)
        assert np.max(np.abs(un.eval_unstable(H, F0, 0.0) - a)) < 1e-12
        print("selftest unstable: PASS")
        return EXIT_OK
    H = _build_series(F, args)
    res = un.conjugacy_residual(H, F, H.rho0, samples=args.samples)
    print(f"lam={_fmt_c(H.lam)} rho0={H.rho0:.6g} residual(rho0)={res:.3e}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(un.serialize_unstable(H))
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_order(args):
    F = _load_map_arg(args)
    if args.selftest:
        radii = np.geomspace(1.0, 1e4, 10)
        gs = gr.GrowthSample(radii, radii ** 0.7)
        est = gr.order_estimate(gs)
        assert abs(est.rho - 0.7) < 1e-3
        print("selftest order: PASS")
        return EXIT_OK
    H = _build_series(F, args)
    gp = gr.GreenParams(N_max=args.N_max)
    la = abs(H.lam)
    radii = np.geomspace(la, la ** args.max_power, args.n_radii)
    gs = gr.growth_sample_level(lambda ts: gr.u_plus_batch(F, H, ts, gp), radii,
                                n_angles=args.angles, self_check=True)
    est = gr.order_estimate(gs)
    expected = math.log(F.degree) / math.log(la)
    print(f"order={est.rho:.6g} expected={expected:.6g} residual={est.residual:.3g} "
          f"angle_check={gs.angle_doubling_delta:.3g}")
    if args.out:
        write_csv(args.out, list(gs.csv_rows()))
        print(f"wrote {args.out}")
    ok = abs(est.rho - expected) <= args.rel_tol * expected
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_ktilde(args):
    F = _load_map_arg(args)
    if args.selftest:
        mask = np.zeros((33, 33), dtype=bool)
        mask[16, 16] = True
        ch = kt.synthetic_chart(mask, 1.0, 2.0)
        kt.complement_components(ch)
        assert ch.qprime == 1
        print("selftest ktilde: PASS")
        return EXIT_OK
    H = _build_series(F, args)
    gp = gr.GreenParams(N_max=args.N_max)
    chart = kt.ktilde_grid(F, H, args.radius, args.resolution, args.threshold, gp)
    kt.complement_components(chart)
    if chart.n_components > 255:
        print(f"{chart.n_components} components exceed the 255-label PGM budget")
        return EXIT_CHECK_FAILED
    grid = np.where(chart.membership, 0, chart.labels)
    emit_pgm(grid, args.out)
    print(f"wrote {args.out} (components={chart.n_components} qprime={chart.qprime})")
    sidecar = str(args.out) + ".csv"
    try:
        rd = kt.rotation_data(chart)
        write_csv(sidecar, list(rd.csv_rows()))
        print(f"wrote {sidecar} (p'={rd.pprime} q'={rd.qprime} N={rd.N} p={rd.p} q={rd.q})")
    except kt.RotationError as err:
        write_csv(sidecar, [("error",), (str(err),)])
        print(f"rotation data unavailable: {err}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _cmd_yoccoz(args):
    if args.selftest:
        res = kt.yoccoz_check(math.log(3.0), 0, 1, 1, 2)
        assert res.holds
        print("selftest yoccoz: PASS")
        return EXIT_OK
    tau = parse_complex(args.tau)
    res = kt.yoccoz_check(tau, args.p, args.q, args.N, args.d)
    print(f"lhs={res.lhs:.6g} rhs={res.rhs:.6g} holds={str(res.holds).lower()}")
    return EXIT_OK if res.holds else EXIT_CHECK_FAILED


def _cmd_translation(args):
    if args.selftest:
        z = tr.region_point([Fraction(5), Fraction(5), Fraction(5)])
        w = tr.apply_Pn(z, 1)
        assert w.re == (Fraction(4), Fraction(4), Fraction(4))
        print("selftest translation: PASS")
        return EXIT_OK
    z = _parse_rational_point(args.point)
    if args.op == "S":
        w = tr.apply_S(z)
        print("S(z) re = (" + ", ".join(str(x) for x in w.re) + ")")
    elif args.op == "T":
        w = tr.apply_T(z)
        if w is None:
            print("not in the image domain")
            return EXIT_CHECK_FAILED
        print("T(z) re = (" + ", ".join(str(x) for x in w.re) + ")")
    elif args.op == "range-oracle":
        verdict = tr.translation_range_oracle(z, Fraction(args.eps_rat))
        print(f"verdict={verdict.kind}" + (
            f" witness re=({', '.join(str(x) for x in verdict.witness.re)})"
            if verdict.witness else ""))
    elif args.op == "budget":
        cert = tr.budget_certificate(z, Fraction(args.eps_rat), args.n)
        print(f"certified={str(cert.certified).lower()} radius={cert.final_radius} "
              f"bound={cert.bound}")
        if not cert.certified:
            return EXIT_CHECK_FAILED
    elif args.op == "thm11":
        u = z.as_complex()
        verdict = tr.polydisc_range_oracle(u, args.eps, args.n)
        extra = ""
        if verdict.kind == "witness":
            extra = (" v=(" + ", ".join(_fmt_c(c) for c in verdict.witness)
                     + f") case={verdict.case} multiplicity={verdict.multiplicity}")
        print(f"verdict={verdict.kind} alpha={verdict.alpha:.6g} m={verdict.m}" + extra)
    elif args.op == "appendix":
        a = [Fraction(s) for s in args.walls.split(",")]
        lam = [Fraction(s) for s in args.lams.split(",")]
        vec = tr.tube_translation_vector(z, a, Fraction(args.delta_rat), lam)
        print("boundary" if vec is None else
              "translation = (" + ", ".join(str(x) for x in vec) + ")")
    return EXIT_OK


def _cmd_strips(args):
    if args.selftest:
        cfg = st.StripConfig(a=1, K=1, M=16, k=3)
        cert = st.verify_bounded([("E", 0, 1)] * 3, cfg, steps=10)
        assert cert.certified
        print("selftest strips: PASS")
        return EXIT_OK
    cfg = st.StripConfig(a=Fraction(args.a), K=args.K, M=Fraction(args.M), k=args.k)
    product = []
    for token in args.product.split(","):
        parts = token.strip().split(":")
        if parts[0] == "V":
            product.append(("V", int(parts[1])))
        elif parts[0] in ("D", "E"):
            product.append((parts[0], int(parts[1]), int(parts[2])))
        else:
            raise _UsageError(f"bad product token {token!r}")
    if all(spec[0] == "E" for spec in product):
        cert = st.verify_bounded(product, cfg, steps=args.steps)
    else:
        cert = st.verify_escape(product, cfg, steps=args.steps)
    print(f"kind={cert.kind} certified={str(cert.certified).lower()} "
          + (cert.conclusion if cert.certified else cert.failure))
    if args.out:
        write_csv(args.out, list(cert.csv_rows()))
        print(f"wrote {args.out}")
    return EXIT_OK if cert.certified else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def _add_common(sp, *names):
    if "map" in names:
        sp.add_argument("--map", help="map description file (default: built-in demo map)")
    if "series" in names:
        sp.add_argument("--series", help="serialized unstable-series file")
    if "seed" in names:
        sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--selftest", action="store_true", help="run built-in examples")


def build_parser() -> _Parser:
    parser = _Parser(prog="shiftlab", description=__doc__)
    parser.add_argument("--config", help="flat key=value config file (defaults for flags)")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("eval", help="evaluate the map at a point")
    _add_common(sp, "map")
    sp.add_argument("--point", default="0,0,0,0,0,0")
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("orbit", help="finite orbit as CSV")
    _add_common(sp, "map")
    sp.add_argument("--point", default="0,0,0,0,0,0")
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_orbit)

    sp = sub.add_parser("filtration", help="region tag and escape classification")
    _add_common(sp, "map")
    sp.add_argument("--point", default="0,0,0,0,0,0")
    sp.add_argument("--R", type=float, default=10.0)
    sp.add_argument("--R-escape", dest="R_escape", type=float, default=None)
    sp.add_argument("--N-max", dest="N_max", type=int, default=200)
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.set_defaults(func=_cmd_filtration)

    sp = sub.add_parser("thm13-verify", help="verify double-sided orbit growth bounds")
    _add_common(sp, "map", "seed")
    sp.add_argument("--eps", type=float, default=0.5)
    sp.add_argument("--n-max", dest="n_max", type=int, default=6)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--R", type=float, default=10.0)
    sp.add_argument("--N-max", dest="N_max", type=int, default=200)
    sp.add_argument("--M-floor", dest="M_floor", type=float, default=1.0)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_thm13_verify)

    sp = sub.add_parser("green-slice", help="escape rate along a line segment")
    _add_common(sp, "map")
    sp.add_argument("--base", default="0,0,0,0,0,0")
    sp.add_argument("--dir", default="0,0,0,0,1,0")
    sp.add_argument("--t-max", dest="t_max", type=float, default=10.0)
    sp.add_argument("--n", type=int, default=101)
    sp.add_argument("--R-escape", dest="R_escape", type=float, default=1e6)
    sp.add_argument("--N-max", dest="N_max", type=int, default=200)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_green_slice)

    sp = sub.add_parser("saddles", help="fixed points and their eigenvalue types")
    _add_common(sp, "map", "seed")
    sp.add_argument("--box", type=float, default=5.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=_cmd_saddles)

    sp = sub.add_parser("unstable", help="build/serialize the unstable-manifold series")
    _add_common(sp, "map", "series")
    sp.add_argument("--N", type=int, default=40)
    sp.add_argument("--box", type=float, default=5.0)
    sp.add_argument("--samples", type=int, default=128)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_unstable)

    sp = sub.add_parser("order", help="growth order of the pulled-back escape rate")
    _add_common(sp, "map", "series")
    sp.add_argument("--N", type=int, default=40)
    sp.add_argument("--box", type=float, default=5.0)
    sp.add_argument("--max-power", dest="max_power", type=float, default=8.0)
    sp.add_argument("--n-radii", dest="n_radii", type=int, default=12)
    sp.add_argument("--angles", type=int, default=128)
    sp.add_argument("--N-max", dest="N_max", type=int, default=120)
    sp.add_argument("--rel-tol", dest="rel_tol", type=float, default=0.05)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_order)

    sp = sub.add_parser("ktilde", help="chart the bounded parameter set (PGM + rotation CSV)")
    _add_common(sp, "map", "series")
    sp.add_argument("--N", type=int, default=40)
    sp.add_argument("--box", type=float, default=5.0)
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--resolution", type=int, default=129)
    sp.add_argument("--threshold", type=float, default=1e-6)
    sp.add_argument("--N-max", dest="N_max", type=int, default=200)
    sp.add_argument("--out", default="ktilde.pgm")
    sp.set_defaults(func=_cmd_ktilde)

    sp = sub.add_parser("yoccoz", help="Yoccoz-type inequality check")
    sp.add_argument("--tau", default="1.0986122886681098,0")
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--selftest", action="store_true")
    sp.set_defaults(func=_cmd_yoccoz)

    sp = sub.add_parser("translation", help="exact translation-system operations")
    sp.add_argument("--op", choices=("S", "T", "range-oracle", "thm11", "appendix", "budget"),
                    default="S")
    sp.add_argument("--point", default="1/2,0,1/2,0,-1/2,0",
                    help="rational re,im pairs (num/den)")
    sp.add_argument("--eps-rat", dest="eps_rat", default="1/4", help="rational eps")
    sp.add_argument("--eps", type=float, default=0.5, help="float eps (thm11)")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--walls", default="0,0,0", help="appendix wall positions a_j")
    sp.add_argument("--lams", default="1,1,1", help="appendix translation amounts")
    sp.add_argument("--delta-rat", dest="delta_rat", default="1/8")
    sp.add_argument("--selftest", action="store_true")
    sp.set_defaults(func=_cmd_translation)

    sp = sub.add_parser("strips", help="strip/disc interval certificates")
    sp.add_argument("--product", default="E:0:1,E:0:1,E:0:1",
                    help="comma list of V:l, D:n:l, E:n:l tokens")
    sp.add_argument("--a", default="1")
    sp.add_argument("--K", type=int, default=1)
    sp.add_argument("--M", default="16")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--steps", type=int, default=50)
    sp.add_argument("--out")
    sp.add_argument("--selftest", action="store_true")
    sp.set_defaults(func=_cmd_strips)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return EXIT_USAGE
        if args.config:
            cfg = read_config(args.config)
            for key, val in cfg.items():
                attr = key.replace("-", "_")
                if hasattr(args, attr) and f"--{key}" not in argv and f"--{attr}" not in argv:
                    cur = getattr(args, attr)
                    setattr(args, attr, type(cur)(val) if cur is not None else val)
        return args.func(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as err:
        print(f"check failed: {err}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
