"""Command-line front end: verifications, probes and report files.

Configuration may come from flags or a JSON file (--config); explicit flags
override file values.  All floats are printed with 9 significant digits.
Exit status: 0 when every asserted inequality holds, 1 when a verification
fails beyond tolerance, 2 for invalid configuration.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import bounds, compactness, counterexamples, fracderiv, fracint, funcspace

_HARD_DEFAULTS = {
    "alpha": 0.5,
    "p": 2.0,
    "interval": [0.0, 1.0],
    "mesh": 257,
    "grading": 1.0,
    "seed": 0,
    "cases": 100,
    "mode": None,
}


def _fmt(x):
    return f"{float(x):.9g}"


def _parse_real(text):
    """Real number accepting 'inf' for the essential-sup exponent."""
    if isinstance(text, (int, float)):
        return float(text)
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def _add_common(sp):
    sp.add_argument("--config", help="JSON file with defaults for any flag")
    sp.add_argument("--seed", type=int, help="base RNG seed for sweeps")
    sp.add_argument("--mesh", type=int, help="mesh size (>= 17)")
    sp.add_argument("--grading", type=float, help="mesh grading exponent")
    sp.add_argument("--out", help="output file path")
    sp.add_argument("--interval", type=float, nargs=2, metavar=("T0", "T1"))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fraclab",
        description="numerical laboratory for the fractional integral")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("integrate", help="apply the fractional integral to a CSV grid function")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--input", required=True)
    _add_common(sp)

    sp = sub.add_parser("derive", help="fractional derivative of a CSV grid function")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--kind", choices=["caputo", "rl"], default="caputo")
    sp.add_argument("--input", required=True)
    _add_common(sp)

    sp = sub.add_parser("norms", help="norm and distribution-function table")
    sp.add_argument("--input", required=True)
    sp.add_argument("--p", type=_parse_real, nargs="+")
    sp.add_argument("--levels", type=int, default=8)
    _add_common(sp)

    sp = sub.add_parser("verify", help="inequality sweeps over seeded functions")
    sp.add_argument("--mode", choices=["weak", "strong", "embedding", "into-itself"],
                    required=True)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--p", type=_parse_real)
    sp.add_argument("--q", type=_parse_real)
    sp.add_argument("--cases", type=int)
    _add_common(sp)

    sp = sub.add_parser("counterexample", help="build a sharpness witness and probe its divergence")
    sp.add_argument("--case", required=True, choices=list(counterexamples.CASE_IDS))
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--p", type=_parse_real)
    sp.add_argument("--eta", type=_parse_real, required=True)
    sp.add_argument("--beta", type=float, help="override the midpoint beta_eta")
    sp.add_argument("--eps-num", type=int, default=9)
    _add_common(sp)

    sp = sub.add_parser("compact", help="translation-modulus diagnostic or critical gap")
    sp.add_argument("--mode", choices=["simon", "gap"], required=True)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--p", type=_parse_real)
    sp.add_argument("--q", type=_parse_real)
    sp.add_argument("--members", type=int, default=20)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--h-num", type=int, default=8)
    _add_common(sp)

    sp = sub.add_parser("constants", help="tabulate the explicit constants")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--p", type=_parse_real)
    sp.add_argument("--grid", type=int, default=32)
    _add_common(sp)
    return parser


def _merge_config(args):
    """Fill unset flags from the JSON config, then from hard defaults."""
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            try:
                cfg = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config {args.config}: invalid JSON at "
                                 f"line {exc.lineno}, column {exc.colno}")
        if not isinstance(cfg, dict):
            raise ValueError(f"config {args.config}: top level must be an object")
    for key, value in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"config field {key!r} is not a flag of "
                             f"subcommand {args.command!r}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)
    for key, value in _HARD_DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if getattr(args, "mesh", None) is not None and args.mesh < 17:
        raise ValueError(f"mesh size must be >= 17, got {args.mesh}")
    return args


def _load_grid(args):
    f = funcspace.read_grid_csv(args.input)
    if f.nodes.size < 3:
        raise ValueError("input grid needs at least 3 nodes")
    return f


def _emit_grid(g, args):
    if args.out:
        funcspace.write_grid_csv(g, args.out)
        print(f"wrote {args.out}")
    else:
        for t, row in zip(g.nodes, g.values):
            print(",".join(_fmt(v) for v in (t, *row)))


def _cmd_integrate(args):
    f = _load_grid(args)
    _emit_grid(fracint.rl_integral_grid(f, args.alpha), args)
    return 0


def _cmd_derive(args):
    f = _load_grid(args)
    if args.kind == "caputo":
        g = fracderiv.caputo_derivative(f, args.alpha)
    else:
        g = fracderiv.rl_derivative(f, args.alpha)
    _emit_grid(g, args)
    return 0


def _cmd_norms(args):
    f = _load_grid(args)
    ps = args.p or [1.0, 2.0, math.inf]
    rows = []
    for p in ps:
        label = "inf" if math.isinf(p) else _fmt(p)
        rows.append(("lp_norm", label, lp := funcspace.lp_norm(f, p)))
        if not math.isinf(p):
            rows.append(("weak_lp", label, funcspace.weak_lp_quasinorm(f, p)))
    peak = funcspace.lp_norm(f, math.inf)
    for r in np.linspace(0.0, peak, args.levels + 1, endpoint=False)[1:]:
        rows.append(("distribution", _fmt(r), funcspace.distribution_function(f, float(r))))
    lines = [f"{kind},{param},{_fmt(val)}" for kind, param, val in rows]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("quantity,parameter,value\n")
            fh.writelines(line + "\n" for line in lines)
        print(f"wrote {args.out}")
    else:
        print("quantity,parameter,value")
        print("\n".join(lines))
    return 0


def _sweep_functions(args):
    t0, t1 = args.interval
    for i in range(args.cases):
        yield funcspace.random_piecewise_linear(
            args.seed + i, n=args.mesh, interval=(t0, t1))


def _cmd_verify(args):
    reports = []
    for i, f in enumerate(_sweep_functions(args)):
        seed = args.seed + i
        if args.mode == "weak":
            reports.append(bounds.verify_weak_type(f, args.alpha, args.p, seed=seed))
        elif args.mode == "strong":
            q = args.q if args.q is not None else args.p / (1.0 - args.p * args.alpha)
            reports.append(bounds.verify_strong_type(f, args.alpha, args.p, q, seed=seed))
        elif args.mode == "into-itself":
            reports.append(bounds.verify_into_itself(f, args.alpha, args.p, seed=seed))
        else:
            q = args.q if args.q is not None else 2.0 * args.p
            reports.extend(funcspace.embedding_check(f, args.p, q))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("[" + ",\n".join(r.to_json() for r in reports) + "]\n")
        print(f"wrote {args.out}")
    bad = [r for r in reports if not r.holds]
    print(f"{len(reports) - len(bad)}/{len(reports)} inequalities hold")
    for r in bad:
        print("VIOLATION: " + r.to_json(), file=sys.stderr)
    return 1 if bad else 0


def _cmd_counterexample(args):
    spec = counterexamples.CounterexampleSpec(
        args.case, args.p, args.alpha, args.eta, beta_eta=args.beta,
        t0=args.interval[0], t1=args.interval[1])
    f = counterexamples.make_counterexample(spec)
    eps = np.geomspace(1e-2, 1e-2 * 0.5 ** (args.eps_num - 1), args.eps_num)
    probe = counterexamples.divergence_probe(f, args.alpha, args.eta, eps)
    print(f"case {args.case}: beta_eta = {_fmt(spec.beta_eta)}, "
          f"input L^{_fmt(args.p)} norm = {_fmt(counterexamples.input_norm(spec, f))}")
    print(f"route {probe.route}: fitted slope {_fmt(probe.fitted_slope)}, "
          f"theoretical exponent {_fmt(probe.theoretical_exponent)}")
    if args.out:
        counterexamples.write_probe_csv(probe, args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_compact(args):
    t0, t1 = args.interval
    if args.mode == "gap":
        if args.n is None or args.m is None:
            raise ValueError("gap mode requires --n and --m")
        bound, measured = compactness.noncompact_gap(
            args.n, args.m, args.alpha, args.p, (t0, t1))
        payload = {"bound": float(bound), "measured": float(measured),
                   "n": args.n, "m": args.m, "alpha": args.alpha, "p": args.p}
        text = json.dumps(payload, sort_keys=True)
        print(f"bound {_fmt(bound)}, measured {_fmt(measured)}")
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            print(f"wrote {args.out}")
        return 0 if measured >= bound * (1.0 - 1e-6) else 1
    if args.q is None:
        raise ValueError("simon mode requires --q")
    members = [funcspace.random_piecewise_linear(args.seed + i, n=args.mesh,
                                                 interval=(t0, t1), knots=17)
               for i in range(args.members)]
    family = compactness.FamilySpec(
        members, args.p, seeds=list(range(args.seed, args.seed + args.members)))
    span = t1 - t0
    hs = span / 8.0 * 0.5 ** np.arange(args.h_num)
    report = compactness.simon_diagnostic(family, args.alpha, args.q, hs)
    for h, w in zip(report.h_values, report.omega):
        print(f"h {_fmt(h)}: omega {_fmt(w)}")
    print(f"decay verdict: {report.decay_verdict}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json(indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0 if report.decay_verdict else 1


def _cmd_constants(args):
    alpha, p = args.alpha, args.p
    print("constant,alpha,p,value")
    print(f"weak_type_K,{_fmt(alpha)},{_fmt(p)},"
          f"{_fmt(bounds.weak_type_constant(alpha, p))}")
    if p > 1.0:
        value, choice = bounds.strong_type_constant(alpha, p, args.grid)
        print(f"strong_type_C,{_fmt(alpha)},{_fmt(p)},{_fmt(value)}")
        print(f"# minimizing pair p1 = {_fmt(choice.p1)}, p2 = {_fmt(choice.p2)}, "
              f"theta = {_fmt(choice.theta)}")
    return 0


_DISPATCH = {
    "integrate": _cmd_integrate,
    "derive": _cmd_derive,
    "norms": _cmd_norms,
    "verify": _cmd_verify,
    "counterexample": _cmd_counterexample,
    "compact": _cmd_compact,
    "constants": _cmd_constants,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
