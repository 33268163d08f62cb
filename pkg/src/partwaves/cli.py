"""Command-line front end: every computation as a deterministic subcommand.

Data always goes to stdout; progress and diagnostics go to stderr.  The json
and csv formats are byte-stable for identical inputs: dictionaries are
serialized with sorted keys, rationals as exact "p/q" strings, floats with
repr round-tripping (decompose CSV uses 15 significant digits).  Exit code 0
means every requested check passed; 1 is a mismatch or an explicit refusal
(enumeration budget); 2 is a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

from ._backend import Q
from .asymptotics import (
    figure_series,
    find_w0,
    main_term_011,
    main_term_121,
    table1,
    table2,
)
from .rademacher_core import (
    DEFAULT_ANDREWS_BUDGET,
    BudgetExceededError,
    CoeffKey,
    DecompositionTable,
    c_andrews,
    c_direct,
    c_recursive,
    c_sz,
    decompose,
    m_polynomial,
    p_from_decomposition,
    p_oracle,
    sz_polynomial,
    wave,
)

__all__ = ["RunConfig", "main"]

_FORMATS = ("json", "csv", "pretty")


@dataclass
class RunConfig:
    """Validated run options shared by all subcommands."""

    command: str
    format: str = "pretty"
    digits: int = 6
    andrews_budget: int = DEFAULT_ANDREWS_BUDGET
    cache_dir: str | None = None

    def __post_init__(self):
        if self.format not in _FORMATS:
            raise ValueError(f"format must be one of {_FORMATS}")
        if self.digits < 1:
            raise ValueError("digits must be positive")
        if self.andrews_budget < 1:
            raise ValueError("budget must be positive")


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _emit_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _g(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _gc(z: complex, digits: int) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{_g(z.real, digits)} {sign} {_g(abs(z.imag), digits)}i"


def _value_payload(elem) -> dict:
    """Exact coefficients plus a complex embedding, json-ready."""
    z = elem.embed()
    return {
        "k": elem.k,
        "coeffs": [str(c) for c in elem.coeffs],
        "approx": [z.real, z.imag],
    }


def _pretty_value(elem, digits: int) -> str:
    z = elem.embed()
    if elem.is_rational():
        return f"{elem.coeffs[0]} (~ {_g(z.real, digits)})"
    basis = ", ".join(str(c) for c in elem.coeffs)
    return f"[{basis}] in Q(zeta_{elem.k}) (~ {_gc(z, digits)})"


# -- coeff ---------------------------------------------------------------------

_ROUTES = {
    "direct": c_direct,
    "recursive": c_recursive,
    "sz": c_sz,
    "andrews": None,  # needs the budget threaded through
}


def cmd_coeff(args, cfg: RunConfig) -> int:
    key = CoeffKey(args.h, args.k, args.l, args.N)
    names = list(_ROUTES) if args.algo == "all" else [args.algo]
    values: dict[str, object] = {}
    refusal = None
    for name in names:
        try:
            if name == "andrews":
                values[name] = c_andrews(key, budget=cfg.andrews_budget)
            else:
                values[name] = _ROUTES[name](key)
        except BudgetExceededError as exc:
            refusal = str(exc)
            _progress(f"refused: {refusal}")
    done = list(values.values())
    agree = all(v == done[0] for v in done) if done else False

    if cfg.format == "json":
        payload = {
            "key": {"h": key.h, "k": key.k, "l": key.l, "N": key.N},
            "values": {name: _value_payload(v) for name, v in values.items()},
            "agree": agree,
        }
        if refusal:
            payload["refused"] = refusal
        _emit_json(payload)
    elif cfg.format == "csv":
        rows = []
        for name, v in sorted(values.items()):
            z = v.embed()
            rows.append([name, key.h, key.k, key.l, key.N,
                         ";".join(str(c) for c in v.coeffs), repr(z.real), repr(z.imag)])
        _emit_csv(["algo", "h", "k", "l", "N", "coeffs", "re", "im"], rows)
    else:
        for name, v in values.items():
            print(f"C_{{{key.h},{key.k},{key.l}}}({key.N}) [{name}] = {_pretty_value(v, cfg.digits)}")
        if len(values) > 1:
            print("routes agree" if agree else "ROUTE MISMATCH")
    if refusal:
        return 1
    return 0 if agree or len(done) == 1 else 1


# -- decompose -----------------------------------------------------------------


def _load_or_build_table(N: int, cfg: RunConfig) -> DecompositionTable:
    path = None
    if cfg.cache_dir:
        path = os.path.join(cfg.cache_dir, f"decompose_{N}.json")
        if os.path.exists(path):
            _progress(f"loading cached decomposition from {path}")
            with open(path, "r", encoding="utf-8") as fh:
                return DecompositionTable.from_json(fh.read())
    if N >= 15:
        _progress(f"decomposing N={N} ({N} conductors)")
    table = decompose(N)
    if path:
        os.makedirs(cfg.cache_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(table.to_json())
        _progress(f"cached decomposition at {path}")
    return table


def cmd_decompose(args, cfg: RunConfig) -> int:
    table = _load_or_build_table(args.N, cfg)
    if cfg.format == "json":
        _emit_json(table.to_dict())
    elif cfg.format == "csv":
        _emit_csv(["h", "k", "l", "re", "im"], table.csv_rows())
    else:
        print(f"N = {table.N}, {len(table)} coefficients")
        for key, val in table:
            print(f"  h={key.h} k={key.k} l={key.l}: {_pretty_value(val, cfg.digits)}")
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> int:
    N, n_max = args.N, args.n_max
    table = _load_or_build_table(N, cfg)
    bad = []
    for n in range(0, n_max + 1):
        want = p_oracle(N, n)
        try:
            got = p_from_decomposition(table, n)
        except ArithmeticError as exc:
            bad.append((n, str(exc)))
            continue
        if got != want:
            bad.append((n, f"reconstruction {got} != oracle {want}"))
    recon_ok = not bad

    wave_bad = []
    for n in range(1, n_max + 1):
        total = sum(wave(k, N, n) for k in range(1, N + 1))
        if total != p_oracle(N, n):
            wave_bad.append(n)
    sylv_ok = not wave_bad

    report = {
        "N": N,
        "n_max": n_max,
        "reconstruction": "OK" if recon_ok else f"FAIL at {bad[:5]}",
        "sylvester": "OK" if sylv_ok else f"FAIL at n={wave_bad[:5]}",
    }
    if cfg.format == "json":
        _emit_json(report)
    elif cfg.format == "csv":
        _emit_csv(["check", "status"],
                  [["reconstruction", report["reconstruction"]],
                   ["sylvester", report["sylvester"]]])
    else:
        if recon_ok and sylv_ok:
            print("p_N reconstruction OK, Sylvester OK")
        else:
            print(f"reconstruction: {report['reconstruction']}")
            print(f"sylvester: {report['sylvester']}")
    return 0 if recon_ok and sylv_ok else 1


# -- wave ----------------------------------------------------------------------


def cmd_wave(args, cfg: RunConfig) -> int:
    value = wave(args.k, args.N, args.n)
    if cfg.format == "json":
        _emit_json({"k": args.k, "N": args.N, "n": args.n,
                    "value": str(value), "approx": float(value)})
    elif cfg.format == "csv":
        _emit_csv(["k", "N", "n", "value", "approx"],
                  [[args.k, args.N, args.n, str(value), repr(float(value))]])
    else:
        print(f"W_{args.k}({args.N}, {args.n}) = {value} (~ {_g(float(value), cfg.digits)})")
    return 0


# -- poly ----------------------------------------------------------------------


def _poly_coeff_strings(poly) -> list[str]:
    return [str(poly.coefficient(i)) for i in range(poly.degree + 1)]


def cmd_poly(args, cfg: RunConfig) -> int:
    r = args.r
    P = sz_polynomial(r)
    M = m_polynomial(r)
    diff = P - M
    cx = P.coefficient(1)
    cx2 = P.coefficient(2)
    signs_ok = r == 0 or (cx < 0 and cx2 > 0 and P.coefficient(2 * r) == 1)
    if cfg.format == "json":
        _emit_json({
            "r": r,
            "P": _poly_coeff_strings(P),
            "M": _poly_coeff_strings(M),
            "P_minus_M": _poly_coeff_strings(diff),
            "coeff_x": str(cx) if r else None,
            "coeff_x2": str(cx2) if r else None,
            "signs_ok": signs_ok,
        })
    elif cfg.format == "csv":
        _emit_csv(["series", "coeffs"],
                  [["P", ";".join(_poly_coeff_strings(P))],
                   ["M", ";".join(_poly_coeff_strings(M))],
                   ["P_minus_M", ";".join(_poly_coeff_strings(diff))]])
    else:
        print(f"P_{{01{r}}}(x) = {P}")
        if r:
            print(f"  coefficient of x : {cx} ({'negative' if cx < 0 else 'NOT negative'})")
            print(f"  coefficient of x^2: {cx2} ({'positive' if cx2 > 0 else 'NOT positive'})")
        print(f"M_{{01{r}}}(x) = {M}")
        print(f"P - M = {diff}")
    return 0 if signs_ok else 1


# -- asym ----------------------------------------------------------------------


def cmd_asym(args, cfg: RunConfig) -> int:
    c = find_w0()
    if args.figure:
        rows = figure_series(args.figure, range(args.start, args.stop + 1, args.step))
        if cfg.format == "json":
            _emit_json([{"N": N, "scaled": s, "sinusoid": m} for N, s, m in rows])
        elif cfg.format == "csv":
            _emit_csv(["N", "scaled", "sinusoid"],
                      [[N, repr(s), repr(m)] for N, s, m in rows])
        else:
            for N, s, m in rows:
                print(f"{N:5d}  {_g(s, cfg.digits):>14}  {_g(m, cfg.digits):>14}")
        return 0
    if args.N:
        rows = [(N, main_term_011(N), main_term_121(N)) for N in args.N]
        if cfg.format == "json":
            _emit_json([{"N": N, "A011": a, "A121": b} for N, a, b in rows])
        elif cfg.format == "csv":
            _emit_csv(["N", "A011", "A121"], [[N, repr(a), repr(b)] for N, a, b in rows])
        else:
            for N, a, b in rows:
                print(f"N={N}: A011 = {_g(a, cfg.digits)}, A121 = {_g(b, cfg.digits)}")
        return 0
    payload = {
        "w0": [c.w0.real, c.w0.imag],
        "z0": [c.z0.real, c.z0.imag],
        "U": c.U, "V": c.V,
        "alpha": c.alpha, "beta": c.beta,
        "alpha1": c.alpha1, "beta1": c.beta1,
        "alpha2": c.alpha2, "beta2": c.beta2,
        "period": -2 * 3.141592653589793 / c.V,
    }
    if cfg.format == "json":
        _emit_json(payload)
    elif cfg.format == "csv":
        _emit_csv(["name", "value"],
                  [[k, repr(v) if not isinstance(v, list) else f"{v[0]!r}+{v[1]!r}i"]
                   for k, v in payload.items()])
    else:
        d = cfg.digits + 4
        print(f"w0 = {_gc(c.w0, d)}")
        print(f"z0 = {_gc(c.z0, d)}")
        for name in ("U", "V", "alpha", "beta", "alpha1", "beta1", "alpha2", "beta2"):
            print(f"{name:6s} = {_g(payload[name], d)}")
        print(f"period = {_g(payload['period'], d)}")
    return 0


# -- table ---------------------------------------------------------------------


def cmd_table(args, cfg: RunConfig) -> int:
    if args.which == 1:
        N_list = args.N or [200]
        _progress(f"evaluating exact waves at N={', '.join(str(N) for N in N_list)}")
        rows = table1(N_list)
        if cfg.format == "json":
            _emit_json([{"label": r.label, "N": r.N, "exact": r.exact_value,
                         "main_term": r.main_term, "gap": r.gap} for r in rows])
        elif cfg.format == "csv":
            _emit_csv(["label", "N", "exact", "main_term", "gap"],
                      [[r.label, r.N, repr(r.exact_value), repr(r.main_term), repr(r.gap)]
                       for r in rows])
        else:
            for r in rows:
                print(f"{r.label} N={r.N}: exact {_g(r.exact_value, cfg.digits)}, "
                      f"main {_g(r.main_term, cfg.digits)}, gap {_g(r.gap, 3)}")
        return 0
    _progress("averaging the eight towers over N = 1..100")
    rows = table2()
    if cfg.format == "json":
        _emit_json([{"h": h, "k": k, "l": l,
                     "C_star": [star.real, star.imag],
                     "C_inf": [cinf.real, cinf.imag],
                     "gap": gap} for (h, k, l), star, cinf, gap in rows])
    elif cfg.format == "csv":
        _emit_csv(["h", "k", "l", "star_re", "star_im", "inf_re", "inf_im", "gap"],
                  [[h, k, l, repr(s.real), repr(s.imag), repr(ci.real), repr(ci.imag), repr(g)]
                   for (h, k, l), s, ci, g in rows])
    else:
        for (h, k, l), s, ci, g in rows:
            star = _gc(s, 4) if s.imag else _g(s.real, 4)
            inf = _gc(ci, 4) if ci.imag else _g(ci.real, 4)
            print(f"({h},{k},{l}): C* = {star}, C_inf = {inf}, gap = {_g(g, 4)}")
    return 0


# -- parser / dispatch ---------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="partwaves",
        description="Exact partial-fraction coefficients, Sylvester waves, "
                    "and growth asymptotics of restricted partitions.",
    )
    p.add_argument("--format", choices=_FORMATS, default="pretty")
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("--andrews-budget", type=int, default=DEFAULT_ANDREWS_BUDGET)
    p.add_argument("--cache-dir", default=os.environ.get("PARTWAVES_CACHE_DIR"))
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeff", help="one coefficient C_{hkl}(N) by any route")
    c.add_argument("h", type=int)
    c.add_argument("k", type=int)
    c.add_argument("l", type=int)
    c.add_argument("N", type=int)
    c.add_argument("--algo", choices=["direct", "recursive", "sz", "andrews", "all"],
                   default="recursive")
    c.set_defaults(func=cmd_coeff)

    d = sub.add_parser("decompose", help="all coefficients for one N")
    d.add_argument("N", type=int)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="reconstruction and Sylvester checks")
    v.add_argument("N", type=int)
    v.add_argument("n_max", type=int)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("wave", help="one wave value W_k(N, n)")
    w.add_argument("k", type=int)
    w.add_argument("N", type=int)
    w.add_argument("n", type=int)
    w.set_defaults(func=cmd_wave)

    q = sub.add_parser("poly", help="P_{01r} with signs and the M_{01r} comparison")
    q.add_argument("r", type=int)
    q.set_defaults(func=cmd_poly)

    a = sub.add_parser("asym", help="branch-zero constants, main terms, figure data")
    a.add_argument("--N", type=int, nargs="*", help="main terms at these N")
    a.add_argument("--figure", choices=["fig1", "fig2"])
    a.add_argument("--start", type=int, default=100)
    a.add_argument("--stop", type=int, default=120)
    a.add_argument("--step", type=int, default=1)
    a.set_defaults(func=cmd_asym)

    t = sub.add_parser("table", help="reproduce a numerical table")
    t.add_argument("which", type=int, choices=[1, 2])
    t.add_argument("--N", type=int, nargs="*", help="table 1 rows (default 200)")
    t.set_defaults(func=cmd_table)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            format=args.format,
            digits=args.digits,
            andrews_budget=args.andrews_budget,
            cache_dir=args.cache_dir,
        )
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
