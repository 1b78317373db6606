"""Command-line front end.

Every subcommand prints a report.  ``--format structured`` emits one
``key=value`` line per field, with algebraic values written in the literal
grammar of :mod:`tamemaps.grammar`, so the output can be parsed back.
Exit status: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import grammar as G
from .curve import zeta_inv_sq, zeta_numerator
from .errors import TameMapsError, UsageError

SUBCOMMANDS = ("sy", "decompose", "orbit", "pseudotame", "tame-lift", "ramify", "rh-check",
               "belyi", "conic", "conic-point", "as-solve", "ec-ordinary", "ec-supersingular",
               "sieve", "zeta")
SEEDED = ("belyi", "sieve")


@dataclass
class CommandRequest:
    subcommand: str
    field: object
    curve: object
    args: dict
    seed: int
    fmt: str
    workers: int


@dataclass
class CommandReport:
    subcommand: str
    status: int = 0
    payload: list = dc_field(default_factory=list)
    diagnostics: list = dc_field(default_factory=list)

    def put(self, key, value):
        self.payload.append((key, value))

    def render(self, fmt):
        lines = [f"command={self.subcommand}"] if fmt == "structured" else [f"# {self.subcommand}"]
        sep = "=" if fmt == "structured" else ": "
        for key, value in self.payload:
            lines.append(f"{key}{sep}{_render_value(value)}")
        if fmt != "structured":
            for key, value in self.diagnostics:
                lines.append(f"[{key}] {value}")
        return "\n".join(lines)


def _render_value(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if hasattr(v, "literal"):
        return v.literal()
    if isinstance(v, (list, tuple)):
        return "[" + "; ".join(_render_value(x) for x in v) + "]"
    return str(v)


def parse_structured(text):
    """key=value lines back into a dict of strings."""
    out = {}
    for line in text.splitlines():
        if "=" in line:
            key, val = line.split("=", 1)
            out[key] = val
    return out


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="GF(2^1)", help=G.FIELD_GRAMMAR)
    common.add_argument("--curve", default="P1", help=G.CURVE_GRAMMAR)
    common.add_argument("--format", dest="fmt", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    top = _Parser(prog="tamemaps", description="Tame morphisms to the projective line over finite fields.")
    sub = top.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    def add(name, help_text, *opts):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for flag, kw in opts:
            p.add_argument(flag, **kw)
        return p

    fn = lambda h: {"help": h + " (required)"}
    add("sy", "the symbol SY(f, g) as a differential", ("--f", fn("function f")), ("--g", fn("function g")))
    add("decompose", "f = f0^4 + f1^4 g + f2^4 g^2 + f3^4 g^3", ("--f", fn("function f")), ("--g", fn("function g")))
    add("orbit", "orbit uniformizer at a place, or the same-orbit test against --g",
        ("--f", fn("function f")), ("--g", {"help": "second function"}), ("--place", {"help": G.PLACE_GRAMMAR}))
    add("pseudotame", "pseudotameness of f, place by place", ("--f", fn("function f")))
    add("tame-lift", "a tame element of the orbit of a pseudotame f", ("--f", fn("function f")),
        ("--budget", {"type": int, "default": 256}))
    add("ramify", "ramification profile of f", ("--f", fn("function f")))
    add("rh-check", "Riemann-Hurwitz equality and the divisor D", ("--f", fn("function f")))
    add("belyi", "a tame map branched over {0, 1, inf}")
    add("conic", "the conic fiber for SY(f, g) = da", ("--g", fn("function g")), ("--a", fn("function a")))
    add("conic-point", "a rational point on the conic fiber and the induced f",
        ("--g", fn("function g")), ("--a", fn("function a")),
        ("--bound", {"help": G.DIVISOR_GRAMMAR}), ("--uv", {"action": "append", "help": "u,v substitution"}))
    add("as-solve", "z with z^2 + z = w inside L(D)", ("--w", fn("function w")),
        ("--bound", {"help": G.DIVISOR_GRAMMAR}))
    add("ec-ordinary", "obstruction analysis for y^2 + xy = x^3 + a x^2 + b",
        ("--a", fn("field element a")), ("--b", fn("field element b")),
        ("--no-lift", {"action": "store_true"}))
    add("ec-supersingular", "analysis for y^2 + y = x^3 + a x + b with parameter c",
        ("--a", fn("field element a")), ("--b", fn("field element b")), ("--c", fn("field element c")),
        ("--no-lift", {"action": "store_true"}))
    add("sieve", "random everywhere simply ramified morphisms", ("--n", {"type": int, "help": "section degree (required)"}),
        ("--trials", {"type": int, "default": 1000}), ("--e", {"type": int, "default": 2}))
    add("zeta", "place counts and zeta_X(2)^-2")
    return top


REQUIRED = {
    "sy": ("f", "g"), "decompose": ("f", "g"), "orbit": ("f",), "pseudotame": ("f",),
    "tame-lift": ("f",), "ramify": ("f",), "rh-check": ("f",), "conic": ("g", "a"),
    "conic-point": ("g", "a"), "as-solve": ("w",), "ec-ordinary": ("a", "b"),
    "ec-supersingular": ("a", "b", "c"), "sieve": ("n",),
}


def parse_request(argv):
    """Validate argv completely; a UsageError lists every violated rule."""
    ns = _build_parser().parse_args(argv)
    sub = ns.subcommand
    args = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "field", "curve", "fmt", "seed", "workers")}
    problems = []
    if sub in SEEDED and ns.seed is None:
        problems.append(f"{sub} is randomized and needs an explicit --seed")
    if ns.workers < 1:
        problems.append("--workers must be positive")
    missing = [f"--{key}" for key in REQUIRED.get(sub, ()) if args.get(key) is None]
    if missing:
        problems.append("missing required arguments: " + ", ".join(missing))
    k = C = None
    try:
        k = G.parse_field(ns.field)
    except UsageError as exc:
        problems.append(str(exc))
    if k is not None:
        try:
            C = G.parse_curve(k, ns.curve)
        except UsageError as exc:
            problems.append(str(exc))
    if C is not None and not missing:
        try:
            _parse_values(sub, k, C, args)
        except UsageError as exc:
            problems.append(str(exc))
    if problems:
        raise UsageError("; ".join(problems))
    return CommandRequest(sub, k, C, args, 0 if ns.seed is None else ns.seed, ns.fmt, ns.workers)


def _parse_values(sub, k, C, args):
    if sub in ("ec-ordinary", "ec-supersingular"):
        for key in ("a", "b", "c"):
            if args.get(key) is not None:
                args[key] = G.parse_element(k, args[key])
        return C
    for key in ("f", "g", "a", "w"):
        if args.get(key) is not None:
            args[key] = G.parse_function(C, args[key])
    if args.get("place") is not None:
        args["place"] = G.parse_place(C, args["place"])
    if args.get("bound") is not None:
        args["bound"] = G.parse_divisor(C, args["bound"])
    if args.get("uv"):
        pairs = []
        for item in args["uv"]:
            parts = G._split_top(item, ",")
            if len(parts) != 2:
                raise UsageError(f"--uv expects u,v; got {item!r}")
            pairs.append(tuple(G.parse_function(C, p) for p in parts))
        args["uv"] = pairs
    return C


# ---------------------------------------------------------------------------
# dispatch

def _profile(rep, prof):
    rep.put("degree", prof.degree)
    rep.put("entries", [en.literal() for en in prof.entries])
    rep.put("branch", prof.branch())
    rep.put("tame", prof.is_tame())
    rep.put("simply_ramified", prof.is_simply_ramified())
    if prof.inseparable:
        rep.put("inseparable", True)


def _ec_report(rep, r):
    rep.put("curve", r.curve)
    rep.put("symbol", r.symbol)
    rep.put("symbol_ok", r.symbol_ok)
    rep.put("coboundary_ok", r.coboundary_ok)
    rep.put("conic", r.conic)
    rep.put("conic_ok", r.conic_ok)
    rep.put("trace_cases", ", ".join(f"{k}:{'0' if v else '1'}" for k, v in r.trace_cases.items()))
    rep.put("point", r.point)
    rep.put("point_ok", r.point_ok)
    rep.put("pseudotame", r.pseudotame)
    rep.put("tame", r.tame)
    rep.put("conclusive", r.conclusive)
    for note in r.notes:
        rep.diagnostics.append(("note", note))


def run(req):
    from . import conic, sieve, symbol, tame

    rep = CommandReport(req.subcommand)
    a, C, sub = req.args, req.curve, req.subcommand
    t0 = time.perf_counter()
    if sub == "sy":
        rep.put("symbol", symbol.sy(a["f"], a["g"]))
    elif sub == "decompose":
        q = symbol.quartic_decompose(a["f"], a["g"])
        for i, c in enumerate(q.components()):
            rep.put(f"f{i}", c)
        rep.put("recomposes", q.recompose() == a["f"])
    elif sub == "orbit":
        if a.get("g") is not None:
            rep.put("same_orbit", symbol.same_orbit(a["f"], a["g"]))
        if a.get("place") is not None:
            rep.put("place", a["place"])
            rep.put("uniformizer", symbol.orbit_uniformizer_at(a["f"], a["place"]))
        if a.get("g") is None and a.get("place") is None:
            raise UsageError("orbit needs --g or --place")
    elif sub == "pseudotame":
        prof = tame.ramification_profile(a["f"])
        rep.put("pseudotame", tame.is_pseudotame(a["f"]))
        rep.put("tame", prof.is_tame())
        if not prof.inseparable:
            rep.put("wild_places", [f"{en.place.literal()}:{'yes' if tame.pseudotame_at(a['f'], en.place) else 'no'}"
                                    for en in prof.entries if en.wild])
    elif sub == "tame-lift":
        tr = tame.LiftTrace()
        g = tame.pseudotame_to_tame(a["f"], seed=req.seed, budget=a["budget"], trace=tr)
        rep.put("tame", g)
        rep.put("e1", tr.e1)
        rep.put("e2", tr.e2)
        rep.put("h2", tr.h2)
        rep.put("h3", tr.h3)
        rep.put("h4", tr.h4)
        rep.put("is_tame", tame.is_tame(g))
        rep.put("same_orbit", symbol.same_orbit(a["f"], g))
        rep.put("rh_holds", tame.riemann_hurwitz_check(g).holds)
    elif sub == "ramify":
        _profile(rep, tame.ramification_profile(a["f"]))
    elif sub == "rh-check":
        r = tame.riemann_hurwitz_check(a["f"])
        rep.put("holds", r.holds)
        rep.put("lhs", r.lhs)
        rep.put("rhs", r.rhs)
        rep.put("D", r.D)
        if r.note:
            rep.diagnostics.append(("note", r.note))
    elif sub == "belyi":
        f = tame.belyi_map(C, seed=req.seed)
        prof = tame.ramification_profile(f)
        rep.put("map", f)
        rep.put("branch", prof.branch())
        rep.put("tame", prof.is_tame())
    elif sub == "conic":
        rep.put("conic", conic.conic_fiber(a["g"], a["a"]))
    elif sub == "conic-point":
        fib = conic.conic_fiber(a["g"], a["a"])
        pt = conic.conic_point_search(fib, a.get("bound"), a.get("uv"), seed=req.seed, workers=req.workers)
        rep.put("conic", fib)
        rep.put("point", pt)
        rep.put("on_conic", conic.conic_contains(fib, pt))
        rep.put("f", conic.point_to_function(fib, pt))
    elif sub == "as-solve":
        z, conclusive = conic.as_solve_status(a["w"], a.get("bound"))
        rep.put("z", z)
        rep.put("conclusive", conclusive)
    elif sub == "ec-ordinary":
        r = conic.ec_ordinary_analysis(a["a"], a["b"], k=req.field, seed=req.seed, lift=not a["no_lift"])
        _ec_report(rep, r)
    elif sub == "ec-supersingular":
        r = conic.ec_supersingular_analysis(a["a"], a["b"], a["c"], k=req.field, seed=req.seed,
                                            lift=not a["no_lift"])
        _ec_report(rep, r)
    elif sub == "sieve":
        f, st = sieve.random_simply_ramified_search(C, a["n"], a["trials"], seed=req.seed,
                                                    workers=req.workers, e=a["e"])
        rep.put("f", f)
        for key, val in st.as_dict().items():
            rep.put(key, val)
    elif sub == "zeta":
        rep.put("curve", C)
        rep.put("counts", [C.count_places(d) for d in range(1, 5)])
        rep.put("a", zeta_numerator(C)[0])
        rep.put("zeta_inv_sq", zeta_inv_sq(C))
    rep.diagnostics.append(("elapsed", f"{time.perf_counter() - t0:.3f}s"))
    return rep


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_request(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        rep = run(req)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (TameMapsError, ZeroDivisionError) as exc:
        rep = CommandReport(req.subcommand, status=1)
        rep.put("status", "error")
        rep.put("error", type(exc).__name__)
        rep.put("message", str(exc))
        print(rep.render(req.fmt))
        return 1
    print(rep.render(req.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
