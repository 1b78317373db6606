import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import model
from tamemaps import grammar as G
from tamemaps.cli import SUBCOMMANDS, main, parse_structured
from tamemaps.conic import conic_contains, conic_fiber
from tamemaps.curve import Differential
from tamemaps.symbol import quartic_decompose, same_orbit, sy
from tamemaps.tame import is_tame, riemann_hurwitz_check

GF4 = "GF(2^2; mod=w^2+w+1; gen=w)"

# one successful invocation per subcommand
CASES = {
    "sy": ["--f", "x^2+y", "--g", "x", "--curve", "ES(a=0, b=1)"],
    "decompose": ["--f", "x^5+x^2", "--g", "x+1"],
    "orbit": ["--f", "x^3+x^6", "--place", "(x; 0)", "--g", "x"],
    "pseudotame": ["--f", "x^4+x^5"],
    "tame-lift": ["--f", "x^4+x^5"],
    "ramify": ["--f", "x^3+x"],
    "rh-check": ["--f", "x^3"],
    "belyi": ["--field", GF4, "--seed", "7"],
    "conic": ["--g", "x", "--a", "x+1/x", "--curve", "EO(a=0, b=1)"],
    "conic-point": ["--g", "x", "--a", "x+1/x", "--curve", "EO(a=0, b=1)"],
    "as-solve": ["--w", "x^2+x"],
    "ec-ordinary": ["--a", "0", "--b", "1", "--no-lift"],
    "ec-supersingular": ["--a", "0", "--b", "1", "--c", "1", "--no-lift"],
    "sieve": ["--field", "GF(3^1)", "--n", "3", "--trials", "1000", "--seed", "1"],
    "zeta": ["--field", "GF(3)"],
}


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, sub):
    code, out, _ = run(capsys, [sub, *CASES[sub], "--format", "structured"])
    assert code == 0, out
    vals = parse_structured(out)
    assert vals["command"] == sub
    return vals


def test_every_subcommand_is_covered():
    assert set(CASES) == set(SUBCOMMANDS)


@pytest.mark.parametrize("sub", SUBCOMMANDS)
def test_text_mode_succeeds(capsys, sub):
    code, out, _ = run(capsys, [sub, *CASES[sub]])
    assert code == 0
    assert out.startswith(f"# {sub}")
    assert "[elapsed]" in out


@pytest.mark.parametrize("sub", SUBCOMMANDS)
def test_structured_is_deterministic(capsys, sub):
    a = run(capsys, [sub, *CASES[sub], "--format", "structured"])[1]
    b = run(capsys, [sub, *CASES[sub], "--format", "structured"])[1]
    assert a == b and "elapsed" not in a


# --- structured output parses back to library values -----------------------------

def test_sy_roundtrip(capsys):
    v = structured(capsys, "sy")
    C = model("ES", 2, 1, 0, 1)
    x, y = C.x(), C.y()
    assert G.parse_differential(C, v["symbol"]) == sy(x ** 2 + y, x)


def test_decompose_roundtrip(capsys):
    v = structured(capsys, "decompose")
    C = model("P1")
    x = C.x()
    q = quartic_decompose(x ** 5 + x ** 2, x + 1)
    assert [G.parse_function(C, v[f"f{i}"]) for i in range(4)] == list(q.components())
    assert v["recomposes"] == "true"


def test_orbit_roundtrip(capsys):
    v = structured(capsys, "orbit")
    C = model("P1")
    x = C.x()
    want = "true" if same_orbit(x ** 3 + x ** 6, x) else "false"
    assert v["same_orbit"] == want
    assert G.parse_place(C, v["place"]) == C.places_of_degree(1)[0]
    assert G.parse_function(C, v["uniformizer"]) == x ** 4 / (x ** 3 + x ** 6)


def test_tame_lift_roundtrip(capsys):
    v = structured(capsys, "tame-lift")
    C = model("P1")
    g = G.parse_function(C, v["tame"])
    assert is_tame(g) and same_orbit(C.x() ** 4 + C.x() ** 5, g)
    assert (v["is_tame"], v["same_orbit"], v["rh_holds"]) == ("true",) * 3


def test_ramify_and_rh_roundtrip(capsys):
    C = model("P1")
    v = structured(capsys, "ramify")
    assert v["degree"] == "3" and v["tame"] == "false"
    assert G.parse_list(v["branch"], lambda s: G.parse_place(C, s)) == [C.places_of_degree(1)[0], C.infinity()]
    v = structured(capsys, "rh-check")
    assert v["holds"] == "true" and (v["lhs"], v["rhs"]) == ("-2", "-2")
    assert G.parse_divisor(C, v["D"]) == riemann_hurwitz_check(C.x() ** 3).D


def test_belyi_spec_example(capsys):
    v = structured(capsys, "belyi")
    C = model("P1", 2, 2)
    f = G.parse_function(C, v["map"])
    assert is_tame(f) and v["tame"] == "true"
    allowed = {"(x; 0)", "(x+1; 1)", "inf"}
    branch = G.parse_list(v["branch"], lambda s: G.parse_place(C, s))
    assert {P.literal() for P in branch} <= allowed


def test_conic_roundtrip(capsys):
    C = model("EO", 2, 1, 0, 1)
    x = C.x()
    F = conic_fiber(x, x + 1 / x)
    v = structured(capsys, "conic")
    assert G.parse_conic(C, v["conic"]) == (F.alpha, F.beta)
    v = structured(capsys, "conic-point")
    pt = G.parse_conic_point(C, v["point"])
    assert conic_contains(F, pt) and v["on_conic"] == "true"
    f = G.parse_function(C, v["f"])
    assert sy(f, x) == Differential((x + 1 / x).derivative())


def test_as_solve_roundtrip(capsys):
    v = structured(capsys, "as-solve")
    assert G.parse_function(model("P1"), v["z"]) == model("P1").x()
    assert v["conclusive"] == "true"


def test_ec_roundtrip(capsys):
    v = structured(capsys, "ec-ordinary")
    C = G.parse_curve(G.parse_field("GF(2)"), v["curve"])
    assert C.kind == "EO"
    assert v["symbol_ok"] == "true" and v["conic_ok"] == "true"
    G.parse_differential(C, v["symbol"])
    G.parse_conic(C, v["conic"])
    v = structured(capsys, "ec-supersingular")
    S = model("ES", 2, 1, 0, 1)
    x = S.x()
    assert G.parse_function(S, v["pseudotame"]) == x ** 6 + x ** 3 + x
    # the point lives on the simplified conic with alpha = x, beta = c x
    assert G.parse_conic(S, v["conic"]) == (x, x)
    pt = G.parse_conic_point(S, v["point"])
    t1, t2, t3 = pt.t1, pt.t2, pt.t3
    assert (t1 * t3 + t2 * t2 + x * t1 * t1 + x * t3 * t3).is_zero()
    assert v["point_ok"] == "true"


def test_sieve_spec_example(capsys):
    v = structured(capsys, "sieve")
    assert v["trials"] == "1000"
    X = model("P1", 3)
    f = G.parse_function(X, v["f"])
    assert is_tame(f)
    emp, pred = Fraction(v["empirical"]), Fraction(v["predicted"])
    assert emp == Fraction(int(v["successes"]), 1000)
    assert abs(emp - pred) < Fraction(1, 10)


def test_zeta_example(capsys):
    v = structured(capsys, "zeta")
    assert v["counts"] == "[4; 3; 8; 18]"
    assert Fraction(v["zeta_inv_sq"]) == Fraction(256, 729)


# --- exit codes ---------------------------------------------------------------------

def test_domain_error_exits_one(capsys):
    code, out, _ = run(capsys, ["tame-lift", "--f", "x^2+x^3", "--format", "structured"])
    v = parse_structured(out)
    assert code == 1 and v["status"] == "error" and v["error"] == "NotPseudotame"
    code, _, _ = run(capsys, ["sieve", "--n", "3", "--seed", "1"])
    assert code == 1  # characteristic 2


@pytest.mark.parametrize("argv", [
    ["sy", "--curve", "bogus"],
    ["belyi"],
    ["sieve", "--field", "GF(3)", "--n", "3"],
    ["sy", "--f", "x", "--g", "x +* 1"],
    ["zeta", "--field", "GF(6)"],
    ["orbit", "--f", "x"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 2 and out == "" and "usage error" in err


def test_usage_error_lists_all_problems(capsys):
    _, _, err = run(capsys, ["sy", "--curve", "bogus"])
    assert "--f" in err and "bogus" in err


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "tamemaps.cli", "zeta", "--format", "structured"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and "command=zeta" in r.stdout
