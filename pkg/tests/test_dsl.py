import pytest
from hypothesis import given, settings, strategies as st

from rrlab.exact import QQ, PolyRing
from rrlab.exact import monomials as mon
from rrlab.harness.dsl import Command, ModuleDecl, RingDecl, ScriptError, format_script, parse


def test_ring_module_command():
    s = parse("ring S = poly(Q; x, y); module M = ideal(x^3, y^3); rho M;")
    assert (len(s.rings), len(s.modules), len(s.commands)) == (1, 1, 1)
    assert s.rings[0] == RingDecl("S", "Q", ("x", "y"), ())
    assert s.modules[0] == ModuleDecl("M", "S", "ideal", ("x^3", "y^3"))
    assert s.commands[0] == Command("rho", ("M",), ())


def test_quotient_ring_drives_rho():
    s = parse("ring R = poly(Q; x, y) / (x^2); rho R;")
    assert s.rings[0].ideal == ("x^2",)
    assert s.commands[0].args == ("R",)


def test_inhomogeneous_generator_position():
    with pytest.raises(ScriptError) as exc:
        parse("ring S = poly(Q; x, y);\nmodule M = ideal(x^2 + y);")
    assert str(exc.value) == "inhomogeneous generator at 2:18"
    assert (exc.value.line, exc.value.col) == (2, 18)


def test_inhomogeneous_on_one_line_counts_columns():
    text = "ring S = poly(Q; x, y); module M = ideal(x^2 + y);"
    with pytest.raises(ScriptError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (1, text.index("x^2") + 1)


@pytest.mark.parametrize("text, message", [
    ("ring S = poly(Q; x, y);\nrho Z;", "unknown name 'Z' at 2:5"),
    ("ring S = poly(Q; x, y);\nmodule M = ideal(x + z);", "unknown name 'z' at 2:22"),
    ("module M = ideal(x);", "module declared before any ring at 1:1"),
    ("ring S = poly(Q; x, y) / (1);", "defining ideal is not proper"),
    ("ring S = poly(Q; x, y) / (x^2 + y);", "inhomogeneous"),
    ("ring S = poly(Q; x, y);\nfoo S;", "unknown command 'foo' at 2:1"),
    ("ring S = poly(Q; x, y);\nrho S --bogus 1;", "unknown option --bogus for rho"),
    ("ring S = poly(Q; x, y);\nring S = poly(Q; x);", "duplicate name 'S' at 2:6"),
    ("ring S = poly(Q; x, y)", "at 1:23"),
    ("ring S = poly(Fp<32004>; x);", "prime"),
])
def test_diagnostics(text, message):
    with pytest.raises(ScriptError) as exc:
        parse(text)
    assert message in str(exc.value)


def test_comments_and_options():
    s = parse("""# a comment
ring R = poly(Fp<101>; x, y) / (x^2);   # trailing comment
module P = power(R, 2);
mfull P in R --witness (x+y) --expect true;
verify R --nmax 3 --gdim;
""")
    mf = s.commands[0]
    assert mf.args == ("P", "in", "R")
    assert mf.option("witness") == "x + y"
    assert mf.option("expect") == "true"
    assert s.commands[1].option("gdim") is True


def test_cokernel_shifts_are_inferred():
    # columns are relations; the column (x, y^2) forces shift(0) = shift(1) + 1
    s = parse("ring S = poly(Q; x, y); module C = coker([[x, y], [y^2, x*y]]);")
    rows, shifts = s.modules[0].args
    assert shifts == (1, 0)
    with pytest.raises(ScriptError, match="inhomogeneous"):
        parse("ring S = poly(Q; x, y); module C = coker([[x, y], [y, x*y]]);")


def test_format_example():
    text = "ring S = poly(Q; x,y); module M = ideal(x^3,y^3); rho M --expect 0;"
    assert format_script(parse(text)) == (
        "ring S = poly(Q; x, y);\nmodule M = ideal(x^3, y^3);\nrho M --expect 0;\n")


# -- round trip ---------------------------------------------------------------------

VARS = ("x", "y", "z")


@st.composite
def homogeneous_poly(draw, names):
    S = PolyRing(QQ, names)
    d = draw(st.integers(1, 3))
    ms = list(mon.monomials_of_degree(len(names), d))
    terms = draw(st.dictionaries(st.sampled_from(ms), st.integers(-4, 4).filter(bool), min_size=1, max_size=3))
    return str(S.from_dict(terms))


@st.composite
def scripts(draw):
    k = draw(st.integers(1, 3))
    names = VARS[:k]
    field = draw(st.sampled_from(["Q", "Fp<32003>", "Fp<1009>"]))
    lines = [f"ring R = poly({field}; {', '.join(names)})"]
    if draw(st.booleans()):
        lines[0] += f" / ({draw(homogeneous_poly(names))})"
    mods = ["R"]
    for i in range(draw(st.integers(0, 3))):
        kind = draw(st.sampled_from(["ideal", "power", "maximal", "ratliff_rush", "ref"]))
        if kind == "ideal":
            gens = draw(st.lists(homogeneous_poly(names), min_size=1, max_size=3))
            expr = f"ideal({', '.join(gens)})"
        elif kind in ("power", "ratliff_rush"):
            expr = f"{kind}({draw(st.sampled_from(mods))}, {draw(st.integers(0, 4))})"
        elif kind == "maximal":
            expr = "maximal()"
        else:
            expr = draw(st.sampled_from(mods))
        lines.append(f"module M{i} = {expr}")
        mods.append(f"M{i}")
    for _ in range(draw(st.integers(0, 4))):
        a = draw(st.sampled_from(mods))
        cmd = draw(st.sampled_from(["rho", "reg", "depth", "resolve", "mfull", "verify", "ratliff_rush"]))
        if cmd == "mfull":
            b = draw(st.sampled_from(mods))
            line = f"mfull {a} in {b}"
            if draw(st.booleans()):
                line += f" --witness ({draw(homogeneous_poly(names))})"
        elif cmd == "resolve":
            line = f"resolve {a} --length {draw(st.integers(0, 5))}"
        elif cmd == "verify":
            line = f"verify {a} --nmax {draw(st.integers(1, 5))}" + (" --gdim" if draw(st.booleans()) else "")
        elif cmd == "ratliff_rush":
            line = f"ratliff_rush {a} {draw(st.integers(0, 3))} --mode {draw(st.sampled_from(['chain', 'certified']))}"
        else:
            line = f"{cmd} {a}" + (f" --expect {draw(st.integers(0, 3))}" if draw(st.booleans()) else "")
        lines.append(line)
    sep = draw(st.sampled_from([";\n", "; ", ";\n\n# note\n"]))
    return sep.join(lines) + ";"


@settings(max_examples=80, deadline=None)
@given(scripts())
def test_round_trip(text):
    ast = parse(text)
    printed = format_script(ast)
    assert parse(printed) == ast
    assert format_script(parse(printed)) == printed
