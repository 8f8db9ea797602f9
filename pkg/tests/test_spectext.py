import pytest
from hypothesis import given, settings, strategies as st

from starlab import expr as E
from starlab.spectext import SemanticError, SpecSyntaxError, format_poly, format_ring_spec, parse_element, parse_ring_spec

from conftest import ring


@pytest.mark.parametrize("text,canon", [
    ("Z(6)", "Z(6)"),
    ("M(2, Z( 3 ))", "M(2,Z(3))"),
    ("GF(2,2)@frob(1)", "GF(2,2)@frob(1)"),
    ("GF(2,2)@frob(2)", "GF(2,2)"),
    ("P(GF(3,1),GF(3,1))@swap(1,0)", "P(GF(3,1),GF(3,1))@swap(1,0)"),
    ("GR(C(2)xC(2),Z(3))", "GR(C(2)xC(2),Z(3))"),
    ("Quot(Z(3),x^2+1,-x)", "Quot(Z(3),x^2+1,2x)"),
    ("Corner(M(2,Z(3)),[[1,0],[0,0]])", "Corner(M(2,Z(3)),[[1,0],[0,0]])"),
])
def test_canonical_text(text, canon):
    assert format_ring_spec(parse_ring_spec(text)) == canon


def test_product_order_is_kept():
    assert parse_ring_spec("P(Z(3),Z(2))") != parse_ring_spec("P(Z(2),Z(3))")


@pytest.mark.parametrize("text,col", [
    ("Z(6", 4),
    ("Z(6))", 5),
    ("M(2,Z(2)", 9),
    ("Q(3)", 1),
    ("", 1),
])
def test_syntax_error_positions(text, col):
    with pytest.raises(SpecSyntaxError) as info:
        parse_ring_spec(text)
    assert info.value.line == 1 and info.value.col == col


def test_multiline_position():
    with pytest.raises(SpecSyntaxError) as info:
        parse_ring_spec("P(Z(2),\n  Z(3)")
    assert info.value.line == 2


@pytest.mark.parametrize("text", ["GF(4,1)", "Z(1)", "Z(0)", "P(Z(2),Z(3))@swap(1,0)",
                                  "Corner(M(2,Z(3)),[[1,1],[0,0]])"])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_ring_spec(text)


def test_elements():
    z6 = ring("Z(6)")
    assert parse_element(z6, "5") == 5
    assert parse_element(z6, "-1") == 5
    m = ring("M(2,Z(2))")
    x = parse_element(m, "[[0,1],[1,0]]")
    assert m.entries(x) == [[0, 1], [1, 0]]
    assert parse_element(m, f"#{x}") == x
    with pytest.raises(SpecSyntaxError):
        parse_element(z6, "5 5")


def test_format_poly():
    assert format_poly((1, 0, 1)) == "x^2+1"
    assert format_poly((0, -1)) == "-x"
    assert format_poly((0,)) == "0"
    assert format_poly((3, 2)) == "2x+3"


_leaf = st.sampled_from(["Z(2)", "Z(3)", "Z(4)", "Z(6)", "GF(2,2)", "GF(2,2)@frob(1)", "GF(3,1)", "GF(3,2)@frob(1)"])


def _grow(inner):
    return st.one_of(
        inner.map(lambda s: f"M(2,{s})"),
        st.lists(inner, min_size=1, max_size=3).map(lambda fs: "P(" + ",".join(fs) + ")"),
        inner.map(lambda s: f"P({s},{s})@swap(1,0)"),
        st.tuples(st.sampled_from(["C(2)", "C(3)", "D(3)", "C(2)xC(2)"]), inner).map(lambda t: f"GR({t[0]},{t[1]})"),
    )


specs = st.recursive(_leaf, _grow, max_leaves=4)


@settings(max_examples=100)
@given(specs)
def test_round_trip(text):
    e = parse_ring_spec(text)
    out = format_ring_spec(e)
    assert parse_ring_spec(out) == e
    assert format_ring_spec(parse_ring_spec(out)) == out


@settings(max_examples=100)
@given(specs, st.text(alphabet=" \t", max_size=2))
def test_whitespace_is_ignored(text, pad):
    spaced = text.replace(",", "," + pad).replace("(", "(" + pad)
    assert parse_ring_spec(pad + spaced + pad) == parse_ring_spec(text)


@given(st.text(max_size=12))
def test_garbage_never_crashes(text):
    try:
        parse_ring_spec(text)
    except (SpecSyntaxError, SemanticError, E.InvalidExpr):
        pass
