import pytest
from hypothesis import given, settings, strategies as st

from strata.linalg import Field
from strata.presentation import (
    DuplicateLabel,
    NonParallelRelation,
    NotFiniteDimensional,
    ParseError,
    PresentationError,
    UnknownArrow,
    UnknownVertex,
    build_algebra,
    format_presentation,
    parse_presentation,
)

from conftest import EJ2, KRONECKER, SIX
from oracles import path_count


def test_dimensions_of_examples():
    assert build_algebra(EJ2).dim == 5
    assert build_algebra(KRONECKER).dim == 4
    A = build_algebra(SIX)
    assert A.n_vertices == 6 and A.check_associative()


def test_field_override():
    A = build_algebra(EJ2, field=Field(3))
    assert A.field == Field(3) and A.dim == 5


@pytest.mark.parametrize("text, exc", [
    ("algebra x over Q { vertices: 1 2; arrows: a: 1->3; }", UnknownVertex),
    ("algebra x over Q { vertices: 1 2; arrows: a: 1->2; relations: a*c; }", UnknownArrow),
    ("algebra x over Q { vertices: 1 2; arrows: a: 1->2, a: 2->1; }", DuplicateLabel),
    ("algebra x over Q { vertices: 1 1; }", DuplicateLabel),
    ("algebra x over Q { vertices: 1 2 3; arrows: a: 1->2, b: 1->3; relations: b*a; }", NonParallelRelation),
    ("algebra x over Q { vertices: 1 2; arrows: a: 1->2 ", ParseError),
    ("algebra x over R { vertices: 1; }", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        build_algebra(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_presentation("algebra x over Q {\n vertices: 1 2;\n arrows: a 1->2;\n}")
    assert info.value.line == 3


def test_errors_share_base_class():
    for exc in (ParseError, UnknownVertex, UnknownArrow, DuplicateLabel, NonParallelRelation, NotFiniteDimensional):
        assert issubclass(exc, PresentationError)


def test_infinite_dimensional_rejected():
    with pytest.raises(NotFiniteDimensional):
        build_algebra("algebra loop over Q { vertices: 1; arrows: x: 1->1; }", max_path_length=6)


def test_nilpotent_loop_allowed():
    A = build_algebra("algebra dual over Q { vertices: 1; arrows: x: 1->1; relations: x*x; }")
    assert A.dim == 2 and A.radical_layers() == 2


def test_round_trip():
    for text in (EJ2, SIX, KRONECKER):
        p = parse_presentation(text)
        q = parse_presentation(format_presentation(p))
        assert format_presentation(q) == format_presentation(p)
        assert build_algebra(q).dim == build_algebra(p).dim


def test_opposite_is_involutive_and_same_dimension():
    A = build_algebra(SIX)
    op = A.opposite()
    assert op.opposite() is A
    assert op.dim == A.dim
    assert [(s, t) for _, s, t in op.arrows] == [(t, s) for _, s, t in A.arrows]


@st.composite
def monomial_quivers(draw):
    n = draw(st.integers(2, 5))
    pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=6))
    arrows = [(f"a{k}", str(s + 1), str(t + 1)) for k, (s, t) in enumerate(chosen)]
    composable = [(x[0], y[0]) for x in arrows for y in arrows if y[2] == x[1]]
    zeros = draw(st.lists(st.sampled_from(composable), unique=True, max_size=4)) if composable else []
    return [str(v + 1) for v in range(n)], arrows, zeros


@settings(max_examples=60, deadline=None)
@given(data=monomial_quivers())
def test_dimension_matches_path_enumeration(data):
    vertices, arrows, zeros = data
    text = "algebra m over Q { vertices: %s; arrows: %s;%s }" % (
        " ".join(vertices),
        ", ".join(f"{a}: {s}->{t}" for a, s, t in arrows),
        (" relations: " + ", ".join(f"{x}*{y}" for x, y in zeros) + ";") if zeros else "",
    )
    assert build_algebra(text).dim == path_count(vertices, arrows, [tuple(z) for z in zeros])
