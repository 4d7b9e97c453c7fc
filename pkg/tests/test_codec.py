import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIGURE8_PD, PD_CORPUS, TREFOIL_PD
from twistspin.codec import (KnotDiagram, braid_closure, braid_spec, parse_braid, parse_knot,
                             parse_pd, parse_two_bridge, render_braid, render_pd,
                             render_two_bridge, two_bridge)
from twistspin.errors import (ArityError, EvenP, LabelError, LetterOutOfRange, MalformedSyntax,
                              MultiComponent, NotCoprime, OutOfRange)
from twistspin.wirtinger import writhe


def test_trefoil_pd_structure(trefoil):
    assert trefoil.crossing_count == 3
    assert trefoil.arc_count == 6
    # labels increase along the orientation
    assert trefoil.successor == (2, 3, 4, 5, 6, 1)
    # X(1,4,2,5): edge 4 leaves under X(3,6,4,1), so it ends here as the
    # incoming over-edge; the over-strand runs from the j slot to the l slot
    first = trefoil.crossings[0]
    assert (first.under_in, first.under_out, first.over_arc) == (1, 2, 4)
    assert first.sign == -1
    assert [c.sign for c in trefoil.crossings] == [-1, -1, -1]


def test_empty_pd_is_unknot():
    d = parse_pd("PD[]")
    assert d.arc_count == 1 and d.crossings == () and d.successor == (1,)


@pytest.mark.parametrize("text, err", [
    ("PD[X(1,2,3)]", ArityError),
    ("PD[X(1,2,3,4,5)]", ArityError),
    ("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,7)]", LabelError),
    ("PD[X(1,1,1,1)]", LabelError),
    ("PD[X(1,4,2,5)", MalformedSyntax),
    ("X(1,4,2,5)", MalformedSyntax),
    ("PD[X(a,b,c,d)]", MalformedSyntax),
    ("PD[X(4,1,3,2),X(2,3,1,4)]", MultiComponent),  # Hopf link
])
def test_pd_errors(text, err):
    with pytest.raises(err):
        parse_pd(text)


def test_pd_whitespace_insensitive():
    spaced = "PD[ X(1, 4, 2, 5), X(3,6,4,1) ,\n X(5,2,6,3) ]"
    assert parse_pd(spaced) == parse_pd(TREFOIL_PD)


@pytest.mark.parametrize("text, sign", [("PD[X(1,1,2,2)]", 1), ("PD[X(1,2,2,1)]", -1),
                                        ("PD[X(2,1,1,2)]", -1), ("PD[X(2,2,1,1)]", 1)])
def test_kinks(text, sign):
    d = parse_pd(text)
    assert d.arc_count == 2
    assert d.crossings[0].sign == sign


def test_wraparound_sign_uses_cyclic_order():
    # X(3,6,4,1): over strand 6 -> 1 wraps past the largest label
    d = parse_pd(TREFOIL_PD)
    assert d.crossings[1].over_arc == 6
    assert d.next_arc(6) == 1


def test_braid_trefoil():
    d = parse_braid("BR[2; 1 1 1]")
    assert d.crossing_count == 3 and d.arc_count == 6
    assert writhe(d) == 3


def test_braid_figure8():
    d = parse_braid("BR[3; 1 -2 1 -2]")
    assert d.crossing_count == 4 and writhe(d) == 0


@pytest.mark.parametrize("text, err", [
    ("BR[2;]", MultiComponent),
    ("BR[3; 1 1]", MultiComponent),
    ("BR[2; 1 2]", LetterOutOfRange),
    ("BR[2; 0]", LetterOutOfRange),
    ("BR[2 1 1 1]", MalformedSyntax),
    ("BR[2; 1 x]", MalformedSyntax),
])
def test_braid_errors(text, err):
    with pytest.raises(err):
        parse_braid(text)


def test_one_strand_braid_is_unknot():
    d = parse_braid("BR[1;]")
    assert d == parse_pd("PD[]")


def test_braid_render_roundtrip():
    b = braid_spec(3, (1, -2, 1, -2))
    assert render_braid(b) == "BR[3; 1 -2 1 -2]"
    assert parse_braid(render_braid(b)) == braid_closure(b)


@pytest.mark.parametrize("p, q", [(3, 1), (1, 1), (5, 3), (7, 3), (9, 7), (7, 2)])
def test_two_bridge_valid(p, q):
    f = two_bridge(p, q)
    assert (f.p, f.q) == (p, q)
    assert parse_two_bridge(render_two_bridge(f)) == f


@pytest.mark.parametrize("p, q, err", [
    (4, 1, EvenP), (4, 2, EvenP), (9, 3, NotCoprime), (5, 5, OutOfRange), (5, 0, OutOfRange),
    (1, 0, OutOfRange), (0, 1, OutOfRange), (-3, 1, OutOfRange), (3, 4, OutOfRange),
])
def test_two_bridge_invalid(p, q, err):
    with pytest.raises(err):
        two_bridge(p, q)


def test_parse_knot_dispatch():
    assert isinstance(parse_knot(FIGURE8_PD), KnotDiagram)
    assert parse_knot("TB[5/3]") == two_bridge(5, 3)
    with pytest.raises(MalformedSyntax):
        parse_knot("DT[4 6 2]")


@pytest.mark.parametrize("name", sorted(PD_CORPUS))
def test_pd_render_roundtrip(name):
    d = parse_pd(PD_CORPUS[name])
    assert parse_pd(render_pd(d)) == d
    assert render_pd(d) == PD_CORPUS[name]


@pytest.mark.parametrize("name", sorted(PD_CORPUS))
def test_diagram_invariants(name):
    d = parse_pd(PD_CORPUS[name])
    assert d.arc_count == max(1, 2 * d.crossing_count)
    assert sorted(d.walk(1)) == list(range(1, d.arc_count + 1))
    for c in d.crossings:
        assert d.next_arc(c.under_in) == c.under_out


braids = st.integers(min_value=1, max_value=4).flatmap(
    lambda s: st.tuples(st.just(s), st.lists(
        st.integers(min_value=1, max_value=max(1, s - 1)).flatmap(
            lambda i: st.sampled_from([i, -i])), max_size=8 if s > 1 else 0)))


@settings(max_examples=150, deadline=None)
@given(braids)
def test_random_braid_closures(data):
    strands, letters = data
    b = braid_spec(strands, letters)
    try:
        d = braid_closure(b)
    except MultiComponent:
        return
    assert d.crossing_count == len(letters)
    assert d.arc_count == max(1, 2 * len(letters))
    assert len(d.walk(1)) == d.arc_count
    assert writhe(d) == sum(1 if x > 0 else -1 for x in letters)
    assert parse_pd(render_pd(d)) == d
