from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings

from sl2classes.class_algebra import (
    C4_NEG,
    C4_POS,
    EMPTY,
    G,
    GPLUS,
    Atom,
    ClassSet,
    HypSet,
    c3,
    complement,
    intersect,
    invert,
    member,
    minus,
    negate,
    normalize_to_Gplus,
    singleton,
    union,
)
from sl2classes.ids import NEG_I, P_MM, P_MP, P_PM, P_PP, I, Elliptic, Hyperbolic, invert_id, negate_id
from sl2classes.matrix_core import classify, sample
from sl2classes.notation import format_notation, parse_notation

from conftest import GRID
from strategies import class_sets


def test_singletons():
    assert singleton(I) == ClassSet(has_I=True)
    assert singleton(Elliptic(F(1, 3))).ell == (Atom(F(1, 3), True, F(1, 3), True),)
    s = singleton(Hyperbolic(F(-3, 2)))
    assert s.hyp_neg == HypSet(False, frozenset([F(-3, 2)])) and s.hyp_pos.is_empty


def test_complement_of_empty_is_everything():
    g = complement(EMPTY)
    assert g == G
    assert g.has_I and g.has_negI and len(g.par) == 4
    assert g.ell == (Atom(F(0), False, F(1), False), Atom(F(1), False, F(2), False))
    assert g.hyp_pos.is_full and g.hyp_neg.is_full


def test_basic_formats():
    assert format_notation(complement(singleton(I))) == "{I}^c"
    assert format_notation(complement(singleton(NEG_I))) == "{-I}^c"
    assert intersect(GPLUS, complement(GPLUS)) == EMPTY


def test_membership_examples():
    assert member(P_MP, parse_notation("C3[0,1]"))
    assert not member(P_MM, parse_notation("C3[0,1]"))
    assert member(Hyperbolic(F(7, 2)), C4_POS)
    assert not member(Hyperbolic(F(-7, 2)), C4_POS)


def test_c3_brackets():
    x = parse_notation("C3<[0,1]")
    assert x == union(C4_POS, singleton(P_PP), c3("]", 0, 1, "["), singleton(P_MP))
    assert c3("<[", 1, 2, "]>") == union(C4_NEG, singleton(P_MM), c3("]", 1, 2, "["),
                                       singleton(P_PM), C4_POS)


def _sampled_negate(cid):
    return classify(-sample(cid, np.random.default_rng(0)))


def _sampled_invert(cid):
    return classify(sample(cid, np.random.default_rng(0)).inv())


def test_negate_examples():
    assert negate(singleton(P_PM)) == singleton(P_MP)
    assert _sampled_negate(P_PM) == P_MP
    assert negate(C4_POS) == C4_NEG
    assert _sampled_negate(Hyperbolic(F(5, 2))) == Hyperbolic(F(-5, 2))


def test_invert_examples():
    assert invert(singleton(Elliptic(F(1, 2)))) == singleton(Elliptic(F(3, 2)))
    assert _sampled_invert(Elliptic(F(1, 2))) == Elliptic(F(3, 2))
    assert invert(singleton(Hyperbolic(2))) == singleton(Hyperbolic(2))
    assert _sampled_invert(Hyperbolic(2)) == Hyperbolic(2)
    assert invert(singleton(P_PP)) == singleton(P_PM)
    assert _sampled_invert(P_PP) == P_PM


@pytest.mark.parametrize("cid", GRID, ids=str)
def test_set_maps_agree_with_matrix_maps(cid):
    assert negate(singleton(cid)) == singleton(_sampled_negate(cid)) == singleton(negate_id(cid))
    assert invert(singleton(cid)) == singleton(_sampled_invert(cid)) == singleton(invert_id(cid))


def test_normalize_examples():
    assert normalize_to_Gplus(Elliptic(F(1, 3))) == (Elliptic(F(1, 3)), 1)
    assert normalize_to_Gplus(Elliptic(F(4, 3))) == (Elliptic(F(1, 3)), -1)
    assert normalize_to_Gplus(P_MM) == (P_PP, -1)


@pytest.mark.parametrize("cid", GRID, ids=str)
def test_gplus_halves(cid):
    # exactly one of cid, -cid lies in G+
    assert member(cid, GPLUS) + member(negate_id(cid), GPLUS) == 1
    rep, sign = normalize_to_Gplus(cid)
    assert member(rep, GPLUS)
    assert (rep if sign > 0 else negate_id(rep)) == cid


@settings(max_examples=300, deadline=None)
@given(class_sets(), class_sets(), class_sets())
def test_boolean_laws(x, y, z):
    assert union(x, y) == union(y, x)
    assert intersect(x, y) == intersect(y, x)
    assert union(x, union(y, z)) == union(union(x, y), z)
    assert intersect(x, union(y, z)) == union(intersect(x, y), intersect(x, z))
    assert complement(union(x, y)) == intersect(complement(x), complement(y))
    assert complement(complement(x)) == x
    assert union(x, complement(x)) == G
    assert intersect(x, complement(x)) == EMPTY
    assert minus(x, y) == intersect(x, complement(y))
    assert union(x, x) == x


@settings(max_examples=300, deadline=None)
@given(class_sets(), class_sets())
def test_involutions(x, y):
    assert negate(negate(x)) == x
    assert invert(invert(x)) == x
    assert negate(invert(x)) == invert(negate(x))
    assert negate(union(x, y)) == union(negate(x), negate(y))
    assert invert(complement(x)) == complement(invert(x))
    assert negate(complement(x)) == complement(negate(x))


@settings(max_examples=200, deadline=None)
@given(class_sets())
def test_membership_matches_structure(x):
    for cid in GRID:
        assert member(cid, x) != member(cid, complement(x))
        assert member(negate_id(cid), negate(x)) == member(cid, x)
        assert member(invert_id(cid), invert(x)) == member(cid, x)


def test_bad_brackets():
    with pytest.raises(ValueError):
        c3("<[", F(1, 3), 1, "]")
    with pytest.raises(ValueError):
        c3("[", F(1, 3), F(4, 3), "]")
    with pytest.raises(ValueError):
        ClassSet(hyp_pos=HypSet(False, frozenset([F(1, 2)])))
