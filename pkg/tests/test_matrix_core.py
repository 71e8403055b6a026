import math
from fractions import Fraction as F

import numpy as np
import pytest

from sl2classes.errors import BoundaryAmbiguous, NotUnimodular
from sl2classes.ids import NEG_I, P_PM, P_PP, I, Elliptic, Hyperbolic, Parabolic, Scalar
from sl2classes.matrix_core import (
    Mat2,
    canonical_rep,
    classify,
    phi,
    phi_array,
    rotation,
    sample,
    sample_batch,
    su11_residual,
    wedge,
)

from conftest import GRID, NONSCALAR


@pytest.mark.parametrize("entries,expected", [
    ((1, 0, 1, 1), P_PP),
    ((0, -1, 1, 0), Elliptic(F(1, 2))),
    ((2, 0, 0, 0.5), Hyperbolic(2)),
    ((-1, 0, 0, -1), NEG_I),
    ((1, 0, 0, 1), I),
    ((-1, 1, 0, -1), Parabolic(-1, -1)),
])
def test_classify_examples(entries, expected):
    assert classify(Mat2(*entries)) == expected


def test_classify_is_conjugation_invariant():
    k = np.array([[1.0, 0.0], [5.0, 1.0]])
    m = k @ rotation(math.pi / 3) @ np.linalg.inv(k)
    assert classify(Mat2.from_array(m)) == Elliptic(F(1, 3))


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        Mat2(2, 0, 0, 1)


def test_near_scalar_is_ambiguous():
    e = 1 + 1e-8
    with pytest.raises(BoundaryAmbiguous):
        classify(Mat2(e, 0, 0, 1 / e))


def test_wedge():
    assert wedge((1, 0), (0, 1)) == 1
    a = Mat2(2, 3, 5, 8)
    assert wedge((1, 0), a.apply((1, 0))) == 5
    assert wedge((0.3, -2.0), (0.3, -2.0)) == 0


@pytest.mark.parametrize("cid,entries", [
    (P_PM, (1, 0, -1, 1)),
    (Elliptic(F(3, 2)), (0, 1, -1, 0)),
    (I, (1, 0, 0, 1)),
])
def test_canonical_rep_examples(cid, entries):
    m = canonical_rep(cid)
    assert (m.a, m.b, m.c, m.d) == tuple(float(x) for x in entries)
    assert classify(m) == cid


@pytest.mark.parametrize("cid", GRID, ids=str)
def test_canonical_rep_round_trip(cid):
    assert classify(canonical_rep(cid)) == cid


def test_sample_examples():
    rng = np.random.default_rng(0)
    m = sample(NEG_I, rng)
    assert (m.a, m.b, m.c, m.d) == (-1.0, 0.0, 0.0, -1.0)
    assert classify(sample(Elliptic(F(2, 3)), np.random.default_rng(42))) == Elliptic(F(2, 3))
    m = sample(Hyperbolic(F(3, 2)), rng)
    assert abs(m.trace - 13 / 6) <= 1e-9


@pytest.mark.parametrize("cid", NONSCALAR, ids=str)
def test_sampled_traces_are_class_functions(cid):
    from sl2classes.ids import class_trace

    batch = sample_batch(cid, np.random.default_rng(3), 500)
    tr = batch[:, 0, 0] + batch[:, 1, 1]
    det = batch[:, 0, 0] * batch[:, 1, 1] - batch[:, 0, 1] * batch[:, 1, 0]
    assert np.allclose(tr, class_trace(cid), atol=1e-9)
    assert np.allclose(det, 1.0, atol=1e-9)


def test_phi_identity_and_rotation():
    q = phi_array(np.eye(2))
    assert np.allclose(q, np.eye(2))
    for alpha in (0.3, 1.0, 2.5):
        q = phi_array(rotation(alpha))
        assert abs(q[0, 1]) < 1e-14 and abs(q[1, 0]) < 1e-14
        ev = sorted(np.linalg.eigvals(q), key=lambda z: z.imag)
        assert np.allclose(ev, sorted([np.exp(1j * alpha), np.exp(-1j * alpha)], key=lambda z: z.imag))


def test_phi_lands_in_su11():
    rng = np.random.default_rng(11)
    for cid in rng.choice(len(NONSCALAR), 1000):
        m = sample(NONSCALAR[cid], rng)
        q = phi(m)
        assert abs(abs(q.a) ** 2 - abs(q.b) ** 2 - 1) < 1e-9
        assert su11_residual(phi_array(m)) < 1e-9
        assert abs(q.trace - m.trace) < 1e-9


def test_parabolic_wedge_sign():
    # delta * (x ^ Ax) >= 0 for every x, with equality only on the fixed line
    rng = np.random.default_rng(5)
    xs = rng.normal(size=(2000, 2))
    for cid in (P_PP, P_PM, Parabolic(-1, 1), Parabolic(-1, -1)):
        m = sample(cid, rng).to_array()
        w = xs[:, 0] * (xs @ m.T)[:, 1] - xs[:, 1] * (xs @ m.T)[:, 0]
        assert np.all(cid.delta * w >= -1e-9)


def test_elliptic_wedge_sign():
    rng = np.random.default_rng(6)
    xs = rng.normal(size=(2000, 2))
    for alpha in (F(1, 3), F(5, 3), F(1, 2), F(4, 3)):
        m = sample(Elliptic(alpha), rng).to_array()
        w = xs[:, 0] * (xs @ m.T)[:, 1] - xs[:, 1] * (xs @ m.T)[:, 0]
        # sin(alpha) carries the orientation
        assert np.all(np.sign(w) == np.sign(math.sin(math.pi * alpha)))


def test_inverse_and_negation_laws():
    from sl2classes.ids import invert_id, negate_id

    rng = np.random.default_rng(9)
    for cid in GRID:
        m = sample(cid, rng)
        assert classify(m.inv()) == invert_id(cid)
        assert classify(-m) == negate_id(cid)


def test_scalar_sample_is_exact():
    m = sample(Scalar(1), np.random.default_rng(1))
    assert m == Mat2(1, 0, 0, 1)
