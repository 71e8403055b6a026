import numpy as np
import pytest

from sl2classes import _kernels
from sl2classes.ids import P_PM, Elliptic, Hyperbolic
from sl2classes.matrix_core import canonical_array, random_conjugators, sample_batch
from sl2classes.mc_oracle import UGRID

from conftest import GRID

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("SL2CLASSES_DISABLE_NUMBA", "1")
    assert not _kernels.use_numba()
    assert _kernels.kernels() is _kernels.KERNELS_NUMPY
    monkeypatch.setenv("SL2CLASSES_DISABLE_NUMBA", "0")
    assert _kernels.use_numba() == _kernels.HAVE_NUMBA


@needs_numba
def test_conjugators_agree():
    rng = np.random.default_rng(0)
    theta, r, s = rng.uniform(0, 6.3, 1000), rng.normal(size=1000), rng.normal(size=1000)
    a = _kernels.KERNELS_NUMPY["conjugators"](theta, r, s)
    b = _kernels.KERNELS_NUMBA["conjugators"](theta, r, s)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-13)
    det = a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]
    assert np.allclose(det, 1.0)


@needs_numba
@pytest.mark.parametrize("cid", GRID, ids=str)
def test_conjugate_and_classify_agree(cid):
    rng = np.random.default_rng(1)
    k = random_conjugators(rng, 500)
    rep = canonical_array(cid)
    a = _kernels.KERNELS_NUMPY["conjugate"](k, rep)
    b = _kernels.KERNELS_NUMBA["conjugate"](k, rep)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)
    ka, pa, qa = _kernels.KERNELS_NUMPY["classify"](a, 1e-9)
    kb, pb, qb = _kernels.KERNELS_NUMBA["classify"](a, 1e-9)
    assert np.array_equal(ka, kb)
    assert np.allclose(pa, pb) and np.allclose(qa, qb)


@needs_numba
@pytest.mark.parametrize("mover,last,target", [
    (Elliptic(0.5), Elliptic(0.5), Hyperbolic(-2.0)),
    (Elliptic(1 / 3), P_PM, Elliptic(0.25)),
    (Hyperbolic(2.0), Elliptic(1 / 3), Elliptic(0.75)),
])
def test_witness_candidates_agree(mover, last, target):
    from sl2classes.ids import class_trace

    rng = np.random.default_rng(2)
    n = 200
    pre = np.broadcast_to(np.eye(2), (n, 2, 2)).copy()
    c = sample_batch(target, rng, n)
    k0 = random_conjugators(rng, n)
    fam = rng.integers(0, 3, n)
    args = (pre, canonical_array(mover), k0, fam, c, class_trace(last), UGRID, 1e-9, 4)
    ma, va = _kernels.KERNELS_NUMPY["witness_candidates"](*args)
    mb, vb = _kernels.KERNELS_NUMBA["witness_candidates"](*args)
    assert va.sum() > 0
    # root refinement may stop on either side of a sign change; compare valid sets loosely
    agree = (va == vb).mean()
    assert agree > 0.98
    both = va & vb
    tr = mb[both][:, 0, 0] + mb[both][:, 1, 1]
    assert np.allclose(tr, class_trace(last), atol=1e-7)
    assert np.allclose(ma[both], mb[both], rtol=1e-5, atol=1e-5)
