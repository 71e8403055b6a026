"""Batch numeric kernels for the sampling oracle.

Each kernel has a numba ``@njit`` implementation and a vectorized numpy one with the
same signature.  The numba path is used when numba imports cleanly and the environment
variable ``SL2CLASSES_DISABLE_NUMBA`` is unset (or "0").  ``use_numba()`` reports the
active path; ``KERNELS_NUMBA`` / ``KERNELS_NUMPY`` expose both for benchmarking.

Classification codes returned by ``classify_batch``:
    -1 ambiguous, 0 scalar (p1 = sign), 1 parabolic (p1 = eps, p2 = delta),
     2 elliptic (p1 = angle in pi units), 3 hyperbolic (p1 = lambda, |lambda| > 1).
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

AMBIGUOUS, SCALAR, PARABOLIC, ELLIPTIC, HYPERBOLIC = -1, 0, 1, 2, 3

# scalar vs parabolic: deviation from +-I in ]tol, SCALAR_BAND*tol] is ambiguous
SCALAR_BAND = 100.0
# refine a local minimum of |f| when the parabolic vertex value is below this fraction
VERTEX_RATIO = 0.1
REFINE_ITERS = 80
# stop refining once |f| drops below this fraction of ftol
STOP_FRACTION = 0.01
_GOLD = 0.6180339887498949


def _numba_disabled() -> bool:
    return os.environ.get("SL2CLASSES_DISABLE_NUMBA", "0") not in ("", "0")


def use_numba() -> bool:
    return HAVE_NUMBA and not _numba_disabled()


# ---------------------------------------------------------------- numpy path


def np_conjugators(theta, r, s):
    """K = R(theta) diag(e^r, e^-r) [[1, s], [0, 1]] for each row."""
    ct, st = np.cos(theta), np.sin(theta)
    er, eri = np.exp(r), np.exp(-r)
    k = np.empty(theta.shape + (2, 2))
    k[..., 0, 0] = ct * er
    k[..., 1, 0] = st * er
    k[..., 0, 1] = ct * er * s - st * eri
    k[..., 1, 1] = st * er * s + ct * eri
    return k


def np_conjugate(k, rep):
    """K rep K^-1 for a batch of unimodular K."""
    kinv = np.empty_like(k)
    kinv[..., 0, 0] = k[..., 1, 1]
    kinv[..., 1, 1] = k[..., 0, 0]
    kinv[..., 0, 1] = -k[..., 0, 1]
    kinv[..., 1, 0] = -k[..., 1, 0]
    return k @ rep @ kinv


def np_classify(m, tol):
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    n = m.shape[0]
    t = a + d
    kind = np.full(n, AMBIGUOUS, dtype=np.int64)
    p1 = np.zeros(n)
    p2 = np.zeros(n)

    s = np.where(t >= 0, 1.0, -1.0)
    near = np.abs(np.abs(t) - 2.0) <= tol
    dev = np.maximum.reduce([np.abs(a - s), np.abs(b), np.abs(c), np.abs(d - s)])
    sc = near & (dev <= tol)
    kind[sc] = SCALAR
    p1[sc] = s[sc]
    cb = c - b
    par = near & (dev > SCALAR_BAND * tol) & (cb != 0)
    kind[par] = PARABOLIC
    p1[par] = s[par]
    p2[par] = np.sign(cb[par])

    ell = (~near) & (np.abs(t) < 2.0)
    orient = np.where(c != 0, c, -b)
    half = np.clip(t / 2.0, -1.0, 1.0)
    a0 = np.arccos(half) / np.pi
    ok = ell & (orient != 0)
    kind[ok] = ELLIPTIC
    p1[ok] = np.where(orient[ok] > 0, a0[ok], 2.0 - a0[ok])

    hyp = (~near) & (np.abs(t) > 2.0)
    kind[hyp] = HYPERBOLIC
    th = t[hyp]
    p1[hyp] = (th + np.sign(th) * np.sqrt(th * th - 4.0)) / 2.0
    return kind, p1, p2


def _np_family(k0, fam, u):
    """K0 F(u); fam 0 lower shear, 1 diagonal, 2 rotation."""
    f = np.zeros(u.shape + (2, 2))
    eu, eui = np.exp(np.where(fam == 1, u, 0.0)), np.exp(-np.where(fam == 1, u, 0.0))
    cu, su = np.cos(u), np.sin(u)
    f[..., 0, 0] = np.where(fam == 0, 1.0, np.where(fam == 1, eu, cu))
    f[..., 1, 1] = np.where(fam == 0, 1.0, np.where(fam == 1, eui, cu))
    f[..., 1, 0] = np.where(fam == 0, u, np.where(fam == 1, 0.0, su))
    f[..., 0, 1] = np.where(fam == 2, -su, 0.0)
    return k0 @ f


def _np_forced(pre, rep, k0, fam, c, u):
    """(pre A(u))^-1 C with A(u) = K(u) rep K(u)^-1."""
    a = np_conjugate(_np_family(k0, fam, u), rep)
    p = pre @ a
    adj = np.empty_like(p)
    adj[..., 0, 0] = p[..., 1, 1]
    adj[..., 1, 1] = p[..., 0, 0]
    adj[..., 0, 1] = -p[..., 0, 1]
    adj[..., 1, 0] = -p[..., 1, 0]
    return adj @ c


def np_witness_candidates(pre, rep, k0, fam, c, t_target, ugrid, ftol, maxc):
    """Candidate forced last factors whose trace equals ``t_target``.

    For attempt ``i`` the scalar function f(u) = tr((pre_i A_i(u))^-1 C_i) - t_target is
    scanned on ``ugrid``; sign changes are bisected and near-tangential local minima of
    |f| are refined by golden-section search.  Returns ``(mats, valid)`` with shapes
    ``(N, maxc, 2, 2)`` and ``(N, maxc)``.
    """
    n, m = pre.shape[0], ugrid.shape[0]
    ug = np.broadcast_to(ugrid, (n, m))
    mg = _np_forced(pre[:, None], rep, k0[:, None], fam[:, None], c[:, None], ug)
    fg = mg[..., 0, 0] + mg[..., 1, 1] - t_target
    scale = np.maximum(1.0, np.abs(mg).max(axis=(-1, -2)))
    small = np.abs(fg) <= ftol * scale

    af = np.abs(fg)
    touch = np.zeros((n, m), dtype=bool)
    fl, fc, fr = fg[:, :-2], fg[:, 1:-1], fg[:, 2:]
    d2 = fr - 2 * fc + fl
    with np.errstate(divide="ignore", invalid="ignore"):
        v = fc - (fr - fl) ** 2 / (8 * d2)
        ratio = v / fc
    lmin = (af[:, 1:-1] <= af[:, :-2]) & (af[:, 1:-1] <= af[:, 2:]) & (d2 != 0) & (fc != 0)
    touch[:, 1:-1] = lmin & (ratio <= VERTEX_RATIO)
    touch &= ~small
    sign = np.zeros((n, m), dtype=bool)
    sign[:, :-1] = fg[:, :-1] * fg[:, 1:] < 0

    # candidate keys: 2j for point/touch at j, 2j+1 for the bracket [j, j+1]
    kind_pt = np.where(small, 1, np.where(touch, 2, 0))
    keys_i, keys_k, keys_t = [], [], []
    ii, jj = np.nonzero(kind_pt)
    keys_i.append(ii), keys_k.append(2 * jj), keys_t.append(kind_pt[ii, jj])
    ii, jj = np.nonzero(sign)
    keys_i.append(ii), keys_k.append(2 * jj + 1), keys_t.append(np.full(ii.shape, 3))
    ci = np.concatenate(keys_i)
    ck = np.concatenate(keys_k)
    ct = np.concatenate(keys_t)
    order = np.lexsort((ck, ci))
    ci, ck, ct = ci[order], ck[order], ct[order]
    # rank within attempt
    first = np.searchsorted(ci, ci, side="left")
    rank = np.arange(ci.shape[0]) - first
    keep = rank < maxc
    ci, ck, ct, rank = ci[keep], ck[keep], ct[keep], rank[keep]
    j = ck // 2

    u_out = np.zeros(ci.shape[0])
    pt = ct == 1
    u_out[pt] = ugrid[j[pt]]

    def fvals(idx, u):
        mm = _np_forced(pre[idx], rep, k0[idx], fam[idx], c[idx], u)
        return mm[..., 0, 0] + mm[..., 1, 1] - t_target

    gs = ct == 2
    if gs.any():
        idx = ci[gs]
        lo, hi = ugrid[j[gs] - 1].copy(), ugrid[j[gs] + 1].copy()
        x1 = hi - _GOLD * (hi - lo)
        x2 = lo + _GOLD * (hi - lo)
        f1, f2 = np.abs(fvals(idx, x1)), np.abs(fvals(idx, x2))
        done = np.zeros(lo.shape, dtype=bool)
        for _ in range(REFINE_ITERS):
            done |= np.minimum(f1, f2) <= STOP_FRACTION * ftol
            left = (f1 < f2) & ~done
            right = (f1 >= f2) & ~done
            hi = np.where(left, x2, hi)
            lo = np.where(right, x1, lo)
            nx1 = hi - _GOLD * (hi - lo)
            nx2 = lo + _GOLD * (hi - lo)
            # reuse the surviving interior point
            x1n = np.where(left, nx1, np.where(right, x2, x1))
            x2n = np.where(left, x1, np.where(right, nx2, x2))
            fnew = np.abs(fvals(idx, np.where(left, x1n, x2n)))
            f1n = np.where(left, fnew, np.where(right, f2, f1))
            f2n = np.where(left, f1, np.where(right, fnew, f2))
            x1, x2, f1, f2 = x1n, x2n, f1n, f2n
        u_out[gs] = np.where(f1 < f2, x1, x2)

    bs = ct == 3
    if bs.any():
        idx = ci[bs]
        lo, hi = ugrid[j[bs]].copy(), ugrid[j[bs] + 1].copy()
        flo = fvals(idx, lo)
        done = np.zeros(lo.shape, dtype=bool)
        for _ in range(REFINE_ITERS):
            mid = 0.5 * (lo + hi)
            fm = fvals(idx, mid)
            stop = ~done & (np.abs(fm) <= STOP_FRACTION * ftol)
            same = ~done & ~stop & (fm * flo > 0)
            other = ~done & ~stop & ~same
            lo = np.where(same | stop, mid, lo)
            flo = np.where(same, fm, flo)
            hi = np.where(other | stop, mid, hi)
            done |= stop
        u_out[bs] = 0.5 * (lo + hi)

    mats = np.zeros((n, maxc, 2, 2))
    valid = np.zeros((n, maxc), dtype=bool)
    if ci.shape[0]:
        mm = _np_forced(pre[ci], rep, k0[ci], fam[ci], c[ci], u_out)
        f = mm[..., 0, 0] + mm[..., 1, 1] - t_target
        sc = np.maximum(1.0, np.abs(mm).max(axis=(-1, -2)))
        mats[ci, rank] = mm
        valid[ci, rank] = np.abs(f) <= ftol * sc
    return mats, valid


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def nb_conjugators(theta, r, s):
        n = theta.shape[0]
        k = np.empty((n, 2, 2))
        for i in range(n):
            ct, st = np.cos(theta[i]), np.sin(theta[i])
            er, eri = np.exp(r[i]), np.exp(-r[i])
            k[i, 0, 0] = ct * er
            k[i, 1, 0] = st * er
            k[i, 0, 1] = ct * er * s[i] - st * eri
            k[i, 1, 1] = st * er * s[i] + ct * eri
        return k

    @njit(cache=True)
    def nb_conjugate(k, rep):
        n = k.shape[0]
        out = np.empty((n, 2, 2))
        r00, r01, r10, r11 = rep[0, 0], rep[0, 1], rep[1, 0], rep[1, 1]
        for i in range(n):
            k00, k01, k10, k11 = k[i, 0, 0], k[i, 0, 1], k[i, 1, 0], k[i, 1, 1]
            t00 = k00 * r00 + k01 * r10
            t01 = k00 * r01 + k01 * r11
            t10 = k10 * r00 + k11 * r10
            t11 = k10 * r01 + k11 * r11
            out[i, 0, 0] = t00 * k11 - t01 * k10
            out[i, 0, 1] = -t00 * k01 + t01 * k00
            out[i, 1, 0] = t10 * k11 - t11 * k10
            out[i, 1, 1] = -t10 * k01 + t11 * k00
        return out

    @njit(cache=True)
    def nb_classify(m, tol):
        n = m.shape[0]
        kind = np.empty(n, dtype=np.int64)
        p1 = np.zeros(n)
        p2 = np.zeros(n)
        for i in range(n):
            a, b, c, d = m[i, 0, 0], m[i, 0, 1], m[i, 1, 0], m[i, 1, 1]
            t = a + d
            kind[i] = AMBIGUOUS
            if abs(abs(t) - 2.0) <= tol:
                s = 1.0 if t >= 0 else -1.0
                dev = max(max(abs(a - s), abs(b)), max(abs(c), abs(d - s)))
                if dev <= tol:
                    kind[i] = SCALAR
                    p1[i] = s
                elif dev > SCALAR_BAND * tol and c - b != 0:
                    kind[i] = PARABOLIC
                    p1[i] = s
                    p2[i] = 1.0 if c - b > 0 else -1.0
            elif abs(t) < 2.0:
                orient = c if c != 0 else -b
                if orient != 0:
                    h = min(1.0, max(-1.0, t / 2.0))
                    a0 = np.arccos(h) / np.pi
                    kind[i] = ELLIPTIC
                    p1[i] = a0 if orient > 0 else 2.0 - a0
            else:
                kind[i] = HYPERBOLIC
                sg = 1.0 if t > 0 else -1.0
                p1[i] = (t + sg * np.sqrt(t * t - 4.0)) / 2.0
        return kind, p1, p2

    @njit(cache=True)
    def _nb_family(fam, u):
        if fam == 0:
            return 1.0, 0.0, u, 1.0
        if fam == 1:
            return np.exp(u), 0.0, 0.0, np.exp(-u)
        return np.cos(u), -np.sin(u), np.sin(u), np.cos(u)

    @njit(cache=True)
    def _nb_forced(pre, rep, k0, fam, c, u):
        f00, f01, f10, f11 = _nb_family(fam, u)
        return _nb_forced_f(pre, rep, k0, f00, f01, f10, f11, c)

    @njit(cache=True)
    def _nb_forced_f(pre, rep, k0, f00, f01, f10, f11, c):
        k00 = k0[0, 0] * f00 + k0[0, 1] * f10
        k01 = k0[0, 0] * f01 + k0[0, 1] * f11
        k10 = k0[1, 0] * f00 + k0[1, 1] * f10
        k11 = k0[1, 0] * f01 + k0[1, 1] * f11
        t00 = k00 * rep[0, 0] + k01 * rep[1, 0]
        t01 = k00 * rep[0, 1] + k01 * rep[1, 1]
        t10 = k10 * rep[0, 0] + k11 * rep[1, 0]
        t11 = k10 * rep[0, 1] + k11 * rep[1, 1]
        a00 = t00 * k11 - t01 * k10
        a01 = -t00 * k01 + t01 * k00
        a10 = t10 * k11 - t11 * k10
        a11 = -t10 * k01 + t11 * k00
        p00 = pre[0, 0] * a00 + pre[0, 1] * a10
        p01 = pre[0, 0] * a01 + pre[0, 1] * a11
        p10 = pre[1, 0] * a00 + pre[1, 1] * a10
        p11 = pre[1, 0] * a01 + pre[1, 1] * a11
        m00 = p11 * c[0, 0] - p01 * c[1, 0]
        m01 = p11 * c[0, 1] - p01 * c[1, 1]
        m10 = -p10 * c[0, 0] + p00 * c[1, 0]
        m11 = -p10 * c[0, 1] + p00 * c[1, 1]
        return m00, m01, m10, m11

    @njit(cache=True)
    def _nb_f(pre, rep, k0, fam, c, u, t_target):
        m00, m01, m10, m11 = _nb_forced(pre, rep, k0, fam, c, u)
        return m00 + m11 - t_target

    @njit(cache=True)
    def nb_witness_candidates(pre, rep, k0, fam, c, t_target, ugrid, ftol, maxc):
        n, m = pre.shape[0], ugrid.shape[0]
        mats = np.zeros((n, maxc, 2, 2))
        valid = np.zeros((n, maxc), dtype=np.bool_)
        fg = np.empty(m)
        sc = np.empty(m)
        ftab = np.empty((3, m, 4))
        for f in range(3):
            for j in range(m):
                ftab[f, j, 0], ftab[f, j, 1], ftab[f, j, 2], ftab[f, j, 3] = _nb_family(f, ugrid[j])
        for i in range(n):
            fi = fam[i]
            for j in range(m):
                m00, m01, m10, m11 = _nb_forced_f(
                    pre[i], rep, k0[i], ftab[fi, j, 0], ftab[fi, j, 1], ftab[fi, j, 2], ftab[fi, j, 3], c[i]
                )
                fg[j] = m00 + m11 - t_target
                sc[j] = max(1.0, max(max(abs(m00), abs(m01)), max(abs(m10), abs(m11))))
            cnt = 0
            for j in range(m):
                if cnt >= maxc:
                    break
                # point / tangential candidate at j
                u = 0.0
                ctype = 0
                if abs(fg[j]) <= ftol * sc[j]:
                    ctype = 1
                    u = ugrid[j]
                elif 0 < j < m - 1 and fg[j] != 0:
                    fl, fc, fr = fg[j - 1], fg[j], fg[j + 1]
                    d2 = fr - 2 * fc + fl
                    if abs(fc) <= abs(fl) and abs(fc) <= abs(fr) and d2 != 0:
                        v = fc - (fr - fl) ** 2 / (8 * d2)
                        if v / fc <= VERTEX_RATIO:
                            ctype = 2
                if ctype == 2:
                    lo, hi = ugrid[j - 1], ugrid[j + 1]
                    x1 = hi - _GOLD * (hi - lo)
                    x2 = lo + _GOLD * (hi - lo)
                    f1 = abs(_nb_f(pre[i], rep, k0[i], fam[i], c[i], x1, t_target))
                    f2 = abs(_nb_f(pre[i], rep, k0[i], fam[i], c[i], x2, t_target))
                    for _ in range(REFINE_ITERS):
                        if min(f1, f2) <= STOP_FRACTION * ftol:
                            break
                        if f1 < f2:
                            hi = x2
                            nx1 = hi - _GOLD * (hi - lo)
                            x2, f2 = x1, f1
                            x1 = nx1
                            f1 = abs(_nb_f(pre[i], rep, k0[i], fam[i], c[i], x1, t_target))
                        else:
                            lo = x1
                            nx2 = lo + _GOLD * (hi - lo)
                            x1, f1 = x2, f2
                            x2 = nx2
                            f2 = abs(_nb_f(pre[i], rep, k0[i], fam[i], c[i], x2, t_target))
                    u = x1 if f1 < f2 else x2
                if ctype != 0:
                    m00, m01, m10, m11 = _nb_forced(pre[i], rep, k0[i], fam[i], c[i], u)
                    s = max(1.0, max(max(abs(m00), abs(m01)), max(abs(m10), abs(m11))))
                    mats[i, cnt, 0, 0] = m00
                    mats[i, cnt, 0, 1] = m01
                    mats[i, cnt, 1, 0] = m10
                    mats[i, cnt, 1, 1] = m11
                    valid[i, cnt] = abs(m00 + m11 - t_target) <= ftol * s
                    cnt += 1
                    if cnt >= maxc:
                        break
                # bracket [j, j+1]
                if j < m - 1 and fg[j] * fg[j + 1] < 0:
                    lo, hi = ugrid[j], ugrid[j + 1]
                    flo = fg[j]
                    for _ in range(REFINE_ITERS):
                        mid = 0.5 * (lo + hi)
                        fm = _nb_f(pre[i], rep, k0[i], fam[i], c[i], mid, t_target)
                        if abs(fm) <= STOP_FRACTION * ftol:
                            lo, hi = mid, mid
                            break
                        if fm * flo > 0:
                            lo, flo = mid, fm
                        else:
                            hi = mid
                    u = 0.5 * (lo + hi)
                    m00, m01, m10, m11 = _nb_forced(pre[i], rep, k0[i], fam[i], c[i], u)
                    s = max(1.0, max(max(abs(m00), abs(m01)), max(abs(m10), abs(m11))))
                    mats[i, cnt, 0, 0] = m00
                    mats[i, cnt, 0, 1] = m01
                    mats[i, cnt, 1, 0] = m10
                    mats[i, cnt, 1, 1] = m11
                    valid[i, cnt] = abs(m00 + m11 - t_target) <= ftol * s
                    cnt += 1
        return mats, valid


KERNELS_NUMPY = {
    "conjugators": np_conjugators,
    "conjugate": np_conjugate,
    "classify": np_classify,
    "witness_candidates": np_witness_candidates,
}

KERNELS_NUMBA = (
    {
        "conjugators": nb_conjugators,
        "conjugate": nb_conjugate,
        "classify": nb_classify,
        "witness_candidates": nb_witness_candidates,
    }
    if HAVE_NUMBA
    else None
)


def kernels() -> dict:
    return KERNELS_NUMBA if use_numba() else KERNELS_NUMPY


def conjugators(theta, r, s):
    theta, r, s = (np.ascontiguousarray(x, dtype=np.float64) for x in (theta, r, s))
    return kernels()["conjugators"](theta, r, s)


def conjugate(k, rep):
    return kernels()["conjugate"](np.ascontiguousarray(k), np.ascontiguousarray(rep, dtype=np.float64))


def classify_batch(m, tol=1e-9):
    return kernels()["classify"](np.ascontiguousarray(m, dtype=np.float64), float(tol))


def witness_candidates(pre, rep, k0, fam, c, t_target, ugrid, ftol=1e-9, maxc=4):
    args = (
        np.ascontiguousarray(pre, dtype=np.float64),
        np.ascontiguousarray(rep, dtype=np.float64),
        np.ascontiguousarray(k0, dtype=np.float64),
        np.ascontiguousarray(fam, dtype=np.int64),
        np.ascontiguousarray(c, dtype=np.float64),
        float(t_target),
        np.ascontiguousarray(ugrid, dtype=np.float64),
        float(ftol),
        int(maxc),
    )
    return kernels()["witness_candidates"](*args)
