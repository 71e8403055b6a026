"""Randomized matrix oracle for class products.

The oracle never consults the product engine: it samples real matrices, multiplies,
classifies and compares against a predicted ``ClassSet`` handed in by the caller.
Random streams are derived from ``(seed, tag, batch)`` so every report is reproducible.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .class_algebra import ClassSet, member
from .ids import (
    P_MP,
    P_PM,
    P_PP,
    ClassId,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Scalar,
    class_trace,
    is_scalar,
    negate_id,
    normalize_to_gplus,
)
from .matrix_core import canonical_array, phi_array, random_conjugators, rotation, sample_batch

BATCH = 4096
ANGLE_TOL = 1e-7
LAMBDA_TOL = 1e-7
CLASS_TOL = 1e-9
UGRID = np.linspace(-4.0, 4.0, 97)
FIRST_CHUNK = 64
MAX_CHUNK = 4096

_SOUND, _COVER, _TRACE = 0, 1, 2


def stream(seed: int, *tags: int) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, *tags])


def label(cid: ClassId) -> str:
    return str(cid)


def _float_label(kind: int, p1: float, p2: float) -> str:
    if kind == _kernels.SCALAR:
        return "I" if p1 > 0 else "-I"
    if kind == _kernels.PARABOLIC:
        return "C2[" + ("+" if p1 > 0 else "-") + ("+" if p2 > 0 else "-") + "]"
    if kind == _kernels.ELLIPTIC:
        return f"C3[~{p1:.9g}]"
    if kind == _kernels.HYPERBOLIC:
        return f"C4[~{p1:.9g}]"
    return "ambiguous"


def membership_batch(kind, p1, p2, predicted: ClassSet, atol=ANGLE_TOL, ltol=LAMBDA_TOL):
    """Vectorized membership of classified samples.

    Returns ``(inside, reject)``.  Samples within ``atol`` of an angle endpoint (or
    ``ltol`` relative of a listed lambda) count as inside when the endpoint class
    itself is predicted, and are rejected otherwise; ambiguous samples are rejected.
    """
    n = kind.shape[0]
    inside = np.zeros(n, dtype=bool)
    reject = kind == _kernels.AMBIGUOUS

    sc = kind == _kernels.SCALAR
    inside |= sc & (((p1 > 0) & predicted.has_I) | ((p1 < 0) & predicted.has_negI))

    pa = kind == _kernels.PARABOLIC
    for e, d in predicted.par:
        inside |= pa & (p1 == e) & (p2 == d)

    el = kind == _kernels.ELLIPTIC
    if el.any():
        x = p1
        near = np.zeros(n, dtype=bool)
        near_in = np.zeros(n, dtype=bool)
        ends = {Fraction(0), Fraction(1), Fraction(2)}
        for a in predicted.ell:
            inside |= el & (x > float(a.lo)) & (x < float(a.hi))
            ends.update((a.lo, a.hi))
        for e in ends:
            close = el & (np.abs(x - float(e)) <= atol)
            near |= close
            if e not in (0, 1, 2) and member(Elliptic(e), predicted):
                near_in |= close
        inside = np.where(el & near, near_in, inside)
        reject |= el & near & ~near_in

    hy = kind == _kernels.HYPERBOLIC
    for h, sgn in ((predicted.hyp_pos, 1), (predicted.hyp_neg, -1)):
        part = hy & (np.sign(p1) == sgn)
        if not part.any():
            continue
        near = np.zeros(n, dtype=bool)
        for v in h.values:
            near |= part & (np.abs(p1 - float(v)) <= ltol * abs(float(v)))
        if h.cofinite:
            inside |= part & ~near
            reject |= near
        else:
            inside |= near
    return inside, reject


def _chain(mats: list[np.ndarray]) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out


# ---------------------------------------------------------------- reports


@dataclass
class VerifyReport:
    query: list
    predicted: str
    trials: int
    seed: int
    rejections: int = 0
    violations: list = field(default_factory=list)
    coverage_targets: list = field(default_factory=list)
    trace_envelope: tuple = (math.inf, -math.inf)

    @property
    def sound(self) -> bool:
        return not self.violations

    @property
    def covered(self) -> bool:
        return all(t["found"] for t in self.coverage_targets)

    @property
    def ok(self) -> bool:
        return self.sound and self.covered

    @property
    def rejection_rate(self) -> float:
        return self.rejections / max(1, self.trials + self.rejections)

    def to_json(self) -> str:
        d = asdict(self)
        d["trace_envelope"] = list(self.trace_envelope)
        return json.dumps(d)

    def summary(self) -> str:
        k = sum(t["found"] for t in self.coverage_targets)
        m = len(self.coverage_targets)
        lo, hi = self.trace_envelope
        return (
            f"{' * '.join(self.query)} | {self.trials} | {len(self.violations)} | "
            f"coverage {k}/{m} | trace [{lo:.6g},{hi:.6g}]"
        )


def _soundness(query, predicted, trials, seed, tol, spread, report, max_violations=20):
    accepted = batch = 0
    lo, hi = math.inf, -math.inf
    budget = 2 * trials + BATCH
    drawn = 0
    while accepted < trials and drawn < budget:
        n = min(BATCH, trials - accepted)
        rng = stream(seed, _SOUND, batch)
        batch += 1
        drawn += n
        facs = [sample_batch(c, rng, n, spread) for c in query]
        prod = _chain(facs)
        kind, p1, p2 = _kernels.classify_batch(prod, tol)
        inside, reject = membership_batch(kind, p1, p2, predicted)
        report.rejections += int(reject.sum())
        ok = ~reject
        accepted += int(ok.sum())
        tr = prod[ok, 0, 0] + prod[ok, 1, 1]
        if tr.size:
            lo, hi = min(lo, float(tr.min())), max(hi, float(tr.max()))
        for i in np.nonzero(ok & ~inside)[0]:
            if len(report.violations) >= max_violations:
                break
            report.violations.append({
                "factors": [f[i].ravel().tolist() for f in facs],
                "product": prod[i].ravel().tolist(),
                "classified": _float_label(int(kind[i]), float(p1[i]), float(p2[i])),
            })
    report.trace_envelope = (lo, hi)


def probe_targets(predicted: ClassSet) -> list[ClassId]:
    """Deterministic coverage probes inside ``predicted``."""
    out: list[ClassId] = []
    if predicted.has_I:
        out.append(Scalar(1))
    if predicted.has_negI:
        out.append(Scalar(-1))
    out.extend(Parabolic(e, d) for e, d in sorted(predicted.par, key=lambda p: (-p[0], -p[1])))
    step = Fraction(1, 24)
    for a in predicted.ell:
        if a.is_point:
            cands = [a.lo]
        else:
            cands = [a.lo + step, (a.lo + a.hi) / 2, a.hi - step]
        seen = []
        for x in cands:
            if a.contains(x) and x not in seen:
                seen.append(x)
        out.extend(Elliptic(x) for x in seen)
    lams = [Fraction(3, 2), Fraction(2), Fraction(-3, 2), Fraction(-2)]
    for h in (predicted.hyp_pos, predicted.hyp_neg):
        if not h.cofinite:
            lams += [v for v in h.sorted_values() if v not in lams]
    out.extend(Hyperbolic(v) for v in lams if member(Hyperbolic(v), predicted))
    return out


def _same_class(kind, p1, p2, cid: ClassId, atol=1e-6, ltol=1e-6):
    if isinstance(cid, Scalar):
        return (kind == _kernels.SCALAR) & (p1 == cid.sign)
    if isinstance(cid, Parabolic):
        return (kind == _kernels.PARABOLIC) & (p1 == cid.eps) & (p2 == cid.delta)
    if isinstance(cid, Elliptic):
        return (kind == _kernels.ELLIPTIC) & (np.abs(p1 - float(cid.alpha)) <= atol)
    lam = float(cid.lam)
    return (kind == _kernels.HYPERBOLIC) & (np.abs(p1 - lam) <= ltol * abs(lam))


def _lower_borel(rng, n, spread):
    """Random lower-triangular unimodular matrices; they fix the line through e2."""
    r = rng.normal(0.0, 1.0, n) * spread
    s = rng.normal(0.0, 1.0, n) * spread
    b = np.zeros((n, 2, 2))
    b[:, 0, 0] = np.exp(r)
    b[:, 1, 1] = np.exp(-r)
    b[:, 1, 0] = s
    return b


def _align(rows, k, cid, rng, spread, mode):
    """Resample ``rows`` as K L rep L^-1 K^-1 (Borel mode) or K rep K^-1 (commuting)."""
    n = k.shape[0]
    if mode == _BOREL:
        inner = _kernels.conjugate(_lower_borel(rng, n, spread), canonical_array(cid))
    else:
        inner = np.broadcast_to(canonical_array(cid), (n, 2, 2))
    if is_scalar(cid):
        return rows
    kinv = np.empty_like(k)
    kinv[:, 0, 0], kinv[:, 1, 1] = k[:, 1, 1], k[:, 0, 0]
    kinv[:, 0, 1], kinv[:, 1, 0] = -k[:, 0, 1], -k[:, 1, 0]
    return k @ inner @ kinv


ALIGNED_EVERY = 4
_BOREL, _COMMUTING = 0, 1
# one-parameter families commuting with each canonical representative
_COMMUTING_FAMILY = {Elliptic: 2, Hyperbolic: 1, Parabolic: 0}


@dataclass
class Witness:
    found: bool
    attempts: int
    factors: list | None = None


def witness_search(query: Sequence[ClassId], target: ClassId, attempts: int = 10**5,
                   seed: int = 0, tag: int = 0, spread: float = 1.0,
                   ugrid: np.ndarray = UGRID) -> Witness:
    """Search ``A_1...A_n = C`` with ``A_i`` in ``query[i]`` and ``C`` in ``target``.

    ``C`` and ``A_1..A_{n-2}`` are sampled; ``A_{n-1}`` runs through a random
    one-parameter family and the forced last factor is solved for its trace and then
    classified against ``query[-1]``.  Two attempts in every ``ALIGNED_EVERY`` are
    structured: one draws all matrices from a single conjugate of the lower-triangular
    group (classes that need a common eigenvector), one uses commuting canonical
    representatives under a shared conjugator (closed trace endpoints).
    """
    sign, rest = 1, []
    for c in query:
        if is_scalar(c):
            sign *= c.sign
        else:
            rest.append(c)
    if sign < 0:
        target = negate_id(target)
    if len(rest) == 0:
        return Witness(target == Scalar(1), 1)
    if len(rest) == 1:
        if target == rest[0]:
            return Witness(True, 1, [canonical_array(target).ravel().tolist()])
        return Witness(False, 1)
    last, mover, prefix = rest[-1], rest[-2], rest[:-2]
    rep = canonical_array(mover)
    t_last = class_trace(last)
    used, chunk, batch = 0, FIRST_CHUNK, 0
    while used < attempts:
        n = min(chunk, attempts - used)
        rng = stream(seed, _COVER, tag, batch)
        batch += 1
        c = sample_batch(target, rng, n, spread)
        pre = np.broadcast_to(np.eye(2), (n, 2, 2)).copy()
        pres = [sample_batch(p, rng, n, spread) for p in prefix]
        if pres:
            pre = _chain(pres)
        k0 = random_conjugators(rng, n, spread)
        fam = rng.integers(0, 3, n)
        phase = np.arange(used, used + n) % ALIGNED_EVERY
        for mode, al in ((_BOREL, phase == ALIGNED_EVERY - 1), (_COMMUTING, phase == 1)):
            m = int(al.sum())
            if not m:
                continue
            k = random_conjugators(rng, m, spread)
            c[al] = _align(c[al], k, target, rng, spread, mode)
            if pres:
                pres = [p.copy() for p in pres]
                for p, cid in zip(pres, prefix):
                    p[al] = _align(p[al], k, cid, rng, spread, mode)
                pre = _chain(pres)
            if mode == _BOREL:
                k0[al] = k @ _lower_borel(rng, m, spread)
                fam[al] = rng.integers(0, 2, m)
            else:
                k0[al] = k
                fam[al] = _COMMUTING_FAMILY[type(mover)]
        mats, valid = _kernels.witness_candidates(pre, rep, k0, fam, c, t_last, ugrid)
        flat = mats.reshape(-1, 2, 2)
        kind, p1, p2 = _kernels.classify_batch(flat, CLASS_TOL)
        hit = (valid.ravel() & _same_class(kind, p1, p2, last)).reshape(valid.shape)
        rows = np.nonzero(hit.any(axis=1))[0]
        if rows.size:
            i = int(rows[0])
            j = int(np.nonzero(hit[i])[0][0])
            a_last = mats[i, j]
            a_mover = np.linalg.solve(pre[i], c[i]) @ np.linalg.inv(a_last)
            facs = [p[i] for p in pres] + [a_mover, a_last]
            return Witness(True, used + i + 1, [f.ravel().tolist() for f in facs])
        used += n
        chunk = min(MAX_CHUNK, chunk * 4)
    return Witness(False, used)


def verify_product(query: Sequence[ClassId], predicted: ClassSet, trials: int = 10**4,
                   seed: int = 0, tol: float = CLASS_TOL, coverage: bool = True,
                   attempts: int = 10**5, spread: float = 1.0) -> VerifyReport:
    """Soundness (every sample lands in ``predicted``) and coverage of the probe set."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    query = list(query)
    report = VerifyReport([label(c) for c in query], str(predicted), trials, seed)
    _soundness(query, predicted, trials, seed, tol, spread, report)
    if coverage:
        for idx, t in enumerate(probe_targets(predicted)):
            w = witness_search(query, t, attempts, seed, idx, spread)
            report.coverage_targets.append(
                {"target": label(t), "found": w.found, "attempts": w.attempts}
            )
    return report


# ---------------------------------------------------------------- trace envelopes


@dataclass(frozen=True)
class Interval:
    lo: float
    lo_closed: bool
    hi: float
    hi_closed: bool

    def negated(self) -> "Interval":
        return Interval(-self.hi, self.hi_closed, -self.lo, self.lo_closed)


def predicted_trace_interval(x: ClassId, y: ClassId) -> Interval:
    """Trace range of ``AB`` for non-scalar classes, from the explicit envelope formulas."""
    xn, sx = normalize_to_gplus(x)
    yn, sy = normalize_to_gplus(y)
    if isinstance(yn, Elliptic) and not isinstance(xn, Elliptic):
        xn, yn = yn, xn
    inf = math.inf
    if isinstance(xn, Hyperbolic) or isinstance(yn, Hyperbolic):
        out = Interval(-inf, False, inf, False)
    elif isinstance(xn, Elliptic) and isinstance(yn, Elliptic):
        out = Interval(-inf, False, 2 * math.cos(math.pi * float(xn.alpha + yn.alpha)), True)
    elif isinstance(xn, Elliptic):
        t = 2 * math.cos(math.pi * float(xn.alpha))
        out = Interval(-inf, False, t, False) if yn.delta > 0 else Interval(t, False, inf, False)
    elif xn.delta == yn.delta:
        out = Interval(-inf, False, 2.0, True)
    else:
        out = Interval(2.0, True, inf, False)
    return out if sx * sy > 0 else out.negated()


@dataclass
class TraceRangeResult:
    observed: tuple
    predicted: Interval
    verdict: bool
    attained: bool | None
    notes: list = field(default_factory=list)


def _envelope_conjugators(rng, n):
    """Conjugators with log-uniform spreads so both tame and extreme B are drawn."""
    theta = rng.uniform(0.0, 2 * math.pi, n)
    # half the angles sit near a quarter turn: the extremes need axis-aligned conjugators
    near = rng.random(n) < 0.5
    jitter = rng.choice([-1.0, 1.0], n) * 10.0 ** rng.uniform(-7, 0, n)
    theta = np.where(near, rng.integers(0, 4, n) * (math.pi / 2) + jitter, theta)
    r = rng.choice([-1.0, 1.0], n) * 10.0 ** rng.uniform(-7, 0.6, n)
    s = rng.choice([-1.0, 1.0], n) * 10.0 ** rng.uniform(-7, 1.0, n)
    return _kernels.conjugators(theta, r, s)


def trace_range_check(x: ClassId, y: ClassId, trials: int = 10**5, seed: int = 0,
                      approach: float = 1e-3, slack: float = 1e-9) -> TraceRangeResult:
    """Compare observed extrema of tr(AB) with the predicted envelope.

    ``A`` is the canonical representative of ``x``; ``B`` is a conjugate of the
    canonical representative of ``y``.  Finite endpoints must be approached within
    ``approach`` and never crossed by more than ``slack``; infinite ends must reach
    beyond 10.  Closed endpoints are also checked constructively with commuting
    canonical representatives.
    """
    pred = predicted_trace_interval(x, y)
    a = canonical_array(x)
    rep = canonical_array(y)
    lo, hi = math.inf, -math.inf
    for b in range(0, trials, BATCH):
        n = min(BATCH, trials - b)
        rng = stream(seed, _TRACE, b // BATCH)
        bm = _kernels.conjugate(_envelope_conjugators(rng, n), rep)
        tr = a[0, 0] * bm[:, 0, 0] + a[0, 1] * bm[:, 1, 0] + a[1, 0] * bm[:, 0, 1] + a[1, 1] * bm[:, 1, 1]
        lo, hi = min(lo, float(tr.min())), max(hi, float(tr.max()))
    notes, ok = [], True
    for end, obs, side in ((pred.lo, lo, -1), (pred.hi, hi, 1)):
        if math.isinf(end):
            if side * obs < 10:
                ok = False
                notes.append(f"observed {obs:.6g} does not reach far toward {end}")
            continue
        if side * (obs - end) > slack:
            ok = False
            notes.append(f"observed {obs!r} crosses endpoint {end!r}")
        if abs(obs - end) > approach:
            ok = False
            notes.append(f"observed {obs!r} stays {abs(obs - end):.3g} from endpoint {end!r}")
    attained = None
    if pred.hi_closed or pred.lo_closed:
        end = pred.hi if pred.hi_closed else pred.lo
        t = float(np.trace(a @ rep))
        attained = abs(t - end) <= 1e-12
        ok = ok and attained
    return TraceRangeResult((lo, hi), pred, ok, attained, notes)


# ---------------------------------------------------------------- trace formula


def trace_formula_check(alpha, beta, trials: int = 10**4, seed: int = 0,
                        spread: float = 1.0) -> float:
    """Max absolute error of ``tr(Phi(A)Phi(B)) = 2cos(a+b) - 4|q|^2 sin a sin b``.

    ``A`` is the rotation by ``alpha``, ``B = K R(beta) K^-1`` and ``q`` is the
    off-diagonal entry of ``Phi(K)``.  Angles in pi units inside ]0,1[.
    """
    a, b = math.pi * float(alpha), math.pi * float(beta)
    pa = phi_array(rotation(a))
    pb0 = phi_array(rotation(b))
    rng = stream(seed, 3)
    k = random_conjugators(rng, trials, spread)
    q = phi_array(k)
    # exact inverse in SU(1,1): [[conj a, -b], [-conj b, a]]
    qinv = np.empty_like(q)
    qinv[:, 0, 0], qinv[:, 1, 1] = np.conj(q[:, 0, 0]), q[:, 0, 0]
    qinv[:, 0, 1], qinv[:, 1, 0] = -q[:, 0, 1], -np.conj(q[:, 0, 1])
    pb = q @ pb0 @ qinv
    tr = np.einsum("ij,nji->n", pa, pb)
    formula = 2 * math.cos(a + b) - 4 * np.abs(q[:, 0, 1]) ** 2 * math.sin(a) * math.sin(b)
    return float(max(np.abs(tr.real - formula).max(), np.abs(tr.imag).max()))


def phi_homomorphism_check(trials: int = 10**4, seed: int = 0, spread: float = 1.0):
    """Max of ``|Phi(AB) - Phi(A)Phi(B)|`` and of the SU(1,1) residual, both scaled."""
    rng = stream(seed, 4)
    ka = random_conjugators(rng, trials, spread)
    kb = random_conjugators(rng, trials, spread)
    j = np.diag([1.0, -1.0])
    pa, pb, pab = phi_array(ka), phi_array(kb), phi_array(ka @ kb)
    scale = np.maximum(1.0, np.abs(pa).max(axis=(1, 2)) * np.abs(pb).max(axis=(1, 2)))
    hom = (np.abs(pab - pa @ pb).max(axis=(1, 2)) / scale).max()
    r = np.conj(np.swapaxes(pab, 1, 2)) @ j @ pab - j
    res = (np.abs(r).max(axis=(1, 2)) / np.maximum(1.0, np.abs(pab).max(axis=(1, 2)) ** 2)).max()
    return float(hom), float(res)


# ---------------------------------------------------------------- exclusion


def _eigvecs(m: np.ndarray) -> list[np.ndarray]:
    w, v = np.linalg.eig(m)
    return [np.real(v[:, i]) for i in range(2) if abs(w[i].imag) < 1e-12]


def common_eigenvector(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether ``a`` and ``b`` share a real eigenline (scalars share every line)."""
    if np.allclose(a, a[0, 0] * np.eye(2), atol=tol) or np.allclose(b, b[0, 0] * np.eye(2), atol=tol):
        return True
    for v in _eigvecs(a):
        bv = b @ v
        if abs(v[0] * bv[1] - v[1] * bv[0]) <= tol * max(1.0, np.abs(b).max()):
            return True
    return False


@dataclass
class ExclusionResult:
    checked: int
    violations: list
    exceptions: int

    @property
    def ok(self) -> bool:
        return not self.violations


def _forbidden(kind, p1, p2):
    """Classes of -G+ closure: angles in ]1,2[, C2[--], C2[+-], and both scalars."""
    return (
        (kind == _kernels.SCALAR)
        | ((kind == _kernels.ELLIPTIC) & (p1 > 1))
        | ((kind == _kernels.PARABOLIC) & (p2 < 0))
    )


def exclusion_pairs(step=Fraction(1, 12)):
    lefts = [Elliptic(Fraction(k) * step) for k in range(1, int(1 / step))] + [P_PP, P_MP]
    rights = [Scalar(1), P_PP, P_PM, Hyperbolic(Fraction(3, 2)), Hyperbolic(Fraction(2))]
    return lefts, rights


def common_eigenvector_exclusion_check(trials: int = 10**4, seed: int = 0) -> ExclusionResult:
    """Products of C3[0,1] with closure(C4+) avoid the forbidden classes.

    The only allowed exceptions are pairs with a common eigenvector.
    """
    lefts, rights = exclusion_pairs()
    violations, exceptions, checked = [], 0, 0
    for i, x in enumerate(lefts):
        for j, y in enumerate(rights):
            rng = stream(seed, 5, i, j)
            a = sample_batch(x, rng, trials)
            b = sample_batch(y, rng, trials)
            ab = a @ b
            kind, p1, p2 = _kernels.classify_batch(ab, CLASS_TOL)
            bad = _forbidden(kind, p1, p2)
            checked += trials
            for k in np.nonzero(bad)[0]:
                if common_eigenvector(a[k], b[k]):
                    exceptions += 1
                else:
                    violations.append((label(x), label(y), ab[k].ravel().tolist()))
    return ExclusionResult(checked, violations, exceptions)


# ---------------------------------------------------------------- identity region of three rotations

# coarser scan: the identity searches dominate the cost of a full grid
FIGURE1_UGRID = np.linspace(-4.0, 4.0, 33)


@dataclass
class Figure1Oracle:
    points: int
    contradictions: list
    missing: list
    true_points: int


def figure1_oracle(verdicts: dict, attempts: int = 10**4, seed: int = 0,
                   ugrid: np.ndarray = FIGURE1_UGRID) -> Figure1Oracle:
    """Identity-witness search for triples of angles.

    ``verdicts`` maps angle triples to the symbolic answer.  Class products commute and
    inversion maps a triple to its mirror image, so one search per orbit is run and its
    outcome shared by every triple in the orbit.
    """
    done: dict = {}
    contradictions, missing = [], []
    for idx, key in enumerate(sorted(verdicts)):
        orbit = tuple(sorted(key))
        mirror = tuple(sorted(2 - a for a in key))
        rep = min(orbit, mirror)
        if rep not in done:
            q = [Elliptic(a) for a in rep]
            done[rep] = witness_search(q, Scalar(1), attempts, seed, idx, ugrid=ugrid).found
        found = done[rep]
        if found and not verdicts[key]:
            contradictions.append(key)
        if verdicts[key] and not found:
            missing.append(key)
    return Figure1Oracle(len(verdicts), contradictions, missing, sum(map(bool, verdicts.values())))
