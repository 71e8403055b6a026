"""Floating-point SL(2,R) elements: classification, representatives, sampling, SU(1,1)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import BoundaryAmbiguous, NotUnimodular
from .ids import (
    ANGLE_SNAP_DENOMINATOR,
    LAMBDA_SNAP_DENOMINATOR,
    SNAP_TOL,
    ClassId,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Scalar,
    snap,
)

DET_TOL = 1e-9
CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 real matrix ``((a, b), (c, d))`` with ``ad - bc = 1``.

    The determinant test is relative: ``|ad - bc - 1| <= det_tol * max(1, |entry|)^2``.
    """

    a: float
    b: float
    c: float
    d: float
    det_tol: float = field(default=DET_TOL, compare=False, repr=False)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)))
        det = self.a * self.d - self.b * self.c
        # rounding in ad - bc grows with the square of the entries
        scale = max(1.0, abs(self.a), abs(self.b), abs(self.c), abs(self.d)) ** 2
        if not abs(det - 1.0) <= self.det_tol * scale:
            raise NotUnimodular(f"determinant {det!r} differs from 1 by more than {self.det_tol}")

    @classmethod
    def from_array(cls, arr, det_tol: float = DET_TOL) -> "Mat2":
        arr = np.asarray(arr, dtype=float)
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1], det_tol=det_tol)

    @classmethod
    def parse(cls, text: str, det_tol: float = DET_TOL) -> "Mat2":
        """Parse ``"a,b,c,d"`` (row-major decimals)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 4 comma-separated entries, got {text!r}")
        return cls(*(float(p) for p in parts), det_tol=det_tol)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            det_tol=max(self.det_tol, other.det_tol),
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d, det_tol=self.det_tol)

    def inv(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a, det_tol=self.det_tol)

    def apply(self, x) -> tuple[float, float]:
        return (self.a * x[0] + self.b * x[1], self.c * x[0] + self.d * x[1])

    def __str__(self):
        return f"{self.a!r},{self.b!r},{self.c!r},{self.d!r}"


IDENTITY = Mat2(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SU11Mat:
    """``[[a, b], [conj(b), conj(a)]]`` with ``|a|^2 - |b|^2 = 1``."""

    a: complex
    b: complex
    det_tol: float = field(default=DET_TOL, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        r = abs(self.a) ** 2 - abs(self.b) ** 2
        if not abs(r - 1.0) <= self.det_tol:
            raise NotUnimodular(f"|a|^2 - |b|^2 = {r!r} is not 1")

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.a.conjugate()]])

    def __matmul__(self, other: "SU11Mat") -> "SU11Mat":
        m = self.to_array() @ other.to_array()
        return SU11Mat(m[0, 0], m[0, 1], det_tol=max(self.det_tol, other.det_tol))

    @property
    def trace(self) -> float:
        return 2.0 * self.a.real


# Phi(A) = P^-1 A P is an isomorphism SL(2,R) -> SU(1,1)
_P = np.array([[1, 1j], [1j, 1]])
_P_INV = np.linalg.inv(_P)
_J = np.diag([1.0, -1.0])


def phi_array(m) -> np.ndarray:
    """Complex 2x2 image of ``m`` (a Mat2 or real array) in SU(1,1)."""
    arr = m.to_array() if isinstance(m, Mat2) else np.asarray(m, dtype=float)
    return _P_INV @ arr @ _P


def phi(m: Mat2) -> SU11Mat:
    if not isinstance(m, Mat2):
        m = Mat2.from_array(m)
    q = phi_array(m)
    return SU11Mat(q[0, 0], q[0, 1], det_tol=m.det_tol)


def su11_residual(q: np.ndarray) -> float:
    """max-norm of ``Q* J Q - J``; zero exactly on SU(1,1)."""
    return float(np.abs(q.conj().T @ _J @ q - _J).max())


def wedge(x, y) -> float:
    return x[0] * y[1] - x[1] * y[0]


def classify(
    m: Mat2,
    tol: float = CLASSIFY_TOL,
    snap_result: bool = True,
    angle_bound: int = ANGLE_SNAP_DENOMINATOR,
    lambda_bound: int = LAMBDA_SNAP_DENOMINATOR,
    snap_tol: float = SNAP_TOL,
) -> ClassId:
    """Conjugacy class of ``m``.

    Traces within ``tol`` of +-2 are scalar or parabolic; the deviation from the scalar
    band ``]tol, 100*tol]`` raises ``BoundaryAmbiguous``.  Elliptic orientation follows
    the sign of ``c`` (``-b`` when ``c == 0``).
    """
    if not isinstance(m, Mat2):
        m = Mat2.from_array(m)
    kind, p1, p2 = _kernels.np_classify(m.to_array()[None], tol)
    kind, p1, p2 = int(kind[0]), float(p1[0]), float(p2[0])
    if kind == _kernels.AMBIGUOUS:
        raise BoundaryAmbiguous(f"cannot separate scalar/parabolic/elliptic for {m} at tol={tol}")
    if kind == _kernels.SCALAR:
        return Scalar(int(p1))
    if kind == _kernels.PARABOLIC:
        return Parabolic(int(p1), int(p2))
    if kind == _kernels.ELLIPTIC:
        alpha = snap(p1, angle_bound, snap_tol) if snap_result else p1
        if alpha in (0, 1, 2):
            raise BoundaryAmbiguous(f"elliptic angle {p1!r} snaps onto a boundary")
        return Elliptic(alpha)
    lam = snap(p1, lambda_bound, snap_tol) if snap_result else p1
    if abs(lam) <= 1:
        raise BoundaryAmbiguous(f"hyperbolic parameter {p1!r} snaps into [-1, 1]")
    return Hyperbolic(lam)


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def canonical_array(cid: ClassId) -> np.ndarray:
    if isinstance(cid, Scalar):
        return cid.sign * np.eye(2)
    if isinstance(cid, Parabolic):
        return np.array([[cid.eps, 0.0], [cid.delta, cid.eps]], dtype=float)
    if isinstance(cid, Elliptic):
        a = cid.alpha
        if isinstance(a, Fraction) and a.denominator in (1, 2):
            # exact quarter turns
            k = int(a * 2) % 4
            c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][k]
            return np.array([[c, -s], [s, c]], dtype=float)
        return rotation(math.pi * float(a))
    lam = float(cid.lam)
    return np.array([[lam, 0.0], [0.0, 1.0 / lam]])


def canonical_rep(cid: ClassId) -> Mat2:
    return Mat2.from_array(canonical_array(cid))


def random_conjugators(rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    """``n`` matrices R(theta) diag(e^r, e^-r) [[1, s], [0, 1]].

    theta is uniform on [0, 2 pi); r and s are normal with standard deviation ``spread``.
    """
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    r = rng.normal(0.0, 1.0, n) * spread
    s = rng.normal(0.0, 1.0, n) * spread
    return _kernels.conjugators(theta, r, s)


def sample_batch(cid: ClassId, rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    """``n`` random elements of the class as an ``(n, 2, 2)`` array."""
    rep = canonical_array(cid)
    if isinstance(cid, Scalar):
        return np.broadcast_to(rep, (n, 2, 2)).copy()
    k = random_conjugators(rng, n, spread)
    return _kernels.conjugate(k, rep)


def sample(cid: ClassId, rng: np.random.Generator, spread: float = 1.0) -> Mat2:
    return Mat2.from_array(sample_batch(cid, rng, 1, spread)[0])
