"""Symbolic names for the conjugacy classes of SL(2,R).

Angles of elliptic classes are stored in units of pi, so ``Elliptic(Fraction(1, 3))``
is the class of the rotation by pi/3.  Exact parameters are ``Fraction``; numeric input
that fails rational snapping is carried as a plain ``float`` and only supports ordered
comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[Fraction, float]

ANGLE_SNAP_DENOMINATOR = 360
LAMBDA_SNAP_DENOMINATOR = 10_000
SNAP_TOL = 1e-7


def as_exact(x) -> Number:
    """Coerce ints, Fractions and rational strings to Fraction; floats pass through."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a class parameter")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


def snap(x: float, max_denominator: int, tol: float = SNAP_TOL) -> Number:
    """Closest rational with bounded denominator if it is within ``tol``, else ``x``."""
    q = Fraction(x).limit_denominator(max_denominator)
    if abs(float(q) - x) <= tol:
        return q
    return float(x)


def is_exact(x) -> bool:
    return isinstance(x, Fraction)


def fmt_number(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


@dataclass(frozen=True)
class Scalar:
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"scalar sign must be +1 or -1, got {self.sign}")

    def __str__(self):
        return "I" if self.sign > 0 else "-I"


@dataclass(frozen=True)
class Parabolic:
    """Trace ``2*eps``; ``delta`` is the orientation sign of ``c - b``."""

    eps: int
    delta: int

    def __post_init__(self):
        if self.eps not in (1, -1) or self.delta not in (1, -1):
            raise ValueError("parabolic signs must be +1 or -1")

    def __str__(self):
        return "C2[" + ("+" if self.eps > 0 else "-") + ("+" if self.delta > 0 else "-") + "]"


@dataclass(frozen=True)
class Elliptic:
    """Rotation class with angle ``alpha * pi``, ``0 < alpha < 2`` and ``alpha != 1``."""

    alpha: Number

    def __post_init__(self):
        a = as_exact(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not (0 < a < 2) or a == 1:
            raise ValueError(f"elliptic angle must lie in ]0,2[ minus {{1}} (pi units), got {a}")

    def __str__(self):
        return f"C3[{fmt_number(self.alpha)}]"


@dataclass(frozen=True)
class Hyperbolic:
    """Class of ``diag(lam, 1/lam)``; ``|lam| > 1`` is the canonical representative."""

    lam: Number

    def __post_init__(self):
        lam = as_exact(self.lam)
        object.__setattr__(self, "lam", lam)
        if not abs(lam) > 1:
            raise ValueError(f"hyperbolic parameter needs |lambda| > 1, got {lam}")

    def __str__(self):
        return f"C4[{fmt_number(self.lam)}]"


ClassId = Union[Scalar, Parabolic, Elliptic, Hyperbolic]

I = Scalar(1)
NEG_I = Scalar(-1)
P_PP = Parabolic(1, 1)
P_PM = Parabolic(1, -1)
P_MP = Parabolic(-1, 1)
P_MM = Parabolic(-1, -1)
PARABOLICS = (P_PP, P_PM, P_MP, P_MM)


def hyperbolic_from_eigenvalue(lam: Number) -> Hyperbolic:
    """``lam`` and ``1/lam`` name the same class."""
    lam = as_exact(lam)
    return Hyperbolic(lam if abs(lam) > 1 else 1 / lam)


def class_trace(cid: ClassId) -> float:
    if isinstance(cid, Scalar):
        return 2.0 * cid.sign
    if isinstance(cid, Parabolic):
        return 2.0 * cid.eps
    if isinstance(cid, Elliptic):
        return 2.0 * math.cos(math.pi * float(cid.alpha))
    lam = float(cid.lam)
    return lam + 1.0 / lam


def is_scalar(cid: ClassId) -> bool:
    return isinstance(cid, Scalar)


def negate_id(cid: ClassId) -> ClassId:
    """Class of ``-m`` for ``m`` in ``cid``."""
    if isinstance(cid, Scalar):
        return Scalar(-cid.sign)
    if isinstance(cid, Parabolic):
        return Parabolic(-cid.eps, -cid.delta)
    if isinstance(cid, Elliptic):
        a = cid.alpha + 1
        return Elliptic(a - 2 if a > 2 else a)
    return Hyperbolic(-cid.lam)


def invert_id(cid: ClassId) -> ClassId:
    """Class of ``m^-1`` for ``m`` in ``cid``."""
    if isinstance(cid, Parabolic):
        return Parabolic(cid.eps, -cid.delta)
    if isinstance(cid, Elliptic):
        return Elliptic(2 - cid.alpha)
    return cid


def in_gplus(cid: ClassId) -> bool:
    """Membership in G+ = closure(C4+) union C3]0,pi[."""
    if isinstance(cid, Scalar):
        return cid.sign > 0
    if isinstance(cid, Parabolic):
        return cid.eps > 0
    if isinstance(cid, Elliptic):
        return cid.alpha < 1
    return cid.lam > 0


def normalize_to_gplus(cid: ClassId) -> tuple[ClassId, int]:
    """Return ``(c, s)`` with ``c`` in G+ and ``cid == s * c``."""
    if in_gplus(cid):
        return cid, 1
    return negate_id(cid), -1
