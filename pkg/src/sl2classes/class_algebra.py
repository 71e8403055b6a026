"""Conjugation-invariant subsets of SL(2,R) in a canonical component-wise form.

A ``ClassSet`` stores the two central classes as flags, the four parabolic classes as a
set of ``(eps, delta)`` pairs, the elliptic part as a sorted tuple of disjoint angle
intervals (pi units, never touching 0, 1 or 2) and each hyperbolic half (lambda > 1,
lambda < -1) as a finite-or-cofinite set.  Construction normalizes, so structural
equality is set equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import FloatAngleUndecidable
from .ids import (
    PARABOLICS,
    ClassId,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Scalar,
    as_exact,
    in_gplus,
    negate_id,
)

FLOAT_TOL = 1e-9

ZERO, ONE, TWO = Fraction(0), Fraction(1), Fraction(2)


class Atom(NamedTuple):
    """Angle interval in pi units; a closed degenerate atom is a single class."""

    lo: Fraction
    lo_closed: bool
    hi: Fraction
    hi_closed: bool

    def contains(self, x) -> bool:
        if self.lo < x < self.hi:
            return True
        return (x == self.lo and self.lo_closed) or (x == self.hi and self.hi_closed)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


def _empty(a: Atom) -> bool:
    return a.lo > a.hi or (a.lo == a.hi and not (a.lo_closed and a.hi_closed))


def normalize_atoms(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    """Clip to ]0,2[, split at 1, sort and merge overlapping or touching intervals."""
    pieces: list[Atom] = []
    for a in atoms:
        lo, lc, hi, hc = Fraction(a.lo), bool(a.lo_closed), Fraction(a.hi), bool(a.hi_closed)
        if lo <= ZERO:
            lo, lc = ZERO, False
        if hi >= TWO:
            hi, hc = TWO, False
        if lo < ONE < hi:
            pieces.append(Atom(lo, lc, ONE, False))
            pieces.append(Atom(ONE, False, hi, hc))
            continue
        if lo == ONE:
            lc = False
        if hi == ONE:
            hc = False
        pieces.append(Atom(lo, lc, hi, hc))
    pieces = [p for p in pieces if not _empty(p)]
    pieces.sort(key=lambda p: (p.lo, not p.lo_closed))
    out: list[Atom] = []
    for p in pieces:
        if out:
            q = out[-1]
            if p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed)):
                if p.hi > q.hi:
                    hi, hc = p.hi, p.hi_closed
                elif p.hi == q.hi:
                    hi, hc = q.hi, q.hi_closed or p.hi_closed
                else:
                    hi, hc = q.hi, q.hi_closed
                out[-1] = Atom(q.lo, q.lo_closed, hi, hc)
                continue
        out.append(p)
    return tuple(out)


def complement_atoms(atoms: tuple[Atom, ...]) -> tuple[Atom, ...]:
    gaps = []
    prev, prev_closed = ZERO, True
    for a in atoms:
        gaps.append(Atom(prev, not prev_closed, a.lo, not a.lo_closed))
        prev, prev_closed = a.hi, a.hi_closed
    gaps.append(Atom(prev, not prev_closed, TWO, False))
    return normalize_atoms(gaps)


def _shift(a: Atom, d: Fraction) -> Atom:
    return Atom(a.lo + d, a.lo_closed, a.hi + d, a.hi_closed)


@dataclass(frozen=True)
class HypSet:
    """Finite (``cofinite=False``) or cofinite set of lambda values in one half-line."""

    cofinite: bool = False
    values: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(Fraction(v) for v in self.values))

    @property
    def is_full(self) -> bool:
        return self.cofinite and not self.values

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.values

    def union(self, other: "HypSet") -> "HypSet":
        if not self.cofinite and not other.cofinite:
            return HypSet(False, self.values | other.values)
        if self.cofinite and other.cofinite:
            return HypSet(True, self.values & other.values)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return HypSet(True, cof.values - fin.values)

    def complement(self) -> "HypSet":
        return HypSet(not self.cofinite, self.values)

    def intersect(self, other: "HypSet") -> "HypSet":
        return self.complement().union(other.complement()).complement()

    def contains(self, lam) -> bool:
        if isinstance(lam, Fraction):
            return (lam in self.values) != self.cofinite
        near = any(abs(float(v) - lam) <= FLOAT_TOL * abs(float(v)) for v in self.values)
        return near != self.cofinite

    def mapped(self, f) -> "HypSet":
        return HypSet(self.cofinite, frozenset(f(v) for v in self.values))

    def sorted_values(self) -> list[Fraction]:
        return sorted(self.values)


HYP_EMPTY = HypSet(False)
HYP_FULL = HypSet(True)


@dataclass(frozen=True)
class ClassSet:
    has_I: bool = False
    has_negI: bool = False
    par: frozenset = frozenset()
    ell: tuple = ()
    hyp_pos: HypSet = field(default=HYP_EMPTY)
    hyp_neg: HypSet = field(default=HYP_EMPTY)

    def __post_init__(self):
        object.__setattr__(self, "has_I", bool(self.has_I))
        object.__setattr__(self, "has_negI", bool(self.has_negI))
        par = frozenset((int(e), int(d)) for e, d in self.par)
        for p in par:
            if p[0] not in (1, -1) or p[1] not in (1, -1):
                raise ValueError(f"bad parabolic flag {p}")
        object.__setattr__(self, "par", par)
        object.__setattr__(self, "ell", normalize_atoms(Atom(*a) for a in self.ell))
        for v in self.hyp_pos.values:
            if not v > 1:
                raise ValueError(f"hyp_pos value {v} must exceed 1")
        for v in self.hyp_neg.values:
            if not v < -1:
                raise ValueError(f"hyp_neg value {v} must be below -1")

    def __or__(self, other: "ClassSet") -> "ClassSet":
        return union(self, other)

    def __and__(self, other: "ClassSet") -> "ClassSet":
        return intersect(self, other)

    def __contains__(self, cid: ClassId) -> bool:
        return member(cid, self)

    @property
    def is_empty(self) -> bool:
        return self == EMPTY

    def __str__(self):
        from .notation import format_notation

        return format_notation(self)


EMPTY = ClassSet()
G = ClassSet(True, True, frozenset(p for p in [(1, 1), (1, -1), (-1, 1), (-1, -1)]),
             (Atom(ZERO, False, TWO, False),), HYP_FULL, HYP_FULL)


def union(*xs: ClassSet) -> ClassSet:
    out = EMPTY
    for y in xs:
        out = ClassSet(
            out.has_I or y.has_I,
            out.has_negI or y.has_negI,
            out.par | y.par,
            out.ell + y.ell,
            out.hyp_pos.union(y.hyp_pos),
            out.hyp_neg.union(y.hyp_neg),
        )
    return out


def complement(x: ClassSet) -> ClassSet:
    allpar = frozenset((p.eps, p.delta) for p in PARABOLICS)
    return ClassSet(
        not x.has_I,
        not x.has_negI,
        allpar - x.par,
        complement_atoms(x.ell),
        x.hyp_pos.complement(),
        x.hyp_neg.complement(),
    )


def intersect(x: ClassSet, y: ClassSet) -> ClassSet:
    return complement(union(complement(x), complement(y)))


def minus(x: ClassSet, y: ClassSet) -> ClassSet:
    return intersect(x, complement(y))


def negate(x: ClassSet) -> ClassSet:
    """Image under m -> -m."""
    ell = [_shift(a, ONE) if a.hi <= ONE else _shift(a, -ONE) for a in x.ell]
    return ClassSet(
        x.has_negI,
        x.has_I,
        frozenset((-e, -d) for e, d in x.par),
        ell,
        x.hyp_neg.mapped(lambda v: -v),
        x.hyp_pos.mapped(lambda v: -v),
    )


def invert(x: ClassSet) -> ClassSet:
    """Image under m -> m^-1."""
    ell = [Atom(TWO - a.hi, a.hi_closed, TWO - a.lo, a.lo_closed) for a in x.ell]
    return ClassSet(
        x.has_I, x.has_negI, frozenset((e, -d) for e, d in x.par), ell, x.hyp_pos, x.hyp_neg
    )


def singleton(cid: ClassId) -> ClassSet:
    if isinstance(cid, Scalar):
        return ClassSet(has_I=cid.sign > 0, has_negI=cid.sign < 0)
    if isinstance(cid, Parabolic):
        return ClassSet(par=frozenset([(cid.eps, cid.delta)]))
    if isinstance(cid, Elliptic):
        a = cid.alpha
        if not isinstance(a, Fraction):
            raise TypeError("set construction needs an exact angle")
        return ClassSet(ell=(Atom(a, True, a, True),))
    lam = cid.lam
    if not isinstance(lam, Fraction):
        raise TypeError("set construction needs an exact hyperbolic parameter")
    h = HypSet(False, frozenset([lam]))
    return ClassSet(hyp_pos=h) if lam > 0 else ClassSet(hyp_neg=h)


def classes(*ids: ClassId) -> ClassSet:
    return union(*(singleton(c) for c in ids))


def _member_angle(alpha, atoms: tuple[Atom, ...]) -> bool:
    if isinstance(alpha, Fraction):
        return any(a.contains(alpha) for a in atoms)
    x = float(alpha)
    for a in atoms:
        for end in (a.lo, a.hi):
            if abs(x - float(end)) <= FLOAT_TOL:
                raise FloatAngleUndecidable(f"angle {x!r} is within {FLOAT_TOL} of {end}")
    return any(float(a.lo) < x < float(a.hi) for a in atoms)


def member(cid: ClassId, x: ClassSet) -> bool:
    if isinstance(cid, Scalar):
        return x.has_I if cid.sign > 0 else x.has_negI
    if isinstance(cid, Parabolic):
        return (cid.eps, cid.delta) in x.par
    if isinstance(cid, Elliptic):
        return _member_angle(cid.alpha, x.ell)
    lam = cid.lam
    return x.hyp_pos.contains(lam) if lam > 0 else x.hyp_neg.contains(lam)


def c3(lb: str, lo, hi, rb: str) -> ClassSet:
    """Elliptic interval in bracket notation, angles in pi units.

    ``lb`` is one of ``"<["``, ``"["``, ``"]"``, ``"("`` and ``rb`` one of ``"]>"``, ``"]"``,
    ``"["``, ``")"``.  A closed bracket at 0, 1 or 2 adjoins the neighbouring parabolic
    class and the angle brackets additionally adjoin the hyperbolic half:
    ``[0`` adds C2[++], ``[1`` adds C2[--], ``1]`` adds C2[-+], ``2]`` adds C2[+-];
    ``<[0`` / ``2]>`` add C4+, ``<[1`` / ``1]>`` add C4-.
    """
    lo, hi = as_exact(lo), as_exact(hi)
    if not isinstance(lo, Fraction) or not isinstance(hi, Fraction):
        raise TypeError("interval endpoints must be exact")
    if not (ZERO <= lo <= hi <= TWO) or lo < ONE < hi:
        raise ValueError(f"interval [{lo},{hi}] is not inside ]0,1[ or ]1,2[ (pi units)")
    if lb not in ("<[", "[", "]", "("):
        raise ValueError(f"bad left bracket {lb!r}")
    if rb not in ("]>", "]", "[", ")"):
        raise ValueError(f"bad right bracket {rb!r}")
    extra = []
    lc = lb in ("[", "<[")
    rc = rb in ("]", "]>")
    if lb == "<[" and lo not in (ZERO, ONE):
        raise ValueError("'<[' is only allowed at 0 or 1")
    if rb == "]>" and hi not in (ONE, TWO):
        raise ValueError("']>' is only allowed at 1 or 2")
    if lc and lo == ZERO:
        extra.append(singleton(Parabolic(1, 1)))
        if lb == "<[":
            extra.append(ClassSet(hyp_pos=HYP_FULL))
    if lc and lo == ONE:
        extra.append(singleton(Parabolic(-1, -1)))
        if lb == "<[":
            extra.append(ClassSet(hyp_neg=HYP_FULL))
    if rc and hi == ONE:
        extra.append(singleton(Parabolic(-1, 1)))
        if rb == "]>":
            extra.append(ClassSet(hyp_neg=HYP_FULL))
    if rc and hi == TWO:
        extra.append(singleton(Parabolic(1, -1)))
        if rb == "]>":
            extra.append(ClassSet(hyp_pos=HYP_FULL))
    base = ClassSet(ell=(Atom(lo, lc, hi, rc),))
    return union(base, *extra)


C4_POS = ClassSet(hyp_pos=HYP_FULL)
C4_NEG = ClassSet(hyp_neg=HYP_FULL)
C4 = union(C4_POS, C4_NEG)
I_SET = singleton(Scalar(1))
NEG_I_SET = singleton(Scalar(-1))
# closure of C4+: C4+ with I and both C2[+*]
C4_POS_BAR = union(C4_POS, I_SET, classes(Parabolic(1, 1), Parabolic(1, -1)))
C4_NEG_BAR = negate(C4_POS_BAR)
GPLUS = union(C4_POS_BAR, c3("]", 0, 1, "["))


def normalize_to_Gplus(cid: ClassId) -> tuple[ClassId, int]:
    """``(cid, +1)`` when the class lies in G+, else ``(-cid, -1)``."""
    if in_gplus(cid):
        return cid, 1
    return negate_id(cid), -1


def hyperbolic_parts(x: ClassSet) -> tuple[HypSet, HypSet]:
    return x.hyp_pos, x.hyp_neg


def hyp(lam) -> ClassSet:
    return singleton(Hyperbolic(as_exact(lam)))
