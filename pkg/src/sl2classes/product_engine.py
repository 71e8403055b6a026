"""Closed-form products of conjugacy classes in SL(2,R) and PSL(2,R).

Every factor is first pushed into G+ (``normalize_to_gplus``); the signs are
collected and applied once at the end through ``negate``.  Angles are pi units.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .class_algebra import (
    C4_NEG,
    C4_POS_BAR,
    EMPTY,
    G,
    I_SET,
    NEG_I_SET,
    Atom,
    ClassSet,
    HypSet,
    c3,
    complement,
    member,
    negate,
    singleton,
    union,
)
from .ids import (
    P_PM,
    P_PP,
    ClassId,
    Elliptic,
    Hyperbolic,
    Parabolic,
    Scalar,
    as_exact,
    invert_id,
    is_scalar,
    negate_id,
    normalize_to_gplus,
)

ZERO, ONE, TWO = Fraction(0), Fraction(1), Fraction(2)
NOT_SCALAR = complement(union(I_SET, NEG_I_SET))


def _exact(cid: ClassId) -> ClassId:
    if isinstance(cid, Elliptic):
        a = as_exact(cid.alpha)
        if not isinstance(a, Fraction):
            raise TypeError(f"exact angle required, got {cid.alpha!r}")
        return Elliptic(a)
    if isinstance(cid, Hyperbolic):
        lam = as_exact(cid.lam)
        if not isinstance(lam, Fraction):
            raise TypeError(f"exact hyperbolic parameter required, got {cid.lam!r}")
        return Hyperbolic(lam)
    return cid


def _signed(x: ClassSet, sign: int) -> ClassSet:
    return x if sign > 0 else negate(x)


# ---------------------------------------------------------------- pairs


def _pair_gplus(x: ClassId, y: ClassId) -> ClassSet:
    """Product of two non-scalar classes of G+."""
    if isinstance(y, Hyperbolic) and not isinstance(x, Hyperbolic):
        x, y = y, x
    if isinstance(x, Hyperbolic):
        if isinstance(y, Hyperbolic):
            return union(NOT_SCALAR, I_SET) if x.lam == y.lam else NOT_SCALAR
        if isinstance(y, Parabolic) and y.delta < 0:
            return c3("<[", 1, 2, "]>")
        return c3("<[", 0, 1, "]>")
    if isinstance(y, Elliptic) and not isinstance(x, Elliptic):
        x, y = y, x
    if isinstance(x, Elliptic):
        a = x.alpha
        if isinstance(y, Elliptic):
            s = a + y.alpha
            if s < 1:
                return c3("[", s, 1, "]>")
            if s == 1:
                return union(NEG_I_SET, C4_NEG)
            return c3("<[", 1, s, "]")
        if y.delta > 0:
            return c3("]", a, 1, "]>")
        return c3("<[", 0, a, "[")
    # two parabolics of G+
    if x.delta != y.delta:
        return C4_POS_BAR
    if x.delta > 0:
        return c3("[", 0, 1, "]>")
    return c3("<[", 1, 2, "]")


@lru_cache(maxsize=65536)
def _pair_cached(x: ClassId, y: ClassId) -> ClassSet:
    if is_scalar(x):
        return _signed(singleton(y), x.sign)
    if is_scalar(y):
        return _signed(singleton(x), y.sign)
    xn, sx = normalize_to_gplus(x)
    yn, sy = normalize_to_gplus(y)
    return _signed(_pair_gplus(xn, yn), sx * sy)


def product_pair(x: ClassId, y: ClassId) -> ClassSet:
    """The set of classes of ``AB`` with ``A`` in ``x`` and ``B`` in ``y``."""
    return _pair_cached(_exact(x), _exact(y))


# ---------------------------------------------------------------- set x class


def _cell(p: Fraction, q: Fraction, y: ClassId) -> ClassSet:
    """Union of ``E(alpha) y`` over alpha in ]p,q[ (subset of ]0,1[), y in G+."""
    if isinstance(y, Hyperbolic):
        return c3("<[", 0, 1, "]>")
    if isinstance(y, Parabolic):
        if y.delta > 0:
            return c3("]", p, 1, "]>")
        return c3("<[", 0, q, "[")
    b = y.alpha
    if q + b <= 1:
        return c3("]", p + b, 1, "]>")
    return c3("<[", 1, q + b, "[")


def _sweep(atom: Atom, y: ClassId) -> ClassSet:
    """Union of ``E(alpha) y`` over the angle atom, atom inside ]0,1[, y in G+."""
    if atom.is_point:
        return _pair_gplus(Elliptic(atom.lo), y)
    cuts = []
    if isinstance(y, Elliptic) and atom.lo < 1 - y.alpha < atom.hi:
        cuts.append(1 - y.alpha)
    pts = [atom.lo] + cuts + [atom.hi]
    parts = [_pair_gplus(Elliptic(c), y) for c in cuts]
    if atom.lo_closed:
        parts.append(_pair_gplus(Elliptic(atom.lo), y))
    if atom.hi_closed:
        parts.append(_pair_gplus(Elliptic(atom.hi), y))
    parts.extend(_cell(p, q, y) for p, q in zip(pts, pts[1:]))
    return union(*parts)


def _hyp_generic(h: HypSet, sign: int, special: Fraction | None) -> Fraction:
    """A parameter of the cofinite set ``h`` that avoids ``special``."""
    avoid = {abs(v) for v in h.values}
    if special is not None:
        avoid.add(special)
    return sign * (max(avoid, default=ONE) + 1)


def _hyp_part(h: HypSet, sign: int, y: ClassId) -> ClassSet:
    if h.is_empty:
        return EMPTY
    special = abs(y.lam) if isinstance(y, Hyperbolic) else None
    parts = [product_pair(Hyperbolic(v), y) for v in h.values if not h.cofinite]
    if h.cofinite:
        parts.append(product_pair(Hyperbolic(_hyp_generic(h, sign, special)), y))
        if special is not None and h.contains(sign * special):
            parts.append(product_pair(Hyperbolic(sign * special), y))
    return union(*parts)


def product_set_class(x: ClassSet, y: ClassId) -> ClassSet:
    """``x * y`` for a conjugation-invariant set ``x`` and a single class ``y``."""
    y = _exact(y)
    if is_scalar(y):
        return _signed(x, y.sign)
    parts = []
    if x.has_I:
        parts.append(singleton(y))
    if x.has_negI:
        parts.append(negate(singleton(y)))
    for e, d in x.par:
        parts.append(product_pair(Parabolic(e, d), y))
    yn, sy = normalize_to_gplus(y)
    for a in x.ell:
        if a.hi <= ONE:
            parts.append(_signed(_sweep(a, yn), sy))
        else:
            shifted = Atom(a.lo - 1, a.lo_closed, a.hi - 1, a.hi_closed)
            parts.append(_signed(_sweep(shifted, yn), -sy))
    parts.append(_hyp_part(x.hyp_pos, 1, y))
    parts.append(_hyp_part(x.hyp_neg, -1, y))
    return union(*parts)


def product_sets(factors: Sequence[ClassSet]) -> ClassSet:
    """Left fold where every factor after the first must be a single class."""
    out = factors[0]
    for f in factors[1:]:
        cid = as_class_id(f)
        if cid is None:
            raise ValueError(f"factor {f} is not a single conjugacy class")
        out = product_set_class(out, cid)
    return out


def as_class_id(x: ClassSet) -> ClassId | None:
    """The class ``x`` consists of, or None when it is not a single class."""
    found = []
    if x.has_I:
        found.append(Scalar(1))
    if x.has_negI:
        found.append(Scalar(-1))
    found.extend(Parabolic(e, d) for e, d in x.par)
    for a in x.ell:
        if not a.is_point:
            return None
        found.append(Elliptic(a.lo))
    for h in (x.hyp_pos, x.hyp_neg):
        if h.cofinite:
            return None
        found.extend(Hyperbolic(v) for v in h.values)
    return found[0] if len(found) == 1 else None


# ---------------------------------------------------------------- n-fold


def _split(factors: Iterable[ClassId]) -> tuple[list[ClassId], int]:
    sign, rest = 1, []
    for f in factors:
        f = _exact(f)
        if is_scalar(f):
            sign *= f.sign
        else:
            rest.append(f)
    return rest, sign


def product_n(factors: Sequence[ClassId]) -> ClassSet:
    """Product of a list of classes by the left fold over ``product_set_class``."""
    if not factors:
        raise ValueError("empty product")
    rest, sign = _split(factors)
    if not rest:
        return singleton(Scalar(sign))
    if len(rest) == 1:
        out = singleton(rest[0])
    else:
        out = product_pair(rest[0], rest[1])
        for y in rest[2:]:
            out = product_set_class(out, y)
    if len(rest) >= 5:
        assert out == G, f"five or more non-scalar factors gave {out}"
    return _signed(out, sign)


def _triple_gplus(xs: list[ClassId]) -> ClassSet:
    ells = sorted(x.alpha for x in xs if isinstance(x, Elliptic))
    nh = sum(isinstance(x, Hyperbolic) for x in xs)
    n_p = sum(x == P_PP for x in xs)
    n_m = sum(x == P_PM for x in xs)
    not_I, not_negI = complement(I_SET), complement(NEG_I_SET)
    if nh >= 2:
        return G
    if nh == 1:
        # the two remaining factors
        return not_negI if n_m == 1 else not_I
    ne = len(ells)
    if ne == 0:
        if n_p == 3 or n_m == 3:
            return not_I
        if n_p == 2:
            return complement(union(NEG_I_SET, c3("[", 1, 2, "[")))
        return complement(union(NEG_I_SET, c3("]", 0, 1, "]")))
    if ne == 1:
        a = ells[0]
        if n_p == 2:
            return complement(union(I_SET, c3("[", 0, a, "]")))
        if n_m == 2:
            return complement(union(NEG_I_SET, c3("[", a, 1, "]")))
        return c3("<[", 0, 1, "]>")
    s = sum(ells)
    if ne == 2:
        if n_p == 1:
            if s < 1:
                return complement(union(I_SET, c3("[", 0, s, "]")))
            return c3("<[", 1, 2, "]>")
        if s > 1:
            return complement(union(I_SET, c3("[", s, 2, "]")))
        return c3("<[", 0, 1, "]>")
    if s < 1:
        return complement(union(I_SET, c3("[", 0, s, "[")))
    if s == 1:
        return union(NEG_I_SET, c3("<[", 1, 2, "]>"))
    if s < 2:
        return c3("<[", 1, 2, "]>")
    if s == 2:
        return union(I_SET, c3("<[", 1, 2, "]>"))
    return complement(union(NEG_I_SET, c3("]", s - 2, 1, "]")))


def _triple_direct(xs: Sequence[ClassId]) -> ClassSet:
    sign, norm = 1, []
    for x in xs:
        xn, sx = normalize_to_gplus(x)
        sign *= sx
        norm.append(xn)
    return _signed(_triple_gplus(norm), sign)


def product_direct(factors: Sequence[ClassId]) -> ClassSet:
    """Closed-form product without folding; independent of ``product_set_class``."""
    rest, sign = _split(factors)
    n = len(rest)
    if n == 0:
        return singleton(Scalar(sign))
    if n == 1:
        out = singleton(rest[0])
    elif n == 2:
        out = product_pair(rest[0], rest[1])
    elif n == 3:
        out = _triple_direct(rest)
    elif n == 4:
        out = NOT_SCALAR
        for s in (1, -1):
            if scalar_membership(rest, s, engine=_triple_direct):
                out = union(out, singleton(Scalar(s)))
    else:
        out = G
    return _signed(out, sign)


def scalar_membership(factors: Sequence[ClassId], sign: int, engine=None) -> bool:
    """Whether ``sign * I`` lies in the product.

    ``s I = A_1 ... A_n`` exactly when ``s A_n^-1`` lies in ``A_1 ... A_{n-1}``.
    """
    if len(factors) < 2:
        raise ValueError("scalar_membership needs at least two factors")
    engine = engine or product_n
    target = invert_id(_exact(factors[-1]))
    if sign < 0:
        target = negate_id(target)
    return member(target, engine(list(factors[:-1])))


# ---------------------------------------------------------------- identity region of three rotations


def figure1_contains_identity(alpha, beta, gamma) -> bool:
    """Whether I lies in C3[alpha] C3[beta] C3[gamma]."""
    return member(
        Elliptic(TWO - as_exact(gamma)),
        product_pair(Elliptic(as_exact(alpha)), Elliptic(as_exact(beta))),
    )


def figure1_axis(step, signed: bool = False) -> list[Fraction]:
    step = Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    lo, hi = (-ONE, ONE) if signed else (ZERO, TWO)
    vals, k = [], 1
    while lo + k * step < hi:
        v = lo + k * step
        if v not in (ZERO, ONE):
            vals.append(v)
        k += 1
    return vals


def figure1_grid(step, signed: bool = False) -> list[tuple[Fraction, Fraction, Fraction, bool]]:
    """Membership of I over the step lattice, rows in lexicographic order.

    With ``signed`` the angles range over ]-1,1[ minus 0 and are reduced mod 2.
    """
    axis = figure1_axis(step, signed)
    rows = []
    for a, b in itertools.product(axis, repeat=2):
        ab = product_pair(Elliptic(a % 2), Elliptic(b % 2))
        for c in axis:
            rows.append((a, b, c, member(Elliptic(TWO - c % 2), ab)))
    return rows


def figure1_csv(step, signed: bool = False) -> str:
    lines = ["alpha,beta,gamma,contains_I"]
    for a, b, c, v in figure1_grid(step, signed):
        lines.append(f"{a},{b},{c},{'true' if v else 'false'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- PSL(2,R)


@dataclass(frozen=True)
class PslClassSet:
    """Subset of PSL(2,R), stored as its negation-invariant preimage."""

    rep: ClassSet

    def __post_init__(self):
        if negate(self.rep) != self.rep:
            object.__setattr__(self, "rep", union(self.rep, negate(self.rep)))

    @property
    def has_identity(self) -> bool:
        return self.rep.has_I

    @property
    def is_full(self) -> bool:
        return self.rep == G

    def __str__(self):
        from .notation import format_psl

        return format_psl(self.rep)


PSL_FULL = PslClassSet(G)
PSL_NONTRIVIAL = PslClassSet(NOT_SCALAR)


def psl2_project(x: ClassSet) -> PslClassSet:
    return PslClassSet(union(x, negate(x)))


def tilde(cid: ClassId) -> PslClassSet:
    return psl2_project(singleton(_exact(cid)))


def psl2_lift(x: PslClassSet) -> ClassId:
    """One SL(2,R) class over a single PSL class."""
    if x.rep.has_I:
        if x.rep == union(I_SET, NEG_I_SET):
            return Scalar(1)
        raise ValueError("factor is not a single PSL class")
    # the G+ half of a negation-invariant set
    half = ClassSet(
        par=frozenset(p for p in x.rep.par if p[0] > 0),
        ell=tuple(a for a in x.rep.ell if a.hi <= ONE),
        hyp_pos=x.rep.hyp_pos,
    )
    cid = as_class_id(half)
    if cid is None:
        raise ValueError("factor is not a single PSL class")
    return cid


def psl2_product(factors: Sequence) -> PslClassSet:
    """Product in PSL(2,R); factors are PslClassSet or ClassId, one class each."""
    lifted = [f if not isinstance(f, PslClassSet) else psl2_lift(f) for f in factors]
    return psl2_project(product_n(lifted))


# ---------------------------------------------------------------- covering numbers


def default_probe(step=Fraction(1, 12)) -> list[ClassId]:
    """Non-trivial PSL classes, one G+ lift each, on an angle lattice."""
    probe = [P_PP, P_PM]
    probe += [Elliptic(a) for a in figure1_axis(step) if a < 1]
    probe += [Hyperbolic(Fraction(3, 2)), Hyperbolic(Fraction(2))]
    return probe


@dataclass(frozen=True)
class CoveringResult:
    cn: int
    ecn: int
    cn_witness: ClassId
    ecn_witness: tuple

    def __str__(self):
        return f"cn={self.cn} ecn={self.ecn}"


def _power_cover(c: ClassId, limit: int) -> int:
    for n in range(1, limit + 1):
        if psl2_product([c] * n).is_full:
            return n
    raise AssertionError(f"{c} does not cover within {limit} factors")


def covering_numbers(probe: Sequence[ClassId] | None = None, limit: int = 6) -> CoveringResult:
    """(cn, ecn) over the probe classes, computed through ``psl2_product``.

    ``cn_witness`` is a class whose powers need the most factors (the one nearest a
    quarter turn when several tie); ``ecn_witness`` a longest non-covering product.
    """
    probe = list(probe) if probe is not None else default_probe()
    need = {c: _power_cover(c, limit) for c in probe}
    cn = max(need.values())

    def centrality(c):
        return abs(c.alpha - Fraction(1, 2)) if isinstance(c, Elliptic) else ONE

    cn_witness = min((c for c in probe if need[c] == cn), key=centrality)
    ecn_witness: tuple = ()
    ecn = None
    for n in range(1, limit + 1):
        bad = None
        # products of classes commute, so multisets suffice
        for combo in itertools.combinations_with_replacement(probe, n):
            if not psl2_project(product_direct(list(combo))).is_full:
                bad = combo
                break
        if bad is None:
            ecn = n
            break
        ecn_witness = bad
    if ecn is None:
        raise AssertionError(f"mixed products do not cover within {limit} factors")
    return CoveringResult(cn, ecn, cn_witness, ecn_witness)


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class TableRow:
    factors: str
    condition: str
    result: str
    example: tuple
    provenance: str


_ENVELOPE = "trace envelope + boundary class"
_EXCLUSION = "trace envelope + common-eigenvector exclusion"
_SHEAR = "trace envelope + explicit shear witnesses"
_HYP = "all traces occur + inverse closure; orientation oracle-checked"
_SWEEP = "parameter sweep of a pair row"
_REDUCE = "scalar reduction to a triple"

_F = Fraction
_a, _b, _c = Elliptic(_F(1, 4)), Elliptic(_F(1, 3)), Elliptic(_F(1, 2))
_H, _K = Hyperbolic(_F(2)), Hyperbolic(_F(3, 2))

PAIR_ROWS = [
    TableRow("C3[a] * C3[b]", "a+b<1", "C3[a+b,1]>", (_a, _b), _ENVELOPE),
    TableRow("C3[a] * C3[b]", "a+b=1", "-I | C4-", (_c, _c), _ENVELOPE),
    TableRow("C3[a] * C3[b]", "a+b>1", "C3<[1,a+b]", (_c, Elliptic(_F(2, 3))), _ENVELOPE),
    TableRow("C3[a] * C2[++]", "", "C3]a,1]>", (_a, P_PP), _EXCLUSION),
    TableRow("C3[a] * C2[+-]", "", "C3<[0,a[", (_a, P_PM), _EXCLUSION),
    TableRow("C2[++] * C2[++]", "", "C3[0,1]>", (P_PP, P_PP), _SHEAR),
    TableRow("C2[+-] * C2[+-]", "", "C3<[1,2]", (P_PM, P_PM), _SHEAR),
    TableRow("C2[++] * C2[+-]", "", "I | C2[++] | C2[+-] | C4+", (P_PP, P_PM), _SHEAR),
    TableRow("C4[l] * C3[a]", "", "C3<[0,1]>", (_H, _a), _HYP),
    TableRow("C4[l] * C2[++]", "", "C3<[0,1]>", (_H, P_PP), _HYP),
    TableRow("C4[l] * C2[+-]", "", "C3<[1,2]>", (_H, P_PM), _HYP),
    TableRow("C4[l] * C4[l]", "", "{-I}^c", (_H, _H), _HYP),
    TableRow("C4[l] * C4[m]", "l!=m", "{I,-I}^c", (_H, _K), _HYP),
]

_E = Elliptic
TRIPLE_ROWS = [
    TableRow("C2[++]^3", "", "{I}^c", (P_PP,) * 3, _SWEEP),
    TableRow("C2[++]^2 * C2[+-]", "", "(-I | C3[1,2[)^c", (P_PP, P_PP, P_PM), _SWEEP),
    TableRow("C2[++] * C2[+-]^2", "", "(-I | C3]0,1])^c", (P_PP, P_PM, P_PM), _SWEEP),
    TableRow("C2[+-]^3", "", "{I}^c", (P_PM,) * 3, _SWEEP),
    TableRow("C3[a] * C2[++]^2", "", "(I | C3[0,a])^c", (_a, P_PP, P_PP), _SWEEP),
    TableRow("C3[a] * C2[++] * C2[+-]", "", "C3<[0,1]>", (_a, P_PP, P_PM), _SWEEP),
    TableRow("C3[a] * C2[+-]^2", "", "(-I | C3[a,1])^c", (_a, P_PM, P_PM), _SWEEP),
    TableRow("C3[a] * C3[b] * C2[++]", "a+b<1", "(I | C3[0,a+b])^c", (_a, _b, P_PP), _SWEEP),
    TableRow("C3[a] * C3[b] * C2[++]", "a+b>=1", "C3<[1,2]>", (_c, _c, P_PP), _SWEEP),
    TableRow("C3[a] * C3[b] * C2[+-]", "a+b>1", "(I | C3[a+b,2])^c",
             (_c, _E(_F(2, 3)), P_PM), _SWEEP),
    TableRow("C3[a] * C3[b] * C2[+-]", "a+b<=1", "C3<[0,1]>", (_a, _b, P_PM), _SWEEP),
    TableRow("C3[a] * C3[b] * C3[c]", "a+b+c<1", "(I | C3[0,a+b+c[)^c",
             (_E(_F(1, 6)),) * 3, _SWEEP),
    TableRow("C3[a] * C3[b] * C3[c]", "a+b+c=1", "-I | C3<[1,2]>", (_E(_F(1, 3)),) * 3, _SWEEP),
    TableRow("C3[a] * C3[b] * C3[c]", "1<a+b+c<2", "C3<[1,2]>", (_c,) * 3, _SWEEP),
    TableRow("C3[a] * C3[b] * C3[c]", "a+b+c=2", "I | C3<[1,2]>",
             (_E(_F(2, 3)),) * 3, _SWEEP),
    TableRow("C3[a] * C3[b] * C3[c]", "a+b+c>2", "(-I | C3]a+b+c-2,1])^c",
             (_E(_F(3, 4)),) * 3, _SWEEP),
    TableRow("C4[l] * X * Y", "X, Y in {C2[++], C3[a]}", "{I}^c", (_H, _a, P_PP), _SWEEP),
    TableRow("C4[l] * C2[+-] * C2[+-]", "", "{I}^c", (_H, P_PM, P_PM), _SWEEP),
    TableRow("C4[l] * X * C2[+-]", "X in {C2[++], C3[a]}", "{-I}^c", (_H, _a, P_PM), _SWEEP),
    TableRow("C4[l] * C4[m] * X", "X non-scalar", "G", (_H, _K, _a), _SWEEP),
]

QUAD_ROWS = [
    TableRow("X1 * X2 * X3 * X4", "non-scalar", "{I,-I}^c plus sI when s~X4 lies in X1X2X3",
             (_c,) * 4, _REDUCE),
    TableRow("X1 * ... * X5", "non-scalar", "G", (P_PP,) * 5, "quadruple rows + absorption"),
]


def tables() -> list[tuple[str, TableRow, ClassSet]]:
    """Every reconstructed row with the engine's value on its example."""
    out = []
    for name, rows in (("pair", PAIR_ROWS), ("triple", TRIPLE_ROWS), ("quadruple", QUAD_ROWS)):
        for row in rows:
            out.append((name, row, product_n(list(row.example))))
    return out
