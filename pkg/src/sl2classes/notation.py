"""ASCII bracket notation and JSON rendering for ``ClassSet``.

Grammar (whitespace ignored)::

    expr    := term (("|" | "&" | "\\") term)*        left associative
    term    := ("-" | "~")* primary ("^c")*         negate / invert / complement
    primary := "(" expr ")" | "{" [scal ("," scal)*] "}" | atom
    atom    := "I" | "G" | "G+" | "C4+" | "C4-" | "C2[" S S "]" | "C3[" RAT "]"
             | "C3" LB RAT "," RAT RB | "C4[" RAT "]"
    LB      := "<[" | "[" | "]" | "("        RB := "]>" | "]" | "[" | ")"

Angles are in pi units (``C3[2/3]`` is the rotation by 2pi/3).
"""
from __future__ import annotations

import json
from fractions import Fraction

from .class_algebra import (
    C4_NEG,
    C4_POS,
    EMPTY,
    G,
    GPLUS,
    HYP_EMPTY,
    HYP_FULL,
    Atom,
    ClassSet,
    HypSet,
    c3,
    complement,
    intersect,
    invert,
    minus,
    negate,
    singleton,
    union,
)
from .errors import ParseError
from .ids import Elliptic, Hyperbolic, Parabolic, Scalar

ONE, TWO, ZERO = Fraction(1), Fraction(2), Fraction(0)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.take(s):
            self.error(f"expected {s!r}")

    def rational(self) -> Fraction:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected a rational number")
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            d0 = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == d0:
                self.error("expected a denominator")
        try:
            return Fraction(self.text[start:self.pos])
        except ZeroDivisionError:
            self.pos = start
            self.error("zero denominator")

    def parse(self) -> ClassSet:
        x = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return x

    def expr(self) -> ClassSet:
        x = self.term()
        while True:
            if self.take("|"):
                x = union(x, self.term())
            elif self.take("&"):
                x = intersect(x, self.term())
            elif self.take("\\"):
                x = minus(x, self.term())
            else:
                return x

    def term(self) -> ClassSet:
        if self.take("-"):
            return negate(self.term())
        if self.take("~"):
            return invert(self.term())
        x = self.primary()
        while self.take("^c"):
            x = complement(x)
        return x

    def primary(self) -> ClassSet:
        if self.take("("):
            x = self.expr()
            self.expect(")")
            return x
        if self.take("{"):
            x = EMPTY
            if self.take("}"):
                return x
            while True:
                neg = self.take("-")
                self.expect("I")
                x = union(x, singleton(Scalar(-1 if neg else 1)))
                if self.take("}"):
                    return x
                self.expect(",")
        return self.atom()

    def atom(self) -> ClassSet:
        start = self.pos
        try:
            if self.take("C2["):
                signs = []
                for _ in range(2):
                    if self.take("+"):
                        signs.append(1)
                    elif self.take("-"):
                        signs.append(-1)
                    else:
                        self.error("expected '+' or '-'")
                self.expect("]")
                return singleton(Parabolic(*signs))
            if self.take("C3"):
                return self.c3_tail()
            if self.take("C4+"):
                return C4_POS
            if self.take("C4-"):
                return C4_NEG
            if self.take("C4["):
                lam = self.rational()
                self.expect("]")
                return singleton(Hyperbolic(lam))
            if self.take("G+"):
                return GPLUS
            if self.take("G"):
                return G
            if self.take("I"):
                return singleton(Scalar(1))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            self.pos = start
            self.error(str(exc))
        self.error("expected a class atom")

    def c3_tail(self) -> ClassSet:
        for lb in ("<[", "[", "]", "("):
            if self.take(lb):
                break
        else:
            self.error("expected '<[', '[', ']' or '('")
        lo = self.rational()
        if lb == "[" and self.take("]"):
            return singleton(Elliptic(lo))
        self.expect(",")
        hi = self.rational()
        for rb in ("]>", "]", "[", ")"):
            if self.take(rb):
                break
        else:
            self.error("expected ']>', ']', '[' or ')'")
        return c3(lb, lo, hi, rb)


def parse_notation(text: str) -> ClassSet:
    return _Parser(text).parse()


def parse_product(text: str) -> list[ClassSet]:
    """Split a ``*``-separated factor list; each factor is parsed separately."""
    parts = text.split("*")
    out = []
    offset = 0
    for part in parts:
        try:
            out.append(parse_notation(part))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, offset + exc.pos) from None
        offset += len(part) + 1
    return out


# ---------------------------------------------------------------- formatting


def _par(e, d) -> str:
    return "C2[" + ("+" if e > 0 else "-") + ("+" if d > 0 else "-") + "]"


def _terms(x: ClassSet) -> list[str]:
    terms = []
    if x.has_I:
        terms.append("I")
    if x.has_negI:
        terms.append("-I")
    par = set(x.par)
    used_pos = used_neg = False
    for a in x.ell:
        if a.is_point:
            terms.append(f"C3[{a.lo}]")
            continue
        if a.lo in (ZERO, ONE):
            pf = (1, 1) if a.lo == ZERO else (-1, -1)
            hf = x.hyp_pos if a.lo == ZERO else x.hyp_neg
            if pf in par:
                par.discard(pf)
                if hf.is_full:
                    lb = "<["
                    if a.lo == ZERO:
                        used_pos = True
                    else:
                        used_neg = True
                else:
                    lb = "["
            else:
                lb = "]"
        else:
            lb = "[" if a.lo_closed else "]"
        if a.hi in (ONE, TWO):
            pf = (-1, 1) if a.hi == ONE else (1, -1)
            hf = x.hyp_neg if a.hi == ONE else x.hyp_pos
            if pf in par:
                par.discard(pf)
                if hf.is_full:
                    rb = "]>"
                    if a.hi == ONE:
                        used_neg = True
                    else:
                        used_pos = True
                else:
                    rb = "]"
            else:
                rb = "["
        else:
            rb = "]" if a.hi_closed else "["
        terms.append(f"C3{lb}{a.lo},{a.hi}{rb}")
    for e, d in sorted(par, key=lambda p: (-p[0], -p[1])):
        terms.append(_par(e, d))
    for h, name, used in ((x.hyp_pos, "C4+", used_pos), (x.hyp_neg, "C4-", used_neg)):
        if h.is_full:
            if not used:
                terms.append(name)
        elif h.cofinite:
            excl = " \\ ".join(f"C4[{v}]" for v in h.sorted_values())
            terms.append(f"({name} \\ {excl})")
        else:
            terms.extend(f"C4[{v}]" for v in h.sorted_values())
    return terms


def _scalar_braces(x: ClassSet) -> str | None:
    if x == singleton(Scalar(1)):
        return "{I}"
    if x == singleton(Scalar(-1)):
        return "{-I}"
    if x == union(singleton(Scalar(1)), singleton(Scalar(-1))):
        return "{I,-I}"
    return None


def format_notation(x: ClassSet) -> str:
    """Render ``x``; prefers the complement form when it needs fewer terms."""
    if x == G:
        return "G"
    direct = _terms(x)
    if not direct:
        return "{}"
    xc = complement(x)
    braces = _scalar_braces(xc)
    if braces is not None:
        return braces + "^c"
    comp = _terms(xc)
    if len(comp) < len(direct):
        return "(" + " | ".join(comp) + ")^c"
    return " | ".join(direct)


def format_psl(rep: ClassSet) -> str:
    """Render a negation-invariant set as a subset of PSL(2,R)."""
    if rep == G:
        return "G~"
    if rep == complement(union(singleton(Scalar(1)), singleton(Scalar(-1)))):
        return "G~ \\ {I~}"
    return "proj(" + format_notation(rep) + ")"


# ---------------------------------------------------------------- JSON


def _hyp_json(h: HypSet):
    if h.is_full:
        return "full"
    vals = [str(v) for v in h.sorted_values()]
    if h.cofinite:
        return {"cofinite": vals}
    return vals


def _hyp_from_json(obj) -> HypSet:
    if obj == "full":
        return HYP_FULL
    if isinstance(obj, dict):
        return HypSet(True, frozenset(Fraction(v) for v in obj["cofinite"]))
    return HypSet(False, frozenset(Fraction(v) for v in obj))


def to_json_obj(x: ClassSet) -> dict:
    return {
        "I": x.has_I,
        "negI": x.has_negI,
        "par": [
            ("+" if e > 0 else "-") + ("+" if d > 0 else "-")
            for e, d in sorted(x.par, key=lambda p: (-p[0], -p[1]))
        ],
        "ell": [
            {"lo": str(a.lo), "lo_closed": a.lo_closed, "hi": str(a.hi), "hi_closed": a.hi_closed}
            for a in x.ell
        ],
        "hyp_pos": _hyp_json(x.hyp_pos),
        "hyp_neg": _hyp_json(x.hyp_neg),
    }


def from_json_obj(obj: dict) -> ClassSet:
    return ClassSet(
        obj["I"],
        obj["negI"],
        frozenset((1 if p[0] == "+" else -1, 1 if p[1] == "+" else -1) for p in obj["par"]),
        tuple(
            Atom(Fraction(a["lo"]), a["lo_closed"], Fraction(a["hi"]), a["hi_closed"])
            for a in obj["ell"]
        ),
        _hyp_from_json(obj["hyp_pos"]),
        _hyp_from_json(obj["hyp_neg"]),
    )


def to_json(x: ClassSet) -> str:
    return json.dumps(to_json_obj(x))


def from_json(text: str) -> ClassSet:
    return from_json_obj(json.loads(text))


__all__ = [
    "parse_notation",
    "parse_product",
    "format_notation",
    "format_psl",
    "to_json",
    "from_json",
    "to_json_obj",
    "from_json_obj",
    "HYP_EMPTY",
]
