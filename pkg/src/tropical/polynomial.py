"""Tropical polynomials: representation, parsing, evaluation, univariate roots.

A tropical polynomial ``max_a (c_a + a . w)`` is stored as a map from
exponent tuples to finite rational coefficients; absent monomials carry the
coefficient ``-inf``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .semiring import NEG_INF, TropicalError, TropicalNumber, as_fraction

VARIABLES = "xyz"

Exponent = tuple[int, ...]


class ParseError(TropicalError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def degrevlex_key(alpha: Exponent) -> tuple:
    """Sort key; ascending order of this key is descending degrevlex order."""
    return (-sum(alpha), tuple(e for e in reversed(alpha)))


class TropicalPolynomial:
    __slots__ = ("_n_vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object], n_vars: int | None = None):
        clean: dict[Exponent, Fraction] = {}
        for alpha, c in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if any(a < 0 for a in alpha):
                raise TropicalError(f"negative exponent in {alpha}")
            c = TropicalNumber(c)
            if c.is_neg_inf:
                continue
            if alpha in clean:
                clean[alpha] = max(clean[alpha], c.value)
            else:
                clean[alpha] = c.value
        widths = {len(a) for a in clean}
        if len(widths) > 1:
            raise TropicalError("exponent vectors have different lengths")
        width = widths.pop() if widths else (n_vars or 1)
        if n_vars is None:
            n_vars = width
        if width != n_vars:
            raise TropicalError(f"exponents have length {width}, expected {n_vars}")
        if n_vars < 1:
            raise TropicalError("need at least one variable")
        object.__setattr__(self, "_n_vars", n_vars)
        object.__setattr__(self, "_terms", MappingProxyType(dict(sorted(clean.items(), key=lambda t: degrevlex_key(t[0])))))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TropicalPolynomial is immutable")

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    @property
    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, alpha: Sequence[int]) -> TropicalNumber:
        c = self._terms.get(tuple(alpha))
        return NEG_INF if c is None else TropicalNumber(c)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        return max((sum(a) for a in self._terms), default=0)

    def degree(self) -> int | None:
        """``d`` when the Newton polytope is the standard simplex of size ``d``."""
        if not self._terms:
            return None
        d = self.total_degree()
        if d == 0:
            return None
        zero = (0,) * self._n_vars
        corners = [zero] + [tuple(d if j == i else 0 for j in range(self._n_vars)) for i in range(self._n_vars)]
        if all(c in self._terms for c in corners):
            return d
        return None

    # arithmetic
    def __add__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        _check_same_vars(self, other)
        merged = dict(self._terms)
        for a, c in other._terms.items():
            merged[a] = max(merged[a], c) if a in merged else c
        return TropicalPolynomial(merged, self._n_vars)

    def __mul__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        return trop_poly_mul(self, other)

    def __pow__(self, k: int) -> "TropicalPolynomial":
        out = constant(0, self._n_vars)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "TropicalPolynomial":
        c = as_fraction(c)
        return TropicalPolynomial({a: v + c for a, v in self._terms.items()}, self._n_vars)

    def __eq__(self, other) -> bool:
        return isinstance(other, TropicalPolynomial) and self._n_vars == other._n_vars and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self._n_vars, frozenset(self._terms.items()))))
        return self._hash

    def __call__(self, *point) -> Fraction:
        return evaluate(self, point)[0]

    def __repr__(self) -> str:
        return f"TropicalPolynomial({format_polynomial(self)!r}, n_vars={self._n_vars})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def to_json_obj(self) -> dict:
        return {
            "n_vars": self._n_vars,
            "terms": [{"exponent": list(a), "coefficient": str(c)} for a, c in self._terms.items()],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "TropicalPolynomial":
        return cls({tuple(t["exponent"]): Fraction(t["coefficient"]) for t in obj["terms"]}, obj["n_vars"])


def _check_same_vars(p: TropicalPolynomial, q: TropicalPolynomial) -> None:
    if p.n_vars != q.n_vars:
        raise TropicalError(f"polynomials in {p.n_vars} and {q.n_vars} variables")


def constant(c, n_vars: int = 1) -> TropicalPolynomial:
    return TropicalPolynomial({(0,) * n_vars: c}, n_vars)


def monomial(alpha: Sequence[int], c=0) -> TropicalPolynomial:
    return TropicalPolynomial({tuple(alpha): c}, len(alpha))


# ---------------------------------------------------------------- formatting

def _format_monomial(alpha: Exponent, c: Fraction, n_vars: int) -> str:
    names = VARIABLES if n_vars <= len(VARIABLES) else None
    parts = []
    for i, e in enumerate(alpha):
        if e == 0:
            continue
        name = names[i] if names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    if names is None:
        var = "(*)".join(parts)
    else:
        var = "".join(parts)
    if not var:
        return str(c)
    if c == 0:
        return var
    return f"{c}(*){var}"


def format_polynomial(p: TropicalPolynomial) -> str:
    if not p.terms:
        return "-inf"
    return " (+) ".join(_format_monomial(a, c, p.n_vars) for a, c in p.terms.items())


# ------------------------------------------------------------------- parsing

_NUMBER = re.compile(r"[+-]?\s*\d+(?:\s*/\s*\d+)?")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("⊕", "(+)").replace("⊙", "(*)").replace("−", "-")
        self.pos = 0
        self.max_var = -1

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def number(self) -> Fraction | None:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return Fraction(re.sub(r"\s+", "", m.group()))

    def var_power(self) -> tuple[int, int] | None:
        self.skip()
        if self.pos < len(self.text) and self.text[self.pos] in VARIABLES:
            idx = VARIABLES.index(self.text[self.pos])
            self.pos += 1
            exp = 1
            if self.eat("^"):
                self.skip()
                if self.peek("-"):
                    self.error("negative exponents are not allowed")
                m = _INT.match(self.text, self.pos)
                if not m:
                    self.error("expected a positive integer exponent")
                exp = int(m.group())
                self.pos = m.end()
            self.max_var = max(self.max_var, idx)
            return idx, exp
        return None

    # tropical form ---------------------------------------------------------
    def poly(self) -> list[tuple[dict[int, int], Fraction]]:
        terms = [self.term()]
        while self.eat("(+)"):
            terms.append(self.term())
        if not self.at_end():
            self.error(f"unexpected {self.text[self.pos]!r}")
        return terms

    def term(self) -> tuple[dict[int, int], Fraction]:
        exps: dict[int, int] = {}
        coef = Fraction(0)
        seen = False
        pending = False  # a (*) still waiting for its right operand
        while True:
            self.skip()
            if self.peek("(+)"):
                break
            if self.peek("(*)"):
                if not seen or pending:
                    self.error("(*) needs a factor on each side")
                self.pos += 3
                pending = True
                continue
            if self.peek("(") and not self.peek("(+)") and not self.peek("(*)"):
                self.pos += 1
                sub = self.term()
                if not self.eat(")"):
                    self.error("expected ')'")
                for i, e in sub[0].items():
                    exps[i] = exps.get(i, 0) + e
                coef += sub[1]
                seen, pending = True, False
                continue
            vp = self.var_power()
            if vp is not None:
                exps[vp[0]] = exps.get(vp[0], 0) + vp[1]
                seen, pending = True, False
                continue
            num = self.number()
            if num is not None:
                coef += num
                seen, pending = True, False
                continue
            break
        if not seen or pending:
            self.error("expected a monomial")
        return exps, coef

    # classical max(...) form -----------------------------------------------
    def classical(self) -> list[tuple[dict[int, int], Fraction]]:
        if not self.eat("max"):
            self.error("expected 'max'")
        if not (self.eat("(") or self.eat("{")):
            self.error("expected '(' after max")
        terms = [self.linear()]
        while self.eat(","):
            terms.append(self.linear())
        if not (self.eat(")") or self.eat("}")):
            self.error("expected ')'")
        if not self.at_end():
            self.error(f"unexpected {self.text[self.pos]!r}")
        return terms

    def linear(self) -> tuple[dict[int, int], Fraction]:
        exps: dict[int, int] = {}
        const = Fraction(0)
        first = True
        while True:
            self.skip()
            sign = 1
            if self.peek("+"):
                self.pos += 1
            elif self.peek("-"):
                self.pos += 1
                sign = -1
            elif not first:
                break
            self.skip()
            m = re.compile(r"\d+(?:\s*/\s*\d+)?").match(self.text, self.pos)
            mult: Fraction | None = None
            if m:
                mult = Fraction(re.sub(r"\s+", "", m.group()))
                self.pos = m.end()
                self.eat("*")
            start = self.pos
            vp = self.var_power()
            if vp is not None:
                if vp[1] != 1:
                    self.pos = start
                    self.error("powers are not allowed in classical notation")
                k = (mult if mult is not None else Fraction(1)) * sign
                if k.denominator != 1 or k < 0:
                    self.pos = start
                    self.error("variable multiples must be non-negative integers")
                exps[vp[0]] = exps.get(vp[0], 0) + int(k)
            elif mult is not None:
                const += sign * mult
            else:
                self.error("expected a number or variable")
            first = False
        return exps, const


def parse(text: str, n_vars: int | None = None) -> TropicalPolynomial:
    """Parse ``"x^2 (+) 2(*)x (+) -1"`` or ``"max(2x, x+2, -1)"``.

    Repeated monomials keep the larger coefficient.  The number of variables
    is inferred from the highest variable letter used unless given.
    """
    parser = _Parser(text)
    if parser.peek("max"):
        raw = parser.classical()
    else:
        raw = parser.poly()
    width = max(parser.max_var + 1, 1)
    if n_vars is None:
        n_vars = width
    elif n_vars < width:
        raise ParseError(f"text uses {width} variables but n_vars={n_vars}", 0)
    terms: dict[Exponent, Fraction] = {}
    for exps, c in raw:
        alpha = tuple(exps.get(i, 0) for i in range(n_vars))
        terms[alpha] = max(terms[alpha], c) if alpha in terms else c
    return TropicalPolynomial(terms, n_vars)


# ----------------------------------------------------------------- evaluation

def evaluate(p: TropicalPolynomial, point: Sequence) -> tuple[Fraction, frozenset[Exponent]]:
    """Value of ``p`` at ``point`` and every exponent attaining it."""
    if len(point) != p.n_vars:
        raise TropicalError(f"point has {len(point)} coordinates, polynomial has {p.n_vars} variables")
    if not p.terms:
        raise TropicalError("the zero polynomial has no finite value")
    w = [as_fraction(x) for x in point]
    best = None
    arg: list[Exponent] = []
    for alpha, c in p.terms.items():
        v = c + sum(a * x for a, x in zip(alpha, w) if a)
        if best is None or v > best:
            best = v
            arg = [alpha]
        elif v == best:
            arg.append(alpha)
    return best, frozenset(arg)


def vanishes_at(p: TropicalPolynomial, point: Sequence) -> bool:
    return len(evaluate(p, point)[1]) >= 2


def trop_poly_mul(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    _check_same_vars(f, g)
    out: dict[Exponent, Fraction] = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            key = tuple(x + y for x, y in zip(a, b))
            v = ca + cb
            if key not in out or v > out[key]:
                out[key] = v
    return TropicalPolynomial(out, f.n_vars)


# ------------------------------------------------------- univariate analysis

@dataclass(frozen=True, order=True)
class TropicalRoot:
    location: TropicalNumber
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise TropicalError("root multiplicity must be positive")

    def __str__(self) -> str:
        return f"({self.location},{self.multiplicity})"


def _upper_hull_1d(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Upper hull of points sorted by exponent (monotone chain)."""
    hull: list[tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop middle point if it is on or below the chord
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def roots_univariate(p: TropicalPolynomial) -> list[TropicalRoot]:
    if p.n_vars != 1:
        raise TropicalError("roots_univariate needs a polynomial in one variable")
    if not p.terms:
        raise TropicalError("the zero polynomial has no roots")
    pts = sorted((a[0], c) for a, c in p.terms.items())
    hull = _upper_hull_1d(pts)
    out = []
    low = hull[0][0]
    if low > 0:
        out.append(TropicalRoot(NEG_INF, low))
    for (i1, c1), (i2, c2) in zip(hull, hull[1:]):
        out.append(TropicalRoot(TropicalNumber((c1 - c2) / (i2 - i1)), i2 - i1))
    return out


def factor_univariate(p: TropicalPolynomial) -> tuple[Fraction, list[TropicalRoot]]:
    """Leading coefficient and roots; ``c (.) prod (x (+) a)^m`` equals ``p`` as a function."""
    roots = roots_univariate(p)
    lead = max(p.terms)
    return p.terms[lead], roots


def expand_factorization(c, roots: Iterable[TropicalRoot]) -> TropicalPolynomial:
    out = constant(c, 1)
    for r in roots:
        if r.location.is_neg_inf:
            lin = monomial((1,), 0)
        else:
            lin = TropicalPolynomial({(1,): 0, (0,): r.location.value}, 1)
        out = out * (lin ** r.multiplicity)
    return out


# ------------------------------------------------------------ function equality

def _lattice_box(points: Iterable[Exponent]) -> Iterable[Exponent]:
    pts = list(points)
    lo = [min(p[i] for p in pts) for i in range(len(pts[0]))]
    hi = [max(p[i] for p in pts) for i in range(len(pts[0]))]
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def function_equal(p: TropicalPolynomial, q: TropicalPolynomial) -> bool:
    """Whether ``p`` and ``q`` define the same function on ``R^n``.

    Compares Newton polytopes, then the upper concave envelopes of the lifted
    coefficients at every lattice point of the common polytope.
    """
    from .geometry.envelope import envelope_value, hull_vertices

    _check_same_vars(p, q)
    if not p.terms or not q.terms:
        return not p.terms and not q.terms
    sp, sq = p.support, q.support
    vp = {sp[i] for i in hull_vertices(sp)}
    vq = {sq[i] for i in hull_vertices(sq)}
    if vp != vq:
        return False
    cp = [p.terms[a] for a in sp]
    cq = [q.terms[a] for a in sq]
    for alpha in _lattice_box(sp):
        ep = envelope_value(sp, cp, alpha)
        eq = envelope_value(sq, cq, alpha)
        if ep != eq:
            return False
    return True
