"""Valuations, truncated Puiseux series and tropicalization of classical polynomials.

Series have rational coefficients and rational exponents with bounded
denominators.  A series may carry a precision ``O(t^N)``: only terms below
``N`` are known.  Laurent series are the special case of integer exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .polynomial import TropicalPolynomial, vanishes_at
from .semiring import TropicalError

INF = float("inf")
MAX_RAMIFICATION = 10**6


class RamificationError(TropicalError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def val_p(q, p: int) -> int | float:
    """p-adic valuation of a rational; ``inf`` for zero."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INF
    k = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


# ----------------------------------------------------------------- series

@dataclass(frozen=True)
class PuiseuxElement:
    """Finite sum of ``c * t^e`` plus an optional error term ``O(t^precision)``."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    precision: Fraction | None = None
    ramification: int = field(default=1, compare=False)  # denominators bound, not part of the value

    def __post_init__(self):
        acc: dict[Fraction, Fraction] = {}
        for e, c in self.terms:
            e, c = Fraction(e), Fraction(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        prec = None if self.precision is None else Fraction(self.precision)
        terms = tuple(sorted((e, c) for e, c in acc.items() if c and (prec is None or e < prec)))
        n = lcm(self.ramification, *[e.denominator for e, _ in terms])
        if prec is not None:
            n = lcm(n, prec.denominator)
        if n > MAX_RAMIFICATION:
            raise RamificationError(f"ramification index {n} exceeds {MAX_RAMIFICATION}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "precision", prec)
        object.__setattr__(self, "ramification", n)

    @classmethod
    def from_map(cls, m: Mapping, precision=None) -> "PuiseuxElement":
        return cls(tuple(m.items()), precision)

    @classmethod
    def constant(cls, c) -> "PuiseuxElement":
        return cls(((Fraction(0), Fraction(c)),))

    @classmethod
    def monomial(cls, c, e) -> "PuiseuxElement":
        return cls(((Fraction(e), Fraction(c)),))

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    def is_zero(self) -> bool:
        """True only for the exact zero series."""
        return not self.terms and self.precision is None

    def val(self) -> Fraction | float:
        if self.terms:
            return self.terms[0][0]
        if self.precision is None:
            return INF
        raise TropicalError(f"valuation unknown: series is O(t^{self.precision})")

    def leading(self) -> tuple[Fraction, Fraction]:
        if not self.terms:
            raise TropicalError("zero series has no leading term")
        return self.terms[0]

    def __neg__(self):
        return PuiseuxElement(tuple((e, -c) for e, c in self.terms), self.precision, self.ramification)

    def __add__(self, other):
        other = _coerce(other)
        prec = _min_prec(self.precision, other.precision)
        return PuiseuxElement(self.terms + other.terms, prec, lcm(self.ramification, other.ramification))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return PuiseuxElement()
        terms = [(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms]
        prec = None
        if self.precision is not None:
            prec = self.precision + other._lowest()
        if other.precision is not None:
            prec = _min_prec(prec, other.precision + self._lowest())
        return PuiseuxElement(tuple(terms), prec, lcm(self.ramification, other.ramification))

    def _lowest(self) -> Fraction:
        """Lower bound for the exponents present (self is not the exact zero)."""
        return self.terms[0][0] if self.terms else self.precision

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) == 1 and self.precision is None:
                e, c = self.terms[0]
                return PuiseuxElement(((e * k, c**k),))
            raise TropicalError("only monomial series can be inverted exactly")
        out = PuiseuxElement.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return format_series(self)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _coerce(x) -> PuiseuxElement:
    if isinstance(x, PuiseuxElement):
        return x
    return PuiseuxElement.constant(x)


def series_val(s: PuiseuxElement) -> Fraction | float:
    return s.val()


def series_add(a: PuiseuxElement, b: PuiseuxElement) -> PuiseuxElement:
    return a + b


def series_mul(a: PuiseuxElement, b: PuiseuxElement) -> PuiseuxElement:
    return a * b


def _fmt_q(q: Fraction) -> str:
    return str(q) if q.denominator == 1 else f"({q})"


def format_series(s: PuiseuxElement) -> str:
    parts = []
    for e, c in s.terms:
        if e == 0:
            body = str(c)
        else:
            tpow = "t" if e == 1 else f"t^{_fmt_q(e)}"
            body = tpow if c == 1 else (f"-{tpow}" if c == -1 else f"{c}*{tpow}")
        parts.append(body)
    if s.precision is not None:
        parts.append(f"O(t^{_fmt_q(s.precision)})")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ----------------------------------------------------------- polynomials

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class ValuedPolynomial:
    """Classical polynomial with series coefficients; zero coefficients are dropped."""

    n_vars: int
    terms: tuple[tuple[Exponent, PuiseuxElement], ...]

    def __post_init__(self):
        acc: dict[Exponent, PuiseuxElement] = {}
        for a, c in self.terms:
            a = tuple(int(x) for x in a)
            if len(a) != self.n_vars:
                raise TropicalError(f"exponent {a} has wrong length")
            acc[a] = acc[a] + c if a in acc else _coerce(c)
        terms = tuple(sorted((a, c) for a, c in acc.items() if not c.is_zero()))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_map(cls, m: Mapping, n_vars: int | None = None) -> "ValuedPolynomial":
        if n_vars is None:
            n_vars = len(next(iter(m)))
        return cls(n_vars, tuple(m.items()))

    def __add__(self, other):
        other = _as_poly(other, self.n_vars)
        return ValuedPolynomial(self.n_vars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ValuedPolynomial(self.n_vars, tuple((a, -c) for a, c in self.terms))

    def __sub__(self, other):
        return self + (-_as_poly(other, self.n_vars))

    def __rsub__(self, other):
        return _as_poly(other, self.n_vars) - self

    def __mul__(self, other):
        other = _as_poly(other, self.n_vars)
        terms = [
            (tuple(x + y for x, y in zip(a, b)), c * d) for a, c in self.terms for b, d in other.terms
        ]
        return ValuedPolynomial(self.n_vars, tuple(terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = _as_poly(1, self.n_vars)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, point: Sequence) -> PuiseuxElement:
        total = PuiseuxElement()
        for a, c in self.terms:
            term = c
            for x, k in zip(point, a):
                term = term * (_coerce(x) ** k)
            total = total + term
        return total


def _as_poly(x, n_vars: int) -> ValuedPolynomial:
    if isinstance(x, ValuedPolynomial):
        return x
    return ValuedPolynomial(n_vars, (((0,) * n_vars, _coerce(x)),))


def tropicalize_poly(f: ValuedPolynomial, p: int | None = None) -> TropicalPolynomial:
    """``trop(f)``: the term ``c x^a`` becomes ``(-val c) x^a``.

    With a prime ``p`` the coefficients must be rational constants and the
    p-adic valuation is used instead of the t-adic one.
    """
    out = {}
    for a, c in f.terms:
        if p is None:
            v = c.val()
        else:
            if any(e != 0 for e, _ in c.terms) or c.precision is not None:
                raise TropicalError("p-adic tropicalization needs rational constant coefficients")
            v = val_p(c.terms[0][1], p)
        out[a] = -v
    return TropicalPolynomial(out, f.n_vars)


# -------------------------------------------------------------- witnesses

class WitnessStatus(Enum):
    VALID = "valid"
    INVALID = "invalid"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WitnessResult:
    status: WitnessStatus
    image: tuple[Fraction, ...] | None
    residuals: tuple[PuiseuxElement, ...]
    on_tropical: bool | None

    def __bool__(self) -> bool:
        return self.status is WitnessStatus.VALID


def check_witness(f: ValuedPolynomial | Iterable[ValuedPolynomial], solution: Sequence) -> WitnessResult:
    """Check that ``solution`` is a common zero and that ``-val(solution)`` lies on every ``T(trop f)``.

    Residuals known only up to an error term with no nonzero term below it
    give an inconclusive answer rather than a guess.
    """
    polys = [f] if isinstance(f, ValuedPolynomial) else list(f)
    sol = [_coerce(s) for s in solution]
    if any(not s.terms for s in sol):
        raise TropicalError("solution coordinates must be nonzero")
    image = tuple(-s.val() for s in sol)
    residuals = tuple(g(sol) for g in polys)
    if any(r.terms for r in residuals):
        status = WitnessStatus.INVALID
    elif any(r.precision is not None for r in residuals):
        status = WitnessStatus.INCONCLUSIVE
    else:
        status = WitnessStatus.VALID
    on_trop = all(vanishes_at(tropicalize_poly(g), image) for g in polys)
    if status is WitnessStatus.VALID and not on_trop:
        raise TropicalError("exact zero maps off the tropical hypersurface; valuation arithmetic is inconsistent")
    return WitnessResult(status, image, residuals, on_trop)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-zA-Z]+)|(\S))")


class SeriesParseError(TropicalError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


class _ExprParser:
    """Expressions in ``t`` and the variables with ``+ - * ^`` and parentheses.

    Exponents of ``t`` may be negative fractions written ``t^(p/q)`` or
    ``t^-2``; ``O(t^N)`` adds an error term.
    """

    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = list(variables)
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1):
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, value=None):
        tok = self.peek()
        if value is not None and tok[1] != value:
            raise SeriesParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise SeriesParseError("empty expression", 0)
        out = self.expr()
        if self.peek()[0] != "eof":
            tok = self.peek()
            raise SeriesParseError(f"unexpected {tok[1]!r}", tok[2])
        return out

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term()
        out = -out if sign < 0 else out
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                out = out * self.factor()
            elif tok[0] in ("num", "name") or tok[1] == "(":
                out = out * self.factor()
            else:
                return out

    def _exponent(self) -> Fraction:
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            q = self._number(self.take()) if self.peek()[0] == "num" else self._bad()
            self.take(")")
            return sign * q
        sign = 1
        if tok[1] == "-":
            self.take()
            sign = -1
        if self.peek()[0] != "num":
            self._bad()
        return sign * self._number(self.take())

    @staticmethod
    def _number(tok) -> Fraction:
        try:
            return Fraction(tok[1])
        except ZeroDivisionError:
            raise SeriesParseError(f"zero denominator in {tok[1]!r}", tok[2]) from None

    def _bad(self):
        tok = self.peek()
        raise SeriesParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])

    def factor(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            base = self._const(self._number(tok))
        elif tok[0] == "name" and tok[1] == "O":
            self.take()
            self.take("(")
            self.take("t")
            e = Fraction(1)
            if self.peek()[1] == "^":
                self.take()
                e = self._exponent()
            self.take(")")
            return self._const_series(PuiseuxElement((), e))
        elif tok[0] == "name" and tok[1] == "t":
            self.take()
            e = Fraction(1)
            if self.peek()[1] == "^":
                self.take()
                e = self._exponent()
            return self._const_series(PuiseuxElement.monomial(1, e))
        elif tok[0] == "name" and tok[1] in self.vars:
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take()
                e = self._exponent()
                if e.denominator != 1 or e < 0:
                    raise SeriesParseError("variable exponents must be non-negative integers", tok[2])
                k = int(e)
            a = [0] * len(self.vars)
            a[self.vars.index(tok[1])] = k
            return ValuedPolynomial(len(self.vars), ((tuple(a), PuiseuxElement.constant(1)),))
        elif tok[1] == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            self._bad()
        if self.peek()[1] == "^":
            self.take()
            e = self._exponent()
            if e.denominator != 1 or e < 0:
                raise SeriesParseError("powers of expressions must be non-negative integers", tok[2])
            base = base ** int(e)
        return base

    def _const(self, q: Fraction):
        return self._const_series(PuiseuxElement.constant(q))

    def _const_series(self, s: PuiseuxElement):
        if not self.vars:
            return s
        return ValuedPolynomial(len(self.vars), (((0,) * len(self.vars), s),))


def parse_series(text: str) -> PuiseuxElement:
    """Parse a sum of terms like ``2*t^(1/2) - 3*t^-1 + O(t^4)``."""
    return _ExprParser(text, []).parse()


def parse_valued_polynomial(text: str, variables: Sequence[str] | None = None) -> ValuedPolynomial:
    """Parse a classical polynomial with series coefficients, e.g. ``x + t*y + 2``."""
    if variables is None:
        names = set(re.findall(r"[a-zA-Z]+", text)) - {"t", "O"}
        variables = [v for v in ("x", "y", "z") if v in names] or ["x"]
        if names - set(variables):
            bad = sorted(names - set(variables))[0]
            raise SeriesParseError(f"unknown name {bad!r}", text.index(bad))
        # keep x, y, z positions stable when a later letter is used
        order = ["x", "y", "z"]
        variables = order[: max(order.index(v) for v in variables) + 1]
    out = _ExprParser(text, variables).parse()
    return _as_poly(out, len(variables))
