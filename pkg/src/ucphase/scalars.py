"""Exact coefficient domains: rationals and truncated formal Laurent series."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Union

Rational = Fraction
Number = Union[int, Fraction]

# Effectively "no truncation" for Laurent polynomials in a spectral parameter.
LAURENT_CAP = 1 << 30


def rat(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_arith(a, b, op: str) -> Fraction:
    a, b = rat(a), rat(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def format_rational(q) -> str:
    q = rat(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class TruncSeries:
    """Formal Laurent series in one parameter, exact mod param**(cap + 1).

    Immutable. Only nonzero coefficients with exponent <= cap are stored.
    """

    __slots__ = ("param", "cap", "terms")

    def __init__(self, terms: Mapping[int, Number] | None = None, cap: int = LAURENT_CAP,
                 param: str = "t"):
        self.param = param
        self.cap = cap
        clean: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if e <= cap and c:
                    clean[int(e)] = rat(c)
        self.terms = clean

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1, cap: int = LAURENT_CAP, param: str = "t"):
        return cls({exp: coeff}, cap, param)

    @classmethod
    def one(cls, cap: int = LAURENT_CAP, param: str = "t"):
        return cls({0: 1}, cap, param)

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction], cap: int, param: str) -> "TruncSeries":
        obj = cls.__new__(cls)
        obj.param = param
        obj.cap = cap
        obj.terms = terms
        return obj

    # -- inspection --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("zero series has no valuation")
        return min(self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero series has no degree")
        return max(self.terms)

    def __getitem__(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def coefficients(self, lo: int, hi: int) -> list:
        return [self[e] for e in range(lo, hi + 1)]

    def truncate(self, cap: int) -> "TruncSeries":
        cap = min(cap, self.cap)
        return TruncSeries._raw({e: c for e, c in self.terms.items() if e <= cap}, cap, self.param)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return self.param == other.param and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {0: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        return hash((self.param, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        return f"TruncSeries({self.to_text()}, cap={self.cap})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if e == 0:
                body = format_rational(mag)
            else:
                var = self.param if e == 1 else f"{self.param}^{e}"
                body = var if mag == 1 else f"{format_rational(mag)}*{var}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "TruncSeries") -> None:
        if other.param != self.param:
            raise ValueError(f"parameter mismatch: {self.param!r} vs {other.param!r}")

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries({0: other}, self.cap, self.param)
        raise TypeError(f"cannot combine TruncSeries with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return self
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        cap = min(self.cap, other.cap)
        terms = {e: c for e, c in self.terms.items() if e <= cap}
        for e, c in other.terms.items():
            if e > cap:
                continue
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return TruncSeries._raw(terms, cap, self.param)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw({e: -c for e, c in self.terms.items()}, self.cap, self.param)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if isinstance(other, TruncSeries):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return TruncSeries._raw({}, self.cap, self.param)
            return TruncSeries._raw({e: c * other for e, c in self.terms.items()},
                                    self.cap, self.param)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by param**k, keeping the cap."""
        return TruncSeries({e + k: c for e, c in self.terms.items()}, self.cap, self.param)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need series_inv with an explicit order")
        result = TruncSeries.one(self.cap, self.param)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_inverse(self) -> "TruncSeries":
        """param -> 1/param; only meaningful for Laurent polynomials."""
        return TruncSeries({-e: c for e, c in self.terms.items()}, self.cap, self.param)

    def evaluate(self, value) -> Fraction:
        value = rat(value)
        return sum((c * value ** e for e, c in self.terms.items()), Fraction(0))

    # -- serialization -----------------------------------------------------
    def to_json(self) -> Dict[str, str]:
        return {str(e): format_rational(self.terms[e]) for e in sorted(self.terms)}

    @classmethod
    def from_json(cls, data: Mapping[str, str], cap: int = LAURENT_CAP, param: str = "t"):
        return cls({int(k): parse_rational(v) for k, v in data.items()}, cap, param)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    cap = min(a.cap, b.cap)
    out: Dict[int, Fraction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = ea + eb
            if e > cap:
                continue
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return TruncSeries._raw(out, cap, a.param)


def series_inv(a: TruncSeries, order: int | None = None) -> TruncSeries:
    """Inverse of ``a``, with ``order`` coefficients past the inverse's leading term.

    Without ``order`` the inverse is carried as far as ``a``'s own cap determines it.
    """
    if not a.terms:
        raise ZeroDivisionError("series is zero up to its cap; not invertible")
    v = a.valuation()
    determined = a.cap - 2 * v  # highest exponent of the inverse fixed by a's cap
    cap = determined if order is None else min(-v + order, determined)
    if a.cap >= LAURENT_CAP // 2 and order is None:
        raise ValueError("inverse of an untruncated Laurent series needs an explicit order")
    lead = a.terms[v]
    # normalized: a = lead * t^v * (1 + rest)
    inv: Dict[int, Fraction] = {}
    n_terms = cap + v + 1  # exponents -v .. cap
    norm = [a.terms.get(v + k, Fraction(0)) / lead for k in range(max(n_terms, 0))]
    b = []
    for k in range(max(n_terms, 0)):
        s = Fraction(1) if k == 0 else Fraction(0)
        for j in range(1, k + 1):
            if norm[j]:
                s -= norm[j] * b[k - j]
        b.append(s)
    for k, c in enumerate(b):
        if c:
            inv[k - v] = c / lead
    return TruncSeries._raw(inv, cap, a.param)


def laurent(terms: Mapping[int, Number] | None = None, param: str = "u") -> TruncSeries:
    """A Laurent polynomial in a formal spectral parameter (no effective cap)."""
    return TruncSeries(terms or {}, LAURENT_CAP, param)


def scalar_is_zero(c) -> bool:
    return not c


def product(values: Iterable, start=None):
    acc = Fraction(1) if start is None else start
    for v in values:
        acc = acc * v
    return acc
