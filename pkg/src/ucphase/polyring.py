"""Sparse exact polynomials in x_1..x_A, y_1..y_B.

Monomials are pairs of dense exponent tuples ``(x_exps, y_exps)`` with trailing
zeros stripped, so ``((2, 0, 1), (1,))`` is x1^2 x3 y1. Coefficients are
Fractions (domain ``"rational"``) or :class:`TruncSeries` sharing one parameter
and cap (domain ``"series:<param>:<cap>"``).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Tuple

from .scalars import TruncSeries, format_rational, parse_rational, rat

Exps = Tuple[int, ...]
Monomial = Tuple[Exps, Exps]
ONE_MONO: Monomial = ((), ())

FAMILIES = ("x", "y")
# Operator families that act on polynomials by a single index n:
#   "x"/"y"        multiplication by x_n / y_n
#   "dx"/"dy"      (1/n) d/dx_n, (1/n) d/dy_n   (components of the weighted gradient)
#   "x-dy"/"y-dx"  x_n - (1/n) d/dy_n,  y_n - (1/n) d/dx_n
GENERATORS = ("x", "y", "dx", "dy", "x-dy", "y-dx")


class CutoffError(ValueError):
    """An operation needs a variable index beyond the ring's cutoffs."""


class DomainError(ValueError):
    """Polynomials with different coefficient domains were combined."""


def _strip(e: List[int]) -> Exps:
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _add_exps(a: Exps, b: Exps) -> Exps:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return tuple(out)


def _weight(e: Exps) -> int:
    return sum((i + 1) * v for i, v in enumerate(e))


def monomial_key(m: Monomial):
    """Sort key for the canonical (graded-lex, descending) term order."""
    xe, ye = m
    wx, wy = _weight(xe), _weight(ye)
    return (-(wx + wy), -wx, tuple(-v for v in xe), tuple(-v for v in ye))


def domain_of(c) -> str:
    if isinstance(c, TruncSeries):
        return f"series:{c.param}:{c.cap}"
    return "rational"


class Poly:
    """Immutable sparse polynomial over a fixed pair of index cutoffs."""

    __slots__ = ("terms", "cutoffs", "domain")

    def __init__(self, terms: Dict[Monomial, object] | None = None, cutoffs: Tuple[int, int] = (0, 0),
                 domain: str = "rational"):
        self.cutoffs = (int(cutoffs[0]), int(cutoffs[1]))
        self.domain = domain
        clean = {}
        A, B = self.cutoffs
        for (xe, ye), c in (terms or {}).items():
            if not c:
                continue
            xe, ye = _strip(list(xe)), _strip(list(ye))
            if len(xe) > A or len(ye) > B:
                raise CutoffError(f"monomial {xe, ye} exceeds cutoffs {self.cutoffs}")
            if isinstance(c, int):
                c = Fraction(c)
            if domain_of(c) != domain and not (domain.startswith("series") and
                                                isinstance(c, Fraction)):
                raise DomainError(f"coefficient {c!r} does not belong to domain {domain}")
            key = (xe, ye)
            if key in clean:
                c = clean[key] + c
                if not c:
                    del clean[key]
                    continue
            clean[key] = c
        if domain.startswith("series"):
            param, cap = _series_params(domain)
            clean = {k: (v if isinstance(v, TruncSeries) else TruncSeries({0: v}, cap, param))
                     for k, v in clean.items()}
        self.terms = clean

    @classmethod
    def _raw(cls, terms, cutoffs, domain) -> "Poly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.cutoffs = cutoffs
        obj.domain = domain
        return obj

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, cutoffs, domain: str = "rational") -> "Poly":
        return cls._raw({}, tuple(cutoffs), domain)

    @classmethod
    def const(cls, c, cutoffs, domain: str = "rational") -> "Poly":
        return cls({ONE_MONO: c}, cutoffs, domain)

    @classmethod
    def one(cls, cutoffs, domain: str = "rational") -> "Poly":
        return cls.const(_unit(domain), cutoffs, domain)

    @classmethod
    def var(cls, family: str, n: int, cutoffs, power: int = 1, coeff=1) -> "Poly":
        e = [0] * n
        e[n - 1] = power
        mono = (tuple(e), ()) if family == "x" else ((), tuple(e))
        return cls({mono: coeff}, cutoffs)

    def with_terms(self, terms) -> "Poly":
        return Poly._raw(terms, self.cutoffs, self.domain)

    def zero_like(self) -> "Poly":
        return Poly._raw({}, self.cutoffs, self.domain)

    def to_series(self, param: str, cap: int) -> "Poly":
        """Reinterpret a rational polynomial with series coefficients."""
        if self.domain != "rational":
            raise DomainError("already a series-coefficient polynomial")
        dom = f"series:{param}:{cap}"
        return Poly._raw({m: TruncSeries({0: c}, cap, param) for m, c in self.terms.items()},
                         self.cutoffs, dom)

    def recut(self, cutoffs) -> "Poly":
        """Same polynomial viewed in a ring with other cutoffs."""
        return Poly(self.terms, cutoffs, self.domain)

    # -- inspection ----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        for m in sorted(self.terms, key=monomial_key):
            yield m, self.terms[m]

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return set(self.terms) == {ONE_MONO} and self.terms[ONE_MONO] == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def x_weight(self) -> int:
        """Largest sum of n * (exponent of x_n) over the terms."""
        return max((_weight(xe) for xe, _ in self.terms), default=0)

    def y_weight(self) -> int:
        return max((_weight(ye) for _, ye in self.terms), default=0)

    def uses_family(self, family: str) -> bool:
        i = 0 if family == "x" else 1
        return any(m[i] for m in self.terms)

    def components(self) -> Dict[Tuple[int, int], "Poly"]:
        """Split by (x-weight, y-weight)."""
        out: Dict[Tuple[int, int], dict] = {}
        for m, c in self.terms.items():
            out.setdefault((_weight(m[0]), _weight(m[1])), {})[m] = c
        return {k: self.with_terms(v) for k, v in out.items()}

    # -- arithmetic ----------------------------------------------------------
    def _compatible(self, other: "Poly") -> None:
        if self.domain != other.domain:
            raise DomainError(f"coefficient-domain mismatch: {self.domain} vs {other.domain}")
        if self.cutoffs != other.cutoffs:
            raise CutoffError(f"cutoff mismatch: {self.cutoffs} vs {other.cutoffs}")

    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            self._compatible(other)
            return other
        if isinstance(other, (int, Fraction, TruncSeries)):
            return Poly.const(other, self.cutoffs, self.domain) if other else self.zero_like()
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        _accumulate(terms, other.terms)
        return self.with_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return self.with_terms({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        _accumulate(terms, other.terms, -1)
        return self.with_terms(terms)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not c:
            return self.zero_like()
        if isinstance(c, TruncSeries) and self.domain == "rational":
            raise DomainError("scale a series polynomial, or convert with to_series first")
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if w:
                out[m] = w
        return self.with_terms(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, TruncSeries)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._compatible(other)
        out: Dict[Monomial, object] = {}
        for (xa, ya), ca in self.terms.items():
            for (xb, yb), cb in other.terms.items():
                key = (_add_exps(xa, xb), _add_exps(ya, yb))
                v = out.get(key)
                out[key] = ca * cb if v is None else v + ca * cb
        return self.with_terms({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, TruncSeries)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.cutoffs, self.domain)
        for _ in range(n):
            out = out * self
        return out

    # -- single-variable operators ------------------------------------------
    def mul_var(self, family: str, n: int, power: int = 1) -> "Poly":
        idx = 0 if family == "x" else 1
        if n > self.cutoffs[idx] or n < 1:
            raise CutoffError(f"{family}_{n} is outside cutoffs {self.cutoffs}")
        out = {}
        for m, c in self.terms.items():
            e = list(m[idx])
            if len(e) < n:
                e.extend([0] * (n - len(e)))
            e[n - 1] += power
            key = (tuple(e), m[1]) if idx == 0 else (m[0], tuple(e))
            out[key] = c
        return self.with_terms(out)

    def derivative(self, family: str, n: int, order: int = 1) -> "Poly":
        """Plain (unweighted) partial derivative of the given order."""
        idx = 0 if family == "x" else 1
        if n > self.cutoffs[idx] or n < 1:
            raise CutoffError(f"d/d{family}_{n} is outside cutoffs {self.cutoffs}")
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            e = m[idx]
            if len(e) < n or e[n - 1] < order:
                continue
            k = e[n - 1]
            factor = 1
            for j in range(order):
                factor *= k - j
            new = list(e)
            new[n - 1] = k - order
            new_e = _strip(new)
            key = (new_e, m[1]) if idx == 0 else (m[0], new_e)
            v = c * factor
            prev = out.get(key)
            out[key] = v if prev is None else prev + v
        return self.with_terms({m: c for m, c in out.items() if c})

    def apply_generator(self, kind: str, n: int) -> "Poly":
        """Apply one component of a (shifted) generator family; see ``GENERATORS``."""
        if kind == "x" or kind == "y":
            return self.mul_var(kind, n)
        if kind == "dx":
            return self.derivative("x", n).scale(Fraction(1, n))
        if kind == "dy":
            return self.derivative("y", n).scale(Fraction(1, n))
        if kind == "x-dy":
            if n > self.cutoffs[1]:
                raise CutoffError(f"d/dy_{n} is outside cutoffs {self.cutoffs}")
            return self.mul_var("x", n) - self.derivative("y", n).scale(Fraction(1, n))
        if kind == "y-dx":
            if n > self.cutoffs[0]:
                raise CutoffError(f"d/dx_{n} is outside cutoffs {self.cutoffs}")
            return self.mul_var("y", n) - self.derivative("x", n).scale(Fraction(1, n))
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- evaluation / rendering ---------------------------------------------
    def constant_term(self):
        return self.terms.get(ONE_MONO, _zero(self.domain))

    def substitute_shift(self, offsets: Tuple[int, int]) -> "Poly":
        """Rename x_n -> x_{n+dx}, y_n -> y_{n+dy} (for tensor doubling)."""
        dx, dy = offsets
        out = {}
        for (xe, ye), c in self.terms.items():
            nx = ((0,) * dx + xe) if xe else ()
            ny = ((0,) * dy + ye) if ye else ()
            out[(nx, ny)] = c
        return out

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self:
            vars_ = _mono_text(m)
            if isinstance(c, TruncSeries):
                ctext = c.to_text()
                if not vars_:
                    pieces.append(("+", ctext))
                else:
                    pieces.append(("+", f"({ctext})*{vars_}"))
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not vars_:
                body = format_rational(mag)
            elif mag == 1:
                body = vars_
            else:
                body = f"{format_rational(mag)}*{vars_}"
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"

    __str__ = to_text

    def to_json(self) -> dict:
        terms = []
        for (xe, ye), c in self:
            entry = {
                "x": {str(i + 1): v for i, v in enumerate(xe) if v},
                "y": {str(i + 1): v for i, v in enumerate(ye) if v},
                "c": c.to_json() if isinstance(c, TruncSeries) else format_rational(c),
            }
            terms.append(entry)
        return {"cutoffs": list(self.cutoffs), "coeff_domain": self.domain, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        domain = data.get("coeff_domain", "rational")
        terms = {}
        for entry in data["terms"]:
            xe = _dense(entry.get("x", {}))
            ye = _dense(entry.get("y", {}))
            raw = entry["c"]
            if domain == "rational":
                c = parse_rational(raw)
            else:
                param, cap = _series_params(domain)
                c = TruncSeries.from_json(raw, cap, param)
            terms[(xe, ye)] = c
        return cls(terms, tuple(data["cutoffs"]), domain)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _dense(sparse: dict) -> Exps:
    if not sparse:
        return ()
    n = max(int(k) for k in sparse)
    e = [0] * n
    for k, v in sparse.items():
        e[int(k) - 1] = int(v)
    return _strip(e)


def _series_params(domain: str) -> Tuple[str, int]:
    _, param, cap = domain.split(":")
    return param, int(cap)


def _unit(domain: str):
    if domain == "rational":
        return Fraction(1)
    param, cap = _series_params(domain)
    return TruncSeries({0: 1}, cap, param)


def _zero(domain: str):
    if domain == "rational":
        return Fraction(0)
    param, cap = _series_params(domain)
    return TruncSeries({}, cap, param)


def _accumulate(target: dict, source: dict, sign: int = 1) -> None:
    for m, c in source.items():
        if sign < 0:
            c = -c
        prev = target.get(m)
        if prev is None:
            target[m] = c
        else:
            s = prev + c
            if s:
                target[m] = s
            else:
                del target[m]


def _mono_text(m: Monomial) -> str:
    parts = []
    for name, e in zip(FAMILIES, m):
        for i, v in enumerate(e):
            if v == 1:
                parts.append(f"{name}{i + 1}")
            elif v > 1:
                parts.append(f"{name}{i + 1}^{v}")
    return "*".join(parts)


def poly_sum(polys: Iterable[Poly], like: Poly | None = None) -> Poly:
    terms: dict = {}
    ref = like
    for p in polys:
        if ref is None:
            ref = p
        else:
            ref._compatible(p)
        _accumulate(terms, p.terms)
    if ref is None:
        raise ValueError("poly_sum of an empty sequence needs a template polynomial")
    return ref.with_terms(terms)


# -- module-level operations --------------------------------------------------

def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, family: str, index: int, order: int = 1) -> Poly:
    return p.derivative(family, index, order)


def shifted_generator_apply(p: Poly, which: str, index: int, power: int = 1) -> Poly:
    """Apply (x_n - (1/n) d/dy_n)^k  (``which="x-dy"``) or (y_n - (1/n) d/dx_n)^k."""
    if which not in ("x-dy", "y-dx"):
        raise ValueError(f"unknown shifted generator {which!r}")
    if index > min(p.cutoffs):
        raise CutoffError(f"index {index} outside cutoffs {p.cutoffs}")
    for _ in range(power):
        p = p.apply_generator(which, index)
    return p


INHOMOGENEOUS = "inhomogeneous"


def graded_degree(p: Poly):
    """Common degree with deg x_n = n, deg y_n = -n, or ``INHOMOGENEOUS``."""
    if not p:
        raise ValueError("the zero polynomial has no degree")
    degs = {_weight(xe) - _weight(ye) for xe, ye in p.terms}
    return degs.pop() if len(degs) == 1 else INHOMOGENEOUS


def vacuum_pairing(p: Poly):
    return p.constant_term()


def doubled_cutoffs(cutoffs: Tuple[int, int]) -> Tuple[int, int]:
    return (2 * cutoffs[0], 2 * cutoffs[1])


def tensor_embed(p: Poly, slot: str) -> Poly:
    """Embed p into the doubled ring: left bank keeps indices 1..A, right bank uses A+1..2A."""
    A, B = p.cutoffs
    if slot == "left":
        offsets = (0, 0)
    elif slot == "right":
        offsets = (A, B)
    else:
        raise ValueError(f"slot must be 'left' or 'right', not {slot!r}")
    return Poly._raw(p.substitute_shift(offsets), doubled_cutoffs(p.cutoffs), p.domain)


def hall_weight(m: Monomial) -> Fraction:
    """<m, m> for the pairing <f, g> = const. term of f(d~x, d~y) g."""
    w = Fraction(1)
    for e in m:
        for i, v in enumerate(e):
            if v:
                n = i + 1
                f = 1
                for j in range(2, v + 1):
                    f *= j
                w *= Fraction(f, n ** v)
    return w


def hall_pairing(f: Poly, g: Poly):
    """Bilinear pairing in which monomials are orthogonal and Schur functions orthonormal."""
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    total = 0
    for m, c in small.terms.items():
        d = big.terms.get(m)
        if d is not None:
            total = total + c * d * hall_weight(m)
    return total


def monomials_by_weight(max_x: int, max_y: int, cutoffs) -> List[Poly]:
    """All monic monomials with x-weight <= max_x and y-weight <= max_y."""
    from .partitions import partitions_up_to

    def exps(max_w):
        out = []
        for lam in partitions_up_to(max_w):
            e = [0] * (lam[0] if lam else 0)
            for p in lam:
                e[p - 1] += 1
            out.append(tuple(e))
        return out

    return [Poly({(xe, ye): 1}, cutoffs) for xe in exps(max_x) for ye in exps(max_y)]
