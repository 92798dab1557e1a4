"""Complete homogeneous functions, Schur functions and universal characters."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Sequence, Tuple

from .partitions import (EMPTY, Partition, add_horizontal_strips, partitions_of,
                         remove_horizontal_strips, sorted_partitions)
from .polyring import CutoffError, Poly, _weight
from .scalars import rat

SHIFTED = ("x-dy", "y-dx")
UCKey = Tuple[Partition, Partition]


def default_cutoffs(lam: Partition, mu: Partition) -> Tuple[int, int]:
    n = max(sum(lam), sum(mu), 1)
    return (n, n)


# -- complete homogeneous functions -----------------------------------------

def _exps_of(rho: Partition) -> Tuple[int, ...]:
    if not rho:
        return ()
    e = [0] * rho[0]
    for p in rho:
        e[p - 1] += 1
    return tuple(e)


def _partition_of_exps(e: Sequence[int]) -> Partition:
    parts = []
    for i in range(len(e) - 1, -1, -1):
        parts.extend([i + 1] * e[i])
    return Partition(parts)


def _inv_factorials(e: Sequence[int]) -> Fraction:
    d = 1
    for v in e:
        d *= factorial(v)
    return Fraction(1, d)


def complete_h(n: int, alph, cutoffs: Tuple[int, int] | None = None):
    """h_n of an alphabet.

    ``alph`` is ``"x"``, ``"y"`` (optionally prefixed with ``"-"`` for the negated
    variables), returning a :class:`Poly` from the explicit multinomial sum, or a
    sequence of rationals, returning the numeric complete homogeneous polynomial.
    For the shifted operator alphabets use :func:`h_shifted`.
    """
    if isinstance(alph, str):
        sign = 1
        family = alph
        if family.startswith("-"):
            sign, family = -1, family[1:]
        if family in SHIFTED:
            raise ValueError("operator alphabets act on a polynomial; use h_shifted")
        if family not in ("x", "y"):
            raise ValueError(f"unknown alphabet {alph!r}")
        if cutoffs is None:
            cutoffs = (max(n, 1), max(n, 1))
        if n < 0:
            return Poly.zero(cutoffs)
        idx = 0 if family == "x" else 1
        if n > cutoffs[idx]:
            raise CutoffError(f"h_{n}({family}) needs {family}_{n}; cutoffs are {cutoffs}")
        terms = {}
        for rho in partitions_of(n):
            e = _exps_of(rho)
            c = _inv_factorials(e) * (sign ** len(rho))
            terms[(e, ()) if idx == 0 else ((), e)] = c
        return Poly(terms, cutoffs)
    return _numeric_h(tuple(rat(v) for v in alph), n)


def _numeric_h_list(points: Tuple[Fraction, ...], n: int) -> List[Fraction]:
    # coefficients of prod_i 1/(1 - u_i t) up to t^n
    h = [Fraction(1)] + [Fraction(0)] * n
    for u in points:
        for k in range(1, n + 1):
            h[k] = h[k] + u * h[k - 1]
    return h


def _numeric_h(points: Tuple[Fraction, ...], n: int) -> Fraction:
    if n < 0:
        return Fraction(0)
    return _numeric_h_list(points, n)[n]


def h_series_apply(kind: str, p: Poly, K: int, sign: int = 1) -> List[Poly]:
    """[h_k(sign * G) p for k = 0..K] for a commuting generator family G.

    Uses k h_k = sum_{n=1}^k n a_n h_{k-n}, valid because the components commute.
    """
    out = [p]
    for k in range(1, K + 1):
        acc = None
        for n in range(1, k + 1):
            prev = out[k - n]
            if not prev:
                continue
            term = prev.apply_generator(kind, n)
            if not term:
                continue
            term = term.scale(Fraction(sign * n, k))
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else p.zero_like())
    return out


def h_shifted(n: int, which: str, p: Poly) -> Poly:
    """Apply h_n(x - d~y) (``which="x-dy"``) or h_n(y - d~x) to p."""
    if which not in SHIFTED:
        raise ValueError(f"unknown shifted alphabet {which!r}")
    if n < 0:
        return p.zero_like()
    return h_series_apply(which, p, n)[n]


def truncated_H_apply(M: int, which: str, p: Poly) -> List[Poly]:
    """[h_k(which) p for k = 0..M]; the caller weights term k by t^k."""
    if which not in SHIFTED:
        raise ValueError(f"unknown shifted alphabet {which!r}")
    return h_series_apply(which, p, M)


def skew_H_apply(M: int, target: str, lam: Partition, mu: Partition):
    """UC-basis action of h_k^perp, k = 0..M: remove horizontal k-strips."""
    out = []
    for k in range(M + 1):
        if target == "first":
            pairs = [(nu, mu) for nu in remove_horizontal_strips(lam, k)]
        elif target == "second":
            pairs = [(lam, nu) for nu in remove_horizontal_strips(mu, k)]
        else:
            raise ValueError("target must be 'first' or 'second'")
        out.append((k, pairs))
    return out


# -- determinants --------------------------------------------------------------

def determinant(matrix: List[list]):
    """Cofactor expansion with memoization on the set of used columns.

    Works over any commutative ring whose zero is falsy; entries must support + - *.
    """
    n = len(matrix)
    if n == 0:
        return 1
    memo: Dict[int, object] = {}

    def rec(row: int, mask: int):
        if row == n:
            return 1
        if mask in memo:
            return memo[mask]
        total = None
        pos = 0
        for j in range(n):
            if mask >> j & 1:
                continue
            a = matrix[row][j]
            if a:
                minor = rec(row + 1, mask | (1 << j))
                if minor:
                    term = a if (type(minor) is int and minor == 1) else a * minor
                    if pos % 2:
                        term = -term
                    total = term if total is None else total + term
            pos += 1
        memo[mask] = total if total is not None else 0
        return memo[mask]

    return rec(0, 0)


def _h_poly(n: int, family: str, cutoffs) -> Poly:
    if n < 0:
        return Poly.zero(cutoffs)
    if n == 0:
        return Poly.one(cutoffs)
    return complete_h(n, family, cutoffs)


def _as_poly(value, cutoffs) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(value, cutoffs) if value else Poly.zero(cutoffs)


@lru_cache(maxsize=None)
def _schur_cached(lam: Tuple[int, ...], family: str, cutoffs: Tuple[int, int]) -> Poly:
    l = len(lam)
    matrix = [[_h_poly(lam[i] - i + j, family, cutoffs) for j in range(l)] for i in range(l)]
    return _as_poly(determinant(matrix), cutoffs)


def schur(lam: Partition, family: str = "x", cutoffs: Tuple[int, int] | None = None) -> Poly:
    """Jacobi-Trudi determinant det(h_{lam_i - i + j})."""
    lam = Partition(lam)
    if cutoffs is None:
        cutoffs = default_cutoffs(lam, EMPTY)
    return _schur_cached(tuple(lam), family, tuple(cutoffs))


@lru_cache(maxsize=None)
def _uc_jt_cached(lam: Tuple[int, ...], mu: Tuple[int, ...], cutoffs: Tuple[int, int]) -> Poly:
    l, lp = len(lam), len(mu)
    size = l + lp
    matrix = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            if i <= lp:
                row.append(_h_poly(mu[lp - i] + i - j, "y", cutoffs))
            else:
                row.append(_h_poly(lam[i - lp - 1] - i + j, "x", cutoffs))
        matrix.append(row)
    return _as_poly(determinant(matrix), cutoffs)


def universal_character_jt(lam: Partition, mu: Partition,
                           cutoffs: Tuple[int, int] | None = None) -> Poly:
    """S_[lam,mu] from the twisted Jacobi-Trudi determinant (y-rows first)."""
    lam, mu = Partition(lam), Partition(mu)
    if cutoffs is None:
        cutoffs = default_cutoffs(lam, mu)
    if sum(lam) > cutoffs[0] or sum(mu) > cutoffs[1]:
        raise CutoffError(f"S_[{lam},{mu}] needs cutoffs >= ({sum(lam)}, {sum(mu)}), got {cutoffs}")
    return _uc_jt_cached(tuple(lam), tuple(mu), tuple(cutoffs))


def apply_polynomial_operator(P: Poly, family: str, kind: str, f: Poly) -> Poly:
    """Evaluate P (a polynomial in one family) at the commuting generators ``kind`` on f."""
    idx = 0 if family == "x" else 1
    cache: Dict[Tuple[int, ...], Poly] = {(): f}

    def image(e: Tuple[int, ...]) -> Poly:
        if e in cache:
            return cache[e]
        n = max(i for i, v in enumerate(e) if v)
        lower = list(e)
        lower[n] -= 1
        while lower and lower[-1] == 0:
            lower.pop()
        res = image(tuple(lower)).apply_generator(kind, n + 1)
        cache[e] = res
        return res

    acc = f.zero_like()
    for mono, c in P.terms.items():
        if mono[1 - idx]:
            raise ValueError(f"operator polynomial mixes families: {P}")
        img = image(mono[idx])
        if img:
            acc = acc + img.scale(c)
    return acc


def universal_character_op(lam: Partition, mu: Partition,
                           cutoffs: Tuple[int, int] | None = None) -> Poly:
    """S_lam(x - d~y) S_mu(y - d~x) . 1 with both Schur polynomials pre-expanded."""
    lam, mu = Partition(lam), Partition(mu)
    if cutoffs is None:
        cutoffs = default_cutoffs(lam, mu)
    one = Poly.one(cutoffs)
    inner = apply_polynomial_operator(schur(mu, "y", cutoffs), "y", "y-dx", one)
    return apply_polynomial_operator(schur(lam, "x", cutoffs), "x", "x-dy", inner)


def schur_eval(lam: Partition, points: Sequence) -> Fraction:
    """Numeric S_lam(points) via Jacobi-Trudi with numeric h_k."""
    lam = Partition(lam)
    pts = tuple(rat(v) for v in points)
    if len(lam) > len(pts):
        return Fraction(0)
    if not lam:
        return Fraction(1)
    top = lam[0] + len(lam)
    h = _numeric_h_list(pts, top)

    def hk(k):
        return h[k] if 0 <= k <= top else Fraction(0)

    l = len(lam)
    matrix = [[hk(lam[i] - i + j) for j in range(l)] for i in range(l)]
    return Fraction(determinant(matrix))


# -- characters and the UC basis ---------------------------------------------------

@lru_cache(maxsize=None)
def character(lam: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    """Symmetric-group character chi^lam(rho) by the Murnaghan-Nakayama rule."""
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    l = len(lam)
    beta = [lam[i] + (l - 1 - i) for i in range(l)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new = sorted((nb if c == b else c) for c in beta)[::-1]
        m = len(new)
        shape = tuple(v - (m - 1 - i) for i, v in enumerate(new))
        shape = tuple(v for v in shape if v > 0)
        total += (-1) ** height * character(shape, rest)
    return total


def _power_norm(e: Sequence[int]) -> int:
    d = 1
    for i, v in enumerate(e):
        d *= (i + 1) ** v
    return d


def schur_by_characters(lam: Partition, family: str = "x",
                        cutoffs: Tuple[int, int] | None = None) -> Poly:
    """S_lam = sum_rho chi^lam(rho) prod x_n^{m_n}/m_n!  (independent of Jacobi-Trudi)."""
    lam = Partition(lam)
    if cutoffs is None:
        cutoffs = default_cutoffs(lam, EMPTY)
    terms = {}
    for rho in partitions_of(sum(lam)):
        chi = character(tuple(lam), tuple(rho))
        if chi:
            e = _exps_of(rho)
            terms[(e, ()) if family == "x" else ((), e)] = _inv_factorials(e) * chi
    return Poly(terms, cutoffs)


def uc_expand(p: Poly) -> Dict[UCKey, Fraction]:
    """Coefficients of p in the universal-character basis.

    S_[lam,mu] = S_lam(x) S_mu(y) + (terms of lower x- and y-weight), so the top
    (x-weight + y-weight) component is read off with the Hall pairing and the
    corresponding universal characters are subtracted until nothing is left.
    """
    if p.domain != "rational":
        raise ValueError("uc_expand needs rational coefficients")
    A = max(p.cutoffs[0], p.x_weight())
    B = max(p.cutoffs[1], p.y_weight())
    rest = p.recut((A, B)) if (A, B) != p.cutoffs else p
    result: Dict[UCKey, Fraction] = {}
    while rest:
        comps = rest.components()
        top = max(a + b for a, b in comps)
        subtract = []
        for (a, b), comp in comps.items():
            if a + b != top:
                continue
            for (lam, mu), c in _top_coefficients(comp, a, b).items():
                if c:
                    result[(lam, mu)] = result.get((lam, mu), 0) + c
                    subtract.append(universal_character_jt(lam, mu, (A, B)).scale(c))
        for s in subtract:
            rest = rest - s
    return {k: v for k, v in result.items() if v}


def _top_coefficients(comp: Poly, a: int, b: int) -> Dict[UCKey, Fraction]:
    lams = partitions_of(a)
    mus = partitions_of(b)
    # G[mu][xe] = sum over y-monomials of coeff * chi^mu(rho_y) / norm(y)
    G: Dict[Partition, Dict[Tuple[int, ...], Fraction]] = {mu: {} for mu in mus}
    for (xe, ye), c in comp.terms.items():
        rho_y = tuple(_partition_of_exps(ye))
        wy = Fraction(1, _power_norm(ye))
        for mu in mus:
            chi = character(tuple(mu), rho_y)
            if chi:
                G[mu][xe] = G[mu].get(xe, 0) + c * chi * wy
    out = {}
    for mu in mus:
        row = G[mu]
        if not row:
            continue
        for lam in lams:
            s = Fraction(0)
            for xe, g in row.items():
                chi = character(tuple(lam), tuple(_partition_of_exps(xe)))
                if chi:
                    s += g * chi / _power_norm(xe)
            if s:
                out[(lam, mu)] = s
    return out


def uc_combination(coeffs: Dict[UCKey, object], cutoffs: Tuple[int, int]) -> Poly:
    """sum c * S_[lam,mu] as a polynomial."""
    acc = Poly.zero(cutoffs)
    for (lam, mu), c in coeffs.items():
        if c:
            acc = acc + universal_character_jt(lam, mu, cutoffs).scale(c)
    return acc


def pieri_terms(lam: Partition, k: int, remove: bool = False) -> List[Partition]:
    return remove_horizontal_strips(lam, k) if remove else add_horizontal_strips(lam, k)


def clear_caches() -> None:
    _schur_cached.cache_clear()
    _uc_jt_cached.cache_clear()


def uc_pairs_up_to(max_lam: int, max_mu: int) -> List[UCKey]:
    lams = sorted_partitions(p for n in range(max_lam + 1) for p in partitions_of(n))
    mus = sorted_partitions(p for n in range(max_mu + 1) for p in partitions_of(n))
    return [(lam, mu) for lam in lams for mu in mus]


def weight_of(e) -> int:
    return _weight(e)
