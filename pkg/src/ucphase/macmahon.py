"""Plane partitions, the MacMahon function and vertex-operator correlators."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from .partitions import Partition, partitions_of
from .polyring import Poly
from .reports import Report
from .scalars import TruncSeries, rat, series_inv
from .symfunc import truncated_H_apply, uc_expand
from .vertex import GammaSpec, gamma_apply

ENUMERATION_BOUND = 10


class QSeries:
    """A t-series read as a q-series through q = t^2."""

    __slots__ = ("series", "order")

    def __init__(self, series: TruncSeries, order: int):
        self.series = series
        self.order = order

    def odd_part_zero(self) -> bool:
        return all(e % 2 == 0 for e in self.series.terms)

    def coefficients(self) -> List[Fraction]:
        if not self.odd_part_zero():
            raise ValueError("series has odd t-exponents; it is not a series in q")
        return [self.series[2 * k] for k in range(self.order + 1)]

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coefficients()]

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.coefficients() == other.coefficients()
        if isinstance(other, (list, tuple)):
            return self.coefficients() == [Fraction(c) for c in other]
        return NotImplemented

    def __repr__(self) -> str:
        return f"QSeries({self.to_json()})"


def _q_series(coeffs: Dict[int, Fraction], K: int) -> QSeries:
    return QSeries(TruncSeries({2 * e: c for e, c in coeffs.items()}, 2 * K, "t"), K)


def _poly_factor(n: int, K: int) -> TruncSeries:
    """1 - t^{2n} truncated at t^{2K}."""
    return TruncSeries({0: 1, 2 * n: -1}, 2 * K, "t")


def macmahon_series(K: int) -> QSeries:
    """prod_{n<=K} (1 - q^n)^{-n} through q^K."""
    if K < 0:
        raise ValueError("order must be non-negative")
    acc = TruncSeries.one(2 * K, "t")
    for n in range(1, K + 1):
        inv = series_inv(_poly_factor(n, K))
        acc = acc * inv ** n
    return QSeries(acc, K)


def inverse_macmahon_product(K: int) -> QSeries:
    """prod_{n<=K} (1 - q^n)^n through q^K."""
    acc = TruncSeries.one(2 * K, "t")
    for n in range(1, K + 1):
        acc = acc * _poly_factor(n, K) ** n
    return QSeries(acc, K)


# -- plane partitions --------------------------------------------------------------------------

class PlanePartition:
    """Finitely supported heights on the quadrant, weakly decreasing along rows and columns."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = [Partition(r) for r in rows if r]
        for a, b in zip(rows, rows[1:]):
            if len(b) > len(a) or any(b[i] > a[i] for i in range(len(b))):
                raise ValueError("heights must decrease weakly down each column")
        self.rows = tuple(rows)

    @property
    def heights(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): h for i, r in enumerate(self.rows) for j, h in enumerate(r)}

    @property
    def total(self) -> int:
        return sum(sum(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanePartition) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"PlanePartition({[tuple(r) for r in self.rows]})"


def _dominated(bound: Partition, n: int) -> Iterator[Partition]:
    for lam in partitions_of(n, bound[0] if bound else 0):
        if len(lam) <= len(bound) and all(lam[i] <= bound[i] for i in range(len(lam))):
            yield lam


def plane_partitions(n: int) -> Iterator[PlanePartition]:
    """Every plane partition of n, each built row by row under the row above."""
    if n < 0:
        return
    if n > ENUMERATION_BOUND:
        raise ValueError(f"enumeration bound is {ENUMERATION_BOUND}, got {n}")

    def rec(rows: List[Partition], left: int):
        if left == 0:
            yield PlanePartition(rows)
            return
        if not rows:
            for s in range(left, 0, -1):
                for lam in partitions_of(s):
                    yield from rec([lam], left - s)
            return
        for s in range(min(left, sum(rows[-1])), 0, -1):
            for lam in _dominated(rows[-1], s):
                yield from rec(rows + [lam], left - s)

    yield from rec([], n)


def plane_partition_count(n: int) -> int:
    return sum(1 for _ in plane_partitions(n))


# -- correlators ---------------------------------------------------------------------------

_KIND = {(1, "-"): "x-dy", (2, "-"): "y-dx", (1, "+"): "dx", (2, "+"): "dy"}


def _weighted_exp(kind: str, p: Poly, a: int) -> Poly:
    """exp(xi(G, t^a)) p with every G_n carrying t^{a n}; the cap truncates the sum."""
    param, cap = "t", int(p.domain.split(":")[2])
    kmax = cap // a
    out = [p]
    total = p
    for k in range(1, kmax + 1):
        acc = p.zero_like()
        for n in range(1, k + 1):
            prev = out[k - n]
            if not prev or n > min(p.cutoffs):
                continue
            acc = acc + prev.apply_generator(kind, n).scale(
                TruncSeries({a * n: Fraction(n, k)}, cap, param))
        out.append(acc)
        total = total + acc
    return total


def _correlator_state(K: int, with_plus: bool) -> Poly:
    cap = 2 * K
    cut = (max(cap, 1), max(cap, 1))
    p = Poly.one(cut).to_series("t", cap)
    # prod_{m=1}^{K} Gamma2^-(q^{m-1/2}) Gamma1^-(q^{m-1/2}); the rightmost factor acts first
    for m in range(K, 0, -1):
        p = _weighted_exp(_KIND[1, "-"], p, 2 * m - 1)
        p = _weighted_exp(_KIND[2, "-"], p, 2 * m - 1)
    if with_plus:
        # Gamma^+(q^{-m+1/2}) expands in z^{-1} = q^{m-1/2}: positive t-weights again
        for m in range(K, 0, -1):
            p = _weighted_exp(_KIND[1, "+"], p, 2 * m - 1)
            p = _weighted_exp(_KIND[2, "+"], p, 2 * m - 1)
    return p


def _vacuum_value(p: Poly, K: int) -> QSeries:
    c = p.constant_term()
    return QSeries(c if isinstance(c, TruncSeries) else TruncSeries({0: c}, 2 * K, "t"), K)


def correlator_minus(K: int) -> QSeries:
    """<0| prod_m Gamma2^-(q^{m-1/2}) Gamma1^-(q^{m-1/2}) |0> through q^K."""
    if K == 0:
        return QSeries(TruncSeries.one(0, "t"), 0)
    return _vacuum_value(_correlator_state(K, False), K)


def correlator_full(K: int) -> QSeries:
    """<0| prod Gamma^+(q^{-m+1/2}) prod Gamma^-(q^{m-1/2}) |0> through q^K."""
    if K == 0:
        return QSeries(TruncSeries.one(0, "t"), 0)
    return _vacuum_value(_correlator_state(K, True), K)


def exchange_scalar(K: int) -> QSeries:
    """Product of the (1 - w/z)^{-1} factors picked up moving every Gamma^+ past every Gamma^-.

    Only same-family pairs contribute; w/z = q^{m + m' - 1} for levels m, m' <= K.
    """
    acc = TruncSeries.one(2 * K, "t")
    for m in range(1, K + 1):
        for mp in range(1, K + 1):
            n = m + mp - 1
            if n > K:
                continue
            inv = series_inv(_poly_factor(n, K))
            acc = acc * inv * inv  # one factor per family
    return QSeries(acc, K)


def macmahon_compare(K: int) -> Report:
    """Product formula, full correlator, exchange-scalar route and plane-partition counts."""
    rep = Report("macmahon", {"order": K})
    prod = macmahon_series(K).coefficients()
    full = correlator_full(K)
    minus = correlator_minus(K)
    via = QSeries(exchange_scalar(K).series * minus.series, K).coefficients()
    rows = {"product": prod, "correlator": full.coefficients(), "exchange": via}
    if K <= ENUMERATION_BOUND:
        rows["enumerate"] = [Fraction(plane_partition_count(n)) for n in range(K + 1)]
    rep.notes["series"] = {k: [str(c) for c in v] for k, v in rows.items()}
    for name, v in rows.items():
        rep.require(v == prod, method=name, got=[str(c) for c in v])
    rep.require(minus.coefficients() == inverse_macmahon_product(K).coefficients(), method="finite product",
                got=minus.to_json())
    rep.require(full.odd_part_zero() and minus.odd_part_zero(), error="odd t-exponents present")
    return rep


# -- operator identities behind the correlators ----------------------------------------------------

def _grid(kind_first: str, kind_second: str, p: Poly, A: int, B: int) -> List[List[Poly]]:
    """[a][b] -> h_a(first) h_b(second) p, the second operator acting first."""
    from .symfunc import h_series_apply

    inner = h_series_apply(kind_second, p, B)
    return [[h_series_apply(kind_first, q, A)[a] if q else q for q in inner] for a in range(A + 1)]


def normal_order_check(z, w, p: Poly, order: int = 2) -> Report:
    """Gamma2^-(z) Gamma1^-(w) = (1 - zw) :Gamma2^-(z) Gamma1^-(w): coefficientwise in z, w.

    The normal-ordered product is exp(xi(y,z)) exp(xi(x,w)) exp(-xi(d~x,z)) exp(-xi(d~y,w)).
    When z and w are numbers the truncated double sums are also compared at those values.
    """
    from .symfunc import h_series_apply

    K = order
    n = max(K, *p.cutoffs)
    p = p.recut((n, n))
    rep = Report("normal_order", {"z": z, "w": w, "p": p, "order": K})
    lhs = _grid("y-dx", "x-dy", p, K, K)
    # N[a][b] = sum h_{a1}(y) h_{b1}(x) h_{a2}(-d~x) h_{b2}(-d~y) p with a1+a2=a, b1+b2=b
    dy = h_series_apply("dy", p, K, -1)
    N = [[p.zero_like() for _ in range(K + 1)] for _ in range(K + 1)]
    for b2, q in enumerate(dy):
        dx = h_series_apply("dx", q, K, -1)
        for a2, r in enumerate(dx):
            xs = h_series_apply("x", r, K - b2)
            for b1, s in enumerate(xs):
                ys = h_series_apply("y", s, K - a2)
                for a1, t in enumerate(ys):
                    N[a1 + a2][b1 + b2] = N[a1 + a2][b1 + b2] + t
    for a in range(K + 1):
        for b in range(K + 1):
            rhs = N[a][b] - (N[a - 1][b - 1] if a and b else p.zero_like())
            rep.require(lhs[a][b] == rhs, z_power=a, w_power=b, residual=lhs[a][b] - rhs)
    if z is not None and w is not None:
        z, w = rat(z), rat(w)
        L = sum((lhs[a][b].scale(z ** a * w ** b) for a in range(K + 1) for b in range(K + 1)),
                p.zero_like())
        R = p.zero_like()
        for a in range(K + 1):
            for b in range(K + 1):
                R = R + N[a][b].scale(z ** a * w ** b)
                if a < K and b < K:
                    R = R - N[a][b].scale(z ** (a + 1) * w ** (b + 1))
        rep.require(L == R, numeric=True, residual=L - R)
    return rep


def gamma_exchange_check(i: int, z, w, p: Poly, order: int = 4) -> Report:
    """Gamma_i^+(z) Gamma_i^-(w) = (1 - w/z)^{-1} Gamma_i^-(w) Gamma_i^+(z), expanded in w.

    Also checks that Gamma_i^+(z) commutes with Gamma_j^-(w) for j != i.
    """
    from .symfunc import h_series_apply

    z = rat(z)
    if z == 0:
        raise ZeroDivisionError("z must be nonzero")
    j = 3 - i
    K = order
    n = max(p.cutoffs) + K + max(p.x_weight(), p.y_weight())
    p = p.recut((n, n))
    rep = Report("gamma_exchange", {"i": i, "z": z, "w": w, "p": p, "order": K})

    def plus(f: Poly, fam: int) -> Poly:
        # Gamma^+(z) f = sum_k z^{-k} h_k(d~) f; terminates because derivatives do
        gen = "dx" if fam == 1 else "dy"
        bound = f.x_weight() if fam == 1 else f.y_weight()
        total = f.zero_like()
        for k, term in enumerate(h_series_apply(gen, f, bound)):
            total = total + term.scale(z ** (-k))
        return total

    minus_kind = {1: "x-dy", 2: "y-dx"}
    # coefficient of w^b on each side
    plus_p = plus(p, i)
    lhs = [plus(q, i) for q in h_series_apply(minus_kind[i], p, K)]
    after = h_series_apply(minus_kind[i], plus_p, K)
    for b in range(K + 1):
        rhs = p.zero_like()
        for c in range(b + 1):
            rhs = rhs + after[b - c].scale(z ** (-c))
        rep.require(lhs[b] == rhs, w_power=b, residual=lhs[b] - rhs)
    cross_l = [plus(q, i) for q in h_series_apply(minus_kind[j], p, K)]
    cross_r = h_series_apply(minus_kind[j], plus_p, K)
    for b in range(K + 1):
        rep.require(cross_l[b] == cross_r[b], cross=True, w_power=b,
                    residual=cross_l[b] - cross_r[b])
    if w is not None:
        rep.notes["w"] = str(rat(w))
    rep.notes["label_note"] = ("operators are bound to their exponential expressions; "
                               "the Gamma^+ / Gamma^- labels used for the creation and "
                               "annihilation operators are the reverse of these")
    return rep


def vertex_rep_limit_check(i: int, K: int, p: Poly, extra: int = 2) -> Report:
    """Truncated H_M coefficients 0..K equal the exponential's for every M >= K.

    Three routes: the truncated generating function (Newton recursion), the literal
    exponential, and the creation operator of a chain with M positive-energy sites.
    """
    from .phase_model.fock import FockVector, OccState
    from .phase_model.monodromy import FORMAL, apply_entry
    from .phase_model.ucmap import fock_to_uc, uc_to_poly
    from .scalars import laurent

    rep = Report("vertex_rep_limit", {"i": i, "K": K, "p": p})
    which = "x-dy" if i == 1 else "y-dx"
    support = uc_expand(p)
    width = max([0] + [(lam if i == 1 else mu).part(0) for lam, mu in support])
    stable = K + width
    n = max(*p.cutoffs, stable + extra + max(p.x_weight(), p.y_weight()))
    p = p.recut((n, n))
    gam = gamma_apply(GammaSpec(i, "-", K), p)
    # the polynomial route is stable from M = K; a finite chain also needs room for the
    # widest row of p's diagrams, since longer rows fall outside its column bound
    rep.notes["stable_M"] = K
    rep.notes["chain_stable_M"] = stable
    for M in range(K, stable + extra + 1):
        trunc = truncated_H_apply(M, which, p)[:K + 1]
        for k in range(K + 1):
            rep.require(trunc[k] == gam[k], route="truncated_H", M=M, k=k)
        if M < stable:
            continue
        # creation operator on the preimage of p's UC expansion
        acc = [p.zero_like() for _ in range(K + 1)]
        M1 = M if i == 1 else max([1] + [lam.part(0) for lam, _ in support])
        M2 = M if i == 2 else max([1] + [mu.part(0) for _, mu in support])
        for (lam, mu), c in support.items():
            n = [0] * (M1 + 1)
            for part in lam:
                n[part] += 1
            m = [0] * (M2 + 1)
            for part in mu:
                m[part] += 1
            img = apply_entry(M1, M2, str(i), "B", FockVector.basis(OccState(tuple(n), tuple(m))),
                              FORMAL).scale(laurent({M: 1}, FORMAL))
            uc = fock_to_uc(img)
            for k in range(K + 1):
                part_k = {key: v[2 * k] for key, v in uc.items() if v[2 * k]}
                if part_k:
                    acc[k] = acc[k] + uc_to_poly(part_k, p.cutoffs).scale(c)
        for k in range(K + 1):
            rep.require(acc[k] == gam[k], route="creation operator", M=M, k=k,
                        residual=acc[k] - gam[k])
    return rep
