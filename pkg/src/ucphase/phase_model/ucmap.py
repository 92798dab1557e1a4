"""The map from occupation states to universal characters and UC-basis operators."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from ..partitions import EMPTY, Partition, add_horizontal_strips, from_occupations, \
    remove_horizontal_strips
from ..polyring import Poly
from ..symfunc import default_cutoffs, uc_combination, universal_character_jt
from .fock import FockVector, OccState

UCKey = Tuple[Partition, Partition]
UCVector = Dict[UCKey, object]


def state_partitions(s: OccState) -> UCKey:
    lam = from_occupations({i: n for i, n in enumerate(s.chain1) if i})
    mu = from_occupations({i: m for i, m in enumerate(s.chain2) if i})
    return lam, mu


def jmath_map(s: OccState, cutoffs: Tuple[int, int] | None = None):
    """(lam, mu, S_[lam,mu]) with lam = 1^{n_1} 2^{n_2} ..., mu likewise; n_0, m_0 are forgotten."""
    lam, mu = state_partitions(s)
    if cutoffs is None:
        cutoffs = default_cutoffs(lam, mu)
    return lam, mu, universal_character_jt(lam, mu, cutoffs)


def jmath_report(s: OccState) -> dict:
    lam, mu, poly = jmath_map(s)
    return {"state": s.serialize(), "lam": lam.serialize(), "mu": mu.serialize(),
            "n0": s.chain1[0], "m0": s.chain2[0] if s.chain2 else None,
            "N1": s.total(1), "N2": s.total(2), "uc": poly.to_text()}


def fock_to_uc(v: FockVector) -> UCVector:
    """Project away the zero-energy occupations and read off UC-basis coefficients."""
    out: UCVector = {}
    for s, c in v.items():
        key = state_partitions(s)
        prev = out.get(key)
        val = c if prev is None else prev + c
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def uc_to_poly(vec: UCVector, cutoffs: Tuple[int, int] | None = None) -> Poly:
    if cutoffs is None:
        n = max([1] + [max(lam.weight, mu.weight) for lam, mu in vec])
        cutoffs = (n, n)
    return uc_combination(vec, cutoffs)


def uc_add(a: UCVector, b: UCVector, scale=1) -> UCVector:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c * scale
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def uc_scale(a: UCVector, c) -> UCVector:
    out = {}
    for k, v in a.items():
        w = v * c
        if w:
            out[k] = w
    return out


def uc_equal(a: UCVector, b: UCVector) -> bool:
    return not uc_add(a, b, -1)


def in_quotient(key: UCKey, M1: int | None, M2: int | None) -> bool:
    lam, mu = key
    ok1 = M1 is None or not lam or lam[0] <= M1
    ok2 = M2 is None or not mu or mu[0] <= M2
    return ok1 and ok2


def quotient(vec: UCVector, M1: int | None, M2: int | None) -> UCVector:
    """Set h_k(x) = 0 for k > M1 and h_k(y) = 0 for k > M2: drop diagrams with too many columns."""
    return {k: c for k, c in vec.items() if in_quotient(k, M1, M2)}


@lru_cache(maxsize=None)
def _strips(part: Partition, k: int, add: bool, max_cols: int | None):
    shapes = add_horizontal_strips(part, k) if add else remove_horizontal_strips(part, k)
    if max_cols is not None:
        shapes = [nu for nu in shapes if not nu or nu[0] <= max_cols]
    return tuple(shapes)


def strip_op(vec: UCVector, k: int, side: int, add: bool, max_cols: int | None = None) -> UCVector:
    """Pieri (add=True) or skew (add=False) action of h_k on one side of every diagram pair."""
    out: UCVector = {}
    for (lam, mu), c in vec.items():
        target = lam if side == 1 else mu
        for nu in _strips(target, k, add, max_cols):
            key = (nu, mu) if side == 1 else (lam, nu)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def H_op(vec: UCVector, M: int, t, side: int = 1, perp: bool = False) -> UCVector:
    """sum_{k<=M} t^k h_k (or h_k-perp) in the column-bounded quotient."""
    acc: UCVector = {}
    tk = 1
    for k in range(M + 1):
        acc = uc_add(acc, strip_op(vec, k, side, not perp, M if not perp else None), tk)
        tk = tk * t
    return acc
