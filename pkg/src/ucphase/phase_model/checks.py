"""Verifiers tying the phase-model monodromy to operators on universal characters."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from ..partitions import EMPTY, Partition, partitions_in_box
from ..polyring import Poly
from ..reports import Report
from ..scalars import laurent, rat
from ..symfunc import h_series_apply, schur_eval, uc_expand, universal_character_jt
from .fock import (FockVector, OccState, OpWord, SiteOp, lift_headroom, states_up_to,
                   vacuum_state)
from .monodromy import (FORMAL, apply_entry, apply_symbolic, entry_dagger, entry_times, fg,
                        monodromy, word_entry)
from .ucmap import (H_op, UCVector, fock_to_uc, quotient, state_partitions, uc_add, uc_equal,
                    uc_scale, uc_to_poly)

READINGS = ("outside", "all-others", "last-only")
ADOPTED_READING = "outside"


def _u(e: int):
    return laurent({e: 1}, FORMAL)


def _uc_json(vec: UCVector) -> Dict[str, object]:
    out = {}
    for (lam, mu), c in sorted(vec.items(), key=lambda kv: (kv[0][0].weight + kv[0][1].weight,
                                                             kv[0])):
        out[f"{lam.serialize()}|{mu.serialize()}"] = c
    return out


@lru_cache(maxsize=None)
def _expanded_action(lam: Partition, mu: Partition, k: int, kind: str) -> Tuple:
    """UC expansion of h_k(kind) S_[lam,mu], computed on polynomials (cached)."""
    n = max(lam.weight, mu.weight) + k + 1
    poly = universal_character_jt(lam, mu, (n, n))
    img = h_series_apply(kind, poly, k)[k]
    return tuple(uc_expand(img).items()) if img else ()


# -- Prop: creation operators are truncated complete functions -----------------------------

def prop_bb_check(M1: int, M2: int | None, s: OccState, chain: int = 1) -> Report:
    """u^{M_i} B_i(u) s, projected, equals sum_{k<=M_i} u^{2k} h_k(shifted) S_[lam,mu] in the quotient."""
    M = M1 if chain == 1 else M2
    rep = Report("prop_bb", {"M1": M1, "M2": M2, "state": s, "chain": chain})
    img = apply_entry(M1, M2, str(chain), "B", FockVector.basis(s), FORMAL).scale(_u(M))
    fock = fock_to_uc(img)
    lam, mu = state_partitions(s)
    kind = "x-dy" if chain == 1 else "y-dx"
    oracle: UCVector = {}
    dropped = 0
    for k in range(M + 1):
        full = dict(_expanded_action(lam, mu, k, kind))
        kept = quotient(full, M1 if chain == 1 else None, M2 if chain == 2 else None)
        dropped += len(full) - len(kept)
        oracle = uc_add(oracle, kept, _u(2 * k))
    if not uc_equal(fock, oracle):
        rep.fail(fock=_uc_json(fock), oracle=_uc_json(oracle))
    rep.notes["terms_outside_column_bound"] = dropped
    return rep


def prop_bb_sweep(max_M: int, max_particles: int) -> Report:
    rep = Report("prop_bb_sweep", {"max_M": max_M, "max_particles": max_particles})
    for M1 in range(max_M + 1):
        for M2 in range(max_M + 1):
            for s in states_up_to(M1, M2, max_particles):
                for chain in (1, 2):
                    rep.merge(prop_bb_check(M1, M2, s, chain))
    return rep


# -- annihilation operator and entry relations --------------------------------------------

def entry_relation_check(M1: int, M2: int | None, chain: int, states: Sequence[OccState]) -> Report:
    """B = u A phid_0, C = u^{-1} phi_0 A^dagger(u^{-1}), D = phi_0 A^dagger(u^{-1}) phid_0."""
    rep = Report("entry_relations", {"M1": M1, "M2": M2, "chain": chain})
    T = monodromy(M1, M2, str(chain))
    A = T.entry("A")
    Ad = entry_dagger(A)
    phid0 = word_entry(OpWord([SiteOp(chain, 0, "phid")]))
    phi0 = word_entry(OpWord([SiteOp(chain, 0, "phi")]))
    rel = {
        "B": entry_times(word_entry(OpWord(), 1), entry_times(A, phid0)),
        "C": entry_times(word_entry(OpWord(), -1), entry_times(phi0, Ad)),
        "D": entry_times(phi0, entry_times(Ad, phid0)),
    }
    for s in states:
        v = FockVector.basis(s)
        for name in "ABCD":
            direct = apply_entry(M1, M2, str(chain), name, v, FORMAL)
            symbolic = apply_symbolic(T.entry(name), v, FORMAL)
            if direct != symbolic:
                rep.fail(state=s, entry=name, error="transfer and symbolic products differ")
            if name in rel and apply_symbolic(rel[name], v, FORMAL) != direct:
                rep.fail(state=s, entry=name,
                         residual=(apply_symbolic(rel[name], v, FORMAL) - direct).to_json())
    return rep


def _uc_matrix(M1, M2, chain, name, states, headroom) -> Dict[Tuple, UCVector]:
    out = {}
    for s in states:
        key = state_partitions(s)
        if key in out:
            continue
        v = FockVector.basis(lift_headroom(s, headroom))
        out[key] = fock_to_uc(apply_entry(M1, M2, str(chain), name, v, FORMAL))
    return out


def _transpose_inverse(mat: Dict[Tuple, UCVector]) -> Dict[Tuple, UCVector]:
    """(X^dagger)(u^{-1}) in the orthonormal UC basis: transpose and invert the parameter."""
    out: Dict[Tuple, UCVector] = {}
    for src, col in mat.items():
        for dst, c in col.items():
            out.setdefault(dst, {})[src] = c.substitute_inverse() if hasattr(c, "substitute_inverse") else c
    return out


def projected_relation_check(M1: int, M2: int | None, chain: int, max_particles: int) -> Report:
    """PAP = u^{-1} PBP, PCP = (PBP)^dagger(u^{-1}), PDP = u (PBP)^dagger(u^{-1})."""
    rep = Report("projected_relations", {"M1": M1, "M2": M2, "chain": chain,
                                         "max_particles": max_particles})
    states = states_up_to(M1, M2, max_particles + 1)
    head = max_particles + 3
    mats = {n: _uc_matrix(M1, M2, chain, n, states, head) for n in "ABCD"}
    Bt = _transpose_inverse(mats["B"])
    for key in mats["A"]:
        if sum(key[0]) + sum(key[1]) and max(len(key[0]), len(key[1])) > max_particles:
            continue
        a = mats["A"][key]
        if not uc_equal(a, uc_scale(mats["B"][key], _u(-1))):
            rep.fail(relation="A", source=key)
        bt = Bt.get(key, {})
        if not uc_equal(mats["C"][key], bt):
            rep.fail(relation="C", source=key)
        if not uc_equal(mats["D"][key], uc_scale(bt, _u(1))):
            rep.fail(relation="D", source=key)
    return rep


def annihilation_check(M1: int, s: OccState, M2: int | None = None, headroom: int = 1) -> Report:
    """u^{-M1} C_1(u) s, projected, equals sum_k u^{-2k} h_k-perp S_[lam,mu].

    The state is first given ``headroom`` zero-energy particles; the projection
    forgets n_0, so this represents the same positive-energy vector.
    """
    rep = Report("annihilation", {"M1": M1, "M2": M2, "state": s, "headroom": headroom})
    lifted = lift_headroom(s, headroom)
    img = apply_entry(M1, M2, "1", "C", FockVector.basis(lifted), FORMAL).scale(_u(-M1))
    fock = fock_to_uc(img)
    lam, mu = state_partitions(s)
    oracle: UCVector = {}
    for k in range(M1 + 1):
        oracle = uc_add(oracle, dict(_expanded_action(lam, mu, k, "dx")), _u(-2 * k))
    if not uc_equal(fock, oracle):
        rep.fail(fock=_uc_json(fock), oracle=_uc_json(oracle))
    return rep


# -- Bethe vectors -------------------------------------------------------------------------

def _params(us) -> list:
    formal = [u for u in us if isinstance(u, str)]
    if formal and len(us) > 1:
        raise ValueError("a formal spectral parameter is supported only for a single factor")
    return [u if isinstance(u, str) else rat(u) for u in us]


def bethe_state(M1: int, M2: int | None, us: Sequence) -> FockVector:
    """prod_j B_2(u_j) B_1(u_j) |0> (chain 2 skipped when absent)."""
    us = _params(us)
    v = FockVector.vacuum(M1, M2)
    for u in us:
        v = apply_entry(M1, M2, "1", "B", v, u)
        if M2 is not None:
            v = apply_entry(M1, M2, "2", "B", v, u)
    return v


def _schur_sq(lam: Partition, us: Sequence):
    """S_lam(u_1^2, ..., u_N^2); for one formal u this is u^{2|lam|} when lam is one row."""
    if us and isinstance(us[0], str):
        if len(lam) > 1:
            return 0
        return _u(2 * lam.weight)
    return schur_eval(lam, [u * u for u in us])


def _prod_power(us, e):
    if us and isinstance(us[0], str):
        return _u(e * len(us))
    acc = Fraction(1)
    for u in us:
        acc *= u ** e
    return acc


def bethe_expansion(us: Sequence, M1: int, M2: int | None) -> UCVector:
    """(prod u)^{-M1-M2} sum S_lam(u^2) S_mu(u^2) S_[lam,mu] over the boxed diagrams."""
    us = _params(us)
    N = len(us)
    pref = _prod_power(us, -M1 - (M2 or 0))
    mus = partitions_in_box(N, M2) if M2 is not None else [EMPTY]
    out: UCVector = {}
    for lam in partitions_in_box(N, M1):
        sl = _schur_sq(lam, us)
        if not sl:
            continue
        for mu in mus:
            sm = _schur_sq(mu, us) if M2 is not None else 1
            c = sl * sm * pref
            if c:
                out[(lam, mu)] = c
    return out


def bethe_expansion_check(us: Sequence, M1: int, M2: int | None) -> Report:
    rep = Report("bethe_expansion", {"us": list(us), "M1": M1, "M2": M2})
    fock = fock_to_uc(bethe_state(M1, M2, us))
    want = bethe_expansion(us, M1, M2)
    if not uc_equal(fock, want):
        rep.fail(fock=_uc_json(fock), formula=_uc_json(want))
    if not any(isinstance(u, str) for u in us):
        rep.notes["polynomial"] = uc_to_poly(fock).to_text()
    # B_1(u) B_2(v) = B_2(v) B_1(u) on the vacuum for every pair of parameters
    if M2 is not None and len(us) >= 1 and not isinstance(us[0], str):
        pairs = [(a, b) for a in us for b in us]
        for a, b in pairs:
            vac = FockVector.vacuum(M1, M2)
            x = apply_entry(M1, M2, "1", "B", apply_entry(M1, M2, "2", "B", vac, b), a)
            y = apply_entry(M1, M2, "2", "B", apply_entry(M1, M2, "1", "B", vac, a), b)
            rep.require(x == y, error="B1 and B2 do not commute on the vacuum", u=a, v=b)
    return rep


def commutativity_check(M1: int, M2: int | None, samples: Sequence[Tuple], max_particles: int) -> Report:
    """[B_1(u), B_2(v)] = 0 and [B(u), B(v)] = 0 on all states up to max_particles."""
    rep = Report("commutativity", {"M1": M1, "M2": M2, "max_particles": max_particles})
    for u, v in samples:
        for s in states_up_to(M1, M2, max_particles):
            base = FockVector.basis(s)
            if M2 is not None:
                x = apply_entry(M1, M2, "1", "B", apply_entry(M1, M2, "2", "B", base, v), u)
                y = apply_entry(M1, M2, "2", "B", apply_entry(M1, M2, "1", "B", base, u), v)
                rep.require(x == y, pair="B1,B2", u=u, v=v, state=s)
            x = apply_entry(M1, M2, "full", "B", apply_entry(M1, M2, "full", "B", base, v), u)
            y = apply_entry(M1, M2, "full", "B", apply_entry(M1, M2, "full", "B", base, u), v)
            rep.require(x == y, pair="B,B", u=u, v=v, state=s)
    return rep


# -- exchange identity and the chain-1 combination operator -------------------------------

def _combo(vec: UCVector, M1: int, u) -> UCVector:
    """u^{-M1-1} H(u^2) + u^{M1+1} H-perp(u^{-2}) on the quotient."""
    u = rat(u)
    a = uc_scale(H_op(vec, M1, u * u), u ** (-M1 - 1))
    b = uc_scale(H_op(vec, M1, 1 / (u * u), perp=True), u ** (M1 + 1))
    return uc_add(a, b)


def _as_uc(p, M1: int) -> UCVector:
    if isinstance(p, Poly):
        vec = dict(uc_expand(p))
    else:
        vec = dict(p)
    return quotient(vec, M1, None)


def exchange_identity_check(M1: int, u1, u2, p) -> Report:
    """H-perp(u1^{-2}) H(u2^2) rewritten through the reversed products, applied to p."""
    u1, u2 = rat(u1), rat(u2)
    f, _ = fg(u1, u2)  # raises on a singular pair
    rep = Report("exchange_identity", {"M1": M1, "u1": u1, "u2": u2})
    vec = _as_uc(p, M1)
    c12 = u1 ** (M1 + 1) * u2 ** (-M1 - 1)
    lhs = uc_scale(H_op(H_op(vec, M1, u2 * u2), M1, 1 / (u1 * u1), perp=True), c12)
    t1 = uc_scale(H_op(H_op(vec, M1, 1 / (u1 * u1), perp=True), M1, u2 * u2), c12 * f)
    t2 = uc_scale(H_op(H_op(vec, M1, 1 / (u2 * u2), perp=True), M1, u1 * u1),
                  u1 ** (-M1 - 1) * u2 ** (M1 + 1) * f)
    rhs = uc_add(t1, t2, -1)
    rep.notes["lhs"] = uc_to_poly(lhs).to_text()
    rep.notes["rhs"] = uc_to_poly(rhs).to_text()
    if not uc_equal(lhs, rhs):
        rep.fail(part="exchange", lhs=_uc_json(lhs), rhs=_uc_json(rhs))
    x = _combo(_combo(vec, M1, u2), M1, u1)
    y = _combo(_combo(vec, M1, u1), M1, u2)
    if not uc_equal(x, y):
        rep.fail(part="commutator", residual=_uc_json(uc_add(x, y, -1)))
    return rep


# -- subset expansion and the full Bethe vector ----------------------------------------------

def _distinct_squares(us):
    sq = [u * u for u in us]
    if any(u == 0 for u in us) or len(set(sq)) != len(sq):
        raise ZeroDivisionError("parameters must be nonzero with pairwise distinct squares")


def subset_weight(us: Sequence[Fraction], K: Tuple[int, ...], reading: str) -> Fraction:
    """prod of u_j^2/(u_j^2 - u_k^2) under one reading of the index range."""
    w = Fraction(1)
    N = len(us)
    ks = K if reading != "last-only" else K[-1:]
    for k in ks:
        for j in range(N):
            if j == k:
                continue
            if reading == "outside" and j in K:
                continue
            w *= us[j] ** 2 / (us[j] ** 2 - us[k] ** 2)
    return w


def subset_expansion(us: Sequence, M1: int, reading: str = ADOPTED_READING) -> UCVector:
    """(prod u)^{M1+1} sum_K u_K^{-2M1-2} w(K) sum_lam S_lam(u_K^2) S_[lam,0]."""
    us = [rat(u) for u in us]
    N = len(us)
    pref = _prod_power(us, M1 + 1)
    out: UCVector = {}
    for i in range(N + 1):
        for K in combinations(range(N), i):
            uK = [us[k] for k in K]
            c = pref * _prod_power(uK, -2 * M1 - 2) * subset_weight(us, K, reading)
            for lam in partitions_in_box(i, M1):
                s = schur_eval(lam, [u * u for u in uK]) if i else Fraction(1)
                if s:
                    out = uc_add(out, {(lam, EMPTY): c * s})
    return out


def combo_fock(M1: int, us: Sequence, headroom: int) -> UCVector:
    """prod_j P(A_1(u_j) + D_1(u_j))P |0> computed on occupation states."""
    v = FockVector.vacuum(M1, None, headroom)
    for u in us:
        v = apply_entry(M1, None, "1", "A", v, u) + apply_entry(M1, None, "1", "D", v, u)
    return fock_to_uc(v)


def subset_expansion_check(us: Sequence, M1: int) -> Report:
    us = [rat(u) for u in us]
    _distinct_squares(us)
    rep = Report("subset_expansion", {"us": us, "M1": M1, "adopted_reading": ADOPTED_READING})
    lhs: UCVector = {(EMPTY, EMPTY): Fraction(1)}
    for u in us:
        lhs = _combo(lhs, M1, u)
    fock = combo_fock(M1, us, len(us) + 1)
    if not uc_equal(lhs, fock):
        rep.fail(part="operator-vs-occupation", lhs=_uc_json(lhs), fock=_uc_json(fock))
    outcomes = {}
    for reading in READINGS:
        outcomes[reading] = uc_equal(lhs, subset_expansion(us, M1, reading))
    rep.notes["reading_matches"] = outcomes
    if not outcomes[ADOPTED_READING]:
        rep.fail(part="adopted reading", reading=ADOPTED_READING, lhs=_uc_json(lhs),
                 rhs=_uc_json(subset_expansion(us, M1, ADOPTED_READING)))
    return rep


def full_psi_expansion(us: Sequence, M1: int, M2: int, reading: str = ADOPTED_READING) -> UCVector:
    """(prod u)^{-M2+M1+1} sum_K ... sum_{lam,mu} S_lam(u_K^2) S_mu(u^2) S_[lam,mu]."""
    us = [rat(u) for u in us]
    N = len(us)
    chain1 = subset_expansion(us, M1, reading)
    pref = _prod_power(us, -M2)
    out: UCVector = {}
    for mu in partitions_in_box(N, M2):
        sm = schur_eval(mu, [u * u for u in us]) if N else Fraction(1)
        if not sm:
            continue
        for (lam, _), c in chain1.items():
            out = uc_add(out, {(lam, mu): c * sm * pref})
    return out


def full_psi_state(M1: int, M2: int, us: Sequence, headroom: int) -> FockVector:
    v = FockVector.vacuum(M1, M2, headroom)
    for u in us:
        v = apply_entry(M1, M2, "full", "B", v, u)
    return v


def full_psi_check(us: Sequence, M1: int, M2: int) -> Report:
    """prod_j B(u_j)|0> with the full monodromy versus the double-sum expansion."""
    us = [rat(u) for u in us]
    _distinct_squares(us)
    rep = Report("full_psi", {"us": us, "M1": M1, "M2": M2, "adopted_reading": ADOPTED_READING})
    fock = fock_to_uc(full_psi_state(M1, M2, us, len(us) + 1))
    outcomes = {r: uc_equal(fock, full_psi_expansion(us, M1, M2, r)) for r in READINGS}
    rep.notes["reading_matches"] = outcomes
    if not outcomes[ADOPTED_READING]:
        rep.fail(fock=_uc_json(fock), formula=_uc_json(full_psi_expansion(us, M1, M2)))
    return rep
