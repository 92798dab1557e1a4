"""Named verification suites: each expands its parameters into independent cases."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .partitions import EMPTY, Partition, partitions_up_to
from .polyring import INHOMOGENEOUS, Poly, graded_degree
from .reports import Report
from .symfunc import uc_pairs_up_to, universal_character_jt, universal_character_op
from .vertex import (GammaSpec, cross_commutation_check, fermion_relation_check,
                     gamma_pieri_check, raise_uc, uc_bilinear_residual, _fermion_cutoffs)

Case = Tuple[Callable[..., Report], dict]


def route_case(lam: Partition, mu: Partition) -> Report:
    """Jacobi-Trudi, operator and raising-operator routes agree; the degree is |lam| - |mu|."""
    rep = Report("routes", {"lam": lam, "mu": mu})
    jt = universal_character_jt(lam, mu)
    rep.require(jt == universal_character_op(lam, mu), route="operator")
    rep.require(jt == raise_uc(lam, mu), route="raising")
    deg = graded_degree(jt)
    rep.require(deg != INHOMOGENEOUS and deg == lam.weight - mu.weight, degree=str(deg))
    return rep


def _pieri(max_weight: int, order: int) -> List[Case]:
    return [(gamma_pieri_check, {"spec": GammaSpec(f, s, order), "lam": lam, "mu": mu})
            for f in (1, 2) for s in "-+" for lam, mu in uc_pairs_up_to(max_weight, max_weight)]


def fermion_case(i: int, j: int, d: int, bound: int) -> Report:
    cut = _fermion_cutoffs(bound, bound, d)
    rep = Report("fermion_pair", {"i": i, "j": j, "d": d})
    for letter in "XY":
        rep.merge(fermion_relation_check(letter, i, j, d, cut))
    rep.merge(cross_commutation_check(i, j, d, cut))
    return rep


def bilinear_case(lam: Partition, mu: Partition) -> Report:
    return uc_bilinear_residual(lam, mu)[1]


def _phase_cases(m: int, cap: int) -> List[Case]:
    from .phase_model.fock import states_up_to
    from .phase_model.monodromy import (conservation_check, hamiltonian_check,
                                        phase_algebra_check)

    cases: List[Case] = []
    for M1 in range(m + 1):
        for M2 in range(m + 1):
            cases.append((phase_algebra_check, {"M1": M1, "M2": M2, "max_particles": cap}))
    for M in range(m + 1):
        cases.append((hamiltonian_check, {"M": M, "max_particles": cap}))
    for M1 in range(m + 1):
        states = states_up_to(M1, 1, min(cap, 3))
        for which in ("1", "2", "full"):
            for name in "ABCD":
                cases.append((conservation_check, {"M1": M1, "M2": 1, "name": name,
                                                   "which": which, "states": states}))
    return cases


def creation_case(M1: int, M2: int, cap: int) -> Report:
    from .phase_model.checks import prop_bb_check
    from .phase_model.fock import states_up_to

    rep = Report("creation_sweep", {"M1": M1, "M2": M2, "max_particles": cap})
    for s in states_up_to(M1, M2, cap):
        for chain in (1, 2):
            rep.merge(prop_bb_check(M1, M2, s, chain))
    return rep


def annihilation_case(M1: int, cap: int) -> Report:
    from .phase_model.checks import (annihilation_check, entry_relation_check,
                                     projected_relation_check)
    from .phase_model.fock import states_up_to

    rep = Report("annihilation_suite", {"M1": M1, "max_particles": cap})
    for s in states_up_to(M1, 1, cap):
        rep.merge(annihilation_check(M1, s, 1))
    rep.merge(entry_relation_check(M1, 1, 1, states_up_to(M1, 1, cap)))
    rep.merge(entry_relation_check(M1, 1, 2, states_up_to(M1, 1, cap)))
    rep.merge(projected_relation_check(M1, None, 1, cap))
    return rep


def rational_points(count: int, seed: int) -> List[Fraction]:
    """Nonzero rationals with pairwise distinct squares, drawn from a seeded generator."""
    import random

    rng = random.Random(seed)
    out: List[Fraction] = []
    while len(out) < count:
        u = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if all(u * u != v * v for v in out):
            out.append(u)
    return out


def exchange_cases(m1: int, seed: int) -> List[Case]:
    from .phase_model.checks import exchange_identity_check

    pts = rational_points(4, seed)
    cases: List[Case] = [(exchange_identity_check,
                          {"M1": 1, "u1": Fraction(2), "u2": Fraction(1), "p": Poly.one((1, 1))})]
    for M1 in range(1, m1 + 1):
        for lam in partitions_up_to(2):
            for mu in partitions_up_to(1):
                p = universal_character_jt(lam, mu, (3, 3))
                cases.append((exchange_identity_check, {"M1": M1, "u1": pts[0], "u2": pts[1],
                                                        "p": p}))
    return cases


def build_cases(suite: str, opts: Dict) -> List[Case]:
    """Expand a suite name and its options into (function, kwargs) cases."""
    from .macmahon import gamma_exchange_check, macmahon_compare, normal_order_check, \
        vertex_rep_limit_check
    from .phase_model import checks
    from .phase_model.monodromy import rtt_check, sample_pairs

    W = opts.get("max_weight")
    m1, m2, cap = opts.get("m1"), opts.get("m2"), opts.get("cap")
    order, seed = opts.get("order"), opts.get("seed", 0)
    if suite == "jacobi-trudi":
        return [(route_case, {"lam": l, "mu": m}) for l, m in uc_pairs_up_to(W, W)]
    if suite == "pieri":
        return _pieri(W, order)
    if suite == "fermion":
        rng = range(-cap, cap + 1)
        return [(fermion_case, {"i": i, "j": j, "d": W, "bound": cap}) for i in rng for j in rng]
    if suite == "uc-bilinear":
        return [(bilinear_case, {"lam": l, "mu": m}) for l, m in uc_pairs_up_to(W, W)]
    if suite == "phase-algebra":
        return _phase_cases(m1, cap)
    if suite == "rtt":
        n = max(7, 2 * (m1 + m2) + 5)
        return [(rtt_check, {"M1": m1, "M2": m2, "samples": sample_pairs(n, seed),
                             "max_particles": cap})]
    if suite == "prop42":
        return [(creation_case, {"M1": a, "M2": b, "cap": cap})
                for a in range(m1 + 1) for b in range(m2 + 1)]
    if suite == "annihilation":
        return [(annihilation_case, {"M1": a, "cap": cap}) for a in range(m1 + 1)]
    if suite == "bethe":
        cases: List[Case] = [(checks.bethe_expansion_check, {"us": [Fraction(2)], "M1": 1, "M2": 1}),
                             (checks.bethe_expansion_check, {"us": ["u"], "M1": m1, "M2": m2})]
        for N in range(1, 3):
            cases.append((checks.bethe_expansion_check,
                          {"us": rational_points(N, seed), "M1": m1, "M2": m2}))
            cases.append((checks.bethe_expansion_check,
                          {"us": rational_points(N, seed), "M1": m1, "M2": None}))
        return cases
    if suite == "exchange":
        return exchange_cases(m1, seed)
    if suite == "subset":
        return [(checks.subset_expansion_check, {"us": rational_points(N, seed), "M1": a})
                for N in range(order + 1) for a in range(1, m1 + 1)]
    if suite == "full-psi":
        return [(checks.full_psi_check, {"us": rational_points(N, seed), "M1": a, "M2": b})
                for N in range(order + 1) for a in range(1, m1 + 1) for b in range(m2 + 1)]
    if suite == "macmahon":
        return [(macmahon_compare, {"K": order})]
    if suite == "normal-order":
        polys = _small_polys()
        return [(normal_order_check, {"z": Fraction(2), "w": Fraction(1, 3), "p": p,
                                      "order": order}) for p in polys]
    if suite == "vertex-limit":
        return [(vertex_rep_limit_check, {"i": i, "K": order, "p": p})
                for i in (1, 2) for p in _small_polys()]
    raise KeyError(suite)


def _small_polys() -> List[Poly]:
    cut = (3, 3)
    x1, y1 = Poly.var("x", 1, cut), Poly.var("y", 1, cut)
    return [Poly.one(cut), x1, y1, x1 * y1 - 1, x1 * x1 + Poly.var("x", 2, cut)]


SUITES = ("jacobi-trudi", "pieri", "fermion", "uc-bilinear", "phase-algebra", "rtt", "prop42",
          "annihilation", "bethe", "exchange", "subset", "full-psi", "macmahon", "normal-order",
          "vertex-limit")

DEFAULTS = {"max_weight": 3, "m1": 1, "m2": 1, "cap": 2, "order": 3, "seed": 0, "jobs": 1}


def run_case(case: Case) -> dict:
    fn, kwargs = case
    return fn(**kwargs).to_dict()
