"""L-matrices, monodromy matrices, the R-matrix and the chain Hamiltonian."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..reports import Report
from ..scalars import TruncSeries, laurent, rat
from .fock import (FockVector, OccState, OpWord, SiteOp, number_operator, site_apply,
                   states_up_to)

ENTRY_INDEX = {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}
FORMAL = "u"  # pass as the spectral parameter to work with formal Laurent coefficients


def u_pair(u):
    """(u, 1/u) as scalars: Laurent monomials for the formal parameter, else Fractions."""
    if isinstance(u, str):
        return laurent({1: 1}, u), laurent({-1: 1}, u)
    u = rat(u)
    if u == 0:
        raise ZeroDivisionError("spectral parameter must be nonzero")
    return u, 1 / u


class OperatorLaurent:
    """2x2 grid whose entries map (u-exponent, OpWord) to a rational coefficient."""

    __slots__ = ("grid",)

    def __init__(self, grid: List[List[Dict[Tuple[int, OpWord], Fraction]]]):
        self.grid = grid

    def entry(self, name_or_ab) -> Dict[Tuple[int, OpWord], Fraction]:
        a, b = ENTRY_INDEX[name_or_ab] if isinstance(name_or_ab, str) else name_or_ab
        return self.grid[a][b]

    def __matmul__(self, other: "OperatorLaurent") -> "OperatorLaurent":
        grid = []
        for a in range(2):
            row = []
            for b in range(2):
                acc: Dict[Tuple[int, OpWord], Fraction] = {}
                for c in range(2):
                    for (e1, w1), c1 in self.grid[a][c].items():
                        for (e2, w2), c2 in other.grid[c][b].items():
                            key = (e1 + e2, w1 * w2)
                            v = acc.get(key, 0) + c1 * c2
                            if v:
                                acc[key] = v
                            else:
                                acc.pop(key, None)
                row.append(acc)
            grid.append(row)
        return OperatorLaurent(grid)

    def exponents(self, name) -> List[int]:
        return sorted({e for e, _ in self.entry(name)})

    def to_text(self, name) -> str:
        terms = sorted(self.entry(name).items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
        return " + ".join(f"{c}*u^{e}*[{w}]" for (e, w), c in terms) or "0"


def entry_dagger(entry: Dict[Tuple[int, OpWord], Fraction]) -> Dict[Tuple[int, OpWord], Fraction]:
    """X -> X^dagger(u^{-1}): reverse and dagger every word, flip every u-exponent."""
    return {(-e, w.dagger()): c for (e, w), c in entry.items()}


def entry_times(left: Dict, right: Dict) -> Dict:
    acc: Dict[Tuple[int, OpWord], Fraction] = {}
    for (e1, w1), c1 in left.items():
        for (e2, w2), c2 in right.items():
            key = (e1 + e2, w1 * w2)
            v = acc.get(key, 0) + c1 * c2
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return acc


def word_entry(word: OpWord, exp: int = 0, coeff=1) -> Dict:
    return {(exp, word): Fraction(coeff)}


def apply_symbolic(entry: Dict[Tuple[int, OpWord], Fraction], v: FockVector, u) -> FockVector:
    """Apply a symbolic entry at a numeric or formal spectral parameter."""
    acc = FockVector()
    for (e, w), c in entry.items():
        img = site_apply(w, v)
        if not img:
            continue
        if isinstance(u, str):
            factor = laurent({e: c}, u)
        else:
            factor = c * rat(u) ** e
        acc = acc + img.scale(factor)
    return acc


def l_matrix(chain: int, site: int) -> OperatorLaurent:
    empty = OpWord()
    return OperatorLaurent([
        [{(-1, empty): Fraction(1)}, {(0, OpWord([SiteOp(chain, site, "phid")])): Fraction(1)}],
        [{(0, OpWord([SiteOp(chain, site, "phi")])): Fraction(1)}, {(1, empty): Fraction(1)}],
    ])


def site_sequence(M1: int, M2: int | None, which: str) -> List[Tuple[int, int]]:
    """(chain, site) pairs in the order the L-matrices act (site 0 of chain 1 first)."""
    one = [(1, i) for i in range(M1 + 1)]
    two = [] if M2 is None else [(2, i) for i in range(M2 + 1)]
    if which in ("1", 1, "T1"):
        return one
    if which in ("2", 2, "T2"):
        if M2 is None:
            raise ValueError("chain 2 is absent")
        return two
    if which in ("full", "T"):
        return one + two
    raise ValueError(f"unknown monodromy {which!r}")


def monodromy(M1: int, M2: int | None = None, which: str = "full") -> OperatorLaurent:
    """Ordered product L_last ... L_first as a symbolic operator grid."""
    T = None
    for chain, site in site_sequence(M1, M2, which):
        L = l_matrix(chain, site)
        T = L if T is None else L @ T
    return T


def apply_entry(M1: int, M2: int | None, which: str, name: str, v: FockVector, u) -> FockVector:
    """T_ab(u) v by threading a two-component vector through the L-matrices."""
    a, b = ENTRY_INDEX[name]
    up, um = u_pair(u)
    comp = [FockVector(), FockVector()]
    comp[b] = v
    for chain, site in site_sequence(M1, M2, which):
        dag = OpWord([SiteOp(chain, site, "phid")])
        ann = OpWord([SiteOp(chain, site, "phi")])
        v0, v1 = comp
        comp = [v0.scale(um) + site_apply(dag, v1), site_apply(ann, v0) + v1.scale(up)]
    return comp[a]


# -- R-matrix and RTT ------------------------------------------------------------------------

def fg(u, v) -> Tuple[Fraction, Fraction]:
    u, v = rat(u), rat(v)
    if u == 0 or v == 0:
        raise ZeroDivisionError("spectral parameters must be nonzero")
    if u * u == v * v:
        raise ZeroDivisionError(f"singular pair: u^2 = v^2 for u={u}, v={v}")
    d = u * u - v * v
    return u * u / d, u * v / d


def r_matrix(u, v) -> List[List[Fraction]]:
    f, g = fg(u, v)
    z = Fraction(0)
    one = Fraction(1)
    return [[f, z, z, z], [z, g, one, z], [z, z, g, z], [z, z, z, f]]


def sample_pairs(count: int, seed: int = 0, height: int = 7) -> List[Tuple[Fraction, Fraction]]:
    """Nonsingular rational (u, v) pairs drawn from a seeded generator."""
    rng = random.Random(seed)
    out: List[Tuple[Fraction, Fraction]] = []
    while len(out) < count:
        u = Fraction(rng.randint(1, height), rng.randint(1, height)) * rng.choice((1, -1))
        v = Fraction(rng.randint(1, height), rng.randint(1, height)) * rng.choice((1, -1))
        if u * u != v * v and (u, v) not in out:
            out.append((u, v))
    return out


def rtt_check(M1: int, M2: int | None, samples: Sequence[Tuple], max_particles: int,
              which: str = "full") -> Report:
    """R(u,v)(T(u) x T(v)) = (T(v) x T(u)) R(u,v) on every state with <= max_particles.

    (X x Y)_{(a,c),(b,d)} = X_ab Y_cd with X acting after Y; row/column index 2a + c.
    """
    rep = Report("rtt", {"M1": M1, "M2": M2, "samples": [list(p) for p in samples],
                         "max_particles": max_particles, "monodromy": which})
    names = [["A", "B"], ["C", "D"]]
    for u, v in samples:
        R = r_matrix(u, v)
        for s in states_up_to(M1, M2, max_particles):
            base = FockVector.basis(s)
            right_v = [[apply_entry(M1, M2, which, names[f][d], base, v) for d in range(2)]
                       for f in range(2)]
            right_u = [[apply_entry(M1, M2, which, names[f][d], base, u) for d in range(2)]
                       for f in range(2)]
            # TT[(e,b),(f,d)] = T_eb(x) T_fd(y) s for the two orders of spectral parameters
            lhs_prod = {}
            rhs_prod = {}
            for e in range(2):
                for b in range(2):
                    for f in range(2):
                        for d in range(2):
                            lhs_prod[e, b, f, d] = apply_entry(M1, M2, which, names[e][b],
                                                               right_v[f][d], u)
                            rhs_prod[e, b, f, d] = apply_entry(M1, M2, which, names[e][b],
                                                               right_u[f][d], v)
            for a in range(2):
                for c in range(2):
                    for b in range(2):
                        for d in range(2):
                            lhs = FockVector()
                            rhs = FockVector()
                            for e in range(2):
                                for f in range(2):
                                    r = R[2 * a + c][2 * e + f]
                                    if r:
                                        lhs = lhs + lhs_prod[e, b, f, d].scale(r)
                                    r = R[2 * e + f][2 * b + d]
                                    if r:
                                        rhs = rhs + rhs_prod[a, e, c, f].scale(r)
                            if lhs != rhs:
                                rep.fail(u=u, v=v, state=s, entry=[a, c, b, d],
                                         residual=(lhs - rhs).to_json())
    return rep


# -- conservation, phase algebra, Hamiltonian ---------------------------------------------

_SHIFT = {"A": 0, "B": 1, "C": -1, "D": 0}


def conservation_check(M1: int, M2: int | None, name: str, which: str,
                       states: Sequence[OccState]) -> Report:
    """N-hat X = X (N-hat + shift) with shift +1 for B, -1 for C, 0 for A and D."""
    rep = Report("conservation", {"entry": name, "monodromy": which, "M1": M1, "M2": M2})
    chain = None if which == "full" else int(which)
    shift = _SHIFT[name]
    for s in states:
        v = FockVector.basis(s)
        img = apply_entry(M1, M2, which, name, v, FORMAL)
        lhs = number_operator(img, chain)
        rhs = img.scale(s.total(chain) + shift)
        if lhs != rhs:
            rep.fail(state=s, residual=(lhs - rhs).to_json())
        if chain is not None:
            # the other chain's particle number is untouched
            other = 3 - chain
            if M2 is not None and any(t.total(other) != s.total(other) for t, _ in img.items()):
                rep.fail(state=s, error=f"chain {other} particle number changed")
    return rep


def phase_algebra_check(M1: int, M2: int | None, max_particles: int) -> Report:
    """[N,phi] = -phi, [N,phid] = phid, [phi,phid] = pi, phi phid = 1, phid phi = 1 - pi."""
    rep = Report("phase_algebra", {"M1": M1, "M2": M2, "max_particles": max_particles})
    sites = site_sequence(M1, M2, "full")
    for s in states_up_to(M1, M2, max_particles):
        v = FockVector.basis(s)
        for chain, i in sites:
            w = lambda *kinds: OpWord([SiteOp(chain, i, k) for k in kinds])
            A = lambda *kinds: site_apply(w(*kinds), v)
            checks = {
                "[N,phi]+phi": A("N", "phi") - A("phi", "N") + A("phi"),
                "[N,phid]-phid": A("N", "phid") - A("phid", "N") - A("phid"),
                "[phi,phid]-pi": A("phi", "phid") - A("phid", "phi") - A("pi"),
                "phi phid - 1": A("phi", "phid") - v,
                "phid phi - 1 + pi": A("phid", "phi") - v + A("pi"),
            }
            for label, res in checks.items():
                if res:
                    rep.fail(state=s, site=[chain, i], relation=label, residual=res.to_json())
    return rep


def hamiltonian_apply(M: int, v: FockVector, chain: int = 1) -> FockVector:
    """H = -1/2 sum_i (phid_i phi_{i+1} + phi_i phid_{i+1} - 2 N_i), indices mod M + 1."""
    acc = FockVector()
    half = Fraction(-1, 2)
    for i in range(M + 1):
        j = (i + 1) % (M + 1)
        hop1 = OpWord([SiteOp(chain, i, "phid"), SiteOp(chain, j, "phi")])
        hop2 = OpWord([SiteOp(chain, i, "phi"), SiteOp(chain, j, "phid")])
        num = OpWord([SiteOp(chain, i, "N")])
        acc = acc + site_apply(hop1, v) + site_apply(hop2, v) - site_apply(num, v).scale(2)
    return acc.scale(half)


def hamiltonian_check(M: int, max_particles: int) -> Report:
    """[H, N-hat] = 0 on every single-chain state with <= max_particles."""
    rep = Report("hamiltonian", {"M": M, "max_particles": max_particles})
    for s in states_up_to(M, None, max_particles):
        v = FockVector.basis(s)
        res = (hamiltonian_apply(M, number_operator(v))
               - number_operator(hamiltonian_apply(M, v)))
        if res:
            rep.fail(state=s, residual=res.to_json())
    return rep
