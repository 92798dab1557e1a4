"""Occupation-number states, Fock vectors and words in the phase operators."""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from ..scalars import TruncSeries, format_rational, laurent, parse_rational

KINDS = ("phi", "phid", "N", "pi", "id")


class OccState(NamedTuple):
    """Occupations n_0..n_M1 of chain 1 and m_0..m_M2 of chain 2 (chain 2 may be empty)."""
    chain1: Tuple[int, ...]
    chain2: Tuple[int, ...] = ()

    def chain(self, c: int) -> Tuple[int, ...]:
        return self.chain1 if c == 1 else self.chain2

    def replace(self, c: int, site: int, value: int) -> "OccState":
        occ = list(self.chain(c))
        occ[site] = value
        return OccState(tuple(occ), self.chain2) if c == 1 else OccState(self.chain1, tuple(occ))

    def total(self, c: int | None = None) -> int:
        if c is None:
            return sum(self.chain1) + sum(self.chain2)
        return sum(self.chain(c))

    def serialize(self) -> str:
        return ",".join(map(str, self.chain1)) + "|" + ",".join(map(str, self.chain2))


def make_state(chain1: Sequence[int], chain2: Sequence[int] = ()) -> OccState:
    c1, c2 = tuple(int(v) for v in chain1), tuple(int(v) for v in chain2)
    if any(v < 0 for v in c1 + c2):
        raise ValueError("occupation numbers must be non-negative")
    if not c1:
        raise ValueError("chain 1 needs at least one site")
    return OccState(c1, c2)


def parse_state(text: str) -> OccState:
    left, _, right = text.partition("|")
    c1 = [int(t) for t in left.split(",") if t.strip()]
    c2 = [int(t) for t in right.split(",") if t.strip()]
    return make_state(c1, c2)


def vacuum_state(M1: int, M2: int | None = None, headroom: int = 0) -> OccState:
    """All-zero state, optionally with ``headroom`` particles parked at site 0 of each chain."""
    c1 = (headroom,) + (0,) * M1
    c2 = () if M2 is None else (headroom,) + (0,) * M2
    return OccState(c1, c2)


def lift_headroom(s: OccState, headroom: int) -> OccState:
    """Raise n_0 (and m_0) to at least ``headroom``; the positive-energy content is unchanged."""
    c1 = (max(s.chain1[0], headroom),) + s.chain1[1:]
    c2 = ((max(s.chain2[0], headroom),) + s.chain2[1:]) if s.chain2 else ()
    return OccState(c1, c2)


def states_up_to(M1: int, M2: int | None, max_particles: int) -> List[OccState]:
    """Every state of the given shape with at most ``max_particles`` particles in total."""
    sites = M1 + 1 + (0 if M2 is None else M2 + 1)
    out = []

    def rec(prefix: List[int], left: int):
        if len(prefix) == sites:
            c1 = tuple(prefix[:M1 + 1])
            c2 = tuple(prefix[M1 + 1:])
            out.append(OccState(c1, c2))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v)

    rec([], max_particles)
    out.sort(key=lambda s: (s.total(), s))
    return out


# -- vectors -------------------------------------------------------------------------------

def _is_zero(c) -> bool:
    return not c


class FockVector:
    """Finite linear combination of occupation states; amplitudes are Fractions or u-series."""

    __slots__ = ("amps",)

    def __init__(self, amps: Dict[OccState, object] | None = None):
        clean = {}
        for s, c in (amps or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if not _is_zero(c):
                clean[s] = c
        self.amps = clean

    @classmethod
    def basis(cls, s: OccState, coeff=1) -> "FockVector":
        return cls({s: coeff})

    @classmethod
    def vacuum(cls, M1: int, M2: int | None = None, headroom: int = 0) -> "FockVector":
        return cls.basis(vacuum_state(M1, M2, headroom))

    def __bool__(self) -> bool:
        return bool(self.amps)

    def __len__(self) -> int:
        return len(self.amps)

    def items(self):
        return self.amps.items()

    def __getitem__(self, s: OccState):
        return self.amps.get(s, Fraction(0))

    def _combine(self, other: "FockVector", sign: int) -> "FockVector":
        out = dict(self.amps)
        for s, c in other.amps.items():
            prev = out.get(s)
            v = (c if sign > 0 else -c) if prev is None else (prev + c if sign > 0 else prev - c)
            if _is_zero(v):
                out.pop(s, None)
            else:
                out[s] = v
        return FockVector._raw(out)

    @classmethod
    def _raw(cls, amps) -> "FockVector":
        obj = cls.__new__(cls)
        obj.amps = amps
        return obj

    def __add__(self, other: "FockVector") -> "FockVector":
        return self._combine(other, 1)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self._combine(other, -1)

    def __neg__(self) -> "FockVector":
        return FockVector._raw({s: -c for s, c in self.amps.items()})

    def scale(self, c) -> "FockVector":
        if _is_zero(c):
            return FockVector()
        out = {}
        for s, a in self.amps.items():
            v = a * c
            if not _is_zero(v):
                out[s] = v
        return FockVector._raw(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return not (self - other)

    def to_json(self) -> Dict[str, object]:
        out = {}
        for s in sorted(self.amps, key=lambda s: (s.total(), s)):
            c = self.amps[s]
            out[s.serialize()] = c.to_json() if isinstance(c, TruncSeries) else format_rational(c)
        return out

    @classmethod
    def from_json(cls, data: Dict[str, object]) -> "FockVector":
        amps = {}
        for k, v in data.items():
            amps[parse_state(k)] = (laurent({int(e): parse_rational(c) for e, c in v.items()})
                                    if isinstance(v, dict) else parse_rational(v))
        return cls(amps)

    def __repr__(self) -> str:
        return f"FockVector({self.to_json()})"


# -- operator words ---------------------------------------------------------------------------

class SiteOp(NamedTuple):
    chain: int
    site: int
    kind: str

    def dagger(self) -> "SiteOp":
        swap = {"phi": "phid", "phid": "phi"}
        return SiteOp(self.chain, self.site, swap.get(self.kind, self.kind))

    def __str__(self) -> str:
        return f"{self.kind}{self.chain}_{self.site}"


class OpWord(tuple):
    """Product of site operators; the rightmost factor acts first."""

    def __new__(cls, ops: Iterable = ()):
        ops = tuple(op if isinstance(op, SiteOp) else SiteOp(*op) for op in ops)
        for op in ops:
            if op.kind not in KINDS:
                raise ValueError(f"unknown site operator {op.kind!r}")
        return super().__new__(cls, ops)

    def __mul__(self, other: "OpWord") -> "OpWord":
        return OpWord(tuple(self) + tuple(other)).reduced()

    def dagger(self) -> "OpWord":
        return OpWord(op.dagger() for op in reversed(self))

    def reduced(self) -> "OpWord":
        """Drop identities and cancel phi*phid on the same site (an exact identity)."""
        out: List[SiteOp] = []
        for op in self:
            if op.kind == "id":
                continue
            if (op.kind == "phid" and out and out[-1].kind == "phi"
                    and out[-1][:2] == op[:2]):
                out.pop()
                continue
            out.append(op)
        return OpWord(out)

    def __str__(self) -> str:
        return " ".join(str(op) for op in self) or "id"


def op(kind: str, site: int, chain: int = 1) -> OpWord:
    return OpWord([SiteOp(chain, site, kind)])


def _apply_op(o: SiteOp, s: OccState):
    occ = s.chain(o.chain)
    if not 0 <= o.site < len(occ):
        raise IndexError(f"site {o.site} outside chain {o.chain} of length {len(occ)}")
    n = occ[o.site]
    k = o.kind
    if k == "id":
        return 1, s
    if k == "phid":
        return 1, s.replace(o.chain, o.site, n + 1)
    if k == "phi":
        return (1, s.replace(o.chain, o.site, n - 1)) if n else None
    if k == "N":
        return (n, s) if n else None
    if k == "pi":
        return (1, s) if n == 0 else None
    raise ValueError(k)


def site_apply(word: OpWord, v: FockVector) -> FockVector:
    """Apply a word to a vector, rightmost factor first."""
    out: Dict[OccState, object] = {}
    for s, c in v.items():
        coeff = 1
        cur = s
        for o in reversed(word):
            r = _apply_op(o, cur)
            if r is None:
                cur = None
                break
            f, cur = r
            coeff *= f
        if cur is None:
            continue
        val = c * coeff if coeff != 1 else c
        prev = out.get(cur)
        val = val if prev is None else prev + val
        if _is_zero(val):
            out.pop(cur, None)
        else:
            out[cur] = val
    return FockVector._raw(out)


def number_operator(v: FockVector, chain: int | None = None) -> FockVector:
    """N-hat (total, or of one chain) applied to v."""
    out = {}
    for s, c in v.items():
        n = s.total(chain)
        if n:
            out[s] = c * n
    return FockVector._raw(out)
