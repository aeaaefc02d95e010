"""Mukai vectors on a K3 surface, fineness of moduli, and two small
combinatorial tools: split bundles on P^1 and the middle Schubert pairing
on Gr(2, 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .lattice import Lattice


@dataclass(frozen=True)
class NSContext:
    """The algebraic classes ``N_Y`` with their intersection form."""

    ns: Lattice

    def __post_init__(self):
        if not self.ns.is_even:
            raise ValueError("a K3 Neron-Severi lattice is even")


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))

    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.c1, self.s)

    def to_json(self) -> dict:
        return {"r": self.r, "c1": list(self.c1), "s": self.s}


def _check(v: MukaiVector, ctx: NSContext) -> None:
    if len(v.c1) != ctx.ns.rank:
        raise ValueError(f"c1 has {len(v.c1)} entries, NS lattice has rank {ctx.ns.rank}")


def mukai_pairing(v: MukaiVector, w: MukaiVector, ctx: NSContext) -> int:
    _check(v, ctx)
    _check(w, ctx)
    return ctx.ns.pair(v.c1, w.c1) - v.r * w.s - v.s * w.r


def from_chern(r: int, c1: Sequence[int], c2: int, ctx: NSContext) -> MukaiVector:
    """``ch * sqrt(td)`` with ``sqrt(td_K3) = (1, 0, 1)``: ``s = r + (c1^2 - 2 c2) / 2``."""
    c1 = tuple(c1)
    if len(c1) != ctx.ns.rank:
        raise ValueError("c1 does not live in the NS lattice")
    c1sq = ctx.ns.norm(c1)
    if c1sq % 2:
        raise ValueError(f"c1^2 = {c1sq} is odd; not a K3 intersection form")
    return MukaiVector(r, c1, r + (c1sq - 2 * c2) // 2)


def is_isotropic(v: MukaiVector, ctx: NSContext) -> bool:
    return mukai_pairing(v, v, ctx) == 0


def is_primitive(v: MukaiVector) -> bool:
    return gcd(*v.coords()) == 1


def fineness_index(v: MukaiVector, ctx: NSContext) -> int:
    """``gcd <omega, v>`` over all integral algebraic ``omega``.

    Letting ``omega`` run over ``(1,0,0)``, ``(0,b_i,0)``, ``(0,0,1)`` shows the
    gcd is ``gcd(r, s, <c1, b_i>)``.
    """
    _check(v, ctx)
    if not any(v.coords()):
        raise ValueError("fineness index of the zero vector is undefined")
    g = ctx.ns.gram
    pairings = [sum(g[i][j] * v.c1[j] for j in range(ctx.ns.rank)) for i in range(ctx.ns.rank)]
    return gcd(v.r, v.s, *pairings)


def obstruction_residue(u: MukaiVector, v: MukaiVector, ctx: NSContext, modulus: int | None = None) -> int:
    """``<u, v>`` modulo ``modulus`` (default: the fineness index of ``v``)."""
    n = fineness_index(v, ctx) if modulus is None else modulus
    return mukai_pairing(u, v, ctx) % n


def h0_split(a: Sequence[int]) -> int:
    """``h^0`` of ``O(a_1) + ... + O(a_k)`` on P^1."""
    return sum(max(x + 1, 0) for x in a)


def p1_splitting_types(rank: int, degree: int, h0: int) -> list[tuple[int, ...]]:
    """Non-increasing ``(a_1, ..., a_rank)`` with sum ``degree`` and ``h0_split == h0``."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if h0 < 0:
        return []
    top = h0 - 1  # any a_i >= 0 contributes a_i + 1 <= h0
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining_rank: int, remaining_deg: int, cap: int) -> None:
        if remaining_rank == 0:
            if remaining_deg == 0 and h0_split(prefix) == h0:
                out.append(tuple(prefix))
            return
        # the largest remaining entry is at least the average
        lo = -(-remaining_deg // remaining_rank)
        for a in range(min(cap, top), lo - 1, -1):
            rec(prefix + [a], remaining_rank - 1, remaining_deg - a, a)

    rec([], rank, degree, top)
    return out


_BOX = 2


def _partition(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(int(x) for x in p if x)
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"{p} is not a partition")
    if len(p) > _BOX or any(x > _BOX or x < 0 for x in p):
        raise ValueError(f"{p} does not fit in the 2x2 box")
    return p


def schubert_pairing(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Intersection number of two degree-2 Schubert classes on Gr(2, 4).

    ``sigma(p)`` is the partition ``(2)``, ``sigma(h)`` is ``(1, 1)``; the pairing
    is 1 exactly when ``mu`` is the complement of ``lam`` in the box.
    """
    lam, mu = _partition(lam), _partition(mu)
    if sum(lam) != 2 or sum(mu) != 2:
        raise ValueError("only middle-degree classes (|partition| = 2) are supported")
    padded = lam + (0,) * (_BOX - len(lam))
    complement = tuple(x for x in (_BOX - padded[1], _BOX - padded[0]) if x)
    return int(mu == complement)


SIGMA_P = (2,)
SIGMA_H = (1, 1)
