"""Integral lattices, sublattice embeddings and finite-order characters.

Sublattices are always coordinate rows in a fixed ambient basis, and two
sublattices are equal when their row HNFs agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Sequence

from . import exact
from .exact import IntMat

# Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = ((1, 3), (3, 4), (4, 2), (4, 5), (5, 6), (6, 7), (7, 8))


def _e8_neg() -> IntMat:
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return tuple(map(tuple, g))


E8NEG_GRAM = _e8_neg()
U_GRAM = ((0, 1), (1, 0))


@dataclass(frozen=True)
class Lattice:
    """Free abelian group with a symmetric integer Gram matrix."""

    gram: IntMat

    def __post_init__(self):
        g = exact.int_matrix(self.gram)
        if not exact.is_symmetric(g):
            raise ValueError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, u: Sequence, v: Sequence):
        return exact.bilinear(self.gram, u, v)

    def norm(self, v: Sequence):
        return self.pair(v, v)

    def signature(self) -> tuple[int, int]:
        return exact.signature(self.gram)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}


def standard(name: str) -> Lattice:
    """Named lattices: ``E8neg``, ``U``, ``K3`` and ``rank1(d)`` / ``rank1:d``."""
    if name == "E8neg":
        return Lattice(E8NEG_GRAM)
    if name == "U":
        return Lattice(U_GRAM)
    if name == "K3":
        e8, u = Lattice(E8NEG_GRAM), Lattice(U_GRAM)
        return direct_sum(e8, e8, u, u, u)
    m = re.fullmatch(r"rank1(?::|\()\s*(-?\d+)\s*\)?", name)
    if m:
        d = int(m.group(1))
        if d == 0:
            raise ValueError("rank1 needs a nonzero integer")
        return Lattice(((d,),))
    raise ValueError(f"unknown lattice name {name!r}")


def rank1(d: int) -> Lattice:
    return standard(f"rank1:{d}")


def direct_sum(*parts: Lattice) -> Lattice:
    return Lattice(exact.block_diag(*(p.gram for p in parts)))


def discriminant(lat: Lattice) -> int:
    return exact.det(lat.gram)


def discriminant_group(lat: Lattice) -> list[int]:
    """Nontrivial invariant factors of ``L^dual / L``."""
    if lat.rank == 0:
        return []
    factors = exact.invariant_factors(lat.gram)
    if 0 in factors:
        raise ValueError("discriminant group of a degenerate lattice is infinite")
    return [d for d in factors if d != 1]


@dataclass(frozen=True)
class Embedding:
    """Sublattice of ``ambient`` spanned by the rows of ``basis``."""

    ambient: Lattice
    basis: IntMat

    def __post_init__(self):
        b = exact.int_matrix(self.basis)
        if any(len(r) != self.ambient.rank for r in b):
            raise ValueError("basis rows must have the ambient rank as length")
        if exact.rank(b) != len(b):
            raise ValueError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> IntMat:
        g = self.ambient.gram
        return exact.matmul(exact.matmul(self.basis, g), exact.transpose(self.basis, self.ambient.rank), len(self.basis))

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.gram)

    def canonical(self) -> IntMat:
        return exact.row_basis(self.basis) if self.basis else ()

    def same_as(self, other: Embedding) -> bool:
        return self.ambient == other.ambient and self.canonical() == other.canonical()

    def push(self, inner: Embedding) -> Embedding:
        """Re-express a sublattice of ``self.lattice`` in ambient coordinates."""
        if inner.ambient.rank != self.rank or inner.ambient.gram != self.gram:
            raise ValueError("inner embedding does not live in this sublattice")
        return Embedding(self.ambient, exact.matmul(inner.basis, self.basis, self.ambient.rank))

    def contains(self, v: Sequence) -> bool:
        """Integral membership of an ambient vector."""
        coords = coordinates(self, v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(), "basis": [list(r) for r in self.basis]}


def full(lat: Lattice) -> Embedding:
    return Embedding(lat, exact.identity(lat.rank))


def span(lat: Lattice, vectors: Sequence[Sequence[int]]) -> Embedding:
    """Embedding of the lattice generated by arbitrary (possibly dependent) vectors."""
    rows = exact.row_basis(vectors) if vectors else ()
    return Embedding(lat, rows)


def coordinates(e: Embedding, v: Sequence):
    """Rational coordinates of ``v`` in the basis of ``e``, or ``None`` outside its span."""
    if e.rank == 0:
        return () if not any(v) else None
    x = exact.solve_left(e.basis, (tuple(v),))
    return None if x is None else x[0]


def orthogonal_complement(e: Embedding) -> Embedding:
    n = e.ambient.rank
    m = exact.matmul(e.basis, e.ambient.gram) if e.basis else ()
    return Embedding(e.ambient, exact.right_kernel(m, n))


def saturation(e: Embedding) -> tuple[Embedding, int]:
    """Primitive closure of ``e`` and the index of ``e`` inside it."""
    n = e.ambient.rank
    if e.rank == 0:
        return e, 1
    perp = exact.right_kernel(e.basis, n)
    sat = exact.right_kernel(perp, n) if perp else exact.identity(n)
    sat = exact.row_basis(sat)
    coords = exact.solve_left(sat, e.basis)
    index = abs(exact.det(coords))
    assert index.denominator == 1
    return Embedding(e.ambient, sat), int(index)


def sublattice_index(e: Embedding) -> int:
    if e.rank != e.ambient.rank:
        raise ValueError(f"index needs a full-rank sublattice (rank {e.rank} in {e.ambient.rank})")
    return abs(exact.det(e.basis))


def relative_index(sub: Embedding, sup: Embedding) -> int:
    """``[sup : sub]`` for two sublattices of the same ambient of equal rank."""
    if sub.ambient != sup.ambient:
        raise ValueError("ambient mismatch")
    if sub.rank != sup.rank:
        raise ValueError("relative index needs equal ranks")
    coords = exact.solve_left(sup.basis, sub.basis)
    if coords is None or any(c.denominator != 1 for r in coords for c in r):
        raise ValueError("first lattice is not contained in the second")
    return abs(int(exact.det(coords)))


def index_from_discriminants(disc_sub: int, disc_super: int) -> int:
    """Index of a full-rank inclusion from ``|disc sub| = index^2 |disc super|``."""
    a, b = abs(disc_sub), abs(disc_super)
    if b == 0 or a % b:
        raise ValueError(f"|{disc_sub}| is not a multiple of |{disc_super}|")
    q = a // b
    r = isqrt(q)
    if r * r != q:
        raise ValueError(f"discriminant quotient {q} is not a perfect square")
    return r


def intersect(e1: Embedding, e2: Embedding) -> Embedding:
    if e1.ambient != e2.ambient:
        raise ValueError("ambient mismatch")
    n = e1.ambient.rank
    if e1.rank == 0 or e2.rank == 0:
        return Embedding(e1.ambient, ())
    stacked = e1.basis + tuple(tuple(-x for x in r) for r in e2.basis)
    ker = exact.left_kernel(stacked)
    rows = [tuple(sum(x[i] * e1.basis[i][j] for i in range(e1.rank)) for j in range(n)) for x in ker]
    return span(e1.ambient, rows)


@dataclass(frozen=True)
class Character:
    """Homomorphism ``domain -> Z/modulus`` given by its values on the basis.

    This is how elements of ``T^dual (x) Q/Z`` of finite order are carried.
    """

    domain: Lattice
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        vals = tuple(int(v) % self.modulus for v in self.values)
        if len(vals) != self.domain.rank:
            raise ValueError("one value per basis vector is required")
        object.__setattr__(self, "values", vals)

    @property
    def order(self) -> int:
        return self.modulus // gcd(self.modulus, *self.values)

    def __call__(self, v: Sequence[int]) -> int:
        return exact.dot(self.values, v) % self.modulus

    def reduced(self) -> Character:
        """Same character written with its exact order as modulus."""
        g = self.modulus // self.order
        return Character(self.domain, self.order, tuple(v // g for v in self.values))


def character_kernel(c: Character) -> Embedding:
    n = c.domain.rank
    if n == 0:
        return Embedding(c.domain, ())
    # solutions (v, k) of c.v + modulus*k = 0, projected to v
    col = tuple((v,) for v in c.values) + ((c.modulus,),)
    ker = exact.left_kernel(col)
    return span(c.domain, [r[:n] for r in ker])


def kernel_index(c: Character) -> int:
    return c.order


def restrict_character(c: Character, e: Embedding) -> Character:
    if e.ambient != c.domain:
        raise ValueError("embedding is not inside the character's domain")
    vals = tuple(c(row) for row in e.basis)
    return Character(e.lattice, c.modulus, vals).reduced()


def brauer_element_count(t: Lattice, n: int) -> int:
    """Number of elements of order dividing ``n`` in ``T^dual (x) Q/Z``."""
    if n < 1:
        raise ValueError("n must be positive")
    return n ** t.rank


# -- JSON ------------------------------------------------------------------

def lattice_from_json(obj) -> Lattice:
    if isinstance(obj, str):
        return standard(obj)
    if isinstance(obj, list):
        return Lattice(obj)
    if not isinstance(obj, dict) or "gram" not in obj:
        raise ValueError("lattice JSON needs a 'gram' field or a standard name")
    lat = Lattice(obj["gram"])
    if "rank" in obj and obj["rank"] != lat.rank:
        raise ValueError("declared rank does not match the Gram matrix")
    return lat


def embedding_from_json(obj) -> Embedding:
    return Embedding(lattice_from_json(obj["ambient"]), obj["basis"])
