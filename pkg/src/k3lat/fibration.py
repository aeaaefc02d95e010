"""Genus-one fibration invariants and Weierstrass models over P^1.

Points of P^1 are never located numerically. Multiplicities come from exact
squarefree decompositions, and the point at infinity is the zero of ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import BinForm, high_multiplicity_part, poly_gcd, squarefree_decomposition
from .lattice import Character, Embedding, Lattice, character_kernel


@dataclass(frozen=True)
class FibrationData:
    ns: Lattice
    fiber: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(x) for x in self.fiber)
        object.__setattr__(self, "fiber", f)
        if len(f) != self.ns.rank:
            raise ValueError("fiber class does not live in the NS lattice")
        if not any(f):
            raise ValueError("fiber class is zero")
        if self.ns.norm(f) != 0:
            raise ValueError(f"fiber class has self-intersection {self.ns.norm(f)}, not 0")


def fibration_index(d: FibrationData) -> int:
    """Smallest positive fibre degree ``C . f`` over curve classes ``C`` in NS."""
    g = d.ns.gram
    degrees = [sum(g[i][j] * d.fiber[j] for j in range(d.ns.rank)) for i in range(d.ns.rank)]
    n = gcd(*degrees)
    if n == 0:
        raise ValueError("fibre degree form vanishes on NS")
    return n


@dataclass(frozen=True)
class WeierstrassModel:
    g2: BinForm
    g3: BinForm

    def __post_init__(self):
        if self.g2.degree != 8 or self.g3.degree != 12:
            raise ValueError("g2 must be a degree-8 form and g3 a degree-12 form")

    @classmethod
    def from_coeffs(cls, g2: Sequence, g3: Sequence) -> WeierstrassModel:
        return cls(BinForm(8, tuple(Fraction(c) for c in g2)), BinForm(12, tuple(Fraction(c) for c in g3)))

    @classmethod
    def from_json(cls, obj) -> WeierstrassModel:
        return cls.from_coeffs(obj["g2"], obj["g3"])

    def to_json(self) -> dict:
        return {"g2": [str(c) for c in self.g2.coeffs], "g3": [str(c) for c in self.g3.coeffs]}


def discriminant_form(w: WeierstrassModel) -> BinForm:
    """``g2^3 - 27 g3^2`` as a section of O(24)."""
    return w.g2 ** 3 - (w.g3 ** 2) * 27


def _high_part(f: BinForm, threshold: int) -> BinForm | None:
    """Product of the points where ``f`` vanishes to order >= threshold; ``None`` means everywhere."""
    if f.is_zero():
        return None
    return high_multiplicity_part(f, threshold)


def is_valid(w: WeierstrassModel) -> bool:
    """Nonzero discriminant and ``min(3 v_p(g2), 2 v_p(g3)) < 12`` at every point of P^1."""
    if discriminant_form(w).is_zero():
        return False
    h2 = _high_part(w.g2, 4)
    h3 = _high_part(w.g3, 6)
    if h2 is None and h3 is None:
        return False
    if h2 is None:
        return h3.degree == 0
    if h3 is None:
        return h2.degree == 0
    return poly_gcd(h2, h3).degree == 0


def _nonzero_discriminant(w: WeierstrassModel) -> BinForm:
    delta = discriminant_form(w)
    if delta.is_zero():
        raise ValueError("discriminant vanishes identically")
    return delta


def nodal_fiber_count(w: WeierstrassModel) -> int:
    """Number of simple zeros of the discriminant on P^1."""
    delta = _nonzero_discriminant(w)
    return sum(f.degree for f, m in squarefree_decomposition(delta) if m == 1)


def j_degree(w: WeierstrassModel) -> int:
    """Degree of ``[g2^3 : delta] : P^1 -> P^1``."""
    delta = _nonzero_discriminant(w)
    return 24 - poly_gcd(w.g2 ** 3, delta).degree


def jacobian_kernel(t_j: Lattice, alpha: Character) -> tuple[Embedding, int]:
    """``T_X`` inside ``T_J`` as the kernel of ``alpha``, with its index."""
    if alpha.domain != t_j:
        raise ValueError("character is not defined on this lattice")
    return character_kernel(alpha), alpha.order
