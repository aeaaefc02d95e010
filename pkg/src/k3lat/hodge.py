"""Rational isometries, rank-one extensions and period-point checks.

A ``RationalIsometry`` stores a matrix acting on column coordinates: the
image of a source vector ``x`` is ``matrix @ x``. The defining identity
``matrix^T G_target matrix == G_source`` is verified on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import exact
from .exact import RatMat
from .lattice import Embedding, Lattice, coordinates, direct_sum, rank1


def _pullback_gram(m: RatMat, target: Lattice, n_source: int) -> list[list[Fraction]]:
    """``m^T G m``, skipping zero entries (K3 Gram matrices are mostly zeros)."""
    G = target.gram
    nt = target.rank
    cols = [[(b, m[b][j]) for b in range(nt) if m[b][j]] for j in range(n_source)]
    g_rows = [[(b, G[a][b]) for b in range(nt) if G[a][b]] for a in range(nt)]
    Gm = []
    for j in range(n_source):
        col = dict(cols[j])
        Gm.append([sum((g * col[b] for b, g in g_rows[a] if b in col), Fraction(0)) for a in range(nt)])
    return [
        [sum((x * Gm[j][a] for a, x in cols[i]), Fraction(0)) for j in range(n_source)]
        for i in range(n_source)
    ]


def _check_shape(m, source: Lattice, target: Lattice) -> None:
    if len(m) != target.rank or any(len(r) != source.rank for r in m):
        raise ValueError(
            f"matrix shape does not map rank {source.rank} into rank {target.rank}"
        )


def is_isometry(m: Sequence[Sequence], source: Lattice, target: Lattice) -> bool:
    m = exact.rat_matrix(m)
    _check_shape(m, source, target)
    pulled = _pullback_gram(m, target, source.rank)
    return all(
        pulled[i][j] == source.gram[i][j] for i in range(source.rank) for j in range(source.rank)
    )


@dataclass(frozen=True)
class RationalIsometry:
    source: Lattice
    target: Lattice
    matrix: RatMat

    def __post_init__(self):
        m = exact.rat_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not is_isometry(m, self.source, self.target):
            raise ValueError("matrix does not preserve the bilinear forms")

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.source.rank:
            raise ValueError("vector length does not match the source rank")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.matrix)

    def then(self, other: RationalIsometry) -> RationalIsometry:
        """Composite ``other o self``."""
        if other.source != self.target:
            raise ValueError("cannot compose: target and source differ")
        m = exact.matmul(other.matrix, self.matrix, self.source.rank) if other.matrix else ()
        return RationalIsometry(self.source, other.target, m)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }


def identity_isometry(lat: Lattice) -> RationalIsometry:
    return RationalIsometry(lat, lat, exact.identity(lat.rank))


def isometry_from_json(obj) -> RationalIsometry:
    from .lattice import lattice_from_json

    return RationalIsometry(
        lattice_from_json(obj["source"]),
        lattice_from_json(obj["target"]),
        tuple(tuple(Fraction(x) for x in row) for row in obj["matrix"]),
    )


def rank1_extension_coefficient(e_norm: int, r_norm: int) -> Fraction:
    """``1/lambda`` where ``lambda^2 = e_norm * r_norm`` and ``lambda > 0``.

    Raises ``ValueError`` when the product is not a positive perfect square,
    in which case no rational isometry can carry ``e`` to a multiple of ``r``.
    """
    if e_norm == 0 or r_norm == 0:
        raise ValueError("norms must be nonzero")
    prod = e_norm * r_norm
    lam = isqrt(prod) if prod > 0 else 0
    if prod <= 0 or lam * lam != prod:
        raise ValueError(f"{e_norm} * {r_norm} = {prod} is not a positive perfect square")
    return Fraction(1, lam)


def extension_multiple(e_norm: int, r_norm: int) -> Fraction:
    """The ``mu > 0`` with ``e -> mu r`` isometric, i.e. ``mu = c * |e_norm|``.

    As a summand ``c' e (x) r`` acting by ``v -> c' <v, e> r`` the signed
    coefficient is ``c' = sign(e_norm) * c``; for ``(-2, -72)`` that is the
    ``-1/12`` term.
    """
    return rank1_extension_coefficient(e_norm, r_norm) * abs(e_norm)


def extend_isometry(partial: RationalIsometry, source: Lattice, target: Lattice) -> RationalIsometry:
    """Extend ``partial`` across one extra basis vector on each side.

    ``source`` is ``V' + Z e`` written in the basis of ``partial.source``
    followed by ``e``; likewise ``target`` is ``W' + Z r``. The new vector
    must be orthogonal to the old block on both sides.
    """
    k, l = partial.source.rank, partial.target.rank
    for lat, old, n, what in ((source, partial.source, k, "source"), (target, partial.target, l, "target")):
        if lat.rank != n + 1:
            raise ValueError(f"{what} must have exactly one more basis vector")
        if tuple(r[:n] for r in lat.gram[:n]) != old.gram:
            raise ValueError(f"{what} does not restrict to the partial isometry's lattice")
        if any(lat.gram[n][i] for i in range(n)):
            raise ValueError(f"new {what} vector is not orthogonal to the old block")
    mu = extension_multiple(source.gram[k][k], target.gram[l][l])
    rows = [tuple(row) + (Fraction(0),) for row in partial.matrix]
    rows.append((Fraction(0),) * k + (mu,))
    return RationalIsometry(source, target, tuple(rows))


def extend_by_norms(partial: RationalIsometry, e_norm: int, r_norm: int) -> RationalIsometry:
    return extend_isometry(
        partial, direct_sum(partial.source, rank1(e_norm)), direct_sum(partial.target, rank1(r_norm))
    )


def block_sum(a: RationalIsometry, b: RationalIsometry) -> RationalIsometry:
    ka, kb = a.source.rank, b.source.rank
    rows = [tuple(r) + (Fraction(0),) * kb for r in a.matrix]
    rows += [(Fraction(0),) * ka + tuple(r) for r in b.matrix]
    return RationalIsometry(direct_sum(a.source, b.source), direct_sum(a.target, b.target), tuple(rows))


@dataclass(frozen=True)
class PeriodPoint:
    """``omega = re + i * im`` with rational real and imaginary parts."""

    lattice: Lattice
    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "re", tuple(Fraction(x) for x in self.re))
        object.__setattr__(self, "im", tuple(Fraction(x) for x in self.im))


def is_period_point(p: PeriodPoint) -> bool:
    n = p.lattice.rank
    if len(p.re) != n or len(p.im) != n:
        raise ValueError("period vector length does not match the lattice")
    xx = p.lattice.pair(p.re, p.re)
    yy = p.lattice.pair(p.im, p.im)
    xy = p.lattice.pair(p.re, p.im)
    return xx == yy and xy == 0 and xx + yy > 0


def transport_period(iso: RationalIsometry, p: PeriodPoint) -> PeriodPoint:
    if iso.source != p.lattice:
        raise ValueError("period lives on a different lattice than the isometry source")
    if not is_period_point(p):
        raise ValueError("input is not a period point")
    return PeriodPoint(iso.target, iso(p.re), iso(p.im))


def caldararu_kernel_check(ker_a: Embedding, ker_b: Embedding, iso: RationalIsometry) -> bool:
    """Does ``iso`` carry the sublattice ``ker_a`` integrally into ``ker_b``, isometrically?

    ``iso`` acts between the ambient lattices. Raises ``ValueError`` if some
    image leaves the rational span of ``ker_b``.
    """
    if iso.source != ker_a.ambient or iso.target != ker_b.ambient:
        raise ValueError("isometry does not act between the kernels' ambient lattices")
    images = []
    for row in ker_a.basis:
        w = iso(row)
        c = coordinates(ker_b, w)
        if c is None:
            raise ValueError("image leaves the rational span of the target kernel")
        if any(x.denominator != 1 for x in c):
            return False
        images.append(w)
    gram = tuple(tuple(iso.target.pair(u, v) for v in images) for u in images)
    return gram == ker_a.gram
