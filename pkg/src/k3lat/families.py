"""Catalog of K3 families with their Picard data, and the perfect-square
search for families of correspondences between projective series.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional

from . import exact
from .lattice import (
    Embedding,
    Lattice,
    discriminant,
    index_from_discriminants,
    orthogonal_complement,
    relative_index,
    saturation,
    span,
    standard,
)

# Picard lattices. Bases: M (D); M_alpha (D, e); M_beta (D, F); Y (H);
# J0 (H, L) for a quartic containing a line; J3 (f1, f2) pulled back rulings.
M_GRAM = ((2,),)
MALPHA_GRAM = ((2, 0), (0, -2))
MBETA_GRAM = ((2, 3), (3, 0))
Y_GRAM = ((8,),)
J0_GRAM = ((4, 1), (1, -2))
J3_GRAM = ((0, 2), (2, 0))


@dataclass(frozen=True)
class FamilySpec:
    name: str
    ns: Lattice
    polarization: tuple[int, ...]
    degree: int
    ambient_dim: int
    fiber: Optional[tuple[int, ...]] = None
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        if self.ns.norm(self.polarization) != self.degree:
            raise ValueError(f"{self.name}: polarization has norm {self.ns.norm(self.polarization)}, not {self.degree}")
        if self.degree != 2 * self.ambient_dim - 2:
            raise ValueError(f"{self.name}: degree {self.degree} does not match P^{self.ambient_dim}")


def builtin(name: str) -> FamilySpec:
    if name == "M":
        return FamilySpec("M", Lattice(M_GRAM), (1,), 2, 2, notes="double cover of P^2 branched along a sextic")
    if name == "M_alpha":
        return FamilySpec("M_alpha", Lattice(MALPHA_GRAM), (1, 0), 2, 2, fiber=(1, -1),
                          notes="resolved double cover branched along a nodal sextic")
    if name == "M_beta":
        return FamilySpec("M_beta", Lattice(MBETA_GRAM), (1, 1), 8, 5, fiber=(0, 1),
                          notes="(2,3) divisor in P^1 x P^2; H = D + F")
    if name == "Y":
        return FamilySpec("Y", Lattice(Y_GRAM), (1,), 8, 5, notes="complete intersection of three quadrics in P^5")
    if name == "J0":
        # fiber: residual plane cubic H - L
        return FamilySpec("J0", Lattice(J0_GRAM), (1, 0), 4, 3, fiber=(1, -1),
                          notes="quartic in P^3 containing a line L")
    if name == "J3":
        # f1 + 4 f2 has degree 16: the m = 1 member of the P^(4m+5) series
        return FamilySpec("J3", Lattice(J3_GRAM), (1, 4), 16, 9, fiber=(1, 0),
                          notes="double cover of P^1 x P^1 branched along a (4,4) curve")
    raise ValueError(f"unknown family {name!r}")


BUILTIN_NAMES = ("M", "M_alpha", "M_beta", "Y", "J0", "J3")

SERIES = ("X3k", "X3k1", "X3k2", "Y4m5")


def series_degree(series: str, param: int) -> int:
    """Self-intersection of the polarization for a member of a projective series."""
    if param < 1:
        raise ValueError("series parameter must be >= 1")
    if series == "X3k":
        return 6 * param - 2
    if series == "X3k1":
        return 6 * param
    if series == "X3k2":
        return 6 * param + 2
    if series == "Y4m5":
        return 8 * param + 8
    raise ValueError(f"unknown series {series!r}")


def series_ambient_dim(series: str, param: int) -> int:
    offsets = {"X3k": (3, 0), "X3k1": (3, 1), "X3k2": (3, 2), "Y4m5": (4, 5)}
    if series not in offsets:
        raise ValueError(f"unknown series {series!r}")
    a, b = offsets[series]
    return a * param + b


def squarefree_part(n: int) -> int:
    if n < 1:
        raise ValueError("squarefree part needs a positive integer")
    rho = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            rho *= p
        p += 1
    return rho * n


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def correspondence_lambda(d1: int, d2: int) -> Optional[int]:
    if d1 <= 0 or d2 <= 0:
        raise ValueError("degrees must be positive")
    prod = d1 * d2
    lam = isqrt(prod)
    return lam if lam * lam == prod else None


def solve_partner(k: int, d: int) -> int:
    """An ``l`` making ``(3k - 1)(3l)`` a perfect square: ``l = 3 rho d^2``."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be >= 1")
    l = 3 * squarefree_part(3 * k - 1) * d * d
    assert is_square((3 * k - 1) * 3 * l)
    return l


def obstruction_residues(k: int, m: int) -> dict:
    """Both readings of the mod-3 argument for ``X_3k x X_(3m+2)``.

    ``corrected`` uses ``(3k-1)(3m+1)``, which is ``(6k-2)(6m+2) / 4``;
    ``as_printed`` uses ``(3k-1)(3m+2)``.
    """
    return {
        "corrected": (3 * k - 1) * (3 * m + 1) % 3,
        "as_printed": (3 * k - 1) * (3 * m + 2) % 3,
    }


def x3k_x3m2_obstruction(k: int, m: int) -> bool:
    """True when no correspondence exists between ``X_3k`` and ``X_(3m+2)``.

    Squares are 0 or 1 mod 3 and ``(3k-1)(3m+1) = 2`` mod 3, so this always holds;
    the direct perfect-square test is run as a cross-check.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    by_residue = obstruction_residues(k, m)["corrected"] == 2
    direct = correspondence_lambda(series_degree("X3k", k), series_degree("X3k2", m)) is None
    if by_residue != direct:
        raise RuntimeError(f"residue argument and direct test disagree at k={k}, m={m}")
    return direct


def _scan_rows(args) -> list[tuple[int, int, int]]:
    s1, s2, ks, param_max = args
    out = []
    for k in ks:
        d1 = series_degree(s1, k)
        for l in range(1, param_max + 1):
            lam = correspondence_lambda(d1, series_degree(s2, l))
            if lam is not None:
                out.append((k, l, lam))
    return out


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("K3LAT_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_pairs(s1: str, s2: str, k_max: int, param_max: int, workers: int | None = None) -> list[tuple[int, int, int]]:
    """All ``(k, l, lambda)`` in range with ``deg(s1, k) * deg(s2, l) = lambda^2``."""
    if k_max < 1 or param_max < 1:
        raise ValueError("bounds must be >= 1")
    for s in (s1, s2):
        if s not in SERIES:
            raise ValueError(f"unknown series {s!r}")
    workers = default_workers() if workers is None else workers
    ks = list(range(1, k_max + 1))
    if workers <= 1 or k_max < 2 * workers:
        return sorted(_scan_rows((s1, s2, ks, param_max)))
    shards = [ks[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_scan_rows, [(s1, s2, sh, param_max) for sh in shards])
        return sorted(row for part in parts for row in part)


# ---------------------------------------------------------------------------
# index-2 and index-9 embeddings inside the K3 lattice
# ---------------------------------------------------------------------------

# positions of the three hyperbolic planes after -E8 + -E8
_HYP = {"u1": 16, "v1": 17, "u2": 18, "v2": 19, "u3": 20, "v3": 21}


def k3_vector(**coords: int) -> tuple[int, ...]:
    v = [0] * 22
    for name, c in coords.items():
        v[_HYP[name]] += c
    return tuple(v)


@dataclass(frozen=True)
class ChainResult:
    name: str
    expected: int
    index_by_discriminant: int
    index_by_basis: int
    details: dict = field(compare=False, default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.expected == self.index_by_discriminant == self.index_by_basis


def _transcendental_chain(name, ns_vectors, ns_gram, sub_ns_vectors, extra, expected) -> ChainResult:
    """``T_big + Z extra`` inside ``T_small`` where ``small`` is spanned by ``sub_ns_vectors``.

    ``ns_vectors`` embeds the larger Picard lattice; ``extra`` is the class of
    it orthogonal to the smaller one.
    """
    k3 = standard("K3")
    ns = Embedding(k3, ns_vectors)
    if ns.gram != exact.int_matrix(ns_gram):
        raise ValueError(f"{name}: embedding does not realize the Picard Gram matrix")
    _, sat_index = saturation(ns)
    if sat_index != 1:
        raise ValueError(f"{name}: Picard embedding is not primitive")
    t_big = orthogonal_complement(ns)
    t_small = orthogonal_complement(Embedding(k3, sub_ns_vectors))
    rows = t_big.basis + ((tuple(extra),) if extra is not None else ())
    sub = Embedding(k3, rows)
    extra_norm = k3.norm(extra) if extra is not None else 1
    disc_sub = discriminant(t_big.lattice) * extra_norm
    disc_super = discriminant(t_small.lattice)
    by_disc = index_from_discriminants(disc_sub, disc_super)
    by_basis = relative_index(sub, t_small)
    return ChainResult(
        name,
        expected,
        by_disc,
        by_basis,
        {
            "disc_T_big": discriminant(t_big.lattice),
            "extra_norm": extra_norm,
            "disc_T_small": disc_super,
            "rank_T_big": t_big.rank,
            "rank_T_small": t_small.rank,
        },
    )


def malpha_chain() -> ChainResult:
    """``T_(M_alpha) + Z e`` inside ``T_M``: D -> u1 + v1, e -> u2 - v2."""
    d = k3_vector(u1=1, v1=1)
    e = k3_vector(u2=1, v2=-1)
    return _transcendental_chain("M_alpha in M", (d, e), MALPHA_GRAM, (d,), e, 2)


def mbeta_chain() -> ChainResult:
    """``T_(M_beta) + Z r`` inside ``T_Y``: F -> u1, D -> 3 v1 + u2 + v2, r = 3H - 8F."""
    f = k3_vector(u1=1)
    d = k3_vector(v1=3, u2=1, v2=1)
    h = tuple(a + b for a, b in zip(d, f))
    r = tuple(3 * a - 8 * b for a, b in zip(h, f))
    res = _transcendental_chain("M_beta in Y", (d, f), MBETA_GRAM, (h,), r, 9)
    res.details["r_norm"] = standard("K3").norm(r)
    comp = orthogonal_complement(span(Lattice(MBETA_GRAM), [(1, 1)]))
    res.details["r_in_DF_basis"] = list(comp.basis[0])
    return res


def trivial_chain() -> ChainResult:
    d = k3_vector(u1=1, v1=1)
    return _transcendental_chain("M in M", (d,), M_GRAM, (d,), None, 1)


def reproduce_index_embeddings() -> list[ChainResult]:
    return [malpha_chain(), mbeta_chain(), trivial_chain()]
