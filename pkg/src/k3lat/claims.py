"""Machine-checked numeric claims about the K3 families handled by this package.

Each claim recomputes a value from the library and compares it exactly with
the expected constant. Computations read module-level data at call time, so
corrupting a constant makes the matching claim fail rather than crash.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import families, fibration, hodge, lattice, mukai
from .exact import BinForm
from .families import builtin
from .lattice import Lattice, standard
from .serialize import jsonable


@dataclass(frozen=True)
class ReportEntry:
    claim_id: str
    group: str
    paper_location: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "group": self.group,
            "paper_location": self.paper_location,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class Claim:
    claim_id: str
    group: str
    location: str
    expected: Any
    compute: Callable[[], Any]

    def run(self) -> ReportEntry:
        try:
            computed = jsonable(self.compute())
        except Exception as exc:  # a broken computation is a failed claim
            computed = f"error: {type(exc).__name__}: {exc}"
        return ReportEntry(self.claim_id, self.group, self.location, jsonable(self.expected), computed)


GROUPS = ("lattice", "hodge", "fibration", "families", "mukai")


# -- lattice -----------------------------------------------------------------

def _k3_invariants():
    k3 = standard("K3")
    return {
        "rank": k3.rank,
        "abs_disc": abs(lattice.discriminant(k3)),
        "signature": list(k3.signature()),
        "even": k3.is_even,
    }


def _mbeta_complement():
    ns = Lattice(families.MBETA_GRAM)
    h = builtin("M_beta").polarization
    return list(lattice.orthogonal_complement(lattice.span(ns, [h])).basis[0])


def _r_norm():
    ns = Lattice(families.MBETA_GRAM)
    r = tuple(3 * a - 8 * b for a, b in zip((1, 1), (0, 1)))  # 3H - 8F in (D, F)
    return ns.norm(r)


def _chain(fn):
    def run():
        res = fn()
        return [res.index_by_discriminant, res.index_by_basis]
    return run


def _disc_groups():
    return [
        lattice.discriminant_group(Lattice(families.MALPHA_GRAM)),
        lattice.discriminant_group(Lattice(families.MBETA_GRAM)),
    ]


# -- hodge -------------------------------------------------------------------

def _assembled_isometry():
    empty = hodge.identity_isometry(Lattice(()))
    z_n = hodge.extend_by_norms(empty, 2, 8)                       # D -> (1/2) H
    z_t = hodge.extend_by_norms(empty, -2, _r_norm())              # e -> (1/6) r
    z = hodge.block_sum(z_n, z_t)
    return {
        "is_isometry": hodge.is_isometry(z.matrix, z.source, z.target),
        "diagonal": [z.matrix[0][0], z.matrix[1][1]],
    }


def _period_transport():
    u = Lattice(lattice.U_GRAM)
    src = lattice.direct_sum(u, u)
    base = hodge.PeriodPoint(src, (1, 1, 0, 0), (0, 0, 1, 1))
    swap = hodge.RationalIsometry(src, src, ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
    moved = hodge.transport_period(swap, base)
    return hodge.is_period_point(base) and hodge.is_period_point(moved)


# -- fibration ----------------------------------------------------------------

def _index_of(name):
    def run():
        spec = builtin(name)
        return fibration.fibration_index(fibration.FibrationData(spec.ns, spec.fiber))
    return run


def sample_model() -> fibration.WeierstrassModel:
    """``g2 = t^8 + s^8``, ``g3 = s^12``."""
    return fibration.WeierstrassModel.from_coeffs([1, 0, 0, 0, 0, 0, 0, 0, 1], [0] * 12 + [1])


def _weierstrass_sample():
    w = sample_model()
    return {
        "valid": fibration.is_valid(w),
        "nodal_count": fibration.nodal_fiber_count(w),
        "j_degree": fibration.j_degree(w),
    }


def _degenerate_model():
    # t^4 s^4 and t^6 s^6 both vanish too deeply at t = 0
    w = fibration.WeierstrassModel(BinForm.monomial(4, 4), BinForm.monomial(6, 6))
    return fibration.is_valid(w)


def _jacobian_indices():
    t_j = lattice.direct_sum(Lattice(lattice.U_GRAM))
    out = []
    for n in (2, 3):
        _, idx = fibration.jacobian_kernel(t_j, lattice.Character(t_j, n, (1, 0)))
        out.append(idx)
    return out


# -- families -----------------------------------------------------------------

def _partner():
    l = families.solve_partner(1, 1)
    return [l, families.correspondence_lambda(families.series_degree("X3k", 1), families.series_degree("X3k1", l))]


# -- mukai --------------------------------------------------------------------

def _ctx(gram):
    return mukai.NSContext(Lattice(gram))


V = mukai.MukaiVector(2, (1,), 2)


def _v_on(gram):
    # (2, H, 2) with H the first basis vector
    return mukai.MukaiVector(2, (1,) + (0,) * (len(gram) - 1), 2)


def _line_case():
    ctx = _ctx(((8, 1), (1, -2)))
    v = _v_on(ctx.ns.gram)
    u = mukai.MukaiVector(0, (0, 1), 0)
    return [mukai.mukai_pairing(u, v, ctx), mukai.fineness_index(v, ctx)]


def _mbeta_case():
    # basis (H, F) with H = D + F
    g = families.MBETA_GRAM
    h_gram = ((g[0][0] + 2 * g[0][1] + g[1][1], g[0][1] + g[1][1]), (g[0][1] + g[1][1], g[1][1]))
    ctx = _ctx(h_gram)
    v = _v_on(h_gram)
    u = mukai.MukaiVector(0, (0, 1), 0)
    return [
        mukai.mukai_pairing(u, v, ctx),
        mukai.obstruction_residue(u, v, ctx, modulus=2),
        mukai.fineness_index(v, ctx),
    ]


def _schubert_row():
    p, h = mukai.SIGMA_P, mukai.SIGMA_H
    return [mukai.schubert_pairing(p, p), mukai.schubert_pairing(p, h), mukai.schubert_pairing(h, h)]


def _double_cover_parity():
    ctx = mukai.NSContext(Lattice(families.M_GRAM))
    return [mukai.fineness_index(mukai.MukaiVector(2, (1,), 2 * m), ctx) % 2 for m in range(-3, 4)]


CLAIMS: list[Claim] = [
    Claim("lattice.U_gram", "lattice", "hyperbolic plane intersection form",
          [[0, 1], [1, 0]], lambda: standard("U").gram),
    Claim("lattice.K3_invariants", "lattice", "H^2(X,Z) is isometric to -E8+-E8+U+U+U",
          {"rank": 22, "abs_disc": 1, "signature": [3, 19], "even": True}, _k3_invariants),
    Claim("lattice.Mbeta_complement", "lattice", "N_Y-perp in Pic(M_beta) is Z(3H-8F)",
          [3, -5], _mbeta_complement),
    Claim("lattice.r_norm", "lattice", "r = 3H-8F in Pic(M_beta)", -72, _r_norm),
    Claim("lattice.disc_groups", "lattice", "discriminant groups of Pic(M_alpha), Pic(M_beta)",
          [[2, 2], [9]], _disc_groups),
    Claim("lattice.index2", "lattice", "T_Malpha + Ze in T_M has index 2",
          [2, 2], _chain(families.malpha_chain)),
    Claim("lattice.index9", "lattice", "T_Mbeta + Zr in T_Y has index 9",
          [9, 9], _chain(families.mbeta_chain)),
    Claim("hodge.coefficient_e_r", "hodge", "Z_T = Z'_T - (1/12) e (x) r",
          Fraction(1, 12), lambda: hodge.rank1_extension_coefficient(-2, _r_norm())),
    Claim("hodge.coefficient_D_H", "hodge", "Z = (1/4) D (x) H + Z_T",
          Fraction(1, 4), lambda: hodge.rank1_extension_coefficient(2, 8)),
    Claim("hodge.assembled_Z", "hodge", "Z restricts to an isometry; D maps to a multiple of H",
          {"is_isometry": True, "diagonal": [Fraction(1, 2), Fraction(1, 6)]}, _assembled_isometry),
    Claim("hodge.period_transport", "hodge", "isometries keep <w,w> = 0 and <w,w-bar> > 0",
          True, _period_transport),
    Claim("fibration.Malpha_index", "fibration", "M_alpha is genus one fibred of index 2",
          2, _index_of("M_alpha")),
    Claim("fibration.Mbeta_index", "fibration", "M_beta is a genus one fibration of index 3",
          3, _index_of("M_beta")),
    Claim("fibration.J0_index", "fibration", "the quartic-with-a-line fibrations have index 3",
          3, _index_of("J0")),
    Claim("fibration.J3_index", "fibration", "double covers of P^1 x P^1 have index 2",
          2, _index_of("J3")),
    Claim("fibration.Mbeta_degree", "fibration", "M_beta embeds in P^5 with degree 8",
          [8, 5], lambda: [builtin("M_beta").degree, builtin("M_beta").ambient_dim]),
    Claim("fibration.generic_weierstrass", "fibration", "24 nodal fibers, j_J of degree 24",
          {"valid": True, "nodal_count": 24, "j_degree": 24}, _weierstrass_sample),
    Claim("fibration.weierstrass_condition2", "fibration", "min(3v(g2), 2v(g3)) < 12 fails at t = 0",
          False, _degenerate_model),
    Claim("fibration.jacobian_kernels", "fibration", "T_X = ker(T_J -> Z/2), ker(T_J -> Z/3)",
          [2, 3], _jacobian_indices),
    Claim("families.series_degrees", "families", "<D,D> = 6k-2, 6k, 6k+2 at k = 1",
          [4, 6, 8], lambda: [families.series_degree(s, 1) for s in ("X3k", "X3k1", "X3k2")]),
    Claim("families.M_Y_lambda", "families", "lambda^2 = <D,D><H,H> for M x Y",
          4, lambda: families.correspondence_lambda(2, 8)),
    Claim("families.partner", "families", "l = 3 rho d^2 makes (3k-1)(3l) a square",
          [6, 12], _partner),
    Claim("families.no_X3k_X3k2", "families", "no correspondences between X_3k and X_3k+2",
          [], lambda: families.enumerate_pairs("X3k", "X3k2", 50, 500)),
    Claim("mukai.v_isotropic", "mukai", "<v,v> = 8-8 = 0 for v = (2,O(1),2)",
          0, lambda: mukai.mukai_pairing(V, V, _ctx(families.Y_GRAM))),
    Claim("mukai.from_chern", "mukai", "c0 = 2, c1 = O_Y(1), c2 = 4 gives v = (2,O(1),2)",
          {"r": 2, "c1": [1], "s": 2}, lambda: mukai.from_chern(2, (1,), 4, _ctx(families.Y_GRAM)).to_json()),
    Claim("mukai.v_primitive", "mukai", "O_Y(1) primitive, so v is primitive",
          True, lambda: mukai.is_primitive(V)),
    Claim("mukai.fineness_generic", "mukai", "<v,w> = 8k-2(r+s), so n = 2",
          2, lambda: mukai.fineness_index(V, _ctx(families.Y_GRAM))),
    Claim("mukai.fineness_line", "mukai", "Y containing a line: <(0,L,0),v> = 1, fine",
          [1, 1], _line_case),
    Claim("mukai.fineness_Mbeta", "mukai", "<(0,F,0),(2,O(1),2)> = 3 = 1 mod 2, fine",
          [3, 1, 1], _mbeta_case),
    Claim("mukai.double_cover_parity", "mukai", "generic M is not fine: even degrees on D",
          [0] * 7, _double_cover_parity),
    Claim("mukai.splitting_type", "mukai", "K restricted to C is O(-1)+O(-1)",
          [[-1, -1]], lambda: mukai.p1_splitting_types(2, -2, 0)),
    Claim("mukai.h0_P1", "mukai", "h0(O(2)) = 3 and h0(O(1)) = 2",
          [3, 2], lambda: [mukai.h0_split((2,)), mukai.h0_split((1,))]),
    Claim("mukai.schubert", "mukai", "<s(p),s(p)> = 1, <s(p),s(h)> = 0, <s(h),s(h)> = 1",
          [1, 0, 1], _schubert_row),
]


def run_claims(group: str | None = None) -> list[ReportEntry]:
    if group is not None and group not in GROUPS:
        raise ValueError(f"unknown claim group {group!r}; choose from {', '.join(GROUPS)}")
    return [c.run() for c in CLAIMS if group is None or c.group == group]
