from __future__ import annotations

from fractions import Fraction

import pytest

from k3lat import hodge, lattice
from k3lat.hodge import PeriodPoint, RationalIsometry
from k3lat.lattice import Embedding, Lattice, standard

U = standard("U")
UU = lattice.direct_sum(U, U)
EMPTY = Lattice(())


def test_coefficients():
    assert hodge.rank1_extension_coefficient(-2, -72) == Fraction(1, 12)
    assert hodge.rank1_extension_coefficient(2, 8) == Fraction(1, 4)
    assert hodge.extension_multiple(-2, -72) == Fraction(1, 6)
    assert hodge.extension_multiple(2, 8) == Fraction(1, 2)


@pytest.mark.parametrize("e, r", [(2, -8), (2, 3), (0, 4), (-2, 0)])
def test_coefficient_rejects_non_squares(e, r):
    with pytest.raises(ValueError):
        hodge.rank1_extension_coefficient(e, r)


def test_signed_summand_reproduces_minus_one_twelfth():
    # v -> c' <v, e> r with c' = sign(e_norm) * c sends e to mu r
    c = hodge.rank1_extension_coefficient(-2, -72)
    signed = -c
    assert signed * -2 == hodge.extension_multiple(-2, -72)


def test_extend_and_block_sum_is_isometry():
    z_n = hodge.extend_by_norms(hodge.identity_isometry(EMPTY), 2, 8)
    z_t = hodge.extend_by_norms(hodge.identity_isometry(EMPTY), -2, -72)
    z = hodge.block_sum(z_n, z_t)
    assert hodge.is_isometry(z.matrix, z.source, z.target)
    assert z((1, 0)) == (Fraction(1, 2), 0)
    assert z((0, 1)) == (0, Fraction(1, 6))


def test_extend_existing_block():
    partial = hodge.identity_isometry(U)
    ext = hodge.extend_by_norms(partial, -2, -18)
    assert ext.matrix[2][2] == Fraction(1, 3)
    assert hodge.is_isometry(ext.matrix, ext.source, ext.target)


def test_extend_requires_orthogonal_extra():
    partial = hodge.identity_isometry(Lattice([[2]]))
    with pytest.raises(ValueError):
        hodge.extend_isometry(partial, Lattice([[2, 1], [1, -2]]), Lattice([[2, 0], [0, -2]]))


def test_construction_checks_invariant():
    with pytest.raises(ValueError):
        RationalIsometry(U, U, ((1, 1), (0, 1)))


def test_composition_order():
    swap = RationalIsometry(U, U, ((0, 1), (1, 0)))
    neg = RationalIsometry(U, U, ((-1, 0), (0, -1)))
    comp = swap.then(neg)
    assert comp((1, 0)) == neg(swap((1, 0)))


def test_json_round_trip():
    iso = hodge.extend_by_norms(hodge.identity_isometry(EMPTY), 2, 8)
    back = hodge.isometry_from_json(iso.to_json())
    assert back == iso
    assert iso.to_json()["matrix"] == [["1/2"]]


def test_period_points():
    p = PeriodPoint(UU, (1, 1, 0, 0), (0, 0, 1, 1))
    assert hodge.is_period_point(p)
    assert not hodge.is_period_point(PeriodPoint(UU, (1, 0, 0, 0), (0, 0, 1, 0)))
    swap = RationalIsometry(UU, UU, ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)))
    q = hodge.transport_period(swap, p)
    assert hodge.is_period_point(q)
    assert q.re == (0, 0, 1, 1)


def test_transport_rejects_non_period():
    with pytest.raises(ValueError):
        hodge.transport_period(hodge.identity_isometry(UU), PeriodPoint(UU, (1, 0, 0, 0), (0, 0, 0, 0)))


def test_kernel_check():
    ker_a = Embedding(U, [[2, 0], [0, 1]])
    ker_b = Embedding(U, [[1, 0], [0, 2]])
    swap = RationalIsometry(U, U, ((0, 1), (1, 0)))
    assert hodge.caldararu_kernel_check(ker_a, ker_b, swap)
    assert not hodge.caldararu_kernel_check(ker_a, ker_a, swap)
    # an image outside the span
    with pytest.raises(ValueError):
        hodge.caldararu_kernel_check(Embedding(U, [[1, 0]]), Embedding(U, [[1, 0]]), swap)
