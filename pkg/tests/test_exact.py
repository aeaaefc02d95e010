from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from k3lat import exact
from k3lat.exact import BinForm, S, T


def int_matrices(max_rows=5, max_cols=5, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def symmetric_matrices(max_n=5, lo=-6, hi=6):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _sym(n, xs)
        )

    return st.integers(1, max_n).flatmap(build)


def _sym(n, xs):
    g = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = next(it)
    return g


# -- determinants ------------------------------------------------------------

@given(int_matrices(5, 5).filter(lambda a: len(a) == len(a[0])))
def test_det_matches_sympy(a):
    assert exact.det(a) == oracles.det(a)


def test_det_rational():
    assert exact.det([[Fraction(1, 2), 1], [1, 2]]) == 0
    assert exact.det([[Fraction(1, 3), 0], [0, 3]]) == 1


def test_det_examples():
    assert exact.det([[1, 2], [3, 4]]) == -2
    assert exact.det([[2, 3], [3, 0]]) == -9
    assert exact.det(()) == 1


# -- Hermite normal form -------------------------------------------------------

def _is_hnf(h):
    last = -1
    seen_zero = False
    for r, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not (0 <= h[i][p] < row[p]) for i in range(r)):
            return False
        last = p
    return True


@given(int_matrices())
def test_hnf_transform_and_shape(a):
    h, u = exact.hnf(a)
    assert exact.matmul(u, a) == h
    assert abs(oracles.det(u)) == 1
    assert _is_hnf(h)


@given(int_matrices())
def test_hnf_row_lattice_membership(a):
    basis = [list(r) for r in exact.row_basis(a)]
    assert len(basis) == oracles.rational_rank(a)
    for row in a:
        assert oracles.in_row_lattice(list(row), basis)


@given(int_matrices(4, 4))
def test_hnf_is_canonical_under_unimodular_row_ops(a):
    # adding a multiple of one row to another and swapping rows leaves the lattice unchanged
    b = [list(r) for r in a]
    if len(b) > 1:
        b[0] = [x + 3 * y for x, y in zip(b[0], b[1])]
        b[0], b[-1] = b[-1], b[0]
    assert exact.row_basis(a) == exact.row_basis(b)


def test_hnf_example():
    h, _ = exact.hnf([[2, 4], [6, 8]])
    assert h == ((2, 0), (0, 4))


# -- Smith normal form ---------------------------------------------------------

@given(int_matrices())
def test_snf_against_determinantal_divisors(a):
    s, u, v = exact.snf(a)
    m, n = len(a), len(a[0])
    assert exact.matmul(exact.matmul(u, a), v) == s
    assert abs(oracles.det(u)) == 1 and abs(oracles.det(v)) == 1
    diag = [s[i][i] for i in range(min(m, n))]
    assert all(s[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert exact.invariant_factors(a) == diag
    nonzero = [d for d in diag if d]
    assert nonzero == oracles.invariant_factors(a)
    assert all(d > 0 for d in nonzero)
    assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))


@pytest.mark.parametrize(
    "a, factors",
    [([[2, 0], [0, 3]], [1, 6]), ([[2, 4], [6, 8]], [2, 4]), ([[2, 3], [3, 0]], [1, 9]), ([[0, 2], [2, 0]], [2, 2])],
)
def test_snf_examples(a, factors):
    assert exact.invariant_factors(a) == factors


# -- kernels and solving ----------------------------------------------------------

@given(int_matrices(4, 5))
def test_left_kernel_is_saturated_kernel(a):
    k = exact.left_kernel(a)
    m = len(a)
    assert len(k) == m - oracles.rational_rank(a)
    for row in k:
        assert all(sum(row[i] * a[i][j] for i in range(m)) == 0 for j in range(len(a[0])))
    if k:
        # saturated: the gcd of maximal minors is 1
        assert oracles.minors_gcd([list(r) for r in k], len(k)) == 1


@given(int_matrices(4, 4), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_recovers_consistent_rhs(a, x):
    n = len(a[0])
    x = x[:n]
    b = [(sum(r[j] * x[j] for j in range(n)),) for r in a]
    sol = exact.solve(a, b)
    assert sol is not None
    assert [(sum(r[j] * sol[j][0] for j in range(n)),) for r in a] == b


def test_solve_inconsistent():
    assert exact.solve([[1, 1], [2, 2]], [[1], [3]]) is None


def test_solve_left():
    x = exact.solve_left([[1, 0], [1, 2]], [[3, 4]])
    assert x == ((Fraction(1), Fraction(2)),)


# -- signature ------------------------------------------------------------------

@given(symmetric_matrices())
def test_signature_matches_descartes(g):
    assert exact.signature(g) == oracles.signature(g)


@given(symmetric_matrices())
def test_congruence_diagonalize_identity(g):
    d, p, _ = exact.congruence_diagonalize(g)
    assert exact.matmul(exact.matmul(exact.transpose(p), g), p) == d


def test_signature_hyperbolic():
    assert exact.signature([[0, 1], [1, 0]]) == (1, 1)
    assert exact.signature([[0, 0], [0, 0]]) == (0, 0)


def test_non_symmetric_rejected():
    with pytest.raises(ValueError):
        exact.signature([[1, 2], [3, 4]])


# -- binary forms -------------------------------------------------------------------

x = sympy.Symbol("x")


def _to_sympy(f: BinForm):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.dehomogenize())] or [0], x)


def forms(degree):
    return st.lists(st.integers(-3, 3), min_size=degree + 1, max_size=degree + 1).map(
        lambda cs: BinForm(degree, tuple(cs))
    )


def factored_forms():
    """Products of small linear forms with repeats, so multiplicities actually occur."""
    lin = st.sampled_from([T, S, T - S, T + S, T * 2 + S, T - S * 3])
    return st.lists(lin, min_size=1, max_size=7).map(lambda ls: _prod(ls))


def _prod(ls):
    out = BinForm.of(1)
    for f in ls:
        out = out * f
    return out


def test_order_at_infinity_and_zero():
    f = T ** 2 * S ** 3
    assert f.order_at_infinity() == 3
    assert f.order_at_zero() == 2
    assert f.degree == 5


@given(forms(4), forms(3))
def test_gcd_matches_sympy(f, g):
    if f.is_zero() and g.is_zero():
        with pytest.raises(ValueError):
            exact.poly_gcd(f, g)
        return
    h = exact.poly_gcd(f, g)
    assert exact.divides(h, f) and exact.divides(h, g)
    if f.is_zero() or g.is_zero():
        return
    # affine part from sympy, multiplicity at infinity from leading zeros
    ref = sympy.gcd(_to_sympy(f), _to_sympy(g))
    assert h.degree == ref.degree() + min(f.order_at_infinity(), g.order_at_infinity())


@given(factored_forms())
def test_squarefree_decomposition_reassembles(f):
    parts = exact.squarefree_decomposition(f)
    prod = BinForm.of(1)
    for g, m in parts:
        prod = prod * g ** m
    assert prod.degree == f.degree
    # same up to a nonzero scalar
    assert prod.normalized() == f.normalized()
    # factors squarefree and pairwise coprime
    for g, _ in parts:
        p = _to_sympy(g)
        assert sympy.gcd(p, p.diff(x)).degree() == 0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            assert exact.poly_gcd(parts[i][0], parts[j][0]).degree == 0


@given(factored_forms())
def test_squarefree_matches_sympy(f):
    affine = [(g.degree, m) for g, m in exact.squarefree_decomposition(f) if g != S]
    _, ref = sympy.sqf_list(_to_sympy(f))
    assert sorted((p.degree(), m) for p, m in ref) == sorted(affine)


def test_squarefree_examples():
    f = T ** 4 * (T - S) ** 2
    assert exact.squarefree_decomposition(f) == [(T - S, 2), (T, 4)]
    assert exact.squarefree_decomposition(T ** 2 * S ** 3) == [(T, 2), (S, 3)]
    assert exact.squarefree_decomposition(BinForm.of(5)) == []


def test_high_multiplicity_part():
    f = T ** 4 * (T - S) ** 2 * S
    assert exact.high_multiplicity_part(f, 2) == T * (T - S)
    assert exact.high_multiplicity_part(f, 4) == T
    assert exact.high_multiplicity_part(f, 5) == BinForm.of(1)


def test_euler_identity():
    # t f_t + s f_s = d f
    f = BinForm.of(1, -2, 0, 5)
    lhs = T * f.derivative_t() + S * f.derivative_s()
    assert lhs == f * 3


def test_binform_validation():
    with pytest.raises(ValueError):
        BinForm(2, (1, 2))
    with pytest.raises(ValueError):
        T + BinForm.of(1, 2, 3)
