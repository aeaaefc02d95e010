from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from k3lat import families, fibration, lattice
from k3lat.families import builtin


@pytest.mark.parametrize(
    "name, degree, dim",
    [("M", 2, 2), ("M_alpha", 2, 2), ("M_beta", 8, 5), ("Y", 8, 5), ("J0", 4, 3), ("J3", 16, 9)],
)
def test_builtin_catalog(name, degree, dim):
    spec = builtin(name)
    assert spec.ns.norm(spec.polarization) == degree == 2 * dim - 2
    assert spec.ns.is_even
    if spec.fiber:
        assert spec.ns.norm(spec.fiber) == 0


@pytest.mark.parametrize("name, index", [("M_alpha", 2), ("M_beta", 3), ("J0", 3), ("J3", 2)])
def test_builtin_fibration_index(name, index):
    spec = builtin(name)
    assert fibration.fibration_index(fibration.FibrationData(spec.ns, spec.fiber)) == index


def test_unknown_family():
    with pytest.raises(ValueError):
        builtin("Z")


def test_series_degrees():
    assert [families.series_degree(s, 1) for s in families.SERIES] == [4, 6, 8, 16]
    assert [families.series_ambient_dim(s, 1) for s in families.SERIES] == [3, 4, 5, 9]
    for s in families.SERIES:
        for k in range(1, 10):
            assert families.series_degree(s, k) == 2 * families.series_ambient_dim(s, k) - 2


@given(st.integers(1, 10 ** 6))
def test_squarefree_part(n):
    rho = families.squarefree_part(n)
    assert n % rho == 0 and families.is_square(n // rho)
    assert all(rho % (p * p) for p in range(2, 1000))


@given(st.integers(1, 200), st.integers(1, 20))
def test_solve_partner_gives_square(k, d):
    l = families.solve_partner(k, d)
    assert families.is_square((3 * k - 1) * 3 * l)
    assert families.correspondence_lambda(families.series_degree("X3k", k), families.series_degree("X3k1", l))


def test_partner_example():
    assert families.solve_partner(1, 1) == 6
    assert families.correspondence_lambda(4, 36) == 12


def test_correspondence_lambda():
    assert families.correspondence_lambda(2, 8) == 4
    assert families.correspondence_lambda(2, 6) is None
    with pytest.raises(ValueError):
        families.correspondence_lambda(0, 4)


def test_obstruction_both_readings():
    for k in range(1, 30):
        for m in range(1, 30):
            res = families.obstruction_residues(k, m)
            assert res["corrected"] == 2
            assert res["as_printed"] == 1
            assert families.x3k_x3m2_obstruction(k, m)


@pytest.mark.parametrize("s1, s2", [("X3k", "X3k1"), ("X3k", "X3k2"), ("X3k", "Y4m5"), ("X3k1", "X3k2")])
def test_enumerate_matches_brute_force(s1, s2):
    ref = oracles.perfect_square_pairs(
        lambda k: families.series_degree(s1, k), lambda l: families.series_degree(s2, l), 20, 200
    )
    assert families.enumerate_pairs(s1, s2, 20, 200) == ref


def test_enumerate_parallel_is_identical():
    serial = families.enumerate_pairs("X3k", "X3k1", 30, 300, workers=1)
    assert families.enumerate_pairs("X3k", "X3k1", 30, 300, workers=3) == serial


def test_enumerate_rejects_bad_input():
    with pytest.raises(ValueError):
        families.enumerate_pairs("X3k", "nope", 3, 3)
    with pytest.raises(ValueError):
        families.enumerate_pairs("X3k", "X3k1", 0, 3)


def test_k3lat_threads_env(monkeypatch):
    monkeypatch.setenv("K3LAT_THREADS", "4")
    assert families.default_workers() == 4
    monkeypatch.setenv("K3LAT_THREADS", "bogus")
    assert families.default_workers() == 1


def test_index_chains():
    results = {r.name: r for r in families.reproduce_index_embeddings()}
    a = results["M_alpha in M"]
    assert (a.index_by_discriminant, a.index_by_basis) == (2, 2)
    assert a.details["extra_norm"] == -2
    b = results["M_beta in Y"]
    assert (b.index_by_discriminant, b.index_by_basis) == (9, 9)
    assert b.details["r_norm"] == -72
    assert b.details["r_in_DF_basis"] == [3, -5]
    assert all(r.passed for r in results.values())


def test_chain_detects_wrong_gram(monkeypatch):
    monkeypatch.setattr(families, "MBETA_GRAM", ((2, 3), (3, 2)))
    with pytest.raises(ValueError):
        families.mbeta_chain()


def test_k3_vector_lives_in_hyperbolic_part():
    k3 = lattice.standard("K3")
    assert k3.norm(families.k3_vector(u1=1, v1=1)) == 2
    assert k3.norm(families.k3_vector(u2=1, v2=-1)) == -2
