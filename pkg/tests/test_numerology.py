import sympy
import pytest

from k3mono import numerology as nm
from k3mono.errors import DomainError, InconsistentTable


def test_plane_curve_counts():
    assert nm.flex_count(3) == 9
    assert nm.bitangent_count(4) == 28
    assert nm.bitangent_count(6) == 324
    with pytest.raises(DomainError):
        nm.flex_count(2)
    with pytest.raises(DomainError):
        nm.bitangent_count(3)


def test_bitangents_against_plucker():
    # bitangents of a smooth degree-d curve from the dual degree and genus
    for d in range(4, 12):
        dual = d * (d - 1)
        genus = (d - 1) * (d - 2) // 2
        flexes = 3 * d * (d - 2)
        expected = ((dual - 1) * (dual - 2) // 2 - genus - flexes)
        assert nm.bitangent_count(d) == expected


def test_yau_zaslow_against_divisor_recurrence():
    # log-derivative of prod (1 - q^n)^-24: n a_n = 24 sum_k sigma(k) a_{n-k}
    N = 12
    a = [1]
    for n in range(1, N + 1):
        total = 24 * sum(int(sympy.divisor_sigma(k)) * a[n - k] for k in range(1, n + 1))
        assert total % n == 0
        a.append(total // n)
    assert nm.yau_zaslow(N) == a
    assert nm.yau_zaslow(4) == [1, 24, 324, 3200, 25650]
    assert nm.yau_zaslow(0) == [1]


def test_surface_degrees():
    assert nm.dual_surface_degree(4) == 36
    assert nm.swallowtail_count(4) == 320
    assert nm.swallowtail_count(2) == 0
    assert nm.double_curve_degree() == 320
    assert nm.parabolic_curve_degree() == 32
    assert nm.intersection_number() == 2560


def test_projection_formula():
    res = nm.dual_double_curve_degree()
    assert (res.lhs, res.divisor, res.degree) == (30720, 64, 480)


def test_generic_table():
    g = nm.generic_invariants()
    assert g.i == 1920 + 2 * 320 == 2560
    assert g.delta_b == 9600 + 1920 == 11520
    assert g.v_b == 1920
    assert g.lhs == g.rhs == 16320
    assert g.triple_points // 3 == nm.yau_zaslow(3)[3] == 3200


def test_good_surface():
    sol = nm.good_surface_solve()
    assert (sol.parabolic_double, sol.v_b, sol.delta_b, sol.trinodal_count) == (1918, 1920, 11520, 3198)
    assert sol.trinodal_count + 2 == 3200
    g = nm.good_surface_invariants()
    assert g.lhs == g.rhs


def test_inconsistent_table_detected():
    g = nm.generic_invariants()
    with pytest.raises(InconsistentTable):
        nm.GaussInvariants(**{**g.__dict__, "v_b": g.v_b + 1})
    with pytest.raises(InconsistentTable):
        nm.GaussInvariants(**{**g.__dict__, "swallowtails": -1})


def test_counts_table_complete():
    table = nm.counts_table()
    assert set(table) == set(nm.ANCHORS)
    assert table["yau_zaslow_g3"] == 3200
    assert all(isinstance(v, int) for v in table.values())
