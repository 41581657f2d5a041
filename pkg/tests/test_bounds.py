import math

import pytest
from mpmath import mp, mpf, sqrt as msqrt

from lpcycles import bounds, graph
from lpcycles.bounds import (
    M,
    S_even,
    bound_report,
    cycle_bound_naive,
    cycle_bound_sharp,
    triangle_bound_naive,
    triangle_bound_sharp,
)
from lpcycles.cycles import triangles_from_masks
from lpcycles.errors import NotOddPrime, NotPrime, OddExponent, TooManyEdges
from lpcycles.graph import edge_masks

mp.dps = 40


def hp_point_sum(n, k):
    """sum x_i^k at the one-up, rest-down point, in 40-digit arithmetic."""
    x1 = msqrt(mpf(n - 1) / n)
    xr = -1 / msqrt(mpf(n) * (n - 1))
    return x1**k + (n - 1) * xr**k


# frozen from 40-digit evaluations of the defining formulas
@pytest.mark.parametrize("E, expected", [
    (6, 6.928203230275509174109785366),
    (0, 0.0),
    (3, 2.449489742783178098197284075),
])
def test_triangle_bound_naive(E, expected):
    assert triangle_bound_naive(E) == pytest.approx(expected, rel=1e-14, abs=0)


def test_naive_bound_not_attained_by_k3():
    assert 1 < triangle_bound_naive(3)


def test_cycle_bound_naive():
    assert cycle_bound_naive(10, 5, prime=True) == pytest.approx(178.8854381999831757127, rel=1e-14)
    assert cycle_bound_naive(10, 4) == pytest.approx(200.0, rel=1e-14)
    with pytest.raises(NotPrime):
        cycle_bound_naive(10, 4, prime=True)


@pytest.mark.parametrize("E, V, expected", [
    (6, 4, 4.0),
    (3, 3, 1.0),
    (6, 100, 6.823844113463355256549817259),
])
def test_triangle_bound_sharp(E, V, expected):
    assert triangle_bound_sharp(E, V) == pytest.approx(expected, rel=1e-14)


def test_triangle_bound_sharp_too_many_edges():
    with pytest.raises(TooManyEdges):
        triangle_bound_sharp(7, 4)


@pytest.mark.parametrize("n, k, expected", [
    (4, 3, 0.5773502691896257645091487805),
    (3, 3, 0.4082482904638630163662140125),
    (3, 7, 0.2381448361039200928802915073),
])
def test_M_examples(n, k, expected):
    assert M(n, k) == pytest.approx(expected, rel=1e-14)


def test_M_small_cases_by_hand():
    assert M(4, 3) == pytest.approx(2 / math.sqrt(12), rel=1e-15)
    assert M(3, 3) == pytest.approx(1 / math.sqrt(6), rel=1e-15)
    assert M(4, 3) == pytest.approx((4 - 2) / math.sqrt(4 * 3), rel=1e-15)


@pytest.mark.parametrize("n, p, expected", [(3, 4, 0.5), (2, 4, 0.5), (4, 4, 7 / 12)])
def test_S_even_examples(n, p, expected):
    assert S_even(n, p) == pytest.approx(expected, rel=1e-15)


def test_S_even_rejects_odd():
    with pytest.raises(OddExponent):
        S_even(4, 5)


@pytest.mark.parametrize("n", range(2, 21))
def test_M_and_S_match_direct_evaluation(n):
    for k in range(3, 16, 2):
        assert M(n, k) == pytest.approx(float(hp_point_sum(n, k)), rel=1e-12, abs=1e-15)
    for p in range(4, 17, 2):
        assert S_even(n, p) == pytest.approx(float(hp_point_sum(n, p)), rel=1e-12)


def test_cycle_bound_sharp_examples():
    assert cycle_bound_sharp(6, 4, 3) == pytest.approx(4.0, rel=1e-14)
    printed = cycle_bound_sharp(6, 4, 3, printed=True)
    assert printed == pytest.approx(2 * math.sqrt(3), rel=1e-14)
    assert printed < 4
    assert cycle_bound_sharp(10, 5, 5) == pytest.approx(102.0, rel=1e-14)
    assert 12 <= cycle_bound_sharp(10, 5, 5)


def test_printed_constant_ratio():
    for V in range(3, 12):
        for p in (3, 5, 7):
            ratio = cycle_bound_sharp(3, V, p, printed=True) / cycle_bound_sharp(3, V, p)
            assert ratio == pytest.approx(math.sqrt((V - 1) / V), rel=1e-13)


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_cycle_bound_sharp_needs_odd_prime(p):
    with pytest.raises(NotOddPrime):
        cycle_bound_sharp(3, 5, p)


def test_cycle_bound_sharp_too_many_edges():
    with pytest.raises(TooManyEdges):
        cycle_bound_sharp(11, 5, 3)


def test_sharp_p3_reduces_to_triangle_bound():
    for V in range(3, 30):
        for E in (1, 2.5, V * (V - 1) / 2):
            assert cycle_bound_sharp(E, V, 3) == pytest.approx(triangle_bound_sharp(E, V), rel=1e-13)


@pytest.mark.parametrize("n", range(3, 51))
def test_sharpness_on_complete_graphs(n):
    e = n * (n - 1) // 2
    assert triangle_bound_sharp(e, n) == pytest.approx(n * (n - 1) * (n - 2) / 6, rel=1e-9)


def test_monotone_in_edges():
    es = [0.5 * i for i in range(1, 60)]
    for seq in (
        [triangle_bound_naive(e) for e in es],
        [cycle_bound_naive(e, 4) for e in es],
        [cycle_bound_naive(e, 5, True) for e in es],
        [triangle_bound_sharp(e, 9) for e in es],
        [cycle_bound_sharp(e, 9, 5) for e in es],
    ):
        assert all(a < b for a, b in zip(seq, seq[1:]))


def test_dominance_of_sharp_bound():
    for V in range(2, 40):
        for E in range(1, V * (V - 1) // 2 + 1, max(1, V // 3)):
            ratio = triangle_bound_sharp(E, V) / triangle_bound_naive(E)
            assert ratio == pytest.approx((V - 2) / math.sqrt(V * (V - 1)), rel=1e-13)
            assert ratio < 1


@pytest.mark.slow
def test_every_graph_up_to_seven_vertices_under_sharp_bound():
    for v in range(3, 8):
        slots = v * (v - 1) // 2
        for e in range(slots + 1):
            limit = triangle_bound_sharp(e, v) + bounds.SLACK
            for edges in edge_masks(v, e):
                masks = [0] * v
                for a, b in edges:
                    masks[a] |= 1 << b
                    masks[b] |= 1 << a
                assert triangles_from_masks(masks) <= limit


def test_bound_report_k4():
    r = bound_report(graph.complete(4), 3)
    (row,) = r.rows
    assert (row.cycle_length, row.exact_count) == (3, 4)
    assert row.sharp_bound == pytest.approx(4.0, rel=1e-14)
    assert row.tightness_ratio == pytest.approx(1.0, rel=1e-14)


def test_bound_report_path():
    (row,) = bound_report(graph.path(4), 3).rows
    assert row.exact_count == 0 and row.tightness_ratio == 0


def test_bound_report_k5():
    r = bound_report(graph.complete(5), 5)
    assert [row.cycle_length for row in r.rows] == [3, 4, 5]
    assert [row.exact_count for row in r.rows] == [10, 15, 12]
    for row in r.rows:
        if row.tightness_ratio is not None:
            assert 0 <= row.tightness_ratio <= 1 + 1e-9
        for b in (row.naive_bound, row.prime_bound, row.sharp_bound):
            assert b is None or row.exact_count <= b + 1e-9
