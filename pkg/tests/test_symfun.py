import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lpcycles.bounds import M, S_even
from lpcycles.errors import IdentityMismatch
from lpcycles import symfun
from lpcycles.symfun import (
    SymPolyInE,
    coefficient_positivity_check,
    e4_min_at_e3_max,
    elementary_from_roots,
    n4_identities,
    power_sums_from_elementary,
    t_in_e3_n3,
    t_in_e_n4,
)

E3, E4 = SymPolyInE.e3(), SymPolyInE.e4()
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def unit_zero_sum(rng, n):
    x = rng.standard_normal(n)
    x -= x.mean()
    return x / np.linalg.norm(x)


def test_elementary_examples():
    assert elementary_from_roots([1, -1]) == [0, -1]
    assert elementary_from_roots([2, -1, -1]) == [0, -3, 2]
    half = F(1, 2)
    assert elementary_from_roots([half, half, -half, -half]) == [0, F(-1, 2), 0, F(1, 16)]


def test_elementary_on_normalised_points():
    rng = np.random.default_rng(0)
    for n in range(2, 9):
        es = elementary_from_roots(list(unit_zero_sum(rng, n)))
        assert es[0] == pytest.approx(0, abs=1e-12)
        assert es[1] == pytest.approx(-0.5, abs=1e-12)


def test_power_sum_examples():
    assert power_sums_from_elementary([0, F(-1, 2)], 4) == [0, 1, 0, F(1, 2)]
    assert power_sums_from_elementary(elementary_from_roots([2, -1, -1]), 3)[2] == 6
    t4 = power_sums_from_elementary([SymPolyInE.constant(0), SymPolyInE.constant(F(-1, 2)), E3, E4], 4)[3]
    assert t4 == F(1, 2) - 4 * E4


@settings(max_examples=200, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=6))
def test_newton_round_trip_exact(xs):
    ts = power_sums_from_elementary(elementary_from_roots(xs), 10)
    assert ts == [sum(x**k for x in xs) for k in range(1, 11)]


def test_t3_recurrence_values():
    assert t_in_e3_n3(1) == 0
    assert t_in_e3_n3(2) == 1
    assert t_in_e3_n3(3) == 3 * E3
    assert t_in_e3_n3(4) == F(1, 2)
    assert t_in_e3_n3(7) == F(7, 4) * E3
    for k in range(4, 16):
        assert t_in_e3_n3(k) == F(1, 2) * t_in_e3_n3(k - 2) + E3 * t_in_e3_n3(k - 3)


def test_t7_at_extremal_e3():
    e3 = math.sqrt(2 / 3) / 6
    assert t_in_e3_n3(7).evaluate(e3) == pytest.approx(0.2381448361039201, rel=1e-14)
    assert t_in_e3_n3(7).evaluate(e3) == pytest.approx(M(3, 7), rel=1e-12)


@pytest.mark.parametrize("n", [3, 4])
def test_polynomials_reproduce_power_sums(n):
    rng = np.random.default_rng(n)
    for _ in range(50):
        x = unit_zero_sum(rng, n)
        es = elementary_from_roots(list(x))
        for k in range(1, 13):
            poly = t_in_e3_n3(k) if n == 3 else t_in_e_n4(k)
            e4 = es[3] if n == 4 else 0.0
            assert poly.evaluate(es[2], e4) == pytest.approx(float(np.sum(x**k)), abs=1e-10)


def test_odd_n3_zero_constant_and_matches_M():
    x = [math.sqrt(2 / 3), -math.sqrt(1 / 6), -math.sqrt(1 / 6)]
    e3 = x[0] * x[1] * x[2]
    for k in range(3, 16, 2):
        t = t_in_e3_n3(k)
        assert t.coefficient(0) == 0
        assert t.evaluate(e3) == pytest.approx(M(3, k), abs=1e-10)


def test_positivity():
    assert coefficient_positivity_check(3)
    assert coefficient_positivity_check(4)
    assert coefficient_positivity_check(12)
    assert coefficient_positivity_check(20)
    assert t_in_e3_n3(3).coefficients == {(1, 0): 3}
    assert t_in_e3_n3(4).coefficients == {(0, 0): F(1, 2)}


def test_n4_identities():
    ids = n4_identities()
    assert ids[3].coefficient(1) == 3
    assert ids[4] == F(1, 2) - 4 * E4
    assert ids[6] == F(1, 4) + 3 * E3 * E3 - 3 * E4
    assert ids[6].coefficient(0, 0) == F(1, 4)


def test_n4_t4_at_extremal_point():
    x = [math.sqrt(3 / 4)] + [-math.sqrt(1 / 12)] * 3
    es = elementary_from_roots(x)
    assert n4_identities()[4].evaluate(es[2], es[3]) == pytest.approx(S_even(4, 4), abs=1e-12)


def test_n4_identity_mismatch_reported(monkeypatch):
    monkeypatch.setitem(symfun.PRINTED_N4, 4, F(1, 2) - 3 * E4)
    with pytest.raises(IdentityMismatch):
        n4_identities()


def test_e4_minimised_where_e3_maximised():
    r = e4_min_at_e3_max(4)
    assert r["e3_argmax"] == [1, 3]
    assert r["matches"]
    assert r["en_min"] == pytest.approx(-1 / 48, abs=1e-15)
    # no sampled feasible point goes lower
    rng = np.random.default_rng(4)
    pts = rng.standard_normal((200_000, 4))
    pts -= pts.mean(axis=1, keepdims=True)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    assert np.prod(pts, axis=1).min() >= r["en_min"] - 1e-12


def test_polynomial_arithmetic():
    p = (E3 + 1) * (E3 - 1)
    assert p == E3 * E3 - 1
    assert repr(SymPolyInE()) == "0"
    assert repr(F(1, 4) + 3 * E3 * E3 - 3 * E4) == "1/4 + -3*e4 + 3*e3^2"
    assert (2 - E3).evaluate(0.5) == 1.5
