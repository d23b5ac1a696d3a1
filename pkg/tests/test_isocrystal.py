"""Newton-point arithmetic: frozen examples, the breakpoint-count defect
oracle, and brute-force Kostant partition checks."""

from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adlvlab import isocrystal as I


def breakpoint_count(nu):
    """Oracle: number of indices i < n with non-integral partial sum."""
    partial = F(0)
    count = 0
    for c in nu[:-1]:
        partial += c
        if partial.denominator != 1:
            count += 1
    return count


def brute_kostant(beta, n):
    """Count root-combinations by bounded exhaustive search."""
    roots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    height = sum(c for c in beta if c > 0)

    def rec(k, rem):
        if all(c == 0 for c in rem):
            return 1
        if k == len(roots):
            return 0
        i, j = roots[k]
        total = 0
        for c in range(height + 1):
            new = list(rem)
            new[i] -= c
            new[j] += c
            if any(sum(new[: m + 1]) < 0 for m in range(n)):
                break
            total += rec(k + 1, tuple(new))
        return total

    return rec(0, tuple(beta))


# --------------------------------------------------------------------------


def test_pair_2rho_examples():
    assert I.pair_2rho((0, 0, 0)) == 0
    assert I.pair_2rho((1, 0, -1)) == 4
    assert I.pair_2rho((F(1, 2), F(1, 2), 0, F(-1, 2), F(-1, 2))) == 6


def test_best_integral_approx_examples():
    assert I.best_integral_approx((F(1), F(0), F(-1))) == (1, 0, -1)
    assert I.best_integral_approx((F(1, 2), F(1, 2), F(-1))) == (0, 1, -1)
    assert I.best_integral_approx((F(1), F(-1, 2), F(-1, 2))) == (1, -1, 0)


def test_defect_examples():
    assert I.defect(I.as_newton_point((1, 0, -1))) == 0
    assert I.defect(I.as_newton_point((F(1, 2), F(1, 2), -1))) == 1
    assert I.defect(I.as_newton_point((F(1, 2), F(1, 2), 0, F(-1, 2), F(-1, 2)))) == 2


def test_validity():
    assert I.is_newton_point((F(1, 2), F(1, 2), -1))
    assert not I.is_newton_point((F(1, 3), F(1, 3), F(-2, 3)))  # breakpoint not integral
    assert not I.is_newton_point((0, 1, -1))  # not dominant
    assert not I.is_newton_point((1, 0, 0))  # sum != 0
    with pytest.raises(I.InvalidNewtonPoint):
        I.as_newton_point((F(1, 3), F(1, 3), F(-2, 3)))


def test_mazur_examples():
    assert I.mazur_leq(I.as_newton_point((0, 0, 0)), (1, 0, -1))
    assert I.mazur_leq(I.as_newton_point((1, 0, -1)), (1, 0, -1))
    assert I.mazur_leq(I.as_newton_point((1, F(-1, 2), F(-1, 2))), (1, 0, -1))
    assert not I.mazur_leq(I.as_newton_point((2, 0, -2)), (1, 0, -1))


def test_enumerate_newton_leq_examples():
    assert I.enumerate_newton_leq((0, 0, 0)) == [(F(0), F(0), F(0))]
    got = I.enumerate_newton_leq((1, 0, -1))
    want = sorted(
        [
            (F(0), F(0), F(0)),
            (F(1, 2), F(1, 2), F(-1)),
            (F(1), F(-1, 2), F(-1, 2)),
            (F(1), F(0), F(-1)),
        ]
    )
    assert got == want
    for nu in got:
        I.validate_newton_point(nu)
        assert I.mazur_leq(nu, (1, 0, -1))


def brute_enumerate(mu):
    """Oracle: scan all dominant rational vectors with denominators <= n."""
    n = len(mu)
    m = 1
    for k in range(1, n + 1):
        m = m * k // __import__("math").gcd(m, k)
    hi = int(mu[0]) * m
    lo = int(mu[-1]) * m
    found = set()
    for combo in product(range(lo, hi + 1), repeat=n - 1):
        full = combo + (-sum(combo),)
        nu = tuple(F(c, m) for c in full)
        if I.is_newton_point(nu) and I.dominance_leq(nu, mu):
            found.add(nu)
    return sorted(found)


@pytest.mark.parametrize("mu", [(1, 0, -1), (2, 0, -2), (1, 1, -2), (2, 1, -3)])
def test_enumerate_newton_leq_brute_force(mu):
    assert I.enumerate_newton_leq(mu) == brute_enumerate(mu)


def test_enumeration_partial_order_structure():
    mu = (2, 1, 0, -1, -2)
    points = I.enumerate_newton_leq(mu)
    zero = tuple(F(0) for _ in mu)
    assert all(I.dominance_leq(zero, nu) for nu in points)
    assert all(I.dominance_leq(nu, mu) for nu in points)
    # antisymmetry on the finite set
    for a in points:
        for b in points:
            if I.dominance_leq(a, b) and I.dominance_leq(b, a):
                assert a == b


def test_defect_equals_breakpoint_count():
    # across every valid Newton point below a spread of dominant vectors
    for mu in [(1, 0, -1), (2, 1, -3), (2, 1, 0, -3), (1, 1, 0, -1, -1), (2, 1, 0, -1, -2)]:
        for nu in I.enumerate_newton_leq(mu):
            assert I.defect(nu) == breakpoint_count(nu)


def test_floor_differs_by_fractional_positive_root_combo():
    for mu in [(2, 1, -3), (1, 1, 0, -2), (2, 0, 0, -1, -1)]:
        for nu in I.enumerate_newton_leq(mu):
            floor = I.best_integral_approx(nu)
            assert sum(floor) == 0
            diff = [c - f for c, f in zip(nu, floor)]
            # diff = sum c_i alpha_{i,i+1} with 0 <= c_i < 1: partial sums in [0,1)
            partial = F(0)
            for d in diff[:-1]:
                partial += d
                assert 0 <= partial < 1


def test_weight_multiplicity_examples():
    assert I.weight_multiplicity((1, 0, -1), (1, 0, -1)) == 1
    assert I.weight_multiplicity((1, 0, -1), (0, 1, -1)) == 1
    assert I.weight_multiplicity((1, 0, -1), (0, 0, 0)) == 2


@pytest.mark.parametrize(
    "beta",
    [(0, 0, 0), (1, -1, 0), (1, 0, -1), (2, 0, -2), (2, 1, -3), (1, 1, -2), (3, 0, -3)],
)
def test_kostant_against_brute_force_n3(beta):
    assert I.kostant_partition(beta) == brute_kostant(beta, 3)


@pytest.mark.parametrize(
    "beta", [(1, 0, 0, -1), (2, 0, -1, -1), (1, 1, -1, -1), (2, 1, -1, -2)]
)
def test_kostant_against_brute_force_n4(beta):
    assert I.kostant_partition(beta) == brute_kostant(beta, 4)


def test_kostant_zero_off_lattice():
    assert I.kostant_partition((1, 0, 0)) == 0  # sum != 0
    assert I.kostant_partition((-1, 1, 0)) == 0  # negative partial sum


def test_irreducible_multiplicity_known_values():
    # adjoint representation of sl_n: zero weight space has dimension n - 1
    assert I.irreducible_weight_multiplicity((1, 0, -1), (0, 0, 0)) == 2
    assert I.irreducible_weight_multiplicity((1, 0, 0, -1), (0, 0, 0, 0)) == 3
    # any extreme weight has multiplicity 1
    assert I.irreducible_weight_multiplicity((2, 0, -2), (2, 0, -2)) == 1
    # Verma dominates the irreducible multiplicity
    for lam in [(0, 0, 0), (1, 0, -1), (1, -1, 0)]:
        assert I.irreducible_weight_multiplicity((2, 0, -2), lam) <= I.weight_multiplicity(
            (2, 0, -2), lam
        )


def test_irreducible_dimension_sl2_check():
    # sl_2 highest weight (k, -k): dimension 2k + 1, every weight multiplicity 1
    for k in range(4):
        dims = sum(
            I.irreducible_weight_multiplicity((k, -k), (a, -a)) for a in range(-k, k + 1)
        )
        assert dims == 2 * k + 1


def test_rendering():
    assert I.render_rational(F(1, 2)) == "1/2"
    assert I.render_rational(F(-3)) == "-3"
    assert I.render_vector((F(1, 2), F(1, 2), F(-1))) == "[1/2, 1/2, -1]"


def test_parse_vector_forms():
    assert I.parse_newton_point("1/2,1/2,-1", 3) == (F(1, 2), F(1, 2), F(-1))
    assert I.parse_newton_point("[1/2, 1/2, -1]", 3) == (F(1, 2), F(1, 2), F(-1))
    with pytest.raises(I.InvalidNewtonPoint):
        I.parse_newton_point("1,0", 3)
    with pytest.raises(I.InvalidNewtonPoint):
        I.parse_newton_point("0,1,-1", 3)


@given(st.lists(st.integers(min_value=-4, max_value=4), min_size=2, max_size=5))
@settings(max_examples=80, deadline=None)
def test_integral_vectors_validity_matches_definition(vals):
    nu = tuple(F(v) for v in sorted(vals, reverse=True))
    assert I.is_newton_point(nu) == (sum(nu) == 0)
