import random
from fractions import Fraction

import pytest

from symgen.combinatorics import (
    StraightenResult,
    as_partition,
    conjugate,
    falling_factorial,
    parse_int_vector,
    partitions_upto,
    stirling2,
    straighten,
)


def test_conjugate_basic():
    assert conjugate((3,)) == (1, 1, 1)
    assert conjugate((2, 1)) == (2, 1)
    # transpose the diagram of (4,2,1) cell by cell
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)


def test_conjugate_involution():
    for lam in partitions_upto(9):
        assert conjugate(conjugate(lam)) == lam
        assert sum(conjugate(lam)) == sum(lam)


def test_as_partition_strips_zeros_and_validates():
    assert as_partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        as_partition([1, 2])


def test_straighten_paper_example():
    # s_(1,3) = -s_(2,2)
    assert straighten((1, 3)) == StraightenResult(-1, (2, 2))
    # the whole chain s_(1,3)=s_(1,3,0)=-s_(2,2)=s_(2,-1,3)=-s_(1,-1,4)
    assert straighten((1, 3, 0)) == StraightenResult(-1, (2, 2))
    assert straighten((2, -1, 3)) == StraightenResult(-1, (2, 2))
    assert straighten((1, -1, 4)) == StraightenResult(+1, (2, 2))


def test_straighten_trivial_and_zero():
    assert straighten((2, 1)) == StraightenResult(+1, (2, 1))
    assert straighten((1, 2)).is_zero  # equal rows of the determinant
    assert straighten(()) == StraightenResult(+1, ())
    assert straighten((2, -1)).is_zero  # normalizes to a negative part


def test_straighten_zero_vector_is_empty_partition():
    assert straighten((0, 0, 0)) == StraightenResult(+1, ())


def test_straighten_swap_rule_consistency():
    # s_(...,a,b,...) = -s_(...,b-1,a+1,...) whenever both sides make sense
    rng = random.Random(7)
    for _ in range(200):
        l = rng.randint(2, 5)
        alpha = [rng.randint(-5, 8) for _ in range(l)]
        i = rng.randrange(l - 1)
        beta = list(alpha)
        beta[i], beta[i + 1] = alpha[i + 1] - 1, alpha[i] + 1
        ra, rb = straighten(tuple(alpha)), straighten(tuple(beta))
        if ra.is_zero:
            assert rb.is_zero
        else:
            assert rb == StraightenResult(-ra.sign, ra.partition)


def test_falling_factorial_values():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(5, -1) == Fraction(1, 6)
    assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)
    with pytest.raises(ZeroDivisionError):
        falling_factorial(-2, -3)


def test_falling_factorial_addition_rule():
    # (u|k+m) = (u|k) * (u-k|m), used in the shifted expansions
    rng = random.Random(11)
    for _ in range(20):
        u = Fraction(rng.randint(30, 90), rng.choice([1, 2, 3, 5, 7]))
        for k in range(-4, 5):
            for m in range(-4, 5):
                lhs = falling_factorial(u, k + m)
                rhs = falling_factorial(u, k) * falling_factorial(u - k, m)
                assert lhs == rhs


def test_stirling2_values():
    assert stirling2(4, 4) == 1
    assert stirling2(0, 0) == 1
    assert stirling2(3, 2) == 3
    assert stirling2(2, 3) == 0


def test_stirling2_signed_rising_expansion():
    # x^m = sum_k (-1)^(m-k) S(m,k) x(x+1)...(x+k-1)
    rng = random.Random(3)
    xs = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(10)]
    for m in range(0, 9):
        for x in xs:
            total = Fraction(0)
            for k in range(0, m + 1):
                rising = Fraction(1)
                for j in range(k):
                    rising *= x + j
                total += (-1) ** (m - k) * stirling2(m, k) * rising
            assert total == x ** m


def test_stirling2_falling_expansion():
    # x^m = sum_k S(m,k) (x|k), the conversion used by the shifted operators
    for m in range(0, 9):
        for xnum in range(-4, 5):
            x = Fraction(xnum, 3)
            total = sum(stirling2(m, k) * falling_factorial(x, k)
                        for k in range(m + 1))
            assert total == x ** m


def test_parse_int_vector():
    assert parse_int_vector("2,-1,3") == (2, -1, 3)
    assert parse_int_vector("") == ()
