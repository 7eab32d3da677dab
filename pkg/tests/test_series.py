import random
from fractions import Fraction

import pytest

from symgen.combinatorics import partitions_upto, straighten
from symgen.families import (
    correlation_function,
    family_table,
    generator_series,
    schur_h,
)
from symgen.ring import Element
from symgen.series import CoeffTable, TruncatedSeries, correlation_expand, extract, invert


def Q(k):
    return Element.gen("Q", k)


def h(k):
    return Element.gen("h", k)


def test_invert_identity():
    one = TruncatedSeries(6, {0: Element.one()})
    assert invert(one) == one


def test_invert_generic_generators():
    q = generator_series("Q", 4)
    r = invert(q)
    assert r.coeff(0) == Element.one()
    assert r.coeff(1) == -Q(1)
    assert r.coeff(2) == Q(1) ** 2 - Q(2)
    assert r.coeff(3) == -Q(1) ** 3 + 2 * Q(1) * Q(2) - Q(3)


def test_invert_involution_random():
    rng = random.Random(42)
    for _ in range(50):
        coeffs = {0: Element.one()}
        for k in range(1, 6):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if c:
                coeffs[k] = Element.gen("Q", k).scale(c) + Element.const(
                    Fraction(rng.randint(-2, 2)))
        q = TruncatedSeries(5, coeffs)
        assert invert(invert(q)) == q


def test_invert_requires_unit():
    with pytest.raises(ValueError):
        invert(TruncatedSeries(3, {0: Element.const(2)}))


def brute_force_l2(fcoeffs, gens, window, rmax):
    """Literal double expansion of f(u2/u1) Q(u1) Q(u2), no stepping."""
    out = {}
    for q1, g1 in gens.coeffs.items():
        for q2, g2 in gens.coeffs.items():
            for r, fr in enumerate(fcoeffs[: rmax + 1]):
                if not fr:
                    continue
                key = (q1 - r, q2 + r)
                if not all(lo <= k <= hi for k, (lo, hi) in zip(key, window)):
                    continue
                prev = out.get(key, Element.zero())
                out[key] = prev + (g1 * g2).scale(fr)
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("tag", ["schur", "schur-q", "hall-littlewood"])
def test_table_matches_brute_force_l2(tag):
    N = 4
    table = family_table(tag, 2, N)
    f = correlation_function(tag, 30)
    gens = generator_series("Q" if tag != "schur" else "h", 30)
    window = [(-N, N), (0, N)]
    brute = brute_force_l2([f.coeff(r) for r in range(31)], gens, window, 30)
    brute = {k: v for k, v in brute.items() if sum(k) <= table.degree_bound}
    assert table.entries == brute


def test_extract_examples():
    # l=1: the table is the generating series itself
    t1 = family_table("schur", 1, 5)
    assert extract(t1, (3,)) == h(3)
    assert extract(t1, (0,)) == Element.one()
    # f = 1-x, two variables
    t2 = family_table("schur", 2, 4)
    assert extract(t2, (2, 1)) == h(2) * h(1) - h(3)
    assert extract(t2, (1, 2)) == Element.zero()
    assert extract(t2, (1, 3)) == -(h(2) ** 2 - h(1) * h(3))
    assert extract(t2, (0, 0)) == Element.one()
    with pytest.raises(KeyError):
        extract(t2, (0, 9))


def test_schur_q_two_row_formula():
    # Q_(m,n) = Q_m Q_n + 2 sum_s (-1)^s Q_{m+s} Q_{n-s}
    t2 = family_table("schur-q", 2, 4)
    expected = Q(2) * Q(1) - 2 * Q(3)
    assert extract(t2, (2, 1)) == expected


def test_schur_window_sweep_small():
    # every window vector straightens to sign * schur_h through l = 2, N = 5
    N = 5
    t2 = family_table("schur", 2, N)
    for a1 in range(-N, N + 1):
        for a2 in range(-N, N + 1):
            if a1 + a2 > t2.degree_bound:
                continue
            res = straighten((a1, a2))
            got = extract(t2, (a1, a2))
            if res.is_zero:
                assert not got, (a1, a2)
            else:
                assert got == schur_h(res.partition).scale(res.sign), (a1, a2)


def test_r_side_conjugate_small():
    # R_lambda = (-1)^{|lambda|} s_{lambda'} on partitions, l = 2, N = 5
    from symgen.combinatorics import conjugate

    N = 5
    t2 = family_table("schur", 2, N, lows=[0, 0], degree_bound=N, side="R")
    for lam in partitions_upto(N, max_length=2):
        key = tuple(lam) + (0,) * (2 - len(lam))
        expect = schur_h(conjugate(lam)).scale((-1) ** sum(lam))
        assert extract(t2, key) == expect, lam


def test_append_step_consistency():
    # building arity 3 through the iterative step agrees with a direct
    # 3-fold brute expansion on a small window
    N = 2
    t3 = family_table("schur", 3, N)
    f = correlation_function("schur", 40)
    gens = generator_series("h", 40)
    out = {}
    for q1 in range(41):
        for q2 in range(41):
            for q3 in range(41):
                g = gens.coeff(q1) * gens.coeff(q2) * gens.coeff(q3)
                if not g:
                    continue
                for r12 in range(3):
                    for r13 in range(3):
                        for r23 in range(3):
                            c = (f.coeff(r12) * f.coeff(r13) * f.coeff(r23))
                            if not c:
                                continue
                            key = (q1 - r12 - r13, q2 + r12 - r23, q3 + r13 + r23)
                            if not t3.in_window(key):
                                continue
                            out[key] = out.get(key, Element.zero()) + g.scale(c)
    out = {k: v for k, v in out.items() if v}
    assert t3.entries == out


def test_table_json_roundtrip():
    from symgen.ring import parse_element

    t2 = family_table("schur", 2, 3)
    doc = t2.to_json()
    assert doc["arity"] == 2
    for item in doc["entries"]:
        elem = parse_element(item["element"])
        assert elem == extract(t2, tuple(item["lambda"]))
