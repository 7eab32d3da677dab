import random
from fractions import Fraction

import pytest

from symgen.combinatorics import partitions_upto
from symgen.families import schur_h
from symgen.operators import (
    OperatorContext,
    check_fermion,
    check_twisted,
    normal_order_check,
    psi_minus_basis,
    psi_plus_basis,
    reorder_rhs,
)
from symgen.ring import Element
from symgen.scalars import T


def h(k):
    return Element.gen("h", k)


def e(k):
    return Element.gen("e", k)


def Q(k):
    return Element.gen("Q", k)


def test_schur_dr_dq_on_generators():
    ctx = OperatorContext("schur")
    assert ctx.dr_apply(1, h(4)) == -h(3)
    assert ctx.dr_apply(2, h(4)) == Element.zero()
    assert ctx.dr_apply(0, h(4)) == h(4)
    # f^{-1} = 1/(1-x): every DQ_m shifts the index down by m
    assert ctx.dq_apply(2, h(5)) == h(3)
    assert ctx.dq_apply(3, h(2)) == Element.zero()


def test_schur_dq_on_elementary():
    # DQ_1(e_k) = e_{k-1}, with e_k = (-1)^k R_k expressed in h-generators
    ctx = OperatorContext("schur")
    for k in range(1, 7):
        ek = ctx.rgen(k).scale((-1) ** k)
        ek1 = ctx.rgen(k - 1).scale((-1) ** (k - 1))
        assert ctx.dq_apply(1, ek) == ek1
        assert ctx.dq_apply(k + 1, ek) == Element.zero()


def test_dr_dq_mutually_inverse():
    # DQ(u) o DR(u) = Id through order u^-6 on random elements
    rng = random.Random(17)
    ctx = OperatorContext("schur")

    def rand_elem():
        acc = Element.zero()
        for _ in range(rng.randint(1, 4)):
            mono = Element.one()
            for _ in range(rng.randint(0, 3)):
                mono = mono * h(rng.randint(1, 5))
            acc = acc + mono.scale(rng.randint(-3, 3))
        return acc

    for _ in range(20):
        x = rand_elem()
        for n in range(0, 7):
            acc = Element.zero()
            for m in range(n + 1):
                acc = acc + ctx.dq_apply(n - m, ctx.dr_apply(m, x))
            assert acc == (x if n == 0 else Element.zero())


def test_psi_plus_basis_examples():
    assert psi_plus_basis(3, ()) == h(3)
    assert psi_plus_basis(1, (2,)) == Element.zero()
    assert psi_plus_basis(1, (3,)) == -(h(2) ** 2 - h(1) * h(3))


def test_psi_minus_basis_examples():
    assert psi_minus_basis(0, ()) == Element.one()
    # Psi-_{-2} on the vacuum gives s_(1,1) with sign (+1)
    assert psi_minus_basis(-2, ()) == h(1) ** 2 - h(2)
    assert psi_minus_basis(1, ()) == Element.zero()
    assert psi_minus_basis(-1, ()) == -h(1)


def test_decomposition_matches_basis_route():
    # Psi+- computed via the normally ordered decomposition agree with the
    # straightening action on every s_lambda, |lambda| <= 6
    ctx = OperatorContext("schur")
    for lam in partitions_upto(6):
        s = schur_h(lam)
        for k in range(-3, 7):
            assert ctx.psi_plus(k, s) == psi_plus_basis(k, lam), (k, lam)
        for j in range(-6, 4):
            assert ctx.psi_minus(j, s) == psi_minus_basis(j, lam), (j, lam)


def test_vertex_plus_on_unit_is_generating_series():
    ctx = OperatorContext("schur-q")
    out = ctx.vertex_plus(Element.one(), -3, 5)
    assert set(out) == set(range(0, 6))
    for k in range(0, 6):
        assert out[k] == Q(k)


def test_mixed_anticommutator_on_vacuum():
    # Psi-_k Psi+_l + Psi+_{l+1} Psi-_{k+1} = delta_{k,l} on the vacuum
    for k in range(-3, 4):
        for l in range(-3, 4):
            first = psi_minus_and_then(k, psi_plus_basis(l, ()))
            second = psi_plus_and_then(l + 1, psi_minus_basis(k + 1, ()))
            total = first + second
            assert total == (Element.one() if k == l else Element.zero()), (k, l)


def psi_minus_and_then(j, elem):
    ctx = OperatorContext("schur")
    return ctx.psi_minus(j, elem)


def psi_plus_and_then(k, elem):
    ctx = OperatorContext("schur")
    return ctx.psi_plus(k, elem)


def test_check_fermion_small():
    rec = check_fermion(0, 0)
    assert rec.passed and rec.instances == 3
    rec = check_fermion(4, 2)
    assert rec.passed, rec.failures[:2]


def test_reordering_identities():
    # (r11)-(r14) coefficient-wise on 1 and the degree-2 generator
    for tag in ("schur", "schur-q", "hall-littlewood"):
        ctx = OperatorContext(tag)
        xs = [Element.one(), ctx.gen(2)]
        for x in xs:
            for a in range(-3, 4):
                for b in range(-3, 4):
                    lhs = ctx.psi_plus(a, ctx.psi_plus(b, x))
                    assert lhs == reorder_rhs(ctx, "++", a, b, x), (tag, a, b)
                    lhs = ctx.psi_minus(-a, ctx.psi_minus(-b, x))
                    assert lhs == reorder_rhs(ctx, "--", a, b, x), (tag, a, b)
                    lhs = ctx.psi_plus(a, ctx.psi_minus(-b, x))
                    assert lhs == reorder_rhs(ctx, "+-", a, b, x), (tag, a, b)
                    lhs = ctx.psi_minus(-b, ctx.psi_plus(a, x))
                    assert lhs == reorder_rhs(ctx, "-+", a, b, x), (tag, a, b)


def test_check_twisted_trivial_p():
    rec = check_twisted([Fraction(1)], 3, 2)
    assert rec.passed, rec.failures[:2]


def test_check_twisted_hall_littlewood_small():
    rec = check_twisted([Fraction(1), -T], 3, 2)
    assert rec.passed, rec.failures[:2]


def test_twisted_requires_unit_constant():
    with pytest.raises(ValueError):
        check_twisted([Fraction(2), T], 2, 1)


@pytest.mark.parametrize("tag", ["schur", "schur-q", "hall-littlewood"])
def test_normal_order_small(tag):
    rec = normal_order_check(tag, 1, 3)
    assert rec.passed, rec.failures[:2]
