import random
from fractions import Fraction

import pytest

from symgen.fock import (
    FockVector,
    WedgeMonomial,
    check_bf,
    check_clifford,
    from_boson,
    to_boson,
    vacuum,
    wedge_psi_minus,
    wedge_psi_minus_mono,
    wedge_psi_plus,
    wedge_psi_plus_mono,
    random_monomial,
)


def test_monomial_validation():
    WedgeMonomial(0, (3, 1))
    with pytest.raises(ValueError):
        WedgeMonomial(0, (1, 3))
    with pytest.raises(ValueError):
        WedgeMonomial(0, (0,))  # equals the vacuum value at position 1, not minimal
    with pytest.raises(ValueError):
        WedgeMonomial(0, (3, -2))  # collides with the tail


def test_psi_plus_examples():
    s, w = wedge_psi_plus_mono(0, vacuum(0))
    assert s == 0 and w is None
    s, w = wedge_psi_plus_mono(2, vacuum(0))
    assert s == 1 and w.charge == 1 and w.head == (2,)
    assert to_boson(w) == (1, (1,))


def test_psi_minus_examples():
    # removing the top slot of the vacuum gives the next vacuum
    s, w = wedge_psi_minus_mono(0, vacuum(0))
    assert s == 1 and w == vacuum(-1)
    s, w = wedge_psi_minus_mono(5, vacuum(0))
    assert s == 0 and w is None
    # deeper tail removal: psi-_{-1} |0> = -(v_0 ^ v_-2 ^ ...)
    s, w = wedge_psi_minus_mono(-1, vacuum(0))
    assert s == -1 and w.charge == -1 and w.head == (0,)
    assert to_boson(w) == (-1, (1,))


def test_boson_roundtrip():
    from symgen.combinatorics import partitions_upto

    assert to_boson(vacuum(3)) == (3, ())
    for m in range(-2, 3):
        for lam in partitions_upto(6):
            w = from_boson(m, lam)
            assert to_boson(w) == (m, lam)


def test_charge_shift():
    rng = random.Random(3)
    for _ in range(30):
        w = random_monomial(rng)
        for k in range(-6, 8):
            s, nw = wedge_psi_plus_mono(k, w)
            if s:
                assert nw.charge == w.charge + 1
            s, nw = wedge_psi_minus_mono(k, w)
            if s:
                assert nw.charge == w.charge - 1


def test_clifford_relations():
    rec = check_clifford(seed=11, count=25, kmin=-5, kmax=6)
    assert rec.passed, rec.failures[:3]


def test_psi_squared_vanishes():
    rng = random.Random(7)
    for _ in range(50):
        w = random_monomial(rng)
        v = FockVector.monomial(w)
        k = rng.randint(-6, 8)
        assert not wedge_psi_plus(k, wedge_psi_plus(k, v))
        assert not wedge_psi_minus(k, wedge_psi_minus(k, v))


def test_bf_examples():
    # psi+_1 |0> corresponds to z Psi+_0(1) = z s_()
    s, w = wedge_psi_plus_mono(1, vacuum(0))
    assert s == 1 and to_boson(w) == (1, ())
    # psi+_0 |0> = 0 and Psi+_{-1}(1) = s_(-1) = 0
    s, w = wedge_psi_plus_mono(0, vacuum(0))
    assert s == 0


def test_check_bf_small():
    rec = check_bf(3, 1, jmin=-3, jmax=4)
    assert rec.passed, rec.failures[:4]
