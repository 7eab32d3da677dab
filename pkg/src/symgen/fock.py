"""Semi-infinite wedge space at desk scale and the boson-fermion dictionary.

A WedgeMonomial stores the charge m and the minimal head: the full index
sequence is head followed by the vacuum tail m - r, m - r - 1, ... where
r = len(head).  Canonical form requires head entries strictly decreasing,
the last one > m - r and different from m - r + 1 (else it belongs to the
tail pattern).

Dictionary: v_(m, lambda) has indices lambda_j + m - j + 1; the wedge
operator psi+_j on charge m corresponds to z Psi+_{j-m-1} and psi-_j to
z^{-1} Psi-_{j-m} on the symmetric function side (derived from the
u^{m+1} z and u^{-m} z^{-1} vertex normalizations).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .combinatorics import partitions_upto
from .operators import psi_minus_signed, psi_plus_signed
from .report import VerificationRecord


@dataclass(frozen=True)
class WedgeMonomial:
    charge: int
    head: tuple[int, ...] = ()

    def __post_init__(self):
        m, head = self.charge, self.head
        r = len(head)
        for a, b in zip(head, head[1:]):
            if a <= b:
                raise ValueError(f"head not strictly decreasing: {head}")
        if head:
            if head[-1] <= m - r:
                raise ValueError(f"head {head} collides with the charge-{m} tail")
            if head[-1] == m - r + 1:
                raise ValueError(f"head {head} not minimal for charge {m}")

    def index(self, pos: int) -> int:
        """1-based position -> wedge index."""
        if pos <= len(self.head):
            return self.head[pos - 1]
        return self.charge - pos + 1

    def occupied(self, k: int) -> bool:
        return k in self.head or k <= self.charge - len(self.head)

    def __str__(self):
        return f"m={self.charge}; head={','.join(map(str, self.head))}"


def _canonical(charge: int, head: list[int]) -> WedgeMonomial:
    while head and head[-1] == charge - len(head) + 1:
        head.pop()
    return WedgeMonomial(charge, tuple(head))


def vacuum(m: int) -> WedgeMonomial:
    return WedgeMonomial(m, ())


def wedge_psi_plus_mono(k: int, w: WedgeMonomial) -> tuple[int, Optional[WedgeMonomial]]:
    """Prepend v_k: (sign, monomial) or (0, None) if the slot is occupied."""
    if w.occupied(k):
        return 0, None
    m, head = w.charge, list(w.head)
    r = len(head)
    if k > m - r:
        pos = 0
        while pos < r and head[pos] > k:
            pos += 1
        head.insert(pos, k)
        return (-1) ** pos, _canonical(m + 1, head)
    # k sits strictly inside the tail region but is unoccupied only when
    # k > m - r, so this branch is unreachable for canonical monomials
    raise AssertionError("unoccupied index below the head region")


def wedge_psi_minus_mono(k: int, w: WedgeMonomial) -> tuple[int, Optional[WedgeMonomial]]:
    """Contract v_k: alternating sign from its position, or zero if absent."""
    if not w.occupied(k):
        return 0, None
    m, head = w.charge, list(w.head)
    r = len(head)
    if k in head:
        pos = head.index(k)  # 0-based
        del head[pos]
        return (-1) ** pos, _canonical(m - 1, head)
    # tail occupation: position q = m - k + 1 (1-based)
    q = m - k + 1
    new_head = head + list(range(m - r, k, -1))
    return (-1) ** (q - 1), _canonical(m - 1, new_head)


class FockVector:
    """Finite rational combination of wedge monomials (mixed charges allowed)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[WedgeMonomial, Fraction]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @staticmethod
    def monomial(w: WedgeMonomial, c=Fraction(1)) -> "FockVector":
        return FockVector({w: Fraction(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FockVector(out)

    def __eq__(self, other):
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def scale(self, c) -> "FockVector":
        c = Fraction(c)
        return FockVector({w: c * v for w, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        body = " + ".join(f"{c}*[{w}]" for w, c in sorted(
            self.terms.items(), key=lambda t: (t[0].charge, t[0].head)))
        return f"FockVector({body})"


def wedge_psi_plus(k: int, v: FockVector) -> FockVector:
    out: dict[WedgeMonomial, Fraction] = {}
    for w, c in v.terms.items():
        s, nw = wedge_psi_plus_mono(k, w)
        if s:
            prev = out.get(nw, Fraction(0)) + s * c
            if prev:
                out[nw] = prev
            else:
                out.pop(nw, None)
    return FockVector(out)


def wedge_psi_minus(k: int, v: FockVector) -> FockVector:
    out: dict[WedgeMonomial, Fraction] = {}
    for w, c in v.terms.items():
        s, nw = wedge_psi_minus_mono(k, w)
        if s:
            prev = out.get(nw, Fraction(0)) + s * c
            if prev:
                out[nw] = prev
            else:
                out.pop(nw, None)
    return FockVector(out)


# ---------------------------------------------------------------------------
# boson-fermion dictionary
# ---------------------------------------------------------------------------

def to_boson(w: WedgeMonomial) -> tuple[int, tuple[int, ...]]:
    """lambda_j = i_j - (m - j + 1); zero parts stripped."""
    lam = []
    for j in range(1, len(w.head) + 1):
        lam.append(w.head[j - 1] - (w.charge - j + 1))
    while lam and lam[-1] == 0:
        lam.pop()
    return w.charge, tuple(lam)


def from_boson(m: int, lam: tuple[int, ...]) -> WedgeMonomial:
    head = [lam[j - 1] + m - j + 1 for j in range(1, len(lam) + 1)]
    return _canonical(m, head)


def enumerate_monomials(max_weight: int, charges) -> Iterator[WedgeMonomial]:
    for m in charges:
        for lam in partitions_upto(max_weight):
            yield from_boson(m, lam)


def random_monomial(rng: random.Random, max_charge=2, max_weight=6) -> WedgeMonomial:
    m = rng.randint(-max_charge, max_charge)
    lam = []
    prev = rng.randint(0, max_weight)
    while prev > 0 and sum(lam) + prev <= max_weight:
        lam.append(prev)
        prev = rng.randint(0, prev)
    return from_boson(m, tuple(lam))


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_clifford(seed: int = 0, count: int = 50, kmin: int = -6,
                   kmax: int = 8) -> VerificationRecord:
    """psi+-psi+- anticommutators on seeded random monomials."""
    rng = random.Random(seed)
    rec = VerificationRecord("fock-clifford",
                             {"seed": seed, "count": count,
                              "window": [kmin, kmax]})
    monos = [random_monomial(rng) for _ in range(count)]
    for w in monos:
        v = FockVector.monomial(w)
        for k in range(kmin, kmax + 1):
            for m in range(kmin, kmax + 1):
                pp = wedge_psi_plus(k, wedge_psi_plus(m, v)) + \
                    wedge_psi_plus(m, wedge_psi_plus(k, v))
                rec.check(not pp, relation="++", k=k, m=m, w=w)
                mm = wedge_psi_minus(k, wedge_psi_minus(m, v)) + \
                    wedge_psi_minus(m, wedge_psi_minus(k, v))
                rec.check(not mm, relation="--", k=k, m=m, w=w)
                pm = wedge_psi_plus(k, wedge_psi_minus(m, v)) + \
                    wedge_psi_minus(m, wedge_psi_plus(k, v))
                want = v if k == m else FockVector()
                rec.check(pm == want, relation="+-", k=k, m=m, w=w)
    return rec


def check_bf(N: int, M: int, jmin: int = -4, jmax: int = 6) -> VerificationRecord:
    """Intertwining of the wedge operators with the vertex operator action.

    psi+_j on charge m matches Psi+_{j-m-1} with charge shift +1;
    psi-_j matches Psi-_{j-m} with charge shift -1, signs included.
    """
    rec = VerificationRecord("fock-bf", {"N": N, "M": M, "window": [jmin, jmax]})
    for m in range(-M, M + 1):
        for lam in partitions_upto(N):
            w = from_boson(m, lam)
            for j in range(jmin, jmax + 1):
                s, nw = wedge_psi_plus_mono(j, w)
                fock_side = (s, to_boson(nw)) if s else (0, None)
                sign, part = psi_plus_signed(j - m - 1, lam)
                bose_side = (sign, (m + 1, part)) if sign else (0, None)
                rec.check(fock_side == bose_side, op="+", m=m, lam=lam, j=j,
                          fock=fock_side, bose=bose_side)

                s, nw = wedge_psi_minus_mono(j, w)
                fock_side = (s, to_boson(nw)) if s else (0, None)
                sign, part = psi_minus_signed(j - m, lam)
                bose_side = (sign, (m - 1, part)) if sign else (0, None)
                rec.check(fock_side == bose_side, op="-", m=m, lam=lam, j=j,
                          fock=fock_side, bose=bose_side)
    return rec
