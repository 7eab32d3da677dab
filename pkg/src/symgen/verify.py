"""Named verification suites driving every identity checker in the package.

Each suite returns a VerificationRecord; `run_all` aggregates them.  All
random sampling is seeded, and the seed is recorded in the parameters.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import fock, operators, shifted
from .combinatorics import (
    conjugate,
    partitions_upto,
    straighten,
    strict_partitions_upto,
)
from .families import (
    b_lambda,
    det,
    eval_element,
    eval_generators,
    family_table,
    hl_P,
    pfaffian,
    schur_bialternant,
    schur_e,
    schur_h,
    schurq,
)
from .report import VerificationRecord
from .ring import Element
from .scalars import T
from .series import extract


def _distinct_rationals(rng: random.Random, n: int, lo=1, hi=60) -> list[Fraction]:
    xs: list[Fraction] = []
    while len(xs) < n:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, 7))
        if x not in xs:
            xs.append(x)
    return xs


def suite_jacobi_trudi(seed: int = 0, N: int = 8, l: int = 3) -> VerificationRecord:
    """Window sweep of the f = 1-x table plus the h/e/bialternant triangle."""
    rec = VerificationRecord("jacobi-trudi", {"seed": seed, "N": N, "l": l})
    table = family_table("schur", l, N)
    ranges = [range(-N, N + 1)] * l

    def sweep(prefix):
        if len(prefix) == l:
            if not table.in_window(prefix):
                return
            res = straighten(prefix)
            got = table.entries.get(prefix, Element.zero())
            want = schur_h(res.partition).scale(res.sign) if not res.is_zero \
                else Element.zero()
            rec.check(got == want, lam=prefix, got=got, want=want)
            return
        for a in ranges[len(prefix)]:
            sweep(prefix + (a,))

    sweep(())

    rng = random.Random(seed)
    xs = _distinct_rationals(rng, 4)
    hv = eval_generators("h", xs, 12)
    ev = eval_generators("e", xs, 12)
    for lam in partitions_upto(6, max_length=4):
        want = schur_bialternant(lam, xs)
        okh = eval_element(schur_h(lam), hv) == want
        oke = eval_element(schur_e(lam), ev) == want
        rec.check(okh and oke, lam=lam, oracle="bialternant")
    return rec


def suite_r_conjugate(seed: int = 0, N: int = 8, lmax: int = 3) -> VerificationRecord:
    """R_lambda = (-1)^{|lambda|} s_{lambda'} on partitions |lambda| <= N."""
    rec = VerificationRecord("r-conjugate", {"N": N, "lmax": lmax})
    for l in range(1, lmax + 1):
        table = family_table("schur", l, N, lows=[0] * l, degree_bound=N, side="R")
        for lam in partitions_upto(N, max_length=l):
            key = tuple(lam) + (0,) * (l - len(lam))
            want = schur_h(conjugate(lam)).scale((-1) ** sum(lam))
            rec.check(extract(table, key) == want, l=l, lam=lam)
    return rec


def suite_pfaffian(seed: int = 0, count: int = 30) -> VerificationRecord:
    """Pf(A)^2 = det(A) on seeded random skew matrices up to 6x6."""
    rng = random.Random(seed)
    rec = VerificationRecord("pfaffian", {"seed": seed, "count": count})
    for i in range(count):
        size = rng.choice([4, 4, 6])
        mat = [[Fraction(0)] * size for _ in range(size)]
        for r in range(size):
            for c in range(r + 1, size):
                v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                mat[r][c] = v
                mat[c][r] = -v
        rec.check(pfaffian(mat) ** 2 == det(mat), instance=i, size=size)
    return rec


def suite_schur_q_coherence(seed: int = 0, N: int = 8) -> VerificationRecord:
    """schurq == table coefficients; Q(u)Q(-u) = 1 evaluation relations."""
    rec = VerificationRecord("schur-q-coherence", {"seed": seed, "N": N})
    tables = {2: family_table("schur-q", 2, N, lows=[0, 0], degree_bound=N),
              4: family_table("schur-q", 4, N, lows=[0] * 4, degree_bound=N)}
    for lam in strict_partitions_upto(N):
        if not lam:
            continue
        arity = 2 if len(lam) <= 2 else 4
        if len(lam) > 4:
            continue
        key = tuple(lam) + (0,) * (arity - len(lam))
        rec.check(extract(tables[arity], key) == schurq(lam), lam=lam)

    rng = random.Random(seed)
    for n in range(1, 5):
        xs = _distinct_rationals(rng, n)
        vals = eval_generators("schur-q", xs, 10)
        for m in range(1, 6):
            acc = Fraction(0)
            for i in range(0, 2 * m + 1):
                j = 2 * m - i
                qi = vals[("Q", i)] if i else Fraction(1)
                qj = vals[("Q", j)] if j else Fraction(1)
                acc += (-1) ** i * qi * qj
            rec.check(acc == 0, relation="QuQ-u", n=n, m=m)
    return rec


def suite_hall_littlewood(seed: int = 0, N: int = 6) -> VerificationRecord:
    """t = 0 and t = -1 table reductions plus the b_lambda * P_lambda oracle."""
    rec = VerificationRecord("hall-littlewood", {"seed": seed, "N": N})
    hl = family_table("hall-littlewood", 2, N, lows=[0, 0], degree_bound=N)
    sch = family_table("schur", 2, N, lows=[0, 0], degree_bound=N)
    sq = family_table("schur-q", 2, N, lows=[0, 0], degree_bound=N)
    keys = set(hl.keys()) | set(sch.keys()) | set(sq.keys())
    for key in sorted(keys):
        at0 = hl.entries.get(key, Element.zero()).at_t(Fraction(0))
        ok0 = at0.rename_family("Q", "h") == sch.entries.get(key, Element.zero())
        at1 = hl.entries.get(key, Element.zero()).at_t(Fraction(-1))
        ok1 = at1 == sq.entries.get(key, Element.zero())
        rec.check(ok0, reduction="t=0", key=key)
        rec.check(ok1, reduction="t=-1", key=key)

    rng = random.Random(seed + 1)
    n = 5
    for lam in partitions_upto(5, max_length=2):
        if not lam:
            continue
        key = tuple(lam) + (0,) * (2 - len(lam))
        coeff = hl.entries.get(key, Element.zero())
        for _ in range(5):
            xs = _distinct_rationals(rng, n)
            t = Fraction(rng.randint(-6, 6), rng.choice([2, 3, 5, 7]))
            vals = eval_generators("hall-littlewood", xs, N + 2, t=t)
            got = eval_element(coeff, vals, t=t)
            want = b_lambda(lam, t) * hl_P(lam, xs, t)
            rec.check(got == want, lam=lam, t=t, oracle="hl_P")
    return rec


def suite_fermion(seed: int = 0, N: int = 6, W: int = 3) -> VerificationRecord:
    return operators.check_fermion(N, W)


def suite_twisted(seed: int = 0, N: int = 5, W: int = 3) -> VerificationRecord:
    return operators.check_twisted([Fraction(1), -T], N, W)


def suite_normal_order(seed: int = 0, N: int = 6, lmax: int = 2) -> VerificationRecord:
    rec = VerificationRecord("normal-order", {"N": N, "lmax": lmax})
    for tag in ("schur", "schur-q", "hall-littlewood"):
        rec.merge(operators.normal_order_check(tag, lmax, N))
    return rec


def suite_qstar_inverse(seed: int = 0, K: int = 8) -> VerificationRecord:
    """Q*(u) R*(u) = 1 through 1/u^K and the cross-presentation oracle."""
    rec = VerificationRecord("qstar-inverse", {"seed": seed, "K": K})
    conv = shifted.estar_in_hstar(K)
    q = shifted.qstar_series(K).to_inv_u(K)
    rsub = shifted.FallingSeries(
        "rising", K, {k: conv[k].scale((-1) ** k) for k in range(K + 1)}).to_inv_u(K)
    prod = q.mul(rsub)
    rec.check(prod == shifted.InvU(K, {0: Element.one()}), identity="Q*R*=1")

    convh = shifted.hstar_in_estar(K)
    rng = random.Random(seed)
    xs = _distinct_rationals(rng, 5)
    ev = shifted.estar_values(xs, K)
    hv = shifted.hstar_values(xs, K)
    for k in range(1, K + 1):
        rec.check(shifted.eval_shifted(conv[k], xs) == ev[("es", k)],
                  presentation="e-in-h", k=k)
        rec.check(shifted.eval_shifted(convh[k], xs) == hv[("hs", k)],
                  presentation="h-in-e", k=k)
    return rec


def suite_shifted_gen(seed: int = 0, K: int = 6, l: int = 2) -> VerificationRecord:
    """Multivariate shifted tables against the shifted Jacobi-Trudi forms."""
    rec = VerificationRecord("shifted-gen", {"K": K, "l": l})
    qt = shifted.qstar_multivar(l, K)
    rt = shifted.rstar_multivar(l, K)
    for lam in partitions_upto(K, max_length=l):
        key = tuple(lam) + (0,) * (l - len(lam))
        rec.check(qt.coeff(key) == shifted.shifted_schur(lam), side="Q", lam=lam)
        want = shifted.shifted_schur(conjugate(lam)).scale((-1) ** sum(lam))
        got = shifted.to_hstar(rt.coeff(key))
        rec.check(got == want, side="R", lam=lam)
    # straightening behavior on non-partition vectors inside the window
    for key in [(1, 3), (0, 2), (-1, 1), (2, 5), (1, 1)]:
        res = straighten(key)
        want = shifted.shifted_schur(res.partition).scale(res.sign) \
            if not res.is_zero else Element.zero()
        rec.check(qt.coeff(key) == want, side="Q-straighten", key=key)
    return rec


def suite_shifted_relations(seed: int = 0, K: int = 5, W: int = 3,
                            lmax: int = 2) -> VerificationRecord:
    """tau powers, DR*/DQ* worked examples, Psi* relations, decomposition."""
    rec = VerificationRecord("shifted-relations",
                             {"K": K, "W": W, "lmax": lmax})
    # tau^a binomial formula equals iterated single steps
    for k in range(1, 9):
        for a in range(1, 5):
            iterated = shifted.hs(k)
            for _ in range(a):
                iterated = shifted.tau_apply(1, iterated)
            rec.check(shifted.tau_gen(a, "hs", k) == iterated, tau=(a, k))

    # adjoint-operator actions on generators and two-factor monomials
    A = lambda k: shifted.hs(k) + (k - 2) * shifted.hs(k - 1)
    B = lambda k: shifted.es(k) + (k - 2) * shifted.es(k - 1)
    for k in range(1, 7):
        rec.check(shifted.drstar_apply(0, shifted.hs(k)) == A(k), op="DR*0", k=k)
        rec.check(shifted.drstar_apply(1, shifted.hs(k)) == -shifted.hs(k - 1),
                  op="DR*1", k=k)
        rec.check(not shifted.drstar_apply(2, shifted.hs(k)), op="DR*2", k=k)
        rec.check(shifted.dqstar_apply(0, shifted.es(k)) == B(k), op="DQ*0", k=k)
        rec.check(shifted.dqstar_apply(1, shifted.es(k)) == shifted.es(k - 1),
                  op="DQ*1", k=k)
        rec.check(not shifted.dqstar_apply(2, shifted.es(k)), op="DQ*2", k=k)
    for (a, b) in [(4, 3), (5, 2), (3, 3)]:
        x = shifted.hs(a) * shifted.hs(b)
        rec.check(shifted.drstar_apply(0, x) == A(a) * A(b), op="DR*0-mono")
        want1 = -(shifted.hs(a - 1) * A(b) + A(a) * shifted.hs(b - 1)) \
            + shifted.hs(a - 1) * shifted.hs(b - 1)
        rec.check(shifted.drstar_apply(1, x) == want1, op="DR*1-mono")
        rec.check(shifted.drstar_apply(2, x) ==
                  shifted.hs(a - 1) * shifted.hs(b - 1), op="DR*2-mono")
        for m in (3, 4):
            rec.check(not shifted.drstar_apply(m, x), op="DR*m-mono", m=m)

    rec.merge(shifted.check_shifted(K, W, lmax=lmax))
    return rec


def suite_lem2(seed: int = 0, samples: int = 20, lmax: int = 4) -> VerificationRecord:
    rec = VerificationRecord("lem2", {"seed": seed, "samples": samples,
                                      "lmax": lmax})
    rng = random.Random(seed)
    for l in range(1, lmax + 1):
        pts = []
        for _ in range(samples):
            us = []
            while len(us) < l:
                u = rng.randint(l + 10, l + 60) + Fraction(rng.randint(1, 6), 7)
                if u not in us:
                    us.append(u)
            pts.append(us)
        rec.merge(shifted.lem2_check(l, pts))
    return rec


def suite_fock(seed: int = 0, N: int = 6, M: int = 2) -> VerificationRecord:
    rec = VerificationRecord("fock", {"seed": seed, "N": N, "M": M})
    rec.merge(fock.check_clifford(seed=seed, count=50, kmin=-6, kmax=8))
    rec.merge(fock.check_bf(N, M, jmin=-4, jmax=6))
    return rec


SUITES = {
    "jacobi-trudi": suite_jacobi_trudi,
    "r-conjugate": suite_r_conjugate,
    "pfaffian": suite_pfaffian,
    "schur-q-coherence": suite_schur_q_coherence,
    "hall-littlewood": suite_hall_littlewood,
    "fermion": suite_fermion,
    "twisted": suite_twisted,
    "normal-order": suite_normal_order,
    "qstar-inverse": suite_qstar_inverse,
    "shifted-gen": suite_shifted_gen,
    "shifted-relations": suite_shifted_relations,
    "lem2": suite_lem2,
    "fock": suite_fock,
}


def _thread_count() -> int:
    raw = os.environ.get("SYMGEN_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(name: str, seed: int = 0, **params) -> VerificationRecord:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    t0 = time.time()
    rec = SUITES[name](seed=seed, **params)
    rec.params.setdefault("seed", seed)
    rec.params["elapsed_s"] = round(time.time() - t0, 3)
    return rec


def run_all(seed: int = 0) -> list[VerificationRecord]:
    """Run every suite; SYMGEN_THREADS caps the worker pool (default 1)."""
    names = list(SUITES)
    workers = min(_thread_count(), len(names))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            recs = list(pool.map(lambda n: run_suite(n, seed=seed), names))
    else:
        recs = [run_suite(n, seed=seed) for n in names]
    return recs
