"""Closed forms (Jacobi-Trudi determinants, Pfaffians) and n-variable oracles.

Family tags and their correlation factors:
    schur            f = 1 - x            generators h[k], scalars Q
    schur-q          f = (1-x)/(1+x)      generators Q[k], scalars Q
    hall-littlewood  f = (1-x)/(1-t*x)    generators Q[k], scalars Q[t]
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import as_partition, conjugate, is_strict
from .ring import Element, GenRef
from .scalars import Scalar, TPoly, frac, scalar_at_t
from .series import CoeffTable, TruncatedSeries, correlation_expand, invert

FAMILY_TAGS = ("schur", "schur-q", "hall-littlewood")

_GEN_FAMILY = {"schur": "h", "schur-q": "Q", "hall-littlewood": "Q"}


def generator_family(tag: str) -> str:
    return _GEN_FAMILY[tag]


def correlation_coeff(tag: str, r: int) -> Scalar:
    """r-th coefficient of the family's correlation factor f."""
    if r == 0:
        return Fraction(1)
    if tag == "schur":
        return Fraction(-1) if r == 1 else Fraction(0)
    if tag == "schur-q":
        return Fraction(2 if r % 2 == 0 else -2)
    if tag == "hall-littlewood":
        # (1-x)/(1-tx) = 1 + sum_{r>=1} (t^r - t^{r-1}) x^r
        return TPoly([0] * (r - 1) + [-1, 1])
    raise ValueError(f"unknown family tag {tag!r}")


def correlation_function(tag: str, N: int) -> TruncatedSeries:
    """Truncated expansion of the family's correlation factor."""
    return TruncatedSeries(N, {r: correlation_coeff(tag, r) for r in range(N + 1)})


def generator_series(family: str, N: int) -> TruncatedSeries:
    """The one-variable generating series sum_k gen_k u^k, gen_0 = 1."""
    coeffs = {0: Element.one()}
    for k in range(1, N + 1):
        coeffs[k] = Element.gen(family, k)
    return TruncatedSeries(N, coeffs)


def family_table(tag: str, l: int, N: int, lows: Optional[Sequence[int]] = None,
                 degree_bound: Optional[int] = None,
                 side: str = "Q") -> CoeffTable:
    """Correlation table for a named family; side "R" uses the inverse series."""
    if l < 1:
        raise ValueError("arity must be >= 1")
    D = l * N if degree_bound is None else degree_bound
    ext = 0
    for _ in range(l - 1):
        ext = ext + min(N + ext, D)
    order = min(N + ext, D)
    f = correlation_function(tag, order)
    gens = generator_series(_GEN_FAMILY[tag], order)
    if side == "R":
        gens = invert(gens)
    elif side != "Q":
        raise ValueError("side must be 'Q' or 'R'")
    return correlation_expand(f, gens, l, N, lows=lows, degree_bound=D)


# ---------------------------------------------------------------------------
# determinants and Pfaffians over an arbitrary commutative ring
# ---------------------------------------------------------------------------

def det(matrix: Sequence[Sequence]) -> object:
    """Determinant by expansion along rows, memoized over column subsets."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    cache: dict[int, object] = {}

    def minor(cols: int):
        if cols == 0:
            return Fraction(1)
        got = cache.get(cols)
        if got is not None:
            return got
        row = n - bin(cols).count("1")
        acc = None
        sign = 1
        for j in range(n):
            if not cols & (1 << j):
                continue
            a = matrix[row][j]
            if a:
                term = a * minor(cols & ~(1 << j))
                term = term if sign > 0 else -term
                acc = term if acc is None else acc + term
            sign = -sign
        if acc is None:
            acc = Fraction(0)
        cache[cols] = acc
        return acc

    return minor((1 << n) - 1)


def pfaffian(matrix: Sequence[Sequence]) -> object:
    """Pfaffian of an even skew-symmetric matrix (signed matching sum)."""
    n = len(matrix)
    if n % 2 != 0:
        raise ValueError("Pfaffian needs even size")
    for i in range(n):
        if len(matrix[i]) != n:
            raise ValueError("matrix must be square")
        if matrix[i][i]:
            raise ValueError("diagonal must vanish")
        for j in range(i + 1, n):
            if matrix[i][j] != -matrix[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    if n == 0:
        return Fraction(1)
    cache: dict[int, object] = {}

    def rec(mask: int):
        if mask == 0:
            return Fraction(1)
        got = cache.get(mask)
        if got is not None:
            return got
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        acc = None
        sign = 1
        j = i + 1
        while j < n:
            if rest & (1 << j):
                a = matrix[i][j]
                if a:
                    term = a * rec(rest & ~(1 << j))
                    term = term if sign > 0 else -term
                    acc = term if acc is None else acc + term
                sign = -sign
            j += 1
        if acc is None:
            acc = Fraction(0)
        cache[mask] = acc
        return acc

    return rec((1 << n) - 1)


# ---------------------------------------------------------------------------
# Jacobi-Trudi closed forms
# ---------------------------------------------------------------------------

def schur_h(alpha: Sequence[int]) -> Element:
    """det[h_{alpha_i - i + j}] for any integer vector alpha."""
    a = tuple(alpha)
    l = len(a)
    if l == 0:
        return Element.one()
    m = [[Element.gen("h", a[i] - (i + 1) + (j + 1)) for j in range(l)]
         for i in range(l)]
    return det(m)


def schur_e(lam: Sequence[int]) -> Element:
    """det[e_{lam'_i - i + j}] over the conjugate partition."""
    lam = as_partition(lam)
    lp = conjugate(lam)
    l = len(lp)
    if l == 0:
        return Element.one()
    m = [[Element.gen("e", lp[i] - (i + 1) + (j + 1)) for j in range(l)]
         for i in range(l)]
    return det(m)


def two_row_q(m: int, n: int) -> Element:
    """Q_(m,n) = Q_m Q_n + 2 sum_{s=1}^{n} (-1)^s Q_{m+s} Q_{n-s}."""
    acc = Element.gen("Q", m) * Element.gen("Q", n)
    for s in range(1, n + 1):
        term = Element.gen("Q", m + s) * Element.gen("Q", n - s)
        acc = acc + term.scale(Fraction(2 if s % 2 == 0 else -2))
    return acc


def schurq(lam: Sequence[int]) -> Element:
    """Pfaffian closed form of a Schur Q-function at a strict partition."""
    lam = as_partition(lam)
    if not is_strict(lam):
        raise ValueError(f"schurq requires a strict partition, got {lam}")
    if not lam:
        return Element.one()
    parts = list(lam)
    if len(parts) % 2 == 1:
        parts.append(0)
    n = len(parts)
    mat = [[Element.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q = two_row_q(parts[i], parts[j])
            mat[i][j] = q
            mat[j][i] = -q
    return pfaffian(mat)


# ---------------------------------------------------------------------------
# n-variable evaluation oracles
# ---------------------------------------------------------------------------

def _poly_mul_trunc(a: list[Fraction], b: list[Fraction], K: int) -> list[Fraction]:
    out = [Fraction(0)] * (K + 1)
    for i, x in enumerate(a):
        if not x or i > K:
            continue
        for j, y in enumerate(b):
            if i + j > K:
                break
            if y:
                out[i + j] += x * y
    return out


def _h_values(xs: Sequence[Fraction], K: int) -> list[Fraction]:
    acc = [Fraction(1)] + [Fraction(0)] * K
    for x in xs:
        geo = [x ** k for k in range(K + 1)]
        acc = _poly_mul_trunc(acc, geo, K)
    return acc


def _e_values(xs: Sequence[Fraction], K: int) -> list[Fraction]:
    acc = [Fraction(1)] + [Fraction(0)] * K
    for x in xs:
        acc = _poly_mul_trunc(acc, [Fraction(1), x], K)
    return acc


def eval_generators(tag: str, xs: Sequence, K: int,
                    t: Optional[Fraction] = None) -> dict[GenRef, Fraction]:
    """Values of the family generators at the point (x_1..x_n), index <= K.

    tag is one of "h", "e", "p", "schur-q", "hall-littlewood"; the result
    maps generator refs of the appropriate family to exact rationals.
    """
    xs = [frac(x) for x in xs]
    if tag == "h":
        vals = _h_values(xs, K)
        return {("h", k): vals[k] for k in range(1, K + 1)}
    if tag == "e":
        vals = _e_values(xs, K)
        return {("e", k): vals[k] for k in range(1, K + 1)}
    if tag == "p":
        return {("p", k): sum((x ** k for x in xs), Fraction(0))
                for k in range(1, K + 1)}
    if tag == "schur-q":
        # prod (1 + x u)/(1 - x u)
        acc = [Fraction(1)] + [Fraction(0)] * K
        for x in xs:
            fac = [Fraction(1)] + [2 * x ** k for k in range(1, K + 1)]
            acc = _poly_mul_trunc(acc, fac, K)
        return {("Q", k): acc[k] for k in range(1, K + 1)}
    if tag == "hall-littlewood":
        if t is None:
            raise ValueError("hall-littlewood evaluation requires t")
        t = frac(t)
        # H(u) E(-t u)
        hv = _h_values(xs, K)
        ev = _e_values(xs, K)
        out = {}
        for k in range(1, K + 1):
            out[("Q", k)] = sum((hv[k - j] * ev[j] * (-t) ** j
                                 for j in range(k + 1)), Fraction(0))
        return out
    raise ValueError(f"unknown generator tag {tag!r}")


def eval_element(a: Element, values: dict[GenRef, Fraction],
                 t: Optional[Fraction] = None) -> Fraction:
    """Ring-homomorphic substitution of generator values."""
    total = Fraction(0)
    for mono, coeff in a.terms():
        term = scalar_at_t(coeff, t)
        for g, e in mono:
            v = values.get(g)
            if v is None:
                raise KeyError(f"no value supplied for generator {g[0]}[{g[1]}]")
            term *= v ** e
        total += term
    return total


def _det_fractions(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination with pivoting."""
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    detv = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            detv = -detv
        detv *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return detv


def schur_bialternant(lam: Sequence[int], xs: Sequence) -> Fraction:
    """det[x_i^(lam_j + n - j)] / det[x_i^(n - j)] at pairwise distinct points."""
    lam = as_partition(lam)
    xs = [frac(x) for x in xs]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("evaluation points must be pairwise distinct")
    if len(lam) > n:
        raise ValueError("partition has more parts than variables")
    full = list(lam) + [0] * (n - len(lam))
    num = [[x ** (full[j] + n - (j + 1)) for j in range(n)] for x in xs]
    den = [[x ** (n - (j + 1)) for j in range(n)] for x in xs]
    return _det_fractions(num) / _det_fractions(den)


def part_multiplicities(lam: tuple[int, ...], n: int) -> dict[int, int]:
    """m(i) for i >= 0, counting zero parts up to length n."""
    mult: dict[int, int] = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    if n > len(lam):
        mult[0] = n - len(lam)
    return mult


def b_lambda(lam: Sequence[int], t: Fraction) -> Fraction:
    """b_lambda(t) = prod_{i>=1} prod_{j=1}^{m(i)} (1 - t^j)."""
    lam = as_partition(lam)
    t = frac(t)
    acc = Fraction(1)
    for part, m in part_multiplicities(lam, len(lam)).items():
        if part == 0:
            continue
        for j in range(1, m + 1):
            acc *= 1 - t ** j
    return acc


def hl_P(lam: Sequence[int], xs: Sequence, t) -> Fraction:
    """Hall-Littlewood P_lambda by symmetrization over S_n.

    Full-group sum of sigma(x^lambda prod_{lam_i > lam_j} (x_i - t x_j)
    / (x_i - x_j)), normalized by the stabilizer size prod_i m(i)!.  The
    summand is stabilizer-invariant, so this equals the coset-sum form
    and stays pole-free in t (the (1-t)/(1-t^j) normalization of the
    all-pairs variant degenerates to 0/0 at roots of unity).
    """
    lam = as_partition(lam)
    xs = [frac(x) for x in xs]
    t = frac(t)
    n = len(xs)
    if n > 7:
        raise ValueError("n <= 7 required for the factorial symmetrization")
    if len(set(xs)) != n:
        raise ValueError("evaluation points must be pairwise distinct")
    if len(lam) > n:
        raise ValueError("partition has more parts than variables")
    full = list(lam) + [0] * (n - len(lam))

    stab = 1
    for _, m in part_multiplicities(lam, n).items():
        for j in range(2, m + 1):
            stab *= j
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if full[i] > full[j]]

    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        y = [xs[p] for p in perm]
        term = Fraction(1)
        for j, exp in enumerate(full):
            term *= y[j] ** exp
        for i, j in pairs:
            term *= (y[i] - t * y[j]) / (y[i] - y[j])
        total += term
    return total / stab
