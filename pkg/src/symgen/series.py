"""Truncated formal series and multivariate correlation-product tables.

The product expanded here is  prod_{i<j} f(u_j/u_i) * prod_i Q(u_i),
built one variable at a time: appending a new last variable v multiplies
by Q(v) * prod_i f(v/u_i), which raises the v-exponent and lowers the
exponents of the existing variables.  A CoeffTable is faithful inside its
declared window: every stored (or absent-therefore-zero) coefficient
there is the exact coefficient of the full product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .ring import Element, Monomial, add_scaled
from .scalars import Scalar


class TruncatedSeries:
    """Single-variable series with coefficients in a commutative ring.

    Coefficients may be scalars or Elements; exponents run 0..order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, object]):
        self.order = order
        self.coeffs = {k: v for k, v in coeffs.items() if v and 0 <= k <= order}

    def coeff(self, k: int):
        if k < 0 or k > self.order:
            return 0
        return self.coeffs.get(k, 0)

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out: dict[int, object] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j > n:
                    continue
                prev = out.get(i + j)
                out[i + j] = a * b if prev is None else prev + a * b
        return TruncatedSeries(n, out)

    def __eq__(self, other):
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"


def invert(q: TruncatedSeries) -> TruncatedSeries:
    """Formal inverse of a series with constant term 1, through q.order."""
    c0 = q.coeff(0)
    if not _is_one(c0):
        raise ValueError("series inversion requires constant term 1")
    inv: dict[int, object] = {0: c0}
    for n in range(1, q.order + 1):
        acc = None
        for k in range(1, n + 1):
            qk = q.coeff(k)
            rk = inv.get(n - k)
            if not qk or rk is None:
                continue
            term = qk * rk
            acc = term if acc is None else acc + term
        if acc is not None and acc:
            inv[n] = -acc
    return TruncatedSeries(q.order, inv)


def _is_one(c) -> bool:
    if isinstance(c, Element):
        return c == Element.one()
    return c == 1


class CoeffTable:
    """Faithful truncation of a multivariate correlation product."""

    __slots__ = ("arity", "window", "degree_bound", "entries")

    def __init__(self, arity: int, window: Sequence[tuple[int, int]],
                 degree_bound: int, entries: dict[tuple[int, ...], Element]):
        self.arity = arity
        self.window = [tuple(w) for w in window]
        self.degree_bound = degree_bound
        self.entries = entries

    def in_window(self, lam: Sequence[int]) -> bool:
        if len(lam) != self.arity:
            return False
        if sum(lam) > self.degree_bound:
            return False
        return all(lo <= x <= hi for x, (lo, hi) in zip(lam, self.window))

    def keys(self):
        return self.entries.keys()

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "arity": self.arity,
            "window": [list(w) for w in self.window],
            "degree_bound": self.degree_bound,
            "entries": [{"lambda": list(k), "element": str(v)} for k, v in items],
        }


def extract(table: CoeffTable, lam: Sequence[int]) -> Element:
    """Stored coefficient at lam; zero if absent, error outside the window."""
    lam = tuple(lam)
    if not table.in_window(lam):
        raise KeyError(f"{lam} is outside the table window")
    return table.entries.get(lam, Element.zero())


def correlation_expand(f: TruncatedSeries, gens: TruncatedSeries, l: int, N: int,
                       lows: Optional[Sequence[int]] = None,
                       degree_bound: Optional[int] = None) -> CoeffTable:
    """Table of all coefficients of prod_{i<j} f(u_j/u_i) prod_i Q(u_i).

    f: scalar correlation series with f_0 = 1; gens: the one-variable
    generating series (Element coefficients, exponent k has degree k).
    Window: per-variable exponent range [lows[i], N]; degree_bound caps
    the total exponent sum (default l*N).
    """
    if l < 1:
        raise ValueError("arity must be >= 1")
    if N < 0:
        raise ValueError("order must be >= 0")
    if not _is_one(f.coeff(0)):
        raise ValueError("correlation factor must have constant term 1")
    if lows is None:
        lows = [-N] * l
    lows = list(lows)
    if len(lows) != l:
        raise ValueError("lows must have one bound per variable")
    if any(lo > N for lo in lows):
        raise ValueError(f"window lower bounds exceed N={N}")
    D = l * N if degree_bound is None else degree_bound

    # Upper-window extension needed at intermediate arities: appending a
    # variable reads existing entries at exponents raised by at most the
    # new variable's own cap.
    ext = [0] * (l + 1)
    for s in range(l - 1, 0, -1):
        ext[s] = ext[s + 1] + min(N + ext[s + 1], D)
    need_f = min(N + ext[1], D)
    if f.order < need_f:
        raise ValueError(f"correlation series truncated at {f.order}, need {need_f}")
    if gens.order < min(N + ext[1], D):
        raise ValueError("generator series truncated too early for this window")

    # arity-1 table: the generating series itself
    hi1 = min(N + ext[1], D)
    entries = {(k,): v for k, v in gens.coeffs.items() if k <= hi1}
    for s in range(2, l + 1):
        new_hi = min(N + ext[s], D)
        entries = _append_variable(entries, s, f, gens, lows, N, ext[s], D, new_hi)
    window = [(lows[i], N) for i in range(l)]
    entries = {k: v for k, v in entries.items()
               if all(lo <= x <= hi for x, (lo, hi) in zip(k, window))
               and sum(k) <= D}
    return CoeffTable(l, window, D, entries)


def _append_variable(entries, s, f, gens, lows, N, ext_s, D, new_hi):
    """One step of the iterative construction: append variable number s."""
    prev = s - 1
    out: dict[tuple[int, ...], dict[Monomial, Scalar]] = {}
    fc = [f.coeff(r) for r in range(new_hi + 1)]
    nonzero_r = [r for r, c in enumerate(fc) if c]
    per_var_hi = [min(N + ext_s, D) for _ in range(prev)]

    def rvectors(i, budget, acc):
        if i == prev:
            yield tuple(acc)
            return
        for r in nonzero_r:
            if r > budget:
                break
            acc.append(r)
            yield from rvectors(i + 1, budget - r, acc)
            acc.pop()

    for key, elem in entries.items():
        base_deg = sum(key)
        prods: dict[int, Element] = {}
        for rv in rvectors(0, new_hi, []):
            rsum = sum(rv)
            new_key_prefix = tuple(k - r for k, r in zip(key, rv))
            if any(nk < lo for nk, lo in zip(new_key_prefix, lows)):
                continue
            if any(nk > hi for nk, hi in zip(new_key_prefix, per_var_hi)):
                continue
            c = Fraction(1)
            for r in rv:
                c = c * fc[r]
            for q, gq in gens.coeffs.items():
                m = q + rsum
                if m > new_hi or base_deg + q > D:
                    continue
                prod = prods.get(q)
                if prod is None:
                    prod = elem * gq
                    prods[q] = prod
                acc = out.get(new_key_prefix + (m,))
                if acc is None:
                    acc = {}
                    out[new_key_prefix + (m,)] = acc
                add_scaled(acc, prod, c)
    return {k: Element(v, _trusted=True) for k, v in out.items() if v}
