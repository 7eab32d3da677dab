"""Shifted symmetric functions: falling-factorial series, tau, operators.

Shifted bases in one variable u, indexed by k in Z:

    falling side   1/(u|k)   = u^-k (1 + O(1/u))   (polynomial for k < 0)
    rising side    (u|-k)    = u^-k (1 + O(1/u))   (polynomial for k < 0)

Both are triangular with unit diagonal against plain powers u^-m, so any
truncated expansion at u = infinity (an InvU) converts back to either
basis by an exact peel.  All identity checking routes through InvU.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import (
    binomial,
    conjugate,
    falling_factorial,
    partitions_upto,
    stirling2,
    straighten,
)
from .families import det
from .report import VerificationRecord
from .ring import Element, add_scaled
from .scalars import frac


def hs(k):
    return Element.gen("hs", k)


def es(k):
    return Element.gen("es", k)


# ---------------------------------------------------------------------------
# truncated expansions at u = infinity
# ---------------------------------------------------------------------------

class InvU:
    """Truncated series sum_m c_m u^-m, m <= K (negative m = polynomial part)."""

    __slots__ = ("K", "coeffs")

    def __init__(self, K: int, coeffs: dict[int, object]):
        self.K = K
        self.coeffs = {m: c for m, c in coeffs.items() if c and m <= K}

    def coeff(self, m: int):
        return self.coeffs.get(m, Element.zero())

    def add(self, other: "InvU") -> "InvU":
        K = min(self.K, other.K)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Element.zero()) + c
        return InvU(K, out)

    def sub_scaled(self, scalar_coeffs: dict[int, Fraction], elem: Element) -> "InvU":
        """self - elem * (scalar series), used by the basis peel."""
        out = dict(self.coeffs)
        for m, c in scalar_coeffs.items():
            if m > self.K:
                continue
            out[m] = out.get(m, Element.zero()) - elem.scale(c)
        return InvU(self.K, out)

    def mul(self, other: "InvU") -> "InvU":
        K = min(self.K, other.K)
        out: dict[int, object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                if m > K:
                    continue
                prev = out.get(m)
                term = c1 * c2
                out[m] = term if prev is None else prev + term
        return InvU(K, out)

    def __eq__(self, other):
        K = min(self.K, other.K)
        a = {m: c for m, c in self.coeffs.items() if m <= K and c}
        b = {m: c for m, c in other.coeffs.items() if m <= K and c}
        return a == b

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"InvU(K={self.K}, {dict(sorted(self.coeffs.items()))!r})"


def invu_const(c, K: int) -> InvU:
    return InvU(K, {0: Element.const(c) if not isinstance(c, Element) else c})


def _geom(c: Fraction, K: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(K):
        out.append(out[-1] * c)
    return out


def _recip_linear(shifts: Sequence[Fraction], K: int) -> list[Fraction]:
    """Coefficients of prod_j 1/(1 - c_j w) through w^K."""
    acc = [Fraction(1)] + [Fraction(0)] * K
    for c in shifts:
        if c == 0:
            continue
        geo = _geom(c, K)
        new = [Fraction(0)] * (K + 1)
        for i, a in enumerate(acc):
            if not a:
                continue
            for j in range(K + 1 - i):
                new[i + j] += a * geo[j]
        acc = new
    return acc


def _poly_linear(shifts: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of prod_j (1 + c_j w)."""
    acc = [Fraction(1)]
    for c in shifts:
        acc = [a + (c * acc[i - 1] if i >= 1 else 0)
               for i, a in enumerate(acc + [Fraction(0)])]
    return acc


def falling_inv_expansion(k: int, K: int, shift: Fraction = Fraction(0)) -> dict[int, Fraction]:
    """Expansion of 1/((u+shift)|k) in powers of 1/u, through u^-K."""
    if k >= 0:
        # roots -shift, -shift+1, ..., -shift+k-1
        roots = [-shift + j for j in range(k)]
        rec = _recip_linear(roots, K - k) if K - k >= 0 else []
        return {k + s: c for s, c in enumerate(rec) if c}
    # 1/(u|-j) = (u+1)...(u+j), shifted: ((u+shift)+1)...((u+shift)+j)
    j = -k
    consts = [shift + i for i in range(1, j + 1)]
    poly = _poly_linear(consts)
    return {-j + s: c for s, c in enumerate(poly) if c}


def rising_expansion(k: int, K: int, shift: Fraction = Fraction(0)) -> dict[int, Fraction]:
    """Expansion of ((u+shift)|-k) in powers of 1/u, through u^-K."""
    if k >= 0:
        # 1/((u+shift+1)...(u+shift+k)): roots -(shift+i)
        roots = [-(shift + i) for i in range(1, k + 1)]
        rec = _recip_linear(roots, K - k) if K - k >= 0 else []
        return {k + s: c for s, c in enumerate(rec) if c}
    # (u+shift|j) = (u+shift)(u+shift-1)...(u+shift-j+1)
    j = -k
    consts = [shift - i for i in range(j)]
    poly = _poly_linear(consts)
    return {-j + s: c for s, c in enumerate(poly) if c}


def _scalar_to_invu(coeffs: dict[int, Fraction], elem: Element, K: int) -> InvU:
    return InvU(K, {m: elem.scale(c) for m, c in coeffs.items() if m <= K})


def invu_to_basis(series: InvU, hi: int, basis) -> dict[int, Element]:
    """Peel a 1/u expansion into basis coefficients for indices <= hi.

    basis(a, K) gives the scalar expansion of the a-th basis function;
    triangularity with unit diagonal makes the solve exact.
    """
    work = series
    out: dict[int, Element] = {}
    while True:
        live = [m for m, c in work.coeffs.items() if c]
        if not live:
            break
        a = min(live)
        if a > hi:
            break
        d = work.coeff(a)
        out[a] = d
        work = work.sub_scaled(basis(a, work.K), d)
    return out


# ---------------------------------------------------------------------------
# the shifted generating series and the tau automorphism
# ---------------------------------------------------------------------------

class FallingSeries:
    """Series in a shifted basis: sum_k c_k / (u|k) or sum_k c_k (u|-k)."""

    __slots__ = ("direction", "K", "coeffs")

    def __init__(self, direction: str, K: int, coeffs: dict[int, Element]):
        if direction not in ("falling", "rising"):
            raise ValueError("direction must be 'falling' or 'rising'")
        self.direction = direction
        self.K = K
        self.coeffs = {k: c for k, c in coeffs.items() if c and k <= K}

    def coeff(self, k: int) -> Element:
        return self.coeffs.get(k, Element.zero())

    def to_inv_u(self, K: Optional[int] = None) -> InvU:
        K = self.K if K is None else K
        basis = falling_inv_expansion if self.direction == "falling" else rising_expansion
        acc = InvU(K, {})
        for k, c in self.coeffs.items():
            acc = acc.add(_scalar_to_invu(basis(k, K), c, K))
        return acc

    def __eq__(self, other):
        return (self.direction, self.K, self.coeffs) == \
            (other.direction, other.K, other.coeffs)


def qstar_series(K: int) -> FallingSeries:
    """Q*(u) = sum_k h*_k / (u|k)."""
    return FallingSeries("falling", K, {k: hs(k) if k else Element.one()
                                        for k in range(K + 1)})


def rstar_series(K: int) -> FallingSeries:
    """R*(u) = sum_k (-1)^k e*_k (u|-k)."""
    return FallingSeries("rising", K,
                         {k: (es(k) if k else Element.one()).scale((-1) ** k)
                          for k in range(K + 1)})


def shift_arg(s: FallingSeries, a: int) -> FallingSeries:
    """Re-expand s(u+a) in the same basis via 1/(u-1|k) = 1/(u|k) + k/(u|k+1)."""
    coeffs = dict(s.coeffs)
    down = (a < 0) if s.direction == "falling" else (a > 0)
    for _ in range(abs(a)):
        new: dict[int, Element] = {}
        if down:
            # direct substitution step
            for k, c in coeffs.items():
                new[k] = new.get(k, Element.zero()) + c
                if k + 1 <= s.K:
                    step = c.scale(k) if s.direction == "falling" else c.scale(-k)
                    new[k + 1] = new.get(k + 1, Element.zero()) + step
        else:
            # triangular solve for the inverse step
            for k in sorted(coeffs):
                c = coeffs[k]
                prev = new.get(k - 1)
                if prev is not None:
                    corr = prev.scale(k - 1)
                    c = c - corr if s.direction == "falling" else c + corr
                if c:
                    new[k] = c
        coeffs = {k: c for k, c in new.items() if c}
    return FallingSeries(s.direction, s.K, coeffs)


def tau_gen(a: int, family: str, k: int) -> Element:
    """tau^a on a single generator by the binomial falling-factorial formula."""
    if k < 0:
        return Element.zero()
    if k == 0:
        return Element.one()
    acc = Element.zero()
    for i in range(abs(a) + 1):
        c = binomial(abs(a), i) * falling_factorial(k - 1, i)
        if c:
            acc = acc + Element.gen(family, k - i).scale(c)
    return acc


def tau_apply(a: int, x: Element) -> Element:
    """tau^a as a ring automorphism; a >= 0 acts on h*, a <= 0 on e*.

    Mixed or wrong-sided inputs are first converted through the
    Corollary-12.3 inversion (result presented in the target family).
    """
    if a == 0:
        return x
    fams = {g[0] for g in x.generators()}
    if a > 0 and "es" in fams:
        x = to_hstar(x)
        fams = {g[0] for g in x.generators()}
    if a < 0 and "hs" in fams:
        x = to_estar(x)
        fams = {g[0] for g in x.generators()}
    family = "hs" if a > 0 else "es"
    if fams - {family}:
        raise ValueError(f"tau^{a} cannot act on generators {fams}")
    images = {}
    for fam, k in x.generators():
        images[(fam, k)] = tau_gen(a, fam, k)
    return x.substitute(images)


# ---------------------------------------------------------------------------
# cross-presentation: e* in h* and back (Q*(u) R*(u) = 1)
# ---------------------------------------------------------------------------

def estar_in_hstar(K: int) -> dict[int, Element]:
    """Expressions of e*_k (k <= K) in h*-generators via Q*(u)R*(u) = 1."""
    q = qstar_series(K).to_inv_u(K)
    out = {0: Element.one()}
    partial = InvU(K, {0: Element.one()})  # R* with solved coefficients
    for n in range(1, K + 1):
        prod = q.mul(partial)
        resid = prod.coeff(n)
        ek = resid if n % 2 else -resid
        # R* term (-1)^n e*_n (u|-n)
        term = _scalar_to_invu(rising_expansion(n, K), ek.scale((-1) ** n), K)
        partial = partial.add(term)
        out[n] = ek
    return out


def hstar_in_estar(K: int) -> dict[int, Element]:
    """Expressions of h*_k (k <= K) in e*-generators."""
    r = rstar_series(K).to_inv_u(K)
    out = {0: Element.one()}
    partial = InvU(K, {0: Element.one()})  # Q* with solved coefficients
    for n in range(1, K + 1):
        prod = r.mul(partial)
        hk = -prod.coeff(n)
        term = _scalar_to_invu(falling_inv_expansion(n, K), hk, K)
        partial = partial.add(term)
        out[n] = hk
    return out


def to_hstar(x: Element) -> Element:
    """Rewrite any e*-generators of x in the h*-presentation."""
    ks = [k for fam, k in x.generators() if fam == "es"]
    if not ks:
        return x
    conv = estar_in_hstar(max(ks))
    return x.substitute({("es", k): conv[k] for k in set(ks)})


def to_estar(x: Element) -> Element:
    ks = [k for fam, k in x.generators() if fam == "hs"]
    if not ks:
        return x
    conv = hstar_in_estar(max(ks))
    return x.substitute({("hs", k): conv[k] for k in set(ks)})


# ---------------------------------------------------------------------------
# shifted Schur functions
# ---------------------------------------------------------------------------

def shifted_schur(alpha: Sequence[int], presentation: str = "h") -> Element:
    """det[tau^{j-1} h*_{a_i-i+j}] (or the e*-form on the conjugate)."""
    a = tuple(alpha)
    if presentation == "h":
        l = len(a)
        if l == 0:
            return Element.one()
        mat = [[tau_gen(j, "hs", a[i] - (i + 1) + (j + 1)) for j in range(l)]
               for i in range(l)]
        return det(mat)
    if presentation == "e":
        res = straighten(a)
        if res.is_zero:
            return Element.zero()
        lp = conjugate(res.partition)
        l = len(lp)
        if l == 0:
            return Element.const(res.sign)
        mat = [[tau_gen(-j, "es", lp[i] - (i + 1) + (j + 1)) for j in range(l)]
               for i in range(l)]
        return det(mat).scale(res.sign)
    raise ValueError("presentation must be 'h' or 'e'")


def psi_star_plus_signed(k: int, lam: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    res = straighten((k,) + tuple(lam))
    if res.is_zero:
        return 0, ()
    return res.sign, res.partition


def psi_star_plus(k: int, lam: Sequence[int]) -> Element:
    """Psi+_k(s*_lambda) = s*_(k, lambda), straightened."""
    sign, part = psi_star_plus_signed(k, tuple(lam))
    return shifted_schur(part).scale(sign) if sign else Element.zero()


def psi_star_minus_signed(j: int, lam: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    res = straighten((-j,) + conjugate(tuple(lam)))
    if res.is_zero:
        return 0, ()
    return res.sign * (-1) ** (-j), conjugate(res.partition)


def psi_star_minus(j: int, lam: Sequence[int]) -> Element:
    sign, part = psi_star_minus_signed(j, tuple(lam))
    return shifted_schur(part).scale(sign) if sign else Element.zero()


# ---------------------------------------------------------------------------
# multivariate shifted generating functions (honest series route)
# ---------------------------------------------------------------------------

class MultiShiftedTable:
    """Coefficients of a product shifted-basis expansion."""

    __slots__ = ("arity", "basis", "window", "entries")

    def __init__(self, arity: int, basis: str,
                 window: Sequence[tuple[int, int]],
                 entries: dict[tuple[int, ...], Element]):
        self.arity = arity
        self.basis = basis  # "falling" | "rising"
        self.window = [tuple(w) for w in window]
        self.entries = {k: v for k, v in entries.items() if v}

    def in_window(self, lam: Sequence[int]) -> bool:
        return len(lam) == self.arity and all(
            lo <= x <= hi for x, (lo, hi) in zip(lam, self.window))

    def coeff(self, lam: Sequence[int]) -> Element:
        lam = tuple(lam)
        if not self.in_window(lam):
            raise KeyError(f"{lam} outside table window")
        return self.entries.get(lam, Element.zero())

    def keys(self):
        return self.entries.keys()

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "arity": self.arity,
            "basis": self.basis,
            "window": [list(w) for w in self.window],
            "entries": [{"lambda": list(k), "element": str(v)} for k, v in items],
        }


def _qstar_shifted_invu(a: int, K: int, kmax: int) -> InvU:
    """InvU expansion of Q*(u - a) = sum_k h*_k / ((u-a)|k)."""
    acc = InvU(K, {})
    for k in range(kmax + 1):
        c = hs(k) if k else Element.one()
        acc = acc.add(_scalar_to_invu(
            falling_inv_expansion(k, K, shift=Fraction(-a)), c, K))
    return acc


def _rstar_shifted_invu(a: int, K: int, kmax: int) -> InvU:
    """InvU expansion of R*(u + a) = sum_k (-1)^k e*_k ((u+a)|-k)."""
    acc = InvU(K, {})
    for k in range(kmax + 1):
        c = (es(k) if k else Element.one()).scale((-1) ** k)
        acc = acc.add(_scalar_to_invu(
            rising_expansion(k, K, shift=Fraction(a)), c, K))
    return acc


def _multivar_table(l: int, K: int, side: str) -> dict[tuple[int, ...], Element]:
    """Expand det[...] * prod_i S(u_i ± (i-1)) per permutation, in InvU form."""
    Kw = K + l  # head room for the polynomial parts of the determinant
    per_sigma = []
    for sigma in itertools.permutations(range(1, l + 1)):
        sign = _perm_sign_tuple(sigma)
        factors = []
        for i in range(1, l + 1):
            j = sigma[i - 1]
            if side == "Q":
                entry = falling_inv_expansion(i - j, Kw)
                series = _qstar_shifted_invu(i - 1, Kw, Kw)
            else:
                entry = rising_expansion(-(j - i), Kw)
                series = _rstar_shifted_invu(i - 1, Kw, Kw)
            factors.append(_scalar_to_invu(entry, Element.one(), Kw).mul(series))
        per_sigma.append((sign, factors))

    out: dict[tuple[int, ...], dict] = {}
    for sign, factors in per_sigma:
        keys = [list(f.coeffs.items()) for f in factors]
        for combo in itertools.product(*keys):
            vec = tuple(m for m, _ in combo)
            if any(m > Kw for m in vec):
                continue
            prod = Element.const(sign)
            for _, c in combo:
                prod = prod * c
            if not prod:
                continue
            acc = out.get(vec)
            if acc is None:
                acc = {}
                out[vec] = acc
            add_scaled(acc, prod, Fraction(1))
    return {k: Element(v, _trusted=True) for k, v in out.items() if v}


def _perm_sign_tuple(sigma) -> int:
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


def _convert_multivar(raw: dict[tuple[int, ...], Element], l: int, K: int,
                      basis) -> dict[tuple[int, ...], Element]:
    """Per-variable triangular conversion of a multivariate InvU expansion."""
    cur = raw
    for var in range(l):
        groups: dict[tuple[int, ...], dict[int, Element]] = {}
        for vec, c in cur.items():
            rest = vec[:var] + vec[var + 1:]
            groups.setdefault(rest, {})[vec[var]] = c
        nxt: dict[tuple[int, ...], Element] = {}
        for rest, sub in groups.items():
            series = InvU(K + l, sub)
            conv = invu_to_basis(series, K, basis)
            for a, c in conv.items():
                if c:
                    nxt[rest[:var] + (a,) + rest[var:]] = c
        cur = nxt
    return cur


def qstar_multivar(l: int, K: int) -> MultiShiftedTable:
    """Expansion of det[1/(u_i|i-j)] prod_i Q*(u_i - i + 1), falling basis."""
    raw = _multivar_table(l, K, "Q")
    entries = _convert_multivar(raw, l, K, falling_inv_expansion)
    window = [(-l, K)] * l
    entries = {k: v for k, v in entries.items()
               if all(lo <= x <= hi for x, (lo, hi) in zip(k, window))}
    return MultiShiftedTable(l, "falling", window, entries)


def rstar_multivar(l: int, K: int) -> MultiShiftedTable:
    """Expansion of det[(u_i|j-i)] prod_i R*(u_i + i - 1), rising basis."""
    raw = _multivar_table(l, K, "R")
    entries = _convert_multivar(raw, l, K, rising_expansion)
    window = [(-l, K)] * l
    entries = {k: v for k, v in entries.items()
               if all(lo <= x <= hi for x, (lo, hi) in zip(k, window))}
    return MultiShiftedTable(l, "rising", window, entries)


# ---------------------------------------------------------------------------
# shifted adjoint operators DR*, DQ*
# ---------------------------------------------------------------------------

def _drstar_upoly(x: Element) -> list[Element]:
    """DR*(u)(x) as a plain polynomial in u (list of Elements).

    Per h*-factor: (tau(h*_k) - h*_{k-1}) - h*_{k-1} u, multiplied out
    over the monomial's factors.
    """
    out: dict[int, dict] = {}
    for mono, coeff in x.terms():
        poly = [Element.const(coeff)]
        for (fam, k), e in mono:
            if fam != "hs":
                raise KeyError(f"DR* acts on h*-monomials, got {fam}[{k}]")
            a0 = tau_gen(1, "hs", k) - hs(k - 1)
            a1 = -hs(k - 1)
            for _ in range(e):
                new = [Element.zero()] * (len(poly) + 1)
                for p, c in enumerate(poly):
                    if not c:
                        continue
                    new[p] = new[p] + c * a0
                    new[p + 1] = new[p + 1] + c * a1
                poly = new
        for p, c in enumerate(poly):
            if c:
                acc = out.setdefault(p, {})
                add_scaled(acc, c, Fraction(1))
    if not out:
        return []
    top = max(out)
    return [Element(out.get(p, {}), _trusted=True) for p in range(top + 1)]


def _dqstar_upoly(x: Element) -> list[Element]:
    """DQ*(u)(x) as a plain polynomial in u; per e*-factor
    tau^{-1}(e*_k) + e*_{k-1} u."""
    out: dict[int, dict] = {}
    for mono, coeff in x.terms():
        poly = [Element.const(coeff)]
        for (fam, k), e in mono:
            if fam != "es":
                raise KeyError(f"DQ* acts on e*-monomials, got {fam}[{k}]")
            a0 = tau_gen(-1, "es", k)
            a1 = es(k - 1)
            for _ in range(e):
                new = [Element.zero()] * (len(poly) + 1)
                for p, c in enumerate(poly):
                    if not c:
                        continue
                    new[p] = new[p] + c * a0
                    new[p + 1] = new[p + 1] + c * a1
                poly = new
        for p, c in enumerate(poly):
            if c:
                acc = out.setdefault(p, {})
                add_scaled(acc, c, Fraction(1))
    if not out:
        return []
    top = max(out)
    return [Element(out.get(p, {}), _trusted=True) for p in range(top + 1)]


def drstar_apply(m: int, x: Element) -> Element:
    """DR*_m(x): falling-power coefficient, u^p = sum_m S(p,m) (u|m)."""
    poly = _drstar_upoly(x)
    acc = Element.zero()
    for p, c in enumerate(poly):
        s = stirling2(p, m) if m <= p else 0
        if s and c:
            acc = acc + c.scale(s)
    return acc


_RISING_CONV: dict[int, list[list[Fraction]]] = {}


def _rising_conversion(top: int) -> list[list[Fraction]]:
    """Matrix M with u^p = sum_m M[p][m] (u+1)...(u+m)."""
    got = _RISING_CONV.get(top)
    if got is not None:
        return got
    # rho_m as coefficient lists in u
    rho = [[Fraction(1)]]
    for m in range(1, top + 1):
        prev = rho[-1]
        new = [Fraction(0)] * (len(prev) + 1)
        for i, c in enumerate(prev):
            new[i] += c * m
            new[i + 1] += c
        rho.append(new)
    M = []
    for p in range(top + 1):
        target = [Fraction(0)] * (p + 1)
        target[p] = Fraction(1)
        row = [Fraction(0)] * (top + 1)
        for m in range(p, -1, -1):
            c = target[m] if m < len(target) else Fraction(0)
            if c:
                row[m] = c
                for i, rc in enumerate(rho[m]):
                    target[i] -= c * rc
        M.append(row)
    _RISING_CONV[top] = M
    return M


def dqstar_apply(m: int, x: Element) -> Element:
    """DQ*_m(x): coefficient against the basis 1/(u|-m) = (u+1)...(u+m)."""
    poly = _dqstar_upoly(x)
    if not poly:
        return Element.zero()
    M = _rising_conversion(len(poly) - 1)
    acc = Element.zero()
    for p, c in enumerate(poly):
        if c and m < len(M[p]) and M[p][m]:
            acc = acc + c.scale(M[p][m])
    return acc


# ---------------------------------------------------------------------------
# vertex operators in the shifted bases
# ---------------------------------------------------------------------------

def vertex_star_plus(x: Element, K: int) -> dict[int, Element]:
    """Coefficients Psi+_k(x) of Q*(v) DR*(v)(x) in the falling basis."""
    poly = _drstar_upoly(x)
    Kw = K + max(len(poly), 1)
    acc = InvU(Kw, {})
    qs = qstar_series(Kw).to_inv_u(Kw)
    for p, c in enumerate(poly):
        if not c:
            continue
        upow = _scalar_to_invu({-p: Fraction(1)}, c, Kw)
        acc = acc.add(qs.mul(upow))
    return invu_to_basis(acc, K, falling_inv_expansion)


def vertex_star_minus(x: Element, K: int) -> dict[int, Element]:
    """Coefficients Psi-_k(x) of R*(v) DQ*(v)(x) in the rising basis."""
    poly = _dqstar_upoly(x)
    if not poly:
        return {}
    Kw = K + len(poly)
    rs = rstar_series(Kw).to_inv_u(Kw)
    acc = InvU(Kw, {})
    for p, c in enumerate(poly):
        if not c:
            continue
        upow = _scalar_to_invu({-p: Fraction(1)}, c, Kw)
        acc = acc.add(rs.mul(upow))
    return invu_to_basis(acc, K, rising_expansion)


# ---------------------------------------------------------------------------
# evaluation oracles
# ---------------------------------------------------------------------------

def hstar_values(xs: Sequence, K: int) -> dict[tuple[str, int], Fraction]:
    """h*_r at (x_1..x_n, 0, 0, ...) by the defining multiset sum."""
    xs = [frac(x) for x in xs]
    n = len(xs)
    out = {}
    for r in range(1, K + 1):
        total = Fraction(0)
        for combo in itertools.combinations_with_replacement(range(n), r):
            term = Fraction(1)
            for pos, idx in enumerate(combo, start=1):
                term *= xs[idx] - r + pos
                if not term:
                    break
            total += term
        out[("hs", r)] = total
    return out


def estar_values(xs: Sequence, K: int) -> dict[tuple[str, int], Fraction]:
    xs = [frac(x) for x in xs]
    n = len(xs)
    out = {}
    for r in range(1, K + 1):
        total = Fraction(0)
        for combo in itertools.combinations(range(n), r):
            term = Fraction(1)
            for pos, idx in enumerate(combo, start=1):
                term *= xs[idx] + r - pos
            total += term
        out[("es", r)] = total
    return out


def eval_shifted(x: Element, xs: Sequence) -> Fraction:
    """Evaluate an h*/e*-element at finitely many variable values."""
    from .families import eval_element

    K = 0
    for fam, k in x.generators():
        if fam not in ("hs", "es"):
            raise KeyError(f"eval_shifted expects shifted generators, got {fam}")
        K = max(K, k)
    values = {}
    values.update(hstar_values(xs, K))
    values.update(estar_values(xs, K))
    return eval_element(x, values)


def shifted_bialternant(lam: Sequence[int], xs: Sequence) -> Fraction:
    """s*_lambda(x) = det[(x_i+n-i | lam_j+n-j)] / det[(x_i+n-i | n-j)]."""
    from .combinatorics import as_partition
    from .families import _det_fractions

    lam = as_partition(lam)
    xs = [frac(x) for x in xs]
    n = len(xs)
    if len(lam) > n:
        raise ValueError("partition has more parts than variables")
    full = list(lam) + [0] * (n - len(lam))
    num = [[falling_factorial(xs[i] + n - (i + 1), full[j] + n - (j + 1))
            for j in range(n)] for i in range(n)]
    den = [[falling_factorial(xs[i] + n - (i + 1), n - (j + 1))
            for j in range(n)] for i in range(n)]
    d = _det_fractions(den)
    if d == 0:
        raise ValueError("denominator alternant vanishes at these points")
    return _det_fractions(num) / d


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def lem2_check(l: int, samples: Sequence[Sequence[Fraction]]) -> VerificationRecord:
    """Shift-operator Vandermonde identities at exact sample points.

    First:  prod_i 1/(u_i|i-1) * V(u_1, u_2-1, ..., u_l-(l-1))
                = det[ 1/(u_i|i-j) ]
    Second: prod_i (u_i|1-i)   * V(u_1, u_2+1, ..., u_l+(l-1))
                = det[ (u_i|j-i) ]
    with V the Vandermonde product prod_{i<j} (y_j - y_i).
    """
    from .families import _det_fractions

    rec = VerificationRecord("lem2", {"l": l, "samples": len(samples)})
    for us in samples:
        us = [frac(u) for u in us]
        if len(us) != l:
            raise ValueError("sample arity mismatch")

        lhs = Fraction(1)
        for i in range(1, l + 1):
            lhs *= 1 / falling_factorial(us[i - 1], i - 1)
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                lhs *= (us[j - 1] - (j - 1)) - (us[i - 1] - (i - 1))
        rhs = _det_fractions(
            [[1 / falling_factorial(us[i - 1], i - j) for j in range(1, l + 1)]
             for i in range(1, l + 1)])
        rec.check(lhs == rhs, identity="falling", us=us, lhs=lhs, rhs=rhs)

        lhs2 = Fraction(1)
        for i in range(1, l + 1):
            lhs2 *= falling_factorial(us[i - 1], 1 - i)
        for i in range(1, l + 1):
            for j in range(i + 1, l + 1):
                lhs2 *= (us[j - 1] + (j - 1)) - (us[i - 1] + (i - 1))
        rhs2 = _det_fractions(
            [[falling_factorial(us[i - 1], j - i) for j in range(1, l + 1)]
             for i in range(1, l + 1)])
        rec.check(lhs2 == rhs2, identity="rising", us=us, lhs=lhs2, rhs=rhs2)
    return rec


def check_shifted(K: int, W: int, lmax: int = 2) -> VerificationRecord:
    """Shifted anticommutation relations plus the decomposition proposition."""
    rec = VerificationRecord("shifted-relations", {"K": K, "W": W, "lmax": lmax})

    for k in range(-W, W + 1):
        for l in range(-W, W + 1):
            for lam in partitions_upto(K):
                a = _two(psi_star_plus_signed, k, psi_star_plus_signed, l, lam)
                b = _two(psi_star_plus_signed, l - 1, psi_star_plus_signed, k + 1, lam)
                ok = (a[0] == 0 and b[0] == 0) or (a[1] == b[1] and a[0] == -b[0])
                rec.check(ok, relation="++", k=k, l=l, lam=lam)

                a = _two(psi_star_minus_signed, k, psi_star_minus_signed, l, lam)
                b = _two(psi_star_minus_signed, l + 1, psi_star_minus_signed, k - 1, lam)
                ok = (a[0] == 0 and b[0] == 0) or (a[1] == b[1] and a[0] == -b[0])
                rec.check(ok, relation="--", k=k, l=l, lam=lam)

                lhs = _two_elem(psi_star_minus_signed, k, psi_star_plus_signed, l, lam) \
                    + _two_elem(psi_star_plus_signed, l + 1, psi_star_minus_signed,
                                k + 1, lam)
                want = shifted_schur(lam) if k == l else Element.zero()
                rec.check(lhs == want, relation="-+", k=k, l=l, lam=lam)

    # normally ordered decomposition on the multivariate tables
    for l in range(1, lmax + 1):
        low = qstar_multivar(l, K)
        high = qstar_multivar(l + 1, K)
        rec.merge(_decomposition_block(low, high, vertex_star_plus, K, "Q"))
        lowr = rstar_multivar(l, K)
        highr = rstar_multivar(l + 1, K)
        rec.merge(_decomposition_block(lowr, highr, vertex_star_minus, K, "R"))
    return rec


def _decomposition_block(low, high, vertex, K, side) -> VerificationRecord:
    rec = VerificationRecord(f"shifted-decomposition-{side}")
    lam_keys = sorted(set(k[1:] for k in high.keys()) | set(low.keys()))
    for lam in lam_keys:
        if not low.in_window(lam):
            continue
        x = low.entries.get(lam, Element.zero())
        got = vertex(x, K) if x else {}
        for k in range(-high.arity, K + 1):
            key = (k,) + lam
            if not high.in_window(key):
                continue
            g = got.get(k, Element.zero())
            want = high.entries.get(key, Element.zero())
            rec.check(g == want, side=side, key=key, got=g, want=want)
    return rec


def _two(outer, oi, inner, ii, lam):
    s, p = inner(ii, tuple(lam))
    if s == 0:
        return 0, ()
    s2, p2 = outer(oi, p)
    return (s * s2, p2) if s2 else (0, ())


def _two_elem(outer, oi, inner, ii, lam):
    s, p = _two(outer, oi, inner, ii, lam)
    return shifted_schur(p).scale(s) if s else Element.zero()
