"""Creation/annihilation operators and their normally ordered decomposition.

For a correlation factor f with f_0 = 1 the adjoint families act on the
generators by DR_m(Q_k) = f_m Q_{k-m} and DQ_m(Q_k) = ftilde_m Q_{k-m}
(ftilde = coefficients of 1/f), extended multiplicatively.  The vertex
operators decompose as Psi+(v) = Q(v) DR(v) and Psi-(v) = R(v) DQ(v),
giving the coefficient formulas

    Psi+_k(a) = sum_m Q_{k+m} DR_m(a),
    Psi-_j(a) = sum_m R_{m-j} DQ_m(a),

both finite because DR_m, DQ_m lower the grading by m.

Coefficient-level fermion relations (derived from the generating-function
proposition; the displayed mixed relation in the source material carries
an index typo and fails already on the vacuum at k = l = 0):

    Psi+_k Psi+_l + Psi+_{l-1} Psi+_{k+1} = 0
    Psi-_k Psi-_l + Psi-_{l+1} Psi-_{k-1} = 0
    Psi-_k Psi+_l + Psi+_{l+1} Psi-_{k+1} = delta_{k,l}
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import conjugate, partitions_upto, straighten
from .families import correlation_coeff, generator_family, schur_h
from .report import VerificationRecord
from .ring import DerivationFamily, Element, hs_apply
from .scalars import Scalar


class LazyInverse:
    """Coefficients of 1/f for a lazily supplied series f with f_0 = 1."""

    def __init__(self, f_coeff):
        self._f = f_coeff
        self._inv = [Fraction(1)]

    def __call__(self, n: int) -> Scalar:
        while len(self._inv) <= n:
            k = len(self._inv)
            acc = Fraction(0)
            for j in range(1, k + 1):
                fj = self._f(j)
                if fj:
                    acc += fj * self._inv[k - j]
            self._inv.append(-acc)
        return self._inv[n]


class OperatorContext:
    """Correlation factor, generator family, and the DR/DQ derivations."""

    def __init__(self, tag: Optional[str] = None,
                 p_coeffs: Optional[Sequence[Scalar]] = None,
                 family: Optional[str] = None):
        if tag is not None:
            self.tag = tag
            self.family = generator_family(tag)
            self.f = lambda r: correlation_coeff(tag, r)
        elif p_coeffs is not None:
            # twisted factor f = (1 - x)/p(x), p(0) = 1
            p = list(p_coeffs)
            if not p or p[0] != 1:
                raise ValueError("twist polynomial must have constant term 1")
            self.tag = "twisted"
            self.family = family or "Q"
            pinv = LazyInverse(lambda r: p[r] if r < len(p) else Fraction(0))
            self.f = lambda r: pinv(r) - (pinv(r - 1) if r >= 1 else 0)
            self.p = p
        else:
            raise ValueError("either a family tag or twist coefficients required")
        if family is not None:
            self.family = family
        self.ftilde = LazyInverse(self.f)
        fam = self.family
        f, ft = self.f, self.ftilde
        self.DR = DerivationFamily(
            lambda m, g, k: Element.gen(g, k - m).scale(f(m)),
            domain=lambda g, k: g == fam)
        self.DQ = DerivationFamily(
            lambda m, g, k: Element.gen(g, k - m).scale(ft(m)),
            domain=lambda g, k: g == fam)
        self._rcache: list[Element] = [Element.one()]
        self._drl: dict[Element, list[Element]] = {}
        self._dql: dict[Element, list[Element]] = {}
        self._psip: dict[tuple[int, Element], Element] = {}
        self._psim: dict[tuple[int, Element], Element] = {}

    def gen(self, k: int) -> Element:
        return Element.gen(self.family, k)

    def rgen(self, k: int) -> Element:
        """Coefficient R_k of the inverse generating series, as an Element."""
        if k < 0:
            return Element.zero()
        while len(self._rcache) <= k:
            n = len(self._rcache)
            acc = Element.zero()
            for j in range(1, n + 1):
                acc = acc + self.gen(j) * self._rcache[n - j]
            self._rcache.append(-acc)
        return self._rcache[k]

    # -- adjoint actions -------------------------------------------------
    def dr_apply(self, m: int, a: Element) -> Element:
        return hs_apply(self.DR, m, a)

    def dq_apply(self, m: int, a: Element) -> Element:
        return hs_apply(self.DQ, m, a)

    def _dr_list(self, a: Element) -> list[Element]:
        got = self._drl.get(a)
        if got is None:
            top = a.degree()
            got = [hs_apply(self.DR, m, a) for m in range(top + 1)]
            self._drl[a] = got
        return got

    def _dq_list(self, a: Element) -> list[Element]:
        got = self._dql.get(a)
        if got is None:
            top = a.degree()
            got = [hs_apply(self.DQ, m, a) for m in range(top + 1)]
            self._dql[a] = got
        return got

    # -- vertex operator coefficients via the decomposition ---------------
    def psi_plus(self, k: int, a: Element) -> Element:
        """Coefficient of v^k in Q(v) DR(v) applied to a."""
        if not a:
            return Element.zero()
        got = self._psip.get((k, a))
        if got is not None:
            return got
        acc = Element.zero()
        for m, d in enumerate(self._dr_list(a)):
            if k + m >= 0 and d:
                acc = acc + self.gen(k + m) * d
        self._psip[(k, a)] = acc
        return acc

    def psi_minus(self, j: int, a: Element) -> Element:
        """Coefficient operator of Psi-(v) = R(v) DQ(v) at index j."""
        if not a:
            return Element.zero()
        got = self._psim.get((j, a))
        if got is not None:
            return got
        acc = Element.zero()
        for m, d in enumerate(self._dq_list(a)):
            if m - j >= 0 and d:
                acc = acc + self.rgen(m - j) * d
        self._psim[(j, a)] = acc
        return acc

    def vertex_plus(self, a: Element, kmin: int, kmax: int) -> dict[int, Element]:
        out = {}
        for k in range(kmin, kmax + 1):
            v = self.psi_plus(k, a)
            if v:
                out[k] = v
        return out

    def vertex_minus(self, a: Element, kmin: int, kmax: int) -> dict[int, Element]:
        """Coefficients of v^k in R(v) DQ(v) applied to a (index j = -k)."""
        out = {}
        for k in range(kmin, kmax + 1):
            v = self.psi_minus(-k, a)
            if v:
                out[k] = v
        return out


# ---------------------------------------------------------------------------
# Schur basis route: straightening
# ---------------------------------------------------------------------------

def psi_plus_basis(k: int, lam: Sequence[int]) -> Element:
    """Psi+_k(s_lambda) = s_(k, lambda), straightened, over h-generators."""
    res = straighten((k,) + tuple(lam))
    if res.is_zero:
        return Element.zero()
    return schur_h(res.partition).scale(res.sign)


def psi_minus_basis(j: int, lam: Sequence[int]) -> Element:
    """Psi-_j(s_lambda) = (-1)^j s_((-j, lambda')'), straightened."""
    sign, part = psi_minus_signed(j, tuple(lam))
    if sign == 0:
        return Element.zero()
    return schur_h(part).scale(sign)


def psi_plus_signed(k: int, lam: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    res = straighten((k,) + lam)
    if res.is_zero:
        return 0, ()
    return res.sign, res.partition


def psi_minus_signed(j: int, lam: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    res = straighten((-j,) + conjugate(lam))
    if res.is_zero:
        return 0, ()
    sign = res.sign * (-1) ** (-j)
    return sign, conjugate(res.partition)


# ---------------------------------------------------------------------------
# relation checkers
# ---------------------------------------------------------------------------

def _two_signed(outer, oi, inner, ii, lam):
    s, p = inner(ii, tuple(lam))
    if s == 0:
        return 0, ()
    s2, p2 = outer(oi, p)
    return (s * s2, p2) if s2 else (0, ())


def check_fermion(N: int, W: int) -> VerificationRecord:
    """Anticommutation relations on every s_lambda, |lambda| <= N, |k| <= W."""
    rec = VerificationRecord("fermion", {"N": N, "W": W})
    lams = list(partitions_upto(N))
    for k in range(-W, W + 1):
        for l in range(-W, W + 1):
            for lam in lams:
                # Psi+_k Psi+_l + Psi+_{l-1} Psi+_{k+1} = 0
                a = _two_signed(psi_plus_signed, k, psi_plus_signed, l, lam)
                b = _two_signed(psi_plus_signed, l - 1, psi_plus_signed, k + 1, lam)
                ok = (a[0] == 0 and b[0] == 0) or \
                     (a[1] == b[1] and a[0] == -b[0])
                rec.check(ok, relation="++", k=k, l=l, lam=lam, lhs=a, rhs=b)

                # Psi-_k Psi-_l + Psi-_{l+1} Psi-_{k-1} = 0
                a = _two_signed(psi_minus_signed, k, psi_minus_signed, l, lam)
                b = _two_signed(psi_minus_signed, l + 1, psi_minus_signed, k - 1, lam)
                ok = (a[0] == 0 and b[0] == 0) or \
                     (a[1] == b[1] and a[0] == -b[0])
                rec.check(ok, relation="--", k=k, l=l, lam=lam, lhs=a, rhs=b)

                # Psi-_k Psi+_l + Psi+_{l+1} Psi-_{k+1} = delta_{k,l}
                lhs = (_compose_signed(psi_minus_signed, k, psi_plus_signed, l, lam)
                       + _compose_signed(psi_plus_signed, l + 1,
                                         psi_minus_signed, k + 1, lam))
                want = schur_h(lam) if k == l else Element.zero()
                rec.check(lhs == want, relation="-+", k=k, l=l, lam=lam,
                          lhs=lhs, rhs=want)
    return rec


def _compose_signed(outer, oi, inner, ii, lam):
    s, p = inner(ii, tuple(lam))
    if s == 0:
        return Element.zero()
    s2, p2 = outer(oi, p)
    if s2 == 0:
        return Element.zero()
    return schur_h(p2).scale(s * s2)


def check_twisted(p_coeffs: Sequence[Scalar], N: int, W: int) -> VerificationRecord:
    """Twisted relations for f = (1-x)/p(x), coefficient window |a|,|b| <= W.

    Verified on all generator monomials of degree <= N:
        sum_s p_s [Psi+_{a-1+s} Psi+_{b-s} + Psi+_{b-1+s} Psi+_{a-s}] = 0
        sum_s p_s [Psi-_{-(a-1+s)} Psi-_{-(b-s)}
                   + Psi-_{-(b-1+s)} Psi-_{-(a-s)}] = 0
        sum_s p_s [Psi-_{s-a} Psi+_{b-1+s} + Psi+_{b-s} Psi-_{1-a-s}]
            = p(1)^2 delta_{a+b,1}
    """
    ctx = OperatorContext(p_coeffs=list(p_coeffs))
    p = ctx.p
    p1sq = sum(p, Fraction(0))
    p1sq = p1sq * p1sq
    rec = VerificationRecord("twisted", {"N": N, "W": W, "p": [str(c) for c in p]})
    basis = [_monomial(ctx.family, lam) for lam in partitions_upto(N)]
    for a in range(-W, W + 1):
        for b in range(-W, W + 1):
            for x in basis:
                pp = Element.zero()
                mm = Element.zero()
                mx = Element.zero()
                for s, ps in enumerate(p):
                    if not ps:
                        continue
                    pp = pp + (ctx.psi_plus(a - 1 + s, ctx.psi_plus(b - s, x))
                               + ctx.psi_plus(b - 1 + s, ctx.psi_plus(a - s, x))
                               ).scale(ps)
                    mm = mm + (ctx.psi_minus(-(a - 1 + s), ctx.psi_minus(-(b - s), x))
                               + ctx.psi_minus(-(b - 1 + s), ctx.psi_minus(-(a - s), x))
                               ).scale(ps)
                    mx = mx + (ctx.psi_minus(s - a, ctx.psi_plus(b - 1 + s, x))
                               + ctx.psi_plus(b - s, ctx.psi_minus(1 - a - s, x))
                               ).scale(ps)
                rec.check(not pp, relation="++", a=a, b=b, x=x, lhs=pp)
                rec.check(not mm, relation="--", a=a, b=b, x=x, lhs=mm)
                want = x.scale(p1sq) if a + b == 1 else Element.zero()
                rec.check(mx == want, relation="-+", a=a, b=b, x=x,
                          lhs=mx, rhs=want)
    return rec


def _monomial(family: str, lam: Sequence[int]) -> Element:
    acc = Element.one()
    for part in lam:
        acc = acc * Element.gen(family, part)
    return acc


def reorder_rhs(ctx: OperatorContext, which: str, a: int, b: int,
                x: Element) -> Element:
    """Coefficient of u^a v^b of the normally reordered right-hand sides.

    which is one of "++", "--", "+-", "-+" for the four identities
    Psi+(u)Psi+(v), Psi-(u)Psi-(v), Psi+(u)Psi-(v), Psi-(v)Psi+(u).
    """
    if not x:
        return Element.zero()
    top = x.degree()
    acc = Element.zero()
    inner_d = ctx.dr_apply if which == "++" else ctx.dq_apply
    outer_d = ctx.dq_apply if which == "--" else ctx.dr_apply
    coeff = ctx.f if which in ("++", "--") else ctx.ftilde
    for m2 in range(top + 1):
        y2 = inner_d(m2, x)
        if not y2:
            continue
        top1 = y2.degree() if y2 else 0
        for m1 in range(top1 + 1):
            y = outer_d(m1, y2)
            if not y:
                continue
            if which in ("++", "--"):
                # f(v/u): u gets -r, v gets +r
                gen1 = ctx.gen if which == "++" else ctx.rgen
                gen2 = gen1
                for r in range(0, b + m2 + 1):
                    c = coeff(r)
                    if not c:
                        continue
                    j1, j2 = a + r + m1, b - r + m2
                    if j1 < 0 or j2 < 0:
                        continue
                    acc = acc + (gen1(j1) * gen2(j2) * y).scale(c)
            elif which == "+-":
                # ftilde(v/u) Q(u) R(v) DR(u) DQ(v)
                for r in range(0, b + m2 + 1):
                    c = coeff(r)
                    if not c:
                        continue
                    j1, j2 = a + r + m1, b - r + m2
                    if j1 < 0 or j2 < 0:
                        continue
                    acc = acc + (ctx.gen(j1) * ctx.rgen(j2) * y).scale(c)
            else:  # "-+": ftilde(u/v) Q(u) R(v) DR(u) DQ(v)
                for r in range(0, a + m1 + 1):
                    c = coeff(r)
                    if not c:
                        continue
                    j1, j2 = a - r + m1, b + r + m2
                    if j1 < 0 or j2 < 0:
                        continue
                    acc = acc + (ctx.gen(j1) * ctx.rgen(j2) * y).scale(c)
    return acc


def normal_order_check(tag: str, lmax: int, N: int,
                       r_degree_bound: Optional[int] = None) -> VerificationRecord:
    """Psi+(v) = Q(v) DR(v) and Psi-(v) = R(v) DQ(v) rebuild the tables.

    For l = 1..lmax, the (l+1)-variable table is compared entry by entry
    with the vertex operator applied to the l-variable table.  The R-side
    runs with a degree bound (inverse-series coefficients grow quickly).
    """
    from .families import family_table
    from .series import extract

    ctx = OperatorContext(tag)
    rec = VerificationRecord("normal-order", {"family": tag, "lmax": lmax, "N": N})
    for side in ("Q", "R"):
        D = None if side == "Q" else (r_degree_bound or N)
        apply_op = (lambda k, x: ctx.psi_plus(k, x)) if side == "Q" else \
                   (lambda k, x: ctx.psi_minus(-k, x))
        for l in range(1, lmax + 1):
            low = family_table(tag, l, N, side=side, degree_bound=D)
            high = family_table(tag, l + 1, N, side=side, degree_bound=D)
            lam_keys = set(k[1:] for k in high.keys()) | set(low.keys())
            for lam in sorted(lam_keys):
                if not low.in_window(lam):
                    continue
                x = low.entries.get(lam, Element.zero())
                for k in range(-N, N + 1):
                    key = (k,) + lam
                    if not high.in_window(key):
                        continue
                    got = apply_op(k, x)
                    want = high.entries.get(key, Element.zero())
                    rec.check(got == want, side=side, l=l, key=key,
                              got=got, want=want)
    return rec
