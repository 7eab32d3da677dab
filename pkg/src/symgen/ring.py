"""Sparse polynomial algebra in abstract commuting generators over Q or Q[t].

A generator is identified by (family, index) with index >= 1; families in
use are "Q" (generic / Schur-Q / Hall-Littlewood), "h", "e", "p" (classical
symmetric function generators) and "hs", "es" (shifted ones).  Index 0 is
the unit and negative indices are zero; neither is ever stored.

Monomials are sorted tuples of ((family, index), exponent) pairs; an
Element maps monomials to nonzero scalars.  The grading assigns degree k
to a generator of index k.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .scalars import Scalar, TPoly, fmt_scalar, frac, scalar_at_t

GenRef = tuple[str, int]
Monomial = tuple[tuple[GenRef, int], ...]

FAMILIES = ("Q", "h", "e", "p", "hs", "es")


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 == g2:
            out.append((g1, e1 + e2))
            i += 1
            j += 1
        elif g1 < g2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(idx * e for (_, idx), e in m)


class Element:
    """Immutable sparse polynomial over the abstract generators."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Monomial, Scalar] | None = None, _trusted=False):
        if terms is None:
            terms = {}
        if not _trusted:
            terms = {m: v for m, v in terms.items() if v}
        self._terms = terms

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero() -> "Element":
        return _ZERO

    @staticmethod
    def one() -> "Element":
        return _ONE

    @staticmethod
    def const(c) -> "Element":
        if isinstance(c, int):
            c = Fraction(c)
        if not c:
            return _ZERO
        return Element({(): c}, _trusted=True)

    @staticmethod
    def gen(family: str, index: int) -> "Element":
        """Generator of the given family; index 0 is the unit, index < 0 zero."""
        if family not in FAMILIES:
            raise ValueError(f"unknown generator family {family!r}")
        if index < 0:
            return _ZERO
        if index == 0:
            return _ONE
        return Element({(((family, index), 1),): Fraction(1)}, _trusted=True)

    # -- inspection ------------------------------------------------------
    def terms(self) -> Iterable[tuple[Monomial, Scalar]]:
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, mono: Monomial) -> Scalar:
        return self._terms.get(mono, Fraction(0))

    def constant_term(self) -> Scalar:
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Max generator-graded degree; error on the zero element."""
        if not self._terms:
            raise ValueError("degree of the zero element is undefined")
        return max(mono_degree(m) for m in self._terms)

    def generators(self) -> set[GenRef]:
        out = set()
        for m in self._terms:
            for g, _ in m:
                out.add(g)
        return out

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, v in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = v
            else:
                s = s + v
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Element(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Element({m: -v for m, v in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, TPoly)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        out: dict[Monomial, Scalar] = {}
        small, big = self._terms, other._terms
        if len(small) > len(big):
            small, big = big, small
        for m1, v1 in small.items():
            for m2, v2 in big.items():
                m = mono_mul(m1, m2)
                v = v1 * v2
                s = out.get(m)
                if s is None:
                    out[m] = v
                else:
                    s = s + v
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Element(out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, TPoly)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Element":
        if isinstance(c, int):
            c = Fraction(c)
        if not c:
            return _ZERO
        return Element({m: c * v for m, v in self._terms.items()}, _trusted=True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of an Element")
        acc = _ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    # -- substitutions ----------------------------------------------------
    def map_scalars(self, fn: Callable[[Scalar], Scalar]) -> "Element":
        out = {}
        for m, v in self._terms.items():
            w = fn(v)
            if w:
                out[m] = w
        return Element(out, _trusted=True)

    def at_t(self, t: Fraction | None) -> "Element":
        """Specialize Q[t] scalars at a rational t."""
        return self.map_scalars(lambda v: scalar_at_t(v, t))

    def rename_family(self, src: str, dst: str) -> "Element":
        out = {}
        for m, v in self._terms.items():
            nm = tuple(sorted(((dst, idx) if fam == src else (fam, idx), e)
                              for (fam, idx), e in m))
            out[nm] = out.get(nm, Fraction(0)) + v
        return Element(out)

    def substitute(self, images: dict[GenRef, "Element"]) -> "Element":
        """Ring-map substitution; generators absent from images are kept."""
        acc = _ZERO
        for m, v in self._terms.items():
            term = Element.const(v)
            for g, e in m:
                img = images.get(g)
                base = img if img is not None else Element({((g, 1),): Fraction(1)}, _trusted=True)
                term = term * base ** e
            acc = acc + term
        return acc


def _coerce(x):
    if isinstance(x, Element):
        return x
    if isinstance(x, (int, Fraction, TPoly)):
        return Element.const(x)
    return NotImplemented


_ZERO = Element({}, _trusted=True)
_ONE = Element({(): Fraction(1)}, _trusted=True)


def add_scaled(acc: dict[Monomial, Scalar], elem: Element, c: Scalar) -> None:
    """acc += c * elem, in place (hot-loop helper)."""
    if not c:
        return
    for m, v in elem._terms.items():
        s = acc.get(m)
        w = c * v
        if s is None:
            acc[m] = w
        else:
            s = s + w
            if s:
                acc[m] = s
            else:
                del acc[m]


# ---------------------------------------------------------------------------
# canonical text form
# ---------------------------------------------------------------------------

def _fmt_mono(m: Monomial) -> str:
    parts = []
    for (fam, idx), e in m:
        s = f"{fam}[{idx}]"
        if e != 1:
            s += f"^{e}"
        parts.append(s)
    return "*".join(parts)


def format_element(a: Element) -> str:
    """Canonical text: "3/2*h[2]*h[1] - h[3]" style, t-polys parenthesized."""
    if not a:
        return "0"
    keys = sorted(a._terms, key=lambda m: (-mono_degree(m), m))
    chunks = []
    for m in keys:
        v = a._terms[m]
        if isinstance(v, TPoly) and len(v.coeffs) > 1:
            cs = f"({fmt_scalar(v)})"
            neg = False
        else:
            q = v.coeffs[0] if isinstance(v, TPoly) else v
            neg = q < 0
            q = -q if neg else q
            cs = fmt_scalar(q)
        body = _fmt_mono(m)
        if not body:
            text = cs
        elif cs == "1":
            text = body
        else:
            text = f"{cs}*{body}"
        if not chunks:
            chunks.append(("-" if neg else "") + text)
        else:
            chunks.append(("- " if neg else "+ ") + text)
    return " ".join(chunks)


# ---------------------------------------------------------------------------
# parser for the canonical text form (round-trips format_element)
# ---------------------------------------------------------------------------

import re

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[a-zA-Z]+\[\d+\]|t\b|[()^*+-])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot parse element text at: {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse_expr(self) -> Element:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        acc = self.parse_term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            acc = acc + self.parse_term() * sign
        return acc

    def parse_term(self) -> Element:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.next()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> Element:
        base = self.parse_atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise ValueError("integer exponent expected after '^'")
            return base ** int(tok)
        return base

    def parse_atom(self) -> Element:
        tok = self.next()
        if tok is None:
            raise ValueError("unexpected end of element text")
        if tok == "(":
            inner = self.parse_expr()
            if self.next() != ")":
                raise ValueError("missing ')'")
            return inner
        if tok == "-":
            return -self.parse_atom()
        if tok == "t":
            return Element.const(TPoly((0, 1)))
        if "[" in tok:
            fam, idx = tok[:-1].split("[")
            return Element.gen(fam, int(idx))
        return Element.const(frac(tok))


def parse_element(text: str) -> Element:
    """Parse the canonical text form back into an Element."""
    return _Parser(_tokenize(text)).parse_expr()


# ---------------------------------------------------------------------------
# Hasse-Schmidt derivations
# ---------------------------------------------------------------------------

class DerivationFamily:
    """Family D_0, D_1, ... with D_m(ab) = sum_{k+l=m} D_k(a) D_l(b).

    ``rule(m, family, index)`` gives D_m on a generator; D_m(1) = [m == 0].
    """

    def __init__(self, rule: Callable[[int, str, int], Element],
                 domain: Callable[[str, int], bool] | None = None):
        self._rule = rule
        self._domain = domain

    def on_generator(self, m: int, fam: str, idx: int) -> Element:
        if self._domain is not None and not self._domain(fam, idx):
            raise KeyError(f"derivation has no rule for generator {fam}[{idx}]")
        return self._rule(m, fam, idx)


def hs_apply(D: DerivationFamily, m: int, a: Element) -> Element:
    """Apply D_m to an element via the product convolution rule."""
    if m < 0:
        raise ValueError("derivation order must be nonnegative")
    acc: dict[Monomial, Scalar] = {}
    for mono, coeff in a.terms():
        add_scaled(acc, _hs_on_monomial(D, mono, m), coeff)
    return Element(acc, _trusted=True)


def _hs_on_monomial(D: DerivationFamily, mono: Monomial, m: int) -> Element:
    # convolve the per-factor derivation series up to order m
    series = [Element.one()] + [Element.zero()] * m
    for (fam, idx), e in mono:
        fac = [D.on_generator(k, fam, idx) for k in range(m + 1)]
        for _ in range(e):
            new = [Element.zero()] * (m + 1)
            for i in range(m + 1):
                if not series[i]:
                    continue
                for j in range(m + 1 - i):
                    if fac[j]:
                        new[i + j] = new[i + j] + series[i] * fac[j]
            series = new
    return series[m]
