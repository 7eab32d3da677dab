"""Exact scalar arithmetic: rationals and dense univariate polynomials in t."""

from __future__ import annotations

from fractions import Fraction


def frac(value, den=None) -> Fraction:
    """Coerce to Fraction ("3/2", 3, Fraction)."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


class TPoly:
    """Polynomial in t over Q, dense coefficient tuple (ascending powers).

    Arithmetic mixes freely with Fraction/int; a degree-0 TPoly compares
    equal to the corresponding Fraction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "TPoly":
        return TPoly((frac(c),))

    @staticmethod
    def _coerce(other):
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TPoly((Fraction(other),))
        return None

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of zero polynomial is undefined")
        return len(self.coeffs) - 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return TPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] += a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def eval_at(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self):
        return f"TPoly({self.coeffs!r})"

    def __str__(self):
        return fmt_scalar(self)


#: the generator t of Q[t]
T = TPoly((Fraction(0), Fraction(1)))

Scalar = Fraction | TPoly


def is_constant(s: Scalar) -> bool:
    return isinstance(s, (int, Fraction)) or len(s.coeffs) <= 1


def as_fraction(s: Scalar) -> Fraction:
    """Constant value of s; error if s genuinely involves t."""
    if isinstance(s, TPoly):
        if len(s.coeffs) > 1:
            raise ValueError(f"scalar {s!s} is not constant in t")
        return s.coeffs[0] if s.coeffs else Fraction(0)
    return Fraction(s)


def scalar_at_t(s: Scalar, t: Fraction | None) -> Fraction:
    if isinstance(s, TPoly):
        if t is None:
            if len(s.coeffs) > 1:
                raise ValueError("t value required to evaluate Q[t] scalar")
            return s.coeffs[0] if s.coeffs else Fraction(0)
        return s.eval_at(t)
    return Fraction(s)


def _fmt_fraction(q: Fraction) -> str:
    return str(q)


def fmt_scalar(s: Scalar) -> str:
    """Canonical text of a scalar: "3/2", "1-t", "-t+t^2"."""
    if not isinstance(s, TPoly):
        return _fmt_fraction(Fraction(s))
    if not s.coeffs:
        return "0"
    parts = []
    for p, c in enumerate(s.coeffs):
        if not c:
            continue
        if p == 0:
            term = _fmt_fraction(c)
        else:
            tp = "t" if p == 1 else f"t^{p}"
            if c == 1:
                term = tp
            elif c == -1:
                term = "-" + tp
            else:
                term = f"{_fmt_fraction(c)}*{tp}"
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)
