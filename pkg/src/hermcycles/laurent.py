"""Exact Laurent polynomials over arbitrary-precision rationals.

Every identity in this package is checked as exact coefficient equality,
so coefficients are `fractions.Fraction` throughout and there is no
floating point anywhere.  Negative exponents are allowed; the zero
polynomial is the empty term map.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import HermcyclesError


class NotDivisible(HermcyclesError):
    """Raised when an exact division leaves a nonzero remainder.

    Signals either an implementation bug or a violated identity, so the
    offending remainder is kept for diagnosis.
    """

    def __init__(self, remainder: "LaurentPoly"):
        super().__init__(f"exact division left remainder {remainder}")
        self.remainder = remainder


class EvalAtZero(HermcyclesError):
    """Raised when a polynomial with negative exponents is evaluated at 0."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class LaurentPoly:
    """Univariate Laurent polynomial with Fraction coefficients.

    Instances are immutable by convention: the term map is normalized at
    construction (no zero coefficients) and never mutated afterwards, so
    values are safe to share between threads.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in dict(terms).items():
                c = _as_fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: _as_fraction(c)})

    @classmethod
    def x_power(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: _as_fraction(coeff)})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def terms(self) -> list[tuple[int, Fraction]]:
        """Terms sorted by strictly increasing exponent."""
        return sorted(self._terms.items())

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._terms)

    def degree(self) -> int:
        """Maximal exponent; only meaningful for nonzero polynomials."""
        return self.max_exp()

    def is_polynomial(self) -> bool:
        """True if there are no negative exponents."""
        return self.is_zero() or self.min_exp() >= 0

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by X^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def exact_div(self, den: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * den == self, else raise NotDivisible."""
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        # Shift both operands into true polynomials; the exponent offset
        # of the quotient is the difference of the shifts.
        off = self.min_exp() - den.min_exp()
        num = {e - self.min_exp(): c for e, c in self._terms.items()}
        dd = {e - den.min_exp(): c for e, c in den._terms.items()}
        dend = max(dd)
        lead = dd[dend]
        quot: dict[int, Fraction] = {}
        rem = dict(num)
        while rem:
            e = max(rem)
            if e < dend:
                break
            q = rem[e] / lead
            quot[e - dend] = q
            for de, dc in dd.items():
                ne = e - dend + de
                v = rem.get(ne, Fraction(0)) - q * dc
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        if rem:
            raise NotDivisible(LaurentPoly({e + self.min_exp(): c for e, c in rem.items()}))
        return LaurentPoly({e + off: c for e, c in quot.items()})

    def __truediv__(self, other) -> "LaurentPoly":
        return self.exact_div(other)

    def substitute(self, scale, invert: bool = False) -> "LaurentPoly":
        """Return f(scale*X), or f(scale/X) when invert is set."""
        scale = _as_fraction(scale)
        if scale == 0:
            raise ValueError("substitution scale must be nonzero")
        out: dict[int, Fraction] = {}
        for e, c in self._terms.items():
            ne = -e if invert else e
            out[ne] = out.get(ne, Fraction(0)) + c * scale**e
        return LaurentPoly(out)

    def eval_at(self, x) -> Fraction:
        x = _as_fraction(x)
        if x == 0:
            if not self.is_polynomial():
                raise EvalAtZero("negative exponents cannot be evaluated at 0")
            return self.coeff(0)
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: c * e for e, c in self._terms.items() if e != 0})

    # -- serialization ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"exp": e, "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.terms()
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPoly":
        return cls({int(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in obj["terms"]})

    # -- protocol ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                mon = ""
            elif e == 1:
                mon = "X"
            else:
                mon = f"X^{e}"
            if mon and abs(c) == 1:
                cs = "-" if c < 0 else ""
            else:
                cs = str(c)
                if mon:
                    cs += "*"
            parts.append(cs + mon if mon or cs else "1")
        return " + ".join(parts).replace("+ -", "- ")
