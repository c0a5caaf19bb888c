"""Representation-density polynomials for hermitian forms at an inert prime.

For a hermitian lattice with diagonal form diag(p^a1, ..., p^an) the
interpolation polynomial F(X) satisfies

    density against the rank-(n+s) unit form  =  F((-p)^(-s)),

and is computed here by an exact divisibility recursion on n.  The rank-3
shifted polynomial G(X) = F(-X/p^3), its closed form for odd exponent sum,
its derivative at 1, and two internal identities (a two-step recursion in
the top exponent and a functional equation under X -> p^(-2n)/X) are all
exposed as exactly checkable statements.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from functools import lru_cache

from .errors import HermcyclesError
from .laurent import LaurentPoly


class OddSumRequired(HermcyclesError):
    """The exponent sum must be odd for this quantity to be defined."""


def _normalize_exponents(exps) -> tuple[int, ...]:
    t = tuple(int(a) for a in exps)
    if any(a < 0 for a in t):
        raise ValueError(f"exponents must be nonnegative: {t}")
    if list(t) != sorted(t):
        raise ValueError(f"exponents must be sorted nondecreasingly: {t}")
    return t


def h_poly(p: int) -> LaurentPoly:
    """(1 - X)(1 + pX)."""
    return LaurentPoly({0: 1, 1: -1}) * LaurentPoly({0: 1, 1: p})


def a_poly(p: int, exps: tuple[int, ...]) -> LaurentPoly:
    """Correction factor of the rank recursion for the top exponent a_n.

    (1 - (-p)^(n-1) X) (1 - (-p)^(-n) X^(-1)) (-p)^(a1+..+a_{n-1})
    (-1)^((n+1) a_n) (p^n X)^(a_n + 2).
    """
    n = len(exps)
    an = exps[-1]
    f1 = LaurentPoly({0: 1, 1: -((-p) ** (n - 1))})
    f2 = LaurentPoly({0: 1, -1: -Fraction(1, (-p) ** n)})
    scalar = Fraction((-p) ** sum(exps[:-1]) * (-1) ** ((n + 1) * an))
    mono = LaurentPoly({an + 2: scalar * p ** (n * (an + 2))})
    return f1 * f2 * mono


def f_poly_rank1(p: int, a: int) -> LaurentPoly:
    """Base case: (1 - X) * sum_{l=0..a} (pX)^l."""
    if a < 0:
        raise ValueError("exponent must be nonnegative")
    geo = LaurentPoly({l: p**l for l in range(a + 1)})
    return LaurentPoly({0: 1, 1: -1}) * geo


@lru_cache(maxsize=None)
def f_poly(p: int, exps: tuple[int, ...]) -> LaurentPoly:
    """Density polynomial F for diag(p^a1, ..., p^an), by recursion on n.

    The empty tuple yields 1 (the convention that makes the two-step
    recursion uniform down to n = 1).  The denominator 1 - p^(2n) X^2
    must divide exactly; a NotDivisible escape indicates a transcription
    bug, never a property of valid input.
    """
    exps = _normalize_exponents(exps)
    n = len(exps)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        f = f_poly_rank1(p, exps[0])
    else:
        sub = f_poly(p, exps[:-1])
        num = h_poly(p) * sub.substitute(p * p) - a_poly(p, exps) * sub
        den = LaurentPoly({0: 1, 2: -(p ** (2 * n))})
        f = num.exact_div(den)
    _check_invariants(p, exps, f)
    return f


def _check_invariants(p: int, exps: tuple[int, ...], f: LaurentPoly) -> None:
    n = len(exps)
    if not f.is_polynomial() or f.coeff(0) != 1 or f.degree() != n + sum(exps):
        raise AssertionError(f"density polynomial invariants violated for p={p}, exps={exps}")
    if any(c.denominator != 1 for _, c in f.terms()):
        # Observed empirically on every tested input, but only rationality
        # is guaranteed, so a violation is reported rather than raised.
        warnings.warn(f"non-integer coefficient in F for p={p}, exps={exps}", stacklevel=2)


def shifted_poly(p: int, exps) -> LaurentPoly:
    """G(X) = F(-X/p^3): interpolates densities against unit forms of rank 3+r.

    Only defined for rank 3.  When the exponent sum is odd, G(1) = 0
    (the lattice is not represented by the unimodular form of equal rank).
    """
    exps = _normalize_exponents(exps)
    if len(exps) != 3:
        raise ValueError("shifted polynomial is defined for rank-3 forms only")
    g = f_poly(p, exps).substitute(Fraction(-1, p**3))
    if sum(exps) % 2 == 1 and g.eval_at(1) != 0:
        raise AssertionError(f"G(1) != 0 for odd exponent sum, p={p}, exps={exps}")
    return g


def closed_form_gu3(p: int, exps) -> LaurentPoly:
    """Closed form of the shifted polynomial for odd exponent sum.

    (1 + X/p^3)(1 - X/p^2)(1 + X/p) / (1 + X) times the double sum
    sum_{k=0..a1} sum_{l=0..a1+a2-2k} (-1)^k X^(k+l)
    (p^(2k+l) - p^(a1+a2-l) X^(a3+1)).

    The division by 1 + X is required to be exact.
    """
    a1, a2, a3 = _normalize_exponents(exps)
    if (a1 + a2 + a3) % 2 == 0:
        raise OddSumRequired(f"exponent sum of {exps} must be odd")
    inner = LaurentPoly.zero()
    for k in range(a1 + 1):
        for l in range(a1 + a2 - 2 * k + 1):
            sign = (-1) ** k
            t = LaurentPoly(
                {
                    k + l: sign * p ** (2 * k + l),
                    k + l + a3 + 1: -sign * p ** (a1 + a2 - l),
                }
            )
            inner = inner + t
    pref = (
        LaurentPoly({0: 1, 1: Fraction(1, p**3)})
        * LaurentPoly({0: 1, 1: Fraction(-1, p**2)})
        * LaurentPoly({0: 1, 1: Fraction(1, p)})
    )
    return (pref * inner).exact_div(LaurentPoly({0: 1, 1: 1}))


def alpha(p: int, s: int, exps) -> Fraction:
    """Density of diag(p^ai) against the rank-s unit form: F((-p)^(-s))."""
    if s < 1:
        raise ValueError("s must be >= 1")
    exps = _normalize_exponents(exps)
    return f_poly(p, exps).eval_at(Fraction(1, (-p) ** s))


def alpha_self(p: int) -> Fraction:
    """Density of the rank-3 unit form against itself.

    (1 + 1/p)(1 - 1/p^2)(1 + 1/p^3).
    """
    return (
        (1 + Fraction(1, p))
        * (1 - Fraction(1, p**2))
        * (1 + Fraction(1, p**3))
    )


def alpha_prime(p: int, exps) -> Fraction:
    """Derivative quantity -G'(1) for a rank-3 form with odd exponent sum."""
    exps = _normalize_exponents(exps)
    if sum(exps) % 2 == 0:
        raise OddSumRequired(f"exponent sum of {exps} must be odd")
    g = shifted_poly(p, exps)
    return -g.derivative().eval_at(1)


def beta_rank1(p: int, s: int) -> Fraction:
    """Primitive-solution density for a rank-1 target against the unit rank-s
    form: (1 - p^(-s))(1 + p^(1-s)), independent of the target exponent."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return (1 - Fraction(1, p**s)) * (1 + Fraction(p, p**s))


def t_denominator(p: int, n: int) -> LaurentPoly:
    """prod_{i=0..n-1} (1 - (-p)^i X): the cleared denominator of the
    functional-equation weight."""
    out = LaurentPoly.one()
    for i in range(n):
        out = out * LaurentPoly({0: 1, 1: -((-p) ** i)})
    return out


def check_functional_equation(p: int, exps) -> bool:
    """Exact check of the symmetry under X -> p^(-2n) X^(-1).

    In cross-multiplied (denominator-free) form:
    F(X) * prod_i (1 - (-p)^i p^(-2n) X^(-1))
      == ((-1)^(n+1) p^n X)^(sum a_i) * F(p^(-2n) X^(-1)) * prod_i (1 - (-p)^i X).
    """
    exps = _normalize_exponents(exps)
    n = len(exps)
    if n == 0:
        return True
    f = f_poly(p, exps)
    scale = Fraction(1, p ** (2 * n))
    lhs = f * t_denominator(p, n).substitute(scale, invert=True)
    total = sum(exps)
    const = Fraction(((-1) ** (n + 1)) * p**n) ** total
    rhs = (
        LaurentPoly({total: const})
        * f.substitute(scale, invert=True)
        * t_denominator(p, n)
    )
    return lhs == rhs


def check_recursion_star(p: int, exps) -> bool:
    """Exact check of the two-step recursion in the top exponent:

    F(X; a1..an+2) == p^(2n) X^2 F(X; a1..an) + H(X) F(p^2 X; a1..a_{n-1}).
    """
    exps = _normalize_exponents(exps)
    if not exps:
        raise ValueError("need at least one exponent")
    n = len(exps)
    plus = exps[:-1] + (exps[-1] + 2,)
    lhs = f_poly(p, plus)
    rhs = LaurentPoly({2: p ** (2 * n)}) * f_poly(p, exps) + h_poly(p) * f_poly(
        p, exps[:-1]
    ).substitute(p * p)
    return lhs == rhs
