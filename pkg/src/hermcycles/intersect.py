"""Closed-form intersection numbers of special-cycle triples and the
cross-identities tying them to representation densities.

The fundamental quantity is the triple intersection number for cycles
whose Gram matrix is equivalent to diag(p^a1, p^a2, p^a3) with odd
exponent sum; difference-divisor triples are *defined* from it by
inclusion-exclusion (each difference factor subtracts the cycle with
exponent lowered by 2), and the families of printed case formulas are
treated as cross-checks against that definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .density import alpha_prime, alpha_self
from .errors import HermcyclesError


class OddSumRequired(HermcyclesError):
    """Triple intersection numbers need an odd exponent sum."""


class HalfNotIntegral(HermcyclesError):
    """The halved double sum failed to be an integer (never expected)."""


class CaseMismatch(HermcyclesError):
    """A closed-form case was applied outside its hypotheses."""


def _sorted_triple(triple) -> tuple[int, int, int]:
    t = tuple(int(a) for a in triple)
    if len(t) != 3:
        raise ValueError(f"need exactly three exponents, got {t}")
    return tuple(sorted(t))


def intersection_number(p: int, triple) -> int:
    """Triple intersection number for diag(p^a1, p^a2, p^a3), odd sum:

    -(1/2) sum_{k=0..a1} sum_{l=0..a1+a2-2k} (-1)^k
        ((k+l) p^(2k+l) - (k+l+a3+1) p^(a1+a2-l)).
    """
    a1, a2, a3 = _sorted_triple(triple)
    if a1 < 0:
        raise ValueError(f"exponents must be nonnegative: {(a1, a2, a3)}")
    if (a1 + a2 + a3) % 2 == 0:
        raise OddSumRequired(f"{(a1, a2, a3)} has even sum")
    total = 0
    for k in range(a1 + 1):
        sign = (-1) ** k
        for l in range(a1 + a2 - 2 * k + 1):
            total += sign * (
                (k + l) * p ** (2 * k + l) - (k + l + a3 + 1) * p ** (a1 + a2 - l)
            )
    if total % 2 != 0:
        raise HalfNotIntegral(f"double sum {total} is odd for p={p}, triple={(a1, a2, a3)}")
    return -total // 2


def ztriple(p: int, triple) -> int:
    """Intersection number extended by zero to negative exponents.

    Negative exponents correspond to empty cycles, so any such triple
    contributes 0; otherwise the arguments are sorted and evaluated.
    """
    t = tuple(int(a) for a in triple)
    if len(t) != 3:
        raise ValueError(f"need exactly three exponents, got {t}")
    if any(a < 0 for a in t):
        return 0
    return intersection_number(p, sorted(t))


FULL_PATTERN = (True, True, True)


def dtriple_inclusion_exclusion(p: int, triple, pattern=FULL_PATTERN) -> int:
    """Replace the selected factors by difference divisors via
    inclusion-exclusion: each selected slot alternates a_i and a_i - 2.

    With the full pattern this is the plain difference-divisor triple.
    """
    t = tuple(int(a) for a in triple)
    if len(t) != 3 or len(pattern) != 3:
        raise ValueError("triple and pattern must have length 3")
    if sum(a for a in t if a >= 0) % 2 == 0 and all(a >= 0 for a in t):
        raise OddSumRequired(f"{t} has even sum")
    total = 0
    for e1 in range(2 if pattern[0] else 1):
        for e2 in range(2 if pattern[1] else 1):
            for e3 in range(2 if pattern[2] else 1):
                shifted = (t[0] - 2 * e1, t[1] - 2 * e2, t[2] - 2 * e3)
                total += (-1) ** (e1 + e2 + e3) * ztriple(p, shifted)
    return total


# -- printed case formulas ----------------------------------------------

# All-odd family: three perpendicular cycles of odd valuations
# 1 <= a1 <= a2 <= a3.  "combination" spells out which mix of plain
# cycles / difference divisors the printed value refers to.


def _all_odd(t):
    return all(a % 2 == 1 for a in t) and t[0] >= 1


def _one_odd(t):
    return sum(a % 2 for a in t) == 1 and t[0] >= 1


@dataclass(frozen=True)
class CaseFormula:
    name: str
    description: str
    applies: callable
    value: callable
    combination: callable


def _combo_full(p, t):
    return dtriple_inclusion_exclusion(p, t, FULL_PATTERN)


def _combo_first_only(p, t):
    return dtriple_inclusion_exclusion(p, t, (True, False, False))


def _combo_last_two(p, t):
    return dtriple_inclusion_exclusion(p, t, (False, True, True))


CASE_FORMULAS: tuple[CaseFormula, ...] = (
    CaseFormula(
        "odd3_distinct",
        "all odd, a1 < a2 < a3: difference triple vanishes",
        lambda t: _all_odd(t) and t[0] < t[1] < t[2],
        lambda p, t: 0,
        _combo_full,
    ),
    CaseFormula(
        "odd3_top_pair",
        "all odd, a1 < a2 = a3",
        lambda t: _all_odd(t) and t[0] < t[1] == t[2],
        lambda p, t: -((t[0] + 1) // 2 * p**2 - (t[0] - 1) // 2)
        * (p + 1)
        * p ** (t[0] + t[1] - 3),
        _combo_full,
    ),
    CaseFormula(
        "odd3_bottom_pair",
        "all odd, a1 = a2 < a3",
        lambda t: _all_odd(t) and t[0] == t[1] < t[2],
        lambda p, t: (p + 1) * p ** (2 * t[0] - 2),
        _combo_full,
    ),
    CaseFormula(
        "odd3_equal",
        "all odd, a1 = a2 = a3 = a: mixed combination "
        "(D1, Z2, Z3) - (D1, Z2/p, Z3/p)",
        lambda t: _all_odd(t) and t[0] == t[1] == t[2],
        lambda p, t: -((t[0] + 1) // 2 * p - (t[0] + 3) // 2)
        * (p + 1)
        * p ** (2 * t[0] - 2),
        lambda p, t: _combo_first_only(p, t)
        - _combo_first_only(p, (t[0], t[1] - 2, t[2] - 2)),
    ),
    CaseFormula(
        "one_odd_mid",
        "exactly one odd, a2 odd (so a1, a3 even, a1 < a2 < a3)",
        lambda t: _one_odd(t) and t[1] % 2 == 1,
        lambda p, t: (p**2 - 1) * (p + 1) * p ** (t[0] + t[1] - 3),
        _combo_full,
    ),
    CaseFormula(
        "one_odd_bottom_pair",
        "exactly one odd, a1 = a2 (both even): mixed combination "
        "(Z1, D2, D3)",
        lambda t: _one_odd(t) and t[0] == t[1],
        lambda p, t: p ** (2 * t[0] - 2) * (p**2 - 1),
        _combo_last_two,
    ),
    CaseFormula(
        "one_odd_top_odd",
        "exactly one odd, a1 < a2 and a3 odd",
        lambda t: _one_odd(t) and t[0] < t[1] and t[2] % 2 == 1,
        lambda p, t: (p**2 - 1) * (p + 1) * p ** (t[0] + t[1] - 3),
        _combo_full,
    ),
    CaseFormula(
        "one_odd_low",
        "exactly one odd, a1 odd and a2 < a3: difference triple vanishes",
        lambda t: _one_odd(t) and t[0] % 2 == 1 and t[1] < t[2],
        lambda p, t: 0,
        _combo_full,
    ),
    CaseFormula(
        "one_odd_top_pair",
        "exactly one odd, a2 = a3 (both even, a1 odd)",
        lambda t: _one_odd(t) and t[1] == t[2],
        lambda p, t: -((t[0] + 1) // 2 * p**2 - (t[0] - 1) // 2)
        * (p + 1)
        * p ** (t[0] + t[1] - 3),
        _combo_full,
    ),
)


def applicable_cases(triple) -> list[CaseFormula]:
    t = _sorted_triple(triple)
    return [c for c in CASE_FORMULAS if c.applies(t)]


def dtriple_closed(p: int, triple, case_name: str) -> int:
    """Value of a printed case formula; CaseMismatch outside its hypotheses."""
    t = _sorted_triple(triple)
    for c in CASE_FORMULAS:
        if c.name == case_name:
            if not c.applies(t):
                raise CaseMismatch(f"case {case_name} does not apply to {t}")
            return c.value(p, t)
    raise CaseMismatch(f"unknown case {case_name!r}")


@dataclass(frozen=True)
class CaseCheck:
    p: int
    triple: tuple[int, int, int]
    case: str
    closed: int
    computed: int

    @property
    def passed(self) -> bool:
        return self.closed == self.computed


def check_case_consistency(p: int, max_a3: int) -> list[CaseCheck]:
    """Compare every applicable printed formula with the inclusion-exclusion
    value of the same cycle/difference combination, for all odd-sum triples
    with 1 <= a1 <= a2 <= a3 <= max_a3."""
    out = []
    for a1 in range(1, max_a3 + 1):
        for a2 in range(a1, max_a3 + 1):
            for a3 in range(a2, max_a3 + 1):
                t = (a1, a2, a3)
                if sum(t) % 2 == 0:
                    continue
                for c in applicable_cases(t):
                    out.append(
                        CaseCheck(p, t, c.name, c.value(p, t), c.combination(p, t))
                    )
    return out


def check_kr_identity(p: int, triple) -> bool:
    """Exact check of the main identity: the triple intersection number
    equals the normalized density derivative -G'(1) / alpha_self."""
    t = _sorted_triple(triple)
    lhs = Fraction(intersection_number(p, t))
    rhs = alpha_prime(p, t) / alpha_self(p)
    return lhs == rhs


def kr_identity_sides(p: int, triple) -> tuple[int, Fraction]:
    """Both sides of the main identity, for reporting."""
    t = _sorted_triple(triple)
    return intersection_number(p, t), alpha_prime(p, t) / alpha_self(p)
