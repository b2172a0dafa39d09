"""Closed-form counts of maximal isotropic subgroups and the hybrid counter ``nu``.

All arithmetic is exact integer arithmetic.  Wherever a printed formula
divides, divisibility is asserted first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .enumeration import DEFAULT_BUDGET, EnumerationBudget, count_by_enumeration
from .reference import DISCREPANCIES
from .labels import TypeLabel, admissible_labels, is_admissible
from .symplectic import (
    IllPosedInput,
    PolarizationType,
    factorize,
    is_prime,
    make_module,
    valuation,
)

CLOSED_FORM = "closed_form"
ENUMERATION = "enumeration"
PRODUCT = "product_of_components"
TABLE_PIN = "table_pin"

# Primary components whose published count is self-contradictory; these always
# go through enumeration (or its pinned result), never a closed form.
CONTESTED: dict[tuple[int, tuple[int, ...]], tuple[int, int]] = {(2, (4, 4)): (16, 16)}


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise IllPosedInput(f"{p} is not prime")


@dataclass(frozen=True)
class CountValue:
    value: int
    method: str
    parts: tuple = ()
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("counts are non-negative")
        if self.method not in (CLOSED_FORM, ENUMERATION, PRODUCT, TABLE_PIN):
            raise ValueError(f"unknown method {self.method!r}")

    def __int__(self) -> int:
        return self.value


def sigma(d: int) -> int:
    """Sum of the positive divisors of ``d``."""
    if d < 1:
        raise IllPosedInput(f"sigma needs d >= 1, got {d}")
    return prod(_exact_div(p ** (a + 1) - 1, p - 1) for p, a in factorize(d).items())


def nu_elementary(p: int, g: int) -> int:
    _require_prime(p)
    if g < 1:
        raise IllPosedInput("g must be positive")
    return prod(p ** i + 1 for i in range(1, g + 1))


@dataclass(frozen=True)
class GroupOrders:
    sp_order: int
    gl_order: int
    stabilizer_order: int

    @property
    def quotient(self) -> int:
        return _exact_div(self.sp_order, self.stabilizer_order)


def group_orders(g: int, p: int) -> GroupOrders:
    """``|Sp(2g, p)|``, ``|GL(g, p)|`` and the order of a Lagrangian stabilizer.

    The stabilizer is ``GL(g, p)`` extended by the symmetric ``g x g`` matrices.
    """
    _require_prime(p)
    if g < 1:
        raise IllPosedInput("g must be positive")
    sp = p ** (g * g) * prod(p ** (2 * i) - 1 for i in range(1, g + 1))
    gl = prod(p ** g - p ** i for i in range(g))
    return GroupOrders(sp, gl, gl * p ** (g * (g + 1) // 2))


def nu_pp_by_type(p: int, n: int, label: TypeLabel) -> int:
    """Maximal isotropic subgroups of K(p^n, p^n) of the given type."""
    _require_prime(p)
    if label.p not in (0, p) or label.n != n or not is_admissible(label):
        raise IllPosedInput(f"type {label.name} is not admissible for K({p}^{n},{p}^{n})")
    a = (p * p + 1) * (p + 1)
    kind, k, l = label.kind, label.k, label.l
    if kind == 1:
        return p ** (3 * n - 3) * a
    if kind == 2:
        return p ** (3 * n - 2 * k - 4) * a * (p + 1)
    if kind == 3:
        return p ** (2 * n - 3) * a
    if kind == 4:
        return p ** (3 * n - 4 * l - 2 * k - 4) * a * (p + 1)
    if kind == 5:
        return p ** (2 * n - 4 * l - 3) * a
    if kind == 6:
        return p ** (3 * n - 6 * k - 3) * a
    return 1


def nu_pp_total(p: int, n: int) -> int:
    _require_prime(p)
    if n < 0:
        raise IllPosedInput("n must be non-negative")
    if n == 0:
        return 1
    return sum(nu_pp_by_type(p, n, lab) for lab in admissible_labels(p, n))


def nu_grouped_odd(p: int, m: int) -> int:
    """Grouped closed form for nu(p^{2m+1}, p^{2m+1}), valid for m >= 2."""
    _require_prime(p)
    if m < 2:
        raise IllPosedInput("the odd-exponent grouped formula is stated for m >= 2 only")
    bracket1 = (
        p ** (6 * m)
        + _exact_div(p ** (4 * m - 1) * (p ** (2 * m) - 1), p - 1)
        + _exact_div(p ** (6 * m) - 1, p ** 6 - 1)
    )
    bracket2 = (
        p ** (4 * m - 1) * _exact_div(p ** (2 * m - 2) - 1, p * p - 1)
        - p ** 3 * _exact_div(p ** (6 * m - 6) - 1, p ** 6 - 1)
    )
    return (p * p + 1) * (p + 1) * bracket1 + _exact_div((p + 1) * bracket2, p - 1)


def nu_grouped_even(p: int, m: int) -> int:
    """Grouped closed form for nu(p^{2m}, p^{2m}), valid for m >= 3."""
    _require_prime(p)
    if m < 3:
        raise IllPosedInput("the even-exponent grouped formula is stated for m >= 3 only")
    bracket1 = (
        p ** (6 * m - 3)
        + p ** (4 * m - 2) * _exact_div(p ** (2 * m - 2) - 1, p - 1)
        + p ** (4 * m - 3)
        + p * _exact_div(p ** (4 * m - 4) - 1, p ** 4 - 1)
        + p ** 3 * _exact_div(p ** (6 * m - 6) - 1, p ** 6 - 1)
    )
    bracket2 = (
        p ** (4 * m - 2) * _exact_div(p ** (2 * m - 4) - 1, p * p - 1)
        - p ** 6 * _exact_div(p ** (6 * m - 12) - 1, p ** 6 - 1)
    )
    return (p * p + 1) * (p + 1) * bracket1 + _exact_div((p + 1) * bracket2, p - 1) + 1


@dataclass(frozen=True)
class ComponentCount:
    prime: int
    exponents: tuple[int, ...]
    value: int
    method: str
    rule: str


def component_count(
    p: int,
    exponents: Sequence[int],
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
    jobs: int = 1,
) -> tuple[ComponentCount, list[str]]:
    """Count for the p-primary module K(p^{a_1}, ..., p^{a_g}).

    Leading zero exponents are stripped before dispatch, since K(1, ..., 1, m, n)
    and K(m, n) have the same maximal isotropic subgroups.
    """
    exps = tuple(a for a in exponents if a != 0)
    warnings: list[str] = []
    if not exps:
        return ComponentCount(p, exps, 1, CLOSED_FORM, "trivial"), warnings
    key = (p, exps)
    if key in CONTESTED:
        cell = CONTESTED[key]
        c = DISCREPANCIES[cell]
        warnings.append(
            f"nu{cell}: published table value {c.published} conflicts with the per-type "
            f"sum {nu_pp_total(p, exps[0])}; exhaustive enumeration decides ({c.enumerated})"
        )
        if use_pins:
            return ComponentCount(p, exps, c.enumerated, TABLE_PIN, "oracle pin"), warnings
        value = count_by_enumeration(make_module(tuple(p ** a for a in exps)), budget, jobs)
        return ComponentCount(p, exps, value, ENUMERATION, "adjudicated"), warnings
    if len(exps) == 1:
        return ComponentCount(p, exps, sigma(p ** exps[0]), CLOSED_FORM, "sigma"), warnings
    if all(a == 1 for a in exps):
        return (
            ComponentCount(p, exps, nu_elementary(p, len(exps)), CLOSED_FORM, "elementary"),
            warnings,
        )
    if len(exps) == 2 and exps[0] == exps[1]:
        return ComponentCount(p, exps, nu_pp_total(p, exps[0]), CLOSED_FORM, "type_sum"), warnings
    value = count_by_enumeration(make_module(tuple(p ** a for a in exps)), budget, jobs)
    return ComponentCount(p, exps, value, ENUMERATION, "enumeration"), warnings


def nu(
    ptype: PolarizationType | Sequence[int],
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
    jobs: int = 1,
) -> CountValue:
    """Number of maximal isotropic subgroups of K(ptype), hybrid dispatch.

    Each primary component goes to the cheapest exact route; components are
    multiplied.  ``use_pins`` lets contested components use the stored
    enumeration result instead of re-enumerating.
    """
    if not isinstance(ptype, PolarizationType):
        ptype = PolarizationType(tuple(ptype))
    divs = ptype.divisors
    parts = []
    warnings: list[str] = []
    for p in sorted(factorize(divs[-1])):
        comp, w = component_count(p, [valuation(d, p) for d in divs], budget, use_pins, jobs)
        parts.append(comp)
        warnings.extend(w)
    value = prod(c.value for c in parts)
    if not parts:
        method = CLOSED_FORM
    elif len(parts) == 1:
        method = parts[0].method
    else:
        method = PRODUCT
    return CountValue(value, method, tuple(parts), tuple(warnings))
