"""Translation classes of genus-g curves on polarized abelian varieties.

The count of curves of genus g in the class ``r * wedge^{g-1} c_1(L)`` equals
the number of maximal isotropic subgroups (of Jacobian type) of a finite
symplectic module whose type is computed here from ``(d_1, ..., d_g)`` and
``r``.  For g = 2, 3 on a simple abelian variety every maximal isotropic
subgroup is of Jacobian type, so the counts are exact; for g >= 4 they are
only upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .closed_forms import CLOSED_FORM, CountValue, nu, sigma
from .enumeration import DEFAULT_BUDGET, EnumerationBudget
from .symplectic import IllPosedInput, PolarizationType

EXACT = "exact"
UPPER_BOUND = "upper_bound"

ASSUMES_SIMPLE = "assumes the abelian variety is simple (not checkable from the type)"
JACOBIAN_CAVEAT = (
    "g >= 4: only maximal isotropic subgroups of Jacobian type correspond to curves, "
    "and deciding Jacobian type is out of reach; the count is an upper bound"
)


def _ptype(t: PolarizationType | Sequence[int]) -> PolarizationType:
    return t if isinstance(t, PolarizationType) else PolarizationType(tuple(t))


@dataclass(frozen=True)
class CurveClassProblem:
    """The class ``r * wedge^{g-1} c_1(L)`` on an abelian variety of type ``ptype``."""

    ptype: PolarizationType
    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "ptype", _ptype(self.ptype))
        r = Fraction(self.r)
        object.__setattr__(self, "r", r)
        if r <= 0:
            raise IllPosedInput(f"r must be positive, got {r}")
        if self.ptype.g < 2:
            raise IllPosedInput("curve classes need g >= 2")
        scale = r * factorial(self.g - 1) * prod(self.ptype.divisors[:-1])
        if scale.denominator != 1:
            raise IllPosedInput(
                f"r = {r} does not give an integral class: r*(g-1)!*d_1...d_(g-1) = {scale}"
            )

    @classmethod
    def minimal(cls, ptype: PolarizationType | Sequence[int]) -> "CurveClassProblem":
        t = _ptype(ptype)
        return cls(t, Fraction(1, factorial(t.g - 1) * prod(t.divisors[:-1])))

    @property
    def g(self) -> int:
        return self.ptype.g

    @property
    def beta(self) -> Fraction:
        """``r (g-1)! deg L``."""
        return self.r * factorial(self.g - 1) * self.ptype.degree

    @property
    def exponent(self) -> Fraction:
        """Power of the dual polarization whose K-group carries the count."""
        return self.r * factorial(self.g - 1) * prod(self.ptype.divisors[1:-1])

    @property
    def isogeny_degree(self) -> Fraction:
        """Degree of the isogeny from the Jacobian: ``r^g ((g-1)!)^g (deg L)^{g-1}``."""
        g = self.g
        return self.r ** g * factorial(g - 1) ** g * self.ptype.degree ** (g - 1)


@dataclass(frozen=True)
class CurveClassReport:
    problem: CurveClassProblem
    theorem_group_type: PolarizationType
    count: CountValue
    interpretation: str
    warnings: tuple[str, ...] = field(default=())


def dual_type(ptype: PolarizationType | Sequence[int]) -> PolarizationType:
    """Type ``(d_1, d_1 d_g/d_{g-1}, ..., d_1 d_g/d_2, d_g)`` of the dual polarization."""
    d = _ptype(ptype).divisors
    g = len(d)
    if g == 1:
        return PolarizationType(d)
    middle = tuple(d[0] * d[-1] // d[i] for i in range(g - 2, 0, -1))
    return PolarizationType((d[0],) + middle + (d[-1],))


def power_type(ptype: PolarizationType | Sequence[int], k: int) -> PolarizationType:
    if k <= 0:
        raise IllPosedInput(f"power must be positive, got {k}")
    return PolarizationType(tuple(k * d for d in _ptype(ptype).divisors))


def theorem_group(problem: CurveClassProblem) -> PolarizationType:
    """Type ``r (g-1)! (deg L/d_g, ..., deg L/d_1)`` of the module to count in."""
    d = problem.ptype.divisors
    g = problem.g
    deg = problem.ptype.degree
    scale = problem.r * factorial(g - 1)
    entries = [scale * (deg // x) for x in reversed(d)]
    bad = [e for e in entries if e.denominator != 1]
    if bad:
        raise IllPosedInput(f"class is not integral: theorem group entries {entries}")
    result = PolarizationType(tuple(int(e) for e in entries))
    if problem.exponent.denominator == 1:
        via_dual = power_type(dual_type(problem.ptype), int(problem.exponent))
        if via_dual != result:
            raise AssertionError(f"{via_dual} != {result}: dual-power route disagrees")
    if g == 3:
        r = problem.r
        d1, d2, d3 = d
        triple = tuple(2 * r * x for x in (d1 * d2, d1 * d3, d2 * d3))
        if triple != result.divisors:
            raise AssertionError(f"genus-3 shortcut {triple} != {result}")
    return result


def genus2_curves_in_linear_system(
    ptype: PolarizationType | Sequence[int],
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
) -> CountValue:
    """Curves of genus 2 in ``|L|`` on a simple abelian surface: ``d_1^2 d_2^2 nu(d_1, d_2)``."""
    t = _ptype(ptype)
    if t.g != 2:
        raise IllPosedInput("linear-system count needs a type (d_1, d_2)")
    base = nu(t, budget, use_pins)
    factor = t.degree ** 2
    return CountValue(
        factor * base.value,
        base.method,
        base.parts,
        base.warnings + (ASSUMES_SIMPLE,),
    )


def genus3_translation_classes(
    problem: CurveClassProblem,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
) -> CurveClassReport:
    if problem.g != 3:
        raise IllPosedInput("genus-3 count needs a type (d_1, d_2, d_3)")
    group = theorem_group(problem)
    count = nu(group, budget, use_pins)
    return CurveClassReport(problem, group, count, EXACT, count.warnings + (ASSUMES_SIMPLE,))


def translation_classes(
    problem: CurveClassProblem,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
) -> CurveClassReport:
    """Count for any g; exact for g <= 3, an upper bound beyond."""
    group = theorem_group(problem)
    count = nu(group, budget, use_pins)
    if problem.g <= 3:
        return CurveClassReport(problem, group, count, EXACT, count.warnings + (ASSUMES_SIMPLE,))
    return CurveClassReport(problem, group, count, UPPER_BOUND, count.warnings + (JACOBIAN_CAVEAT,))


def n_min(
    ptype: PolarizationType | Sequence[int],
    budget: EnumerationBudget = DEFAULT_BUDGET,
    use_pins: bool = False,
) -> CurveClassReport:
    """Translation classes of genus-g curves in the minimal cohomology class."""
    t = _ptype(ptype)
    d1 = t.divisors[0]
    reduced = PolarizationType(tuple(d // d1 for d in t.divisors))
    problem = CurveClassProblem.minimal(reduced)
    if t.g == 2:
        group = theorem_group(problem)
        value = sigma(reduced.divisors[1])
        count = CountValue(value, CLOSED_FORM)
        return CurveClassReport(problem, group, count, EXACT, (ASSUMES_SIMPLE,))
    if t.g == 3:
        _, d2, d3 = reduced.divisors
        group = PolarizationType((d3 // d2, d3))
        count = nu(group, budget, use_pins)
        return CurveClassReport(
            problem, theorem_group(problem), count, EXACT, count.warnings + (ASSUMES_SIMPLE,)
        )
    return translation_classes(problem, budget, use_pins)
