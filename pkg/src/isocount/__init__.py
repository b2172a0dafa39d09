"""Counting maximal isotropic subgroups of finite symplectic modules K(d_1, ..., d_g)."""

__version__ = "0.1.0"

from .closed_forms import (
    CountValue,
    group_orders,
    nu,
    nu_elementary,
    nu_pp_by_type,
    nu_pp_total,
    nu_grouped_even,
    nu_grouped_odd,
    sigma,
)
from .curves import (
    CurveClassProblem,
    CurveClassReport,
    dual_type,
    genus2_curves_in_linear_system,
    genus3_translation_classes,
    n_min,
    power_type,
    theorem_group,
    translation_classes,
)
from .enumeration import (
    BudgetExceeded,
    EnumerationBudget,
    census_by_type,
    count_containing,
    count_maximal_isotropic,
    enumerate_maximal_isotropic,
)
from .labels import TypeLabel, UnclassifiableSubgroup, admissible_labels, classify
from .symplectic import (
    IllPosedInput,
    PairingValue,
    PolarizationType,
    Subgroup,
    SymplecticModule,
    abelian_invariants,
    is_isotropic,
    is_maximal_isotropic,
    make_module,
    orthogonal_complement,
    pairing,
    primary_decompose,
    quotient_with_form,
    subgroup_from_generators,
)
