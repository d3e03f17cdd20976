"""Exact Mermin-operator toolkit for many-qutrit (and odd-d qudit) GHZ states.

Everything that can be exact is exact: amplitudes, operator weights, and
hidden-variable values are cyclotomic integers, so eigenvalue checks,
classical maxima, and tie counts are decided by integer arithmetic rather
than floating-point comparisons.
"""

from .cyclotomic import CycInt, PhaseExponent, root_of_unity
from .generalized import (
    ConjectureReport,
    GeneralConfig,
    UniformFactorSet,
    build_general_mermin,
    conjecture_search,
    expand_general_identity,
    general_uniform_value,
    uniform_factors,
    verify_general_eigenvalue,
)
from .hidden_variables import (
    A_VALUE,
    B_VALUE,
    C_VALUE,
    FactorTriple,
    HVAssignment,
    PermutationClassReport,
    SearchResult,
    WitnessRecord,
    contradiction_witness,
    exhaustive_search,
    factor_table,
    factor_value,
    ghz_contradiction_count,
    hv_value_direct,
    hv_value_product,
    hv_value_product_exact,
    iter_contradiction_witnesses,
    max_equals_uniform,
    permutation_class_max,
    power_sum,
    uniform_value,
    violation_ratio,
)
from .mermin import (
    IdentityReport,
    MerminOperator,
    PositionCounts,
    build_mermin,
    counts_by_position,
    expand_identity,
    verify_eigenvalue,
)
from .qudit_ops import (
    EigenstateError,
    LocalObservable,
    SettingWord,
    StateVector,
    apply_word,
    bloch_check,
    eigenphase,
    ghz_state,
    word_position,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CycInt",
    "PhaseExponent",
    "root_of_unity",
    "LocalObservable",
    "SettingWord",
    "StateVector",
    "EigenstateError",
    "ghz_state",
    "apply_word",
    "word_position",
    "bloch_check",
    "eigenphase",
    "MerminOperator",
    "PositionCounts",
    "IdentityReport",
    "build_mermin",
    "verify_eigenvalue",
    "counts_by_position",
    "expand_identity",
    "A_VALUE",
    "B_VALUE",
    "C_VALUE",
    "FactorTriple",
    "HVAssignment",
    "SearchResult",
    "PermutationClassReport",
    "WitnessRecord",
    "factor_value",
    "factor_table",
    "hv_value_direct",
    "hv_value_product",
    "hv_value_product_exact",
    "power_sum",
    "uniform_value",
    "exhaustive_search",
    "max_equals_uniform",
    "permutation_class_max",
    "ghz_contradiction_count",
    "contradiction_witness",
    "iter_contradiction_witnesses",
    "violation_ratio",
    "GeneralConfig",
    "UniformFactorSet",
    "ConjectureReport",
    "build_general_mermin",
    "verify_general_eigenvalue",
    "uniform_factors",
    "general_uniform_value",
    "expand_general_identity",
    "conjecture_search",
]
