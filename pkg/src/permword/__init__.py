"""Words for permutations over the generators sigma, tau, tau inverse.

The package synthesizes explicit generator words, certifies complexity lower
bounds through displacement and swap-counting arguments, checks the bumpiness
property that powers the closed-form bound, and cross-validates everything
against an exact breadth-first oracle at small sizes.
"""

from .bounds import (
    BoundsCertificate,
    DisplacementProfile,
    adjacent_transposition_lower_bound,
    certify,
    displacement_lower_bound,
    displacement_profile,
    hard_lower_bound_formula,
    upper_bound_formula,
    very_bumpy_lower_bound_formula,
    word_lower_bound,
)
from .bumpiness import (
    VERY_BUMPY,
    BumpinessParams,
    BumpinessReport,
    bumpy_word_lower_bound,
    hard_permutation,
    is_bc_bumpy,
    is_very_bumpy,
    not_bumpy_count_bound,
    verify_hard_profile,
)
from .core import (
    CapabilityError,
    DomainError,
    Generator,
    InternalCheckError,
    ParseError,
    Permutation,
    PermwordError,
    Word,
    compose,
    cyclic_distance,
    evaluate_word,
    format_permutation,
    format_word,
    free_reduce,
    identity,
    inverse,
    make_sigma,
    make_tau,
    make_tau_inv,
    parse_permutation,
    parse_word,
)
from .oracle import (
    DEFAULT_LIMIT,
    ComplexityTable,
    build_table,
    ensure_parents,
    export_table,
    import_table,
    rank,
    unrank,
)
from .stats import (
    EstimateResult,
    GapRow,
    bound_gap_report,
    bumpy_fraction_estimate,
    exhaustive_bumpy_count,
    random_permutation,
    sample_stream,
    wilson_interval,
)
from .synthesis import (
    cycle_decomposition,
    synthesize,
    tau_power_word,
    transposition_word,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsCertificate",
    "BumpinessParams",
    "BumpinessReport",
    "CapabilityError",
    "ComplexityTable",
    "DEFAULT_LIMIT",
    "DisplacementProfile",
    "DomainError",
    "EstimateResult",
    "GapRow",
    "Generator",
    "InternalCheckError",
    "ParseError",
    "Permutation",
    "PermwordError",
    "VERY_BUMPY",
    "Word",
    "adjacent_transposition_lower_bound",
    "bound_gap_report",
    "build_table",
    "bumpy_fraction_estimate",
    "bumpy_word_lower_bound",
    "certify",
    "compose",
    "cycle_decomposition",
    "cyclic_distance",
    "displacement_lower_bound",
    "displacement_profile",
    "ensure_parents",
    "evaluate_word",
    "exhaustive_bumpy_count",
    "export_table",
    "format_permutation",
    "format_word",
    "free_reduce",
    "hard_lower_bound_formula",
    "hard_permutation",
    "identity",
    "import_table",
    "inverse",
    "is_bc_bumpy",
    "is_very_bumpy",
    "make_sigma",
    "make_tau",
    "make_tau_inv",
    "not_bumpy_count_bound",
    "parse_permutation",
    "parse_word",
    "random_permutation",
    "rank",
    "sample_stream",
    "synthesize",
    "tau_power_word",
    "transposition_word",
    "unrank",
    "upper_bound_formula",
    "verify_hard_profile",
    "very_bumpy_lower_bound_formula",
    "wilson_interval",
    "word_lower_bound",
]
