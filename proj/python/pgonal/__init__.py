"""Representation of integers by generalized m-gonal forms.

Thin wrapper over the C++ core. All deciders are exact over the p-adic
integers; global searches are exhaustive within their stated bounds.
"""

from ._pgonal import (  # noqa: F401
    DomainError,
    ParseError,
    PrecisionError,
    cs_admissible,
    decompose,
    diag_represents,
    evaluate,
    exception_scan,
    find_k,
    growth_scan,
    guaranteed_any_k,
    jordan_decompose,
    k_budget,
    k_period_check,
    load_report,
    local_represents_at,
    locally_represented,
    optimality_probe,
    ord,
    polygonal_number,
    rank4_remark_check,
    reduced_data,
    represents,
    save_report,
    square_class,
    system_locally_solvable,
)

__version__ = "0.1.0"
