"""Exact invariants of links of weighted homogeneous hypersurface singularities.

Given a weight vector w = (w_0, ..., w_4) and a degree d, this package
decides whether a generic hypersurface of weighted degree d in P(w) is a
quasi-smooth, well-formed Fano candidate, computes the topology of the
associated link (Milnor number, monodromy divisor, third Betti number,
|H_3| torsion order) in exact arithmetic, and searches degree ranges for
rational homology 7-spheres.  A verified catalog of 184 such spheres that
also pass the Kaehler-Einstein sufficiency inequality ships with the
package; ``singlink verify-table`` recomputes it from scratch.
"""

from .divisor import LambdaDivisor, NonIntegralDivisorError, lambda_
from .factorization import Factorization, FactorizationCapError, factorize, is_prime
from .fano import (
    QuasiSmoothDiagnostics,
    index,
    ke_sufficient,
    quasi_smooth,
    representable,
    well_formed,
)
from .invariants import (
    Candidate,
    CoprimeShortcut,
    ExpansionCapExceeded,
    RationalWeight,
    SplitShortcut,
    alexander_polynomial,
    betti3,
    coprime_shortcut,
    milnor_number,
    monodromy_divisor,
    rational_weights,
    split_decompose,
    split_invariants,
    torsion_order,
)
from .catalog import (
    TableRow,
    TwinGroup,
    emit_reports,
    emit_table,
    emit_verification,
    find_twins,
    load_table,
    parse_table,
    report_to_dict,
    verify_table,
)
from .search import (
    LinkReport,
    SearchConfig,
    ShortcutMismatchError,
    classify,
    enumerate_candidates,
    enumerate_candidates_bruteforce,
    is_rational_homology_sphere,
    run_search,
    search_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "LambdaDivisor",
    "NonIntegralDivisorError",
    "lambda_",
    "Factorization",
    "FactorizationCapError",
    "factorize",
    "is_prime",
    "QuasiSmoothDiagnostics",
    "index",
    "ke_sufficient",
    "quasi_smooth",
    "representable",
    "well_formed",
    "Candidate",
    "CoprimeShortcut",
    "ExpansionCapExceeded",
    "RationalWeight",
    "SplitShortcut",
    "alexander_polynomial",
    "betti3",
    "coprime_shortcut",
    "milnor_number",
    "monodromy_divisor",
    "rational_weights",
    "split_decompose",
    "split_invariants",
    "torsion_order",
    "TableRow",
    "TwinGroup",
    "emit_reports",
    "emit_table",
    "emit_verification",
    "find_twins",
    "load_table",
    "parse_table",
    "report_to_dict",
    "verify_table",
    "LinkReport",
    "SearchConfig",
    "ShortcutMismatchError",
    "classify",
    "enumerate_candidates",
    "enumerate_candidates_bruteforce",
    "is_rational_homology_sphere",
    "run_search",
    "search_rhs",
]
