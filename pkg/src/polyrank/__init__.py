"""Lower bounds, boolean factorizations and psd certificates for polygon slack matrices."""

from .boolfact import BooleanFactorization, trivial_padding, verify_boolean
from .bounds import bound_report, m1, m2, s_bound, s_plus_bound, t_bound
from .cyclesearch import SearchOutcome, find_cycle, hom_boolean_rank, max_cycle_survey
from .johnson import FactorizingCycle, is_factorizing_cycle
from .psdmin import (
    GaussianRootCertificate,
    psd_minimality_report,
    scan_trinomial_obstructions,
    symbolic_minors,
    verify_hadamard_certificate,
)
from .slack import SlackMatrix, SymbolicSlackMatrix, regular_gon_slack, symbolic_slack

__all__ = [
    "BooleanFactorization",
    "trivial_padding",
    "verify_boolean",
    "bound_report",
    "m1",
    "m2",
    "s_bound",
    "s_plus_bound",
    "t_bound",
    "SearchOutcome",
    "find_cycle",
    "hom_boolean_rank",
    "max_cycle_survey",
    "FactorizingCycle",
    "is_factorizing_cycle",
    "GaussianRootCertificate",
    "psd_minimality_report",
    "scan_trinomial_obstructions",
    "symbolic_minors",
    "verify_hadamard_certificate",
    "SlackMatrix",
    "SymbolicSlackMatrix",
    "regular_gon_slack",
    "symbolic_slack",
]
