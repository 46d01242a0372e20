from .cnf import CnfFormula, CnfReductionCheck, brute_force_sharp_sat, check_cnf_reduction, cnf_to_nsl
from .dimacs import format_dimacs, parse_dimacs
from .setcover import (
    SetCoverInstance,
    SetCoverReductionCheck,
    brute_force_min_cover,
    check_setcover_reduction,
    format_setcover,
    parse_setcover,
    setcover_to_repair,
)

__all__ = [
    "CnfFormula",
    "CnfReductionCheck",
    "SetCoverInstance",
    "SetCoverReductionCheck",
    "brute_force_min_cover",
    "brute_force_sharp_sat",
    "check_cnf_reduction",
    "check_setcover_reduction",
    "cnf_to_nsl",
    "format_dimacs",
    "format_setcover",
    "parse_dimacs",
    "parse_setcover",
    "setcover_to_repair",
]
