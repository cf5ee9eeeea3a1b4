"""Full-rank probability bounds for random matrices over finite fields with a fixed zero pattern."""

__version__ = "0.1.0"

from .bounds import (BoundInapplicable, block_diag_bound, floor_bound, full_weight_prob,
                     ho_bound, upper_bound)
from .diagonalize import PreconditionError, greedy_parallel, greedy_single, verify_structure
from .gf import GF, FieldElement, FieldSpec, field_new, parse_field
from .kernels import BACKEND
from .matrix import FqMatrix
from .oracle import BudgetExceeded, OracleResult, exact_prob, mc_prob
from .pattern import (BlockStructure, SupportPattern, apply_structure, has_full_rank_realization,
                      precedes, precedes_eq, sample, zero_element)
from .report import BoundReport, build_report

__all__ = [
    "BACKEND", "BlockStructure", "BoundInapplicable", "BoundReport", "BudgetExceeded",
    "FieldElement", "FieldSpec", "FqMatrix", "GF", "OracleResult", "PreconditionError",
    "SupportPattern", "apply_structure", "block_diag_bound", "build_report", "exact_prob",
    "field_new", "floor_bound", "full_weight_prob", "greedy_parallel", "greedy_single",
    "has_full_rank_realization", "ho_bound", "mc_prob", "parse_field", "precedes",
    "precedes_eq", "sample", "upper_bound", "verify_structure", "zero_element",
]
