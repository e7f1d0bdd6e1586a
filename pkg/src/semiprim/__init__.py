"""Semiprimitive permutation groups: structure, metrics, bounds and cover classification."""

from .perm import (
    CensusCapExceeded,
    ChainOrderExceeded,
    PermGroup,
    Permutation,
    StabilizerChain,
    census_cap,
    set_census_cap,
)
from .dsl import GroupExpr, GroupExprError, parse_group_expr, print_group_expr
from .actions import classify, is_semiprimitive, antiplinths
from .metrics import base_size_exact, minimal_degree, metric_report
from .atlas import ATLAS_NAMES, atlas_load, construct, group_from_text
from .classification import ansn_cover_classify, numerical_lemma_checks
from .harness import analyze, reproduce_tables, run_corpus, verify_bounds

__version__ = "0.1.0"

__all__ = [
    "CensusCapExceeded",
    "ChainOrderExceeded",
    "PermGroup",
    "Permutation",
    "StabilizerChain",
    "census_cap",
    "set_census_cap",
    "GroupExpr",
    "GroupExprError",
    "parse_group_expr",
    "print_group_expr",
    "classify",
    "is_semiprimitive",
    "antiplinths",
    "base_size_exact",
    "minimal_degree",
    "metric_report",
    "ATLAS_NAMES",
    "atlas_load",
    "construct",
    "group_from_text",
    "ansn_cover_classify",
    "numerical_lemma_checks",
    "analyze",
    "reproduce_tables",
    "run_corpus",
    "verify_bounds",
]
