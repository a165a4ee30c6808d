# boundlab/__init__.py
"""Worst-case circles, inequality checks, ratio reports and the upper-bound audit."""
from boundlab.audit import AuditResult, PairRecord, counterexample_bundle, select_pairs, theorem1_audit
from boundlab.lemmas import (
    LemmaCheck,
    LemmaReport,
    check_angles,
    check_arc_domination,
    check_closing_arc,
    check_induction,
    check_si_order,
    check_sums,
    lemma_report,
    run_lemma_suite,
)
from boundlab.ratios import RatioReport, ratios, shortest_path
from boundlab.worst_case import DELTA, TAU_NUM, UPPER_BOUND, CircleType, WorstCaseStep, worst_case_circles

__all__ = [
    "DELTA",
    "TAU_NUM",
    "UPPER_BOUND",
    "AuditResult",
    "CircleType",
    "LemmaCheck",
    "LemmaReport",
    "PairRecord",
    "RatioReport",
    "WorstCaseStep",
    "check_angles",
    "check_arc_domination",
    "check_closing_arc",
    "check_induction",
    "check_si_order",
    "check_sums",
    "counterexample_bundle",
    "lemma_report",
    "ratios",
    "run_lemma_suite",
    "select_pairs",
    "shortest_path",
    "theorem1_audit",
    "worst_case_circles",
]
