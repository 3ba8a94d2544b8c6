"""Weight sequences, their calculus and classification predicates."""
from ._descriptor import parse_sequence_name, sequence_from_descriptor, sequence_to_descriptor
from ._error_tags import WeightSeqErrorTag
from ._family import Family, FamilyTag, exact_terms
from ._gamma import GammaEstimate, gamma_index
from ._order import OrderVerdict, order_relation
from ._predicates import (
    Classification,
    PredicateResult,
    QuasianalyticitySum,
    StrongNonQuasianalyticity,
    analytic_inclusion,
    classify,
    derivation_closed,
    quasianalyticity_sum,
    remainder_bound,
    strong_nonquasianalyticity,
)
from ._sequence import (
    WeightSequence,
    from_log_table,
    make_gevrey,
    make_logpower,
    make_qpower,
    power,
    product,
    rescale,
)
from ._splitting import SplittingReport, SplittingSample, check_splitting_lemma, exhaustive_splitting_check
from ._verdicts import OrderRelation, Quasianalyticity, Verdict

__all__ = [
    "Classification",
    "Family",
    "FamilyTag",
    "GammaEstimate",
    "OrderRelation",
    "OrderVerdict",
    "PredicateResult",
    "Quasianalyticity",
    "QuasianalyticitySum",
    "SplittingReport",
    "SplittingSample",
    "StrongNonQuasianalyticity",
    "Verdict",
    "WeightSeqErrorTag",
    "WeightSequence",
    "analytic_inclusion",
    "check_splitting_lemma",
    "classify",
    "derivation_closed",
    "exact_terms",
    "exhaustive_splitting_check",
    "from_log_table",
    "gamma_index",
    "make_gevrey",
    "make_logpower",
    "make_qpower",
    "order_relation",
    "parse_sequence_name",
    "power",
    "product",
    "quasianalyticity_sum",
    "remainder_bound",
    "rescale",
    "sequence_from_descriptor",
    "sequence_to_descriptor",
    "strong_nonquasianalyticity",
]
