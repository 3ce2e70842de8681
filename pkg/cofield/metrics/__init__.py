"""Pair counting, degrees of interdisciplinarity, and rank correlation."""

from .pairs import PairCounts
from .pairs import PairKey
from .pairs import PairStats
from .pairs import count_discipline_pairs
from .pairs import count_field_pairs
from .pairs import count_pairs
from .pairs import pair_incidence

from .degree import AnalysisSummary
from .degree import DisciplineSummary
from .degree import FieldProfile
from .degree import InterdisciplinarityAnalysis
from .degree import PRECEDENCE_POLICIES
from .degree import apply_headcount_filter
from .degree import collaboration_profile
from .degree import discipline_summary
from .degree import general_degree

from .correlation import CorrelationResult
from .correlation import headcount_degree_correlation
from .correlation import spearman
