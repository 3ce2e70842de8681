"""Interdisciplinarity of research fields measured from co-authorship."""

__version__ = "0.1"

from .field_scheme import FieldScheme
from .field_scheme import discipline_of
from .field_scheme import load_scheme
from .field_scheme import validate_scheme
from .corpus import Corpus
from .corpus import corpus_stats
from .corpus import field_multiset
from .corpus import field_set
from .corpus import load_corpus
from .corpus import load_corpus_dir
from .metrics import InterdisciplinarityAnalysis
from .metrics import count_discipline_pairs
from .metrics import count_field_pairs
from .metrics import count_pairs
from .metrics import general_degree
from .metrics import pair_incidence
from .metrics import spearman
