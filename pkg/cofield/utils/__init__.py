"""Miscellaneous utility functions."""

from .io import read_records
from .io import write_records
from .validation import as_fraction
from .validation import check_bool
from .validation import check_code
from .validation import check_data_1d
from .validation import check_float
from .validation import check_int
from .validation import check_random_state
from .validation import check_range
from .validation import check_ratio
