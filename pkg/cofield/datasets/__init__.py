"""Functions for loading the packaged field schemes and corpora."""

from .load import hard_sciences
from .load import worked_example
