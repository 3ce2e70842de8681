"""Base classes for analysis objects."""

from .model import Fittable
from .model import Model
from .model import Summary
