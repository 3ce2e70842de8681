"""Base classes for corpus analyses."""

import abc
import inspect


class Model(metaclass=abc.ABCMeta):
    """Abstract base class for parametrized analyses.

    Notes
    -----
    Subclasses should have an :func:`__init__` method of the form::

        def __init__(self, a, b, ...):
            self.a = a
            self.b = b
            ...

    Each attribute `a`, `b`, ... should be a :class:`property` whose setter
    validates that parameter. Validation should not be done inside
    :func:`__init__` itself.
    """
    model_type: str

    def get_params(self):
        """The parameters used to initialize this analysis.

        Returns
        -------
        dict
            Mapping of :func:`__init__` parameter names to current values,
            sorted by name.
        """
        keys = sorted(inspect.signature(self.__init__).parameters.keys())
        return {k: getattr(self, k) for k in keys}

    def to_string(self):
        """String representation which can be used to re-create this object.

        Returns
        -------
        str
            E.g. ``InterdisciplinarityAnalysis(n_jobs=1, omit_below=0.0)``.
        """
        params = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{self.__class__.__name__}({params})"

    def __repr__(self):
        return self.to_string()

    @property
    def summary(self):
        """Structure summarizing this analysis.

        Returns
        -------
        summary : cofield.base.Summary
            This analysis's summary.
        """
        return Summary(self)


class Summary:
    """Base class for summaries of analyses (intended for subclassing).

    Parameters
    ----------
    model : cofield.base.Model
        The :class:`Model` being summarized.

    Attributes
    ----------
    model : cofield.base.Model
        The :class:`Model` being summarized.
    """
    model: Model

    def __init__(self, model):
        self.model = model

    def __repr__(self):  # pragma: no cover
        return self.model.model_type


class Fittable(metaclass=abc.ABCMeta):
    """Abstract mixin class for analyses implementing a :func:`fit` method."""
    fitted: bool = False

    @abc.abstractmethod
    def fit(self, *args, **kwargs):  # pragma: no cover
        """Fit this analysis to a corpus.

        Returns
        -------
        self : Model
            The fitted analysis.
        """
        # Implementations set self.fitted = True and return self.
        pass

    def check_fitted(self):
        """Check whether this analysis is fitted. If not, raise an
        exception.
        """
        if not self.fitted:
            raise RuntimeError(
                f"This {self.__class__.__name__} object is not fitted.")
