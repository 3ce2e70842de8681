"""Rank correlation between field size and degree of interdisciplinarity."""

import logging
import typing
from fractions import Fraction

import numpy as np
import scipy.stats as st

from ..exceptions import DomainError
from ..utils import check_data_1d, check_int
from .degree import InterdisciplinarityAnalysis, apply_headcount_filter

logger = logging.getLogger(__name__)


class CorrelationResult(typing.NamedTuple):
    """Spearman correlation across the fields of a discipline.

    Attributes
    ----------
    discipline : str
        Discipline code.
    n : int
        Number of fields correlated.
    rho : float
        Spearman coefficient in [-1, 1].
    """
    discipline: str
    n: int
    rho: float


def spearman(x, y):
    r"""Spearman rank correlation coefficient.

    Parameters
    ----------
    x, y : array-like
        One-dimensional numeric vectors of the same length (at least 2).

    Returns
    -------
    rho : float
        The coefficient, in [-1, 1].

    Raises
    ------
    DomainError
        If the lengths differ, there are fewer than two observations, or
        either vector is constant.

    Notes
    -----
    Both vectors are replaced by their ranks, tied values receiving the mean
    of the ranks they span. Without ties the coefficient is computed exactly
    with the closed form

    .. math::

        \rho = 1 - \frac{6 \sum_i d_i^2}{n (n^2 - 1)},

    where :math:`d_i` is the rank difference of observation :math:`i`. With
    ties it is the Pearson correlation of the average ranks.
    """
    x = check_data_1d(x, keep_pandas=False, dtype=np.float64)
    y = check_data_1d(y, keep_pandas=False, dtype=np.float64)
    if x.shape != y.shape:
        raise DomainError(f"Vectors have different lengths: {x.shape[0]} and "
                          f"{y.shape[0]}.")
    n = x.shape[0]
    if n < 2:
        raise DomainError("Spearman correlation needs at least two "
                          "observations.")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DomainError("Vectors must be finite.")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DomainError("Spearman correlation is undefined for a constant "
                          "vector.")

    rank_x = st.rankdata(x, method="average")
    rank_y = st.rankdata(y, method="average")

    if np.unique(x).shape[0] == n and np.unique(y).shape[0] == n:
        d = np.rint(rank_x - rank_y).astype(np.int64)
        rho = 1 - Fraction(6 * int(np.sum(d * d)), n * (n * n - 1))
        return float(rho)

    rank_x -= rank_x.mean()
    rank_y -= rank_y.mean()
    rho = np.dot(rank_x, rank_y) \
        / np.sqrt(np.dot(rank_x, rank_x) * np.dot(rank_y, rank_y))
    return float(np.clip(rho, -1., 1.))


def headcount_degree_correlation(corpus, discipline, min_headcount=None, *,
                                 analysis=None):
    """Spearman correlation between headcount and general degree of the
    publishing fields of a discipline.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    discipline : str
        Discipline code.

    min_headcount : int, optional
        If provided, only fields with strictly more researchers are
        correlated.

    analysis : InterdisciplinarityAnalysis, optional
        An analysis already fitted to `corpus`, to avoid recounting.

    Returns
    -------
    CorrelationResult

    Raises
    ------
    DomainError
        If fewer than two fields remain or either variable is constant.
    """
    scheme = corpus.scheme
    if min_headcount is None:
        fields = scheme.fields_of(discipline)
    else:
        min_headcount = check_int(min_headcount, minimum=0)
        fields = apply_headcount_filter(corpus, discipline, min_headcount)
    if analysis is None:
        analysis = InterdisciplinarityAnalysis().fit(corpus)

    by_field = {p.field: p for p in analysis.profiles_}
    profiles = [by_field[f] for f in fields if by_field[f].total_pubs]
    headcount = [p.headcount for p in profiles]
    degree = [float(p.share_cross_field) for p in profiles]
    if len(profiles) < 2:
        raise DomainError(f"Discipline {discipline} has fewer than two "
                          "fields to correlate.")
    rho = spearman(headcount, degree)
    logger.debug("Spearman rho for %s over %d fields: %r", discipline,
                 len(profiles), rho)
    return CorrelationResult(discipline, len(profiles), rho)
