"""General and specific degrees of interdisciplinarity of research fields."""

import logging
import typing
from fractions import Fraction

import numpy as np
import pandas as pd

from ..base import Fittable, Model, Summary
from ..corpus import Corpus
from ..exceptions import DomainError, UnknownCodeError
from ..utils import as_fraction, check_float, check_int
from .pairs import count_pairs

logger = logging.getLogger(__name__)

PRECEDENCE_POLICIES = ("cross_discipline", "intra_discipline", "overlap")


def _share(count, total):
    """Exact ratio, or None when the denominator is zero."""
    return Fraction(count, total) if total else None


class FieldProfile(typing.NamedTuple):
    """A field's interdisciplinarity breakdown.

    Counts are whole publication counts; the ``share_*`` properties are exact
    ratios to ``total_pubs``.

    Attributes
    ----------
    field : str
        Field code.
    universities_active : int
        Distinct universities employing a researcher of the field.
    headcount : int
        Researchers in the field.
    total_pubs : int
        Publications with at least one author in the field.
    cross_field_pubs : int
        Of these, publications with an author of another field.
    intra_discipline_pubs : int
        Cross-field publications assigned to the same-discipline bucket.
    cross_discipline_pubs : int
        Cross-field publications assigned to the other-discipline bucket.
    partner_fields : int
        Co-occurring fields whose incidence is at least the omission floor.
    partner_fields_over_threshold : int
        Partner fields with incidence above the partner threshold.
    partner_disciplines : int
        Other disciplines whose incidence is at least the omission floor.
    partner_disciplines_over_threshold : int
        Partner disciplines with incidence above the partner threshold.
    """
    field: str
    universities_active: int
    headcount: int
    total_pubs: int
    cross_field_pubs: int
    intra_discipline_pubs: int
    cross_discipline_pubs: int
    partner_fields: int
    partner_fields_over_threshold: int
    partner_disciplines: int
    partner_disciplines_over_threshold: int

    @property
    def share_cross_field(self):
        """Share of publications co-authored with another field."""
        return _share(self.cross_field_pubs, self.total_pubs)

    @property
    def share_intra_discipline(self):
        """Share of publications co-authored only within the discipline."""
        return _share(self.intra_discipline_pubs, self.total_pubs)

    @property
    def share_cross_discipline(self):
        """Share of publications co-authored with another discipline."""
        return _share(self.cross_discipline_pubs, self.total_pubs)


class DisciplineSummary(typing.NamedTuple):
    """A discipline's staff, output, and collaboration shares.

    The two shares are computed independently; a publication can count
    towards both. They are None for a discipline without publications.
    """
    discipline: str
    universities: int
    staff: int
    pubs: int
    with_other_disciplines: int
    cross_field_within: int

    @property
    def share_with_other_disciplines(self):
        """Share of publications with an author of another discipline."""
        return _share(self.with_other_disciplines, self.pubs)

    @property
    def share_cross_field_within(self):
        """Share of publications involving two or more fields of this
        discipline.
        """
        return _share(self.cross_field_within, self.pubs)


def _exceeds(num, den, bound, *, strict):
    """Exact comparison of ``num/den`` with a rational bound."""
    lhs = num * bound.denominator
    rhs = bound.numerator * den
    return lhs > rhs if strict else lhs >= rhs


class InterdisciplinarityAnalysis(Model, Fittable):
    """Interdisciplinarity indicators of every field and discipline of a
    corpus.

    All counts are computed in one pass over sparse incidence matrices when
    the analysis is fitted; the query methods only look them up.

    Parameters
    ----------
    partner_threshold : float, optional
        Incidence above which (strictly) a partner counts as "over
        threshold".

    omit_below : float, optional
        Omission floor: partners whose incidence is below this value are not
        counted at all. The default keeps every partner with a joint
        publication.

    precedence : {"cross_discipline", "intra_discipline", "overlap"}, optional
        How a cross-field publication is bucketed when its authors include
        both another field of the same discipline and another discipline.

        "cross_discipline"
            It counts towards the cross-discipline share only. The two shares
            then add up to the cross-field share exactly.

        "intra_discipline"
            It counts towards the intra-discipline share only, which also
            partitions the cross-field share.

        "overlap"
            It counts towards both shares; the buckets are computed
            independently and need not add up.

    n_jobs : int, optional
        Number of publication chunks used for concurrent pair counting.

    Attributes
    ----------
    pairs_ : PairCounts
        Field-level pair counts of the fitted corpus.

    profiles_ : list of FieldProfile
        Profile of every field, in scheme order.
    """
    model_type = "Interdisciplinarity analysis"

    # Internal versions of __init__() parameters
    _partner_threshold: float
    _omit_below: float
    _precedence: str
    _n_jobs: int

    # Fitted corpus
    _corpus: Corpus

    def __init__(self, partner_threshold=0.10, omit_below=0.0,
                 precedence="cross_discipline", n_jobs=1):
        self.partner_threshold = partner_threshold
        self.omit_below = omit_below
        self.precedence = precedence
        self.n_jobs = n_jobs

    @property
    def partner_threshold(self):
        """Incidence a partner must exceed to count as over threshold."""
        return self._partner_threshold

    @partner_threshold.setter
    def partner_threshold(self, partner_threshold):
        """Set the partner threshold."""
        self._partner_threshold = check_float(partner_threshold, minimum=0.,
                                              maximum=1.)

    @property
    def omit_below(self):
        """Omission floor for partner counts."""
        return self._omit_below

    @omit_below.setter
    def omit_below(self, omit_below):
        """Set the omission floor."""
        self._omit_below = check_float(omit_below, minimum=0., maximum=1.)

    @property
    def precedence(self):
        """Bucketing policy for the intra/cross-discipline decomposition."""
        return self._precedence

    @precedence.setter
    def precedence(self, precedence):
        """Set the bucketing policy."""
        if precedence in PRECEDENCE_POLICIES:
            self._precedence = precedence
        else:
            raise ValueError(f"Invalid value for 'precedence': {precedence}.")

    @property
    def n_jobs(self):
        """Number of concurrent counting chunks."""
        return self._n_jobs

    @n_jobs.setter
    def n_jobs(self, n_jobs):
        """Set the number of concurrent counting chunks."""
        self._n_jobs = check_int(n_jobs, minimum=1)

    @property
    def corpus_(self) -> Corpus:
        """Corpus used to fit the analysis.

        This :class:`property` is only available after fitting.
        """
        self.check_fitted()
        return self._corpus

    def fit(self, corpus):
        """Count everything the indicators need.

        Parameters
        ----------
        corpus : Corpus
            The linked corpus.

        Returns
        -------
        self : InterdisciplinarityAnalysis
            This analysis.
        """
        if not isinstance(corpus, Corpus):
            raise TypeError("Parameter 'corpus' must be a Corpus.")
        self._corpus = corpus
        scheme = corpus.scheme
        n_fields = len(scheme.fields)
        parents = corpus.parents

        x = corpus.incidence("field")
        z = corpus.incidence("discipline")
        per_discipline = corpus.fields_per_discipline
        xt = x.T.tocsr()

        n_fields_of_pub = np.asarray(x.sum(axis=1)).ravel()
        n_disciplines_of_pub = np.asarray(z.sum(axis=1)).ravel()
        multi_field = (n_fields_of_pub >= 2).astype(np.int64)
        multi_discipline = (n_disciplines_of_pub >= 2).astype(np.int64)

        # Publications of each field having another field of the same
        # discipline: the field's own discipline has >= 2 fields there
        several = per_discipline.copy()
        several.data = (several.data >= 2).astype(np.int64)
        several.eliminate_zeros()
        same_discipline = (xt @ several).toarray()
        same_discipline = same_discipline[np.arange(n_fields), parents]

        total = corpus.pub_counts("field")
        cross_field = xt @ multi_field
        other_discipline = xt @ multi_discipline
        if self._precedence == "cross_discipline":
            cross = other_discipline
            intra = cross_field - other_discipline
        elif self._precedence == "intra_discipline":
            intra = same_discipline
            cross = cross_field - same_discipline
        else:
            intra = same_discipline
            cross = other_discipline

        # Publications of each field having an author in each discipline
        self._field_by_discipline = (xt @ z).tocsr()
        self.pairs_ = count_pairs(corpus, "field", n_jobs=self._n_jobs)

        summary = corpus.describe()
        fields = summary.fields
        self._discipline_frame = summary.disciplines.assign(
            with_other_disciplines=np.asarray(
                z.T @ multi_discipline).ravel(),
            cross_field_within=np.asarray(several.sum(axis=0)).ravel())

        self._total = total
        self.profiles_ = []
        for i, code in enumerate(scheme.field_codes):
            partners = self._partner_fields(code)
            disciplines = self._partner_disciplines(i)
            self.profiles_.append(FieldProfile(
                field=code,
                universities_active=int(fields.universities.iloc[i]),
                headcount=int(fields.headcount.iloc[i]),
                total_pubs=int(total[i]),
                cross_field_pubs=int(cross_field[i]),
                intra_discipline_pubs=int(intra[i]),
                cross_discipline_pubs=int(cross[i]),
                partner_fields=partners[0],
                partner_fields_over_threshold=partners[1],
                partner_disciplines=disciplines[0],
                partner_disciplines_over_threshold=disciplines[1]))
        self._profile_index = {p.field: p for p in self.profiles_}

        logger.debug("Fitted %s on %d publications", self.to_string(),
                     len(corpus))
        self.fitted = True
        return self

    def _counted(self, joint, total):
        """Whether a partner is counted and whether it is over threshold."""
        floor = as_fraction(self._omit_below)
        threshold = as_fraction(self._partner_threshold)
        if joint == 0 or not _exceeds(joint, total, floor, strict=False):
            return False, False
        return True, _exceeds(joint, total, threshold, strict=True)

    def _partner_fields(self, code):
        a = self.pairs_.count(code)
        counted = over = 0
        for _, c in self.pairs_.partners(code):
            keep, big = self._counted(c, a)
            counted += keep
            over += big
        return counted, over

    def _partner_disciplines(self, i):
        a = int(self._total[i])
        own = self._corpus.parents[i]
        row = self._field_by_discipline.getrow(i)
        counted = over = 0
        for j, c in zip(row.indices, row.data):
            if j == own:
                continue
            keep, big = self._counted(int(c), a)
            counted += keep
            over += big
        return counted, over

    def _check_field(self, field):
        self.check_fitted()
        if field not in self._profile_index:
            raise UnknownCodeError(f"Unknown field code: {field}.")
        return self._profile_index[field]

    def general_degree(self, field):
        """Share of a field's publications co-authored with another field.

        Returns
        -------
        fractions.Fraction
            Exact ratio in [0, 1].

        Raises
        ------
        UnknownCodeError
            If `field` is not registered.

        DomainError
            If the field has no publications.
        """
        profile = self._check_field(field)
        if not profile.total_pubs:
            raise DomainError(f"Field {field} has no publications.")
        return profile.share_cross_field

    def profile(self, field):
        """Interdisciplinarity breakdown of one field.

        Returns
        -------
        FieldProfile

        Raises
        ------
        UnknownCodeError
            If `field` is not registered.

        DomainError
            If the field has no publications.
        """
        profile = self._check_field(field)
        if not profile.total_pubs:
            raise DomainError(f"Field {field} has no publications.")
        return profile

    def profiles(self):
        """Profiles of all fields as a DataFrame.

        Returns
        -------
        pandas.DataFrame
            Indexed by field code in scheme order, with the discipline, the
            count columns of :class:`FieldProfile`, and float share columns
            (NaN for fields without publications).
        """
        self.check_fitted()
        scheme = self._corpus.scheme
        frame = pd.DataFrame(self.profiles_, columns=FieldProfile._fields)
        frame = frame.set_index("field")
        frame.insert(0, "discipline",
                     [scheme.discipline_of(f) for f in frame.index])
        for name in ("cross_field", "intra_discipline", "cross_discipline"):
            frame[f"share_{name}"] = \
                frame[f"{name}_pubs"] / frame.total_pubs.replace(0, np.nan)
        return frame

    def discipline_summary(self, discipline):
        """Staff, output, and collaboration shares of one discipline.

        Returns
        -------
        DisciplineSummary

        Raises
        ------
        UnknownCodeError
            If `discipline` is not registered.
        """
        self.check_fitted()
        frame = self._discipline_frame
        if discipline not in frame.index:
            raise UnknownCodeError(f"Unknown discipline code: {discipline}.")
        row = frame.loc[discipline]
        return DisciplineSummary(
            discipline=discipline,
            universities=int(row.universities),
            staff=int(row.headcount),
            pubs=int(row.pubs),
            with_other_disciplines=int(row.with_other_disciplines),
            cross_field_within=int(row.cross_field_within))

    @property
    def summary(self):
        """Summary of this analysis.

        Returns
        -------
        AnalysisSummary
        """
        self.check_fitted()
        return AnalysisSummary(self)


class AnalysisSummary(Summary):
    """Summaries of interdisciplinarity analyses."""

    model: InterdisciplinarityAnalysis

    def table(self, discipline):
        """DataFrame of the profiles of a discipline's fields.

        Parameters
        ----------
        discipline : str
            Discipline code.

        Returns
        -------
        table : pandas.DataFrame
            One row per field of the discipline (scheme order) with the
            columns of :meth:`InterdisciplinarityAnalysis.profiles`.
        """
        fields = self.model.corpus_.scheme.fields_of(discipline)
        return self.model.profiles().loc[list(fields)]

    def __repr__(self):  # pragma: no cover
        summary = super(AnalysisSummary, self).__repr__()
        for discipline in self.model.corpus_.scheme.discipline_codes:
            table = self.table(discipline)
            summary += f"\n\n{discipline}\n\n{table.to_string()}"
        return summary


def _fitted(corpus, **kwargs):
    return InterdisciplinarityAnalysis(**kwargs).fit(corpus)


def general_degree(corpus, field):
    """Share of a field's publications co-authored with another field.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    field : str
        Field code.

    Returns
    -------
    fractions.Fraction
        Exact ratio in [0, 1].

    Raises
    ------
    DomainError
        If the field has no publications.
    """
    return _fitted(corpus).general_degree(field)


def collaboration_profile(corpus, field, partner_threshold=0.10, *,
                          omit_below=0.0, precedence="cross_discipline"):
    """Interdisciplinarity breakdown of one field.

    See Also
    --------
    InterdisciplinarityAnalysis
    """
    return _fitted(corpus, partner_threshold=partner_threshold,
                   omit_below=omit_below, precedence=precedence).profile(field)


def discipline_summary(corpus, discipline):
    """Staff, output, and collaboration shares of one discipline."""
    return _fitted(corpus).discipline_summary(discipline)


def apply_headcount_filter(corpus, discipline, min_headcount=100):
    """Fields of a discipline with strictly more than `min_headcount`
    researchers.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    discipline : str
        Discipline code.

    min_headcount : int, optional
        Researchers a field must exceed.

    Returns
    -------
    tuple of str
        Retained field codes in scheme order.
    """
    min_headcount = check_int(min_headcount, minimum=0)
    scheme = corpus.scheme
    fields = scheme.fields_of(discipline)
    headcounts = dict(zip(scheme.field_codes, corpus.headcounts().tolist()))
    kept = tuple(f for f in fields if headcounts[f] > min_headcount)
    if len(kept) < len(fields):
        logger.debug("Headcount filter kept %d of %d fields of %s",
                     len(kept), len(fields), discipline)
    return kept

