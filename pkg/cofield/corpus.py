"""Linked publication corpus: researchers, publications, and authorships."""

import logging
import os
import pathlib
import typing
import warnings

import numpy as np
import pandas as pd
import scipy.sparse as sp

from .exceptions import DataError, UnknownCodeError
from .field_scheme import FieldScheme, Violation, load_scheme
from .utils import check_bool, check_int, read_records, write_records
from .utils.io import LINE
from .utils.io import SOURCE

logger = logging.getLogger(__name__)

# File names used by Corpus.to_csv() and the command line interface
SCHEME_FILE = "scheme.csv"
RESEARCHERS_FILE = "researchers.csv"
PUBLICATIONS_FILE = "publications.csv"
AUTHORSHIPS_FILE = "authorships.csv"


class LinkReport(typing.NamedTuple):
    """What was dropped while linking authorships to researchers.

    Attributes
    ----------
    unmatched : int
        Authorships naming a researcher id absent from the researcher file
        (e.g. foreign co-authors). These are dropped.
    empty_pubs : int
        Publications left without any matched author. These are excluded.
    duplicates : int
        Repeated (publication, researcher) authorship rows, collapsed.
    out_of_window : int
        Publications excluded by the year window.
    """
    unmatched: int = 0
    empty_pubs: int = 0
    duplicates: int = 0
    out_of_window: int = 0

    def __str__(self):
        return (f"unmatched_authorships={self.unmatched} "
                f"excluded_publications={self.empty_pubs} "
                f"collapsed_duplicates={self.duplicates} "
                f"out_of_window={self.out_of_window}")


class CorpusSummary(typing.NamedTuple):
    """Whole-count publication totals, headcounts, and university counts.

    Attributes
    ----------
    fields : pandas.DataFrame
        Indexed by field code (canonical order) with columns ``pubs``
        (publications with at least one author in the field), ``headcount``
        (researchers in the field), and ``universities`` (distinct universities
        employing at least one researcher of the field).
    disciplines : pandas.DataFrame
        The same columns per discipline. ``pubs`` counts each publication once
        per discipline, however many of the discipline's fields it involves.
    """
    fields: pd.DataFrame
    disciplines: pd.DataFrame


class Corpus:
    """Publications linked to the fields of their authors.

    Linking is by exact researcher id. Authorships whose researcher is unknown
    are dropped, and publications left without any matched author are
    excluded; both are counted in :attr:`link_report`.

    Parameters
    ----------
    scheme : FieldScheme
        The field classification.

    researchers : pandas.DataFrame
        Columns ``researcher_id``, ``field_code`` and optionally ``name`` and
        ``university_id``.

    publications : pandas.DataFrame
        Column ``pub_id`` and optionally ``year``.

    authorships : pandas.DataFrame
        Columns ``pub_id`` and ``researcher_id``. For each publication, row
        order gives author order.

    years : tuple of int, optional
        Inclusive ``(first, last)`` window of publication years. Publications
        outside the window, or without a year, are excluded. If not provided,
        all publications are kept.

    warn : bool, optional
        Indicates whether dropped authorships and excluded publications should
        be reported with :func:`warnings.warn`.

    Attributes
    ----------
    scheme : FieldScheme
        The field classification.

    researchers : pandas.DataFrame
        Indexed by researcher id, with columns ``name``, ``field`` and
        ``university``.

    publications : pandas.DataFrame
        Retained publications indexed by publication id, with column ``year``
        (nullable integer).

    authorships : pandas.DataFrame
        Retained authorships with columns ``pub_id``, ``researcher_id`` and
        ``field``, in input order.

    link_report : LinkReport
        Counts of what was dropped while linking.

    Raises
    ------
    DataError
        On duplicate researcher or publication ids, researchers with an
        unregistered field, unparsable years, or authorships referencing an
        unknown publication.
    """
    scheme: FieldScheme
    researchers: pd.DataFrame
    publications: pd.DataFrame
    authorships: pd.DataFrame
    link_report: LinkReport

    def __init__(self, scheme, researchers, publications, authorships, *,
                 years=None, warn=True):
        if not isinstance(scheme, FieldScheme):
            raise TypeError("Parameter 'scheme' must be a FieldScheme.")
        warn = check_bool(warn)
        if years is not None:
            first, last = years
            years = (check_int(first), check_int(last))
            if years[0] > years[1]:
                raise ValueError(f"Empty year window: {years}.")
        self.scheme = scheme

        self.researchers = _link_researchers(scheme, researchers)
        publications, out_of_window, known = _select_publications(
            publications, years)

        authorships = _frame(authorships, ("pub_id", "researcher_id"))
        unknown = ~authorships.pub_id.isin(known)
        if unknown.any():
            row = authorships[unknown].iloc[0]
            raise DataError(f"{_where(row, authorships)}authorship references "
                            f"unknown publication {row.pub_id}.")

        # Collapse repeated (publication, researcher) rows
        repeated = authorships.duplicated(["pub_id", "researcher_id"])
        n_duplicates = int(repeated.sum())
        authorships = authorships[~repeated]

        # Authorships of publications outside the year window go with them
        authorships = authorships[authorships.pub_id.isin(publications.index)]

        # Drop authorships of researchers we cannot classify
        matched = authorships.researcher_id.isin(self.researchers.index)
        n_unmatched = int((~matched).sum())
        authorships = authorships[matched]

        # Exclude publications without any matched author
        has_author = publications.index.isin(authorships.pub_id)
        n_empty = int((~has_author).sum())
        publications = publications[has_author]

        fields = self.researchers.field.reindex(authorships.researcher_id)
        self.authorships = pd.DataFrame(
            dict(pub_id=authorships.pub_id.to_numpy(),
                 researcher_id=authorships.researcher_id.to_numpy(),
                 field=fields.to_numpy()))
        self.publications = publications
        self.link_report = LinkReport(unmatched=n_unmatched,
                                      empty_pubs=n_empty,
                                      duplicates=n_duplicates,
                                      out_of_window=out_of_window)

        if warn and n_unmatched:
            warnings.warn(f"Dropped {n_unmatched} authorships of unknown "
                          "researchers.", RuntimeWarning)
        if warn and n_empty:
            warnings.warn(f"Excluded {n_empty} publications without any "
                          "matched author.", RuntimeWarning)
        logger.info("Linked %d publications, %d researchers, %d authorships "
                    "(%s)", len(self.publications), len(self.researchers),
                    len(self.authorships), self.link_report)

        self._build_incidence()
        self._multisets = None

    def _build_incidence(self):
        """Build the binary publication x field and publication x discipline
        incidence matrices (a publication counts once per field/discipline).
        """
        scheme = self.scheme
        n_pubs = len(self.publications)
        rows = self.publications.index.get_indexer(self.authorships.pub_id)
        cols = pd.Index(scheme.field_codes).get_indexer(self.authorships.field)
        data = np.ones(rows.shape[0], dtype=np.int64)
        shape = (n_pubs, len(scheme.fields))
        incidence = sp.csr_matrix((data, (rows, cols)), shape=shape)
        incidence.sum_duplicates()
        incidence.data[:] = 1
        incidence.sort_indices()

        # Field -> discipline membership matrix
        discipline_index = pd.Index(scheme.discipline_codes)
        parents = discipline_index.get_indexer(
            [f.discipline for f in scheme.fields])
        membership = sp.csr_matrix(
            (np.ones(len(parents), dtype=np.int64),
             (np.arange(len(parents)), parents)),
            shape=(len(scheme.fields), len(discipline_index)))

        # Number of distinct fields of each discipline in each publication
        fields_per_discipline = (incidence @ membership).tocsr()
        fields_per_discipline.sort_indices()
        discipline_incidence = fields_per_discipline.copy()
        discipline_incidence.data[:] = 1

        self._incidence = dict(field=incidence,
                               discipline=discipline_incidence)
        self._fields_per_discipline = fields_per_discipline
        self._membership = membership
        self._parents = parents

    def __len__(self):
        return len(self.publications)

    def __repr__(self):  # pragma: no cover
        return (f"{self.__class__.__name__}({len(self.publications)} "
                f"publications, {len(self.researchers)} researchers, "
                f"{len(self.authorships)} authorships)")

    @property
    def pub_ids(self):
        """Publication ids in canonical (input) order."""
        return self.publications.index

    def incidence(self, level="field"):
        """Binary publication x code incidence matrix.

        Parameters
        ----------
        level : {"field", "discipline"}
            Which codes the columns represent (in the scheme's canonical
            order).

        Returns
        -------
        scipy.sparse.csr_matrix
            Entry (i, j) is 1 if publication i has at least one author in code
            j and 0 otherwise.
        """
        try:
            return self._incidence[level]
        except KeyError:
            raise ValueError(f"Invalid value for 'level': {level}.") from None

    @property
    def fields_per_discipline(self):
        """Sparse publication x discipline matrix counting the distinct fields
        of each discipline among each publication's authors.
        """
        return self._fields_per_discipline

    @property
    def parents(self):
        """Index of the parent discipline of each field (scheme order)."""
        return self._parents

    def _row(self, pub):
        position = self.publications.index.get_indexer([pub])[0]
        if position < 0:
            raise UnknownCodeError(f"Unknown publication id: {pub}.")
        return position

    def field_multiset(self, pub):
        """Field of every matched author of a publication, in author order.

        Raises
        ------
        UnknownCodeError
            If `pub` is not a retained publication.
        """
        self._row(pub)
        if self._multisets is None:
            grouped = self.authorships.groupby("pub_id", sort=False).field
            self._multisets = {k: list(v) for k, v in grouped}
        return list(self._multisets[pub])

    def field_set(self, pub):
        """Distinct fields of a publication's authors, in canonical order.

        Raises
        ------
        UnknownCodeError
            If `pub` is not a retained publication.
        """
        row = self._incidence["field"].getrow(self._row(pub))
        codes = self.scheme.field_codes
        return tuple(codes[j] for j in row.indices)

    def discipline_set(self, pub):
        """Distinct disciplines of a publication's authors, in canonical
        order.
        """
        row = self._incidence["discipline"].getrow(self._row(pub))
        codes = self.scheme.discipline_codes
        return tuple(codes[j] for j in row.indices)

    def pub_counts(self, level="field"):
        """Whole-count number of publications per field or discipline.

        Returns
        -------
        numpy.ndarray
            Integer counts in the scheme's canonical order.
        """
        return np.asarray(self.incidence(level).sum(axis=0)).ravel()

    def headcounts(self):
        """Number of researchers in each field (scheme order)."""
        counts = self.researchers.field.value_counts()
        return counts.reindex(list(self.scheme.field_codes), fill_value=0) \
            .to_numpy(dtype=np.int64)

    def describe(self):
        """Per-field and per-discipline totals.

        Returns
        -------
        CorpusSummary
        """
        scheme = self.scheme
        field_codes = list(scheme.field_codes)
        discipline_codes = list(scheme.discipline_codes)

        staff = self.researchers.assign(
            discipline=self.researchers.field.map(
                {f.code: f.discipline for f in scheme.fields}))
        employed = staff[staff.university != ""]

        fields = pd.DataFrame(
            dict(pubs=self.pub_counts("field"),
                 headcount=self.headcounts(),
                 universities=employed.groupby("field").university.nunique()
                 .reindex(field_codes, fill_value=0).to_numpy()),
            index=pd.Index(field_codes, name="field"))
        disciplines = pd.DataFrame(
            dict(pubs=self.pub_counts("discipline"),
                 headcount=staff.discipline.value_counts()
                 .reindex(discipline_codes, fill_value=0).to_numpy(),
                 universities=employed.groupby("discipline").university
                 .nunique().reindex(discipline_codes, fill_value=0)
                 .to_numpy()),
            index=pd.Index(discipline_codes, name="discipline"))
        return CorpusSummary(fields.astype(np.int64),
                             disciplines.astype(np.int64))

    def validate(self):
        """Warn-level problems found while linking.

        Returns
        -------
        list of Violation
            One record per kind of dropped data, empty if nothing was dropped.
        """
        report = self.link_report
        violations = []
        if report.unmatched:
            violations.append(Violation(
                "warn", "authorships",
                f"{report.unmatched} authorships of unknown researchers "
                "dropped"))
        if report.empty_pubs:
            violations.append(Violation(
                "warn", "publications",
                f"{report.empty_pubs} publications without matched authors "
                "excluded"))
        return violations

    def to_csv(self, directory):
        """Write the scheme and the linked corpus as the four input files.

        Only retained records are written, so re-ingesting the files yields
        an identical corpus with an empty link report.

        Parameters
        ----------
        directory : str or os.PathLike
            Existing directory to write ``scheme.csv``, ``researchers.csv``,
            ``publications.csv`` and ``authorships.csv`` into.
        """
        directory = pathlib.Path(directory)
        self.scheme.to_csv(directory / SCHEME_FILE)

        researchers = self.researchers.reset_index().rename(
            columns=dict(field="field_code", university="university_id"))
        write_records(researchers, directory / RESEARCHERS_FILE,
                      ("researcher_id", "name", "field_code",
                       "university_id"))

        years = self.publications.year
        publications = pd.DataFrame(
            dict(pub_id=self.publications.index,
                 year=[("" if pd.isna(y) else str(int(y))) for y in years]))
        write_records(publications, directory / PUBLICATIONS_FILE,
                      ("pub_id", "year"))
        write_records(self.authorships, directory / AUTHORSHIPS_FILE,
                      ("pub_id", "researcher_id"))


def _frame(data, required, optional=()):
    """Validate the columns of an input DataFrame and normalize them to
    trimmed strings. A ``line`` column and the source file name are kept if
    present.
    """
    if not isinstance(data, pd.DataFrame):
        raise TypeError("Input records must be a pandas DataFrame.")
    missing = [c for c in required if c not in data.columns]
    if missing:
        raise DataError(f"Missing required column(s): {', '.join(missing)}.")
    out = pd.DataFrame(index=pd.RangeIndex(len(data)))
    for column in tuple(required) + tuple(optional):
        if column in data.columns:
            values = data[column].to_numpy()
            out[column] = [("" if pd.isna(v) else str(v).strip())
                           for v in values]
        else:
            out[column] = ""
    if LINE in data.columns:
        out[LINE] = data[LINE].to_numpy()
    if data.attrs.get(SOURCE):
        out.attrs[SOURCE] = data.attrs[SOURCE]
    for column in required:
        empty = out[column] == ""
        if empty.any():
            raise DataError(f"{_where(out[empty].iloc[0], out)}empty "
                            f"'{column}'.")
    return out


def _where(row, frame):
    """Prefix locating a record of `frame` in its source file, if known."""
    line = row.get(LINE) if hasattr(row, "get") else None
    if line is None or pd.isna(line):
        return ""
    source = frame.attrs.get(SOURCE)
    return f"{source}:{line}: " if source else f"line {line}: "


def _link_researchers(scheme, researchers):
    """Validate researchers and classify each into a registered field."""
    researchers = _frame(researchers, ("researcher_id", "field_code"),
                         ("name", "university_id"))
    repeated = researchers.researcher_id.duplicated()
    if repeated.any():
        row = researchers[repeated].iloc[0]
        raise DataError(f"{_where(row, researchers)}duplicate researcher "
                        f"id {row.researcher_id}.")
    registered = researchers.field_code.isin(scheme.field_codes)
    if not registered.all():
        row = researchers[~registered].iloc[0]
        raise DataError(f"{_where(row, researchers)}researcher "
                        f"{row.researcher_id} has unregistered field code "
                        f"{row.field_code}.")
    return pd.DataFrame(
        dict(name=researchers.name.to_numpy(),
             field=researchers.field_code.to_numpy(),
             university=researchers.university_id.to_numpy()),
        index=pd.Index(researchers.researcher_id, name="researcher_id"))


def _select_publications(publications, years):
    """Validate publications and apply the year window.

    Returns the retained publications, the number excluded by the window, and
    the set of all known publication ids.
    """
    publications = _frame(publications, ("pub_id",), ("year",))
    repeated = publications.pub_id.duplicated()
    if repeated.any():
        row = publications[repeated].iloc[0]
        raise DataError(f"{_where(row, publications)}duplicate publication "
                        f"id {row.pub_id}.")

    year = pd.to_numeric(publications.year.replace("", np.nan),
                         errors="coerce")
    bad = year.isna() & (publications.year != "")
    bad |= year.notna() & (year != year.round())
    if bad.any():
        row = publications[bad].iloc[0]
        raise DataError(f"{_where(row, publications)}invalid year "
                        f"'{row.year}' for publication {row.pub_id}.")
    year = year.astype("Int64")

    known = pd.Index(publications.pub_id)
    keep = np.ones(len(publications), dtype=bool)
    if years is not None:
        keep = (year >= years[0]).fillna(False).to_numpy(dtype=bool) \
            & (year <= years[1]).fillna(False).to_numpy(dtype=bool)
    retained = pd.DataFrame(
        dict(year=year[keep].to_numpy()),
        index=pd.Index(publications.pub_id[keep], name="pub_id"))
    retained["year"] = retained.year.astype("Int64")
    return retained, int((~keep).sum()), known


def load_corpus(scheme, researchers, publications, authorships, *,
                years=None, warn=True):
    """Read the three record files and link them into a :class:`Corpus`.

    Parameters
    ----------
    scheme : FieldScheme or str or os.PathLike or file-like
        A loaded scheme, or a registry file to load with
        :func:`~cofield.field_scheme.load_scheme`.

    researchers : str or os.PathLike or file-like
        ``researcher_id,name,field_code[,university_id]``.

    publications : str or os.PathLike or file-like
        ``pub_id[,year]``.

    authorships : str or os.PathLike or file-like
        ``pub_id,researcher_id``.

    years : tuple of int, optional
        Inclusive window of publication years to keep.

    warn : bool, optional
        Indicates whether data-quality warnings should be raised.

    Returns
    -------
    Corpus
        The linked corpus.
    """
    if not isinstance(scheme, FieldScheme):
        scheme = load_scheme(scheme, warn=warn)
    researchers = read_records(researchers,
                               required=("researcher_id", "field_code"),
                               optional=("name", "university_id"))
    publications = read_records(publications, required=("pub_id",),
                                optional=("year",))
    authorships = read_records(authorships,
                               required=("pub_id", "researcher_id"))
    return Corpus(scheme, researchers, publications, authorships,
                  years=years, warn=warn)


def load_corpus_dir(directory, *, years=None, warn=True):
    """Load a corpus from a directory written by :meth:`Corpus.to_csv`."""
    directory = pathlib.Path(directory)
    if not directory.is_dir():
        raise DataError(f"Not a directory: {os.fspath(directory)}.")
    return load_corpus(directory / SCHEME_FILE,
                       directory / RESEARCHERS_FILE,
                       directory / PUBLICATIONS_FILE,
                       directory / AUTHORSHIPS_FILE, years=years, warn=warn)


def field_multiset(corpus, pub):
    """Fields of a publication's matched authors, in author order."""
    return corpus.field_multiset(pub)


def field_set(corpus, pub):
    """Distinct fields of a publication's authors, in canonical order."""
    return corpus.field_set(pub)


def corpus_stats(corpus):
    """Whole-count totals per field and discipline.

    See Also
    --------
    Corpus.describe
    """
    return corpus.describe()
