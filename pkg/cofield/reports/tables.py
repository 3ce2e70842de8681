"""Builders for the standard interdisciplinarity report tables.

Builders named after a corpus operation (``discipline_pair_table``,
``field_pair_ranking``, ``threshold_pair_list``) count the corpus first.
Their ``*_from_counts`` / ``rank_partners`` / ``threshold_pairs`` companions
accept a :class:`~cofield.metrics.PairCounts` directly, which is how
published totals are turned into tables without the underlying corpus.
"""

import itertools
import warnings
from fractions import Fraction

from ..exceptions import DomainError
from ..metrics import InterdisciplinarityAnalysis, count_pairs
from ..metrics import headcount_degree_correlation
from ..utils import as_fraction, check_bool, check_int, check_ratio
from .table import CODE, COUNT, FLAG, RATIO, REAL, TEXT, ReportTable

MODES = ("overall", "cross_discipline")

# Share maximized by each mode of the maximum report
_SHARES = dict(overall="share_cross_field",
               cross_discipline="share_cross_discipline")

_PAIR_COLUMNS = (("pair", CODE), ("a", COUNT), ("b", COUNT), ("c", COUNT),
                 ("d", RATIO), ("e", RATIO), ("avg", RATIO))

_PROFILE_COLUMNS = (("universities", COUNT), ("headcount", COUNT),
                    ("pubs", COUNT), ("share_cross_field", RATIO),
                    ("share_intra_discipline", RATIO),
                    ("share_cross_discipline", RATIO),
                    ("partner_fields", COUNT),
                    ("partner_fields_over_threshold", COUNT),
                    ("partner_disciplines", COUNT),
                    ("partner_disciplines_over_threshold", COUNT))


def pair_label(x, y, level="field"):
    """Display label of a pair: ``MAT-FIS`` for disciplines and
    ``CHIM/01_CHIM/03`` for fields.
    """
    return f"{x}-{y}" if level == "discipline" else f"{x}_{y}"


def _ratios(a, b, c):
    """Exact ``(d, e, avg)``, with None for an undefined direction."""
    d = Fraction(c, a) if a else None
    e = Fraction(c, b) if b else None
    avg = (d + e) / 2 if d is not None and e is not None else None
    return d, e, avg


def _analysis(corpus, analysis, **params):
    """A fitted analysis of `corpus`, reusing `analysis` if provided."""
    if analysis is not None:
        analysis.check_fitted()
        if analysis.corpus_ is not corpus:
            raise ValueError("The analysis was fitted to another corpus.")
        return analysis
    return InterdisciplinarityAnalysis(**params).fit(corpus)


def corpus_summary_table(corpus, *, analysis=None):
    """Research staff and publications by discipline.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    analysis : InterdisciplinarityAnalysis, optional
        An analysis already fitted to `corpus`.

    Returns
    -------
    ReportTable
        One row per discipline in canonical order with columns
        ``discipline``, ``title``, ``universities``, ``staff``, ``pubs``,
        ``share_with_other_disciplines``, and ``share_cross_field_within``.
    """
    analysis = _analysis(corpus, analysis)
    rows = []
    for discipline in corpus.scheme.disciplines:
        s = analysis.discipline_summary(discipline.code)
        rows.append((s.discipline, discipline.title, s.universities, s.staff,
                     s.pubs, s.share_with_other_disciplines,
                     s.share_cross_field_within))
    return ReportTable(
        "Research staff and publications by discipline",
        (("discipline", CODE), ("title", TEXT), ("universities", COUNT),
         ("staff", COUNT), ("pubs", COUNT),
         ("share_with_other_disciplines", RATIO),
         ("share_cross_field_within", RATIO)),
        rows, dict(publications=len(corpus)))


def pair_table_from_counts(counts, *, include_zero=None, title=None):
    """Incidence of every pair of codes, with per-code maxima flagged.

    Parameters
    ----------
    counts : PairCounts
        Publication and joint counts.

    include_zero : bool, optional
        Whether pairs without joint publications are listed. By default they
        are for disciplines (every combination appears) and are not for
        fields.

    title : str, optional
        Table caption.

    Returns
    -------
    ReportTable
        Columns ``pair``, ``a``, ``b``, ``c``, ``d``, ``e``, ``avg``,
        ``max_first`` and ``max_second``, rows in canonical pair order.
        ``max_first`` marks the pair where the first code reaches its highest
        incidence ``d`` over all its pairs, ``max_second`` likewise for the
        second code and ``e``. Tied maxima are all flagged; codes that never
        co-occur have no maximum.
    """
    if include_zero is None:
        include_zero = counts.level == "discipline"
    include_zero = check_bool(include_zero)
    if include_zero:
        keys = [counts.key(x, y)
                for x, y in itertools.combinations(counts.codes, 2)]
    else:
        keys = list(counts.joint)

    rows = []
    best = dict()
    for key in keys:
        a = counts.count(key.first)
        b = counts.count(key.second)
        c = counts.joint.get(key, 0)
        d, e, avg = _ratios(a, b, c)
        rows.append([pair_label(*key, counts.level), a, b, c, d, e, avg])
        for code, value in ((key.first, d), (key.second, e)):
            if value is not None and value > best.get(code, 0):
                best[code] = value

    for row, key in zip(rows, keys):
        row.append(row[4] is not None and best.get(key.first) == row[4])
        row.append(row[5] is not None and best.get(key.second) == row[5])

    if title is None:
        title = f"Degree of interdisciplinarity at the {counts.level} level"
    return ReportTable(title,
                       _PAIR_COLUMNS + (("max_first", FLAG),
                                        ("max_second", FLAG)),
                       rows, dict(level=counts.level))


def discipline_pair_table(corpus, *, n_jobs=1):
    """Incidence of every discipline pair of a corpus (zero pairs
    included).

    See Also
    --------
    pair_table_from_counts
    """
    return pair_table_from_counts(count_pairs(corpus, "discipline",
                                              n_jobs=n_jobs))


def field_pair_table(corpus, *, n_jobs=1):
    """Incidence of every co-occurring field pair of a corpus.

    See Also
    --------
    pair_table_from_counts
    """
    return pair_table_from_counts(count_pairs(corpus, "field", n_jobs=n_jobs))


def rank_partners(counts, code, top_n=20):
    """The partners of a code ranked by incidence.

    Parameters
    ----------
    counts : PairCounts
        Publication and joint counts.

    code : str
        The code whose partners are ranked.

    top_n : int or None, optional
        Number of rows to keep. None keeps every partner.

    Returns
    -------
    ReportTable
        Columns ``pair``, ``a``, ``b``, ``c``, ``d``, ``e``, ``avg``, sorted
        by ``d`` descending, then joint count descending, then partner code
        ascending.

    Raises
    ------
    UnknownCodeError
        If `code` is unknown.
    """
    top_n = check_int(top_n, minimum=0, allow_none=True)
    a = counts.count(code)
    rows = []
    for partner, c in counts.partners(code):
        stats = counts.stats(code, partner)
        rows.append((pair_label(code, partner, counts.level), stats.a,
                     stats.b, stats.c, stats.d, stats.e, stats.avg))
    rows.sort(key=lambda r: (-r[4], -r[3], r[0]))
    if top_n is not None:
        rows = rows[:top_n]
    return ReportTable(f"First pairings of {code} by co-authored publications",
                       _PAIR_COLUMNS, rows,
                       dict(code=code, level=counts.level, top_n=top_n,
                            pubs=a))


def field_pair_ranking(corpus, field, top_n=20, *, n_jobs=1):
    """The partner fields of `field` ranked by incidence.

    See Also
    --------
    rank_partners
    """
    return rank_partners(count_pairs(corpus, "field", n_jobs=n_jobs), field,
                         top_n)


def threshold_pairs(counts, min_d, *, cross_discipline_only=False,
                    min_first_pubs=100):
    """Directed pairs whose incidence exceeds a threshold.

    Parameters
    ----------
    counts : PairCounts
        Publication and joint counts.

    min_d : float
        Incidence ``d`` a pair must exceed (strictly).

    cross_discipline_only : bool, optional
        Keep only pairs whose codes belong to different disciplines.

    min_first_pubs : int, optional
        Minimum number of publications of the first code.

    Returns
    -------
    ReportTable
        Columns ``pair``, ``c``, ``d``, ``e``, sorted by ``d`` descending,
        then joint count descending, then codes ascending.
    """
    threshold = as_fraction(check_ratio(min_d))
    cross_discipline_only = check_bool(cross_discipline_only)
    min_first_pubs = check_int(min_first_pubs, minimum=0)

    found = []
    for key, c in counts.items():
        for x, y in (key, key[::-1]):
            a = counts.count(x)
            if a < min_first_pubs or c * threshold.denominator \
                    <= threshold.numerator * a:
                continue
            if cross_discipline_only and not counts.is_cross(x, y):
                continue
            stats = counts.stats(x, y)
            found.append((x, y, stats))
    found.sort(key=lambda t: (-t[2].d, -t[2].c, t[0], t[1]))

    rows = [(pair_label(x, y, counts.level), s.c, s.d, s.e)
            for x, y, s in found]
    title = ("Pairs with a degree of "
             + ("cross-discipline " if cross_discipline_only else "")
             + f"interdisciplinarity greater than {float(threshold):.0%}")
    return ReportTable(title,
                       (("pair", CODE), ("c", COUNT), ("d", RATIO),
                        ("e", RATIO)),
                       rows,
                       dict(level=counts.level, min_d=min_d,
                            cross_discipline_only=cross_discipline_only,
                            min_first_pubs=min_first_pubs))


def threshold_pair_list(corpus, min_d, cross_discipline_only=False,
                        min_first_pubs=100, *, n_jobs=1):
    """Directed field pairs of a corpus whose incidence exceeds `min_d`.

    See Also
    --------
    threshold_pairs
    """
    return threshold_pairs(count_pairs(corpus, "field", n_jobs=n_jobs),
                           min_d, cross_discipline_only=cross_discipline_only,
                           min_first_pubs=min_first_pubs)


def _profile_cells(profile):
    return (profile.universities_active, profile.headcount,
            profile.total_pubs, profile.share_cross_field,
            profile.share_intra_discipline, profile.share_cross_discipline,
            profile.partner_fields, profile.partner_fields_over_threshold,
            profile.partner_disciplines,
            profile.partner_disciplines_over_threshold)


def _analysis_provenance(analysis):
    return dict(partner_threshold=analysis.partner_threshold,
                omit_below=analysis.omit_below,
                precedence=analysis.precedence)


def profile_table(corpus, discipline, min_headcount=None, *,
                  partner_threshold=0.10, omit_below=0.01,
                  precedence="cross_discipline", analysis=None):
    """Interdisciplinarity breakdown of every field of a discipline.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    discipline : str
        Discipline code.

    min_headcount : int, optional
        If provided, only fields with strictly more researchers are listed.

    partner_threshold, omit_below, precedence
        Parameters of the :class:`~cofield.metrics.InterdisciplinarityAnalysis`
        (ignored if `analysis` is provided).

    analysis : InterdisciplinarityAnalysis, optional
        An analysis already fitted to `corpus`.

    Returns
    -------
    ReportTable
        One row per field in canonical order. Shares of fields without
        publications are undefined and left empty.
    """
    analysis = _analysis(corpus, analysis,
                         partner_threshold=partner_threshold,
                         omit_below=omit_below, precedence=precedence)
    fields = corpus.scheme.fields_of(discipline)
    if min_headcount is not None:
        min_headcount = check_int(min_headcount, minimum=0)
    by_field = {p.field: p for p in analysis.profiles_}
    rows = [(f,) + _profile_cells(by_field[f]) for f in fields
            if min_headcount is None
            or by_field[f].headcount > min_headcount]
    provenance = dict(discipline=discipline, min_headcount=min_headcount)
    provenance.update(_analysis_provenance(analysis))
    return ReportTable(
        f"Degree of interdisciplinarity for the fields of {discipline}",
        (("field", CODE),) + _PROFILE_COLUMNS, rows, provenance)


def max_interdisciplinarity_report(corpus, mode="overall", omit_below=0.01,
                                   *, partner_threshold=0.10,
                                   min_headcount=None,
                                   precedence="cross_discipline",
                                   analysis=None):
    """The field of each discipline with the highest degree of
    interdisciplinarity.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    mode : {"overall", "cross_discipline"}, optional
        Maximize the share of publications with any other field ("overall")
        or with fields of other disciplines ("cross_discipline").

    omit_below : float, optional
        Partners with incidence below this floor are not counted.

    partner_threshold : float, optional
        Incidence above which a partner counts as over threshold.

    min_headcount : int, optional
        If provided, only fields with strictly more researchers compete.

    precedence : str, optional
        Bucketing policy of the analysis.

    analysis : InterdisciplinarityAnalysis, optional
        An analysis already fitted to `corpus`. Its own floor, threshold and
        policy are used.

    Returns
    -------
    ReportTable
        One row per discipline. Ties are broken by the smallest field code
        and listed in the ``ties`` provenance entry. Disciplines without a
        publishing field are omitted with a :class:`RuntimeWarning`.
    """
    if mode not in MODES:
        raise ValueError(f"Invalid value for 'mode': {mode}.")
    analysis = _analysis(corpus, analysis,
                         partner_threshold=partner_threshold,
                         omit_below=omit_below, precedence=precedence)
    if min_headcount is not None:
        min_headcount = check_int(min_headcount, minimum=0)
    by_field = {p.field: p for p in analysis.profiles_}

    rows = []
    ties = dict()
    omitted = []
    for discipline in corpus.scheme.discipline_codes:
        candidates = [by_field[f]
                      for f in corpus.scheme.fields_of(discipline)
                      if by_field[f].total_pubs
                      and (min_headcount is None
                           or by_field[f].headcount > min_headcount)]
        if not candidates:
            omitted.append(discipline)
            continue
        share = _SHARES[mode]
        top = max(getattr(p, share) for p in candidates)
        winners = sorted(p.field for p in candidates
                         if getattr(p, share) == top)
        if len(winners) > 1:
            ties[discipline] = winners
        rows.append((discipline, winners[0])
                    + _profile_cells(by_field[winners[0]]))

    if omitted:
        warnings.warn(f"Omitted {len(omitted)} discipline(s) without "
                      f"publishing fields: {', '.join(omitted)}.",
                      RuntimeWarning)
    provenance = dict(mode=mode, min_headcount=min_headcount)
    provenance.update(_analysis_provenance(analysis))
    provenance["ties"] = "; ".join(f"{k}: {', '.join(v)}"
                                   for k, v in ties.items()) or "none"
    what = "cross-discipline " if mode == "cross_discipline" else ""
    return ReportTable(
        f"Fields with the highest degree of {what}interdisciplinarity",
        (("discipline", CODE), ("field", CODE)) + _PROFILE_COLUMNS, rows,
        provenance)


def correlation_table(corpus, disciplines=None, min_headcount=None, *,
                      analysis=None):
    """Spearman correlation between headcount and general degree, per
    discipline.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    disciplines : sequence of str, optional
        Discipline codes. All disciplines by default.

    min_headcount : int, optional
        If provided, only fields with strictly more researchers are
        correlated.

    analysis : InterdisciplinarityAnalysis, optional
        An analysis already fitted to `corpus`.

    Returns
    -------
    ReportTable
        Columns ``discipline``, ``n``, ``rho``. Disciplines where the
        coefficient is undefined are omitted with a :class:`RuntimeWarning`.
    """
    analysis = _analysis(corpus, analysis)
    if disciplines is None:
        disciplines = corpus.scheme.discipline_codes
    rows = []
    for discipline in disciplines:
        try:
            result = headcount_degree_correlation(
                corpus, discipline, min_headcount, analysis=analysis)
        except DomainError as exc:
            warnings.warn(f"No correlation for {discipline}: {exc}",
                          RuntimeWarning)
            continue
        rows.append(tuple(result))
    return ReportTable(
        "Spearman correlation between headcount and degree of "
        "interdisciplinarity",
        (("discipline", CODE), ("n", COUNT), ("rho", REAL)), rows,
        dict(min_headcount=min_headcount))
