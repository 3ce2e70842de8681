"""Synthetic corpora with planted collaboration structure, and brute-force
oracles to check the counting kernel against.

Random numbers come from numpy's PCG64 bit generator seeded with
``SynthParams.seed``, so a given parameter set yields the same corpus on
every platform.
"""

import logging
import typing
from fractions import Fraction

import numpy as np
import pandas as pd

from .corpus import Corpus
from .exceptions import DomainError, ParameterError, UnknownCodeError
from .field_scheme import FieldScheme
from .metrics import DisciplineSummary, FieldProfile, PairKey
from .metrics import PRECEDENCE_POLICIES, spearman
from .utils import as_fraction, check_float, check_int, check_random_state
from .utils import check_range, check_ratio

logger = logging.getLogger(__name__)

# Largest corpus the quadratic oracles accept
ORACLE_MAX_PUBS = 10_000

# First publication year of synthetic corpora
FIRST_YEAR = 2004


class SynthParams(typing.NamedTuple):
    """Parameters of a synthetic corpus.

    Attributes
    ----------
    seed : int
        Seed of the PCG64 random number generator.
    disciplines : int
        Number of disciplines.
    fields_per_discipline : int
        Number of fields in every discipline.
    researchers_per_field : tuple of int
        Inclusive ``(low, high)`` range of field headcounts.
    publications : int
        Number of publications.
    authors_per_pub : tuple of int
        Inclusive ``(low, high)`` range of author slots per publication.
        Slots drawing the same researcher collapse into one authorship.
    p_cross_field : float
        Probability that a non-lead author slot goes to another field (for a
        field of average headcount).
    p_cross_discipline : float
        Probability that a cross-field slot goes to another discipline.
    inverse_size_bias : float
        Strength of the planted small-field effect: fields with fewer
        researchers than average collaborate more. Zero disables it.
    universities : int
        Number of universities researchers are spread over.
    years : int
        Number of publication years, starting from 2004.
    """
    seed: int = 0
    disciplines: int = 3
    fields_per_discipline: int = 4
    researchers_per_field: tuple = (5, 20)
    publications: int = 200
    authors_per_pub: tuple = (1, 4)
    p_cross_field: float = 0.3
    p_cross_discipline: float = 0.3
    inverse_size_bias: float = 0.0
    universities: int = 10
    years: int = 5

    def validate(self):
        """Validated copy of these parameters.

        Raises
        ------
        ParameterError
            If a parameter is out of range or the parameters are infeasible.

        TypeError
            If a parameter has the wrong type.
        """
        try:
            params = SynthParams(
                seed=check_int(self.seed, minimum=0),
                disciplines=check_int(self.disciplines, minimum=1),
                fields_per_discipline=check_int(self.fields_per_discipline,
                                                minimum=1),
                researchers_per_field=check_range(self.researchers_per_field,
                                                  minimum=1),
                publications=check_int(self.publications, minimum=1),
                authors_per_pub=check_range(self.authors_per_pub, minimum=1),
                p_cross_field=check_ratio(self.p_cross_field),
                p_cross_discipline=check_ratio(self.p_cross_discipline),
                inverse_size_bias=check_float(self.inverse_size_bias,
                                              minimum=0.),
                universities=check_int(self.universities, minimum=1),
                years=check_int(self.years, minimum=1))
        except ValueError as exc:
            raise ParameterError(str(exc)) from exc

        n_fields = params.disciplines * params.fields_per_discipline
        fewest = n_fields * params.researchers_per_field[0]
        if params.authors_per_pub[1] > fewest:
            raise ParameterError(
                f"Up to {params.authors_per_pub[1]} authors per publication "
                f"but as few as {fewest} researchers.")
        return params


class GroundTruth(typing.NamedTuple):
    """What the generator planted.

    Attributes
    ----------
    fields : tuple of str
        Field codes in canonical order.
    headcount : numpy.ndarray
        Researchers per field.
    p_cross : numpy.ndarray
        Planted probability that a non-lead author slot of a publication led
        by each field goes to another field.
    """
    fields: tuple
    headcount: np.ndarray
    p_cross: np.ndarray

    def planted_spearman(self, scheme, discipline):
        """Spearman correlation between headcount and planted cross-field
        probability over the fields of a discipline.
        """
        index = [self.fields.index(f) for f in scheme.fields_of(discipline)]
        return spearman(self.headcount[index], self.p_cross[index])


def _scheme(params):
    """Disciplines ``D1, D2, ...`` with fields ``D1/01, D1/02, ...``."""
    fields = []
    for i in range(params.disciplines):
        for j in range(params.fields_per_discipline):
            fields.append((f"D{i + 1}/{j + 1:02d}",
                           f"Field {j + 1} of discipline {i + 1}",
                           f"D{i + 1}"))
    disciplines = [(f"D{i + 1}", f"Discipline {i + 1}")
                   for i in range(params.disciplines)]
    return FieldScheme(fields, disciplines)


def _ids(prefix, n):
    width = max(len(str(n)), 1)
    return np.char.add(prefix, np.char.zfill(np.arange(1, n + 1).astype(str),
                                             width))


def generate(params=None, **kwargs):
    """Generate a synthetic corpus.

    Fields are laid out in equal blocks per discipline. Every publication has
    a lead field drawn with probability proportional to headcount; each
    further author slot stays in the lead field or, with the lead field's
    planted cross-field probability, goes to another field. A cross-field
    slot goes to another discipline with probability `p_cross_discipline`,
    else to another field of the lead's discipline (falling back to the
    other option when one is impossible). Authors are drawn uniformly from
    the researchers of their field.

    Parameters
    ----------
    params : SynthParams, optional
        The parameters.

    **kwargs
        Fields of :class:`SynthParams` overriding `params`.

    Returns
    -------
    corpus : Corpus
        The linked corpus.

    truth : GroundTruth
        The planted per-field rates.

    Raises
    ------
    ParameterError
        If the parameters are invalid or infeasible.
    """
    if params is None:
        params = SynthParams()
    params = params._replace(**kwargs).validate()
    rng = check_random_state(params.seed)

    scheme = _scheme(params)
    n_disc = params.disciplines
    per_disc = params.fields_per_discipline
    n_fields = n_disc * per_disc
    n_pubs = params.publications

    # Researchers, contiguous by field
    low, high = params.researchers_per_field
    headcount = rng.integers(low, high + 1, size=n_fields)
    first = np.concatenate(([0], np.cumsum(headcount)[:-1]))
    n_researchers = int(headcount.sum())
    field_of = np.repeat(np.arange(n_fields), headcount)
    university = rng.integers(0, params.universities, size=n_researchers)

    # Planted cross-field probability of each lead field
    weight = (headcount.mean() / headcount) ** params.inverse_size_bias
    p_cross = 1 - (1 - params.p_cross_field) ** weight
    if params.p_cross_field == 1:
        p_cross = np.ones(n_fields)

    lead = rng.choice(n_fields, size=n_pubs, p=headcount / headcount.sum())
    low, high = params.authors_per_pub
    n_slots = rng.integers(low, high + 1, size=n_pubs)
    pub_of = np.repeat(np.arange(n_pubs), n_slots)
    slot_lead = lead[pub_of]
    is_first = np.zeros(pub_of.shape[0], dtype=bool)
    is_first[np.concatenate(([0], np.cumsum(n_slots)[:-1]))] = True

    cross = (rng.random(pub_of.shape[0]) < p_cross[slot_lead]) & ~is_first
    other_disc = rng.random(pub_of.shape[0]) < params.p_cross_discipline
    if n_disc == 1:
        other_disc[:] = False
    elif per_disc == 1:
        other_disc[:] = True
    if n_fields == 1:
        cross[:] = False

    lead_disc, lead_pos = np.divmod(slot_lead, per_disc)
    disc_shift = rng.integers(1, max(n_disc, 2), size=pub_of.shape[0])
    pos_any = rng.integers(0, per_disc, size=pub_of.shape[0])
    pos_shift = rng.integers(1, max(per_disc, 2), size=pub_of.shape[0])
    elsewhere = ((lead_disc + disc_shift) % n_disc) * per_disc + pos_any
    sibling = lead_disc * per_disc + (lead_pos + pos_shift) % per_disc
    slot_field = np.where(cross, np.where(other_disc, elsewhere, sibling),
                          slot_lead)

    pick = np.floor(rng.random(pub_of.shape[0])
                    * headcount[slot_field]).astype(np.int64)
    slot_researcher = first[slot_field] + pick
    year = FIRST_YEAR + rng.integers(0, params.years, size=n_pubs)

    researcher_ids = _ids("R", n_researchers)
    pub_ids = _ids("P", n_pubs)
    field_codes = np.asarray(scheme.field_codes)
    researchers = pd.DataFrame(dict(
        researcher_id=researcher_ids,
        name="",
        field_code=field_codes[field_of],
        university_id=_ids("U", params.universities)[university]))
    publications = pd.DataFrame(dict(pub_id=pub_ids, year=year.astype(str)))
    authorships = pd.DataFrame(dict(pub_id=pub_ids[pub_of],
                                    researcher_id=researcher_ids[
                                        slot_researcher]))

    corpus = Corpus(scheme, researchers, publications, authorships,
                    warn=False)
    logger.info("Generated %r", corpus)
    truth = GroundTruth(scheme.field_codes, headcount, p_cross)
    return corpus, truth


def write_corpus(corpus, directory):
    """Write a corpus as the four input files so it can be re-ingested.

    See Also
    --------
    Corpus.to_csv
    """
    corpus.to_csv(directory)


def _check_size(corpus):
    if len(corpus) > ORACLE_MAX_PUBS:
        raise ParameterError(f"Corpus has {len(corpus)} publications; the "
                             f"oracles accept at most {ORACLE_MAX_PUBS}.")


def _code_sets(corpus, level):
    """Distinct codes of every publication, from the raw authorship rows."""
    _check_size(corpus)
    scheme = corpus.scheme
    sets = {pub: set() for pub in corpus.publications.index}
    for pub, field in zip(corpus.authorships.pub_id,
                          corpus.authorships.field):
        code = field if level == "field" else scheme.discipline_of(field)
        sets[pub].add(code)
    return sets


def _enumerate_pairs(sets, order):
    rank = {code: i for i, code in enumerate(order)}
    counts = dict()
    for codes in sets.values():
        codes = sorted(codes, key=rank.__getitem__)
        for i in range(len(codes)):
            for j in range(i + 1, len(codes)):
                key = PairKey(codes[i], codes[j])
                counts[key] = counts.get(key, 0) + 1
    return {key: counts[key]
            for key in sorted(counts, key=lambda k: (rank[k.first],
                                                     rank[k.second]))}


def oracle_pair_counts(corpus):
    """Joint publication counts of field pairs by naive enumeration.

    Raises
    ------
    ParameterError
        If the corpus has more than 10,000 publications.
    """
    return _enumerate_pairs(_code_sets(corpus, "field"),
                            corpus.scheme.field_codes)


def oracle_discipline_pair_counts(corpus):
    """Joint publication counts of discipline pairs by naive enumeration."""
    return _enumerate_pairs(_code_sets(corpus, "discipline"),
                            corpus.scheme.discipline_codes)


def oracle_degree(corpus, field):
    """General degree of interdisciplinarity by a naive scan.

    Raises
    ------
    DomainError
        If the field has no publications.
    """
    if field not in corpus.scheme:
        raise UnknownCodeError(f"Unknown field code: {field}.")
    total = cross = 0
    for codes in _code_sets(corpus, "field").values():
        if field in codes:
            total += 1
            cross += len(codes) > 1
    if not total:
        raise DomainError(f"Field {field} has no publications.")
    return Fraction(cross, total)


def oracle_profile(corpus, field, partner_threshold=0.10, omit_below=0.0,
                   precedence="cross_discipline"):
    """Interdisciplinarity breakdown of a field by classifying every
    publication one at a time.
    """
    if precedence not in PRECEDENCE_POLICIES:
        raise ValueError(f"Invalid value for 'precedence': {precedence}.")
    scheme = corpus.scheme
    own = scheme.discipline_of(field)
    floor = as_fraction(omit_below)
    threshold = as_fraction(partner_threshold)

    total = cross_field = intra = cross = 0
    with_field = dict()
    with_discipline = dict()
    for codes in _code_sets(corpus, "field").values():
        if field not in codes:
            continue
        total += 1
        others = codes - {field}
        disciplines = {scheme.discipline_of(c) for c in others}
        sibling = own in disciplines
        foreign = bool(disciplines - {own})
        if others:
            cross_field += 1
            if precedence == "cross_discipline":
                cross += foreign
                intra += not foreign
            elif precedence == "intra_discipline":
                intra += sibling
                cross += not sibling
            else:
                intra += sibling
                cross += foreign
        for c in others:
            with_field[c] = with_field.get(c, 0) + 1
        for d in disciplines - {own}:
            with_discipline[d] = with_discipline.get(d, 0) + 1
    if not total:
        raise DomainError(f"Field {field} has no publications.")

    def tally(joint):
        counted = [c for c in joint.values() if Fraction(c, total) >= floor]
        return (len(counted),
                sum(Fraction(c, total) > threshold for c in counted))

    staff = corpus.researchers[corpus.researchers.field == field]
    universities = staff.university[staff.university != ""].nunique()
    partner_fields = tally(with_field)
    partner_disciplines = tally(with_discipline)
    return FieldProfile(
        field=field, universities_active=int(universities),
        headcount=len(staff), total_pubs=total, cross_field_pubs=cross_field,
        intra_discipline_pubs=intra, cross_discipline_pubs=cross,
        partner_fields=partner_fields[0],
        partner_fields_over_threshold=partner_fields[1],
        partner_disciplines=partner_disciplines[0],
        partner_disciplines_over_threshold=partner_disciplines[1])


def oracle_discipline_summary(corpus, discipline):
    """Discipline shares by classifying every publication one at a time."""
    scheme = corpus.scheme
    scheme.discipline(discipline)
    pubs = other = within = 0
    for codes in _code_sets(corpus, "field").values():
        mine = [c for c in codes if scheme.discipline_of(c) == discipline]
        if not mine:
            continue
        pubs += 1
        other += len({scheme.discipline_of(c) for c in codes}) > 1
        within += len(mine) > 1
    staff = corpus.researchers[
        corpus.researchers.field.isin(scheme.fields_of(discipline))]
    universities = staff.university[staff.university != ""].nunique()
    return DisciplineSummary(discipline, int(universities), len(staff), pubs,
                             other, within)
