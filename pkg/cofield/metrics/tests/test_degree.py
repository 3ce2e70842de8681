"""Unit tests for the degrees of interdisciplinarity."""

from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from cofield.corpus import Corpus
from cofield.datasets import worked_example
from cofield.exceptions import DomainError, UnknownCodeError
from cofield.field_scheme import FieldScheme
from cofield.metrics import InterdisciplinarityAnalysis
from cofield.metrics import PRECEDENCE_POLICIES
from cofield.metrics import apply_headcount_filter
from cofield.metrics import collaboration_profile
from cofield.metrics import discipline_summary
from cofield.metrics import general_degree
from cofield.synth import generate

_SCHEME = FieldScheme([("CHIM/01", "Analytical Chemistry", "CHIM"),
                       ("CHIM/02", "Physical Chemistry", "CHIM"),
                       ("BIO/10", "Biochemistry", "BIO"),
                       ("MED/09", "Internal Medicine", "MED")])


def _corpus(*pubs):
    """Corpus with one publication per list of author fields."""
    researchers = dict()
    authorships = []
    for i, fields in enumerate(pubs):
        seen = dict()
        for field in fields:
            seen[field] = seen.get(field, 0) + 1
            researcher = f"{field}#{seen[field]}"
            researchers.setdefault(researcher, field)
            authorships.append((f"P{i + 1}", researcher))
    return Corpus(
        _SCHEME,
        pd.DataFrame(dict(researcher_id=list(researchers),
                          field_code=list(researchers.values()))),
        pd.DataFrame(dict(pub_id=[f"P{i + 1}" for i in range(len(pubs))])),
        pd.DataFrame(authorships, columns=["pub_id", "researcher_id"]))


# CHIM/01 publishes alone, within Chemistry, with Biology, and with both
_MIXED = (["CHIM/01", "BIO/10", "CHIM/02"],
          ["CHIM/01", "CHIM/02"],
          ["CHIM/01"],
          ["CHIM/01", "BIO/10"])


def test_worked_example_degree():
    """Every Chemistry publication of the example is cross-field."""
    corpus = worked_example()
    assert general_degree(corpus, "CHIM/01") == 1
    profile = collaboration_profile(corpus, "CHIM/01")
    assert profile.total_pubs == 3
    assert profile.headcount == 2
    assert profile.universities_active == 2
    assert profile.share_cross_field == 1
    assert profile.share_intra_discipline == 1
    assert profile.share_cross_discipline == 0
    assert profile.partner_fields == 2
    assert profile.partner_fields_over_threshold == 2
    assert profile.partner_disciplines == 0
    assert profile.partner_disciplines_over_threshold == 0


def test_general_degree():
    """The degree is the share of publications with another field."""
    corpus = _corpus(*_MIXED)
    assert general_degree(corpus, "CHIM/01") == Fraction(3, 4)
    assert general_degree(corpus, "CHIM/02") == 1

    single = _corpus(["CHIM/01"], ["CHIM/01", "CHIM/01"])
    assert general_degree(single, "CHIM/01") == 0

    # No publications is not the same as no collaboration
    with pytest.raises(DomainError):
        general_degree(single, "MED/09")
    with pytest.raises(UnknownCodeError):
        general_degree(single, "XYZ/99")


def test_cross_discipline_precedence():
    """A publication reaching another discipline is cross-discipline even
    when it also involves a sibling field.
    """
    corpus = _corpus(["CHIM/01", "BIO/10", "CHIM/02"], ["CHIM/01"])
    profile = collaboration_profile(corpus, "CHIM/01")
    assert profile.share_cross_field == Fraction(1, 2)
    assert profile.share_cross_discipline == Fraction(1, 2)
    assert profile.share_intra_discipline == 0


def test_precedence_policies():
    """The three bucketing policies differ only on mixed publications."""
    corpus = _corpus(*_MIXED)
    expected = dict(cross_discipline=(1, 2),
                    intra_discipline=(2, 1),
                    overlap=(2, 2))
    for precedence in PRECEDENCE_POLICIES:
        profile = collaboration_profile(corpus, "CHIM/01",
                                        precedence=precedence)
        assert profile.cross_field_pubs == 3
        assert (profile.intra_discipline_pubs,
                profile.cross_discipline_pubs) == expected[precedence]
    with pytest.raises(ValueError):
        collaboration_profile(corpus, "CHIM/01", precedence="nearest")


def test_partner_counts():
    """Partners are counted against the omission floor and the (strict)
    partner threshold.
    """
    corpus = _corpus(*_MIXED)
    profile = collaboration_profile(corpus, "CHIM/01")
    assert profile.partner_fields == 2
    assert profile.partner_fields_over_threshold == 2
    assert profile.partner_disciplines == 1
    assert profile.partner_disciplines_over_threshold == 1

    # Both partners have incidence exactly 1/2
    profile = collaboration_profile(corpus, "CHIM/01", partner_threshold=0.5)
    assert profile.partner_fields == 2
    assert profile.partner_fields_over_threshold == 0
    profile = collaboration_profile(corpus, "CHIM/01", omit_below=0.5)
    assert profile.partner_fields == 2
    profile = collaboration_profile(corpus, "CHIM/01", omit_below=0.6)
    assert profile.partner_fields == 0
    assert profile.partner_disciplines == 0


def test_partner_threshold_is_exact():
    """An incidence of exactly 10% is not more than 10%."""
    pubs = [["CHIM/01", "BIO/10"]] + [["CHIM/01"]] * 9
    profile = collaboration_profile(_corpus(*pubs), "CHIM/01")
    assert profile.partner_fields == 1
    assert profile.partner_fields_over_threshold == 0
    assert profile.partner_disciplines_over_threshold == 0


def test_discipline_summary():
    """The two discipline shares are computed independently."""
    summary = discipline_summary(worked_example(), "CHIM")
    assert (summary.universities, summary.staff, summary.pubs) == (2, 4, 3)
    assert summary.share_with_other_disciplines == 0
    assert summary.share_cross_field_within == 1

    corpus = _corpus(*_MIXED)
    summary = discipline_summary(corpus, "CHIM")
    assert summary.pubs == 4
    assert summary.share_with_other_disciplines == Fraction(1, 2)
    assert summary.share_cross_field_within == Fraction(1, 2)
    summary = discipline_summary(corpus, "BIO")
    assert summary.pubs == 2
    assert summary.share_with_other_disciplines == 1
    assert summary.share_cross_field_within == 0

    summary = discipline_summary(corpus, "MED")
    assert summary.pubs == 0
    assert summary.share_with_other_disciplines is None
    with pytest.raises(UnknownCodeError):
        discipline_summary(corpus, "GEO")


def test_single_field_corpus():
    """Without co-authorship across fields every share is zero."""
    corpus = _corpus(["BIO/10"], ["BIO/10", "BIO/10"])
    summary = discipline_summary(corpus, "BIO")
    assert summary.share_with_other_disciplines == 0
    assert summary.share_cross_field_within == 0


def test_partition_identity():
    """Intra- and cross-discipline shares add up to the cross-field share."""
    for seed in range(30):
        corpus, _ = generate(seed=seed, publications=80)
        analysis = InterdisciplinarityAnalysis().fit(corpus)
        alternative = InterdisciplinarityAnalysis(
            precedence="intra_discipline").fit(corpus)
        overlap = InterdisciplinarityAnalysis(precedence="overlap").fit(corpus)
        for p, q, r in zip(analysis.profiles_, alternative.profiles_,
                           overlap.profiles_):
            assert 0 <= p.cross_field_pubs <= p.total_pubs
            assert (p.intra_discipline_pubs + p.cross_discipline_pubs
                    == p.cross_field_pubs)
            assert (q.intra_discipline_pubs + q.cross_discipline_pubs
                    == q.cross_field_pubs)
            assert r.intra_discipline_pubs == q.intra_discipline_pubs
            assert r.cross_discipline_pubs == p.cross_discipline_pubs
            if p.total_pubs:
                assert (p.share_intra_discipline + p.share_cross_discipline
                        == p.share_cross_field)
                assert 0 <= p.share_cross_field <= 1


def test_analysis_queries():
    """A fitted analysis answers every per-field and per-discipline query."""
    corpus = _corpus(*_MIXED)
    analysis = InterdisciplinarityAnalysis(partner_threshold=0.25)
    with pytest.raises(RuntimeError):
        analysis.profile("CHIM/01")
    assert analysis.fit(corpus) is analysis
    assert analysis.corpus_ is corpus
    assert analysis.general_degree("CHIM/01") == Fraction(3, 4)
    assert analysis.profile("CHIM/01") \
        == collaboration_profile(corpus, "CHIM/01", partner_threshold=0.25)
    with pytest.raises(DomainError):
        analysis.profile("MED/09")

    frame = analysis.profiles()
    assert list(frame.index) == list(_SCHEME.field_codes)
    assert frame.loc["BIO/10", "discipline"] == "BIO"
    assert frame.loc["CHIM/01", "share_cross_field"] == 0.75
    assert np.isnan(frame.loc["MED/09", "share_cross_field"])

    table = analysis.summary.table("CHIM")
    assert list(table.index) == ["CHIM/01", "CHIM/02"]
    assert analysis.get_params() == dict(n_jobs=1, omit_below=0.0,
                                         partner_threshold=0.25,
                                         precedence="cross_discipline")
    assert analysis.to_string().startswith("InterdisciplinarityAnalysis(")


def test_analysis_parameters():
    """Invalid analysis parameters are rejected on assignment."""
    for bad in (dict(partner_threshold=1.5), dict(omit_below=-0.1),
                dict(precedence="nearest"), dict(n_jobs=0)):
        with pytest.raises(ValueError):
            InterdisciplinarityAnalysis(**bad)
    with pytest.raises(TypeError):
        InterdisciplinarityAnalysis(partner_threshold="10%")
    with pytest.raises(TypeError):
        InterdisciplinarityAnalysis().fit("corpus")


def _staffed(headcounts):
    """Corpus whose fields have the given headcounts and one publication."""
    fields = [code for code, n in headcounts.items() for _ in range(n)]
    researchers = pd.DataFrame(dict(
        researcher_id=[f"R{i}" for i in range(len(fields))],
        field_code=fields))
    scheme = FieldScheme([(code, code, "CHIM") for code in headcounts])
    return Corpus(scheme, researchers, pd.DataFrame(dict(pub_id=["P1"])),
                  pd.DataFrame(dict(pub_id=["P1"], researcher_id=["R0"])))


def test_apply_headcount_filter():
    """Only fields with strictly more researchers than the floor are
    kept.
    """
    corpus = _staffed({"CHIM/01": 65, "CHIM/02": 100, "CHIM/03": 150,
                       "CHIM/05": 0})
    assert apply_headcount_filter(corpus, "CHIM", 100) == ("CHIM/03",)
    assert apply_headcount_filter(corpus, "CHIM") == ("CHIM/03",)
    assert apply_headcount_filter(corpus, "CHIM", 64) \
        == ("CHIM/01", "CHIM/02", "CHIM/03")
    assert apply_headcount_filter(corpus, "CHIM", 0) \
        == ("CHIM/01", "CHIM/02", "CHIM/03")
    with pytest.raises(UnknownCodeError):
        apply_headcount_filter(corpus, "BIO")


def test_headcount_filter_does_not_recompute():
    """Filtering selects fields; the retained fields keep their values."""
    corpus, _ = generate(seed=11, publications=300,
                         researchers_per_field=(5, 30))
    analysis = InterdisciplinarityAnalysis().fit(corpus)
    for discipline in corpus.scheme.discipline_codes:
        kept = apply_headcount_filter(corpus, discipline, 15)
        for field in kept:
            assert corpus.headcounts()[
                corpus.scheme.field_codes.index(field)] > 15
            if analysis.profiles_[
                    corpus.scheme.field_codes.index(field)].total_pubs:
                assert collaboration_profile(corpus, field) \
                    == analysis.profile(field)
