"""Unit tests for the standard report tables."""

from fractions import Fraction

import pandas as pd
import pytest

from cofield.corpus import Corpus
from cofield.datasets import worked_example
from cofield.exceptions import UnknownCodeError
from cofield.field_scheme import FieldScheme
from cofield.metrics import InterdisciplinarityAnalysis
from cofield.metrics import PairCounts
from cofield.metrics import count_field_pairs
from cofield.reports import corpus_summary_table
from cofield.reports import correlation_table
from cofield.reports import discipline_pair_table
from cofield.reports import field_pair_ranking
from cofield.reports import max_interdisciplinarity_report
from cofield.reports import pair_label
from cofield.reports import pair_table_from_counts
from cofield.reports import profile_table
from cofield.reports import rank_partners
from cofield.reports import render
from cofield.reports import threshold_pair_list
from cofield.reports import threshold_pairs
from cofield.synth import generate

# Publications per discipline pair: (a, b, c, d, e, avg) with the printed
# percentages
_DISCIPLINE_PAIRS = """
MAT-FIS 14038 22368 507 3.6 2.3 2.9
MAT-CHIM 14038 24569 193 1.4 0.8 1.1
MAT-GEO 14038 4639 39 0.3 0.8 0.6
MAT-BIO 14038 28021 272 1.9 1.0 1.5
MAT-MED 14038 50798 493 3.5 1.0 2.2
MAT-AGR 14038 10309 37 0.3 0.4 0.3
MAT-ING_CIV 14038 4798 143 1.0 3.0 2.0
MAT-ING_IND 14038 32086 981 7.0 3.1 5.0
FIS-CHIM 22368 24569 1392 6.2 5.7 5.9
FIS-GEO 22368 4639 262 1.2 5.6 3.4
FIS-BIO 22368 28021 811 3.6 2.9 3.3
FIS-MED 22368 50798 1034 4.6 2.0 3.3
FIS-AGR 22368 10309 122 0.5 1.2 0.9
FIS-ING_CIV 22368 4798 254 1.1 5.3 3.2
FIS-ING_IND 22368 32086 1154 5.2 3.6 4.4
CHIM-GEO 24569 4639 226 0.9 4.9 2.9
CHIM-BIO 24569 28021 2717 11.1 9.7 10.4
CHIM-MED 24569 50798 1759 7.2 3.5 5.3
CHIM-AGR 24569 10309 504 2.1 4.9 3.5
CHIM-ING_CIV 24569 4798 157 0.6 3.3 2.0
CHIM-ING_IND 24569 32086 1255 5.1 3.9 4.5
GEO-BIO 4639 28021 133 2.9 0.5 1.7
GEO-MED 4639 50798 160 3.4 0.3 1.9
GEO-AGR 4639 10309 51 1.1 0.5 0.8
GEO-ING_CIV 4639 4798 80 1.7 1.7 1.7
GEO-ING_IND 4639 32086 142 3.1 0.4 1.8
BIO-MED 28021 50798 7670 27.4 15.1 21.2
BIO-AGR 28021 10309 1250 4.5 12.1 8.3
BIO-ING_CIV 28021 4798 156 0.6 3.3 1.9
BIO-ING_IND 28021 32086 496 1.8 1.5 1.7
MED-AGR 50798 10309 765 1.5 7.4 4.5
MED-ING_CIV 50798 4798 254 0.5 5.3 2.9
MED-ING_IND 50798 32086 866 1.7 2.7 2.2
AGR-ING_CIV 10309 4798 53 0.5 1.1 0.8
AGR-ING_IND 10309 32086 132 1.3 0.4 0.8
ING_CIV-ING_IND 4798 32086 340 7.1 1.1 4.1
"""

# Partners of CHIM/01: (partner, publications of the partner, joint)
_CHIM01_PARTNERS = """
CHIM/03 6544 218
CHIM/12 554 126
CHIM/06 5669 115
CHIM/02 5231 111
CHIM/10 580 99
CHIM/08 2713 65
BIO/10 6161 60
CHIM/09 1212 46
CHIM/07 2133 35
FIS/01 8967 31
AGR/15 969 31
BIO/14 5219 31
FIS/07 2671 29
CHIM/04 1509 23
CHIM/11 363 17
SECS-P/13 139 16
ING-IND/22 1931 16
MED/07 2092 14
GEO/06 745 13
AGR/16 904 13
"""


def _rows(text):
    return [line.split() for line in text.strip().splitlines()]


def _discipline_counts():
    pub_counts = dict()
    joint = dict()
    for pair, a, b, c, *_ in _rows(_DISCIPLINE_PAIRS):
        x, y = pair.split("-")
        pub_counts.setdefault(x, int(a))
        pub_counts.setdefault(y, int(b))
        joint[x, y] = int(c)
    return PairCounts(pub_counts, joint, level="discipline")


def _field_counts(pub_counts, joint):
    parents = {code: code.split("/")[0] for code in pub_counts}
    return PairCounts(pub_counts, joint, parents=parents)


def _corpus(scheme, *pubs):
    """Corpus with one publication per list of author fields."""
    researchers = dict()
    authorships = []
    for i, fields in enumerate(pubs):
        for field in fields:
            researchers.setdefault(f"{field}#1", field)
            authorships.append((f"P{i + 1}", f"{field}#1"))
    return Corpus(
        scheme,
        pd.DataFrame(dict(researcher_id=list(researchers),
                          field_code=list(researchers.values()))),
        pd.DataFrame(dict(pub_id=[f"P{i + 1}" for i in range(len(pubs))])),
        pd.DataFrame(authorships, columns=["pub_id", "researcher_id"]))


_SCHEME = FieldScheme([("CHIM/01", "Analytical Chemistry", "CHIM"),
                       ("CHIM/02", "Physical Chemistry", "CHIM"),
                       ("BIO/10", "Biochemistry", "BIO"),
                       ("MED/09", "Internal Medicine", "MED")],
                      [("CHIM", "Chemistry"), ("BIO", "Biology"),
                       ("MED", "Medicine")])


def test_pair_label():
    """Disciplines are joined by a hyphen, fields by an underscore."""
    assert pair_label("BIO", "MED", "discipline") == "BIO-MED"
    assert pair_label("CHIM/01", "CHIM/03") == "CHIM/01_CHIM/03"


def test_discipline_pair_table_reproduces_printed_values():
    """Published totals give back the printed incidences."""
    table = pair_table_from_counts(_discipline_counts())
    assert len(table) == 36
    expected = _rows(_DISCIPLINE_PAIRS)
    assert table.column("pair") == [row[0] for row in expected]
    for row, printed in zip(table.rows, expected):
        for value, percent in zip(row[4:7], printed[4:7]):
            assert abs(float(value) * 100 - float(percent)) <= 0.1 + 1e-9

    mutual = [row[0] for row in table.rows if row[7] and row[8]]
    assert mutual == ["BIO-MED"]
    by_pair = {row[0]: row for row in table.rows}

    # Mathematics collaborates most with Industrial and information
    # engineering, which collaborates most with Chemistry
    assert by_pair["MAT-ING_IND"][7]
    assert not by_pair["MAT-ING_IND"][8]
    assert by_pair["CHIM-ING_IND"][8]
    assert sum(row[7] or row[8] for row in table.rows) >= 5


def test_discipline_pair_table_from_corpus():
    """Every combination of disciplines is listed, collaborating or not."""
    corpus = _corpus(_SCHEME, ["CHIM/01", "BIO/10"], ["MED/09"],
                     ["CHIM/02"])
    table = discipline_pair_table(corpus)
    assert table.column("pair") == ["CHIM-BIO", "CHIM-MED", "BIO-MED"]
    assert table.column("c") == [1, 0, 0]
    assert table.column("d") == [Fraction(1, 2), 0, 0]
    assert table.column("max_first") == [True, False, False]
    assert table.column("max_second") == [True, False, False]
    assert table.provenance["level"] == "discipline"

    # Without joint publications all incidences are zero
    corpus = _corpus(_SCHEME, ["CHIM/01"], ["BIO/10"])
    table = discipline_pair_table(corpus)
    assert table.column("c") == [0, 0, 0]
    assert table.column("d") == [0, 0, 0]
    assert table.column("e") == [0, None, None]
    assert render(table).splitlines()[1] == "CHIM-BIO,1,1,0,0.0%,0.0%,0.0%,0,0"

    assert len(discipline_pair_table(worked_example())) == 0


def test_tied_maxima_are_all_flagged():
    """A code with several equal best partners flags each of them."""
    counts = PairCounts({"A": 10, "B": 10, "C": 10},
                        {("A", "B"): 2, ("A", "C"): 2}, level="discipline")
    table = pair_table_from_counts(counts)
    assert table.column("max_first") == [True, True, False]
    assert table.column("max_second") == [True, True, False]


def test_field_pair_ranking_reproduces_printed_order():
    """The twenty first pairings of CHIM/01 from published counts."""
    pub_counts = {"CHIM/01": 2319}
    joint = dict()
    for partner, b, c in _rows(_CHIM01_PARTNERS):
        pub_counts[partner] = int(b)
        joint["CHIM/01", partner] = int(c)
    counts = _field_counts(pub_counts, joint)
    table = rank_partners(counts, "CHIM/01")
    assert len(table) == 20
    assert table.rows[0][0] == "CHIM/01_CHIM/03"
    assert render(table).splitlines()[1] \
        == "CHIM/01_CHIM/03,2319,6544,218,9.4%,3.3%,6.4%"
    assert table.column("pair")[:9] == [
        "CHIM/01_" + partner
        for partner in ("CHIM/03", "CHIM/12", "CHIM/06", "CHIM/02",
                        "CHIM/10", "CHIM/08", "BIO/10", "CHIM/09",
                        "CHIM/07")]
    d = table.column("d")
    assert all(x >= y for x, y in zip(d, d[1:]))

    # Equal incidence and joint count fall back to the partner code
    assert table.column("pair")[9:12] == ["CHIM/01_AGR/15", "CHIM/01_BIO/14",
                                          "CHIM/01_FIS/01"]
    assert len(rank_partners(counts, "CHIM/01", top_n=5)) == 5
    assert len(rank_partners(counts, "CHIM/01", top_n=None)) == 20
    assert len(rank_partners(counts, "CHIM/03")) == 1


def test_field_pair_ranking_from_corpus():
    """Rankings are computed from the corpus pair counts."""
    corpus = worked_example()
    table = field_pair_ranking(corpus, "CHIM/02")
    assert table.column("pair") == ["CHIM/02_CHIM/01", "CHIM/02_CHIM/06"]
    assert table.column("d") == [1, Fraction(1, 2)]

    lonely = _corpus(_SCHEME, ["MED/09"], ["CHIM/01", "CHIM/02"])
    assert len(field_pair_ranking(lonely, "MED/09")) == 0
    with pytest.raises(UnknownCodeError):
        field_pair_ranking(lonely, "XYZ/99")


def test_threshold_pairs_within_disciplines():
    """Pairs above 10% in either direction, strongest first."""
    counts = _field_counts(
        {"MED/32": 203, "MED/31": 818, "MED/37": 285, "MED/26": 4161,
         "MED/34": 127, "FIS/04": 1577, "FIS/01": 8967},
        {("MED/32", "MED/31"): 99, ("MED/37", "MED/26"): 129,
         ("MED/34", "MED/26"): 56, ("FIS/04", "FIS/01"): 683})
    table = threshold_pairs(counts, 0.10)
    assert table.column("pair") == ["MED/32_MED/31", "MED/37_MED/26",
                                     "MED/34_MED/26", "FIS/04_FIS/01",
                                     "MED/31_MED/32"]
    first = render(table).splitlines()[1]
    assert first == "MED/32_MED/31,99,48.8%,12.1%"

    # The floor on first-field publications is inclusive
    assert "MED/34_MED/26" not in threshold_pairs(
        counts, 0.10, min_first_pubs=128).column("pair")
    assert "MED/34_MED/26" in threshold_pairs(
        counts, 0.10, min_first_pubs=127).column("pair")
    assert len(threshold_pairs(counts, 1.0)) == 0
    assert len(threshold_pairs(counts, 0.10,
                               cross_discipline_only=True)) == 0


def test_threshold_pairs_across_disciplines():
    """Cross-discipline pairs above 5%."""
    counts = _field_counts(
        {"BIO/15": 715, "CHIM/06": 5669, "CHIM/08": 2713, "BIO/14": 5219,
         "MED/49": 313, "BIO/10": 6161},
        {("BIO/15", "CHIM/06"): 122, ("CHIM/08", "BIO/14"): 448,
         ("MED/49", "BIO/10"): 53, ("BIO/15", "BIO/14"): 79})
    table = threshold_pairs(counts, 0.05, cross_discipline_only=True)
    assert table.column("pair") == ["BIO/15_CHIM/06", "MED/49_BIO/10",
                                    "CHIM/08_BIO/14", "BIO/14_CHIM/08"]
    assert render(table).splitlines()[1] == "BIO/15_CHIM/06,122,17.1%,2.2%"
    assert "BIO/15_BIO/14" in threshold_pairs(counts, 0.05).column("pair")


def test_threshold_is_strict():
    """A pair at exactly the threshold is not listed."""
    counts = _field_counts({"A/01": 100, "B/01": 400}, {("A/01", "B/01"): 10})
    assert len(threshold_pairs(counts, 0.10, min_first_pubs=0)) == 0
    assert len(threshold_pairs(counts, 0.099, min_first_pubs=0)) == 1


def test_threshold_pair_list_enumerates_directed_pairs():
    """Without filters every co-occurring pair appears in both
    directions.
    """
    corpus, _ = generate(seed=5, publications=150)
    table = threshold_pair_list(corpus, 0, min_first_pubs=0)
    pairs = count_field_pairs(corpus)
    expected = {f"{x}_{y}" for x, y in pairs} | {f"{y}_{x}" for x, y in pairs}
    assert set(table.column("pair")) == expected
    assert len(table) == 2 * len(pairs)
    keys = [(-d, -c) for d, c in zip(table.column("d"), table.column("c"))]
    assert keys == sorted(keys)


def test_corpus_summary_table():
    """One row per discipline with both collaboration shares."""
    table = corpus_summary_table(worked_example())
    assert table.rows == [("CHIM", "Chemistry", 2, 4, 3, 0, 1)]
    assert render(table).splitlines()[1] == "CHIM,Chemistry,2,4,3,0.0%,100.0%"


def test_profile_table():
    """Rows follow the scheme order and the optional headcount filter."""
    corpus = worked_example()
    table = profile_table(corpus, "CHIM")
    assert table.column("field") == ["CHIM/01", "CHIM/02", "CHIM/06"]
    assert table.rows[0] == ("CHIM/01", 2, 2, 3, 1, 1, 0, 2, 2, 0, 0)
    assert table.provenance["omit_below"] == 0.01
    assert table.provenance["min_headcount"] is None

    table = profile_table(corpus, "CHIM", 1)
    assert table.column("field") == ["CHIM/01"]

    analysis = InterdisciplinarityAnalysis(partner_threshold=0.9).fit(corpus)
    table = profile_table(corpus, "CHIM", analysis=analysis)
    assert table.rows[0][8] == 0
    assert table.provenance["partner_threshold"] == 0.9
    with pytest.raises(ValueError):
        profile_table(worked_example(), "CHIM", analysis=analysis)


def test_profile_table_undefined_shares():
    """Fields without publications are listed with empty shares."""
    corpus = _corpus(_SCHEME, ["CHIM/01"])
    table = profile_table(corpus, "CHIM")
    assert table.rows[1][4] is None
    assert render(table).splitlines()[2].startswith("CHIM/02,0,0,0,,,,0")


def test_max_interdisciplinarity_modes():
    """The overall and the cross-discipline maxima can differ."""
    corpus = _corpus(_SCHEME,
                     ["CHIM/01", "CHIM/02"], ["CHIM/01", "CHIM/02"],
                     ["CHIM/02", "BIO/10"], ["CHIM/02"], ["BIO/10"])
    with pytest.warns(RuntimeWarning, match="MED"):
        overall = max_interdisciplinarity_report(corpus)
    assert overall.column("discipline") == ["CHIM", "BIO"]
    assert overall.column("field") == ["CHIM/01", "BIO/10"]
    assert overall.rows[0][5] == 1
    assert overall.provenance["ties"] == "none"

    with pytest.warns(RuntimeWarning):
        cross = max_interdisciplinarity_report(corpus, "cross_discipline")
    assert cross.column("field") == ["CHIM/02", "BIO/10"]
    assert cross.rows[0][7] == Fraction(1, 4)
    assert cross.title != overall.title

    with pytest.raises(ValueError):
        max_interdisciplinarity_report(corpus, "within")


def test_max_interdisciplinarity_every_pub_cross_field():
    """A field whose every publication is cross-field is selected."""
    scheme = FieldScheme([("D1/01", "F", "D1"), ("D1/02", "G", "D1"),
                          ("D2/01", "H", "D2")])
    corpus = _corpus(scheme, ["D1/01", "D2/01"], ["D1/01", "D1/02"],
                     ["D1/02"], ["D2/01"])
    table = max_interdisciplinarity_report(corpus)
    assert table.rows[0][:2] == ("D1", "D1/01")
    assert table.column("share_cross_field")[0] == 1


def test_max_interdisciplinarity_ties():
    """Ties go to the smallest field code and are recorded."""
    corpus = _corpus(_SCHEME, ["CHIM/02", "CHIM/01"], ["BIO/10", "MED/09"])
    table = max_interdisciplinarity_report(corpus)
    assert table.column("field") == ["CHIM/01", "BIO/10", "MED/09"]
    assert table.provenance["ties"] == "CHIM: CHIM/01, CHIM/02"
    assert "- ties: CHIM: CHIM/01, CHIM/02" in render(table, "markdown")


def test_max_interdisciplinarity_headcount_filter():
    """Only fields above the headcount floor compete."""
    corpus = _corpus(_SCHEME, ["CHIM/01", "BIO/10"], ["CHIM/02"],
                     ["MED/09"])
    with pytest.warns(RuntimeWarning):
        table = max_interdisciplinarity_report(corpus, min_headcount=1)
    assert len(table) == 0


def test_correlation_table():
    """Undefined correlations are omitted with a warning."""
    corpus, _ = generate(seed=1, disciplines=2, fields_per_discipline=5,
                         researchers_per_field=(5, 40), publications=400,
                         inverse_size_bias=1.0)
    table = correlation_table(corpus)
    assert table.column("discipline") == ["D1", "D2"]
    assert table.column("n") == [5, 5]
    assert all(-1 <= rho <= 1 for rho in table.column("rho"))

    with pytest.warns(RuntimeWarning, match="D1"):
        table = correlation_table(corpus, ["D1"], min_headcount=1000)
    assert len(table) == 0
    assert table.provenance["min_headcount"] == 1000
