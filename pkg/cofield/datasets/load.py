"""Functions for loading the packaged datasets."""

import pathlib

from ..corpus import load_corpus
from ..field_scheme import load_scheme

# Directory of the data files
_DATA_DIR = "data"


def _file_path(filename):
    """Get the full file path of a dataset file named `filename`."""
    return pathlib.Path(__file__).parent / _DATA_DIR / filename


def hard_sciences():
    """Load the field classification of the Italian university hard sciences.

    The scheme has 205 scientific disciplinary sectors (fields) grouped into 9
    university disciplinary areas (disciplines). Every academic researcher in
    Italy belongs to exactly one of these fields.

    ======= ======================================
    Code    Discipline
    ======= ======================================
    MAT     Mathematics and computer sciences
    FIS     Physics
    CHIM    Chemistry
    GEO     Earth sciences
    BIO     Biology
    MED     Medicine
    AGR     Agricultural and veterinary sciences
    ING_CIV Civil engineering
    ING_IND Industrial and information engineering
    ======= ======================================

    Returns
    -------
    FieldScheme
        Fields and disciplines in the registry's order.
    """
    return load_scheme(_file_path("hard_sciences.csv"))


def worked_example(*, years=None):
    """Load a three-publication Chemistry corpus.

    Four researchers in three fields of Chemistry (two of them in CHIM/01)
    author three publications:

    ===== ===========================
    P1    CHIM/01, CHIM/02, CHIM/01
    P2    CHIM/01, CHIM/06
    P3    CHIM/01, CHIM/02, CHIM/06
    ===== ===========================

    The pair CHIM/01-CHIM/02 occurs in 2 publications, CHIM/01-CHIM/06 in 2,
    and CHIM/02-CHIM/06 in 1. Every publication of CHIM/01 is co-authored
    with another field.

    Parameters
    ----------
    years : tuple of int, optional
        Inclusive window of publication years to keep. The publications are
        from 2004, 2006, and 2008.

    Returns
    -------
    Corpus
        The linked corpus.
    """
    return load_corpus(_file_path("worked_example_scheme.csv"),
                       _file_path("worked_example_researchers.csv"),
                       _file_path("worked_example_publications.csv"),
                       _file_path("worked_example_authorships.csv"),
                       years=years)
