"""Deduplicated co-occurrence counting of fields and disciplines."""

import concurrent.futures
import functools
import logging
import typing
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..exceptions import ConsistencyError, DomainError, UnknownCodeError
from ..utils import check_int

logger = logging.getLogger(__name__)

_LEVELS = ("field", "discipline")


class PairKey(typing.NamedTuple):
    """An unordered pair of distinct codes, stored in canonical order."""
    first: str
    second: str

    @classmethod
    def of(cls, x, y, rank=None):
        """The canonical key for codes `x` and `y`.

        Parameters
        ----------
        x, y : str
            Two distinct codes.

        rank : dict, optional
            Mapping of codes to their position in the canonical order (the
            scheme order). If not provided, codes are ordered
            lexicographically.

        Raises
        ------
        ValueError
            If ``x == y``; a field never pairs with itself.
        """
        if x == y:
            raise ValueError(f"A pair needs two distinct codes, got {x} "
                             "twice.")
        if rank is None:
            ordered = x < y
        else:
            ordered = rank[x] < rank[y]
        return cls(x, y) if ordered else cls(y, x)

    def __str__(self):
        return f"{self.first}-{self.second}"


class PairStats(typing.NamedTuple):
    """Incidence statistics of a directed pair.

    Attributes
    ----------
    a : int
        Publications of the first code.
    b : int
        Publications of the second code.
    c : int
        Joint publications.
    """
    a: int
    b: int
    c: int

    @property
    def d(self):
        """Incidence for the first code, c/a (exact)."""
        return Fraction(self.c, self.a)

    @property
    def e(self):
        """Incidence for the second code, c/b (exact)."""
        return Fraction(self.c, self.b)

    @property
    def avg(self):
        """Average incidence (d + e)/2 (exact)."""
        return (self.d + self.e) / 2

    def reversed(self):
        """Statistics of the same pair seen from the second code."""
        return PairStats(self.b, self.a, self.c)


def pair_incidence(a, b, c):
    """Incidence statistics for a pair with `a` and `b` publications and `c`
    joint publications.

    Parameters
    ----------
    a, b : int
        Positive publication counts of the two codes.

    c : int
        Joint publication count, at most ``min(a, b)``.

    Returns
    -------
    PairStats
        Exact ratios are available as the ``d``, ``e`` and ``avg``
        properties.

    Raises
    ------
    DomainError
        If `a` or `b` is zero.

    ConsistencyError
        If `c` is negative or exceeds ``min(a, b)``.
    """
    a = int(check_int(a, minimum=0))
    b = int(check_int(b, minimum=0))
    c = int(check_int(c))
    if a == 0 or b == 0:
        raise DomainError("Incidence is undefined for a code without "
                          "publications.")
    if c < 0 or c > min(a, b):
        raise ConsistencyError(f"Joint count {c} must be between 0 and "
                               f"min({a}, {b}).")
    return PairStats(a, b, c)


class PairCounts:
    """Publication counts of codes and joint counts of code pairs.

    Instances normally come from :func:`count_pairs`, but can be built from
    published totals to reproduce tables without the underlying corpus.

    Parameters
    ----------
    pub_counts : mapping
        Publications per code. Iteration order defines the canonical order.

    joint : mapping
        Joint publication counts keyed by ``(x, y)`` tuples in either
        orientation. Zero counts are ignored.

    level : {"field", "discipline"}, optional
        What the codes are.

    parents : mapping, optional
        Parent discipline of each code (field level), used to tell
        cross-discipline pairs apart.

    Attributes
    ----------
    codes : tuple of str
        Codes in canonical order.

    pub_counts : dict
        Publications per code.

    joint : dict
        Non-zero joint counts keyed by canonical :class:`PairKey`, in
        canonical pair order.

    Raises
    ------
    UnknownCodeError
        If a pair mentions a code missing from `pub_counts`.

    ConsistencyError
        If a joint count exceeds the publication count of either code.
    """
    codes: tuple
    pub_counts: dict
    joint: dict

    def __init__(self, pub_counts, joint, *, level="field", parents=None):
        if level not in _LEVELS:
            raise ValueError(f"Invalid value for 'level': {level}.")
        self.level = level
        self.pub_counts = {k: int(v) for k, v in pub_counts.items()}
        self.codes = tuple(self.pub_counts)
        self._rank = {code: i for i, code in enumerate(self.codes)}
        self.parents = dict(parents) if parents is not None else None

        merged = dict()
        for (x, y), c in joint.items():
            c = int(c)
            for code in (x, y):
                if code not in self._rank:
                    raise UnknownCodeError(f"Unknown code in pair: {code}.")
            key = PairKey.of(x, y, self._rank)
            if c < 0 or c > min(self.pub_counts[x], self.pub_counts[y]):
                raise ConsistencyError(f"Joint count {c} for {key} exceeds "
                                       "the publications of its codes.")
            if c:
                merged[key] = c
        order = sorted(merged, key=lambda k: (self._rank[k.first],
                                              self._rank[k.second]))
        self.joint = {key: merged[key] for key in order}

        self._partners = {code: dict() for code in self.codes}
        for key, c in self.joint.items():
            self._partners[key.first][key.second] = c
            self._partners[key.second][key.first] = c

    def __len__(self):
        return len(self.joint)

    def __repr__(self):  # pragma: no cover
        return (f"{self.__class__.__name__}({self.level}: "
                f"{len(self.codes)} codes, {len(self.joint)} pairs)")

    def _check(self, code):
        if code not in self._rank:
            raise UnknownCodeError(f"Unknown {self.level} code: {code}.")

    def key(self, x, y):
        """Canonical key of the pair ``(x, y)``."""
        self._check(x)
        self._check(y)
        return PairKey.of(x, y, self._rank)

    def count(self, code):
        """Publications of a code."""
        self._check(code)
        return self.pub_counts[code]

    def joint_count(self, x, y):
        """Joint publications of two codes, zero if they never co-occur."""
        return self.joint.get(self.key(x, y), 0)

    def stats(self, x, y):
        """Directed incidence statistics of `x` with `y`.

        Raises
        ------
        DomainError
            If either code has no publications.
        """
        return pair_incidence(self.count(x), self.count(y),
                              self.joint_count(x, y))

    def partners(self, code):
        """Codes co-occurring with `code` and their joint counts.

        Returns
        -------
        list of tuple
            ``(partner, joint)`` pairs in canonical order of the partner.
        """
        self._check(code)
        partners = self._partners[code]
        return sorted(partners.items(), key=lambda kv: self._rank[kv[0]])

    def is_cross(self, x, y):
        """Whether `x` and `y` belong to different disciplines.

        At discipline level every pair is cross-discipline.
        """
        if self.level == "discipline":
            return x != y
        if self.parents is None:
            raise ValueError("Parent disciplines are unknown for these "
                             "counts.")
        return self.parents[x] != self.parents[y]

    def items(self):
        """``(PairKey, joint)`` items in canonical order."""
        return self.joint.items()


def _cooccurrence(incidence, n_jobs):
    """Code x code co-occurrence matrix ``X^T X`` of a binary incidence
    matrix. The diagonal holds per-code publication counts.

    Rows (publications) are split into `n_jobs` contiguous chunks whose
    partial products are computed concurrently and summed. Integer addition
    makes the result independent of the split.
    """
    n_rows = incidence.shape[0]
    n_chunks = max(1, min(n_jobs, n_rows))
    if n_chunks == 1:
        return (incidence.T @ incidence).tocsr()

    bounds = np.linspace(0, n_rows, n_chunks + 1).astype(np.int64)
    chunks = [incidence[start:stop]
              for start, stop in zip(bounds[:-1], bounds[1:])]

    def _partial(chunk):
        return (chunk.T @ chunk).tocsr()

    with concurrent.futures.ThreadPoolExecutor(max_workers=n_chunks) as pool:
        partials = list(pool.map(_partial, chunks))
    return functools.reduce(lambda x, y: x + y, partials).tocsr()


def count_pairs(corpus, level="field", *, n_jobs=1):
    """Count publications per code and joint publications per code pair.

    A publication contributes at most 1 to a pair, however many authors of
    each code it has, and never counts a code with itself.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    level : {"field", "discipline"}, optional
        Count fields or disciplines.

    n_jobs : int, optional
        Number of publication chunks to count concurrently.

    Returns
    -------
    PairCounts
    """
    if level not in _LEVELS:
        raise ValueError(f"Invalid value for 'level': {level}.")
    n_jobs = check_int(n_jobs, minimum=1)
    scheme = corpus.scheme
    if level == "field":
        codes = scheme.field_codes
        parents = {f.code: f.discipline for f in scheme.fields}
    else:
        codes = scheme.discipline_codes
        parents = None

    cooccurrence = _cooccurrence(corpus.incidence(level), n_jobs)
    return _from_cooccurrence(cooccurrence, codes, level, parents)


def _from_cooccurrence(cooccurrence, codes, level, parents):
    """Wrap a co-occurrence matrix into a :class:`PairCounts`."""
    diagonal = cooccurrence.diagonal()
    upper = sp.triu(cooccurrence, k=1).tocoo()
    order = np.lexsort((upper.col, upper.row))
    joint = {(codes[i], codes[j]): int(c)
             for i, j, c in zip(upper.row[order], upper.col[order],
                                upper.data[order]) if c}
    logger.debug("Counted %d %s pairs over %d codes", len(joint), level,
                 len(codes))
    return PairCounts(dict(zip(codes, diagonal.tolist())), joint, level=level,
                      parents=parents)


def count_field_pairs(corpus, *, n_jobs=1):
    """Joint publication counts of every co-occurring field pair.

    Returns
    -------
    dict
        Non-zero counts keyed by canonical :class:`PairKey`, in canonical
        order.
    """
    return count_pairs(corpus, "field", n_jobs=n_jobs).joint


def count_discipline_pairs(corpus, *, n_jobs=1):
    """Joint publication counts of every co-occurring discipline pair, with
    each publication counted at most once per discipline pair.

    Returns
    -------
    dict
        Non-zero counts keyed by canonical :class:`PairKey`, in canonical
        order.
    """
    return count_pairs(corpus, "discipline", n_jobs=n_jobs).joint
