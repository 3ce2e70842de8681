"""Weighted co-occurrence graph export."""

import csv
import io
import typing
from fractions import Fraction

from ..metrics import count_pairs
from ..utils import check_int
from .table import format_raw


class GraphEdge(typing.NamedTuple):
    """An undirected edge between two co-occurring codes.

    Attributes
    ----------
    source, target : str
        The codes, in canonical order.
    joint : int
        Joint publications (at least 1).
    d, e, avg : fractions.Fraction
        Incidence for the source, for the target, and their average.
    """
    source: str
    target: str
    joint: int
    d: Fraction
    e: Fraction
    avg: Fraction


def graph_edges(counts, min_joint=1):
    """Edges of the co-occurrence graph described by pair counts.

    Parameters
    ----------
    counts : PairCounts
        Publication and joint counts.

    min_joint : int, optional
        Minimum joint publications of an edge.

    Returns
    -------
    list of GraphEdge
        In canonical pair order.
    """
    min_joint = check_int(min_joint, minimum=1)
    edges = []
    for key, c in counts.items():
        if c < min_joint:
            continue
        stats = counts.stats(*key)
        edges.append(GraphEdge(key.first, key.second, c, stats.d, stats.e,
                               stats.avg))
    return edges


def write_edges(edges):
    """Render edges as ``from,to,joint,d,e,avg`` lines with full-precision
    ratios.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("from", "to", "joint", "d", "e", "avg"))
    for edge in edges:
        writer.writerow((edge.source, edge.target, edge.joint,
                         format_raw(edge.d), format_raw(edge.e),
                         format_raw(edge.avg)))
    return out.getvalue()


def export_graph(corpus, level="field", min_joint=1, *, n_jobs=1):
    """Export the weighted co-occurrence graph of a corpus as an edge list.

    Parameters
    ----------
    corpus : Corpus
        The linked corpus.

    level : {"field", "discipline"}, optional
        Nodes are fields or disciplines.

    min_joint : int, optional
        Minimum joint publications of an edge.

    n_jobs : int, optional
        Number of publication chunks counted concurrently.

    Returns
    -------
    str
        A header line and one line per edge, in canonical order.
    """
    counts = count_pairs(corpus, level, n_jobs=n_jobs)
    return write_edges(graph_edges(counts, min_joint))
