"""Typed report tables and their CSV and Markdown renderings."""

import csv
import io
import math
import typing
from fractions import Fraction

import pandas as pd

from ..utils import as_fraction, check_bool

# Kinds of report columns
COUNT = "count"
RATIO = "ratio"
CODE = "code"
TEXT = "text"
REAL = "real"
FLAG = "flag"
COLUMN_KINDS = (COUNT, RATIO, CODE, TEXT, REAL, FLAG)

# Suffix of the full-precision companion of ratio and real columns
RAW_SUFFIX = "_raw"

FORMATS = ("csv", "markdown")


class Column(typing.NamedTuple):
    """A named, typed report column."""
    name: str
    kind: str


class ReportTable:
    """Ordered, typed rows plus the parameters they were computed with.

    Parameters
    ----------
    title : str
        Caption of the table.

    columns : sequence of Column or tuple
        ``(name, kind)`` pairs; `kind` is one of "count", "ratio", "code",
        "text", "real", or "flag".

    rows : iterable of tuple, optional
        Rows, each with one value per column. Ratio cells hold exact
        :class:`fractions.Fraction` values (or None when undefined).

    provenance : mapping, optional
        Parameters (thresholds, floors, level, ...) used to build the table.

    Attributes
    ----------
    title : str
    columns : tuple of Column
    rows : list of tuple
    provenance : dict
    """
    title: str
    columns: tuple
    rows: list
    provenance: dict

    def __init__(self, title, columns, rows=(), provenance=None):
        self.title = str(title)
        self.columns = tuple(Column(*c) for c in columns)
        for column in self.columns:
            if column.kind not in COLUMN_KINDS:
                raise ValueError(f"Invalid column kind: {column.kind}.")
        self.rows = []
        for row in rows:
            row = tuple(row)
            if len(row) != len(self.columns):
                raise ValueError(f"Row {row} has {len(row)} cells, expected "
                                 f"{len(self.columns)}.")
            self.rows.append(row)
        self.provenance = dict(provenance or {})

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self):  # pragma: no cover
        return render(self, "markdown")

    @property
    def names(self):
        """Column names in order."""
        return tuple(c.name for c in self.columns)

    def column(self, name):
        """All values of a column, in row order."""
        j = self.names.index(name)
        return [row[j] for row in self.rows]

    def to_frame(self):
        """The rows as a DataFrame, with ratio cells as floats."""
        rows = [[_real(v) if c.kind == RATIO else v
                 for c, v in zip(self.columns, row)] for row in self.rows]
        return pd.DataFrame(rows, columns=list(self.names))


def _real(value):
    return float("nan") if value is None else float(value)


def _undefined(value):
    return value is None or (isinstance(value, float) and math.isnan(value))


def format_percent(value):
    """Render a ratio as a percentage with one decimal.

    Rounding is half away from zero and exact, e.g. 2/3 gives "66.7%" and
    -0.00049 gives "0.0%".

    Parameters
    ----------
    value : numbers.Real or None
        The ratio. None and nan render as an empty string.

    Returns
    -------
    str
    """
    if _undefined(value):
        return ""
    tenths = as_fraction(value) * 1000
    n = math.floor(abs(tenths) + Fraction(1, 2))
    sign = "-" if tenths < 0 and n else ""
    return f"{sign}{n // 10}.{n % 10}%"


def format_raw(value):
    """Render a ratio or real number with full float precision."""
    if _undefined(value):
        return ""
    return repr(float(value))


def format_cell(value, kind):
    """Render one cell of the given column kind."""
    if kind == RATIO:
        return format_percent(value)
    if _undefined(value):
        return ""
    if kind == COUNT:
        return str(int(value))
    if kind == REAL:
        return f"{float(value):.2f}"
    if kind == FLAG:
        return "1" if value else "0"
    return str(value)


def _cells(table, raw):
    """Header and rendered rows, with raw columns appended if requested."""
    header = list(table.names)
    extra = [j for j, c in enumerate(table.columns)
             if raw and c.kind in (RATIO, REAL)]
    header += [table.columns[j].name + RAW_SUFFIX for j in extra]
    rows = []
    for row in table.rows:
        cells = [format_cell(v, c.kind) for c, v in zip(table.columns, row)]
        cells += [format_raw(row[j]) for j in extra]
        rows.append(cells)
    return header, rows


def _markdown_cell(text):
    return text.replace("|", "\\|")


def render(table, fmt="csv", *, raw=False):
    """Render a report table as text.

    Parameters
    ----------
    table : ReportTable
        The table.

    fmt : {"csv", "markdown"}, optional
        Output format. CSV uses commas, minimal quoting with doubled quotes,
        and LF line endings. Markdown is a pipe table preceded by the title
        and the provenance parameters.

    raw : bool, optional
        If True, append a ``<column>_raw`` column with the full-precision
        value of every ratio and real column.

    Returns
    -------
    str
        The rendering. An empty table renders as its header.
    """
    if not isinstance(table, ReportTable):
        raise TypeError("Parameter 'table' must be a ReportTable.")
    raw = check_bool(raw)
    header, rows = _cells(table, raw)

    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return out.getvalue()
    if fmt != "markdown":
        raise ValueError(f"Invalid value for 'fmt': {fmt}.")

    kinds = [c.kind for c in table.columns]
    kinds += [REAL] * (len(header) - len(kinds))
    align = ["---:" if k in (COUNT, RATIO, REAL) else "---" for k in kinds]
    lines = [f"**{_markdown_cell(table.title)}**", ""]
    if table.provenance:
        lines += [f"- {k}: {v}" for k, v in table.provenance.items()]
        lines.append("")
    lines.append("| " + " | ".join(map(_markdown_cell, header)) + " |")
    lines.append("| " + " | ".join(align) + " |")
    for cells in rows:
        lines.append("| " + " | ".join(map(_markdown_cell, cells)) + " |")
    return "\n".join(lines) + "\n"
