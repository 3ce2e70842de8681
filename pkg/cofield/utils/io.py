"""Reading the comma-delimited record files consumed by cofield."""

import csv
import io
import os

import pandas as pd

from ..exceptions import DataError

# Name of the provenance column added to every table read by read_records()
LINE = "line"

# Key of DataFrame.attrs holding the name of the file a table was read from
SOURCE = "source"


def _open(source):
    """Return a readable text stream and a display name for `source`."""
    if isinstance(source, (str, os.PathLike)):
        try:
            stream = open(source, "r", encoding="utf-8", newline="")
        except OSError as exc:
            raise DataError(f"Cannot read {os.fspath(source)}: "
                            f"{exc.strerror}.") from exc
        return stream, os.fspath(source), True
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return source, getattr(source, "name", "<stream>"), False
    raise TypeError(f"Cannot read records from a {type(source).__name__}.")


def read_records(source, *, required, optional=()):
    """Read a comma-delimited UTF-8 record file into a DataFrame of strings.

    Lines whose first non-blank character is ``#`` and blank lines are
    skipped. The first remaining line is the mandatory header. Every cell is
    whitespace-trimmed.

    Parameters
    ----------
    source : str or os.PathLike or file-like
        The file to read.

    required : sequence of str
        Columns that must appear in the header and be non-empty in every row.

    optional : sequence of str, optional
        Columns that may be absent from the header or empty in a row. Missing
        optional columns are filled with empty strings.

    Returns
    -------
    pandas.DataFrame
        One row per record with the required and optional columns (as str),
        plus an integer column ``line`` holding the 1-based line number of the
        record in `source`. The file name, when known, is kept in
        ``attrs["source"]``.

    Raises
    ------
    DataError
        If the header is missing or lacks a required column, or if a row has
        the wrong number of cells or an empty required cell. The message
        identifies the offending line.
    """
    stream, name, close = _open(source)
    columns = tuple(required) + tuple(optional)
    records = {column: [] for column in columns}
    records[LINE] = []
    try:
        reader = csv.reader(stream)
        header = None
        index = None
        for row in reader:
            line = reader.line_num
            if not row or not "".join(row).strip():
                continue
            if row[0].lstrip().startswith("#"):
                continue
            row = [cell.strip() for cell in row]
            if header is None:
                header = row
                missing = [c for c in required if c not in header]
                if missing:
                    raise DataError(f"{name}:{line}: header lacks required "
                                    f"column(s) {', '.join(missing)}.")
                index = {c: header.index(c) for c in columns if c in header}
                continue
            if len(row) != len(header):
                raise DataError(f"{name}:{line}: expected {len(header)} "
                                f"cells, found {len(row)}.")
            for column in columns:
                value = row[index[column]] if column in index else ""
                if not value and column in required:
                    raise DataError(f"{name}:{line}: empty '{column}'.")
                records[column].append(value)
            records[LINE].append(line)
    except csv.Error as exc:
        raise DataError(f"{name}: {exc}.") from exc
    finally:
        if close:
            stream.close()

    if header is None:
        raise DataError(f"{name}: missing header row.")

    data = pd.DataFrame(records, columns=list(columns) + [LINE])
    data[LINE] = data[LINE].astype("int64")
    if close or hasattr(source, "name"):
        data.attrs[SOURCE] = name
    return data


def write_records(data, target, columns):
    """Write the given columns of a DataFrame as comma-delimited UTF-8 with LF
    line endings.

    Parameters
    ----------
    data : pandas.DataFrame
        The records.

    target : str or os.PathLike or file-like
        Where to write.

    columns : sequence of str
        Columns to write, in order.
    """
    def _write(stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(data.loc[:, list(columns)]
                         .astype(str).itertuples(index=False, name=None))

    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="") as stream:
            _write(stream)
    else:
        _write(target)
