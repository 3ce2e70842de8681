"""Two-level field classification: fields grouped into disciplines."""

import typing
import warnings

import pandas as pd

from .exceptions import SchemeError, UnknownCodeError
from .utils import check_code, read_records, write_records
from .utils.io import LINE

# Columns of the registry file
_REQUIRED = ("field_code", "field_title", "discipline_code")
_OPTIONAL = ("discipline_title",)


def _code(code, what, where=""):
    """Trimmed code, or a SchemeError naming `what` if it is empty."""
    try:
        return check_code(code, what=what)
    except ValueError:
        raise SchemeError(f"Empty {what}{where}.") from None


class Discipline(typing.NamedTuple):
    """A coarse research discipline (top level of the classification)."""
    code: str
    title: str


class Field(typing.NamedTuple):
    """A fine-grained research field. Every field belongs to exactly one
    discipline, referenced here by code.
    """
    code: str
    title: str
    discipline: str


class Violation(typing.NamedTuple):
    """A problem found while validating input data.

    Attributes
    ----------
    level : {"warn", "error"}
        Severity. Error-level problems stop ingestion; warn-level problems are
        reported but tolerated.
    code : str
        The code (field, discipline, or record id) the problem concerns.
    message : str
        Human readable description.
    line : int or None
        Line of the source file the offending record came from, if known.
    """
    level: str
    code: str
    message: str
    line: typing.Optional[int] = None

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"[{self.level}] {where}{self.code}: {self.message}"


class FieldScheme:
    """Immutable registry of fields and the disciplines that group them.

    Parameters
    ----------
    fields : iterable of Field or tuple
        The fields, in canonical reporting order. Plain tuples
        ``(code, title, discipline)`` are accepted.

    disciplines : iterable of Discipline or tuple, optional
        Discipline titles. Disciplines referenced by `fields` but not listed
        here are declared implicitly (with the code as title). The canonical
        discipline order is the order of first appearance in `disciplines`,
        then in `fields`.

    lines : dict, optional
        Mapping of field codes to the source line they were read from, used to
        give validation messages some provenance.

    Attributes
    ----------
    fields : tuple of Field
        All fields in canonical order.

    disciplines : tuple of Discipline
        All disciplines in canonical order.

    field_index : dict
        Mapping of field codes to :class:`Field` records.

    Raises
    ------
    SchemeError
        If a field or discipline code is empty or a field code is duplicated.
    """
    fields: tuple
    disciplines: tuple
    field_index: dict

    def __init__(self, fields, disciplines=(), *, lines=None):
        lines = dict(lines or {})
        declared = dict()
        for discipline in disciplines:
            discipline = Discipline(*discipline)
            code = _code(discipline.code, "discipline code")
            declared.setdefault(code, Discipline(code, discipline.title))

        field_index = dict()
        for field in fields:
            field = Field(*field)
            line = lines.get(field.code)
            where = f" (line {line})" if line is not None else ""
            code = _code(field.code, "field code", where)
            parent = _code(field.discipline, f"discipline of field {code}",
                           where)
            if code in field_index:
                raise SchemeError(f"Duplicate field code {code}{where}.")
            field_index[code] = Field(code, field.title.strip(), parent)
            declared.setdefault(parent, Discipline(parent, parent))

        self.fields = tuple(field_index.values())
        self.disciplines = tuple(declared.values())
        self.field_index = field_index
        self._discipline_index = {d.code: d for d in self.disciplines}
        self._lines = lines
        members = {d.code: [] for d in self.disciplines}
        for field in self.fields:
            members[field.discipline].append(field.code)
        self._members = {k: tuple(v) for k, v in members.items()}

    def __len__(self):
        return len(self.fields)

    def __contains__(self, code):
        return code in self.field_index

    def __eq__(self, other):
        if not isinstance(other, FieldScheme):
            return NotImplemented
        return (self.fields == other.fields
                and self.disciplines == other.disciplines)

    def __repr__(self):  # pragma: no cover
        return (f"{self.__class__.__name__}({len(self.disciplines)} "
                f"disciplines, {len(self.fields)} fields)")

    @property
    def field_codes(self):
        """Field codes in canonical order."""
        return tuple(self.field_index)

    @property
    def discipline_codes(self):
        """Discipline codes in canonical order."""
        return tuple(self._discipline_index)

    def field(self, code):
        """Look up a field record by code.

        Raises
        ------
        UnknownCodeError
            If `code` is not a registered field.
        """
        try:
            return self.field_index[code]
        except KeyError:
            raise UnknownCodeError(f"Unknown field code: {code}.") from None

    def discipline(self, code):
        """Look up a discipline record by code.

        Raises
        ------
        UnknownCodeError
            If `code` is not a registered discipline.
        """
        try:
            return self._discipline_index[code]
        except KeyError:
            raise UnknownCodeError(
                f"Unknown discipline code: {code}.") from None

    def discipline_of(self, code):
        """The code of the discipline a field belongs to.

        Parameters
        ----------
        code : str
            A registered field code.

        Returns
        -------
        str
            The parent discipline code.

        Raises
        ------
        UnknownCodeError
            If `code` is not a registered field.
        """
        return self.field(code).discipline

    def fields_of(self, discipline):
        """Field codes of a discipline, in canonical order."""
        self.discipline(discipline)
        return self._members[discipline]

    def validate(self):
        """Check the non-fatal invariants of the scheme.

        Returns
        -------
        list of Violation
            Empty if and only if every invariant holds. Fatal problems cannot
            appear here since they are rejected on construction.
        """
        violations = []
        for field in self.fields:
            if not field.title:
                violations.append(Violation("warn", field.code, "empty title",
                                            self._lines.get(field.code)))
        for discipline in self.disciplines:
            if not self._members[discipline.code]:
                violations.append(Violation("warn", discipline.code,
                                            "discipline has no fields"))
        return violations

    def to_frame(self):
        """The registry as a DataFrame in the registry file layout."""
        titles = {d.code: d.title for d in self.disciplines}
        return pd.DataFrame(
            dict(field_code=[f.code for f in self.fields],
                 field_title=[f.title for f in self.fields],
                 discipline_code=[f.discipline for f in self.fields],
                 discipline_title=[titles[f.discipline] for f in self.fields]),
            columns=list(_REQUIRED + _OPTIONAL))

    def to_csv(self, target):
        """Write the registry so that :func:`load_scheme` reproduces it.

        Disciplines without fields cannot be expressed in the registry format
        and are lost.
        """
        write_records(self.to_frame(), target, _REQUIRED + _OPTIONAL)


def load_scheme(source, *, warn=True):
    """Load a field classification registry.

    Parameters
    ----------
    source : str or os.PathLike or file-like
        Comma-delimited UTF-8 file with a header row and the columns
        ``field_code,field_title,discipline_code[,discipline_title]``. Lines
        starting with ``#`` are ignored. Disciplines are declared by their
        first appearance.

    warn : bool, optional
        Indicates whether warn-level violations should be reported with
        :func:`warnings.warn`.

    Returns
    -------
    FieldScheme
        The validated scheme. Field order follows the file.

    Raises
    ------
    DataError
        If the file is malformed (the message carries the line number).

    SchemeError
        If a field code is duplicated.
    """
    records = read_records(source, required=("field_code", "discipline_code"),
                           optional=("field_title",) + _OPTIONAL)
    disciplines = []
    for code, title in zip(records.discipline_code, records.discipline_title):
        disciplines.append(Discipline(code, title or code))
    fields = zip(records.field_code, records.field_title,
                 records.discipline_code)
    lines = dict(zip(records.field_code, records[LINE]))

    scheme = FieldScheme(fields, disciplines, lines=lines)
    if warn:
        for violation in scheme.validate():
            warnings.warn(f"Field scheme: {violation}", RuntimeWarning)
    return scheme


def discipline_of(scheme, code):
    """The discipline code of the field `code` in `scheme`.

    See Also
    --------
    FieldScheme.discipline_of
    """
    return scheme.discipline_of(code)


def validate_scheme(scheme):
    """List the warn-level invariant violations of `scheme`.

    See Also
    --------
    FieldScheme.validate
    """
    return scheme.validate()
