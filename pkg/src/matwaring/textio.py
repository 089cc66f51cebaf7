"""Line-oriented text formats for fields, matrices and decompositions.

Matrix file::

    # comment
    p=7
    m=2
    modulus=1,0,1
    n=2
    A=[[1,3;0,0],[2,0;6,6]]

Entries are element encodings (comma-separated base-p digits, little-endian
in the field generator); entries of a row are separated by ';'.  Whitespace,
including line breaks, is insignificant and ``#`` starts a comment that runs
to the end of the line.
"""

import re

from .errors import BadModulus, FieldMismatch, NotPrime, ParseError
from .ff import format_element, make_field
from .matff import Mat

_KEYS = ("p", "m", "modulus", "n", "A")


class EntryOutOfRange(ParseError, FieldMismatch):
    """A matrix entry is not a valid element encoding for the declared field."""


class _Value:
    """A header value with the source position of each of its characters."""

    def __init__(self, key, chars):
        self.key = key
        self.text = "".join(c for c, _, _ in chars)
        self.pos = [(line, col) for _, line, col in chars]
        self.line, self.col = self.pos[0] if self.pos else (None, None)

    def error(self, message, offset=0, cls=ParseError):
        if self.pos:
            line, col = self.pos[min(offset, len(self.pos) - 1)]
        else:
            line, col = self.line, self.col
        return cls(message, line, col)


def _chars(text):
    out = []
    for line, raw in enumerate(text.splitlines(), start=1):
        for col, ch in enumerate(raw.split("#", 1)[0], start=1):
            if not ch.isspace():
                out.append((ch, line, col))
    return out


def _fields(chars):
    """[(key, _Value)] in file order; keys are letter runs followed by '='."""
    out = []
    i = 0
    while i < len(chars):
        ch, line, col = chars[i]
        if not ch.isalpha():
            raise ParseError(f"expected a key, found {ch!r}", line, col)
        j = i
        while j < len(chars) and chars[j][0].isalpha():
            j += 1
        key = "".join(c for c, _, _ in chars[i:j])
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", line, col)
        if j >= len(chars) or chars[j][0] != "=":
            raise ParseError(f"expected '=' after {key}", line, col)
        k = j + 1
        while k < len(chars) and not chars[k][0].isalpha():
            k += 1
        value = _Value(key, chars[j + 1:k])
        if value.line is None:
            value.line, value.col = chars[j][1], chars[j][2] + 1
        out.append((key, value))
        i = k
    return out


def _int(value):
    if not re.fullmatch(r"\d+", value.text):
        raise value.error(f"{value.key} must be a nonnegative integer, got {value.text!r}")
    return int(value.text)


def _block(fields):
    """(ctx, A) from the fields of one matrix block."""
    seen = {}
    for key, value in fields:
        if key in seen:
            raise value.error(f"duplicate key {key!r}")
        seen[key] = value
    first = fields[0][1] if fields else None
    for key in ("p", "n", "A"):
        if key not in seen:
            if first is None:
                raise ParseError(f"missing {key}=")
            raise ParseError(f"missing {key}=", first.line, None)
    p = _int(seen["p"])
    m = _int(seen["m"]) if "m" in seen else 1
    modulus = None
    if "modulus" in seen:
        mod = seen["modulus"]
        if not re.fullmatch(r"\d+(,\d+)*", mod.text):
            raise mod.error(f"bad modulus {mod.text!r}")
        modulus = tuple(int(c) for c in mod.text.split(","))
    try:
        ctx = make_field(p, m, modulus)
    except (NotPrime, BadModulus, ValueError) as exc:
        where = seen["modulus"] if isinstance(exc, BadModulus) and modulus is not None else seen["p"]
        raise where.error(str(exc)) from None
    n = _int(seen["n"])
    if n < 1:
        raise seen["n"].error("n must be >= 1")
    return ctx, _entries(ctx, n, seen["A"])


def _entries(ctx, n, value):
    """Parse ``[[e;e],[e;e]]`` into an n x n matrix."""
    s = value.text
    if not s.startswith("[["):
        raise value.error("matrix must be written as [[...],...]")
    rows = []
    pos = 1
    while True:
        if pos >= len(s) or s[pos] != "[":
            raise value.error("expected '['", pos)
        close = s.find("]", pos)
        if close < 0:
            raise value.error("unterminated row", pos)
        rows.append((s[pos + 1:close], pos + 1))
        pos = close + 1
        if s[pos:pos + 1] == ",":
            pos += 1
            continue
        if s[pos:] == "]":
            break
        raise value.error("expected ',' or a final ']'", pos)
    if len(rows) != n:
        raise value.error(f"expected {n} rows, found {len(rows)}")
    out = []
    for body, offset in rows:
        cells = body.split(";")
        if len(cells) != n:
            raise value.error(f"expected {n} entries in row, found {len(cells)}", offset)
        row = []
        for cell in cells:
            parts = cell.split(",")
            if len(parts) != ctx.m or not all(re.fullmatch(r"\d+", d) for d in parts):
                raise value.error(
                    f"entry {cell!r} must be {ctx.m} comma-separated digit(s)", offset, EntryOutOfRange
                )
            digits = [int(d) for d in parts]
            if any(d >= ctx.p for d in digits):
                raise value.error(f"entry {cell!r} has a digit outside [0, {ctx.p})", offset, EntryOutOfRange)
            row.append(digits[0] if ctx.base is None else ctx.from_digits(digits))
            offset += len(cell) + 1
        out.append(row)
    return Mat(ctx, out)


def parse_matrix(text):
    """(ctx, A) from a single matrix file."""
    ctx, mats = parse_matrices(text)
    if len(mats) != 1:
        raise ParseError(f"expected one matrix, found {len(mats)}")
    return ctx, mats[0]


def parse_matrices(text):
    """(ctx, [A_1, ...]) from consecutive matrix blocks, each opened by ``p=``.

    All blocks must share the field and the size.
    """
    blocks = []
    for key, value in _fields(_chars(text)):
        if key == "p":
            blocks.append([])
        elif not blocks:
            raise value.error("expected p= before any other key")
        blocks[-1].append((key, value))
    if not blocks:
        raise ParseError("no matrix found")
    ctx = None
    mats = []
    for fields in blocks:
        c, A = _block(fields)
        if ctx is not None and (c != ctx or A.n != mats[0].n):
            raise fields[0][1].error("all matrices must share the field and size")
        ctx = c
        mats.append(A)
    return ctx, mats


def field_header(ctx):
    lines = [f"p={ctx.p}", f"m={ctx.m}"]
    if ctx.m > 1:
        lines.append("modulus=" + ",".join(str(c) for c in ctx.modulus))
    return lines


def render_entries(A):
    F = A.ctx
    return "[" + ",".join("[" + ";".join(format_element(F, e) for e in row) + "]" for row in A.rows) + "]"


def render_matrix(A):
    return "\n".join(field_header(A.ctx) + [f"n={A.n}", "A=" + render_entries(A)]) + "\n"


def render_decomposition(d, verified):
    lines = [f"k={d.k}", f"terms={d.terms}", f"case={d.case}"]
    for i, X in enumerate(d.witnesses, start=1):
        lines.append(f"# witness {i}")
        lines.append(render_matrix(X).rstrip("\n"))
    lines.append(f"verified={'true' if verified else 'false'}")
    return "\n".join(lines) + "\n"
