"""MPS export and import for StandardFormLP instances.

The writer emits classic fixed-format MPS: sections NAME, ROWS, COLUMNS,
RHS, BOUNDS, ENDATA with fields starting at columns 2, 5, 15, 25, 40 and 50
(1-indexed), names at most 8 characters, and at most two (row, value) pairs
per data line.  Numeric fields use the shortest decimal representation that
round-trips the double exactly, so a value may overrun its 12-character
field; every field is still separated by whitespace, which any free-format
reader (including the bundled one) accepts.

The reader is deliberately tolerant: it splits on whitespace, ignores
comment lines (leading ``*``), and supports bound types UP, LO, FX, FR, MI,
PL.  RANGES sections and integrality markers are rejected, not ignored.
"""

from __future__ import annotations

import re

import numpy as np
from scipy import sparse

from .simplex import LPError, StandardFormLP

_NAME_WIDTH = 8
_FIELD_START = (1, 4, 14, 24, 39, 49)  # 0-indexed starts of fields 1-6
_VALID_NAME = re.compile(r"[^A-Za-z0-9_.]")

_SENSE_TO_TAG = {"<": "L", "=": "E", ">": "G"}
_TAG_TO_SENSE = {v: k for k, v in _SENSE_TO_TAG.items()}

OBJ_ROW = "COST"
RHS_SET = "RHS"
BOUND_SET = "BND"


def _fmt(v: float) -> str:
    """Shortest decimal string that parses back to exactly this double."""
    return repr(float(v))


def _line(*fields: tuple[int, str]) -> str:
    """Assemble a line placing each string at (or after) its field start."""
    out = ""
    for idx, text in fields:
        start = _FIELD_START[idx]
        if len(out) < start:
            out = out.ljust(start)
        elif out and not out.endswith(" "):
            out += " "
        out += text
    return out


class _NameTable:
    """Deterministic sanitization + truncation of names to 8 characters."""

    def __init__(self, reserved=()):
        self.taken: set[str] = set(reserved)
        self.mapping: dict[str, str] = {}

    def add(self, original: str) -> str:
        if original in self.mapping:
            return self.mapping[original]
        base = _VALID_NAME.sub("_", original) or "X"
        candidate = base[:_NAME_WIDTH]
        if candidate in self.taken:
            stem = base[: _NAME_WIDTH - 3]
            k = 1
            while True:
                suffix = np.base_repr(k, 36)
                candidate = f"{stem}{'_' if len(suffix) < 3 else ''}{suffix}"[
                    :_NAME_WIDTH
                ]
                if candidate not in self.taken:
                    break
                k += 1
        self.taken.add(candidate)
        self.mapping[original] = candidate
        return candidate


def export_mps(lp: StandardFormLP, name: str | None = None) -> str:
    """Serialize the LP to fixed-format MPS text."""
    n, m = lp.n, lp.m
    var_names = list(lp.var_names) or [f"X{j + 1}" for j in range(n)]
    row_names = list(lp.row_names) or [f"R{i + 1}" for i in range(m)]

    names = _NameTable(reserved={OBJ_ROW, RHS_SET, BOUND_SET})
    rows = [names.add(r) for r in row_names]
    names_v = _NameTable(reserved=set())
    cols = [names_v.add(v) for v in var_names]

    out = [f"NAME          {name or lp.name}"]
    out.append("ROWS")
    out.append(_line((0, "N"), (1, OBJ_ROW)))
    for i, rname in enumerate(rows):
        out.append(_line((0, _SENSE_TO_TAG[lp.senses[i]]), (1, rname)))

    A = lp.A.tocsc()
    out.append("COLUMNS")
    for j in range(n):
        pairs = [(OBJ_ROW, lp.c[j])]
        start, end = A.indptr[j], A.indptr[j + 1]
        for k in range(start, end):
            if A.data[k] != 0.0:
                pairs.append((rows[A.indices[k]], A.data[k]))
        for p in range(0, len(pairs), 2):
            chunk = pairs[p:p + 2]
            fields = [(1, cols[j])]
            fields.append((2, chunk[0][0]))
            fields.append((3, _fmt(chunk[0][1])))
            if len(chunk) == 2:
                fields.append((4, chunk[1][0]))
                fields.append((5, _fmt(chunk[1][1])))
            out.append(_line(*fields))

    out.append("RHS")
    pairs = [(rows[i], lp.b[i]) for i in range(m) if lp.b[i] != 0.0]
    for p in range(0, len(pairs), 2):
        chunk = pairs[p:p + 2]
        fields = [(1, RHS_SET), (2, chunk[0][0]), (3, _fmt(chunk[0][1]))]
        if len(chunk) == 2:
            fields.append((4, chunk[1][0]))
            fields.append((5, _fmt(chunk[1][1])))
        out.append(_line(*fields))

    bound_lines = []
    for j in range(n):
        lo, hi = lp.lo[j], lp.hi[j]
        vname = cols[j]
        if lo == 0.0 and np.isposinf(hi):
            continue  # the MPS default
        if lo == hi:
            bound_lines.append(
                _line((0, "FX"), (1, BOUND_SET), (2, vname), (3, _fmt(lo)))
            )
            continue
        if np.isneginf(lo) and np.isposinf(hi):
            bound_lines.append(_line((0, "FR"), (1, BOUND_SET), (2, vname)))
            continue
        if np.isneginf(lo):
            bound_lines.append(_line((0, "MI"), (1, BOUND_SET), (2, vname)))
        elif lo != 0.0:
            bound_lines.append(
                _line((0, "LO"), (1, BOUND_SET), (2, vname), (3, _fmt(lo)))
            )
        if np.isfinite(hi):
            bound_lines.append(
                _line((0, "UP"), (1, BOUND_SET), (2, vname), (3, _fmt(hi)))
            )
    if bound_lines:
        out.append("BOUNDS")
        out.extend(bound_lines)

    out.append("ENDATA")
    return "\n".join(out) + "\n"


def parse_mps(text: str) -> StandardFormLP:
    """Parse (tolerantly) MPS text back into a StandardFormLP."""
    section = None
    problem_name = "LP"
    obj_row: str | None = None
    row_order: list[str] = []
    row_sense: dict[str, str] = {}
    col_order: list[str] = []
    col_index: dict[str, int] = {}
    c_entries: dict[int, float] = {}
    a_entries: dict[tuple[str, int], float] = {}
    rhs: dict[str, float] = {}
    bounds: dict[int, list[float]] = {}  # j -> [lo, hi]

    def col(name: str) -> int:
        if name not in col_index:
            col_index[name] = len(col_order)
            col_order.append(name)
        return col_index[name]

    for raw in text.splitlines():
        if not raw.strip() or raw.lstrip().startswith("*"):
            continue
        is_header = not raw[0].isspace()
        tokens = raw.split()

        if is_header:
            keyword = tokens[0].upper()
            if keyword == "NAME":
                problem_name = tokens[1] if len(tokens) > 1 else "LP"
                section = "NAME"
            elif keyword in ("ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
                section = keyword
            elif keyword == "RANGES":
                raise LPError("RANGES sections are not supported")
            elif keyword == "OBJSENSE":
                section = "OBJSENSE"
            else:
                raise LPError(f"unknown MPS section {keyword!r}")
            continue

        if section == "OBJSENSE":
            if tokens[0].upper() not in ("MIN", "MINIMIZE"):
                raise LPError("only minimization MPS files are supported")
        elif section == "ROWS":
            tag, rname = tokens[0].upper(), tokens[1]
            if tag == "N":
                if obj_row is None:
                    obj_row = rname
                # extra free rows are legal MPS; ignore their entries
            elif tag in _TAG_TO_SENSE:
                row_order.append(rname)
                row_sense[rname] = _TAG_TO_SENSE[tag]
            else:
                raise LPError(f"unknown row tag {tag!r}")
        elif section == "COLUMNS":
            if "'MARKER'" in raw:
                raise LPError("integer markers are not supported (pure LP)")
            cname = tokens[0]
            j = col(cname)
            for rname, value in zip(tokens[1::2], tokens[2::2]):
                v = float(value)
                if rname == obj_row:
                    c_entries[j] = c_entries.get(j, 0.0) + v
                elif rname in row_sense:
                    key = (rname, j)
                    a_entries[key] = a_entries.get(key, 0.0) + v
                # entries to unknown/extra N rows are ignored
        elif section == "RHS":
            for rname, value in zip(tokens[1::2], tokens[2::2]):
                if rname in row_sense:
                    rhs[rname] = float(value)
        elif section == "BOUNDS":
            btype = tokens[0].upper()
            vname = tokens[2]
            j = col_index.get(vname)
            if j is None:
                raise LPError(f"bound on unknown column {vname!r}")
            bnd = bounds.setdefault(j, [0.0, np.inf])
            if btype == "UP":
                v = float(tokens[3])
                bnd[1] = v
                if v < 0.0 and bnd[0] == 0.0:
                    bnd[0] = -np.inf  # classic convention for negative UP
            elif btype == "LO":
                bnd[0] = float(tokens[3])
            elif btype == "FX":
                bnd[0] = bnd[1] = float(tokens[3])
            elif btype == "FR":
                bnd[0], bnd[1] = -np.inf, np.inf
            elif btype == "MI":
                bnd[0] = -np.inf
            elif btype == "PL":
                bnd[1] = np.inf
            else:
                raise LPError(f"unsupported bound type {btype!r}")
        elif section in ("NAME", "ENDATA"):
            continue
        else:
            raise LPError("data line before any section header")

    if obj_row is None:
        raise LPError("no objective (N) row found")

    n = len(col_order)
    m = len(row_order)
    row_pos = {r: i for i, r in enumerate(row_order)}

    c = np.zeros(n)
    for j, v in c_entries.items():
        c[j] = v
    b = np.zeros(m)
    for r, v in rhs.items():
        b[row_pos[r]] = v
    lo = np.zeros(n)
    hi = np.full(n, np.inf)
    for j, (l, h) in bounds.items():
        lo[j], hi[j] = l, h

    if a_entries:
        rows_idx, cols_idx, data = zip(
            *(((row_pos[r]), j, v) for (r, j), v in a_entries.items())
        )
        A = sparse.coo_matrix((data, (rows_idx, cols_idx)), shape=(m, n)).tocsr()
    else:
        A = sparse.csr_matrix((m, n))

    return StandardFormLP(
        c=c,
        A=A,
        senses=tuple(row_sense[r] for r in row_order),
        b=b,
        lo=lo,
        hi=hi,
        var_names=tuple(col_order),
        row_names=tuple(row_order),
        name=problem_name,
    )
