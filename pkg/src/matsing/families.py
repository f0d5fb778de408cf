"""Reading and writing family descriptions, and the built-in catalog.

The format is line oriented: `key = value` statements separated by newlines
or semicolons (newlines inside brackets do not separate).  '#' starts a
comment.  Keys:

    name     free-form label
    kind     symmetric | skew | general | section
    n        matrix size (matrix kinds; inferred from the matrix if absent)
    vars     source variables: `x, y, z` or a range `x1..x6`
    matrix   full matrix `[[...], [...]]` of polynomial entries
    upper    the upper triangle row-major instead of the full matrix
             (including the diagonal for symmetric, strict for skew)
    fvars    target variables (sections)
    f        the target function (sections), a polynomial in fvars
    map      `[p1, ..., pN]`, the section components, polynomials in vars
    expected.KEY   integer metadata carried along (reference values)

Polynomials use explicit operators only: `x^2*y - 3/2*z + 1`.  There is no
implicit multiplication; exponents are nonnegative integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .matalg import MatrixFamily, PolyMatrix
from .poly import Poly, SubstitutionMap, format_poly

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class ParseError(ValueError):
    """Input text rejected, with position information when available."""

    def __init__(self, message: str, line: Optional[int] = None,
                 col: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}" if col is None else \
                f"line {line}, column {col}: {message}"
        super().__init__(message)


# -- polynomial expressions -----------------------------------------------------

class _Tokens:
    def __init__(self, text: str, varnames: List[str]):
        self.text = text
        self.pos = 0
        self.vars = {v: i for i, v in enumerate(varnames)}
        self.nvars = len(varnames)

    def error(self, msg: str):
        prefix = self.text[:self.pos]
        line = prefix.count("\n") + 1
        col = self.pos - (prefix.rfind("\n") + 1) + 1
        raise ParseError(msg, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            self.error(f"expected {ch!r}")

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected an identifier")
        self.pos = m.end()
        return m.group()


def _parse_expr(t: _Tokens) -> Poly:
    sign = 1
    if t.take("-"):
        sign = -1
    elif t.take("+"):
        pass
    p = _parse_term(t) * sign
    while True:
        if t.take("+"):
            p = p + _parse_term(t)
        elif t.take("-"):
            p = p - _parse_term(t)
        else:
            return p


def _parse_term(t: _Tokens) -> Poly:
    p = _parse_power(t)
    while t.take("*"):
        p = p * _parse_power(t)
    return p


def _parse_power(t: _Tokens) -> Poly:
    base = _parse_atom(t)
    if t.take("^"):
        return base ** t.integer()
    return base


def _parse_atom(t: _Tokens) -> Poly:
    c = t.peek()
    if c == "(":
        t.expect("(")
        p = _parse_expr(t)
        t.expect(")")
        return p
    if c.isdigit():
        num = t.integer()
        if t.take("/"):
            den = t.integer()
            if den == 0:
                t.error("zero denominator")
            return Poly.constant(t.nvars, Fraction(num, den))
        return Poly.constant(t.nvars, num)
    if c and (c.isalpha() or c == "_"):
        name = t.ident()
        idx = t.vars.get(name)
        if idx is None:
            t.error(f"unknown variable {name!r}")
        return Poly.variable(t.nvars, idx)
    t.error("expected a number, variable or parenthesized expression")


def parse_poly(text: str, varnames: List[str]) -> Poly:
    """Parse one polynomial over the named variables."""
    t = _Tokens(text, list(varnames))
    p = _parse_expr(t)
    t.skip_ws()
    if t.pos != len(t.text):
        t.error("unexpected trailing input")
    return p


# -- family files -----------------------------------------------------------------

@dataclass
class FamilySpec:
    """A parsed family description plus carried metadata."""

    kind: str
    variables: List[str]
    name: str = ""
    n: Optional[int] = None
    entries: Optional[List[List[Poly]]] = None
    fvars: Optional[List[str]] = None
    f: Optional[Poly] = None
    map_images: Optional[List[Poly]] = None
    expected: dict = field(default_factory=dict)

    def to_family(self) -> MatrixFamily:
        if self.kind == "section":
            raise ValueError("a section has no matrix family")
        return MatrixFamily(self.kind, self.n, len(self.variables),
                            PolyMatrix(self.entries, len(self.variables)))

    def to_section(self) -> Tuple[Poly, SubstitutionMap]:
        if self.kind != "section":
            raise ValueError("not a section")
        return self.f, SubstitutionMap(self.map_images)

    def subject(self):
        return self.to_section() if self.kind == "section" else self.to_family()


def _split_statements(text: str) -> List[Tuple[int, str]]:
    """Split on newlines/semicolons at bracket depth 0; strip comments.
    Returns (line_number, statement) pairs."""
    out = []
    buf: List[str] = []
    depth = 0
    line = 1
    start_line = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line += 1
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", line)
        if (ch == ";" or ch == "\n") and depth == 0:
            stmt = "".join(buf).strip()
            if stmt:
                out.append((start_line, stmt))
            buf = []
            start_line = line
        else:
            buf.append(ch)
        i += 1
    if depth != 0:
        raise ParseError("unbalanced bracket at end of input", line)
    stmt = "".join(buf).strip()
    if stmt:
        out.append((start_line, stmt))
    return out


def _parse_varlist(value: str, line: int) -> List[str]:
    value = value.strip()
    m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*?)(\d+)\.\.\1?(\d+)", value)
    if m:
        prefix, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if hi < lo:
            raise ParseError("empty variable range", line)
        return [f"{prefix}{k}" for k in range(lo, hi + 1)]
    names = [v.strip() for v in value.split(",")]
    for v in names:
        if not _IDENT.fullmatch(v):
            raise ParseError(f"bad variable name {v!r}", line)
    if len(set(names)) != len(names):
        raise ParseError("repeated variable name", line)
    return names


def _parse_poly_list(value: str, varnames: List[str], line: int) -> List[Poly]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError("expected [ ... ]", line)
    inner = value[1:-1]
    parts = _split_top_level(inner, line)
    return [parse_poly(p, varnames) for p in parts]


def _split_top_level(text: str, line: int) -> List[str]:
    parts = []
    buf: List[str] = []
    depth = 0
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            part = "".join(buf).strip()
            if not part:
                raise ParseError("empty list entry", line)
            parts.append(part)
            buf = []
        else:
            buf.append(ch)
    last = "".join(buf).strip()
    if last:
        parts.append(last)
    elif parts:
        raise ParseError("trailing comma", line)
    return parts


def _parse_rows(value: str, varnames: List[str], line: int) -> List[List[Poly]]:
    value = value.strip()
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError("expected [[...], ...]", line)
    rows_text = _split_top_level(value[1:-1], line)
    rows = []
    for rt in rows_text:
        if not (rt.startswith("[") and rt.endswith("]")):
            raise ParseError("expected a [...] row", line)
        rows.append([parse_poly(p, varnames)
                     for p in _split_top_level(rt[1:-1], line)])
    if not rows:
        raise ParseError("empty matrix", line)
    return rows


def _parse_matrix(value: str, varnames: List[str], line: int) -> List[List[Poly]]:
    rows = _parse_rows(value, varnames, line)
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise ParseError("ragged matrix rows", line)
    return rows


_KEYS = ("name", "kind", "n", "vars", "fvars", "matrix", "upper", "f", "map")
_KINDS = ("symmetric", "skew", "general", "section")


def parse_family(text: str) -> FamilySpec:
    """Parse a family description; raises ParseError on any defect."""
    fields: dict = {}
    lines: dict = {}
    expected: dict = {}
    for line, stmt in _split_statements(text):
        if "=" not in stmt:
            raise ParseError("expected key = value", line)
        key, value = stmt.split("=", 1)
        key = key.strip()
        value = value.strip()
        if key.startswith("expected."):
            sub = key[len("expected."):]
            if not _IDENT.fullmatch(sub):
                raise ParseError(f"bad expected key {sub!r}", line)
            expected[sub] = (value if value == "infinite"
                             else _int_or_error(value, line))
            continue
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", line)
        if key in fields:
            raise ParseError(f"repeated key {key!r}", line)
        fields[key] = value
        lines[key] = line

    if "kind" not in fields:
        raise ParseError("missing kind")
    kind = fields["kind"]
    if kind not in _KINDS:
        raise ParseError(f"unknown kind {kind!r}", lines["kind"])
    if "vars" not in fields:
        raise ParseError("missing vars")
    variables = _parse_varlist(fields["vars"], lines["vars"])
    name = fields.get("name", "")

    if kind == "section":
        for key in ("matrix", "upper", "n"):
            if key in fields:
                raise ParseError(f"key {key!r} does not apply to sections",
                                 lines[key])
        for key in ("fvars", "f", "map"):
            if key not in fields:
                raise ParseError(f"missing {key!r} for a section")
        fvars = _parse_varlist(fields["fvars"], lines["fvars"])
        f = parse_poly(fields["f"], fvars)
        images = _parse_poly_list(fields["map"], variables, lines["map"])
        if len(images) != len(fvars):
            raise ParseError(
                f"map has {len(images)} components, fvars has {len(fvars)}",
                lines["map"])
        return FamilySpec(kind=kind, variables=variables, name=name,
                          fvars=fvars, f=f, map_images=images,
                          expected=expected)

    for key in ("fvars", "f", "map"):
        if key in fields:
            raise ParseError(f"key {key!r} only applies to sections",
                             lines[key])
    if ("matrix" in fields) == ("upper" in fields):
        raise ParseError("exactly one of matrix/upper is required")
    if "matrix" in fields:
        entries = _parse_matrix(fields["matrix"], variables, lines["matrix"])
        n = len(entries)
        if len(entries[0]) != n:
            raise ParseError("matrix is not square", lines["matrix"])
    else:
        rows = _parse_rows(fields["upper"], variables, lines["upper"])
        entries = _fill_upper(kind, rows, len(variables), lines["upper"])
        n = len(entries)
    if "n" in fields:
        n_stated = _int_or_error(fields["n"], lines["n"])
        if n_stated != n:
            raise ParseError(f"n = {n_stated} does not match the matrix size "
                             f"{n}", lines["n"])
    if kind == "symmetric":
        for i in range(n):
            for j in range(i + 1, n):
                if entries[i][j] != entries[j][i]:
                    raise ParseError(f"symmetry violated at row {i + 1}, "
                                     f"column {j + 1}", lines.get("matrix"))
    if kind == "skew":
        for i in range(n):
            if not entries[i][i].is_zero():
                raise ParseError(f"nonzero diagonal entry at row {i + 1}",
                                 lines.get("matrix"))
            for j in range(i + 1, n):
                if entries[i][j] != -entries[j][i]:
                    raise ParseError("skew symmetry violated at row "
                                     f"{i + 1}, column {j + 1}",
                                     lines.get("matrix"))
    return FamilySpec(kind=kind, variables=variables, name=name, n=n,
                      entries=entries, expected=expected)


def _int_or_error(value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"expected an integer, got {value!r}", line)


def _fill_upper(kind: str, rows: List[List[Poly]], nvars: int,
                line: int) -> List[List[Poly]]:
    """Rows of the upper triangle, each one entry shorter than the last
    (the first includes the diagonal for symmetric kinds, excludes it for
    skew)."""
    if kind not in ("symmetric", "skew"):
        raise ParseError("upper only applies to symmetric/skew kinds", line)
    n = len(rows[0]) if kind == "symmetric" else len(rows[0]) + 1
    offset = 0 if kind == "symmetric" else 1
    if len(rows) != n - offset:
        raise ParseError(f"upper needs {n - offset} rows for n = {n}, "
                         f"got {len(rows)}", line)
    for i, r in enumerate(rows):
        if len(r) != n - offset - i:
            raise ParseError(f"upper row {i + 1} needs {n - offset - i} "
                             f"entries, got {len(r)}", line)
    z = Poly.zero(nvars)
    grid = [[z] * n for _ in range(n)]
    for i, r in enumerate(rows):
        for k, p in enumerate(r):
            j = i + offset + k
            grid[i][j] = p
            if i != j:
                grid[j][i] = p if kind == "symmetric" else -p
    return grid


def print_family(spec: FamilySpec) -> str:
    """Canonical text form; parse_family(print_family(s)) is equivalent
    to s."""
    out = []
    if spec.name:
        out.append(f"name = {spec.name}")
    out.append(f"kind = {spec.kind}")
    out.append(f"vars = {', '.join(spec.variables)}")
    if spec.kind == "section":
        out.append(f"fvars = {', '.join(spec.fvars)}")
        out.append(f"f = {format_poly(spec.f, spec.fvars)}")
        images = ", ".join(format_poly(p, spec.variables)
                           for p in spec.map_images)
        out.append(f"map = [{images}]")
    else:
        out.append(f"n = {spec.n}")
        rows = []
        for r in spec.entries:
            rows.append("[" + ", ".join(format_poly(p, spec.variables)
                                        for p in r) + "]")
        out.append("matrix = [" + ", ".join(rows) + "]")
    for key in sorted(spec.expected):
        out.append(f"expected.{key} = {spec.expected[key]}")
    return "\n".join(out) + "\n"


# -- catalog ----------------------------------------------------------------------

def _xvars(k: int) -> List[str]:
    return [f"x{i + 1}" for i in range(k)]


def _build_generic_sym_2(params: dict) -> FamilySpec:
    v = _xvars(3)
    e = [[_v(v, 0), _v(v, 1)], [_v(v, 1), _v(v, 2)]]
    return FamilySpec(kind="symmetric", variables=v, name="generic-sym-2",
                      n=2, entries=e,
                      expected={"mu": 1, "tau_matrix_special": 0,
                                "codim_minors": 1})


def _build_generic_gen_2(params: dict) -> FamilySpec:
    v = _xvars(4)
    e = [[_v(v, 0), _v(v, 1)], [_v(v, 2), _v(v, 3)]]
    return FamilySpec(kind="general", variables=v, name="generic-gen-2",
                      n=2, entries=e,
                      expected={"mu": 1, "tau_matrix_special": 0,
                                "codim_minors": 1})


def _build_generic_skew_4(params: dict) -> FamilySpec:
    v = _xvars(6)
    z = Poly.zero(6)
    x = [Poly.variable(6, i) for i in range(6)]
    e = [[z, x[0], x[1], x[2]],
         [-x[0], z, x[3], x[4]],
         [-x[1], -x[3], z, x[5]],
         [-x[2], -x[4], -x[5], z]]
    return FamilySpec(kind="skew", variables=v, name="generic-skew-4",
                      n=4, entries=e,
                      expected={"mu": 1, "tau_matrix_special": 0,
                                "codim_minors": 1})


def _v(names: List[str], i: int) -> Poly:
    return Poly.variable(len(names), i)


def _block_extend(entries: List[List[Poly]], n: int, nvars: int,
                  diag_block) -> List[List[Poly]]:
    """Embed a small matrix in the top-left corner of an n x n one, filling
    the rest of the diagonal with copies of diag_block (a square list grid
    of constants)."""
    k = len(entries)
    z = Poly.zero(nvars)
    grid = [[z] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            grid[i][j] = entries[i][j]
    step = len(diag_block)
    pos = k
    while pos < n:
        for i in range(step):
            for j in range(step):
                c = diag_block[i][j]
                if c:
                    grid[pos + i][pos + j] = Poly.constant(nvars, c)
        pos += step
    return grid


def _build_normal_form_sym(params: dict) -> FamilySpec:
    n = int(params.get("n", 2))
    if n < 2:
        raise ValueError("normal-form-sym needs n >= 2")
    v = _xvars(3)
    core = [[_v(v, 0), _v(v, 1)], [_v(v, 1), _v(v, 2)]]
    e = _block_extend(core, n, 3, [[1]])
    return FamilySpec(kind="symmetric", variables=v,
                      name=f"normal-form-sym n={n}", n=n, entries=e,
                      expected={"mu": 1, "codim_minors": 1})


def _build_normal_form_gen(params: dict) -> FamilySpec:
    n = int(params.get("n", 2))
    if n < 2:
        raise ValueError("normal-form-gen needs n >= 2")
    v = _xvars(4)
    core = [[_v(v, 0), _v(v, 1)], [_v(v, 2), _v(v, 3)]]
    e = _block_extend(core, n, 4, [[1]])
    return FamilySpec(kind="general", variables=v,
                      name=f"normal-form-gen n={n}", n=n, entries=e,
                      expected={"mu": 1, "codim_minors": 1})


def _build_normal_form_skew(params: dict) -> FamilySpec:
    n = int(params.get("n", 4))
    if n < 4 or n % 2 != 0:
        raise ValueError("normal-form-skew needs even n >= 4")
    spec4 = _build_generic_skew_4({})
    # The constant block must itself be skew, so the identity is replaced
    # by 2x2 blocks [[0, 1], [-1, 0]].
    e = _block_extend(spec4.entries, n, 6, [[0, 1], [-1, 0]])
    return FamilySpec(kind="skew", variables=spec4.variables,
                      name=f"normal-form-skew n={n}", n=n, entries=e,
                      expected={"mu": 1, "codim_minors": 1})


def _build_diag_sym(params: dict) -> FamilySpec:
    a = params.get("a")
    if a is None:
        raise ValueError("diag-sym needs a = (a1, a2, ...)")
    if isinstance(a, int):
        a = (a,)
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError("exponents must be nonnegative")
    n = len(a)
    z = Poly.zero(1)
    e = [[z] * n for _ in range(n)]
    for i, ai in enumerate(a):
        e[i][i] = Poly.monomial(1, (ai,))
    srt = sorted(a)
    expected = {}
    if sum(a) > 0:
        expected = {"mu": sum(a) - 1,
                    "tau_matrix_special":
                        sum((n - i) * srt[i] for i in range(n)) - 1}
    label = ",".join(str(x) for x in a)
    return FamilySpec(kind="symmetric", variables=["x"],
                      name=f"diag-sym a=({label})", n=n, entries=e,
                      expected=expected)


def _build_remark_4_8_iii(params: dict) -> FamilySpec:
    fv = ["x", "y", "z"]
    sv = ["x", "y"]
    f = parse_poly("x^5*z + x^3*y^3 + y^5*z", fv)
    images = [parse_poly("x", sv), parse_poly("y", sv),
              parse_poly("x + y", sv)]
    return FamilySpec(kind="section", variables=sv, name="remark-4-8-iii",
                      fvars=fv, f=f, map_images=images,
                      expected={"mu": 25, "tau_function_right": 10,
                                "codim_minors": 19})


def _build_cross_ratio(params: dict) -> FamilySpec:
    fv = ["x", "y", "z"]
    sv = ["x", "y"]
    f = parse_poly("y*(x + y)*(x - y)*(x + z*y)", fv)
    images = [parse_poly("x", sv), parse_poly("y", sv), Poly.zero(2)]
    return FamilySpec(kind="section", variables=sv,
                      name="cross-ratio-example", fvars=fv, f=f,
                      map_images=images, expected={"mu": 9})


_CATALOG = {
    "generic-sym-2": _build_generic_sym_2,
    "generic-gen-2": _build_generic_gen_2,
    "generic-skew-4": _build_generic_skew_4,
    "normal-form-sym": _build_normal_form_sym,
    "normal-form-gen": _build_normal_form_gen,
    "normal-form-skew": _build_normal_form_skew,
    "diag-sym": _build_diag_sym,
    "remark-4-8-iii": _build_remark_4_8_iii,
    "cross-ratio-example": _build_cross_ratio,
}


def catalog_names() -> List[str]:
    return sorted(_CATALOG)


def catalog(name: str, **params) -> FamilySpec:
    """A named built-in family; parameters depend on the entry."""
    builder = _CATALOG.get(name)
    if builder is None:
        raise KeyError(f"unknown catalog family {name!r}; available: "
                       + ", ".join(catalog_names()))
    return builder(params)
