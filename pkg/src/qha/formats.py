"""Line-oriented text formats for algebras (``.alg``) and modules (``.mod``).

Algebra files::

    algebra gamma_2
    field 101            # or Q; omitted means the default field
    bound 4
    vertex 1
    vertex 2
    arrow a1 1 2
    arrow b2 2 1
    relation 1 a1*b2
    relation 1 a2*b3 + -1 b2*a1

Module files::

    module M
    algebra builtin:gamma_4   # or a path, relative to the module file
    dims 0 1 1 2
    arrow a2 1x1
    1
    arrow b4 2x1
    1
    0

Arrows that are not listed act by zero. ``#`` starts a comment.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .exactlin import Field, default_field
from .qalg import Algebra, AlgebraError, Relation, build_algebra, quiver_from
from .repmod import Module, ModuleError


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield no, raw, body


def _col(raw: str, token: str) -> int:
    return raw.find(token) + 1


def parse_field(token: str) -> Field:
    if token.upper() == "Q" or token == "0":
        return Field(0)
    try:
        return Field(int(token))
    except ValueError as e:
        raise FormatError(f"bad field {token!r}: {e}") from None


def parse_algebra(text: str, field: Field | None = None) -> Algebra:
    """Parse an algebra file; ``field`` overrides the file's ``field`` line."""
    name, fld, bound = "", None, None
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    rels: list[Relation] = []
    rel_tokens: list[tuple[int, str, list[tuple[str, str]]]] = []
    for no, raw, body in _lines(text):
        words = body.split()
        kw = words[0]
        if kw == "algebra":
            if len(words) != 2:
                raise FormatError("expected 'algebra NAME'", no, 1)
            name = words[1]
        elif kw == "field":
            if len(words) != 2:
                raise FormatError("expected 'field P' or 'field Q'", no, 1)
            try:
                fld = parse_field(words[1])
            except FormatError as e:
                raise FormatError(str(e), no, _col(raw, words[1])) from None
        elif kw == "bound":
            if len(words) != 2 or not words[1].isdigit():
                raise FormatError("expected 'bound N'", no, 1)
            bound = int(words[1])
        elif kw == "vertex":
            if len(words) != 2:
                raise FormatError("expected 'vertex LABEL'", no, 1)
            if words[1] in vertices:
                raise FormatError(f"duplicate vertex {words[1]!r}", no, _col(raw, words[1]))
            vertices.append(words[1])
        elif kw == "arrow":
            if len(words) != 4:
                raise FormatError("expected 'arrow LABEL SOURCE TARGET'", no, 1)
            for w in words[2:]:
                if w not in vertices:
                    raise FormatError(f"unknown vertex {w!r}", no, _col(raw, w))
            arrows.append((words[1], words[2], words[3]))
        elif kw == "relation":
            terms = _split_terms(body[len("relation"):], no, raw)
            rel_tokens.append((no, raw, terms))
        else:
            raise FormatError(f"unknown keyword {kw!r}", no, _col(raw, kw))
    if not vertices:
        raise FormatError("no vertices")
    if bound is None:
        raise FormatError("missing 'bound N' line")
    labels = {a for a, _, _ in arrows}
    for no, raw, terms in rel_tokens:
        out = []
        for coef, path in terms:
            for tok in path.split("*"):
                if tok not in labels:
                    raise FormatError(f"unknown arrow {tok!r} in relation", no, _col(raw, tok))
            try:
                c = Fraction(coef)
            except (ValueError, ZeroDivisionError):
                raise FormatError(f"bad coefficient {coef!r}", no, _col(raw, coef)) from None
            out.append((c, path))
        rels.append(Relation.of(*out))
    fld = field or fld or default_field()
    try:
        return build_algebra(quiver_from(vertices, arrows), rels, bound, fld, name=name)
    except AlgebraError as e:
        raise FormatError(str(e)) from e


def _split_terms(s: str, no: int, raw: str) -> list[tuple[str, str]]:
    terms = []
    for chunk in s.split(" + "):
        words = chunk.split()
        if len(words) == 1:
            words = ["1", words[0]]
        if len(words) != 2:
            raise FormatError(f"expected 'COEF PATH' in {chunk.strip()!r}", no, _col(raw, chunk.strip() or "+"))
        terms.append((words[0], words[1]))
    if not terms:
        raise FormatError("empty relation", no, 1)
    return terms


def print_algebra(a: Algebra) -> str:
    out = [f"algebra {a.name or 'unnamed'}", f"field {'Q' if a.field.is_rational else a.field.characteristic}",
           f"bound {a.bound}"]
    out += [f"vertex {v}" for v in a.quiver.vertices]
    out += [f"arrow {x.label} {x.source} {x.target}" for x in a.quiver.arrows]
    for r in a.relations:
        out.append("relation " + " + ".join(f"{c} {'*'.join(p)}" for c, p in r.terms))
    return "\n".join(out) + "\n"


def resolve_algebra(ref: str, base: Path | None = None, field: Field | None = None) -> Algebra:
    """``builtin:NAME`` or a path to an algebra file."""
    if ref.startswith("builtin:"):
        from .auslander import builtin
        return builtin(ref.split(":", 1)[1], field)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return parse_algebra(path.read_text(), field)


def parse_module(text: str, base: Path | None = None, field: Field | None = None,
                 algebra: Algebra | None = None) -> Module:
    name = ""
    dims = None
    blocks: dict[str, list[list[str]]] = {}
    shapes: dict[str, tuple[int, int]] = {}
    lines = list(_lines(text))
    i = 0
    while i < len(lines):
        no, raw, body = lines[i]
        words = body.split()
        kw = words[0]
        if kw == "module":
            name = words[1] if len(words) > 1 else ""
        elif kw == "algebra":
            if len(words) != 2:
                raise FormatError("expected 'algebra REF'", no, 1)
            if algebra is None:
                algebra = resolve_algebra(words[1], base, field)
        elif kw == "dims":
            try:
                dims = [int(w) for w in words[1:]]
            except ValueError:
                raise FormatError("dimensions must be integers", no, 1) from None
        elif kw == "arrow":
            if len(words) != 3 or "x" not in words[2]:
                raise FormatError("expected 'arrow LABEL RxC'", no, 1)
            r, c = (int(x) for x in words[2].split("x"))
            rows = []
            for _ in range(r):
                i += 1
                if i >= len(lines):
                    raise FormatError(f"matrix for {words[1]!r} ends early", no, 1)
                rno, rraw, rbody = lines[i]
                entries = rbody.split()
                if len(entries) != c:
                    raise FormatError(f"expected {c} entries", rno, 1)
                rows.append(entries)
            blocks[words[1]] = rows
            shapes[words[1]] = (r, c)
        else:
            raise FormatError(f"unknown keyword {kw!r}", no, _col(raw, kw))
        i += 1
    if algebra is None:
        raise FormatError("missing 'algebra' line")
    if dims is None or len(dims) != algebra.n_vertices:
        raise FormatError(f"'dims' needs {algebra.n_vertices} entries")
    F = algebra.field
    actions = []
    for k, arr in enumerate(algebra.quiver.arrows):
        s, t = algebra.arrow_source[k], algebra.arrow_target[k]
        want = (dims[s], dims[t])
        if arr.label in blocks:
            if shapes[arr.label] != want:
                raise FormatError(f"arrow {arr.label} needs a {want[0]}x{want[1]} matrix")
            actions.append(F.array([[Fraction(x) for x in row] for row in blocks[arr.label]]).reshape(want))
        else:
            actions.append(F.zeros(*want))
    unknown = set(blocks) - set(algebra.arrow_index)
    if unknown:
        raise FormatError(f"unknown arrow {sorted(unknown)[0]!r}")
    try:
        return Module(algebra, dims, actions, name=name)
    except ModuleError as e:
        raise FormatError(str(e)) from e


def print_module(m: Module, algebra_ref: str | None = None) -> str:
    a = m.algebra
    out = [f"module {m.name or 'M'}", f"algebra {algebra_ref or 'builtin:' + (a.name or '?')}",
           "dims " + " ".join(str(d) for d in m.dims)]
    for k, arr in enumerate(a.quiver.arrows):
        b = m.actions[k]
        if b.size == 0 or not b.any():
            continue
        out.append(f"arrow {arr.label} {b.shape[0]}x{b.shape[1]}")
        out += [" ".join(str(x) for x in row) for row in b]
    return "\n".join(out) + "\n"
