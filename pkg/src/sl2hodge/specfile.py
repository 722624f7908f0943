"""Declarative text format for a Lie algebra, its modules and an optional subalgebra.

    # comment
    algebra sl2                      # a built-in name needs nothing else
    algebra g                        # or declare a custom algebra
    basis X Y Z                      # optional; otherwise taken from bracket lines
    bracket X Y = 1/2*r2*Z - (1 + i) Y
    module V dim 2
    action X = matrix[[0, 1], [0, 0]]
    subalgebra h = X, Y + Z

Errors carry the 1-based line and column of the offending text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .lie import LieAlgebra, LieAlgebraError, Subalgebra, an, nilpotent, sl2
from .linalg import Matrix
from .modules import ModuleError, ModuleSpec
from .scalars import ONE, ZERO, FieldElement, parse_scalar

BUILTIN = {"an": an, "sl2": sl2, "n": nilpotent}

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RESERVED = {"i", "r2", "matrix", "dim", "basis"}


class SpecFileError(ValueError):
    def __init__(self, message: str, line: int, col: int, source: str = "<spec>"):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.message, self.line, self.col, self.source = message, line, col, source


@dataclass
class SpecFile:
    algebra: LieAlgebra
    modules: list[ModuleSpec] = field(default_factory=list)
    subalgebra: Subalgebra | None = None


@dataclass
class _Pending:
    name: str
    dim: int
    line: int
    actions: dict[str, Matrix] = field(default_factory=dict)


class _Line:
    """One source line with helpers that raise positioned errors."""

    def __init__(self, text: str, number: int, source: str):
        self.text, self.number, self.source = text, number, source

    def error(self, message: str, offset: int = 0) -> SpecFileError:
        return SpecFileError(message, self.number, offset + 1, self.source)

    def scalar(self, text: str, offset: int) -> FieldElement:
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        try:
            return parse_scalar(body)
        except ValueError as exc:
            raise self.error(str(exc), offset + len(text) - len(text.lstrip())) from None


def _split_top(text: str, seps: str) -> list[tuple[str, int]]:
    """Split at separator characters outside brackets, keeping start offsets.

    A '+' or '-' separator stays attached to the piece that follows it.
    """
    out, depth, start = [], 0, 0
    for pos, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and ch in seps and pos > start:
            if ch in "+-":
                prev = text[start:pos].rstrip()
                if not prev or prev.endswith(("*", "/")):
                    continue
                out.append((text[start:pos], start))
                start = pos
            else:
                out.append((text[start:pos], start))
                start = pos + 1
    out.append((text[start:], start))
    return out


def parse_combination(line: _Line, text: str, offset: int, basis: list[str]) -> list[FieldElement]:
    """A linear combination such as ``1/2*r2*E - (1 + i) F`` as a coordinate vector."""
    vec = [ZERO] * len(basis)
    if not text.strip():
        raise line.error("empty linear combination", offset)
    if text.strip() == "0":
        return vec
    for piece, start in _split_top(text, "+-"):
        pos = offset + start
        body = piece.strip()
        sign = ONE
        if body[:1] in "+-":
            sign = -ONE if body[0] == "-" else ONE
            body = body[1:].strip()
        m = re.search(r"([A-Za-z_][A-Za-z0-9_]*)\s*$", body)
        if m is None or m.group(1) in _RESERVED:
            raise line.error(f"expected a generator name at the end of {piece.strip()!r}", pos)
        name = m.group(1)
        if name not in basis:
            raise line.error(f"unknown generator {name!r}", pos + piece.index(name))
        coef_text = body[:m.start()].rstrip().rstrip("*").rstrip()
        coef = line.scalar(coef_text, pos) if coef_text else ONE
        k = basis.index(name)
        vec[k] = vec[k] + sign * coef
    return vec


def parse_matrix(line: _Line, text: str, offset: int) -> Matrix:
    body = text.strip()
    lead = offset + len(text) - len(text.lstrip())
    if not (body.startswith("matrix[") and body.endswith("]")):
        raise line.error("expected matrix[[...], ...]", lead)
    inner = body[len("matrix["):-1]
    base = lead + len("matrix[")
    rows = []
    for piece, start in _split_top(inner, ","):
        row = piece.strip()
        pos = base + start + len(piece) - len(piece.lstrip())
        if not (row.startswith("[") and row.endswith("]")):
            raise line.error("matrix rows must be bracketed lists", pos)
        entries = _split_top(row[1:-1], ",")
        rows.append([line.scalar(e, pos + 1 + s) for e, s in entries])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise line.error("matrix rows have different lengths", lead)
    return Matrix(rows)


def _keyword(line: _Line) -> tuple[str, str, int]:
    stripped = line.text.split("#", 1)[0].rstrip()
    lead = len(stripped) - len(stripped.lstrip())
    word = stripped.strip().split(None, 1)
    if not word:
        return "", "", 0
    rest_offset = lead + len(word[0])
    rest = stripped[rest_offset:]
    return word[0], rest, rest_offset


def _split_eq(line: _Line, rest: str, offset: int) -> tuple[str, str, int]:
    if "=" not in rest:
        raise line.error("expected '='", offset + len(rest))
    lhs, rhs = rest.split("=", 1)
    return lhs, rhs, offset + len(lhs) + 1


def parse_spec(text: str, source: str = "<spec>") -> SpecFile:
    alg_name, alg_line = None, None
    basis: list[str] | None = None
    brackets: list[tuple[_Line, str, str, str, int]] = []
    pending: list[_Pending] = []
    sub_line: tuple[_Line, str, str, int] | None = None

    for number, raw in enumerate(text.splitlines(), 1):
        line = _Line(raw, number, source)
        word, rest, off = _keyword(line)
        if not word:
            continue
        if word == "algebra":
            names = rest.split()
            if len(names) != 1 or not _NAME.fullmatch(names[0]):
                raise line.error("expected 'algebra <name>'", off)
            if alg_name is not None:
                raise line.error("algebra declared twice", 0)
            alg_name, alg_line = names[0], line
        elif alg_name is None:
            raise line.error(f"'{word}' before 'algebra'", 0)
        elif word == "basis":
            names = rest.split()
            bad = [n for n in names if not _NAME.fullmatch(n) or n in _RESERVED]
            if not names or bad:
                raise line.error(f"bad generator names {bad or names}", off)
            basis = names
        elif word == "bracket":
            lhs, rhs, rhs_off = _split_eq(line, rest, off)
            pair = lhs.split()
            if len(pair) != 2 or not all(_NAME.fullmatch(p) and p not in _RESERVED for p in pair):
                raise line.error("expected 'bracket X Y = <combination>'", off)
            brackets.append((line, pair[0], pair[1], rhs, rhs_off))
        elif word == "module":
            m = re.fullmatch(r"\s+(\S+)\s+dim\s+(\d+)\s*", rest)
            if m is None:
                raise line.error("expected 'module <name> dim <d>'", off)
            pending.append(_Pending(m.group(1), int(m.group(2)), number))
        elif word == "action":
            if not pending:
                raise line.error("'action' before any 'module'", 0)
            lhs, rhs, rhs_off = _split_eq(line, rest, off)
            gen = lhs.strip()
            mat = parse_matrix(line, rhs, rhs_off)
            mod = pending[-1]
            if mat.shape != (mod.dim, mod.dim):
                lead = rhs_off + len(rhs) - len(rhs.lstrip())
                raise line.error(f"matrix is {mat.shape[0]}x{mat.shape[1]} but module {mod.name} "
                                 f"has dim {mod.dim}", lead)
            if gen in mod.actions:
                raise line.error(f"action of {gen} given twice", off)
            mod.actions[gen] = (mat, line, off)
        elif word == "subalgebra":
            lhs, rhs, rhs_off = _split_eq(line, rest, off)
            if sub_line is not None:
                raise line.error("subalgebra declared twice", 0)
            sub_line = (line, lhs.strip(), rhs, rhs_off)
        else:
            raise line.error(f"unknown keyword {word!r}", 0)

    if alg_name is None:
        raise SpecFileError("missing 'algebra' line", 1, 1, source)

    if basis is None and not brackets and alg_name in BUILTIN:
        g = BUILTIN[alg_name]()
    else:
        if basis is None:
            basis = []
            for _, x, y, _, _ in brackets:
                basis += [n for n in (x, y) if n not in basis]
        if not basis:
            raise alg_line.error(f"custom algebra {alg_name!r} needs a 'basis' line")
        table = {}
        for line, x, y, rhs, rhs_off in brackets:
            for name in (x, y):
                if name not in basis:
                    raise line.error(f"unknown generator {name!r}", line.text.index(name))
            comb = parse_combination(line, rhs, rhs_off, basis)
            key = (basis.index(x), basis.index(y))
            sparse = {k: c for k, c in enumerate(comb) if c}
            if key[0] > key[1]:
                key = (key[1], key[0])
                sparse = {k: -c for k, c in sparse.items()}
            if key in table and table[key] != sparse:
                raise line.error(f"conflicting brackets for [{x},{y}]", 0)
            table[key] = sparse
        try:
            g = LieAlgebra(alg_name, tuple(basis), table)
        except LieAlgebraError as exc:
            raise alg_line.error(str(exc)) from None

    modules = []
    for mod in pending:
        for gen, (_, line, off) in mod.actions.items():
            if gen not in g.basis:
                raise line.error(f"unknown generator {gen!r} of {g.name}", off + 1)
        mats = tuple(mod.actions[x][0] if x in mod.actions else Matrix.zeros(mod.dim, mod.dim)
                     for x in g.basis)
        try:
            modules.append(ModuleSpec(mod.name, g, mats))
        except ModuleError as exc:
            raise SpecFileError(f"not a representation: {exc}", mod.line, 1, source) from None

    sub = None
    if sub_line is not None:
        line, name, rhs, rhs_off = sub_line
        if not _NAME.fullmatch(name):
            raise line.error("expected 'subalgebra <name> = <combination>, ...'", 0)
        vectors, labels = [], []
        for piece, start in _split_top(rhs, ","):
            vec = parse_combination(line, piece, rhs_off + start, list(g.basis))
            vectors.append(vec)
            support = [k for k, c in enumerate(vec) if c]
            single = len(support) == 1 and vec[support[0]] == ONE
            labels.append(g.basis[support[0]] if single else f"u{len(labels)}")
        if Matrix.from_columns(vectors).rank() != len(vectors):
            raise line.error("subalgebra generators are linearly dependent", rhs_off)
        try:
            sub = g.subalgebra(name, labels, vectors)
        except LieAlgebraError as exc:
            raise line.error(str(exc), rhs_off) from None

    return SpecFile(g, modules, sub)


def load_spec(path: str) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), source=path)


__all__ = ["SpecFile", "SpecFileError", "parse_spec", "load_spec", "parse_combination", "parse_matrix"]
