"""Text serialization of lattice diagrams and DOT export.

Format, one lattice per file::

    n=<count>
    0: up=[1,2] label=0
    1: up=[3]
    ...

Upper-cover lists are written left to right; they are the embedding, so
``emit_lattice(parse_lattice(text)) == text`` for every emitted text.
"""

from __future__ import annotations

import re

from .diagram import LatticeDiagram, LatticeError, conjugate_rank, require_valid

_HEADER = re.compile(r"n=(\d+)$")
_LINE = re.compile(r"(\d+): up=\[([0-9,]*)\](?: label=(.*))?$")


class LatticeFormatError(LatticeError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def emit_lattice(d: LatticeDiagram) -> str:
    out = [f"n={d.n}"]
    for x in range(d.n):
        row = f"{x}: up=[{','.join(str(y) for y in d.up[x])}]"
        if d.labels is not None and d.labels[x] is not None:
            lab = str(d.labels[x])
            if "\n" in lab or "\r" in lab:
                raise LatticeError(f"label of {x} contains a line break")
            row += f" label={lab}"
        out.append(row)
    return "\n".join(out) + "\n"


def parse_lattice(text: str, validate: bool = True) -> LatticeDiagram:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise LatticeFormatError("empty input", 1)
    m = _HEADER.match(lines[0])
    if m is None:
        raise LatticeFormatError("expected 'n=<count>'", 1)
    n = int(m.group(1))
    if len(lines) != n + 1:
        raise LatticeFormatError(f"expected {n} element lines, found {len(lines) - 1}", min(len(lines), n + 1) + 1)
    up, labels = [], []
    any_label = False
    for k, line in enumerate(lines[1:], start=2):
        m = _LINE.match(line)
        if m is None:
            raise LatticeFormatError("expected '<i>: up=[...]' with an optional ' label=...'", k, _bad_column(line))
        idx = int(m.group(1))
        if idx != k - 2:
            raise LatticeFormatError(f"element {idx} out of order, expected {k - 2}", k)
        body = m.group(2)
        row = []
        if body:
            col = line.index("[") + 2
            for tok in body.split(","):
                if not tok:
                    raise LatticeFormatError("empty entry in up list", k, col)
                v = int(tok)
                if v >= n:
                    raise LatticeFormatError(f"cover {v} out of range 0..{n - 1}", k, col)
                row.append(v)
                col += len(tok) + 1
        up.append(row)
        labels.append(m.group(3))
        any_label |= m.group(3) is not None
    d = LatticeDiagram(up, labels=labels if any_label else None)
    if validate:
        require_valid(d)
    return d


def _bad_column(line):
    for i, (a, b) in enumerate(zip(line, "0: up=[")):
        if a != b and not (a.isdigit() and b == "0"):
            return i + 1
    return 1


def read_lattice(path, validate: bool = True) -> LatticeDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice(fh.read(), validate)


def write_lattice(d: LatticeDiagram, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_lattice(d))


def _dot_id(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(d: LatticeDiagram, classes=None, name="L") -> str:
    """DOT drawing: one rank per height, nodes ordered left to right by the embedding.

    ``classes`` (lists of element ids) are drawn as dashed links between members.
    """
    rank = conjugate_rank(d)
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(d.n):
        lines.append(f"  n{x} [label={_dot_id(d.label(x))}];")
    levels = {}
    for x in range(d.n):
        levels.setdefault(d.heights[x], []).append(x)
    for h in sorted(levels):
        row = sorted(levels[h], key=lambda v: rank[v])
        lines.append("  { rank=same; " + " ".join(f"n{v};" for v in row) + " }")
        for a, b in zip(row, row[1:]):
            lines.append(f"  n{a} -> n{b} [style=invis];")
    for x in range(d.n):
        for y in d.up[x]:
            lines.append(f"  n{x} -> n{y} [arrowhead=none];")
    for cls in classes or ():
        members = sorted(cls, key=lambda v: (d.heights[v], rank[v]))
        for a, b in zip(members, members[1:]):
            lines.append(f"  n{a} -> n{b} [style=dashed, dir=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
