"""Slimness, slimming (removing eyes of covering M3s) and eye insertion."""

from __future__ import annotations

from dataclasses import dataclass

from .cells import Cell, enumerate_cells
from .diagram import LatticeDiagram, LatticeError
from .grid import delete_elements


@dataclass(frozen=True)
class EyeRecord:
    """One 1-step slimming, stored by element labels so it can be replayed.

    ``host`` is (o, a, c, i): the 4-cell left behind, a left of c.
    ``position`` is the gap index of that cell within the fan of atoms of [o, i].
    """

    removed: str
    host: tuple
    position: int = 0


def _fan(d, o, i):
    """Covers of ``o`` that ``i`` covers, left to right."""
    down_i = set(d.down[i])
    return [a for a in d.up[o] if a in down_i]


def covering_m3s(d):
    """(o, a, b, c, i) for every cover-preserving M3 with consecutive atoms a, b, c."""
    out = []
    for o in range(d.n):
        seen = set()
        for a in d.up[o]:
            for i in d.up[a]:
                if i in seen:
                    continue
                seen.add(i)
                fan = _fan(d, o, i)
                for k in range(len(fan) - 2):
                    out.append((o, fan[k], fan[k + 1], fan[k + 2], i))
    return out


def is_slim(d: LatticeDiagram) -> bool:
    """No cover-preserving M3: each o, i bounds at most two covering atoms."""
    j = d.join_table
    for o in range(d.n):
        row = d.up[o]
        if len(row) < 3:
            continue
        groups = {}
        for a in row:
            for b in row:
                if a != b:
                    t = int(j[a, b])
                    if t in d.up[a] and t in d.up[b]:
                        groups.setdefault(t, set()).update((a, b))
        if any(len(g) >= 3 for g in groups.values()):
            return False
    return True


def slim(d: LatticeDiagram):
    """Remove eyes until slim; returns (slim diagram, [EyeRecord]) in removal order.

    The lowest (then leftmost) covering M3 goes first; its middle atom is removed.
    """
    d = _with_labels(d)
    records = []
    while True:
        m3s = covering_m3s(d)
        if not m3s:
            return d, records
        o, a, b, c, i = min(m3s, key=lambda t: (d.heights[t[0]], t[0], d.up[t[0]].index(t[1])))
        pos = _fan(d, o, i).index(a)
        records.append(EyeRecord(d.label(b), (d.label(o), d.label(a), d.label(c), d.label(i)), pos))
        d, _ = delete_elements(d, [b])


def _with_labels(d):
    if d.labels is not None and len(set(d.labels)) == d.n:
        return d
    return LatticeDiagram(d.up, d.down, [str(v) for v in range(d.n)])


def add_eye(d: LatticeDiagram, cell: Cell, position=None, label=None) -> LatticeDiagram:
    """Insert a doubly irreducible element inside the 4-cell ``cell``.

    ``position`` indexes the gaps of the fan of atoms between ``cell.bottom``
    and ``cell.top``; by default the gap of ``cell`` itself.
    """
    if not cell.is_4cell:
        raise LatticeError("not a 4-cell")
    o, i = cell.bottom, cell.top
    fan = _fan(d, o, i)
    if cell.left_atom not in fan or cell.right_atom not in fan:
        raise LatticeError("cell is not a 4-cell of this diagram")
    if position is None:
        position = fan.index(cell.left_atom)
    if not 0 <= position < len(fan) - 1:
        raise LatticeError(f"position {position} out of range 0..{len(fan) - 2}")
    left = fan[position]
    new = d.n
    up = [list(r) for r in d.up]
    down = [list(r) for r in d.down]
    up[o].insert(up[o].index(left) + 1, new)
    down[i].insert(down[i].index(left) + 1, new)
    up.append([i])
    down.append([o])
    labels = list(d.labels) if d.labels is not None else [str(v) for v in range(d.n)]
    labels.append(label if label is not None else _fresh_label(labels))
    return LatticeDiagram(up, down, labels)


def _fresh_label(labels):
    k = len(labels)
    taken = set(labels)
    while f"e{k}" in taken:
        k += 1
    return f"e{k}"


def restore_eyes(d: LatticeDiagram, records) -> LatticeDiagram:
    """Undo a slimming: re-insert the recorded eyes in reverse order."""
    for rec in reversed(records):
        o, a, c, i = (d.index(x) for x in rec.host)
        cell = next(
            (x for x in enumerate_cells(d) if x.bottom == o and x.top == i and x.left_atom == a and x.right_atom == c),
            None,
        )
        if cell is None:
            raise LatticeError(f"host cell {rec.host} not found")
        d = add_eye(d, cell, rec.position, rec.removed)
    return d
