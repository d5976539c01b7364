"""Cells (bounded empty faces), 4-cell lattices and upper-adjacent pairs."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LatticeDiagram, LatticeError


@dataclass(frozen=True)
class Cell:
    bottom: int
    top: int
    left_chain: tuple  # bottom -> top, inclusive
    right_chain: tuple

    @property
    def is_4cell(self) -> bool:
        return len(self.left_chain) == 3 and len(self.right_chain) == 3

    @property
    def elements(self) -> frozenset:
        return frozenset(self.left_chain) | frozenset(self.right_chain)

    @property
    def left_atom(self) -> int:
        return self.left_chain[1]

    @property
    def right_atom(self) -> int:
        return self.right_chain[1]


@dataclass(frozen=True)
class UpperAdjacentPair:
    A: Cell  # left cell
    B: Cell  # right cell

    @property
    def top(self) -> int:
        return self.A.top

    @property
    def u(self) -> int:
        return self.A.right_atom

    @property
    def v(self) -> int:
        """Outer atom of the left cell."""
        return self.A.left_atom

    @property
    def w(self) -> int:
        """Outer atom of the right cell."""
        return self.B.right_atom

    def key(self):
        return (self.top, self.u)


def enumerate_cells(d: LatticeDiagram) -> list[Cell]:
    """Interior faces of the embedding, sorted by (bottom, left atom)."""
    cells = []
    for cyc in d.faces[1:]:
        k = next(i for i, v in enumerate(cyc) if all(d.leq(w, v) for w in cyc))
        left = tuple(cyc[: k + 1])
        right = (cyc[0],) + tuple(reversed(cyc[k:]))
        cells.append(Cell(cyc[0], cyc[k], left, right))
    cells.sort(key=lambda c: (c.bottom, c.left_chain[1]))
    return cells


def is_4cell_lattice(d: LatticeDiagram) -> bool:
    return all(c.is_4cell for c in enumerate_cells(d))


def cell_criterion_semimodular(d: LatticeDiagram) -> bool:
    """Cells with a common bottom have a common top."""
    cells = enumerate_cells(d)
    if not all(c.is_4cell for c in cells):
        raise LatticeError("not a 4-cell lattice")
    top_of = {}
    for c in cells:
        if top_of.setdefault(c.bottom, c.top) != c.top:
            return False
    return True


def upper_adjacent_pairs(d: LatticeDiagram) -> list[UpperAdjacentPair]:
    """4-cells A (left) and B sharing their top and one atom u, and nothing else."""
    cells = [c for c in enumerate_cells(d) if c.is_4cell]
    by_right = {(c.top, c.right_atom): c for c in cells}
    pairs = []
    for b in cells:
        a = by_right.get((b.top, b.left_atom))
        if a is not None and a.bottom != b.bottom:
            pairs.append(UpperAdjacentPair(a, b))
    pairs.sort(key=UpperAdjacentPair.key)
    return pairs


def maximal_upper_adjacent_pairs(d: LatticeDiagram) -> list[UpperAdjacentPair]:
    pairs = upper_adjacent_pairs(d)
    tops = {p.top for p in pairs}
    return [p for p in pairs if not any(t != p.top and d.leq(p.top, t) for t in tops)]


def count_pairs(d: LatticeDiagram) -> int:
    return len(upper_adjacent_pairs(d))
