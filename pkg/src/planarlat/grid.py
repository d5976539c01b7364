"""Chains, products of two chains, corners, and recognition of planar
distributive lattices as a grid with a left and a right corner removed."""

from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import find_isomorphism
from .diagram import (
    LatticeDiagram,
    LatticeError,
    LemmaViolation,
    boundary_chains,
    is_distributive,
    is_doubly_irreducible,
    require_valid,
    sublattice_diagram,
)


def chain(k: int) -> LatticeDiagram:
    if k < 1:
        raise LatticeError("chain length must be >= 1")
    return LatticeDiagram([[i + 1] for i in range(k - 1)] + [[]], labels=[str(i) for i in range(k)])


def grid_id(i, j, n):
    return i * n + j


def product_of_chains(m: int, n: int) -> LatticeDiagram:
    """C_m x C_n; <i, j> has up-list [<i+1, j>, <i, j+1>] (first coordinate drawn left)."""
    if m < 1 or n < 1:
        raise LatticeError("chain lengths must be >= 1")
    up = []
    labels = []
    for i in range(m):
        for j in range(n):
            row = []
            if i + 1 < m:
                row.append(grid_id(i + 1, j, n))
            if j + 1 < n:
                row.append(grid_id(i, j + 1, n))
            up.append(row)
            labels.append(f"{i},{j}")
    return LatticeDiagram(up, labels=labels)


def delete_elements(d: LatticeDiagram, removed) -> tuple[LatticeDiagram, list[int]]:
    """Induced diagram on the remaining elements (which must form a lattice).

    Covers are recomputed from the induced order and the embedding is
    inherited. Returns the new diagram and ``old_ids`` (new id -> old id).
    """
    removed = set(removed)
    keep = [v for v in range(d.n) if v not in removed]
    sub, order, _ = sublattice_diagram(d, keep)
    return sub, order


def _pick_corner_element(d, side):
    left, right = boundary_chains(d)
    chain_ = left if side == "left" else right
    candidates = [v for v in chain_[1:-1] if is_doubly_irreducible(d, v)]
    if not candidates:
        return None
    return max(candidates, key=lambda v: d.heights[v])


def remove_corner(d: LatticeDiagram, side: str, steps: int) -> LatticeDiagram:
    """Delete ``steps`` doubly irreducible elements from one boundary chain.

    Each step removes the highest such element of the current left (or right)
    boundary chain, never the bottom or the top.
    """
    if side not in ("left", "right"):
        raise LatticeError(f"side must be 'left' or 'right', not {side!r}")
    for _ in range(steps):
        v = _pick_corner_element(d, side)
        if v is None:
            raise LatticeError("no doubly irreducible boundary element")
        d, _ = delete_elements(d, [v])
    return d


def corner_candidates(d, side):
    """All doubly irreducible elements on the given boundary chain except 0 and 1."""
    left, right = boundary_chains(d)
    chain_ = left if side == "left" else right
    return [v for v in chain_[1:-1] if is_doubly_irreducible(d, v)]


@dataclass
class GridDecomposition:
    m: int
    n: int
    left_trace: list = field(default_factory=list)  # grid labels "i,j", in removal order
    right_trace: list = field(default_factory=list)
    witness: list = field(default_factory=list)  # input id -> replayed id

    def replay(self) -> LatticeDiagram:
        return replay_corners(self.m, self.n, self.left_trace, self.right_trace)


def replay_corners(m, n, left_trace, right_trace):
    """Rebuild a grid-minus-corners, checking every step's legality."""
    d = product_of_chains(m, n)
    for side, trace in (("left", left_trace), ("right", right_trace)):
        for lab in trace:
            v = d.index(lab)
            if v not in corner_candidates(d, side):
                raise LatticeError(f"{lab} is not a doubly irreducible {side} boundary element")
            d, _ = delete_elements(d, [v])
    return d


def _edge_classes(d):
    """Split covers into first-coordinate (left-going) and second-coordinate steps.

    Opposite sides of every 4-cell land in the same class; covers lying in no
    cell are free and are treated as left-going.
    """
    cls = {}
    for x in range(d.n):
        for y in d.up[x]:
            if len(d.up[x]) == 2:
                cls[(x, y)] = 0 if y == d.up[x][0] else 1
            elif len(d.down[y]) == 2:
                cls[(x, y)] = 1 if x == d.down[y][0] else 0
            else:
                cls[(x, y)] = 0
    return cls


def grid_coordinates(d):
    """Coordinates of each element in C_m x C_n, or None if inconsistent."""
    if any(len(r) > 2 for r in d.up) or any(len(r) > 2 for r in d.down):
        return None
    cls = _edge_classes(d)
    coords = [None] * d.n
    coords[d.bottom] = (0, 0)
    for x in d.linear_extension:
        for y in d.up[x]:
            i, j = coords[x]
            c = (i + 1, j) if cls[(x, y)] == 0 else (i, j + 1)
            if coords[y] is None:
                coords[y] = c
            elif coords[y] != c:
                return None
    if len(set(coords)) != d.n:
        return None
    return coords


def recognize_grid_minus_corners(d: LatticeDiagram) -> GridDecomposition:
    """Find C_m x C_n and corner traces whose replay is isomorphic to ``d``."""
    require_valid(d)
    if not is_distributive(d):
        raise LatticeError("not distributive")
    dec = _recognize_by_coordinates(d)
    if dec is not None:
        return dec
    h = d.heights[d.top]
    for m in range(1, h + 2):
        dec = _search_corners(d, m, h + 2 - m)
        if dec is not None:
            return dec
    raise LemmaViolation("no decomposition found for a planar distributive lattice")


def _recognize_by_coordinates(d):
    coords = grid_coordinates(d)
    if coords is None:
        return None
    m, n = coords[d.top][0] + 1, coords[d.top][1] + 1
    present = set(coords)
    left_pts, right_pts = [], []
    for i in range(m):
        col = [j for j in range(n) if (i, j) in present]
        if not col:
            return None
        lo, hi = min(col), max(col)
        for j in range(n):
            if (i, j) in present:
                continue
            if j < lo:
                left_pts.append((i, j))
            elif j > hi:
                right_pts.append((i, j))
            else:
                return None
    # peel each corner starting at its corner point <m-1, 0> / <0, n-1>
    left_trace = [f"{i},{j}" for i, j in sorted(left_pts, key=lambda p: ((m - 1 - p[0]) + p[1], p))]
    right_trace = [f"{i},{j}" for i, j in sorted(right_pts, key=lambda p: (p[0] + (n - 1 - p[1]), p))]
    try:
        rebuilt = replay_corners(m, n, left_trace, right_trace)
    except LatticeError:
        return None
    witness = find_isomorphism(d, rebuilt)
    if witness is None:
        return None
    return GridDecomposition(m, n, left_trace, right_trace, witness)


def _search_corners(d, m, n, limit=200000):
    from .canonical import canonical_form

    target = canonical_form(d)
    g = product_of_chains(m, n)
    excess = g.n - d.n
    if excess < 0:
        return None
    states = [(g, [], [])]
    seen = set()
    budget = limit
    while states:
        cur, lt, rt = states.pop()
        if cur.n == d.n:
            if canonical_form(cur) == target:
                return GridDecomposition(m, n, lt, rt, find_isomorphism(d, cur))
            continue
        key = (frozenset(lt), frozenset(rt))
        if key in seen:
            continue
        seen.add(key)
        budget -= 1
        if budget <= 0:
            return None
        for side in ("left", "right"):
            for v in corner_candidates(cur, side):
                nxt, _ = delete_elements(cur, [v])
                lab = cur.label(v)
                states.append((nxt, lt + [lab] if side == "left" else lt, rt + [lab] if side == "right" else rt))
    return None
