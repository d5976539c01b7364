"""Finite lattices with a fixed planar embedding.

A diagram stores, for each element, its upper covers ordered left to right and
its lower covers ordered left to right. Read as a rotation system (around each
vertex counterclockwise: lower covers left to right, then upper covers right to
left) this is the planar embedding; every geometric notion used elsewhere
(left-of, faces, cells, boundary chains) is computed from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, cmp_to_key
from itertools import combinations

import numpy as np

from . import _accel


class LatticeError(ValueError):
    """Invalid input or an operation applied outside its domain."""


class ComparableError(LatticeError):
    pass


class LemmaViolation(AssertionError):
    """A structural statement the construction relies on failed on actual input."""


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule, *elements):
        self.violations.append((rule, tuple(elements)))

    def rules(self):
        return [r for r, _ in self.violations]

    def __bool__(self):
        return self.ok


class LatticeDiagram:
    """Immutable planar lattice diagram on elements ``0..n-1``.

    ``down`` may be omitted; it is then derived from ``up`` and the
    left-to-right order that ``up`` induces.
    """

    def __init__(self, up, down=None, labels=None):
        self.up = tuple(tuple(int(v) for v in row) for row in up)
        self.n = len(self.up)
        self._down = None if down is None else tuple(tuple(int(v) for v in row) for row in down)
        self.labels = None if labels is None else tuple(labels)

    @classmethod
    def from_leq(cls, leq, labels=None):
        """Unembedded diagram of the order given by a 0/1 matrix (cover lists in id order)."""
        leq = np.ascontiguousarray(leq, dtype=np.uint8)
        strict = leq.astype(bool)
        np.fill_diagonal(strict, False)
        cover = strict & ~(strict @ strict)
        up = [np.flatnonzero(row).tolist() for row in cover]
        down = [np.flatnonzero(col).tolist() for col in cover.T]
        d = cls(up, down, labels)
        d.__dict__["leq_matrix"] = leq
        return d

    # ------------------------------------------------------------------ basics

    def __repr__(self):
        return f"LatticeDiagram(n={self.n}, up={list(map(list, self.up))})"

    def __eq__(self, other):
        return isinstance(other, LatticeDiagram) and self.up == other.up and self.down == other.down

    def __hash__(self):
        return hash(self.up)

    def __len__(self):
        return self.n

    def label(self, x) -> str:
        if self.labels and self.labels[x] is not None:
            return str(self.labels[x])
        return str(x)

    def index(self, label):
        """Element id carrying ``label``."""
        for i in range(self.n):
            if self.label(i) == str(label):
                return i
        raise KeyError(label)

    @cached_property
    def down(self):
        if self._down is not None:
            return self._down
        lower = [[] for _ in range(self.n)]
        for x, row in enumerate(self.up):
            for y in row:
                if 0 <= y < self.n:
                    lower[y].append(x)
        if self.n and self._structure_ok:
            key = cmp_to_key(lambda a, b: -1 if left_of(self, a, b) else 1)
            try:
                return tuple(tuple(sorted(row, key=key)) for row in lower)
            except ComparableError:
                pass
        return tuple(tuple(sorted(row)) for row in lower)

    @cached_property
    def _structure_ok(self):
        # enough structure to compute meets: ids in range, acyclic, lattice
        if any(not 0 <= y < self.n for row in self.up for y in row):
            return False
        leq = self.leq_matrix
        if leq is None:
            return False
        join, meet = self._tables
        return bool((join >= 0).all() and (meet >= 0).all())

    @cached_property
    def leq_matrix(self):
        return _accel.leq_matrix(self.up)

    @cached_property
    def _tables(self):
        return _accel.join_meet_tables(self.leq_matrix)

    @property
    def join_table(self):
        return self._tables[0]

    @property
    def meet_table(self):
        return self._tables[1]

    @cached_property
    def bottom(self) -> int:
        return next(v for v in range(self.n) if self.leq_matrix[v].all())

    @cached_property
    def top(self) -> int:
        return next(v for v in range(self.n) if self.leq_matrix[:, v].all())

    @cached_property
    def covers(self):
        """Set of cover pairs (x, y) with x < y."""
        return frozenset((x, y) for x, row in enumerate(self.up) for y in row)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.up)

    @cached_property
    def heights(self):
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for v in self.linear_extension:
            for w in self.up[v]:
                h[w] = max(h[w], h[v] + 1)
        return tuple(h)

    @cached_property
    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda v: int(self.leq_matrix[:, v].sum())))

    def leq(self, x, y) -> bool:
        return bool(self.leq_matrix[x, y])

    def lt(self, x, y) -> bool:
        return x != y and bool(self.leq_matrix[x, y])

    def comparable(self, x, y) -> bool:
        return bool(self.leq_matrix[x, y] or self.leq_matrix[y, x])

    def join(self, x, y) -> int:
        return join(self, x, y)

    def meet(self, x, y) -> int:
        return meet(self, x, y)

    def interval(self, a, b):
        """Elements z with a <= z <= b, in id order."""
        return [z for z in range(self.n) if self.leq_matrix[a, z] and self.leq_matrix[z, b]]

    @cached_property
    def rotation(self):
        """Counterclockwise neighbour order around each vertex."""
        return tuple(self.down[v] + tuple(reversed(self.up[v])) for v in range(self.n))

    @cached_property
    def faces(self):
        """All faces of the rotation system as vertex cycles.

        Interior faces start at their bottom and run up the left chain first;
        the outer face is listed first and runs up the right boundary.
        """
        return _trace_faces(self)

    def relabel(self, perm):
        """Diagram with element ``x`` renamed ``perm[x]``; embedding unchanged."""
        inv = [0] * self.n
        for x, p in enumerate(perm):
            inv[p] = x
        up = [[perm[y] for y in self.up[inv[p]]] for p in range(self.n)]
        down = [[perm[y] for y in self.down[inv[p]]] for p in range(self.n)]
        labels = None if self.labels is None else [self.labels[inv[p]] for p in range(self.n)]
        return LatticeDiagram(up, down, labels)

    def mirror(self):
        """Left-right reflection of the embedding."""
        return LatticeDiagram(
            [list(reversed(r)) for r in self.up], [list(reversed(r)) for r in self.down], self.labels
        )


def _trace_faces(d):
    rot = d.rotation
    pos = {}
    for v, row in enumerate(rot):
        for i, u in enumerate(row):
            pos[(v, u)] = i
    seen = set()
    faces = []
    outer_dart = (d.bottom, d.up[d.bottom][-1]) if d.n > 1 else None
    darts = [outer_dart] if outer_dart else []
    darts += [(v, u) for v in range(d.n) for u in rot[v]]
    for dart in darts:
        if dart in seen:
            continue
        cycle = []
        while dart not in seen:
            seen.add(dart)
            a, b = dart
            cycle.append(a)
            row = rot[b]
            dart = (b, row[(pos[(b, a)] + 1) % len(row)])
        faces.append(cycle)
    if d.n == 1:
        faces.append([0])
    out = faces[:1]
    for cyc in faces[1:]:
        # rotate so that the face starts at its lowest vertex
        lows = [i for i, v in enumerate(cyc) if all(d.leq(v, w) for w in cyc)]
        lo = lows[0] if lows else min(range(len(cyc)), key=lambda i: d.heights[cyc[i]])
        out.append(cyc[lo:] + cyc[:lo])
    return out


# --------------------------------------------------------------------- validate

def validate(d: LatticeDiagram) -> ValidationReport:
    """Check every diagram invariant; failures are collected, never raised."""
    rep = ValidationReport()
    n = d.n
    if n == 0:
        rep.add("empty")
        return rep
    for x, row in enumerate(d.up):
        for y in row:
            if not 0 <= y < n:
                rep.add("index-range", x, y)
                return rep
            if y == x:
                rep.add("self-cover", x)
                return rep
        if len(set(row)) != len(row):
            rep.add("duplicate-cover", x)
            return rep
    if d._down is not None:
        if len(d._down) != n:
            rep.add("index-range", n, len(d._down))
            return rep
        for y, row in enumerate(d._down):
            for x in row:
                if not 0 <= x < n:
                    rep.add("index-range", y, x)
                    return rep
        for x in range(n):
            for y in d.up[x]:
                if x not in d._down[y]:
                    rep.add("cover-consistency", x, y)
                    return rep
            for y in d._down[x]:
                if x not in d.up[y]:
                    rep.add("cover-consistency", y, x)
                    return rep
    leq = d.leq_matrix
    if leq is None:
        rep.add("cycle")
        return rep
    minima = [v for v in range(n) if leq[:, v].sum() == 1]
    maxima = [v for v in range(n) if leq[v].sum() == 1]
    if len(minima) != 1:
        rep.add("no unique minimum", *minima)
    if len(maxima) != 1:
        rep.add("no unique maximum", *maxima)
    for x, row in enumerate(d.up):
        for y in row:
            for z in row:
                if z != y and leq[z, y]:
                    rep.add("non-genuine-cover", x, y)
                    break
            else:
                continue
            break
    if not rep.ok:
        return rep
    join, meet = d._tables
    bad = np.argwhere((join < 0) | (meet < 0))
    if len(bad):
        rep.add("lattice", int(bad[0][0]), int(bad[0][1]))
        return rep
    _check_embedding(d, rep)
    return rep


def _check_embedding(d, rep):
    n = d.n
    if n == 1:
        return
    for y in range(n):
        row = d.down[y]
        for a, b in zip(row, row[1:]):
            if not left_of(d, a, b):
                rep.add("down-order", y, a, b)
                return
    e = d.num_edges
    faces = _accel.count_faces(d.rotation)
    if faces != e - n + 2:
        rep.add("face count != E-V+2", faces, e - n + 2)
        return
    ups = [set(r) for r in d.up]
    for cyc in d.faces:
        k = len(cyc)
        sources = sinks = 0
        for i, v in enumerate(cyc):
            p, q = cyc[i - 1], cyc[(i + 1) % k]
            if p in ups[v] and q in ups[v]:
                sources += 1
            elif p not in ups[v] and q not in ups[v]:
                sinks += 1
        if sources != 1 or sinks != 1:
            rep.add("face-shape", *cyc)
            return
    left, right = boundary_chains(d)
    if set(d.faces[0]) != set(left) | set(right):
        rep.add("outer-face", *d.faces[0])


def require_valid(d):
    rep = validate(d)
    if not rep.ok:
        rule, elems = rep.violations[0]
        raise LatticeError(f"invalid diagram: {rule} {list(elems)}")
    return d


# ----------------------------------------------------------------- operations

def _check_ids(d, *xs):
    for x in xs:
        if not 0 <= x < d.n:
            raise LatticeError(f"element id {x} out of range 0..{d.n - 1}")


def join(d, x, y) -> int:
    _check_ids(d, x, y)
    return int(d.join_table[x, y])


def meet(d, x, y) -> int:
    _check_ids(d, x, y)
    return int(d.meet_table[x, y])


def join_all(d, xs):
    out = d.bottom
    for x in xs:
        out = int(d.join_table[out, x])
    return out


def meet_all(d, xs):
    out = d.top
    for x in xs:
        out = int(d.meet_table[out, x])
    return out


def is_semimodular(d) -> bool:
    return bool(_accel.semimodular(d.up, d.join_table))


def _pentagon(d):
    n, j, m, leq = d.n, d.join_table, d.meet_table, d.leq_matrix
    for a in range(n):
        for c in range(n):
            if a == c or not leq[a, c]:
                continue
            for b in range(n):
                if j[a, b] == j[c, b] and m[a, b] == m[c, b]:
                    return a, b, c
    return None


def _diamond(d):
    n, j, m, leq = d.n, d.join_table, d.meet_table, d.leq_matrix
    for a, b in combinations(range(n), 2):
        if leq[a, b] or leq[b, a]:
            continue
        top, bot = j[a, b], m[a, b]
        for c in range(b + 1, n):
            if leq[a, c] or leq[c, a] or leq[b, c] or leq[c, b]:
                continue
            if j[a, c] == top == j[b, c] and m[a, c] == bot == m[b, c]:
                return a, b, c
    return None


def is_modular(d, method="sublattice") -> bool:
    """No N5 sublattice; ``method="identity"`` checks the modular law instead."""
    if method == "identity":
        n, j, m, leq = d.n, d.join_table, d.meet_table, d.leq_matrix
        for x in range(n):
            for z in range(n):
                if not leq[x, z]:
                    continue
                for y in range(n):
                    if j[x, m[y, z]] != m[j[x, y], z]:
                        return False
        return True
    return _pentagon(d) is None


def is_distributive(d, method="sublattice") -> bool:
    """No N5 and no M3 sublattice; ``method="identity"`` uses x^(yvz) = (x^y)v(x^z)."""
    if method == "identity":
        n, j, m = d.n, d.join_table, d.meet_table
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
                        return False
        return True
    return _pentagon(d) is None and _diamond(d) is None


def left_of(d, x, y) -> bool:
    """Whether ``x`` lies left of the incomparable element ``y``.

    The leftmost upward paths from ``x ^ y`` towards ``x`` and ``y`` leave the
    meet along different covers; their order in the meet's up-list decides.
    """
    _check_ids(d, x, y)
    leq = d.leq_matrix
    if leq[x, y] or leq[y, x]:
        raise ComparableError(f"{d.label(x)} and {d.label(y)} are comparable")
    z = int(d.meet_table[x, y])
    row = d.up[z]
    ix = next(i for i, c in enumerate(row) if leq[c, x])
    iy = next(i for i, c in enumerate(row) if leq[c, y])
    return ix < iy


def boundary_chains(d):
    """(left chain, right chain), each listed bottom to top."""
    chains = []
    for pick in (0, -1):
        v = d.bottom
        chain = [v]
        while d.up[v]:
            v = d.up[v][pick]
            chain.append(v)
        chains.append(chain)
    return tuple(chains)


def covers_above(d, x):
    _check_ids(d, x)
    return list(d.up[x])


def covers_below(d, x):
    _check_ids(d, x)
    return list(d.down[x])


def _star_covers(d, x):
    _check_ids(d, x)
    row = d.up[x]
    if not row:
        raise LatticeError(f"{d.label(x)} is top")
    if len(row) > 2:
        raise LatticeError(f"not slim-semimodular context: {d.label(x)} has {len(row)} upper covers")
    return row


def star_left(d, x) -> int:
    return _star_covers(d, x)[0]


def star_right(d, x) -> int:
    return _star_covers(d, x)[-1]


def is_doubly_irreducible(d, x) -> bool:
    return len(d.up[x]) == 1 and len(d.down[x]) == 1


def from_order(n, leq, key=None, labels=None):
    """Diagram of a lattice given by an order predicate and a left-to-right key.

    ``key(x)`` must be a position in a linear extension of the conjugate order
    (x before y whenever x < y or x is left of y); covers are sorted by it.
    """
    up = [[y for y in range(n) if y != x and leq(x, y)] for x in range(n)]
    cov = []
    for x in range(n):
        above = up[x]
        cov.append([y for y in above if not any(z != y and leq(z, y) for z in above)])
    if key is None:
        key = lambda v: v  # noqa: E731
    up = [sorted(row, key=key) for row in cov]
    down = [[] for _ in range(n)]
    for x in range(n):
        for y in up[x]:
            down[y].append(x)
    down = [sorted(row, key=key) for row in down]
    return LatticeDiagram(up, down, labels)


def sublattice_diagram(d, elements, labels=None):
    """Induced diagram on a subset that is a lattice in the inherited order.

    The embedding is inherited through the conjugate order of ``d``.
    """
    elements = list(elements)
    rank = conjugate_rank(d)
    order = sorted(elements, key=lambda v: rank[v])
    pos = {v: i for i, v in enumerate(order)}
    sub = from_order(
        len(order),
        lambda a, b: d.leq(order[a], order[b]),
        key=lambda a: a,
        labels=labels if labels is not None else [d.label(v) for v in order],
    )
    return sub, order, pos


def conjugate_rank(d):
    """Position of each element in the linear extension of (< or left-of)."""

    def cmp(a, b):
        if a == b:
            return 0
        if d.leq(a, b):
            return -1
        if d.leq(b, a):
            return 1
        return -1 if left_of(d, a, b) else 1

    order = sorted(range(d.n), key=cmp_to_key(cmp))
    rank = [0] * d.n
    for i, v in enumerate(order):
        rank[v] = i
    return rank
