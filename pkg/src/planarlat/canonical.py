"""Canonical codes for lattices up to isomorphism.

Colour refinement on the cover graph (seeded by height and degrees) followed by
individualisation/backtracking; the code is the lexicographically least
order-matrix serialisation over all leaves. Twins (same upper and lower covers,
e.g. the atoms of M_n) are explored once per cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .diagram import LatticeDiagram


@dataclass(frozen=True, order=True)
class CanonicalCode:
    code: bytes
    embedded: bool = False

    def hex(self) -> str:
        return ("E" if self.embedded else "L") + self.code.hex()

    @classmethod
    def fromhex(cls, s: str) -> "CanonicalCode":
        return cls(bytes.fromhex(s[1:]), s[0] == "E")


def _rerank(keys):
    ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ranks[k] for k in keys]


def _refine(colors, up, down):
    count = len(set(colors))
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[u] for u in up[v])), tuple(sorted(colors[u] for u in down[v])))
            for v in range(len(colors))
        ]
        colors = _rerank(keys)
        new = len(set(colors))
        if new == count:
            return colors
        count = new


def _leaf_code(d, colors):
    order = sorted(range(d.n), key=lambda v: colors[v])
    leq = d.leq_matrix
    bits = bytearray(d.n.to_bytes(2, "big"))
    for a in order:
        row = 0
        for b in order:
            row = (row << 1) | int(leq[a, b])
        bits += row.to_bytes((d.n + 7) // 8, "big")
    return bytes(bits), order


def canonical_labeling(d: LatticeDiagram):
    """(code bytes, order) where ``order[i]`` is the element placed at position i."""
    up = [set(r) for r in d.up]
    down = [set(r) for r in d.down]
    upl = d.up
    downl = d.down
    above = d.leq_matrix.sum(axis=1)
    below = d.leq_matrix.sum(axis=0)
    seed = [(d.heights[v], int(below[v]), int(above[v]), len(upl[v]), len(downl[v])) for v in range(d.n)]
    colors = _refine(_rerank(seed), upl, downl)
    best = [None, None]

    def search(colors):
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            code, order = _leaf_code(d, colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        tried = []
        for v in target:
            if any(up[v] == up[t] and down[v] == down[t] for t in tried):
                continue
            tried.append(v)
            ind = [2 * c for c in colors]
            ind[v] -= 1
            search(_refine(_rerank(ind), upl, downl))

    search(colors)
    return best[0], best[1]


def _embedded_code(d):
    order = []
    seen = set()
    stack = [d.bottom]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(reversed(d.up[v]))
    pos = {v: i for i, v in enumerate(order)}
    out = bytearray(d.n.to_bytes(2, "big"))
    for v in order:
        out.append(len(d.up[v]))
        out += bytes(pos[w] for w in d.up[v])
    return bytes(out)


def canonical_form(d: LatticeDiagram, embedded: bool = False) -> CanonicalCode:
    """Isomorphism-invariant code; ``embedded=True`` also respects cover order."""
    if embedded:
        return CanonicalCode(_embedded_code(d), True)
    return CanonicalCode(canonical_labeling(d)[0], False)


def is_isomorphic(d1, d2) -> bool:
    return d1.n == d2.n and canonical_form(d1) == canonical_form(d2)


def find_isomorphism(d1, d2):
    """Bijection ``f`` (list) with x <= y in d1 iff f[x] <= f[y] in d2, or None."""
    c1, o1 = canonical_labeling(d1)
    c2, o2 = canonical_labeling(d2)
    if c1 != c2:
        return None
    f = [0] * d1.n
    for a, b in zip(o1, o2):
        f[a] = b
    return f


def brute_force_isomorphic(d1, d2) -> bool:
    """Reference check by trying every bijection; for small n only."""
    if d1.n != d2.n or d1.num_edges != d2.num_edges:
        return False
    l1, l2 = d1.leq_matrix, d2.leq_matrix
    n = d1.n
    for perm in permutations(range(n)):
        if all(l1[a, b] == l2[perm[a], perm[b]] for a in range(n) for b in range(n)):
            return True
    return False
