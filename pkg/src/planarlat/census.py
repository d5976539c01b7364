"""Desk-scale census of planar semimodular lattices.

Two independent routes to the same set of lattices:

* ``build_corpus`` follows the three-step construction: a grid with a left
  and a right corner removed, a cover-preserving join-homomorphic image, then
  eyes added to 4-cells;
* ``exhaustive_crosscheck`` enumerates every lattice on at most n elements,
  searches rotation systems for a planar embedding and tests semimodularity.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .canonical import CanonicalCode, canonical_form
from .cells import count_pairs, enumerate_cells, is_4cell_lattice
from .diagram import (
    LatticeDiagram,
    LatticeError,
    conjugate_rank,
    is_distributive,
    is_modular,
    is_semimodular,
    sublattice_diagram,
    validate,
)
from .expansion import full_expansion
from .grid import recognize_grid_minus_corners, replay_corners
from .homs import quotient_diagram
from .slimming import add_eye, is_slim, restore_eyes, slim

log = logging.getLogger(__name__)

MAX_CONSTRUCTIVE = 10
MAX_EXHAUSTIVE = 7


@dataclass
class ConstructionTrace:
    m: int
    n: int
    left_corner: list
    right_corner: list
    kept: list  # labels of the distributive lattice forming the closure system of the collapse
    eyes: list = field(default_factory=list)  # (bottom, left, right, top, position, new label)
    code: str = ""

    def replay(self) -> LatticeDiagram:
        d = replay_corners(self.m, self.n, self.left_corner, self.right_corner)
        d = collapse(d, [d.index(x) for x in self.kept])
        for bottom, left, right, top, pos, lab in self.eyes:
            ids = [d.index(x) for x in (bottom, left, right, top)]
            cell = next(
                c
                for c in enumerate_cells(d)
                if (c.bottom, c.left_atom, c.right_atom, c.top) == tuple(ids)
            )
            d = add_eye(d, cell, pos, lab)
        return d

    def to_dict(self):
        return {
            "grid": [self.m, self.n],
            "left_corner": self.left_corner,
            "right_corner": self.right_corner,
            "kept": self.kept,
            "eyes": [list(e) for e in self.eyes],
            "code": self.code,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["grid"][0],
            data["grid"][1],
            list(data["left_corner"]),
            list(data["right_corner"]),
            list(data["kept"]),
            [tuple(e) for e in data["eyes"]],
            data.get("code", ""),
        )


@dataclass
class CorpusEntry:
    diagram: LatticeDiagram
    code: CanonicalCode
    predicates: dict
    traces: list


def predicate_vector(d: LatticeDiagram) -> dict:
    rep = validate(d)
    out = {"planar": rep.ok}
    if not rep.ok:
        return out
    out.update(
        semimodular=is_semimodular(d),
        modular=is_modular(d),
        distributive=is_distributive(d),
        slim=is_slim(d),
        four_cell=is_4cell_lattice(d),
        pairs=count_pairs(d),
    )
    return out


# ----------------------------------------------------------- step 1: corners

def grid_shapes(max_length, max_size=None):
    """Every C_m x C_n minus a left and a right corner of length <= ``max_length``.

    A shape keeps, in column i, the points lo[i] <= j <= hi[i]; lo and hi are
    non-decreasing and consecutive columns overlap, so all covers are unit steps.
    Yields (m, n, left corner points, right corner points).
    """
    for m in range(1, max_length + 2):
        for n in range(1, max_length + 3 - m):

            def columns(i, prev_lo, prev_hi, size):
                if max_size is not None and size > max_size:
                    return
                if i == m:
                    if prev_hi == n - 1:
                        yield []
                    return
                for lo in range(prev_lo, (prev_hi if i else 0) + 1):
                    for hi in range(max(lo, prev_hi), n):
                        for rest in columns(i + 1, lo, hi, size + hi - lo + 1):
                            yield [(lo, hi)] + rest

            for cols in columns(0, 0, 0, 0):
                left = [(i, j) for i, (lo, _) in enumerate(cols) for j in range(lo)]
                right = [(i, j) for i, (_, hi) in enumerate(cols) for j in range(hi + 1, n)]
                yield m, n, left, right


def corner_traces(m, n, left, right):
    """Removal orders (grid labels) peeling each corner from its corner point."""
    lt = sorted(left, key=lambda p: ((m - 1 - p[0]) + p[1], p))
    rt = sorted(right, key=lambda p: (p[0] + (n - 1 - p[1]), p))
    return [f"{i},{j}" for i, j in lt], [f"{i},{j}" for i, j in rt]


def shape_diagram(m, n, left, right) -> LatticeDiagram:
    """The grid minus the given corner points, built directly from coordinates.

    Agrees with ``replay_corners`` on the corresponding traces (tested).
    """
    gone = set(left) | set(right)
    pts = [(i, j) for i in range(m) for j in range(n) if (i, j) not in gone]
    pos = {p: k for k, p in enumerate(pts)}
    up = [[pos[q] for q in ((i + 1, j), (i, j + 1)) if q in pos] for i, j in pts]
    return LatticeDiagram(up, labels=[f"{i},{j}" for i, j in pts])


def is_reduced_shape(m, n, left, right):
    """False when a second-coordinate join-irreducible is comparable to every
    first-coordinate one; moving it to the other chain gives the same lattice.

    Every planar distributive lattice keeps at least one reduced shape.
    """
    lo = [0] * m
    hi = [n - 1] * m
    for i, j in left:
        lo[i] = max(lo[i], j + 1)
    for i, j in right:
        hi[i] = min(hi[i], j - 1)
    a = [(i, lo[i]) for i in range(1, m)]
    for j in range(1, n):
        ib = next(i for i in range(m) if lo[i] < j <= hi[i] and (i == 0 or j > hi[i - 1]))
        if all((i <= ib and x <= j) or (ib <= i and j <= x) for i, x in a):
            return False
    return True


def planar_distributive_lattices(max_length, max_size=None):
    """{code: (diagram, m, n, left trace, right trace)}, one representative per lattice."""
    out = {}
    for m, n, left, right in grid_shapes(max_length, max_size):
        if not is_reduced_shape(m, n, left, right):
            continue
        d = shape_diagram(m, n, left, right)
        code = canonical_form(d)
        if code not in out:
            out[code] = (d, m, n) + corner_traces(m, n, left, right)
    return out


# ---------------------------------------------------------- step 2: collapse

def collapse(d: LatticeDiagram, kept) -> LatticeDiagram:
    """Image of ``d`` under the join-homomorphism x -> least kept element above x.

    ``kept`` must be meet-closed and contain the top; the image inherits the
    planar embedding of ``d``.
    """
    sub, _, _ = sublattice_diagram(d, kept)
    return sub


def closure_table(d, kept):
    kept = set(kept)
    rank = {v: sum(int(x) for x in d.leq_matrix[:, v]) for v in range(d.n)}
    return [min((k for k in kept if d.leq(x, k)), key=lambda k: rank[k]) for x in range(d.n)]


def cover_preserving_closures(d: LatticeDiagram, max_size, minimal=False):
    """Meet-closed subsets containing the top whose closure map preserves covers.

    These are exactly the kernels of cover-preserving join-homomorphisms out of
    ``d`` (each class keeps its largest element). Yields sorted element lists.

    With ``minimal=True`` a doubly irreducible element may not share a class
    with either neighbour: such a map factors through the smaller lattice with
    that element deleted, which the census enumerates anyway.
    """
    order = sorted(range(d.n), key=lambda v: (-d.heights[v], v))
    meet = d.meet_table
    leq = d.leq_matrix
    up = d.up
    n = d.n
    top = d.top
    closure = [-1] * n
    dirr = [minimal and len(up[v]) == 1 and len(d.down[v]) == 1 for v in range(n)]

    def covers_in(members, a, b):
        # a < b both in members; is b a cover of a inside members?
        return not any(z != a and z != b and leq[a, z] and leq[z, b] for z in members)

    def rec(k, members, forced):
        if len(members) + len(forced) > max_size:
            return
        if k == n:
            yield sorted(members)
            return
        x = order[k]
        choices = (True,) if (x in forced or x == top or dirr[x]) else (False, True)
        for include in choices:
            if include:
                new_forced = set(forced)
                new_forced.discard(x)
                for y in members:
                    mxy = int(meet[x, y])
                    if mxy != x and mxy not in members:
                        new_forced.add(mxy)
                new_members = members | {x}
                closure[x] = x
            else:
                new_forced = forced
                new_members = members
                above = [y for y in members if leq[x, y]]
                c = above[0]
                for y in above[1:]:
                    c = int(meet[c, y])
                closure[x] = c
            ok = True
            cx = closure[x]
            for y in up[x]:
                cy = closure[y]
                if dirr[y] and cx == y:
                    ok = False
                    break
                if cy != cx and not covers_in(new_members, cx, cy):
                    ok = False
                    break
            if ok:
                yield from rec(k + 1, new_members, new_forced)
            closure[x] = -1

    yield from rec(0, frozenset(), set())


# -------------------------------------------------------------- step 3: eyes

def eye_extensions(d: LatticeDiagram, max_size):
    """All lattices reachable from ``d`` by inserting eyes, up to ``max_size`` elements.

    Yields (diagram, eye list) pairs, one per distinct lattice.
    """
    seen = {canonical_form(d)}
    frontier = [(d, [])]
    while frontier:
        nxt = []
        for cur, eyes in frontier:
            if cur.n >= max_size:
                continue
            for cell in enumerate_cells(cur):
                if not cell.is_4cell:
                    continue
                new = add_eye(cur, cell)
                code = canonical_form(new)
                if code in seen:
                    continue
                seen.add(code)
                rec = (
                    cur.label(cell.bottom),
                    cur.label(cell.left_atom),
                    cur.label(cell.right_atom),
                    cur.label(cell.top),
                    None,
                    new.label(new.n - 1),
                )
                nxt.append((new, eyes + [rec]))
                yield new, eyes + [rec]
        frontier = nxt


def build_corpus(max_elements=MAX_CONSTRUCTIVE, slack=None, bound=MAX_CONSTRUCTIVE):
    """Every planar semimodular lattice produced by the three-step construction.

    Sources are the planar distributive lattices with at most ``max_elements``
    elements and those of length at most ``max_elements - 2`` with at most
    ``max_elements + slack`` elements (see ``default_slack``). They are
    collapsed by cover-preserving join-homomorphisms onto at most
    ``max_elements`` elements, then eyes are added. Returns entries sorted by
    (size, code).
    """
    if max_elements > bound:
        raise LatticeError(f"bound exceeded: max_elements={max_elements} > {bound}")
    if slack is None:
        slack = default_slack(max_elements)
    corpus = {}
    distributive = distributive_sources(max_elements, slack)
    log.info("%d planar distributive sources", len(distributive))
    images = {}
    for dd, m, n, lt, rt in distributive.values():
        leq = dd.leq_matrix
        for kept in cover_preserving_closures(dd, max_elements, minimal=True):
            code = canonical_form(LatticeDiagram.from_leq(leq[np.ix_(kept, kept)]))
            if code in images:
                continue
            trace = ConstructionTrace(m, n, lt, rt, [dd.label(v) for v in kept])
            images[code] = (collapse(dd, kept), trace)
    log.info("%d distinct cover-preserving images", len(images))
    for code, (img, trace) in images.items():
        _add(corpus, img, code, trace)
    for img, trace in list(images.values()):
        for ext, eyes in eye_extensions(img, max_elements):
            t = ConstructionTrace(trace.m, trace.n, trace.left_corner, trace.right_corner, trace.kept, eyes)
            _add(corpus, ext, canonical_form(ext), t)
    return sorted(corpus.values(), key=lambda e: (e.diagram.n, e.code))


def distributive_sources(max_elements=MAX_CONSTRUCTIVE, slack=None):
    """Planar distributive lattices that ``build_corpus`` collapses, keyed by code."""
    if slack is None:
        slack = default_slack(max_elements)
    out = planar_distributive_lattices(max(max_elements - 2, 0), max_elements + slack)
    out.update(planar_distributive_lattices(max_elements - 1, max_elements))
    return out


def default_slack(max_elements):
    """Sources may have up to floor(N^2 / 4) elements for images of size N.

    A slim semimodular lattice of length h with p upper-adjacent pairs has a
    full expansion of length h + p, and h + p <= N - 2 when p > 0. A grid
    minus corners of length H has at most floor((H + 2)^2 / 4) elements.
    """
    return max(max_elements * max_elements // 4 - max_elements, 0)


def _add(corpus, d, code, trace):
    trace.code = code.hex()
    entry = corpus.get(code)
    if entry is None:
        corpus[code] = CorpusEntry(d, code, predicate_vector(d), [trace])
    elif len(entry.traces) < 3:
        entry.traces.append(trace)


# ------------------------------------------------------------ verification

@dataclass
class Report:
    ok: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, lemma, message):
        self.ok = False
        self.failures.append((lemma, message))


def verify_roundtrip(entry: CorpusEntry, choice: int = 0) -> Report:
    """slim -> full expansion -> grid recognition, then replay forward to the entry's code."""
    rep = Report(True)
    d = entry.diagram
    try:
        if not is_semimodular(d):
            rep.fail("precondition", "entry is not semimodular")
            return rep
        slim_d, eyes = slim(d)
        if is_semimodular(slim_d) != is_semimodular(d):
            rep.fail("slimming preserves semimodularity", "semimodularity changed")
        fe = full_expansion(slim_d, choice)
        dist = fe.distributive
        dec = recognize_grid_minus_corners(dist)
        replayed = dec.replay()
        if canonical_form(replayed) != canonical_form(dist):
            rep.fail("planar distributive = grid minus corners", "corner replay differs")
        # forward: quotient of the distributive lattice by the kernel of phi
        classes = fe.phi.kernel_classes()
        tops = quotient_diagram(dist, classes)[1]
        image = collapse(dist, tops)
        if canonical_form(image) != canonical_form(slim_d):
            rep.fail("L = D phi", "quotient of D by ker phi is not the slimmed lattice")
        restored = restore_eyes(slim_d, eyes)
        if canonical_form(restored) != entry.code:
            rep.fail("eyes", "re-adding eyes does not reproduce the entry")
        rep.details.update(
            steps=len(fe.trace), grid=(dec.m, dec.n), distributive_size=dist.n, eyes=len(eyes)
        )
    except (LatticeError, AssertionError) as exc:
        rep.fail(type(exc).__name__, str(exc))
    return rep


# ---------------------------------------------------------- exhaustive route

def all_lattices(n):
    """Every lattice on exactly ``n`` elements, one per isomorphism class."""
    if n < 1:
        return []
    if n == 1:
        return [LatticeDiagram([[]])]
    k = n - 2
    inner_pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    seen = {}
    for bits in range(1 << len(inner_pairs)):
        rel = np.eye(k, dtype=bool)
        for b, (i, j) in enumerate(inner_pairs):
            if bits >> b & 1:
                rel[i, j] = True
        if not _transitive(rel):
            continue
        leq = np.zeros((n, n), dtype=np.uint8)
        leq[0, :] = 1
        leq[:, n - 1] = 1
        leq[1 : n - 1, 1 : n - 1] = rel
        join, meet = _accel.join_meet_tables(leq)
        if (join < 0).any() or (meet < 0).any():
            continue
        up = _covers_from_leq(leq)
        d = LatticeDiagram(up)
        code = canonical_form(d)
        if code not in seen:
            seen[code] = d
    return list(seen.values())


def _transitive(rel):
    r = rel.astype(np.uint8)
    return not ((r @ r > 0) & ~rel).any()


def _covers_from_leq(leq):
    n = leq.shape[0]
    up = []
    for x in range(n):
        above = [y for y in range(n) if y != x and leq[x, y]]
        up.append([y for y in above if not any(z != y and leq[z, y] for z in above)])
    return up


def planar_embedding(d: LatticeDiagram):
    """Search all orders of the upper-cover lists for a valid planar embedding."""
    rows = [list(r) for r in d.up]
    choices = [list(itertools.permutations(r)) for r in rows]
    e, v = d.num_edges, d.n
    for combo in itertools.product(*choices):
        cand = LatticeDiagram(combo)
        rot = [cand.down[x] + tuple(reversed(combo[x])) for x in range(v)]
        if v > 1 and _accel.count_faces(rot) != e - v + 2:
            continue
        if validate(cand).ok:
            return cand
    return None


def exhaustive_crosscheck(n=MAX_EXHAUSTIVE, corpus=None) -> Report:
    """Compare planar semimodular lattices on <= n elements with the corpus."""
    if n > MAX_EXHAUSTIVE:
        raise LatticeError(f"n too large: {n} > {MAX_EXHAUSTIVE}")
    found = {}
    total = 0
    for size in range(1, n + 1):
        for d in all_lattices(size):
            total += 1
            if not is_semimodular(d):
                continue
            emb = planar_embedding(d)
            if emb is not None:
                found[canonical_form(d)] = emb
    if corpus is None:
        corpus = build_corpus(n)
    built = {e.code for e in corpus if e.diagram.n <= n}
    rep = Report(True)
    rep.details.update(lattices=total, exhaustive=len(found), constructive=len(built))
    for code in sorted(set(found) - built):
        rep.fail("missing from corpus", code.hex())
    for code in sorted(built - set(found)):
        rep.fail("not found exhaustively", code.hex())
    rep.details["codes"] = sorted(found)
    return rep
