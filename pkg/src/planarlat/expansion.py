"""One-step expansion of a slim semimodular lattice along a maximal
upper-adjacent pair, and its iteration down to a planar distributive lattice.

For a maximal pair U with top c0 = d0, shared atom u and cell bottoms v, w:

* C_U climbs from c0 through left-hand 4-cells, D_U through right-hand ones;
* T = [c0, 1], B = [0, u], I = [v+, c+], J = [w+, d+] cover the lattice;
* the expansion is T x {1} u B x {0} u I x {alpha} u J x {beta} inside
  L x C2^2, and the first projection maps it back onto L.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

from . import cells as _cells
from .cells import UpperAdjacentPair
from .diagram import (
    LatticeDiagram,
    LatticeError,
    LemmaViolation,
    boundary_chains,
    from_order,
    is_distributive,
    is_modular,
    is_semimodular,
    left_of,
    star_left,
    star_right,
)
from .homs import LatticeMap, identity_map
from .slimming import is_slim

# tags of C2^2 = {0 < alpha, beta < 1}
ZERO, ALPHA, BETA, ONE = 0, 1, 2, 3
TAG_NAMES = {ZERO: "0", ALPHA: "a", BETA: "b", ONE: "1"}
# horizontal position of the tagged copies in the drawing of the expansion
_SIDE = {ALPHA: 0, ZERO: 1, ONE: 1, BETA: 2}


def tag_leq(g, h) -> bool:
    return g == h or g == ZERO or h == ONE


class NotMaximalError(LatticeError):
    pass


class AlreadyModularError(LatticeError):
    pass


@dataclass
class SideChain:
    chain: list  # c_0 < c_1 < ... < c_k
    witnesses: list  # x_i for i = 1..k (the other atom of the i-th side cell)
    cells: list  # the 4-cells C^U_i


@dataclass
class ExpansionContext:
    pair: UpperAdjacentPair
    left: SideChain
    right: SideChain
    v_plus: int
    w_plus: int
    T: frozenset
    B: frozenset
    I: frozenset
    J: frozenset
    i_bridges: list = field(default_factory=list)
    j_bridges: list = field(default_factory=list)

    @property
    def c_plus(self):
        return self.left.chain[-1]

    @property
    def d_plus(self):
        return self.right.chain[-1]


@dataclass
class ExpandedLattice:
    base: LatticeDiagram
    elements: list  # (a, tag) per element of base
    projection: LatticeMap
    context: ExpansionContext

    def block(self, x) -> str:
        return {ZERO: "B", ALPHA: "I", BETA: "J", ONE: "T"}[self.elements[x][1]]


def _find_cell(d, bottom, left, right, top):
    for c in _cells.enumerate_cells(d):
        if c.bottom == bottom and c.top == top and c.left_atom == left and c.right_atom == right and c.is_4cell:
            return c
    raise LemmaViolation(f"expected a 4-cell {bottom} < {left}, {right} < {top}")


def _climb(d, start, side):
    chain, witnesses, cells = [start], [], []
    while True:
        c = chain[-1]
        if c == d.top:
            break
        nxt = star_left(d, c) if side == "left" else star_right(d, c)
        below = d.down[nxt]
        k = below.index(c)
        if side == "left":
            if k == 0:
                break
            x = below[k - 1]
            cell = _find_cell(d, d.meet(x, c), x, c, nxt)
        else:
            if k == len(below) - 1:
                break
            x = below[k + 1]
            cell = _find_cell(d, d.meet(x, c), c, x, nxt)
        chain.append(nxt)
        witnesses.append(x)
        cells.append(cell)
    return SideChain(chain, witnesses, cells)


def build_side_chains(d: LatticeDiagram, pair: UpperAdjacentPair):
    """(C_U, D_U) with their witnessing 4-cells.

    C_U steps to the left upper cover while that cover also covers something
    left of the current element, i.e. until it reaches the left boundary.
    """
    if pair not in _cells.upper_adjacent_pairs(d):
        raise LatticeError("pair not in lattice")
    return _climb(d, pair.top, "left"), _climb(d, pair.top, "right")


def _boundary_min_not_below(d, chain_, ref):
    for x in chain_:
        if not d.leq(x, ref):
            return x
    raise LemmaViolation("boundary chain has no element outside the reference ideal")


def compute_anchors(d, pair, chains=None):
    """(v+, w+, c+, d+); v+ is the lowest left-boundary element not below the
    bottom of the left cell, w+ likewise on the right."""
    if any(d.lt(pair.top, p.top) for p in _cells.upper_adjacent_pairs(d)):
        raise NotMaximalError("pair not maximal")
    if chains is None:
        chains = build_side_chains(d, pair)
    left, right = boundary_chains(d)
    v_plus = _boundary_min_not_below(d, left, pair.A.bottom)
    w_plus = _boundary_min_not_below(d, right, pair.B.bottom)
    return v_plus, w_plus, chains[0].chain[-1], chains[1].chain[-1]


def decompose(d: LatticeDiagram, pair: UpperAdjacentPair) -> ExpansionContext:
    """Full context for a maximal pair, with every structural identity checked."""
    lchain, rchain = build_side_chains(d, pair)
    v_plus, w_plus, c_plus, d_plus = compute_anchors(d, pair, (lchain, rchain))
    top = d.top
    T = frozenset(d.interval(pair.top, top))
    B = frozenset(d.interval(d.bottom, pair.u))
    I = frozenset(d.interval(v_plus, c_plus)) if d.leq(v_plus, c_plus) else frozenset()
    J = frozenset(d.interval(w_plus, d_plus)) if d.leq(w_plus, d_plus) else frozenset()
    ib = sorted((x, y) for x, y in d.covers if x in B and y in I)
    jb = sorted((x, y) for x, y in d.covers if x in B and y in J)
    ctx = ExpansionContext(pair, lchain, rchain, v_plus, w_plus, T, B, I, J, ib, jb)
    check_context(d, ctx)
    return ctx


def check_context(d, ctx):
    """Raise LemmaViolation naming the first failed identity."""
    C, D = ctx.left.chain, ctx.right.chain
    if set(d.interval(C[0], C[-1])) != set(C):
        raise LemmaViolation("left chain C_U is not an interval")
    if set(d.interval(D[0], D[-1])) != set(D):
        raise LemmaViolation("right chain D_U is not an interval")
    for i in range(1, len(C)):
        if d.down[C[i]][-1] != C[i - 1]:
            raise LemmaViolation(f"c_{i - 1} is not the rightmost lower cover of c_{i}")
    for i in range(1, len(D)):
        if d.down[D[i]][0] != D[i - 1]:
            raise LemmaViolation(f"d_{i - 1} is not the leftmost lower cover of d_{i}")
    T, B, I, J = ctx.T, ctx.B, ctx.I, ctx.J
    if I & J != {C[0]}:
        raise LemmaViolation("I and J do not meet exactly in c0 = d0")
    if T | B | I | J != set(range(d.n)):
        raise LemmaViolation("T, B, I, J do not cover the lattice")
    if B & (I | J | T):
        raise LemmaViolation("B is not disjoint from I, J and T")
    if I & T != set(C) or J & T != set(D):
        raise LemmaViolation("I meets T outside C_U, or J meets T outside D_U")


def boundary_intuition_holds(d, ctx) -> bool:
    """c+ and d+ lie on the left and right boundary chains respectively."""
    left, right = boundary_chains(d)
    return ctx.c_plus in left and ctx.d_plus in right


def _expanded_elements(ctx):
    out = [(a, ONE) for a in sorted(ctx.T)]
    out += [(a, ZERO) for a in sorted(ctx.B)]
    out += [(a, ALPHA) for a in sorted(ctx.I)]
    out += [(a, BETA) for a in sorted(ctx.J)]
    return out


def _expanded_diagram(d, elements):
    def leq(p, q):
        (a, g), (b, h) = elements[p], elements[q]
        return d.leq(a, b) and tag_leq(g, h)

    def cmp(p, q):
        if p == q:
            return 0
        if leq(p, q):
            return -1
        if leq(q, p):
            return 1
        (a, g), (b, h) = elements[p], elements[q]
        if a != b and not d.comparable(a, b):
            return -1 if left_of(d, a, b) else 1
        return -1 if _SIDE[g] < _SIDE[h] else 1

    order = sorted(range(len(elements)), key=cmp_to_key(cmp))
    elements = [elements[p] for p in order]
    labels = [f"<{d.label(a)},{TAG_NAMES[g]}>" for a, g in elements]
    base = from_order(len(elements), lambda p, q: d.leq(elements[p][0], elements[q][0]) and tag_leq(elements[p][1], elements[q][1]), labels=labels)
    return base, elements


def expected_covers(d, ctx, elements):
    """Covers predicted for the expansion: product covers of L x C2^2 or bridges."""
    pos = {e: i for i, e in enumerate(elements)}
    bridges = {(x, ZERO, y, ALPHA) for x, y in ctx.i_bridges} | {(x, ZERO, y, BETA) for x, y in ctx.j_bridges}
    out = set()
    for p, (a, g) in enumerate(elements):
        for q, (b, h) in enumerate(elements):
            if p == q:
                continue
            product_cover = ((a, b) in d.covers and g == h) or (a == b and g != h and tag_leq(g, h) and not (g == ZERO and h == ONE))
            if product_cover or (a, g, b, h) in bridges:
                out.add((p, q))
    return out, pos


def one_step_expansion(d: LatticeDiagram, choice: int = 0, check: bool = True) -> ExpandedLattice:
    """Expand along the ``choice``-th maximal pair (ordered by top, then u)."""
    pairs = _cells.maximal_upper_adjacent_pairs(d)
    if not pairs:
        raise AlreadyModularError("already modular: no upper-adjacent pairs")
    pair = pairs[choice % len(pairs)]
    ctx = decompose(d, pair)
    elements = _expanded_elements(ctx)
    base, elements = _expanded_diagram(d, elements)
    proj = LatticeMap(base, d, [a for a, _ in elements])
    ex = ExpandedLattice(base, elements, proj, ctx)
    if check:
        check_expansion(d, ex)
    return ex


def check_expansion(d, ex):
    from .diagram import validate

    base = ex.base
    rep = validate(base)
    if not rep.ok:
        raise LemmaViolation(f"expansion is not a valid planar lattice: {rep.violations[0]}")
    if not is_semimodular(base):
        raise LemmaViolation("expansion is not semimodular")
    if not is_slim(base):
        raise LemmaViolation("expansion is not slim")
    f = ex.projection
    if not (f.surjective and f.join_preserving and f.cover_preserving):
        raise LemmaViolation("projection is not a cover-preserving join-surjection")
    before, after = _cells.count_pairs(d), _cells.count_pairs(base)
    if after != before - 1:
        raise LemmaViolation(f"pair count went from {before} to {after}, expected {before - 1}")


@dataclass
class FullExpansion:
    distributive: LatticeDiagram
    phi: LatticeMap
    trace: list


def full_expansion(d: LatticeDiagram, choice: int = 0, check: bool = True) -> FullExpansion:
    """Expand until no upper-adjacent pair is left; phi maps the result onto ``d``."""
    start = _cells.count_pairs(d)
    cur = d
    phi = identity_map(d)
    trace = []
    while _cells.count_pairs(cur):
        ex = one_step_expansion(cur, choice, check)
        trace.append(ex)
        phi = ex.projection.then(phi)
        cur = ex.base
        if len(trace) > start:
            raise LemmaViolation("more expansion steps than initial upper-adjacent pairs")
    if check:
        if not (is_slim(cur) and is_modular(cur) and is_distributive(cur)):
            raise LemmaViolation("final lattice is not slim, modular and distributive")
        if not (phi.surjective and phi.join_preserving and phi.cover_preserving):
            raise LemmaViolation("composed map is not a cover-preserving join-surjection")
    return FullExpansion(cur, phi, trace)
