"""Join-homomorphisms between diagrams: predicates, cover lifting, enumeration."""

from __future__ import annotations

from functools import cached_property

from .diagram import LatticeDiagram, LatticeError, LemmaViolation, is_semimodular, join_all


class SearchTooLarge(LatticeError):
    pass


class LatticeMap:
    """A total function from ``source`` elements to ``target`` elements."""

    def __init__(self, source: LatticeDiagram, target: LatticeDiagram, table):
        self.source = source
        self.target = target
        self.table = tuple(int(v) for v in table)
        if len(self.table) != source.n or any(not 0 <= v < target.n for v in self.table):
            raise LatticeError("mismatched diagrams: table does not map source into target")

    def __call__(self, x):
        return self.table[x]

    def __repr__(self):
        return f"LatticeMap({self.source.n} -> {self.target.n}, {list(self.table)})"

    @cached_property
    def surjective(self) -> bool:
        return len(set(self.table)) == self.target.n

    @cached_property
    def join_preserving(self) -> bool:
        return is_join_homomorphism(self)

    @cached_property
    def cover_preserving(self) -> bool:
        return self.join_preserving and is_cover_preserving(self)

    def fiber(self, y):
        return [x for x, v in enumerate(self.table) if v == y]

    def kernel_classes(self):
        """Fibers of the image elements, each sorted, ordered by smallest member."""
        classes = {}
        for x, v in enumerate(self.table):
            classes.setdefault(v, []).append(x)
        return sorted(classes.values())

    def then(self, other: "LatticeMap") -> "LatticeMap":
        """``other`` after ``self``."""
        if other.source is not self.target and other.source.n != self.target.n:
            raise LatticeError("maps do not compose")
        return LatticeMap(self.source, other.target, [other.table[v] for v in self.table])


def identity_map(d: LatticeDiagram) -> LatticeMap:
    return LatticeMap(d, d, range(d.n))


def is_join_homomorphism(f: LatticeMap) -> bool:
    js, jt, t = f.source.join_table, f.target.join_table, f.table
    n = f.source.n
    return all(t[js[x, y]] == jt[t[x], t[y]] for x in range(n) for y in range(x + 1, n))


def is_cover_preserving(f: LatticeMap) -> bool:
    """Covers go to covers or collapse."""
    if not is_join_homomorphism(f):
        raise LatticeError("not a join-homomorphism")
    t = f.table
    tcov = f.target.covers
    return all(t[x] == t[y] or (t[x], t[y]) in tcov for x, y in f.source.covers)


def lift_cover(f: LatticeMap, x, y):
    """Source cover (a, b) over the target cover x < y.

    ``a`` is the largest element of the fiber over ``x``, ``b`` a minimal
    element of the fiber over ``y`` above ``a``.
    """
    if (x, y) not in f.target.covers:
        raise LatticeError("cover not in image")
    fx, fy = f.fiber(x), f.fiber(y)
    if not fx or not fy:
        raise LatticeError("cover not in image")
    src = f.source
    a = join_all(src, fx)
    if f.table[a] != x:
        raise LemmaViolation("fiber is not join-closed")
    above = [b for b in fy if src.leq(a, b)]
    if not above:
        raise LemmaViolation("no fiber element above the largest lower-fiber element")
    b = min((b for b in above if not any(c != b and src.leq(c, b) for c in above)), key=lambda v: (src.heights[v], v))
    if (a, b) not in src.covers:
        raise LemmaViolation(f"lifted pair ({a}, {b}) is not a cover")
    return a, b


def _join_pairs(d):
    """For each z, the pairs (x, y), x < y ids, both different from z, with x v y = z."""
    out = [[] for _ in range(d.n)]
    j = d.join_table
    for x in range(d.n):
        for y in range(x + 1, d.n):
            z = int(j[x, y])
            if z != x and z != y:
                out[z].append((x, y))
    return out


def enumerate_join_surjections(src, tgt, limit=None, cover_preserving=False, max_search=10**7):
    """All surjective join-homomorphisms ``src -> tgt`` in lexicographic table order.

    Join-irreducible elements get free images above the image of their lower
    cover; every other element's image is forced by the join of its lower
    covers. ``cover_preserving=True`` prunes to cover-preserving maps.
    """
    if tgt.n > src.n:
        return []
    irreducible = [x for x in range(src.n) if len(src.down[x]) == 1]
    if tgt.n ** len(irreducible) > max_search and not cover_preserving:
        raise SearchTooLarge(f"search too large: {tgt.n}^{len(irreducible)} candidate assignments")
    order = sorted(range(src.n), key=lambda v: (src.heights[v], v))
    pairs = _join_pairs(src)
    jt = tgt.join_table
    leq_t = tgt.leq_matrix
    tup = [set(r) for r in tgt.up]
    table = [-1] * src.n
    hit = [0] * tgt.n
    results = []

    def assign(k, missing):
        if limit is not None and len(results) >= limit:
            return
        if missing > src.n - k:
            return
        if k == src.n:
            results.append(LatticeMap(src, tgt, table))
            return
        x = order[k]
        lower = src.down[x]
        if not lower:
            options = [tgt.bottom]
        elif len(lower) == 1:
            base = table[lower[0]]
            if cover_preserving:
                options = [base] + sorted(tup[base])
            else:
                options = [t for t in range(tgt.n) if leq_t[base, t]]
        else:
            v = table[lower[0]]
            for w in lower[1:]:
                v = int(jt[v, table[w]])
            options = [v]
            if cover_preserving and any(table[w] != v and v not in tup[table[w]] for w in lower):
                return
        for t in options:
            if any(int(jt[table[a], table[b]]) != t for a, b in pairs[x]):
                continue
            table[x] = t
            hit[t] += 1
            assign(k + 1, missing - (hit[t] == 1))
            hit[t] -= 1
            table[x] = -1

    assign(0, tgt.n)
    return results


def quotient_semimodularity_check(f: LatticeMap) -> bool:
    """Semimodularity of the image of a semimodular lattice under ``f``."""
    if not f.surjective:
        raise LatticeError("map is not surjective")
    if not f.cover_preserving:
        raise LatticeError("map is not a cover-preserving join-homomorphism")
    if not is_semimodular(f.source):
        raise LatticeError("source is not semimodular")
    return is_semimodular(f.target)


def quotient_diagram(src: LatticeDiagram, classes):
    """Order on the classes of a join-congruence, computed inside ``src`` only.

    Class P <= class Q iff max(P) v max(Q) = max(Q). Returns (leq function on
    class indices, class maxima).
    """
    tops = [join_all(src, c) for c in classes]
    j = src.join_table
    return (lambda p, q: int(j[tops[p], tops[q]]) == tops[q]), tops
