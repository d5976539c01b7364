"""Small named lattices used throughout the tests and the CLI examples."""

from .diagram import LatticeDiagram


def _build(spec, names):
    ids = {name: i for i, name in enumerate(names)}
    up = [[ids[w] for w in spec.get(name, ())] for name in names]
    return LatticeDiagram(up, labels=list(names))


def s7() -> LatticeDiagram:
    """The 7-element slim semimodular lattice with one upper-adjacent pair."""
    return _build(
        {"0": ["a1", "a2"], "a1": ["b1", "m"], "a2": ["m", "b2"], "b1": ["1"], "m": ["1"], "b2": ["1"]},
        ["0", "a1", "a2", "m", "b1", "b2", "1"],
    )


def s7_plus() -> LatticeDiagram:
    """S7 with an eye in each of its three 4-cells."""
    return _build(
        {
            "0": ["a1", "e0", "a2"],
            "a1": ["b1", "e1", "m"],
            "a2": ["m", "e2", "b2"],
            "e0": ["m"],
            "b1": ["1"],
            "e1": ["1"],
            "m": ["1"],
            "e2": ["1"],
            "b2": ["1"],
        },
        ["0", "a1", "e0", "a2", "b1", "e1", "m", "e2", "b2", "1"],
    )


def n5() -> LatticeDiagram:
    return _build({"0": ["a", "c"], "a": ["1"], "c": ["d"], "d": ["1"]}, ["0", "a", "c", "d", "1"])


def m3() -> LatticeDiagram:
    return _build({"0": ["a", "b", "c"], "a": ["1"], "b": ["1"], "c": ["1"]}, ["0", "a", "b", "c", "1"])


def kite_pair() -> LatticeDiagram:
    """Two 4-cells with the same bottom and different tops (a 4-cell lattice, not semimodular)."""
    return _build(
        {"0": ["a", "b", "c"], "a": ["p"], "b": ["p", "q"], "c": ["q"], "p": ["1"], "q": ["1"]},
        ["0", "a", "b", "c", "p", "q", "1"],
    )


def staircase(k: int) -> LatticeDiagram:
    """The points i + j < k of the grid C_k x C_k with a new top over the diagonal.

    staircase(3) is S7; the top of staircase(k) closes k - 1 upper-adjacent pairs.
    """
    pts = [(i, j) for i in range(k) for j in range(k) if i + j < k]
    names = [f"{i},{j}" for i, j in pts] + ["1"]
    spec = {}
    for i, j in pts:
        nxt = [f"{a},{b}" for a, b in ((i + 1, j), (i, j + 1)) if a + b < k]
        spec[f"{i},{j}"] = nxt or ["1"]
    return _build(spec, names)


def two_maximal_pairs() -> LatticeDiagram:
    """11 elements, two upper-adjacent pairs, both maximal (they share the top)."""
    return staircase(4)


def flanked_pairs() -> LatticeDiagram:
    """13 elements: two maximal pairs under the element 3,3, whose right chain climbs to 3,4."""
    from .diagram import sublattice_diagram
    from .grid import product_of_chains

    g = product_of_chains(4, 5)
    keep = ["0,0", "0,1", "0,2", "0,3", "0,4", "1,0", "1,1", "1,2", "2,0", "2,1", "3,0", "3,3", "3,4"]
    return sublattice_diagram(g, [g.index(x) for x in keep])[0]


def pair_below_pair() -> LatticeDiagram:
    """10 elements, two upper-adjacent pairs, only one of them maximal; its full expansion is C4 x C4."""
    from .diagram import sublattice_diagram
    from .grid import product_of_chains

    g = product_of_chains(4, 4)
    keep = ["0,0", "1,0", "2,0", "3,0", "0,1", "1,1", "0,2", "2,2", "0,3", "3,3"]
    return sublattice_diagram(g, [g.index(x) for x in keep])[0]


def c3xc3() -> LatticeDiagram:
    from .grid import product_of_chains

    return product_of_chains(3, 3)


FIXTURES = {
    "s7": s7,
    "s7_plus": s7_plus,
    "n5": n5,
    "m3": m3,
    "kite_pair": kite_pair,
    "two_maximal_pairs": two_maximal_pairs,
    "flanked_pairs": flanked_pairs,
    "pair_below_pair": pair_below_pair,
    "c3xc3": c3xc3,
}
