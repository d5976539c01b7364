import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarlat import census
from planarlat.canonical import canonical_form
from planarlat.diagram import LatticeDiagram, LatticeError, is_distributive, is_semimodular
from planarlat.expansion import full_expansion
from planarlat.fixtures import m3, pair_below_pair, s7, s7_plus
from planarlat.grid import chain, product_of_chains, replay_corners
from planarlat.homs import LatticeMap, enumerate_join_surjections


def codes(entries):
    return {e.code for e in entries}


def test_expansion_length_law(slim_semimodular):
    # length grows by one per pair, and pairs force two extra elements beyond a chain
    for e in slim_semimodular:
        d = e.diagram
        h, p = d.heights[d.top], e.predicates["pairs"]
        D = full_expansion(d, check=False).distributive
        assert D.heights[D.top] == h + p
        assert D.n <= (h + p + 2) ** 2 // 4
        if p:
            assert d.n >= h + 2 + p


def test_default_slack_reaches_pair_below_pair():
    assert census.default_slack(10) == 15
    assert pair_below_pair().n == 10
    assert canonical_form(pair_below_pair()) in codes(census.build_corpus(10))
    # with the old fixed slack of 4 the 16-element source is out of reach
    assert canonical_form(pair_below_pair()) not in codes(census.build_corpus(10, slack=4))


def test_small_corpus_contents():
    entries = census.build_corpus(5)
    expected = [chain(k) for k in range(1, 6)] + [product_of_chains(2, 2), m3()]
    assert codes(entries) >= {canonical_form(d) for d in expected}
    sizes = {}
    for e in entries:
        sizes[e.diagram.n] = sizes.get(e.diagram.n, 0) + 1
    assert sizes == {1: 1, 2: 1, 3: 1, 4: 2, 5: 4}


def test_corpus10_counts(corpus10):
    sizes = {}
    for e in corpus10:
        sizes[e.diagram.n] = sizes.get(e.diagram.n, 0) + 1
    assert sizes == {1: 1, 2: 1, 3: 1, 4: 2, 5: 4, 6: 8, 7: 17, 8: 37, 9: 83, 10: 191}
    assert all(e.predicates["planar"] and e.predicates["semimodular"] for e in corpus10)


def test_s7_and_s7_plus_present(corpus10):
    by_code = {e.code: e for e in corpus10}
    for d, eyes in ((s7(), 0), (s7_plus(), 3)):
        e = by_code[canonical_form(d)]
        assert e.traces
        assert min(len(t.eyes) for t in e.traces) == eyes


def test_traces_replay(corpus10):
    for e in corpus10[::7]:
        for t in e.traces:
            assert canonical_form(t.replay()) == e.code
            back = census.ConstructionTrace.from_dict(json.loads(json.dumps(t.to_dict())))
            assert back == t


def test_roundtrip_sample(corpus10):
    for e in corpus10[::11]:
        rep = census.verify_roundtrip(e)
        assert rep.ok, rep.failures


def test_roundtrip_flags_non_semimodular():
    from planarlat.fixtures import n5

    d = n5()
    entry = census.CorpusEntry(d, canonical_form(d), census.predicate_vector(d), [])
    rep = census.verify_roundtrip(entry)
    assert not rep.ok and rep.failures[0][0] == "precondition"


def kernel(table):
    classes = {}
    for x, v in enumerate(table):
        classes.setdefault(v, set()).add(x)
    return frozenset(frozenset(c) for c in classes.values())


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (2, 4), (3, 3)])
def test_closures_are_cover_preserving(m, n):
    d = product_of_chains(m, n)
    for kept in census.cover_preserving_closures(d, d.n):
        img, order, pos = census.sublattice_diagram(d, kept)
        table = [pos[c] for c in census.closure_table(d, kept)]
        f = LatticeMap(d, img, table)
        assert f.surjective and f.join_preserving and f.cover_preserving


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (2, 4)])
def test_closures_match_hom_enumeration(m, n):
    # oracle: kernels of every cover-preserving join-surjection onto any lattice
    d = product_of_chains(m, n)
    got = {kernel(census.closure_table(d, kept)) for kept in census.cover_preserving_closures(d, d.n)}
    want = set()
    for size in range(1, d.n + 1):
        for tgt in census.all_lattices(size):
            for f in enumerate_join_surjections(d, tgt, cover_preserving=True):
                want.add(kernel(f.table))
    assert got == want


def test_minimal_closures_drop_doubly_irreducible_merges():
    d = product_of_chains(2, 4)
    full = list(census.cover_preserving_closures(d, d.n))
    pruned = list(census.cover_preserving_closures(d, d.n, minimal=True))
    assert set(map(tuple, pruned)) < set(map(tuple, full))
    dirr = [v for v in range(d.n) if len(d.up[v]) == 1 and len(d.down[v]) == 1]
    for kept in pruned:
        assert set(dirr) <= set(kept)


@pytest.mark.parametrize("size", [6, 8, 10])
def test_reduced_shapes_cover_every_lattice(size):
    full = set()
    for m, n, left, right in census.grid_shapes(size - 1, size):
        full.add(canonical_form(census.shape_diagram(m, n, left, right)))
    assert set(census.planar_distributive_lattices(size - 1, size)) == full


def test_shapes_are_distributive_and_replayable():
    for code, (d, m, n, lt, rt) in census.planar_distributive_lattices(7, 8).items():
        assert is_distributive(d)
        assert canonical_form(replay_corners(m, n, lt, rt)) == code


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_shape_replay_property(data):
    shapes = list(census.grid_shapes(6, 9))
    m, n, left, right = data.draw(st.sampled_from(shapes))
    d = census.shape_diagram(m, n, left, right)
    lt, rt = census.corner_traces(m, n, left, right)
    assert canonical_form(replay_corners(m, n, lt, rt)) == canonical_form(d)
    assert d.n == m * n - len(left) - len(right)


@pytest.mark.parametrize("n", [3, 5])
def test_crosscheck_small(n):
    rep = census.exhaustive_crosscheck(n)
    assert rep.ok, rep.failures
    assert rep.details["exhaustive"] == rep.details["constructive"]


def test_all_lattices_counts():
    # number of lattices on 1..7 elements up to isomorphism
    assert [len(census.all_lattices(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 15, 53]


def test_planar_embedding_rejects_boolean_cube():
    # 2^3: 0 < a, b, c < ab, ac, bc < 1
    up = [[1, 2, 3], [4, 5], [4, 6], [5, 6], [7], [7], [7], []]
    assert census.planar_embedding(LatticeDiagram(up)) is None
    assert census.planar_embedding(s7()) is not None


def test_bounds():
    with pytest.raises(LatticeError, match="n too large"):
        census.exhaustive_crosscheck(8)
    with pytest.raises(LatticeError, match="bound exceeded"):
        census.build_corpus(11)


def test_eye_extensions_stay_semimodular():
    for ext, eyes in census.eye_extensions(s7(), 10):
        assert is_semimodular(ext) and ext.n == 7 + len(eyes)
