import pytest

from planarlat.canonical import is_isomorphic
from planarlat.cells import count_pairs, maximal_upper_adjacent_pairs, upper_adjacent_pairs
from planarlat.diagram import LatticeDiagram, LatticeError, is_distributive
from planarlat.expansion import (
    AlreadyModularError,
    NotMaximalError,
    boundary_intuition_holds,
    build_side_chains,
    compute_anchors,
    decompose,
    expected_covers,
    full_expansion,
    one_step_expansion,
)
from planarlat.fixtures import flanked_pairs, pair_below_pair, s7, two_maximal_pairs
from planarlat.grid import product_of_chains, recognize_grid_minus_corners


def labels(d, xs):
    return sorted(d.label(x) for x in xs)


def test_s7_decomposition():
    d = s7()
    (pair,) = maximal_upper_adjacent_pairs(d)
    ctx = decompose(d, pair)
    L = d.label
    assert (L(pair.top), L(pair.u)) == ("1", "m")
    assert labels(d, ctx.left.chain) == ["1"] and labels(d, ctx.right.chain) == ["1"]
    assert (L(ctx.v_plus), L(ctx.w_plus)) == ("b1", "b2")
    assert labels(d, ctx.T) == ["1"]
    assert labels(d, ctx.B) == ["0", "a1", "a2", "m"]
    assert labels(d, ctx.I) == ["1", "b1"]
    assert labels(d, ctx.J) == ["1", "b2"]
    assert [(L(x), L(y)) for x, y in ctx.i_bridges] == [("a1", "b1"), ("m", "1")]
    assert [(L(x), L(y)) for x, y in ctx.j_bridges] == [("a2", "b2"), ("m", "1")]


def test_s7_one_step_gives_c3_squared():
    ex = one_step_expansion(s7())
    assert ex.base.n == 9
    assert is_isomorphic(ex.base, product_of_chains(3, 3))
    f = ex.projection
    assert f.surjective and f.join_preserving and f.cover_preserving
    classes = [sorted(ex.base.label(x) for x in c) for c in f.kernel_classes() if len(c) > 1]
    assert classes == [["<1,1>", "<1,a>", "<1,b>"]]


def test_expected_covers_match(slim_semimodular):
    cases = [e.diagram for e in slim_semimodular if not e.predicates["modular"]]
    cases += [two_maximal_pairs(), flanked_pairs()]
    for d in cases:
        for k in range(len(maximal_upper_adjacent_pairs(d))):
            ex = one_step_expansion(d, k)
            exp, pos = expected_covers(d, ex.context, ex.elements)
            assert exp == set(ex.base.covers)


@pytest.mark.parametrize("make", [two_maximal_pairs, flanked_pairs])
def test_two_pair_fixtures(make):
    d = make()
    pairs = maximal_upper_adjacent_pairs(d)
    assert count_pairs(d) == 2 and len(pairs) == 2
    assert len({p.top for p in pairs}) == 1
    for k in range(2):
        ex = one_step_expansion(d, k)
        assert count_pairs(ex.base) == 1
    fe = full_expansion(d)
    assert len(fe.trace) == 2
    assert is_distributive(fe.distributive)
    recognize_grid_minus_corners(fe.distributive)
    f = fe.phi
    assert f.surjective and f.join_preserving and f.cover_preserving


def test_staircase_expands_to_c4_squared():
    fe = full_expansion(two_maximal_pairs())
    assert is_isomorphic(fe.distributive, product_of_chains(4, 4))


def test_flanked_pairs_side_chain():
    d = flanked_pairs()
    for pair in maximal_upper_adjacent_pairs(d):
        ctx = decompose(d, pair)
        assert [d.label(x) for x in ctx.left.chain] == ["3,3"]
        assert [d.label(x) for x in ctx.right.chain] == ["3,3", "3,4"]
        assert len(ctx.right.cells) == 1 and ctx.right.cells[0].is_4cell
        assert labels(d, ctx.T) == ["3,3", "3,4"]
        assert boundary_intuition_holds(d, ctx)
    assert full_expansion(d).distributive.n == 20


def test_context_invariants_on_corpus(slim_semimodular):
    checked = 0
    for e in slim_semimodular:
        d = e.diagram
        for pair in maximal_upper_adjacent_pairs(d):
            ctx = decompose(d, pair)  # raises on any failed identity
            checked += 1
            assert boundary_intuition_holds(d, ctx)
            assert ctx.T == frozenset(d.interval(pair.top, d.top))
            assert ctx.B == frozenset(d.interval(d.bottom, pair.u))
            for x, y in ctx.i_bridges:
                assert x in ctx.B and y in ctx.I and (x, y) in d.covers
    assert checked > 0


def test_one_step_removes_one_pair(slim_semimodular):
    for e in slim_semimodular:
        d = e.diagram
        n = count_pairs(d)
        for k in range(len(maximal_upper_adjacent_pairs(d))):
            assert count_pairs(one_step_expansion(d, k).base) == n - 1


def test_bridge_stability_fixtures():
    for d in (s7(), two_maximal_pairs(), flanked_pairs()):
        j = d.join_table
        for pair in maximal_upper_adjacent_pairs(d):
            ctx = decompose(d, pair)
            for bridges, target in ((ctx.i_bridges, ctx.I), (ctx.j_bridges, ctx.J)):
                for x, y in bridges:
                    for z in range(d.n):
                        a, b = int(j[x, z]), int(j[y, z])
                        assert a == b or (a in ctx.B and b in target and (a, b) in d.covers)


def stacked_s7():
    """Glued sum S7 + S7: the lower pair lies below the upper one."""
    a = s7()
    up = [list(u) for u in a.up[:-1]] + [[y + a.n - 1 for y in u] for u in a.up]
    return LatticeDiagram(up)


def test_non_maximal_pair_rejected():
    d = stacked_s7()
    pairs = upper_adjacent_pairs(d)
    (top,) = maximal_upper_adjacent_pairs(d)
    (lower,) = [p for p in pairs if p != top]
    assert d.lt(lower.top, top.top)
    with pytest.raises(NotMaximalError):
        compute_anchors(d, lower)
    with pytest.raises(NotMaximalError):
        decompose(d, lower)
    fe = full_expansion(d)
    assert len(fe.trace) == 2 and fe.distributive.n == 17


def test_pair_below_pair():
    d = pair_below_pair()
    assert count_pairs(d) == 2
    (top,) = maximal_upper_adjacent_pairs(d)
    (lower,) = [p for p in upper_adjacent_pairs(d) if p != top]
    assert (d.label(lower.top), d.label(top.top)) == ("2,2", "3,3")
    with pytest.raises(NotMaximalError):
        decompose(d, lower)
    fe = full_expansion(d)
    assert [ex.base.n for ex in fe.trace] == [12, 16]
    second = fe.trace[1].context
    assert len(second.left.chain) == 2 and len(second.right.chain) == 2
    assert is_isomorphic(fe.distributive, product_of_chains(4, 4))


def test_already_modular():
    with pytest.raises(AlreadyModularError):
        one_step_expansion(product_of_chains(3, 3))
    fe = full_expansion(product_of_chains(2, 3))
    assert fe.trace == [] and fe.distributive.n == 6


def test_foreign_pair_rejected():
    d = s7()
    (pair,) = maximal_upper_adjacent_pairs(two_maximal_pairs())[:1]
    with pytest.raises(LatticeError):
        build_side_chains(d, pair)


def test_seed_order_choices_agree_in_size():
    d = two_maximal_pairs()
    sizes = {full_expansion(d, k).distributive.n for k in range(2)}
    assert sizes == {16}
