import pytest

from planarlat.canonical import canonical_form, is_isomorphic
from planarlat.cells import enumerate_cells
from planarlat.diagram import LatticeError, is_distributive, is_modular, is_semimodular, validate
from planarlat.fixtures import m3, s7, s7_plus
from planarlat.grid import product_of_chains
from planarlat.slimming import add_eye, covering_m3s, is_slim, restore_eyes, slim


def test_s7_plus_slims_to_s7():
    d = s7_plus()
    assert not is_slim(d)
    s, records = slim(d)
    assert len(records) == 3
    assert is_isomorphic(s, s7()) and is_slim(s)
    assert {r.removed for r in records} == {"e0", "e1", "e2"}


def test_restore_is_exact():
    d = s7_plus()
    s, records = slim(d)
    back = restore_eyes(s, records)
    assert canonical_form(back, embedded=True) == canonical_form(d, embedded=True)


def test_add_eye_to_square_gives_m3():
    g = product_of_chains(2, 2)
    (cell,) = enumerate_cells(g)
    d = add_eye(g, cell, 0)
    assert validate(d).ok and is_isomorphic(d, m3())


def test_three_eyes_on_s7():
    d = s7()
    for k in range(3):
        cell = [c for c in enumerate_cells(d) if c.is_4cell and len(set(d.up[c.bottom]) & set(d.down[c.top])) == 2][0]
        d = add_eye(d, cell)
    assert is_isomorphic(d, s7_plus())


def test_add_eye_errors():
    d = m3()
    cell = enumerate_cells(d)[0]
    with pytest.raises(LatticeError, match="out of range"):
        add_eye(d, cell, 5)


def test_m3_detection():
    assert len(covering_m3s(m3())) == 1
    assert not covering_m3s(s7())


def test_slim_modular_is_distributive(corpus10):
    for e in corpus10:
        if e.predicates["slim"] and e.predicates["modular"]:
            assert e.predicates["distributive"]


def test_slimming_keeps_semimodularity(corpus10):
    for e in corpus10:
        s, recs = slim(e.diagram)
        assert validate(s).ok
        assert is_semimodular(s) == e.predicates["semimodular"]
        assert canonical_form(restore_eyes(s, recs)) == e.code


def test_eye_then_slim_is_identity(corpus10):
    for e in corpus10:
        d = e.diagram
        if not e.predicates["slim"] or d.n > 9:
            continue
        for cell in enumerate_cells(d):
            s, _ = slim(add_eye(d, cell))
            assert canonical_form(s) == e.code


def test_slimming_order_independent(corpus10):
    # removing eyes in mirrored order gives the same lattice
    for e in corpus10:
        if e.predicates["slim"]:
            continue
        a, _ = slim(e.diagram)
        b, _ = slim(e.diagram.mirror())
        assert canonical_form(a) == canonical_form(b)
