import numpy as np
import pytest

from coxbrauer import brauer_tree as bt
from coxbrauer import oracle as orc
from coxbrauer import tree_algebra as ta
from coxbrauer.cyclotomic import CycloInt


def test_group_validation():
    with pytest.raises(ValueError):
        orc.MetacyclicGroup(12, 3, 2)      # |D| not a prime power
    with pytest.raises(ValueError):
        orc.MetacyclicGroup(7, 7, 2)       # |E| not prime to ell
    with pytest.raises(ValueError):
        orc.MetacyclicGroup(7, 3, 3)       # ord_7(3) = 6
    with pytest.raises(ValueError):
        orc.MetacyclicGroup(49, 3, 2)      # 2^3 = 8 != 1 mod 49


def test_character_table_shape():
    g = orc.MetacyclicGroup(7, 3, 2)
    table = orc.character_table(g)
    assert len(table.classes) == 5
    assert [c.size for c in table.classes] == [1, 3, 3, 7, 7]
    assert [table.degree(i) for i in range(5)] == [1, 1, 1, 3, 3]
    assert sum(table.degree(i) ** 2 for i in range(5)) == 21


def test_character_table_cyclic_group():
    g = orc.MetacyclicGroup(5, 1, 1)
    table = orc.character_table(g)
    # cyclic group of order 5: one linear character plus four induced rows
    # in this presentation (the orbits of E = 1 on D are singletons)
    assert len(table.classes) == 5
    assert all(table.degree(i) == 1 for i in range(len(table.values)))


def test_orthogonality_detects_corruption():
    g = orc.MetacyclicGroup(7, 3, 2)
    table = orc.character_table(g)
    assert table.check_orthogonality()
    table.values[0][1] = table.values[0][1] + CycloInt.integer(
        table.values[0][1].L, 1)
    assert not table.check_orthogonality()


def test_brute_decomposition_7_3_2():
    d = orc.brute_decomposition_matrix(orc.MetacyclicGroup(7, 3, 2))
    want = np.vstack([np.eye(3, dtype=int), np.ones((2, 3), dtype=int)])
    assert np.array_equal(d, want)


def test_brute_decomposition_trivial_e():
    d = orc.brute_decomposition_matrix(orc.MetacyclicGroup(7, 1, 1))
    assert d.shape == (7, 1)
    assert (d == 1).all()


def test_brute_decomposition_49():
    d = orc.brute_decomposition_matrix(orc.MetacyclicGroup(49, 3, 18))
    assert d.shape == (19, 3)
    assert np.array_equal(d[:3], np.eye(3, dtype=int))
    assert (d[3:] == 1).all()


def test_dec_transpose_equals_cartan():
    for d_order, e_order, n in [(7, 3, 2), (49, 3, 18), (11, 5, 3)]:
        g = orc.MetacyclicGroup(d_order, e_order, n)
        d = orc.brute_decomposition_matrix(g)
        alg = ta.from_tree(bt.star_tree(d_order, e_order, n), g.ell)
        cols = sorted(alg.vertices)
        cartan = np.array([[len(ta.hom_space(alg, i, j)) for j in cols]
                           for i in cols])
        assert np.array_equal(d.T @ d, cartan)


def test_exceptional_count_matches_multiplicity():
    g = orc.MetacyclicGroup(49, 3, 18)
    tree = bt.star_tree(49, 3, 18)
    n_induced = len(orc.character_table(g).induced_reps)
    assert n_induced == (49 - 1) // 3 == tree.multiplicity


def test_verify_star_fixtures():
    for d, e, n in [(7, 3, 2), (7, 3, 4), (49, 3, 18)]:
        assert orc.verify_star(bt.star_tree(d, e, n),
                               orc.MetacyclicGroup(d, e, n))


def test_verify_star_rotated_numbering():
    # n = 4 = 2^2 also has order 3; the Hensel lift and hence the eta
    # numbering differ from n = 2, but each side is internally consistent
    t2 = bt.star_tree(7, 3, 2)
    t4 = bt.star_tree(7, 3, 4)
    assert dict(t2.star_meta)["zeta"] != dict(t4.star_meta)["zeta"]
    assert orc.verify_star(t4, orc.MetacyclicGroup(7, 3, 4))


def test_verify_star_mismatch():
    tree = bt.star_tree(7, 3, 2)
    with pytest.raises(orc.Mismatch):
        orc.verify_star(tree, orc.MetacyclicGroup(7, 3, 4))
    with pytest.raises(orc.Mismatch):
        orc.verify_star(tree, orc.MetacyclicGroup(49, 3, 18))
    line = bt.assemble_tree(bt.line_series(3), 2, 1)
    with pytest.raises(orc.Mismatch):
        orc.verify_star(line, orc.MetacyclicGroup(7, 3, 2))
