import itertools

import pytest
from hypothesis import given, strategies as st

from monext.errors import BoundExceeded, NoIdentityAtZero, NotAssociative
from monext.finmon import (Relation, canonical_form, congruence_closure, composite, cyclic,
                           enumerate_homs, enumerate_monoids, is_isomorphic, kernel_objects,
                           klein, m2, make_monoid, product, quotient_by, trivial)

from oracles import homs_brute, isomorphic_brute, monoid_classes_order3

SMALL = [M for n in range(1, 4) for M in enumerate_monoids(n)]


def test_counts_by_order():
    assert [len(enumerate_monoids(n)) for n in range(1, 6)] == [1, 2, 7, 35, 228]


def test_order_three_matches_brute_force():
    assert len(enumerate_monoids(3)) == len(monoid_classes_order3()) == 7


def test_order_two_names():
    C2, M2 = enumerate_monoids(2)
    assert C2.is_group and not M2.is_group
    assert is_isomorphic(C2, cyclic(2)) and is_isomorphic(M2, m2())
    assert trivial().name == "1"


def test_bound():
    with pytest.raises(BoundExceeded):
        enumerate_monoids(7)


def test_validation_witnesses():
    t = [[0, 1, 2], [1, 2, 0], [2, 1, 1]]
    with pytest.raises(NotAssociative) as e:
        make_monoid(t)
    a, b, c = e.value.witness
    assert t[t[a][b]][c] != t[a][t[b][c]]
    with pytest.raises(NoIdentityAtZero):
        make_monoid([[1, 0], [0, 1]])


def test_c4_not_v4():
    assert not is_isomorphic(cyclic(4), klein())
    assert not isomorphic_brute(cyclic(4).table, klein().table)


@pytest.mark.parametrize("M,N", list(itertools.product(SMALL, repeat=2)))
def test_hom_counts_match_brute_force(M, N):
    assert sorted(h.map for h in enumerate_homs(M, N)) == sorted(homs_brute(M.table, N.table))


def test_canonical_form_is_invariant():
    for M in enumerate_monoids(4):
        for perm in itertools.permutations(range(1, 4)):
            p = (0,) + perm
            inv = [p.index(i) for i in range(4)]
            t = [[p[M.table[inv[a]][inv[b]]] for b in range(4)] for a in range(4)]
            assert canonical_form(make_monoid(t))[0].table == M.table


def naive_closure(M, pairs):
    rel = {(a, a) for a in M.elements} | set(pairs) | {(b, a) for a, b in pairs}
    while True:
        new = set(rel)
        new |= {(a, c) for a, b in rel for b2, c in rel if b == b2}
        new |= {(M.mul(x, a), M.mul(x, b)) for a, b in rel for x in M.elements}
        new |= {(M.mul(a, x), M.mul(b, x)) for a, b in rel for x in M.elements}
        if new == rel:
            return rel
        rel = new


@given(st.sampled_from(enumerate_monoids(4)), st.data())
def test_congruence_closure_matches_naive(M, data):
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(M.elements), st.sampled_from(M.elements)),
                               max_size=3))
    c = congruence_closure(M, pairs)
    assert set(c.pairs()) == naive_closure(M, pairs)


def test_quotient_of_c4_by_subgroup():
    C4 = cyclic(4)
    Q, proj = quotient_by(C4, congruence_closure(C4, [(0, 2)]))
    assert Q.order == 2 and is_isomorphic(Q, cyclic(2))
    assert proj.violation() is None


def test_kernel_pair_and_composite():
    C4 = cyclic(4)
    f = enumerate_homs(C4, cyclic(2), surjective_only=True)[0]
    K, k, eq = kernel_objects(f)
    assert K.order == 2 and set(k.map) == {0, 2}
    assert len(eq.pairs) == 8 and eq.is_symmetric and eq.is_transitive
    P = composite(eq, eq)
    assert P.order == 16
    diag = Relation(C4, [(x, x) for x in C4.elements])
    assert composite(diag, eq).order == 8


def test_product_indexing():
    P, p1, p2 = product(cyclic(2), cyclic(3))
    assert P.label(5) == (1, 2) and p1(5) == 1 and p2(5) == 2
