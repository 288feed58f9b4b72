import itertools

import pytest

from monext.action import make_semimodule, to_semimodule, trivial_action
from monext.cofib import (baer_sum, classify_factor_systems, cohomology_monoid, crossed_product,
                          enumerate_factor_systems, factor_system_violation, fiber_classify,
                          fibre_iso, modes_agree, pushforward, zero_factor_system)
from monext.corpus import build_corpus
from monext.errors import BoundExceeded, FibreMismatch
from monext.finmon import Hom, cyclic, is_isomorphic, klein, m2

import oracles

SMALL_SEMIMODULES = [S for S in build_corpus(4, 4).semimodules if S.K.order * S.M.order <= 4]


def label(S):
    return f"{S.K.name}|{S.M.name}|{S.act}"


@pytest.mark.parametrize("S", SMALL_SEMIMODULES, ids=label)
def test_class_counts_match_brute_force(S):
    tables = oracles.fibre_tables(S.K.table, S.M.table, S.act)
    expected = len(oracles.classes(tables, S.K.table, S.M.table))
    assert len(fiber_classify(S, "fs")) == expected
    assert len(fiber_classify(S, "bf")) == expected


@pytest.mark.parametrize("S", SMALL_SEMIMODULES, ids=label)
def test_factor_systems_match_brute_force(S):
    K, M, act = S.K, S.M, S.act
    cells = [(m, n) for m in range(1, M.order) for n in range(1, M.order)]
    count = 0
    for vals in itertools.product(K.elements, repeat=len(cells)):
        g = [[0] * M.order for _ in M.elements]
        for (m, n), v in zip(cells, vals):
            g[m][n] = v
        table, _ = oracles_crossed(K, M, act, g)
        count += oracles.is_associative(table)
    assert count == sum(1 for _ in enumerate_factor_systems(S))


def oracles_crossed(K, M, act, g):
    nM = M.order
    labels = [(a, m) for a in K.elements for m in M.elements]
    return [[K.mul(K.mul(a, act[m][b]), g[m][n]) * nM + M.mul(m, n) for (b, n) in labels]
            for (a, m) in labels], labels


def test_c2_by_c2_classes():
    S = trivial_action(cyclic(2), cyclic(2))
    H = cohomology_monoid(S)
    assert [list(r) for r in H.table] == [[0, 1], [1, 0]]
    carriers = [E.X for E in H.classes]
    assert is_isomorphic(carriers[H.unit], klein())
    assert is_isomorphic(carriers[1 - H.unit], cyclic(4))
    for E in H.classes:
        assert sum(oracles.isomorphic_brute(E.X.table, T.table) for T in (klein(), cyclic(4))) == 1


def test_m2_kernel_gives_m2_monoid():
    H = cohomology_monoid(trivial_action(cyclic(2), m2()))
    assert len(H.classes) == 2
    assert is_isomorphic(H.as_monoid(), m2())
    other = 1 - H.unit
    assert H.table[other][other] == other


def test_m2_base_has_one_class():
    S = trivial_action(m2(), cyclic(2))
    assert len(fiber_classify(S, "fs")) == len(fiber_classify(S, "bf")) == 1
    assert len(classify_factor_systems(S)) == 1


def test_baer_sum_of_c4_class_with_itself_is_split():
    S = trivial_action(cyclic(2), cyclic(2))
    H = cohomology_monoid(S)
    C4 = H.classes[1 - H.unit]
    B = baer_sum(C4, C4)
    assert fibre_iso(B, H.classes[H.unit]) is not None
    assert fibre_iso(B, C4) is None


def test_baer_sum_needs_same_semimodule():
    E1 = crossed_product(zero_factor_system(trivial_action(cyclic(2), cyclic(2))))
    E2 = crossed_product(zero_factor_system(trivial_action(cyclic(2), cyclic(3))))
    with pytest.raises(FibreMismatch):
        baer_sum(E1, E2)


def test_fibre_iso_agrees_with_brute_force():
    S = trivial_action(cyclic(2), cyclic(2))
    exts = [crossed_product(g) for g in enumerate_factor_systems(S)]
    for E1, E2 in itertools.product(exts, repeat=2):
        expected = oracles.fibre_isomorphic(E1.X.table, E2.X.table, S.K.table, S.M.table)
        assert (fibre_iso(E1, E2) is not None) == expected


def test_pushforward_along_zero_map_splits():
    S = trivial_action(cyclic(2), cyclic(2))
    H = cohomology_monoid(S)
    C4 = H.classes[1 - H.unit]
    target = trivial_action(cyclic(2), cyclic(2))
    pf = pushforward(C4, Hom(C4.K, target.K, [0, 0]), target)
    assert fibre_iso(pf.E2, H.classes[H.unit]) is not None
    assert to_semimodule(pf.E2) == target


def test_factor_system_validation():
    S = make_semimodule(cyclic(2), cyclic(3), [[0, 1, 2], [0, 2, 1]])
    assert factor_system_violation(S, [[0, 0], [0, 0]]) is None
    assert factor_system_violation(S, [[0, 0], [0, 1]]) is not None


def test_bounds():
    S = trivial_action(cyclic(3), cyclic(3))
    with pytest.raises(BoundExceeded):
        fiber_classify(S, "bf")
    assert modes_agree(fiber_classify(trivial_action(cyclic(2), cyclic(3)), "fs"),
                       fiber_classify(trivial_action(cyclic(2), cyclic(3)), "bf"))
