import pytest

from monext.action import (connector, induced_pre_action, make_point, make_semimodule,
                           patrick_check, point_action, point_iso_semidirect, s_reflexive_check,
                           semidirect, to_semimodule, trivial_action)
from monext.errors import AxiomA4Violation, AxiomViolation, NotCentral, NotCommutative, NotSReflexive
from monext.extension import product_extension, s3_extension
from monext.finmon import Relation, cyclic, kernel_objects, m2, symmetric3

from oracles import isomorphic_brute


def inversion(K):
    return tuple(K.inverse(a) for a in K.elements)


def test_s3_action_is_inversion():
    E = s3_extension()
    S = to_semimodule(E)
    assert S.act[0] == tuple(E.K.elements)
    assert S.act[1] == inversion(E.K)
    assert patrick_check(E)


def test_semidirect_c3_c2_is_s3():
    C3, C2 = cyclic(3), cyclic(2)
    S = make_semimodule(C2, C3, [[0, 1, 2], [0, 2, 1]])
    P = semidirect(S)
    assert isomorphic_brute(P.B.table, symmetric3().table)
    assert not isomorphic_brute(semidirect(trivial_action(C2, C3)).B.table, symmetric3().table)
    assert point_action(P) == S


def test_s3_connector_is_x_minus_y_plus_z():
    E = s3_extension()
    _, _, eq = kernel_objects(E.f)
    X = E.X
    con = connector(eq, eq)
    for (x, y, z) in con.composite.labels:
        assert con(x, y, z) == X.mul(X.mul(x, X.inverse(y)), z)


def test_semimodule_errors_name_the_triple():
    C2 = cyclic(2)
    with pytest.raises(AxiomViolation) as e:
        make_semimodule(C2, cyclic(3), [[0, 1, 2], [0, 1, 1]])
    assert e.value.witness[0] == "A3"
    m, a, b = e.value.witness[1:]
    assert m == 1
    with pytest.raises(NotCommutative):
        make_semimodule(C2, symmetric3(), [list(range(6))] * 2)


def test_a4_violation_is_its_own_error():
    # eta(1) = 0 on C2 acting on M2: eta(1)eta(1)(z) = e but eta(0)(z) = z
    with pytest.raises(AxiomA4Violation):
        make_semimodule(cyclic(2), m2(), [[0, 1], [0, 0]])


def test_induced_action_on_product_is_trivial():
    E = product_extension(m2(), cyclic(2))
    assert to_semimodule(E).is_trivial
    assert [list(r) for r in induced_pre_action(E)] == [[0, 1], [0, 1]]


def test_point_from_semidirect_round_trip():
    S = make_semimodule(cyclic(2), cyclic(3), [[0, 1, 2], [0, 2, 1]])
    P = semidirect(S)
    Q = make_point(P.k, P.f, P.s)
    assert Q.q == P.q
    assert point_iso_semidirect(Q).lam.is_iso


def test_s_reflexive_and_connectors():
    E = s3_extension()
    _, _, eq = kernel_objects(E.f)
    P = s_reflexive_check(eq)
    assert P.K.is_group and eq.is_symmetric
    X = m2()
    order = Relation(X, [(0, 0), (1, 1), (1, 0)])
    full = Relation(X, [(a, b) for a in X.elements for b in X.elements])
    with pytest.raises(NotSReflexive):
        s_reflexive_check(order)
    # symmetric, but its kernel {(e, e), (e, z)} is not a group
    with pytest.raises(NotSReflexive):
        s_reflexive_check(full)


def test_connector_rejected_when_not_central():
    X = cyclic(2)
    diag = Relation(X, [(0, 0), (1, 1)])
    full = Relation(X, [(a, b) for a in X.elements for b in X.elements])
    assert connector(full, full)(1, 0, 1) == 0
    assert connector(diag, full)(1, 1, 0) == 0
    S3 = symmetric3()
    full3 = Relation(S3, [(a, b) for a in S3.elements for b in S3.elements])
    with pytest.raises(NotCentral):
        connector(full3, full3)


def test_finite_a4_failure_witness():
    # K = C2 with an absorbing element, M = C2; the corpus crossed product #0 induces
    # an action whose square at the non-identity of M is not the identity
    from monext.corpus import build_corpus
    E = next(E for E in build_corpus(3, 6).extensions if E.name == "Mon3.0>Mon2.0#0")
    assert E.is_schreier and E.K.is_commutative and not E.K.is_cancellative
    act = induced_pre_action(E)
    assert act[1][act[1][1]] != act[0][1]
    with pytest.raises(AxiomA4Violation):
        to_semimodule(E)
