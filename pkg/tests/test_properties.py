from hypothesis import assume, given, strategies as st

from monext.action import point_action, semidirect, to_semimodule
from monext.cofib import (baer_sum, crossed_product, enumerate_factor_systems,
                          factor_system_violation, fibre_iso)
from monext.corpus import build_corpus
from monext.direction import direction_bundle, df_isomorphism, is_cc
from monext.extension import kernel_extension
from monext.finmon import associativity_violation, enumerate_homs, enumerate_monoids

CORPUS = build_corpus(4, 8)
MONOIDS = [M for n in range(1, 5) for M in enumerate_monoids(n)]
SMALL_S = [S for S in CORPUS.semimodules if S.K.order * S.M.order <= 8]


@st.composite
def surjections(draw):
    X = draw(st.sampled_from(MONOIDS))
    M = draw(st.sampled_from([M for M in MONOIDS if M.order <= X.order]))
    homs = enumerate_homs(X, M, surjective_only=True)
    assume(homs)
    return draw(st.sampled_from(homs))


@given(surjections())
def test_schreier_retraction_laws(f):
    E = kernel_extension(f)
    assume(E.is_schreier)
    sd, T, K = E.schreier, E.X.table, E.K
    for a in K.elements:
        assert sd.q[E.k(a)] == a
    for x in E.X.elements:
        assert T[E.k(sd.q[x])][sd.base[E.f(x)]] == x
        for y in E.X.elements:
            assert K.mul(sd.q[x], sd.q[y]) == sd.q[T[E.k(sd.q[x])][y]]


@given(surjections())
def test_representatives_are_unit_orbits(f):
    E = kernel_extension(f)
    assume(E.is_schreier)
    units = E.K.units
    for m in E.M.elements:
        u = E.u(m)
        assert set(E.schreier.reps[m]) == {E.X.mul(E.k(a), u) for a in units}


@given(st.sampled_from(CORPUS.semimodules))
def test_semidirect_is_associative_and_recovers_action(S):
    P = semidirect(S)
    assert associativity_violation(P.B.table) is None
    assert point_action(P) == S


@given(st.sampled_from(CORPUS.extensions))
def test_crossed_product_retraction_reads_first_coordinate(E):
    nM = E.M.order
    for x in E.X.elements:
        assert E.f(x) == x % nM
    assert all(E.u(m) == m for m in E.M.elements)
    assert all(E.schreier.q[x] == x // nM for x in E.X.elements)


@given(st.sampled_from(SMALL_S), st.data())
def test_factor_systems_add_and_baer_matches(S, data):
    fss = list(enumerate_factor_systems(S))
    g = data.draw(st.sampled_from(fss))
    h = data.draw(st.sampled_from(fss))
    assert factor_system_violation(S, (g + h).g) is None
    B = baer_sum(crossed_product(g), crossed_product(h), check=False)
    assert fibre_iso(B, crossed_product(g + h)) is not None
    assert fibre_iso(baer_sum(crossed_product(h), crossed_product(g), check=False), B) is not None


@given(st.sampled_from([E for E in CORPUS.extensions if is_cc(E) and E.X.order <= 8]))
def test_direction_routes_agree(E):
    b = direction_bundle(E)
    assert df_isomorphism(b).lam.is_iso
    assert point_action(b.point) == to_semimodule(E)
