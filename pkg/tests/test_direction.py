import pytest

from monext.action import semidirect, to_semimodule
from monext.direction import (build_RE, chasles_identities_ok, df_by_coequalizer, df_by_semidirect,
                              df_isomorphism, direction_bundle, direction_on_morphism,
                              gamma_kernel_pair_is_tau, internal_monoid_structure, is_cc,
                              point_to_internal_monoid, re_is_coequalizer)
from monext.extension import identity_morphism, kernel_extension, product_extension, s3_extension
from monext.finmon import cyclic, enumerate_homs, klein, m2

from oracles import isomorphic_brute


def c4_over_c2():
    f = next(h for h in enumerate_homs(cyclic(4), cyclic(2), surjective_only=True))
    return kernel_extension(f, "C4")


def test_es3_direction_has_order_six():
    E = s3_extension()
    b = direction_bundle(E)
    assert b.df.order == 6
    assert df_isomorphism(b).lam.is_iso
    assert isomorphic_brute(b.df.table, df_by_semidirect(E).B.table)


def test_direction_of_nonsplit_extension_is_split():
    # C2 >-> C4 ->> C2 has trivial action, so its direction is C2 x C2
    P = df_by_coequalizer(c4_over_c2())
    assert isomorphic_brute(P.B.table, klein().table)
    assert not isomorphic_brute(P.B.table, cyclic(4).table)


def test_re_on_group_kernel_is_kernel_pair():
    E = s3_extension()
    re = build_RE(E)
    assert re.relation.is_symmetric and len(re.relation.pairs) == 18
    assert re_is_coequalizer(E, re.relation)
    assert all(len(w) == 1 for w in re.witnesses.values())


def test_re_not_symmetric_for_non_group_kernel():
    E = product_extension(m2(), cyclic(2))
    assert not is_cc(E)
    re = build_RE(E)
    assert not re.relation.is_symmetric
    assert re_is_coequalizer(E, re.relation)


@pytest.mark.parametrize("E", [s3_extension(), c4_over_c2(), product_extension(cyclic(3), m2())])
def test_bundle_identities(E):
    b = direction_bundle(E)
    assert gamma_kernel_pair_is_tau(b)
    assert chasles_identities_ok(b)
    im = internal_monoid_structure(b)
    assert im.mu.map == point_to_internal_monoid(b.point).mu.map


def test_direction_preserves_identity():
    E = s3_extension()
    b = direction_bundle(E)
    d = direction_on_morphism(identity_morphism(E), b, b)
    assert d.lam.map == tuple(b.df.elements)
    assert to_semimodule(E) == to_semimodule(semidirect(to_semimodule(E)).extension)
