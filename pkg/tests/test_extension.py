import pytest

from monext.errors import MonoidError, NotKernel, NotSchreier, NotSurjective, RepsNotPreserved
from monext.extension import (compute_schreier, ext_morphism_violation, identity_morphism,
                              kernel_extension, make_ext_morphism, make_extension,
                              multiplication_extension, product_extension, s3_extension,
                              trivial_left, trivial_right)
from monext.finmon import Hom, cyclic, enumerate_homs, klein, m2, make_monoid, trivial


def brute_reps(E):
    """u is a representative iff a -> k(a) + u is a bijection K -> fibre of u."""
    out = []
    for fib in E.fibres:
        reps = []
        for u in fib:
            img = sorted(E.X.mul(E.k(a), u) for a in E.K.elements)
            if img == sorted(fib):
                reps.append(u)
        out.append(tuple(reps))
    return tuple(out)


def c4_over_c2():
    C4 = cyclic(4)
    f = next(h for h in enumerate_homs(C4, cyclic(2), surjective_only=True))
    return kernel_extension(f, "C4")


def test_multiplication_extension_is_not_schreier():
    E = multiplication_extension()
    assert not E.is_schreier
    with pytest.raises(NotSchreier) as e:
        compute_schreier(E)
    assert e.value.witness == 1   # the fibre over z
    assert E.M.label(1) == "z"


def test_group_extension_every_element_is_a_representative():
    E = s3_extension()
    assert E.K.order == 3 and E.M.order == 2
    sd = E.schreier
    assert all(len(sd.reps[m]) == 3 for m in E.M.elements)
    assert sd.base[0] == 0
    assert brute_reps(E) == E._all_reps


def test_retraction_decomposes():
    E = c4_over_c2()
    sd = E.schreier
    for x in E.X.elements:
        assert E.X.mul(E.k(sd.q[x]), sd.base[E.f(x)]) == x


@pytest.mark.parametrize("E", [c4_over_c2(), product_extension(m2(), cyclic(2)),
                               product_extension(cyclic(2), m2()), trivial_right(m2()),
                               trivial_left(klein())])
def test_representatives_match_brute_force(E):
    assert E._all_reps == brute_reps(E)


def test_m2_kernel_has_single_representatives():
    E = product_extension(m2(), cyclic(2))
    assert all(len(E.schreier.reps[m]) == 1 for m in E.M.elements)


def test_validation_errors():
    C4, C2 = cyclic(4), cyclic(2)
    f = next(h for h in enumerate_homs(C4, C2, surjective_only=True))
    with pytest.raises(MonoidError):
        make_extension(Hom(C2, C4, [0, 1]), f)
    with pytest.raises(NotSurjective):
        make_extension(Hom(C2, C4, [0, 2]), Hom(C4, C2, [0, 0, 0, 0]))
    with pytest.raises(NotKernel):
        make_extension(Hom(trivial(), C4, [0]), f)


def test_morphisms_preserve_representatives():
    E = c4_over_c2()
    i = identity_morphism(E)
    assert ext_morphism_violation(E, E, i.alpha1, i.alpha2) is None
    # x -> 3x on C4 is an automorphism over C2; it moves the base representative 1 to 3
    a2 = Hom(E.X, E.X, [0, 3, 2, 1])
    a1 = Hom(E.K, E.K, [0, 1])
    assert ext_morphism_violation(E, E, a1, a2) is None


def test_nonpreserving_morphism_rejected():
    # two M2-kernel extensions over C2 on a 4-element carrier; x -> (0, 3, 2, 3) is a
    # morphism of monoid extensions that sends the representative 1 to the non-representative 3
    M2 = m2()
    X1 = make_monoid([[0, 1, 2, 3], [1, 2, 3, 2], [2, 3, 2, 3], [3, 2, 3, 2]])
    X2 = make_monoid([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 2, 3], [3, 2, 3, 2]])
    C2 = cyclic(2)
    E1 = make_extension(Hom(M2, X1, [0, 2]), Hom(X1, C2, [0, 1, 0, 1]))
    E2 = make_extension(Hom(M2, X2, [0, 2]), Hom(X2, C2, [0, 1, 0, 1]))
    a1, a2 = Hom(M2, M2, [0, 1]), Hom(X1, X2, [0, 3, 2, 3])
    assert ext_morphism_violation(E1, E2, a1, a2, check_reps=False) is None
    assert 1 in E1.schreier.reps[1] and 3 not in E2.schreier.reps[1]
    with pytest.raises(RepsNotPreserved):
        make_ext_morphism(E1, E2, a1, a2)


def test_finite_normal_epi_that_is_not_schreier():
    # C2 with an absorbing element 2, mapped onto M2 by collapsing C2
    from monext.extension import cokernel_check
    X = make_monoid([[0, 1, 2], [1, 0, 2], [2, 2, 2]])
    E = kernel_extension(Hom(X, m2(), [0, 0, 1]))
    assert E.K.order == 2
    assert cokernel_check(E)
    assert not E.is_schreier
    with pytest.raises(NotSchreier) as e:
        compute_schreier(E)
    assert e.value.witness == 1
