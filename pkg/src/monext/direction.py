"""The relation R_E, the Chasles relation, the coequalizer construction of the
direction df, internal commutative monoids, and the direction functor on morphisms."""
from __future__ import annotations

from dataclasses import dataclass

from .action import (Connector, PointMorphism, SchreierPoint, connector, is_semimodule_hom,
                     make_point, make_point_morphism, point_comparison, s_reflexive_check,
                     semidirect, to_semimodule)
from .errors import (CheckFailure, MonoidError, NotActionPreserving, NotInternalMonoid,
                     NotWellDefined, OmegaNotForced)
from .extension import Extension
from .finmon import (Hom, Relation, composite, congruence_closure, identity_hom,
                     kernel_congruence, kernel_objects, quotient_by)


def is_cc(E):
    """Schreier with commutative cancellative kernel."""
    return E.K.is_commutative and E.K.is_cancellative and E.is_schreier


# --- R_E --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class REData:
    E: Extension
    relation: Relation
    witnesses: dict      # pair -> tuple of a with y = k(a) + x
    point: SchreierPoint | None  # (k1, r1, s0), built for cc kernels

    def witness(self, pair):
        return self.witnesses[pair][0]


def build_RE(E):
    """R_E = {(x, k(a) + x)}, with its point structure k1 = <0, k> when the kernel is cc."""
    T, k = E.X.table, E.k.map
    wit = {}
    for x in E.X.elements:
        for a in E.K.elements:
            wit.setdefault((x, T[k[a]][x]), []).append(a)
    R = Relation(E.X, wit)
    wit = {p: tuple(v) for p, v in wit.items()}
    point = None
    if is_cc(E):
        Rm = R.monoid
        k1 = Hom(E.K, Rm, [Rm.index((0, k[a])) for a in E.K.elements])
        point = make_point(k1, R.r1, R.delta)
        for i, pair in enumerate(Rm.labels):
            if point.q[i] != wit[pair][0]:
                raise CheckFailure(f"retraction of R_E differs from the witness at {pair}")
    return REData(E, R, wit, point)


def re_is_coequalizer(E, R):
    """f coequalizes r1, r2 universally: the congruence generated by R_E is Eq(f)."""
    return congruence_closure(E.X, R.pairs) == kernel_congruence(E.f)


def joint_extremal_epi_check(E, R):
    """Every (x, y) in Eq(f) is j(kq(x), 0) + k2-part (u_m, kq(y) + u_m) with the second in R_E."""
    T, k = E.X.table, E.k.map
    for x in E.X.elements:
        for y in E.fibres[E.f(x)]:
            u = E.u(E.f(x))
            second = (u, T[k[E.q(y)]][u])
            if second not in R:
                return False
            if (T[k[E.q(x)]][second[0]], T[0][second[1]]) != (x, y):
                return False
    return True


# --- Chasles relation and the direction bundle ---------------------------------

@dataclass(frozen=True, eq=False)
class ChaslesData:
    P: object            # composite R_E x_X R_E, labels (x, y, z)
    p: Hom               # self-connector P -> X
    pi1: Hom             # P -> R_E, (x, p(w))
    p2: Hom              # P -> R_E, (y, z)
    p1: Hom              # P -> R_E, (x, y)
    pi2: Hom             # P -> R_E, (p(w), z)
    sigma0: Hom          # R_E -> P, (x, y) -> (x, x, y)
    frak_s0: Hom         # R_E -> P, (x, y) -> (x, y, y)
    relation: Relation   # Ch_E on R_E
    point: SchreierPoint  # (kappa1, pi1, sigma0)


def build_chasles(E, re=None):
    if not is_cc(E):
        raise MonoidError("the Chasles relation needs a cc-Schreier extension")
    re = re or build_RE(E)
    R, Rm = re.relation, re.relation.monoid
    T, k = E.X.table, E.k.map
    P = composite(R, R)
    pvals = []
    for (x, y, z) in P.labels:
        b = re.witness((y, z))
        pvals.append(T[k[b]][x])
    p = Hom(P, E.X, pvals)
    idx = Rm.index
    pi1 = Hom(P, Rm, [idx((x, pv)) for (x, _, _), pv in zip(P.labels, pvals)])
    p2 = Hom(P, Rm, [idx((y, z)) for (_, y, z) in P.labels])
    p1 = Hom(P, Rm, [idx((x, y)) for (x, y, _) in P.labels])
    pi2 = Hom(P, Rm, [idx((pv, z)) for (_, _, z), pv in zip(P.labels, pvals)])
    sigma0 = Hom(Rm, P, [P.index((x, x, y)) for (x, y) in Rm.labels])
    frak_s0 = Hom(Rm, P, [P.index((x, y, y)) for (x, y) in Rm.labels])
    for h, name in ((p, "p"), (pi1, "pi1"), (p2, "p2"), (p1, "p1"), (pi2, "pi2"),
                    (sigma0, "sigma0"), (frak_s0, "s0'")):
        bad = h.violation()
        if bad is not None:
            raise CheckFailure(f"{name} is not a homomorphism at {bad}")
    kappa1 = Hom(E.K, P, [P.index((0, k[a], k[a])) for a in E.K.elements])
    point = make_point(kappa1, pi1, sigma0)
    for i, (x, y, _) in enumerate(P.labels):
        if point.q[i] != re.witness((x, y)):
            raise CheckFailure("Chasles retraction differs from the first witness")
    ch = Relation(Rm, [(pi1(w), p2(w)) for w in P.elements])
    return ChaslesData(P, p, pi1, p2, p1, pi2, sigma0, frak_s0, ch, point)


@dataclass(frozen=True, eq=False)
class DirectionBundle:
    E: Extension
    re: REData
    chasles: ChaslesData
    gamma: Hom           # R_E -> df
    point: SchreierPoint  # (kappa_bar, f_bar, s_bar, q_bar) on df

    @property
    def RE(self):
        return self.re.relation

    @property
    def df(self):
        return self.point.B

    def gamma_of(self, x, y):
        return self.gamma(self.RE.monoid.index((x, y)))


def direction_bundle(E):
    re = build_RE(E)
    ch = build_chasles(E, re)
    Rm = re.relation.monoid
    c = congruence_closure(Rm, ch.relation.pairs)
    df, gamma = quotient_by(Rm, c)
    T, k = E.X.table, E.k.map
    fbar = [None] * df.order
    for i, (x, _) in enumerate(Rm.labels):
        g = gamma(i)
        if fbar[g] is None:
            fbar[g] = E.f(x)
        elif fbar[g] != E.f(x):
            raise CheckFailure("f_bar is not well defined on the coequalizer")
    fbar = Hom(df, E.M, fbar)
    sbar = Hom(E.M, df, [gamma(Rm.index((E.u(m), E.u(m)))) for m in E.M.elements])
    for x in E.X.elements:
        if gamma(Rm.index((x, x))) != sbar(E.f(x)):
            raise CheckFailure(f"gamma(x, x) depends on x beyond f(x) at {x}")
    kbar = Hom(E.K, df, [gamma(Rm.index((0, k[a]))) for a in E.K.elements])
    point = make_point(kbar, fbar, sbar)
    for i, pair in enumerate(Rm.labels):
        if point.q[gamma(i)] != re.witness(pair):
            raise CheckFailure(f"q_bar(gamma{pair}) differs from the witness")
    return DirectionBundle(E, re, ch, gamma, point)


def df_by_coequalizer(E):
    return direction_bundle(E).point


def df_by_semidirect(E):
    return semidirect(to_semimodule(E))


def gamma_kernel_pair_is_tau(b):
    """Kernel pair of gamma equals {((x,k(a)+x),(y,k(b)+y)): a = b and f(x) = f(y)}."""
    labels = b.RE.monoid.labels
    f = b.E.f
    for i, r in enumerate(labels):
        for j, s in enumerate(labels):
            same = b.gamma(i) == b.gamma(j)
            tau = b.re.witness(r) == b.re.witness(s) and f(r[0]) == f(s[0])
            if same != tau:
                return False
    return True


def chasles_membership_ok(b):
    """(x,k(a)+x) Ch (y,k(b)+y) iff (x,y) in R_E and a = b."""
    Rm, ch = b.RE.monoid, b.chasles.relation
    for i, r in enumerate(Rm.labels):
        for j, s in enumerate(Rm.labels):
            expect = (r[0], s[0]) in b.RE and b.re.witness(r) == b.re.witness(s)
            if ((i, j) in ch) != expect:
                return False
    return True


def self_connector(E):
    re = build_RE(E)
    return connector(re.relation, re.relation)


def df_isomorphism(b):
    """Point iso semidirect(D(E)) -> df: (a, m) -> kappa_bar(a) + s_bar(m)."""
    iso = point_comparison(df_by_semidirect(b.E), b.point)
    if iso is None:
        raise CheckFailure("df by coequalizer is not isomorphic to the semidirect product")
    return iso


# --- internal commutative monoids -------------------------------------------------

@dataclass(frozen=True, eq=False)
class InternalMonoid:
    E: Extension
    eq: Relation   # Eq(f)
    mu: Hom        # Eq(f) -> X
    unit: Hom      # M -> X

    def __call__(self, x, y):
        return self.mu(self.eq.monoid.index((x, y)))


def internal_monoid_violation(im):
    """First failing law as (law, witness), or None."""
    E, X = im.E, im.E.X
    f, s = E.f, im.unit
    bad = im.mu.violation()
    if bad is not None:
        return "mu-hom", bad
    if s.violation() is not None or any(f(s(m)) != m for m in E.M.elements):
        return "unit-section", None
    for x, y in im.eq.pairs:
        if f(im(x, y)) != f(x):
            return "fibre", (x, y)
        if im(x, y) != im(y, x):
            return "commutativity", (x, y)
    for b in X.elements:
        e = s(f(b))
        if im(e, b) != b:
            return "unit", (b,)
    for fib in E.fibres:
        for x in fib:
            for y in fib:
                xy = im(x, y)
                for z in fib:
                    if im(xy, z) != im(x, im(y, z)):
                        return "associativity", (x, y, z)
    # morphism of extensions E x_M E -> E: kernel part and representatives
    T, k = X.table, E.k.map
    kset = set(k)
    for a in E.K.elements:
        for c in E.K.elements:
            if im(k[a], k[c]) not in kset:
                return "kernel-square", (a, c)
    for m in E.M.elements:
        u = E.u(m)
        if not E.is_representative(im(u, u)):
            return "representatives", (m,)
        if not E.is_representative(s(m)):
            return "unit-representatives", (m,)
    return None


def point_to_internal_monoid(P):
    """mu(x, y) = k q(x) + y on Eq(f), with the section as unit."""
    E = P.extension
    _, _, eq = kernel_objects(P.f)
    T = P.B.table
    mu = Hom(eq.monoid, P.B, [T[P.k(P.q[x])][y] for (x, y) in eq.pairs])
    im = InternalMonoid(E, eq, mu, P.s)
    bad = internal_monoid_violation(im)
    if bad is not None:
        raise CheckFailure(f"kq(x)+y fails the internal monoid law {bad[0]} at {bad[1]}")
    return im


def internal_monoid_to_point(E, omega, s):
    """Schreier point from an internal commutative monoid (E, omega, s); omega must be forced."""
    _, _, eq = kernel_objects(E.f)
    if isinstance(omega, Hom):
        mu = omega
    else:
        mu = Hom(eq.monoid, E.X, [omega[p] for p in eq.pairs])
    im = InternalMonoid(E, eq, mu, s)
    bad = internal_monoid_violation(im)
    if bad is not None:
        raise NotInternalMonoid(f"law {bad[0]} fails at {bad[1]}", witness=bad)
    P = make_point(E.k, E.f, s)
    T, k = E.X.table, E.k.map
    for a in E.K.elements:
        for c in E.K.elements:
            if im(k[a], k[c]) != k[E.K.mul(a, c)]:
                raise OmegaNotForced(f"kernel part of omega is not addition at ({a},{c})",
                                     witness=(a, c))
    for x, y in eq.pairs:
        if im(x, y) != T[k[P.q[x]]][y]:
            raise OmegaNotForced(f"omega differs from kq(x)+y at ({x},{y})", witness=(x, y))
    return P


def internal_monoid_structure(b):
    """mu_bar(gamma(x,k(a)+x), gamma(y,k(b)+y)) = gamma(x, k(a)+k(b)+x) on Eq(f_bar)."""
    E, Rm = b.E, b.RE.monoid
    T, k = E.X.table, E.k.map
    P = b.point
    _, _, eq = kernel_objects(P.f)
    val = {}
    for r in Rm.labels:
        a = b.re.witness(r)
        for s in Rm.labels:
            if E.f(r[0]) != E.f(s[0]):
                continue
            c = b.re.witness(s)
            key = (b.gamma_of(*r), b.gamma_of(*s))
            v = b.gamma_of(r[0], T[k[a]][T[k[c]][r[0]]])
            if val.setdefault(key, v) != v:
                raise NotWellDefined(f"mu_bar not well defined at {key}")
    mu = Hom(eq.monoid, P.B, [val[p] for p in eq.pairs])
    im = InternalMonoid(P.extension, eq, mu, P.s)
    bad = internal_monoid_violation(im)
    if bad is not None:
        raise CheckFailure(f"mu_bar fails {bad}")
    return im


def chasles_identities_ok(b, im=None):
    """gamma(x,x) is the unit over f(x) and gamma(x,y).gamma(y,z) = gamma(x,z)."""
    im = im or internal_monoid_structure(b)
    E = b.E
    for x in E.X.elements:
        if b.gamma_of(x, x) != b.point.s(E.f(x)):
            return False
    for (x, y, z) in b.chasles.P.labels:
        if im(b.gamma_of(x, y), b.gamma_of(y, z)) != b.gamma_of(x, z):
            return False
    return True


# --- direction on morphisms -------------------------------------------------------

def direction_on_morphism(alpha, src_bundle=None, dst_bundle=None):
    """d(alpha) as a morphism of points; its kernel part alpha1 is D(alpha)."""
    S, T = to_semimodule(alpha.src), to_semimodule(alpha.dst)
    if not is_semimodule_hom(alpha.alpha1, S, T):
        raise NotActionPreserving("alpha1 does not commute with the induced actions")
    if is_cc(alpha.src) and is_cc(alpha.dst):
        b1 = src_bundle or direction_bundle(alpha.src)
        b2 = dst_bundle or direction_bundle(alpha.dst)
        X2 = alpha.dst.X.table
        k2 = alpha.dst.k.map
        img = [None] * b1.df.order
        for r in b1.RE.monoid.labels:
            x = r[0]
            a = b1.re.witness(r)
            ax = alpha.alpha2(x)
            v = b2.gamma_of(ax, X2[k2[alpha.alpha1(a)]][ax])
            g = b1.gamma_of(*r)
            if img[g] is None:
                img[g] = v
            elif img[g] != v:
                raise NotWellDefined(f"d(alpha) not well defined on class {g}")
        return make_point_morphism(b1.point, b2.point, alpha.alpha1, Hom(b1.df, b2.df, img))
    P1, P2 = semidirect(S), semidirect(T)
    nM = S.M.order
    lam = Hom(P1.B, P2.B, [alpha.alpha1(x // nM) * nM + x % nM for x in P1.B.elements])
    return make_point_morphism(P1, P2, alpha.alpha1, lam)
