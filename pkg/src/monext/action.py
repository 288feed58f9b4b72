"""Induced actions, semimodules, Schreier points, semidirect products,
S-reflexive relations and connectors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (AxiomA4Violation, AxiomViolation, CheckFailure, MonoidError,
                     NoRetraction, NotCentral, NotCommutative, NotKernel, NotSReflexive,
                     NotWellDefined, RetractionNotUnique)
from .extension import Extension
from .finmon import (FiniteMonoid, Hom, associativity_violation, composite, identity_hom,
                     submonoid)


@dataclass(frozen=True, eq=False)
class Semimodule:
    """Action table ``act[m][a]`` of M on a commutative monoid K."""
    M: FiniteMonoid
    K: FiniteMonoid
    act: tuple

    def __post_init__(self):
        object.__setattr__(self, "act", tuple(tuple(int(v) for v in row) for row in self.act))
        if len(self.act) != self.M.order or any(len(r) != self.K.order for r in self.act):
            raise MonoidError("action table has the wrong shape")

    def __call__(self, m, a):
        return self.act[m][a]

    def __eq__(self, other):
        return (isinstance(other, Semimodule) and self.M == other.M and self.K == other.K
                and self.act == other.act)

    def __hash__(self):
        return hash(self.act)

    def __repr__(self):
        return f"Semimodule(M={self.M.name or self.M.order}, K={self.K.name or self.K.order}, act={self.act})"

    @property
    def is_trivial(self):
        return all(row == tuple(self.K.elements) for row in self.act)


def action_violation(M, K, act, axioms=("A1", "A2", "A3", "A4")):
    """First axiom failure as (name, witness), or None."""
    Kt, Mt = K.table, M.table
    if "A1" in axioms:
        for a in K.elements:
            if act[0][a] != a:
                return "A1", (a,)
    if "A2" in axioms:
        for m in M.elements:
            if act[m][0] != 0:
                return "A2", (m,)
    if "A3" in axioms:
        for m in M.elements:
            row = act[m]
            for a in K.elements:
                for b in K.elements:
                    if row[Kt[a][b]] != Kt[row[a]][row[b]]:
                        return "A3", (m, a, b)
    if "A4" in axioms:
        for m in M.elements:
            for n in M.elements:
                mn = Mt[m][n]
                for a in K.elements:
                    if act[mn][a] != act[m][act[n][a]]:
                        return "A4", (m, n, a)
    return None


def make_semimodule(M, K, act):
    if not K.is_commutative:
        raise NotCommutative("semimodules need a commutative monoid K")
    S = Semimodule(M, K, act)
    bad = action_violation(M, K, S.act)
    if bad is not None:
        name, w = bad
        cls = AxiomA4Violation if name == "A4" else AxiomViolation
        raise cls(f"axiom {name} fails at {w}", witness=(name,) + w)
    return S


def trivial_action(M, K):
    return make_semimodule(M, K, [list(K.elements) for _ in M.elements])


def is_semimodule_hom(h, S, T):
    """Does h: S.K -> T.K commute with the actions (same M)?"""
    return S.M == T.M and all(h(S.act[m][a]) == T.act[m][h(a)]
                              for m in S.M.elements for a in S.K.elements)


# --- induced action of a Schreier extension ---------------------------------

def induced_pre_action(E):
    """m*a = q(u_m + k(a)); checked independent of the representative u_m chosen."""
    if not E.K.is_commutative:
        raise NotCommutative("induced action needs a commutative kernel")
    sd = E.schreier
    T, k = E.X.table, E.k.map
    act = []
    for m in E.M.elements:
        row = []
        for a in E.K.elements:
            vals = {E.decompose(T[v][k[a]], v) for v in sd.reps[m]}
            if len(vals) != 1:
                raise NotWellDefined(f"action value at ({m},{a}) depends on the representative",
                                     witness=(m, a))
            row.append(E.decompose(T[sd.base[m]][k[a]], sd.base[m]))
        act.append(row)
    return tuple(tuple(r) for r in act)


def to_semimodule(E):
    """The semimodule (K, eta) of E; raises AxiomA4Violation outside smod."""
    return make_semimodule(E.M, E.K, induced_pre_action(E))


def patrick_check(E):
    """x + k(a) = k(f(x)*a) + x for all x, a."""
    act = induced_pre_action(E)
    T, k = E.X.table, E.k.map
    return all(T[x][k[a]] == T[k[act[E.f(x)][a]]][x] for x in E.X.elements for a in E.K.elements)


# --- Schreier points ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SchreierPoint:
    k: Hom
    f: Hom
    s: Hom
    q: tuple

    @property
    def K(self):
        return self.k.dom

    @property
    def B(self):
        return self.k.cod

    @property
    def M(self):
        return self.f.cod

    def __repr__(self):
        return f"SchreierPoint(|K|={self.K.order}, |B|={self.B.order}, |M|={self.M.order})"

    @cached_property
    def extension(self):
        return Extension(self.k, self.f)


def make_point(k, f, s):
    """Validate a split extension and compute its unique Schreier retraction."""
    for h, label in ((k, "k"), (f, "f"), (s, "s")):
        bad = h.violation()
        if bad is not None:
            raise MonoidError(f"{label} is not a homomorphism at {bad}", witness=bad)
    B, M = f.dom, f.cod
    if any(f(s(m)) != m for m in M.elements):
        raise MonoidError("f.s is not the identity")
    if not k.is_injective or set(k.map) != {b for b in B.elements if f(b) == 0}:
        raise NotKernel("k is not a kernel of f")
    T = B.table
    sols = [[] for _ in B.elements]
    for m in M.elements:
        sm = s(m)
        for a in k.dom.elements:
            sols[T[k(a)][sm]].append(a)
    q = []
    for b in B.elements:
        if not sols[b]:
            raise NoRetraction(f"{b} is not of the form k(a) + s(f({b}))", witness=b)
        if len(sols[b]) > 1:
            raise RetractionNotUnique(f"{b} has decompositions {sols[b]}", witness=b)
        q.append(sols[b][0])
    return SchreierPoint(k, f, s, tuple(q))


def point_action(P):
    """m.a = q(s(m) + k(a)), validated as a semimodule."""
    T = P.B.table
    act = [[P.q[T[P.s(m)][P.k(a)]] for a in P.K.elements] for m in P.M.elements]
    return make_semimodule(P.M, P.K, act)


def semidirect(S):
    """Schreier point K x| M with (a,m)+(a',m') = (a + m.a', mm'); (a, m) has index a*|M|+m."""
    K, M = S.K, S.M
    nM = M.order
    labels = [(a, m) for a in K.elements for m in M.elements]
    table = [[K.table[a][S.act[m][b]] * nM + M.table[m][n] for (b, n) in labels]
             for (a, m) in labels]
    bad = associativity_violation(table)
    if bad is not None:
        raise AxiomViolation(f"semidirect table not associative at {bad}", witness=bad)
    B = FiniteMonoid(table, f"{K.name}x|{M.name}" if K.name and M.name else "", labels)
    k = Hom(K, B, [a * nM for a in K.elements])
    f = Hom(B, M, [x % nM for x in B.elements])
    s = Hom(M, B, list(M.elements))
    P = make_point(k, f, s)
    assert P.q == tuple(x // nM for x in B.elements)
    return P


@dataclass(frozen=True, eq=False)
class PointMorphism:
    src: SchreierPoint
    dst: SchreierPoint
    lam1: Hom
    lam: Hom

    @property
    def is_iso(self):
        return self.lam1.is_iso and self.lam.is_iso


def point_morphism_violation(src, dst, lam1, lam):
    for h in (lam1, lam):
        bad = h.violation()
        if bad is not None:
            return f"not a homomorphism at {bad}"
    if src.M != dst.M:
        return "different base monoids"
    if any(dst.k(lam1(a)) != lam(src.k(a)) for a in src.K.elements):
        return "kernel square fails"
    if any(dst.f(lam(b)) != src.f(b) for b in src.B.elements):
        return "projection square fails"
    if any(lam(src.s(m)) != dst.s(m) for m in src.M.elements):
        return "section square fails"
    return None


def make_point_morphism(src, dst, lam1, lam):
    bad = point_morphism_violation(src, dst, lam1, lam)
    if bad is not None:
        raise CheckFailure(bad)
    return PointMorphism(src, dst, lam1, lam)


def point_comparison(P, Q):
    """The map k(a)+s(m) -> k'(a)+s'(m) from P to Q (same K and M), if a point iso."""
    if P.K != Q.K or P.M != Q.M:
        return None
    TP = P.B.table
    TQ = Q.B.table
    img = [None] * P.B.order
    for a in P.K.elements:
        for m in P.M.elements:
            img[TP[P.k(a)][P.s(m)]] = TQ[Q.k(a)][Q.s(m)]
    lam = Hom(P.B, Q.B, img)
    if point_morphism_violation(P, Q, identity_hom(P.K), lam) is not None or not lam.is_iso:
        return None
    return PointMorphism(P, Q, identity_hom(P.K), lam)


def point_iso_semidirect(P):
    """phi(a, m) = k(a) + s(m) from the semidirect product of P's action onto P."""
    SD = semidirect(point_action(P))
    phi = point_comparison(SD, P)
    if phi is None:
        raise CheckFailure("semidirect comparison is not an isomorphism of points")
    return phi


# --- S-reflexive relations and connectors ------------------------------------

def relation_kernel(R):
    """Kernel of the first leg: pairs (0, y) of R, with its inclusion."""
    Rm = R.monoid
    return submonoid(Rm, [i for i, (x, _) in enumerate(Rm.labels) if x == 0])


def s_reflexive_check(R):
    """The Schreier point (k1, r1, delta) of a reflexive relation, or NotSReflexive."""
    if not R.is_reflexive:
        raise NotSReflexive("relation is not reflexive")
    K1, k1 = relation_kernel(R)
    try:
        P = make_point(k1, R.r1, R.delta)
    except (NoRetraction, RetractionNotUnique) as e:
        raise NotSReflexive(f"(r1, delta) is not a Schreier point: {e}",
                            witness=(type(e).__name__, R.monoid.label(e.witness))) from e
    if not R.is_transitive:
        raise CheckFailure("S-reflexive relation is not transitive")
    if R.is_symmetric != K1.is_group:
        raise CheckFailure("symmetry does not match the kernel being a group")
    return P


@dataclass(frozen=True, eq=False)
class Connector:
    R: object
    Rp: object
    composite: FiniteMonoid  # labels are the triples (x, y, z)
    p: Hom

    def __call__(self, x, y, z):
        return self.p(self.composite.index((x, y, z)))


def connector(R, Rp):
    """The connector p(x,y,z) = q'(y,z) + x, when the centrality criterion holds."""
    X = R.base
    T = X.table
    P = s_reflexive_check(Rp)
    Rpm = Rp.monoid

    def qp(y, z):  # retraction of (y, z), read as the element t of X with (0, t) in R'
        return Rpm.label(P.k(P.q[Rpm.index((y, z))]))[1]

    kernel = [Rpm.label(P.k(a))[1] for a in P.K.elements]
    for t in kernel:
        for x, y in R.pairs:
            if T[qp(y, T[y][t])][x] != T[x][t]:
                raise NotCentral(f"criterion fails at t={t}, (x,y)=({x},{y})", witness=(t, x, y))
    C = composite(R, Rp)
    p = Hom(C, X, [T[qp(y, z)][x] for (x, y, z) in C.labels])
    bad = p.violation()
    if bad is not None:
        raise CheckFailure(f"connector is not a homomorphism at {bad}")
    for (x, y, z) in C.labels:
        if x == y and p(C.index((x, y, z))) != z:
            raise CheckFailure("p(a,a,z) = z fails")
        if y == z and p(C.index((x, y, z))) != x:
            raise CheckFailure("p(b,y,y) = b fails")
    return Connector(R, Rp, C, p)
