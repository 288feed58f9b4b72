"""Pushforward along semimodule maps, products of extensions, Baer sums,
crossed products and the classification of fibres."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .action import Semimodule, is_semimodule_hom, to_semimodule
from .errors import (BoundExceeded, CheckFailure, FactorizationHypothesisFails, FibreMismatch,
                     InvalidFactorSystem, MonoidError, NotActionPreserving)
from .extension import (Extension, ExtMorphism, ext_morphism_violation, make_ext_morphism,
                        make_extension)
from .finmon import (FiniteMonoid, Hom, UnionFind, associativity_violation, congruence_closure,
                     enumerate_homs, identity_hom, monoid_from_operation, partition_by, product,
                     pullback)
from .search import complete_tables

BRUTE_FORCE_BOUND = 8
FACTOR_SYSTEM_BOUND = 16


# --- products ---------------------------------------------------------------------

def product_ext(E1, E2):
    """K x K' >-> X x_M X' ->> M; the kernel is labelled by pairs (a, a')."""
    if E1.M != E2.M:
        raise MonoidError("extensions over different monoids")
    P, _, _ = pullback(E1.f, E2.f)
    KK, _, _ = product(E1.K, E2.K)
    k = Hom(KK, P, [P.index((E1.k(a), E2.k(b))) for (a, b) in KK.labels])
    f = Hom(P, E1.M, [E1.f(x) for (x, _) in P.labels])
    E = Extension(k, f, f"({E1.name})x({E2.name})")
    for m in E1.M.elements:
        if not E.is_representative(P.index((E1.u(m), E2.u(m)))):
            raise CheckFailure(f"paired base representatives fail over {m}")
    return E


# --- pushforward --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Pushforward:
    E: Extension
    alpha1: Hom
    target: Semimodule
    E2: Extension
    cocart: ExtMorphism


def _rho_key(E, alpha1, target):
    K2 = target.K.table
    q = E.schreier.q

    def key(a2, x):
        return K2[a2][alpha1(q[x])], E.f(x)
    return key


def pushforward(E, alpha1, target, check=True):
    """Pushforward of E along alpha1: D(E) -> target.

    The carrier is (K' x|_psi X)/rho with psi = eta' . f, and the class of (a', x)
    is keyed by (a' + alpha1(q(x)), f(x)); classes are indexed c*|M| + m.
    """
    S = to_semimodule(E)
    if alpha1.dom != E.K or alpha1.cod != target.K or target.M != E.M:
        raise MonoidError("alpha1 does not go from D(E) to the target semimodule")
    if alpha1.violation() is not None or not is_semimodule_hom(alpha1, S, target):
        raise NotActionPreserving("alpha1 is not a semimodule homomorphism")
    K2, X, M = target.K, E.X, E.M
    nM = M.order
    act = target.act
    key = _rho_key(E, alpha1, target)

    def op(p, r):
        (a, x), (b, y) = p, r
        return K2.table[a][act[E.f(x)][b]], X.table[x][y]

    def index(c, m):
        return c * nM + m

    reps = [(c, E.u(m)) for c in K2.elements for m in M.elements]
    table = [[index(*key(*op(p, r))) for r in reps] for p in reps]
    X2 = FiniteMonoid(table, "", [(c, m) for c in K2.elements for m in M.elements])
    k2 = Hom(K2, X2, [index(c, 0) for c in K2.elements])
    f2 = Hom(X2, M, [x % nM for x in X2.elements])
    alpha = Hom(X, X2, [index(*key(0, x)) for x in X.elements])
    if check:
        SD = monoid_from_operation([(a, x) for a in K2.elements for x in X.elements], op)
        bad = associativity_violation(SD.table)
        if bad is not None:
            raise CheckFailure(f"K' x|_psi X is not associative at {bad}")
        rho = partition_by(SD, lambda i: key(*SD.label(i)))
        gen = congruence_closure(SD, [(SD.index((alpha1(a), 0)), SD.index((0, E.k(a))))
                                      for a in E.K.elements])
        if gen != rho:
            raise CheckFailure("rho differs from the congruence generated by (alpha1(a),0)~(0,k(a))")
        cls = np.array([index(*key(*SD.label(i))) for i in SD.elements])
        if not np.array_equal(cls[SD.array], X2.array[np.ix_(cls, cls)]):
            raise CheckFailure("quotient table is not induced by the projection")
        E2 = make_extension(k2, f2, f"push({E.name})")
    else:
        E2 = Extension(k2, f2, f"push({E.name})")
    if to_semimodule(E2) != target:
        raise CheckFailure("D of the pushforward differs from the target semimodule")
    cocart = make_ext_morphism(E, E2, alpha1, alpha)
    return Pushforward(E, alpha1, target, E2, cocart)


def cocartesian_factorize(pf, lam, beta1, check=True):
    """The unique beta: E' -> F with beta . alpha = lam and kernel part beta1."""
    F = lam.dst
    if any(lam.alpha1(a) != beta1(pf.alpha1(a)) for a in pf.E.K.elements):
        raise FactorizationHypothesisFails("lambda1 != beta1 . alpha1")
    if beta1.dom != pf.target.K or not is_semimodule_hom(beta1, pf.target, to_semimodule(F)):
        raise NotActionPreserving("beta1 is not a semimodule homomorphism into D(F)")
    key = _rho_key(pf.E, pf.alpha1, pf.target)
    nM = pf.E.M.order
    FT = F.X.table

    def h(a2, x):
        return FT[F.k(beta1(a2))][lam.alpha2(x)]

    img = [None] * pf.E2.X.order
    pairs = ((a2, x) for a2 in pf.target.K.elements for x in pf.E.X.elements) if check else \
        ((c, pf.E.u(m)) for c in pf.target.K.elements for m in pf.E.M.elements)
    for a2, x in pairs:
        c, m = key(a2, x)
        i = c * nM + m
        v = h(a2, x)
        if img[i] is None:
            img[i] = v
        elif img[i] != v:
            raise CheckFailure("h(a', x) = l beta1(a') + lambda(x) is not constant on rho-classes")
    beta = make_ext_morphism(pf.E2, F, beta1, Hom(pf.E2.X, F.X, img))
    if beta.alpha2.after(pf.cocart.alpha2) != lam.alpha2:
        raise CheckFailure("beta . alpha != lambda")
    return beta


def factorization_count(pf, lam, beta1):
    """Number of extension morphisms E' -> F with kernel part beta1 and beta . alpha = lambda."""
    F = lam.dst
    allowed = [[y for y in F.X.elements if F.f(y) == pf.E2.f(x)] for x in pf.E2.X.elements]
    fixed = {pf.E2.k(a): F.k(beta1(a)) for a in pf.target.K.elements}
    for x in pf.E.X.elements:
        v = lam.alpha2(x)
        if fixed.setdefault(pf.cocart.alpha2(x), v) != v:
            return 0
    n = 0
    for b in enumerate_homs(pf.E2.X, F.X, fixed=fixed, allowed=allowed):
        if ext_morphism_violation(pf.E2, F, beta1, b) is None:
            n += 1
    return n


# --- Baer sum ---------------------------------------------------------------------------

def kernel_addition(K):
    KK, _, _ = product(K, K)
    return Hom(KK, K, [K.mul(a, b) for (a, b) in KK.labels])


def baer_sum(E1, E2, check=True):
    S1, S2 = to_semimodule(E1), to_semimodule(E2)
    if S1 != S2:
        raise FibreMismatch("extensions induce different semimodules")
    P = product_ext(E1, E2)
    return pushforward(P, kernel_addition(E1.K), S1, check=check).E2


# --- fibre isomorphisms -------------------------------------------------------------------

def fibre_iso(E1, E2):
    """A representative-preserving iso E1 -> E2 with alpha1 = id, or None.

    Such a map sends k(a) + u_m to k'(a + c_m) + u'_m for units c_m, c_0 = 0;
    all choices of c are tried in lexicographic order.
    """
    if E1.K != E2.K or E1.M != E2.M or E1.X.order != E2.X.order:
        return None
    K, M = E1.K, E1.M
    units = sorted(K.units)
    q1, f1 = E1.schreier.q, E1.f
    T2 = E2.X.table
    ident = identity_hom(K)
    for cs in itertools.product(units, repeat=M.order - 1):
        c = (0,) + cs
        img = [T2[E2.k(K.mul(q1[x], c[f1(x)]))][E2.u(f1(x))] for x in E1.X.elements]
        a2 = Hom(E1.X, E2.X, img)
        if a2.violation() is None and ext_morphism_violation(E1, E2, ident, a2) is None:
            return ExtMorphism(E1, E2, ident, a2)
    return None


# --- factor systems and crossed products ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class FactorSystem:
    S: Semimodule
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(tuple(int(v) for v in row) for row in self.g))

    def __eq__(self, other):
        return isinstance(other, FactorSystem) and self.S == other.S and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __add__(self, other):
        K = self.S.K
        return FactorSystem(self.S, [[K.mul(a, b) for a, b in zip(r, s)]
                                     for r, s in zip(self.g, other.g)])


def _crossed_table(K, M, act, g):
    nM = M.order
    labels = [(a, m) for a in K.elements for m in M.elements]
    KT, MT = K.table, M.table
    return [[KT[KT[a][act[m][b]]][g[m][n]] * nM + MT[m][n] for (b, n) in labels]
            for (a, m) in labels], labels


def factor_system_violation(S, g):
    K, M, act = S.K, S.M, S.act
    KT, MT = K.table, M.table
    if len(g) != M.order or any(len(r) != M.order for r in g):
        return "shape", None
    for m in M.elements:
        if g[0][m] != 0 or g[m][0] != 0:
            return "normalization", (m,)
    for m in M.elements:
        for n in M.elements:
            for p in M.elements:
                lhs = KT[act[m][g[n][p]]][g[m][MT[n][p]]]
                rhs = KT[g[m][n]][g[MT[m][n]][p]]
                if lhs != rhs:
                    return "cocycle", (m, n, p)
    for m in M.elements:
        for n in M.elements:
            for b in K.elements:
                if KT[g[m][n]][act[MT[m][n]][b]] != KT[act[m][act[n][b]]][g[m][n]]:
                    return "compatibility", (m, n, b)
    table, _ = _crossed_table(K, M, act, g)
    bad = associativity_violation(table)
    if bad is not None:
        return "associativity", bad
    return None


def make_factor_system(S, g):
    fs = FactorSystem(S, g)
    bad = factor_system_violation(S, fs.g)
    if bad is not None:
        raise InvalidFactorSystem(f"{bad[0]} fails at {bad[1]}", witness=bad)
    return fs


def zero_factor_system(S):
    return FactorSystem(S, [[0] * S.M.order for _ in S.M.elements])


def crossed_product_from_tables(K, M, act, g, name=""):
    """Extension on K x M with (a,m)+(b,m') = (a + act[m][b] + g[m][m'], mm'),
    (a, m) at index a*|M| + m. Associativity is the caller's responsibility."""
    table, labels = _crossed_table(K, M, act, g)
    X = FiniteMonoid(table, "", labels)
    nM = M.order
    k = Hom(K, X, [a * nM for a in K.elements])
    f = Hom(X, M, [x % nM for x in X.elements])
    return Extension(k, f, name)


def crossed_product(fs):
    bad = factor_system_violation(fs.S, fs.g)
    if bad is not None:
        raise InvalidFactorSystem(f"{bad[0]} fails at {bad[1]}", witness=bad)
    S = fs.S
    E = crossed_product_from_tables(S.K, S.M, S.act, fs.g, f"CP{list(map(list, fs.g))}")
    if any(E.u(m) != m for m in S.M.elements):
        raise CheckFailure("(0, m) is not the base representative")
    if to_semimodule(E) != S:
        raise CheckFailure("crossed product induces another semimodule")
    return E


def enumerate_factor_systems(S, bound=FACTOR_SYSTEM_BOUND):
    """All normalized factor systems for S, sorted lexicographically."""
    K, M, act = S.K, S.M, S.act
    if K.order * M.order > bound:
        raise BoundExceeded(f"|K||M| = {K.order * M.order} exceeds {bound}")
    KT, MT = K.table, M.table
    nonid = list(range(1, M.order))
    var_of = {(m, n): i for i, (m, n) in enumerate(itertools.product(nonid, nonid))}
    nvars = len(var_of)
    checks = [[] for _ in range(nvars)]
    for m, n, p in itertools.product(nonid, repeat=3):
        cells = [(n, p), (m, MT[n][p]), (m, n), (MT[m][n], p)]
        last = max((var_of[c] for c in cells if c in var_of), default=-1)
        checks[last].append((m, n, p))
    g = [[0] * M.order for _ in M.elements]
    cells = list(var_of)
    out = []

    def ok(m, n, p):
        return KT[act[m][g[n][p]]][g[m][MT[n][p]]] == KT[g[m][n]][g[MT[m][n]][p]]

    def rec(i):
        if i == nvars:
            out.append(tuple(tuple(r) for r in g))
            return
        m, n = cells[i]
        for v in K.elements:
            g[m][n] = v
            if all(ok(*t) for t in checks[i]):
                rec(i + 1)
        g[m][n] = 0

    rec(0)
    return [FactorSystem(S, t) for t in out]


def coboundary_shift(S, g, c):
    """g'(m,n) = g(m,n) + c(mn) - c(m) - m.c(n) for a normalized unit-valued c."""
    K, M, act = S.K, S.M, S.act
    KT, inv = K.table, K.inverses
    return tuple(tuple(KT[KT[KT[g[m][n]][c[M.mul(m, n)]]][inv[c[m]]]][inv[act[m][c[n]]]]
                       for n in M.elements) for m in M.elements)


def classify_factor_systems(S, bound=FACTOR_SYSTEM_BOUND):
    """Partition the factor systems of S into coboundary classes, least member first."""
    systems = [fs.g for fs in enumerate_factor_systems(S, bound)]
    index = {g: i for i, g in enumerate(systems)}
    uf = UnionFind(len(systems))
    units = sorted(S.K.units)
    shifts = [(0,) + c for c in itertools.product(units, repeat=S.M.order - 1)]
    for g in systems:
        for c in shifts:
            uf.union(index[g], index[coboundary_shift(S, g, c)])
    classes = {}
    for g in systems:
        classes.setdefault(uf.find(index[g]), []).append(g)
    return sorted(sorted(v) for v in classes.values())


def brute_force_tables(S):
    """All monoid tables on K x M with k(a) = (a,1), f = second coordinate, base reps
    (0, m) and induced action S."""
    K, M, act = S.K, S.M, S.act
    nM = M.order
    n = K.order * nM

    def ix(a, m):
        return a * nM + m
    fixed = {}
    for x in range(n):
        fixed[(0, x)] = x
        fixed[(x, 0)] = x
    for a in K.elements:
        for b in K.elements:
            fixed[(ix(a, 0), ix(b, 0))] = ix(K.mul(a, b), 0)
        for m in M.elements:
            fixed[(ix(a, 0), ix(0, m))] = ix(a, m)
            fixed[(ix(0, m), ix(a, 0))] = ix(act[m][a], m)
    domains = {}
    for x in range(n):
        for y in range(n):
            if (x, y) not in fixed:
                mn = M.mul(x % nM, y % nM)
                domains[(x, y)] = [ix(c, mn) for c in K.elements]
    return sorted(complete_tables(n, fixed, domains))


def _table_extension(S, table):
    K, M = S.K, S.M
    nM = M.order
    X = FiniteMonoid(table, "", [(a, m) for a in K.elements for m in M.elements])
    E = make_extension(Hom(K, X, [a * nM for a in K.elements]),
                       Hom(X, M, [x % nM for x in X.elements]))
    if any(E.u(m) != m for m in M.elements) or to_semimodule(E) != S:
        raise CheckFailure("brute-force table violates its prescribed shape")
    return E


def fiber_classify(S, mode="factor_system", bound=None):
    """Representatives of the fibre-isomorphism classes of extensions inducing S."""
    size = S.K.order * S.M.order
    if mode in ("factor_system", "fs"):
        bound = bound or FACTOR_SYSTEM_BOUND
        if size > bound:
            raise BoundExceeded(f"|K||M| = {size} exceeds {bound}")
        return [crossed_product(FactorSystem(S, cls[0])) for cls in classify_factor_systems(S, bound)]
    if mode in ("brute_force", "bf"):
        bound = bound or BRUTE_FORCE_BOUND
        if size > bound:
            raise BoundExceeded(f"|K||M| = {size} exceeds {bound}")
        reps = []
        for t in brute_force_tables(S):
            E = _table_extension(S, t)
            if not any(fibre_iso(E, R) is not None for R in reps):
                reps.append(E)
        return reps
    if mode == "both":
        fs = fiber_classify(S, "fs", bound)
        bf = fiber_classify(S, "bf", bound)
        if not modes_agree(fs, bf):
            raise CheckFailure("factor-system and brute-force classifications disagree")
        return fs
    raise MonoidError(f"unknown mode {mode!r}")


def modes_agree(fs, bf):
    if len(fs) != len(bf):
        return False
    for E in fs:
        if sum(fibre_iso(E, F) is not None for F in bf) != 1:
            return False
    return True


# --- cohomology monoid ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohomologyMonoid:
    S: Semimodule
    classes: tuple          # representative extensions
    factor_systems: tuple   # least factor system of each class
    table: tuple
    unit: int

    def as_monoid(self):
        return FiniteMonoid(self.table, "SExt")


def read_factor_system(E):
    """g(m, n) = q(u_m + u_n) relative to the base representatives of E."""
    T, u, q = E.X.table, E.u, E.schreier.q
    return tuple(tuple(q[T[u(m)][u(n)]] for n in E.M.elements) for m in E.M.elements)


def classify_by_iso(E, classes, hint=None):
    """Index of the unique class fibre-isomorphic to E; ``hint`` is tried first."""
    if hint is not None and fibre_iso(E, classes[hint]) is not None:
        return hint
    hits = [i for i, C in enumerate(classes) if fibre_iso(E, C) is not None]
    if len(hits) != 1:
        raise CheckFailure(f"extension matches {len(hits)} classes")
    return hits[0]


def cohomology_monoid(S, bound=FACTOR_SYSTEM_BOUND, check=True):
    """``check=False`` skips the rho congruence comparison inside each Baer sum."""
    groups = classify_factor_systems(S, bound)
    class_of = {g: i for i, grp in enumerate(groups) for g in grp}
    reps = [FactorSystem(S, grp[0]) for grp in groups]
    classes = [crossed_product(fs) for fs in reps]
    n = len(classes)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            B = baer_sum(classes[i], classes[j], check=check)
            c = classify_by_iso(B, classes, class_of.get(read_factor_system(B)))
            if c != class_of[(reps[i] + reps[j]).g]:
                raise CheckFailure("Baer sum disagrees with the sum of factor systems")
            table[i][j] = c
    if any(table[i][j] != table[j][i] for i in range(n) for j in range(n)):
        raise CheckFailure("Baer sum is not commutative on classes")
    unit = class_of[zero_factor_system(S).g]
    if unit != 0:
        raise CheckFailure("split class is not listed first")
    bad = associativity_violation(table)
    if bad is not None:
        raise CheckFailure(f"Baer sum is not associative on classes at {bad}")
    if any(table[unit][i] != i for i in range(n)):
        raise CheckFailure("split class is not a unit")
    return CohomologyMonoid(S, tuple(classes), tuple(fs.g for fs in reps),
                            tuple(tuple(r) for r in table), unit)
