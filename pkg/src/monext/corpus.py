"""Deterministic corpus of small monoids, extensions, semimodules, relations and
extension morphisms used by the statement checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .action import Semimodule
from .cofib import crossed_product_from_tables
from .errors import BoundExceeded
from .extension import ext_morphism_violation, ExtMorphism, kernel_extension
from .finmon import Relation, enumerate_homs, enumerate_monoids, MAX_ENUM_ORDER

MAX_CARRIER = 16


@dataclass(frozen=True)
class CorpusConfig:
    max_monoid_order: int = 5
    max_carrier_order: int = 8
    relation_base_order: int = 4   # all reflexive relations on monoids up to this order
    raw_order: int = 4             # kernel extensions of every surjection from monoids up to this order
    morphism_carrier: int = 6      # morphisms are enumerated between extensions this small
    morphism_base_order: int = 3
    morphism_exts_per_base: int = 12   # morphisms between all ordered pairs of this many extensions


def endomorphisms(K):
    return [h.map for h in enumerate_homs(K, K)]


def automorphisms(K):
    return [e for e in endomorphisms(K) if len(set(e)) == K.order]


def _invert(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return inv


def crossed_data(K, M):
    """All (eta, g) making K x M a crossed product: eta(m) endomorphisms with
    eta(1) = id, g normalized, associativity as constraints on the variables."""
    ends = endomorphisms(K)
    KT, MT = K.table, M.table
    nonid = list(range(1, M.order))
    eta_vars = nonid
    g_vars = list(itertools.product(nonid, nonid))
    order = [("eta", m) for m in eta_vars] + [("g", c) for c in g_vars]
    pos = {v: i for i, v in enumerate(order)}
    checks = [[] for _ in order]
    for m, n in itertools.product(nonid, nonid):
        for p in M.elements:
            mn, np_ = MT[m][n], MT[n][p]
            deps = [("eta", m), ("eta", n)]
            if mn:
                deps.append(("eta", mn))
            for cell in ((m, n), (mn, p), (n, p), (m, np_)):
                if cell in pos or ("g", cell) in pos:
                    deps.append(("g", cell))
            deps = [d for d in deps if d in pos]
            checks[max(pos[d] for d in deps)].append((m, n, p))
    ident = tuple(K.elements)
    eta = [ident] + [None] * len(nonid)
    g = [[0] * M.order for _ in M.elements]
    out = []

    def ok(m, n, p):
        mn = MT[m][n]
        lhs0 = g[m][n]
        r0 = KT[eta[m][g[n][p]]][g[m][MT[n][p]]]
        right_tail = r0
        left_tail = g[mn][p]
        em, en, emn = eta[m], eta[n], eta[mn]
        for c in K.elements:
            lhs = KT[KT[lhs0][emn[c]]][left_tail]
            rhs = KT[em[en[c]]][right_tail]
            if lhs != rhs:
                return False
        return True

    def rec(i):
        if i == len(order):
            out.append((tuple(eta), tuple(tuple(r) for r in g)))
            return
        kind, v = order[i]
        if kind == "eta":
            for e in ends:
                eta[v] = e
                if all(ok(*t) for t in checks[i]):
                    rec(i + 1)
            eta[v] = None
        else:
            m, n = v
            for a in K.elements:
                g[m][n] = a
                if all(ok(*t) for t in checks[i]):
                    rec(i + 1)
            g[m][n] = 0

    rec(0)
    return out


def _transform(K, M, eta, g, alpha, c):
    """(eta', g') of the crossed product obtained by relabelling along
    (a, m) -> (alpha(a) + c_m, m)."""
    KT, inv = K.table, K.inverses
    ainv = _invert(alpha)
    eta2 = tuple(tuple(alpha[e[ainv[b]]] for b in K.elements) for e in eta)
    g2 = tuple(tuple(KT[KT[KT[alpha[g[m][n]]][c[M.mul(m, n)]]][inv[c[m]]]][inv[eta2[m][c[n]]]]
                     for n in M.elements) for m in M.elements)
    return eta2, g2


def schreier_extensions(K, M):
    """One crossed product per isomorphism class (over M) of Schreier extensions of M by K."""
    auts = automorphisms(K)
    units = sorted(K.units)
    shifts = [(0,) + c for c in itertools.product(units, repeat=M.order - 1)]
    seen = set()
    reps = []
    for eta, g in crossed_data(K, M):
        if (eta, g) in seen:
            continue
        orbit = {_transform(K, M, eta, g, a, c) for a in auts for c in shifts}
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps)


def semimodules(K, M):
    """Actions of M on commutative K up to conjugation by automorphisms of K."""
    ends = endomorphisms(K)
    auts = automorphisms(K)
    MT = M.table
    found = []
    for choice in itertools.product(ends, repeat=M.order - 1):
        act = (tuple(K.elements),) + choice
        if all(act[MT[m][n]][a] == act[m][act[n][a]]
               for m in M.elements for n in M.elements for a in K.elements):
            found.append(act)
    seen, reps = set(), []
    for act in found:
        if act in seen:
            continue
        orbit = set()
        for al in auts:
            ainv = _invert(al)
            orbit.add(tuple(tuple(al[e[ainv[b]]] for b in K.elements) for e in act))
        seen |= orbit
        reps.append(min(orbit))
    return [Semimodule(M, K, act) for act in sorted(reps)]


def reflexive_relations(X):
    """Every reflexive relation on X that is a submonoid of X x X."""
    diag = [(x, x) for x in X.elements]
    off = [(x, y) for x in X.elements for y in X.elements if x != y]
    T = X.table
    out = []
    for mask in range(1 << len(off)):
        pairs = set(diag) | {off[i] for i in range(len(off)) if mask >> i & 1}
        if all((T[a][c], T[b][d]) in pairs for a, b in pairs for c, d in pairs):
            out.append(Relation(X, pairs))
    return out


def extension_morphisms(E1, E2, check_reps=True):
    """All morphisms E1 -> E2 over the identity of M; with ``check_reps=False`` every
    morphism of monoid extensions is returned, representative-preserving or not."""
    allowed = []
    kimg = set(E2.k.map)
    kset = set(E1.k.map)
    for x in E1.X.elements:
        fib = [y for y in E2.fibres[E1.f(x)]]
        if x in kset:
            fib = [y for y in fib if y in kimg]
        allowed.append(fib)
    kinv = {x: a for a, x in enumerate(E2.k.map)}
    out = []
    for a2 in enumerate_homs(E1.X, E2.X, allowed=allowed):
        a1 = type(a2)(E1.K, E2.K, [kinv[a2(E1.k(a))] for a in E1.K.elements])
        if ext_morphism_violation(E1, E2, a1, a2, check_reps=check_reps) is None:
            out.append(ExtMorphism(E1, E2, a1, a2))
    return out


@dataclass
class Corpus:
    config: CorpusConfig
    monoids: dict = field(default_factory=dict)
    extensions: list = field(default_factory=list)
    raw_extensions: list = field(default_factory=list)
    semimodules: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    morphisms: list = field(default_factory=list)
    raw_morphisms: list = field(default_factory=list)
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def all_monoids(self):
        return [M for n in sorted(self.monoids) for M in self.monoids[n]]

    def memo(self, key, fn):
        """Derived data shared between statement checks."""
        if key not in self.cache:
            self.cache[key] = fn()
        return self.cache[key]

    def bundle(self, E):
        from .direction import direction_bundle
        return self.memo(("bundle", id(E)), lambda: direction_bundle(E))


def empty_corpus():
    return Corpus(CorpusConfig(0, 0, 0, 0, 0, 0, 0))


def build_corpus(max_monoid_order=5, max_carrier_order=8, **overrides):
    cfg = CorpusConfig(max_monoid_order, max_carrier_order, **overrides)
    if max_monoid_order > MAX_ENUM_ORDER:
        raise BoundExceeded(f"monoid order bound is {MAX_ENUM_ORDER}")
    if max_carrier_order > MAX_CARRIER:
        raise BoundExceeded(f"carrier bound is {MAX_CARRIER}")
    C = Corpus(cfg)
    for n in range(1, max_monoid_order + 1):
        C.monoids[n] = enumerate_monoids(n)
    mons = C.all_monoids
    for M in mons:
        for K in mons:
            if not K.is_commutative or K.order * M.order > max_carrier_order:
                continue
            for i, (eta, g) in enumerate(schreier_extensions(K, M)):
                E = crossed_product_from_tables(K, M, eta, g, f"{K.name}>{M.name}#{i}")
                E.schreier  # cache
                C.extensions.append(E)
            C.semimodules.extend(semimodules(K, M))
    for X in mons:
        if X.order > cfg.raw_order:
            continue
        for M in mons:
            if M.order > X.order:
                continue
            for f in enumerate_homs(X, M, surjective_only=True):
                C.raw_extensions.append(kernel_extension(f, f"{X.name}->{M.name}:{list(f.map)}"))
    for X in mons:
        if X.order <= cfg.relation_base_order:
            C.relations.extend(reflexive_relations(X))
    by_base = {}
    for E in C.extensions:
        if E.X.order <= cfg.morphism_carrier and E.M.order <= cfg.morphism_base_order:
            by_base.setdefault(E.M, []).append(E)
    for M in sorted(by_base, key=lambda M: (M.order, M.name)):
        exts = sorted(by_base[M], key=lambda E: (E.X.order, E.name))[:cfg.morphism_exts_per_base]
        for E1, E2 in itertools.product(exts, exts):
            for mor in extension_morphisms(E1, E2, check_reps=False):
                C.raw_morphisms.append(mor)
                if ext_morphism_violation(E1, E2, mor.alpha1, mor.alpha2) is None:
                    C.morphisms.append(mor)
    return C
