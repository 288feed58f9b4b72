"""Finite monoids as multiplication tables: homs, congruences, quotients, limits,
isomorphism testing and enumeration up to isomorphism.

Element 0 is always the identity. Every constructor that builds a new monoid
from a set of labelled elements puts the identity first and keeps the given
order otherwise, so tables are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (BoundExceeded, MonoidError, NoIdentityAtZero, NotAssociative,
                     NotHom)
from .search import complete_tables

MAX_ENUM_ORDER = 6
MAX_CANON_ORDER = 8


def _freeze(table):
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """Monoid on 0..n-1 given by its table; ``table[a][b]`` is ``a*b``.

    Associativity is not re-checked here (derived constructions are trusted);
    use :func:`make_monoid` for untrusted tables.
    """
    table: tuple
    name: str = ""
    labels: tuple | None = None

    def __post_init__(self):
        t = _freeze(self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0:
            raise MonoidError("empty table")
        for row in t:
            if len(row) != n:
                raise MonoidError("table is not square")
            for v in row:
                if not 0 <= v < n:
                    raise MonoidError(f"entry {v} out of range 0..{n - 1}", witness=v)
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise NoIdentityAtZero(f"element 0 is not a two-sided identity (fails at {a})",
                                       witness=a)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != n:
                raise MonoidError("label count does not match order")

    def __eq__(self, other):
        return isinstance(other, FiniteMonoid) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteMonoid({self.name or '?'}, order={self.order})"

    def __len__(self):
        return len(self.table)

    @property
    def order(self):
        return len(self.table)

    @property
    def elements(self):
        return range(len(self.table))

    def mul(self, a, b):
        return self.table[a][b]

    def prod(self, *xs):
        acc = 0
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def label(self, i):
        return self.labels[i] if self.labels is not None else i

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label):
        return self._label_index[label]

    @cached_property
    def array(self):
        return np.array(self.table, dtype=np.int64)

    @cached_property
    def is_commutative(self):
        a = self.array
        return bool((a == a.T).all())

    @cached_property
    def is_cancellative(self):
        n = self.order
        return (all(len(set(row)) == n for row in self.table)
                and all(len(set(col)) == n for col in zip(*self.table)))

    @cached_property
    def inverses(self):
        """Two-sided inverse of each element, or -1."""
        out = []
        for a in self.elements:
            inv = -1
            for b in self.elements:
                if self.table[a][b] == 0 and self.table[b][a] == 0:
                    inv = b
                    break
            out.append(inv)
        return tuple(out)

    @cached_property
    def is_group(self):
        return all(i >= 0 for i in self.inverses)

    @cached_property
    def units(self):
        return frozenset(a for a, i in enumerate(self.inverses) if i >= 0)

    @cached_property
    def idempotents(self):
        return tuple(a for a in self.elements if self.table[a][a] == a)

    def inverse(self, a):
        i = self.inverses[a]
        if i < 0:
            raise MonoidError(f"element {a} is not a unit", witness=a)
        return i


def associativity_violation(table):
    """First triple (a, b, c) with (ab)c != a(bc), or None."""
    A = np.asarray(table, dtype=np.int64)
    n = A.shape[0]
    left = A[A]
    right = A[np.arange(n)[:, None, None], A[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def make_monoid(table, name=""):
    """Validated constructor: checks shape, identity at 0, then associativity."""
    M = FiniteMonoid(table, name)
    bad = associativity_violation(M.table)
    if bad is not None:
        raise NotAssociative(f"not associative at {bad}", witness=bad)
    return M


def monoid_from_operation(elements, op, name=""):
    """Monoid on a list of hashable elements (identity first) under ``op``."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise MonoidError("duplicate elements")
    table = []
    for x in elements:
        row = []
        for y in elements:
            z = op(x, y)
            if z not in index:
                raise MonoidError(f"{x!r}*{y!r} = {z!r} leaves the carrier", witness=(x, y))
            row.append(index[z])
        table.append(row)
    return FiniteMonoid(table, name, tuple(elements))


# --- standard monoids ------------------------------------------------------

def trivial():
    return FiniteMonoid(((0,),), "1")


def cyclic(n):
    return FiniteMonoid([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def m2():
    """Two-element monoid {e, z} with z absorbing."""
    return FiniteMonoid(((0, 1), (1, 1)), "M2", ("e", "z"))


def klein():
    return FiniteMonoid([[a ^ b for b in range(4)] for a in range(4)], "V4")


def symmetric3():
    perms = sorted(itertools.permutations(range(3)))

    def compose(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(3))
    return monoid_from_operation(perms, compose, "S3")


# --- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Hom:
    dom: FiniteMonoid
    cod: FiniteMonoid
    map: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.dom.order:
            raise MonoidError("map length does not match domain order")
        if any(not 0 <= v < self.cod.order for v in m):
            raise MonoidError("map value outside codomain")

    def __call__(self, x):
        return self.map[x]

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.map == other.map
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"Hom({self.dom.name or '?'}->{self.cod.name or '?'}, {list(self.map)})"

    def after(self, other):
        """Composite self . other."""
        if other.cod != self.dom:
            raise MonoidError("composition of non-composable homs")
        return Hom(other.dom, self.cod, tuple(self.map[v] for v in other.map))

    @property
    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self):
        return len(set(self.map)) == self.cod.order

    @property
    def is_iso(self):
        return self.is_injective and self.is_surjective

    def image(self):
        return tuple(sorted(set(self.map)))

    def inverse(self):
        if not self.is_iso:
            raise MonoidError("not a bijection")
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return Hom(self.cod, self.dom, inv)

    def violation(self):
        """First failing pair of the hom law, or None."""
        if self.map[0] != 0:
            return (0,)
        D, C, m = self.dom.table, self.cod.table, self.map
        for a in self.dom.elements:
            for b in self.dom.elements:
                if m[D[a][b]] != C[m[a]][m[b]]:
                    return (a, b)
        return None


def make_hom(dom, cod, mapping):
    h = Hom(dom, cod, mapping)
    bad = h.violation()
    if bad is not None:
        raise NotHom(f"not a homomorphism at {bad}", witness=bad)
    return h


def identity_hom(M):
    return Hom(M, M, tuple(M.elements))


def zero_hom(M, N):
    return Hom(M, N, (0,) * M.order)


# --- congruences and relations -------------------------------------------

class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True, eq=False)
class Congruence:
    base: FiniteMonoid
    classes: tuple

    def __post_init__(self):
        blocks = sorted(tuple(sorted(set(b))) for b in self.classes)
        object.__setattr__(self, "classes", tuple(blocks))
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(self.base.elements):
            raise MonoidError("classes do not partition the carrier")

    def __eq__(self, other):
        return (isinstance(other, Congruence) and self.base == other.base
                and self.classes == other.classes)

    def __hash__(self):
        return hash(self.classes)

    @cached_property
    def block(self):
        out = [0] * self.base.order
        for i, b in enumerate(self.classes):
            for x in b:
                out[x] = i
        return tuple(out)

    def related(self, a, b):
        return self.block[a] == self.block[b]

    def pairs(self):
        return frozenset((x, y) for b in self.classes for x in b for y in b)

    def refines(self, other):
        return all(other.related(b[0], x) for b in self.classes for x in b)

    def violation(self):
        """A failure of compatibility with the operation, or None."""
        T, blk = self.base.table, self.block
        for b in self.classes:
            a0 = b[0]
            for a in b[1:]:
                for c in self.base.elements:
                    if blk[T[a][c]] != blk[T[a0][c]]:
                        return (a0, a, c, "right")
                    if blk[T[c][a]] != blk[T[c][a0]]:
                        return (a0, a, c, "left")
        return None


def partition_by(M, key):
    """Partition of M's elements by the value of ``key`` (not checked for compatibility)."""
    groups = {}
    for x in M.elements:
        groups.setdefault(key(x), []).append(x)
    return Congruence(M, tuple(groups.values()))


def congruence_closure(M, generators):
    """Smallest congruence containing the generating pairs."""
    T = M.table
    uf = UnionFind(M.order)
    queue = [(a, b) for a, b in generators if uf.union(a, b)]
    while queue:
        a, b = queue.pop()
        for c in M.elements:
            for x, y in ((T[c][a], T[c][b]), (T[a][c], T[b][c])):
                if uf.union(x, y):
                    queue.append((x, y))
    return partition_by(M, uf.find)


def kernel_congruence(h):
    return partition_by(h.dom, h)


def quotient_by(M, c):
    """Quotient monoid (blocks ordered by least element) and the projection."""
    if c.base != M:
        raise MonoidError("congruence lives on another monoid")
    blk = c.block
    reps = [b[0] for b in c.classes]
    T = M.table
    table = [[blk[T[x][y]] for y in reps] for x in reps]
    Q = FiniteMonoid(table, f"{M.name}/~" if M.name else "", c.classes)
    return Q, Hom(M, Q, blk)


def factor_through(proj, h):
    """The unique hom g with g . proj = h, or None if h does not coequalize."""
    img = [None] * proj.cod.order
    for x in proj.dom.elements:
        b = proj(x)
        if img[b] is None:
            img[b] = h(x)
        elif img[b] != h(x):
            return None
    return Hom(proj.cod, h.cod, img)


@dataclass(frozen=True, eq=False)
class Relation:
    """Internal relation on ``base``: a submonoid of base x base, stored as pairs."""
    base: FiniteMonoid
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(set((int(x), int(y)) for x, y in self.pairs))))

    def __eq__(self, other):
        return isinstance(other, Relation) and self.base == other.base and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pair_set

    @cached_property
    def pair_set(self):
        return frozenset(self.pairs)

    @cached_property
    def monoid(self):
        T = self.base.table
        return monoid_from_operation(self.pairs, lambda p, q: (T[p[0]][q[0]], T[p[1]][q[1]]))

    def index(self, pair):
        return self.monoid.index(pair)

    @cached_property
    def r1(self):
        return Hom(self.monoid, self.base, tuple(p[0] for p in self.pairs))

    @cached_property
    def r2(self):
        return Hom(self.monoid, self.base, tuple(p[1] for p in self.pairs))

    @property
    def is_reflexive(self):
        return all((x, x) in self.pair_set for x in self.base.elements)

    @cached_property
    def delta(self):
        if not self.is_reflexive:
            raise MonoidError("relation is not reflexive")
        return Hom(self.base, self.monoid, tuple(self.index((x, x)) for x in self.base.elements))

    @property
    def is_symmetric(self):
        return all((y, x) in self.pair_set for x, y in self.pairs)

    @property
    def is_transitive(self):
        succ = {}
        for x, y in self.pairs:
            succ.setdefault(x, set()).add(y)
        return all((x, z) in self.pair_set for x, y in self.pairs for z in succ.get(y, ()))

    def is_submonoid(self):
        if (0, 0) not in self.pair_set:
            return False
        T = self.base.table
        return all((T[a][c], T[b][d]) in self.pair_set
                   for a, b in self.pairs for c, d in self.pairs)


def diagonal(M):
    return Relation(M, [(x, x) for x in M.elements])


def full_relation(M):
    return Relation(M, list(itertools.product(M.elements, repeat=2)))


def composite(R, S):
    """The object R x_X S of triples (x, y, z) with (x, y) in R and (y, z) in S."""
    succ = {}
    for y, z in S.pairs:
        succ.setdefault(y, []).append(z)
    triples = sorted((x, y, z) for x, y in R.pairs for z in succ.get(y, ()))
    T = R.base.table
    return monoid_from_operation(
        triples, lambda p, q: (T[p[0]][q[0]], T[p[1]][q[1]], T[p[2]][q[2]]))


# --- kernels, limits --------------------------------------------------------

def submonoid(M, elements):
    """Submonoid on a closed subset containing 0, with its inclusion."""
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise MonoidError("submonoid must contain the identity")
    S = monoid_from_operation(elems, M.mul)
    return S, Hom(S, M, elems)


def kernel_objects(f):
    """Kernel f^-1(0) with its inclusion, and the kernel pair Eq(f) as a relation."""
    K, k = submonoid(f.dom, [x for x in f.dom.elements if f(x) == 0])
    eq = Relation(f.dom, [(x, y) for x in f.dom.elements for y in f.dom.elements if f(x) == f(y)])
    return K, k, eq


def product(M, N):
    """Product with projections; the pair (a, b) has index a*|N| + b."""
    pairs = list(itertools.product(M.elements, N.elements))
    P = monoid_from_operation(pairs, lambda p, q: (M.mul(p[0], q[0]), N.mul(p[1], q[1])),
                              f"{M.name}x{N.name}" if M.name and N.name else "")
    return P, Hom(P, M, [p[0] for p in pairs]), Hom(P, N, [p[1] for p in pairs])


def pullback(f, g):
    """Pullback of f: M -> P and g: N -> P, elements sorted lexicographically."""
    M, N = f.dom, g.dom
    pairs = [(a, b) for a in M.elements for b in N.elements if f(a) == g(b)]
    P = monoid_from_operation(pairs, lambda p, q: (M.mul(p[0], q[0]), N.mul(p[1], q[1])))
    return P, Hom(P, M, [p[0] for p in pairs]), Hom(P, N, [p[1] for p in pairs])


def limits(M, N, f, g):
    return product(M, N), pullback(f, g)


# --- generating sets, hom search, isomorphism -------------------------------

def generated(M, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = M.table[x][g]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def generating_set(M, start=()):
    gens = [g for g in start if g != 0]
    closed = generated(M, gens)
    for x in M.elements:
        if x not in closed:
            gens.append(x)
            closed = generated(M, gens)
    return gens


def _closure_map(M, N, assign, allowed, injective):
    """Extend generator images to the generated submonoid; None on conflict."""
    Mt, Nt = M.table, N.table
    img = {0: 0}
    owner = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        ix = img[x]
        for g, h in assign:
            y = Mt[x][g]
            v = Nt[ix][h]
            w = img.get(y)
            if w is not None:
                if w != v:
                    return None
                continue
            if allowed is not None and v not in allowed[y]:
                return None
            if injective:
                if v in owner:
                    return None
                owner[v] = y
            img[y] = v
            order.append(y)
    return img


def _hom_search(M, N, fixed=None, allowed=None, injective=False, candidates=None):
    fixed = dict(fixed or {})
    if fixed.get(0, 0) != 0:
        return
    fixed.pop(0, None)
    gens = generating_set(M, start=sorted(fixed))
    seeds = [(x, fixed[x]) for x in sorted(fixed)]
    free = [g for g in gens if g not in fixed]
    if allowed is not None:
        allowed = [frozenset(a) for a in allowed]

    def rec(idx, assign):
        img = _closure_map(M, N, assign, allowed, injective)
        if img is None:
            return
        if idx == len(free):
            yield tuple(img[x] for x in M.elements)
            return
        g = free[idx]
        cands = candidates(g) if candidates is not None else N.elements
        for h in cands:
            if allowed is not None and h not in allowed[g]:
                continue
            yield from rec(idx + 1, assign + [(g, h)])

    yield from rec(0, seeds)


def enumerate_homs(M, N, surjective_only=False, fixed=None, allowed=None):
    """All homs M -> N, sorted by their map tables.

    ``fixed`` prescribes images of some elements; ``allowed[x]`` restricts the
    image of x.
    """
    out = []
    for m in _hom_search(M, N, fixed, allowed):
        if surjective_only and len(set(m)) != N.order:
            continue
        out.append(m)
    return [Hom(M, N, m) for m in sorted(set(out))]


def element_profile(M, x):
    """Isomorphism-invariant data attached to an element."""
    T = M.table
    seen = {}
    p, i = x, 1
    while p not in seen:
        seen[p] = i
        p = T[p][x]
        i += 1
    index, period = seen[p], i - seen[p]
    return (
        x == 0,
        T[x][x] == x,
        x in M.units,
        index,
        period,
        len(set(T[x])),
        len(set(T[y][x] for y in M.elements)),
        sum(T[x][y] == T[y][x] for y in M.elements),
        sum(T[x][y] == x for y in M.elements),
        sum(T[y][x] == x for y in M.elements),
        sum(T[y][y] == x for y in M.elements),
    )


def profiles(M):
    return tuple(element_profile(M, x) for x in M.elements)


def is_isomorphic(M, N):
    """An isomorphism M -> N (first in candidate order), or None."""
    if M.order != N.order or M.is_commutative != N.is_commutative:
        return None
    pm, pn = profiles(M), profiles(N)
    if sorted(pm) != sorted(pn):
        return None
    by_profile = {}
    for y, p in enumerate(pn):
        by_profile.setdefault(p, []).append(y)
    for m in _hom_search(M, N, injective=True, candidates=lambda g: by_profile[pm[g]]):
        return Hom(M, N, m)
    return None


# --- canonical forms and enumeration ----------------------------------------

def _relabel(table, sigma):
    """Table of the copy of ``table`` in which new label i stands for old sigma[i]."""
    pi = [0] * len(sigma)
    for new, old in enumerate(sigma):
        pi[old] = new
    return tuple(tuple(pi[table[sigma[i]][sigma[j]]] for j in range(len(sigma)))
                 for i in range(len(sigma)))


def canonical_form(M):
    """Lexicographically least relabelled table over all permutations fixing 0.

    Returns the canonical monoid and ``sigma`` with canonical element i = old sigma[i].
    """
    n = M.order
    if n > MAX_CANON_ORDER:
        raise BoundExceeded(f"canonical form limited to order {MAX_CANON_ORDER}")
    if n == 1:
        return FiniteMonoid(M.table, M.name), (0,)
    sig = np.array([(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.int64)
    pi = np.argsort(sig, axis=1)
    sub = M.array[sig[:, :, None], sig[:, None, :]].reshape(len(sig), -1)
    rel = np.take_along_axis(pi, sub, axis=1)
    best = np.lexsort(rel.T[::-1])[0]
    table = rel[best].reshape(n, n)
    return FiniteMonoid(table.tolist(), M.name), tuple(int(v) for v in sig[best])


def _invariant_key(table):
    """Cheap canonical key: least relabelling among those sorting elements by profile.

    This is an isomorphism invariant (isomorphic tables get equal keys) used to
    deduplicate before the exact canonical form is computed once per class.
    """
    M = FiniteMonoid(table)
    pm = profiles(M)
    groups = {}
    for x in range(1, M.order):
        groups.setdefault(pm[x], []).append(x)
    blocks = [groups[p] for p in sorted(groups)]
    best = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        sigma = [0] + [x for part in choice for x in part]
        t = _relabel(table, sigma)
        if best is None or t < best:
            best = t
    return best


def enumerate_monoids(n, bound=MAX_ENUM_ORDER):
    """One canonical representative per isomorphism class of monoids of order n,
    sorted by table."""
    if n < 1:
        raise MonoidError("order must be positive")
    if n > bound:
        raise BoundExceeded(f"enumeration bound is {bound}, asked for {n}", witness=n)
    if n == 1:
        return [trivial()]
    base = {(0, j): j for j in range(n)}
    base.update({(j, 0): j for j in range(n)})
    keys = set()
    # Only tables whose non-identity idempotents come first are generated; every
    # class has such a labelling.
    for n_idem in range(n):
        fixed = dict(base)
        domains = {}
        for x in range(1, n):
            if x <= n_idem:
                fixed[(x, x)] = x
            else:
                domains[(x, x)] = [v for v in range(n) if v != x]
        for t in complete_tables(n, fixed, domains):
            keys.add(_invariant_key(t))
    reps = sorted(canonical_form(FiniteMonoid(k))[0].table for k in keys)
    return [FiniteMonoid(t, f"Mon{n}.{i}") for i, t in enumerate(reps)]
