"""Brute-force reference computations written without the library's search code."""
import itertools

import numpy as np


def is_associative(t):
    n = len(t)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def monoid_classes_order3():
    """Monoids on {0, 1, 2} with identity 0, up to the swap of 1 and 2."""
    found = set()
    for vals in itertools.product(range(3), repeat=4):
        t = [[0, 1, 2], [1, vals[0], vals[1]], [2, vals[2], vals[3]]]
        if not is_associative(t):
            continue
        sw = [0, 2, 1]
        u = [[sw[t[sw[a]][sw[b]]] for b in range(3)] for a in range(3)]
        found.add(min(tuple(map(tuple, t)), tuple(map(tuple, u))))
    return found


def homs_brute(M, N):
    """All maps M -> N with 0 -> 0 that preserve the product."""
    out = []
    for img in itertools.product(range(len(N)), repeat=len(M) - 1):
        h = (0,) + img
        if all(h[M[a][b]] == N[h[a]][h[b]] for a in range(len(M)) for b in range(len(M))):
            out.append(h)
    return out


def fibre_tables(K, M, act):
    """Every monoid table on pairs (a, m), index a*|M| + m, with k(a) = (a, 0),
    f(a, m) = m, (a, 0) + (0, m) = (a, m) and (0, m) + (b, 0) = (act[m][b], m)."""
    nk, nm = len(K), len(M)
    n = nk * nm
    free = []
    base = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        a, m = divmod(x, nm)
        for y in range(n):
            b, p = divmod(y, nm)
            mp = M[m][p]
            if m == 0:
                base[x, y] = K[a][b] * nm + p
            else:
                free.append((x, y, mp))
    tables = []
    for choice in itertools.product(range(nk), repeat=len(free)):
        t = base.copy()
        for (x, y, mp), c in zip(free, choice):
            t[x, y] = c * nm + mp
        tables.append(t)
    T = np.array(tables)
    idx = np.arange(n)
    keep = np.ones(len(T), dtype=bool)
    for a in range(nk):
        for m in range(nm):
            keep &= T[:, a * nm, m] == a * nm + m
    for m in range(nm):
        for b in range(nk):
            keep &= T[:, m, b * nm] == act[m][b] * nm + m
    T = T[keep]
    r = np.arange(len(T))[:, None, None, None]
    left = T[r, T[:, :, :, None].repeat(n, 3), idx[None, None, None, :]]
    right = T[r, idx[None, :, None, None], T[:, None, :, :]]
    ok = (left == right).all(axis=(1, 2, 3))
    return [t for t in T[ok]]


def fibre_isomorphic(t1, t2, K, M):
    """Is there a hom (a, m) -> (a + c_m, m), c_0 = 0, c_m a unit, from t1 to t2?"""
    nk, nm = len(K), len(M)
    units = [u for u in range(nk) if any(K[u][v] == 0 for v in range(nk))]
    for cs in itertools.product(units, repeat=nm - 1):
        c = (0,) + cs
        h = [K[x // nm][c[x % nm]] * nm + x % nm for x in range(nk * nm)]
        if all(h[t1[x][y]] == t2[h[x]][h[y]] for x in range(nk * nm) for y in range(nk * nm)):
            return True
    return False


def classes(tables, K, M):
    reps = []
    for t in tables:
        if not any(fibre_isomorphic(t, r, K, M) for r in reps):
            reps.append(t)
    return reps


def isomorphic_brute(t1, t2):
    """Plain isomorphism test over every bijection fixing 0."""
    n = len(t1)
    if n != len(t2):
        return False
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        if all(p[t1[a][b]] == t2[p[a]][p[b]] for a in range(n) for b in range(n)):
            return True
    return False
