"""Monoid extensions K >-> X ->> M, representatives, and the Schreier retraction."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (MonoidError, NotInjective, NotKernel, NotSchreier, NotSurjective,
                     RepsNotPreserved, SquareFails)
from .finmon import (Hom, congruence_closure, identity_hom, kernel_objects, make_hom,
                     product, quotient_by, trivial)


@dataclass(frozen=True)
class SchreierData:
    reps: dict   # m -> tuple of representatives B_m
    base: dict   # m -> chosen u_m
    q: tuple     # x -> a with x = k(a) + u_{f(x)}


@dataclass(frozen=True, eq=False)
class Extension:
    k: Hom
    f: Hom
    name: str = ""

    @property
    def K(self):
        return self.k.dom

    @property
    def X(self):
        return self.k.cod

    @property
    def M(self):
        return self.f.cod

    def __repr__(self):
        return f"Extension({self.name or '?'}: |K|={self.K.order}, |X|={self.X.order}, |M|={self.M.order})"

    @cached_property
    def fibres(self):
        out = [[] for _ in self.M.elements]
        for x in self.X.elements:
            out[self.f(x)].append(x)
        return tuple(tuple(b) for b in out)

    def translate(self, u):
        """The map a -> k(a) + u as a tuple over K."""
        T, k = self.X.table, self.k.map
        return tuple(T[k[a]][u] for a in self.K.elements)

    def is_representative(self, u):
        fib = self.fibres[self.f(u)]
        img = self.translate(u)
        return len(set(img)) == len(img) == len(fib)

    @cached_property
    def _all_reps(self):
        return tuple(tuple(u for u in fib if self.is_representative(u)) for fib in self.fibres)

    def decompose(self, x, u):
        """The unique a with x = k(a) + u, for u a representative over f(x)."""
        return self._rep_inverse(u)[x]

    def _rep_inverse(self, u):
        cache = self.__dict__.setdefault("_inverse_cache", {})
        inv = cache.get(u)
        if inv is None:
            inv = {x: a for a, x in enumerate(self.translate(u))}
            cache[u] = inv
        return inv

    @cached_property
    def schreier(self):
        return compute_schreier(self)

    @property
    def is_schreier(self):
        return all(self._all_reps)

    def q(self, x):
        return self.schreier.q[x]

    def u(self, m):
        return self.schreier.base[m]


def make_extension(k, f, name=""):
    """Validated extension: k, f homs, k injective, f surjective, image(k) = f^-1(0)."""
    for h, label in ((k, "k"), (f, "f")):
        bad = h.violation()
        if bad is not None:
            raise MonoidError(f"{label} is not a homomorphism at {bad}", witness=bad)
    if k.cod != f.dom:
        raise MonoidError("k and f are not composable")
    if not k.is_injective:
        raise NotInjective("k is not injective")
    if not f.is_surjective:
        missing = next(m for m in f.cod.elements if m not in set(f.map))
        raise NotSurjective(f"f misses {missing}", witness=missing)
    if set(k.map) != {x for x in f.dom.elements if f(x) == 0}:
        raise NotKernel("image of k is not f^-1(0)")
    return Extension(k, f, name)


def representatives(E, m):
    return E._all_reps[m]


def compute_schreier(E):
    reps, base = {}, {}
    for m in E.M.elements:
        B = E._all_reps[m]
        if not B:
            raise NotSchreier(f"fibre over {m} has no representative", witness=m)
        reps[m] = B
        base[m] = 0 if m == 0 else B[0]
    q = tuple(E.decompose(x, base[E.f(x)]) for x in E.X.elements)
    return SchreierData(reps, base, q)


def retraction_q(E, x):
    return E.schreier.q[x]


@dataclass(frozen=True, eq=False)
class ExtMorphism:
    src: Extension
    dst: Extension
    alpha1: Hom
    alpha2: Hom

    def __eq__(self, other):
        return (isinstance(other, ExtMorphism) and self.alpha1 == other.alpha1
                and self.alpha2 == other.alpha2)

    def __hash__(self):
        return hash((self.alpha1.map, self.alpha2.map))

    def after(self, other):
        return ExtMorphism(other.src, self.dst, self.alpha1.after(other.alpha1),
                           self.alpha2.after(other.alpha2))

    @property
    def is_iso(self):
        return self.alpha1.is_iso and self.alpha2.is_iso


def ext_morphism_violation(src, dst, alpha1, alpha2, check_reps=True):
    """Reason the data fails to be a morphism of Schreier extensions, or None."""
    if src.M != dst.M:
        return SquareFails("extensions live over different monoids")
    for h, d, c, label in ((alpha1, src.K, dst.K, "alpha1"), (alpha2, src.X, dst.X, "alpha2")):
        if h.dom != d or h.cod != c:
            return MonoidError(f"{label} has the wrong domain or codomain")
        bad = h.violation()
        if bad is not None:
            return MonoidError(f"{label} is not a homomorphism at {bad}", witness=bad)
    for a in src.K.elements:
        if dst.k(alpha1(a)) != alpha2(src.k(a)):
            return SquareFails(f"square (a) fails at {a}", witness=("a", a))
    for x in src.X.elements:
        if dst.f(alpha2(x)) != src.f(x):
            return SquareFails(f"square (b) fails at {x}", witness=("b", x))
    if check_reps:
        for m in src.M.elements:
            if alpha2(src.u(m)) not in dst.schreier.reps[m]:
                return RepsNotPreserved(f"base representative over {m} not sent to a representative",
                                        witness=m)
    return None


def make_ext_morphism(src, dst, alpha1, alpha2):
    bad = ext_morphism_violation(src, dst, alpha1, alpha2)
    if bad is not None:
        raise bad
    return ExtMorphism(src, dst, alpha1, alpha2)


def identity_morphism(E):
    return ExtMorphism(E, E, identity_hom(E.K), identity_hom(E.X))


def cokernel_check(E):
    """Is f the cokernel of k, i.e. does collapsing k(K) to 0 give exactly the fibres of f?"""
    c = congruence_closure(E.X, [(E.k(a), 0) for a in E.K.elements])
    Q, proj = quotient_by(E.X, c)
    induced = [None] * Q.order
    for x in E.X.elements:
        b = proj(x)
        if induced[b] is None:
            induced[b] = E.f(x)
        elif induced[b] != E.f(x):
            return False
    h = Hom(Q, E.M, induced)
    return h.is_iso and h.violation() is None


# --- standard extensions ----------------------------------------------------

def product_extension(K, M):
    """K >-> K x M ->> M; the pair (a, m) has index a*|M| + m."""
    P, p1, p2 = product(K, M)
    k = Hom(K, P, [a * M.order for a in K.elements])
    return Extension(k, p2, f"Eprod({K.name},{M.name})")


def trivial_right(M):
    """0 >-> M = M."""
    O = trivial()
    return Extension(Hom(O, M, (0,)), identity_hom(M), f"Etriv({M.name})")


def trivial_left(M):
    """M = M ->> 0."""
    return Extension(identity_hom(M), Hom(M, trivial(), (0,) * M.order), f"Eleft({M.name})")


def group_extension(X, f):
    """Kernel extension of a surjective hom of groups."""
    if not (X.is_group and f.cod.is_group):
        raise MonoidError("group_ext needs groups")
    K, k, _ = kernel_objects(f)
    return make_extension(k, f, f"Egrp({X.name})")


def kernel_extension(f, name=""):
    """The extension f^-1(0) >-> X ->> M of a surjective hom."""
    K, k, _ = kernel_objects(f)
    return make_extension(k, f, name)


def std_constructors(name, **params):
    if name == "trivial_right":
        return trivial_right(params["M"])
    if name == "trivial_left":
        return trivial_left(params["M"])
    if name == "product":
        return product_extension(params["K"], params["M"])
    if name == "group_ext":
        return group_extension(params["X"], params["f"])
    raise MonoidError(f"unknown constructor {name!r}")


def s3_extension():
    """C3 >-> S3 ->> C2 with f the sign."""
    from .finmon import cyclic, symmetric3
    S3 = symmetric3()

    def sign(p):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return inv % 2
    f = make_hom(S3, cyclic(2), [sign(p) for p in S3.labels])
    E = group_extension(S3, f)
    return Extension(E.k, E.f, "ES3")


def multiplication_extension():
    """M2 x M2 ->> M2, (x, y) -> xy, with its (trivial) kernel."""
    from .finmon import m2
    M = m2()
    P, _, _ = product(M, M)
    f = make_hom(P, M, [M.mul(x, y) for x, y in P.labels])
    return kernel_extension(f, "Emul(M2)")
