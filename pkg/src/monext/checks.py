"""Registry of executable statement checks run exhaustively over a corpus.

Each check is a generator over its instances yielding ``(label, problem)``;
``problem`` is None when the instance passes and a short description otherwise.
"""
from __future__ import annotations

import itertools
import multiprocessing
import time
import traceback
from dataclasses import dataclass

from .action import (connector, is_semimodule_hom, make_point, point_action, point_comparison,
                     point_iso_semidirect, s_reflexive_check, semidirect, to_semimodule,
                     induced_pre_action, action_violation, patrick_check, Semimodule)
from .cofib import (baer_sum, cocartesian_factorize, cohomology_monoid, crossed_product,
                    enumerate_factor_systems, factorization_count, fiber_classify, fibre_iso,
                    modes_agree, product_ext, pushforward, BRUTE_FORCE_BOUND)
from .corpus import extension_morphisms
from .direction import (build_RE, build_chasles, chasles_identities_ok, chasles_membership_ok,
                        df_isomorphism, direction_on_morphism, gamma_kernel_pair_is_tau,
                        internal_monoid_structure, internal_monoid_to_point,
                        internal_monoid_violation, is_cc, joint_extremal_epi_check,
                        point_to_internal_monoid, re_is_coequalizer, self_connector)
from .errors import AxiomViolation, MonoidError, NotCentral, NotSchreier, NotSReflexive, OmegaNotForced
from .extension import (ExtMorphism, Extension, cokernel_check, ext_morphism_violation,
                        identity_morphism, make_extension, trivial_right)
from .finmon import Hom, Relation, enumerate_homs, kernel_objects, product, submonoid


@dataclass(frozen=True)
class StatementCheck:
    id: str
    title: str
    scope: str
    run: object


@dataclass
class CheckResult:
    id: str
    title: str
    scope: str
    instances: int
    status: str            # "pass", "fail" or "empty"
    counterexample: dict | None
    seconds: float

    def as_dict(self, timing=True):
        d = {"id": self.id, "title": self.title, "scope": self.scope,
             "instances": self.instances, "status": self.status,
             "counterexample": self.counterexample}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


REGISTRY = []


def statement(id, title, scope):
    def wrap(fn):
        REGISTRY.append(StatementCheck(id, title, scope, fn))
        return fn
    return wrap


def registry_ids():
    return [c.id for c in REGISTRY]


# --- corpus views ------------------------------------------------------------------

def schreier_exts(C):
    def build():
        return list(C.extensions) + [E for E in C.raw_extensions if E.is_schreier]
    return C.memo("schreier", build)


def commutative_exts(C):
    return C.memo("commutative", lambda: [E for E in schreier_exts(C) if E.K.is_commutative])


def smod_exts(C):
    def build():
        out = []
        for E in commutative_exts(C):
            try:
                to_semimodule(E)
            except AxiomViolation:
                continue
            out.append(E)
        return out
    return C.memo("smod", build)


def cc_exts(C):
    return C.memo("cc", lambda: [E for E in schreier_exts(C) if is_cc(E)])


def semidirect_points(C):
    return C.memo("sd-points", lambda: [(repr(S), semidirect(S)) for S in C.semimodules])


def all_points(C):
    """Schreier points from semidirect products, R_E, df and S-reflexive relations."""
    def build():
        pts = list(semidirect_points(C))
        for E in cc_exts(C):
            b = C.bundle(E)
            pts.append((f"R_E({E.name})", b.re.point))
            pts.append((f"df({E.name})", b.point))
        for i, R in enumerate(C.relations):
            try:
                pts.append((f"rel{i}", s_reflexive_check(R)))
            except NotSReflexive:
                pass
        return pts
    return C.memo("points", build)


def commutative_points(C):
    return [(n, P) for n, P in all_points(C) if P.K.is_commutative]


def morphisms_between(C, pred):
    return [a for a in C.morphisms if pred(a.src) and pred(a.dst)]


def cc_morphisms(C):
    return C.memo("cc-mor", lambda: morphisms_between(C, is_cc))


def smod_morphisms(C):
    ids = {id(E) for E in smod_exts(C)}
    return C.memo("smod-mor", lambda: [a for a in C.morphisms
                                       if id(a.src) in ids and id(a.dst) in ids])


def mlabel(a):
    return f"{a.src.name}->{a.dst.name}:{list(a.alpha2.map)}"


def q_at(E, x, u):
    return E.decompose(x, u)


# --- extensions and representatives ------------------------------------------------

@statement("S2-rep-unique", "k(a)+u = k(a')+u forces a = a' for every representative u",
           "Schreier extensions")
def check_rep_unique(C):
    for E in schreier_exts(C):
        sd = E.schreier
        bad = None
        for m in E.M.elements:
            fib = set(E.fibres[m])
            for u in sd.reps[m]:
                img = E.translate(u)
                if len(set(img)) != len(img) or set(img) != fib:
                    bad = f"u={u} over m={m}"
                    break
            if bad:
                break
        yield E.name, bad


@statement("S2-rep-units", "two representatives of m differ by a unique unit of K",
           "Schreier extensions")
def check_rep_units(C):
    for E in schreier_exts(C):
        T, k = E.X.table, E.k.map
        units = set(E.K.units)
        bad = None
        for m in E.M.elements:
            for u, v in itertools.product(E.schreier.reps[m], repeat=2):
                sols = [a for a in E.K.elements if T[k[a]][v] == u]
                if len(sols) != 1 or sols[0] not in units:
                    bad = f"u={u}, v={v}: solutions {sols}"
                    break
            if bad:
                break
        yield E.name, bad


@statement("S2-rep-closure", "a unit translate k(a)+u of a representative is a representative",
           "Schreier extensions")
def check_rep_closure(C):
    for E in schreier_exts(C):
        T, k = E.X.table, E.k.map
        bad = None
        for m in E.M.elements:
            reps = set(E.schreier.reps[m])
            for u in reps:
                for a in E.K.units:
                    if T[k[a]][u] not in reps:
                        bad = f"k({a})+{u} is not a representative"
        yield E.name, bad


@statement("S2-group-B", "a -> k(a)+u is a bijection U(K) -> B_m, so all B_m have |U(K)| elements",
           "Schreier extensions")
def check_group_B(C):
    for E in schreier_exts(C):
        T, k = E.X.table, E.k.map
        units = E.K.units
        bad = None
        for m in E.M.elements:
            reps = E.schreier.reps[m]
            for u in reps:
                img = [T[k[a]][u] for a in units]
                if len(set(img)) != len(units) or set(img) != set(reps):
                    bad = f"theta at m={m}, u={u} is not a bijection onto B_m"
        yield E.name, bad


@statement("S2-retraction-1", "q_{1,0} k = id_K", "Schreier extensions")
def check_retraction_1(C):
    for E in schreier_exts(C):
        q = E.schreier.q
        bad = next((a for a in E.K.elements
                    if q_at(E, E.k(a), 0) != a or q[E.k(a)] != a), None)
        yield E.name, None if bad is None else f"fails at a={bad}"


@statement("S2-retraction-2", "q_{f(u),u}(u) = 0 for every representative u", "Schreier extensions")
def check_retraction_2(C):
    for E in schreier_exts(C):
        sd = E.schreier
        bad = next((u for m in E.M.elements for u in sd.reps[m] if q_at(E, u, u) != 0), None)
        if bad is None and any(sd.q[sd.base[m]] != 0 for m in E.M.elements):
            bad = "cached retraction at a base representative"
        yield E.name, None if bad is None else f"fails at u={bad}"


@statement("S2-retraction-3", "u + k(a) = k q_{f(u),u}(u + k(a)) + u", "Schreier extensions")
def check_retraction_3(C):
    for E in schreier_exts(C):
        T, k = E.X.table, E.k.map
        bad = None
        for m in E.M.elements:
            for u in E.schreier.reps[m]:
                for a in E.K.elements:
                    x = T[u][k[a]]
                    if T[k[q_at(E, x, u)]][u] != x:
                        bad = f"u={u}, a={a}"
        yield E.name, bad


@statement("S2-retraction-4", "q(x) + q(x') = q(k q(x) + x') for all choices of representatives",
           "Schreier extensions")
def check_retraction_4(C):
    for E in schreier_exts(C):
        T, k, K = E.X.table, E.k.map, E.K
        sd = E.schreier
        bad = None
        for x, x2 in itertools.product(E.X.elements, repeat=2):
            if sd.q[x] != q_at(E, x, sd.base[E.f(x)]):
                bad = f"cached retraction wrong at x={x}"
                break
            if K.mul(sd.q[x], sd.q[x2]) != sd.q[T[k[sd.q[x]]][x2]]:
                bad = f"base representatives, x={x}, x'={x2}"
                break
            for u in sd.reps[E.f(x)]:
                qx = q_at(E, x, u)
                for u2 in sd.reps[E.f(x2)]:
                    if K.mul(qx, q_at(E, x2, u2)) != q_at(E, T[k[qx]][x2], u2):
                        bad = f"x={x}, x'={x2}, u={u}, u'={u2}"
                        break
                if bad:
                    break
            if bad:
                break
        yield E.name, bad


@statement("S2-group-kernel", "B(E) = X iff B_1 = Ker(f) iff K is a group", "Schreier extensions")
def check_group_kernel(C):
    for E in schreier_exts(C):
        reps = E.schreier.reps
        all_reps = all(len(reps[m]) == len(E.fibres[m]) for m in E.M.elements)
        b1 = set(reps[0]) == set(E.fibres[0])
        grp = E.K.is_group
        yield E.name, None if all_reps == b1 == grp else f"({all_reps}, {b1}, {grp})"


@statement("S2-cokernel", "f is a cokernel of k", "Schreier extensions")
def check_cokernel(C):
    for E in schreier_exts(C):
        yield E.name, None if cokernel_check(E) else "collapsing k(K) does not give f"


@statement("S2-rep-preservation",
           "a morphism sending one representative of m to a representative sends all of them",
           "monoid-extension morphisms between sampled extensions")
def check_rep_preservation(C):
    for a in C.raw_morphisms:
        bad = None
        for m in a.src.M.elements:
            hits = {a.alpha2(v) in a.dst.schreier.reps[m] for v in a.src.schreier.reps[m]}
            if len(hits) != 1:
                bad = f"mixed behaviour over m={m}"
        yield mlabel(a), bad


@statement("S2-short-five", "alpha1, alpha3 injective (surjective) imply alpha2 injective (surjective)",
           "morphisms of Schreier extensions")
def check_short_five(C):
    for a in C.morphisms:
        bad = None
        if a.alpha1.is_injective and not a.alpha2.is_injective:
            bad = "alpha1 injective, alpha2 not"
        if a.alpha1.is_surjective and not a.alpha2.is_surjective:
            bad = "alpha1 surjective, alpha2 not"
        yield mlabel(a), bad


# --- induced actions -----------------------------------------------------------------

@statement("S3-action-well-defined", "m*a does not depend on the representative of m",
           "Schreier extensions with commutative kernel")
def check_action_well_defined(C):
    for E in commutative_exts(C):
        T, k = E.X.table, E.k.map
        bad = None
        for m in E.M.elements:
            for a in E.K.elements:
                vals = {q_at(E, T[u][k[a]], u) for u in E.schreier.reps[m]}
                if len(vals) != 1:
                    bad = f"m={m}, a={a}: values {sorted(vals)}"
        if bad is None:
            induced_pre_action(E)
        yield E.name, bad


@statement("S3-axioms", "the induced action satisfies A1-A3, and A4 when K is cancellative",
           "Schreier extensions with commutative kernel")
def check_axioms(C):
    for E in commutative_exts(C):
        act = induced_pre_action(E)
        axioms = ("A1", "A2", "A3", "A4") if E.K.is_cancellative else ("A1", "A2", "A3")
        bad = action_violation(E.M, E.K, act, axioms)
        yield E.name, None if bad is None else f"{bad[0]} at {bad[1]}"


@statement("S3-patrick", "x + k(a) = k(f(x)*a) + x", "Schreier extensions with commutative kernel")
def check_patrick(C):
    for E in commutative_exts(C):
        yield E.name, None if patrick_check(E) else "identity fails"


# --- Schreier points, S-reflexive relations, connectors ------------------------------

def _point_retraction_law(C, item):
    for name, P in all_points(C):
        T, q = P.B.table, P.q
        k, s, f = P.k, P.s, P.f
        bad = None
        if item == 1:
            bad = next((a for a in P.K.elements if q[k(a)] != a), None)
        elif item == 2:
            bad = next((m for m in P.M.elements if q[s(m)] != 0), None)
        elif item == 3:
            for m in P.M.elements:
                for a in P.K.elements:
                    x = T[s(m)][k(a)]
                    if T[k(q[x])][s(m)] != x:
                        bad = (m, a)
        else:
            for b, b2 in itertools.product(P.B.elements, repeat=2):
                if q[T[b][b2]] != P.K.mul(q[b], q[T[s(f(b))][k(q[b2])]]):
                    bad = (b, b2)
                    break
        yield name, None if bad is None else f"fails at {bad}"


@statement("S4-point-retraction-1", "qk = id_K on Schreier points", "Schreier points")
def check_point_retraction_1(C):
    yield from _point_retraction_law(C, 1)


@statement("S4-point-retraction-2", "qs = 0 on Schreier points", "Schreier points")
def check_point_retraction_2(C):
    yield from _point_retraction_law(C, 2)


@statement("S4-point-retraction-3", "kq(s(m)+k(a)) + s(m) = s(m) + k(a)", "Schreier points")
def check_point_retraction_3(C):
    yield from _point_retraction_law(C, 3)


@statement("S4-point-retraction-4", "q(b+b') = q(b) + q(sf(b) + kq(b'))", "Schreier points")
def check_point_retraction_4(C):
    yield from _point_retraction_law(C, 4)


@statement("S4-point-action", "m.a = q(s(m)+k(a)) is an action and B is K x| M over it",
           "semimodules and Schreier points")
def check_point_action(C):
    for S, (name, P) in zip(C.semimodules, semidirect_points(C)):
        yield name, None if point_action(P) == S else "action of the semidirect point differs"
    for name, P in all_points(C):
        if P.K.is_commutative:
            point_iso_semidirect(P)
            yield name, None


@statement("S4-s-reflexive", "an S-reflexive relation is transitive; symmetric iff its kernel is a group",
           "reflexive relations on small monoids")
def check_s_reflexive(C):
    for i, R in enumerate(C.relations):
        try:
            P = s_reflexive_check(R)
        except NotSReflexive:
            continue
        bad = None
        if not R.is_transitive:
            bad = "not transitive"
        elif R.is_symmetric != P.K.is_group:
            bad = "symmetry does not match the kernel being a group"
        yield f"rel{i}:{sorted(R.pairs)}", bad


def _connector_candidates(R, Rp):
    """Every hom p on R x_X R' with p(x,x,z) = z and p(x,y,y) = x."""
    from .finmon import composite
    Cm = composite(R, Rp)
    fixed = {}
    for i, (x, y, z) in enumerate(Cm.labels):
        for cond, v in ((x == y, z), (y == z, x)):
            if cond and fixed.setdefault(i, v) != v:
                return Cm, []
    return Cm, list(enumerate_homs(Cm, R.base, fixed=fixed))


@statement("S4-connector-criterion",
           "R and an S-reflexive R' admit a connector iff the retraction criterion holds; it is unique",
           "pairs of reflexive relations on monoids of order <= 4")
def check_connector_criterion(C):
    by_base = {}
    for R in C.relations:
        by_base.setdefault(R.base, []).append(R)
    for X, rels in by_base.items():
        sref = []
        for R in rels:
            try:
                s_reflexive_check(R)
                sref.append(R)
            except NotSReflexive:
                pass
        for R, Rp in itertools.product(rels, sref):
            try:
                con = connector(R, Rp)
            except NotCentral:
                con = None
            Cm, cands = _connector_candidates(R, Rp)
            label = f"{X.name}:{sorted(R.pairs)}|{sorted(Rp.pairs)}"
            if con is None:
                yield label, None if not cands else "criterion fails but a connector exists"
            elif len(cands) != 1:
                yield label, f"{len(cands)} connectors found"
            else:
                yield label, None if cands[0].map == con.p.map else "connector differs from q'(y,z)+x"


# --- the relation R_E and the Chasles relation ---------------------------------------

def re_data(C, E):
    if is_cc(E):
        return C.bundle(E).re
    return C.memo(("re", id(E)), lambda: build_RE(E))


@statement("S5-coequalizer", "f is a coequalizer of r1, r2: R_E -> X",
           "Schreier extensions with commutative kernel")
def check_coequalizer(C):
    for E in commutative_exts(C):
        yield E.name, None if re_is_coequalizer(E, re_data(C, E).relation) else "generated congruence is not Eq(f)"


@statement("S5-joint-extremal-epi", "j and k2 are jointly extremal epimorphic into Eq(f)",
           "Schreier extensions with commutative kernel")
def check_joint_epi(C):
    for E in commutative_exts(C):
        yield E.name, None if joint_extremal_epi_check(E, re_data(C, E).relation) else "decomposition fails"


@statement("S5-symmetry", "k2 factors through j iff j is iso iff R_E symmetric iff K is a group",
           "Schreier extensions with commutative kernel")
def check_symmetry(C):
    for E in commutative_exts(C):
        R = re_data(C, E).relation
        _, _, eq = kernel_objects(E.f)
        c1 = all((E.k(a), 0) in R for a in E.K.elements)
        c2 = R == eq
        c3 = R.is_symmetric
        c4 = E.K.is_group
        yield E.name, None if c1 == c2 == c3 == c4 else f"({c1}, {c2}, {c3}, {c4})"


@statement("S5-unique-witness", "every (x, y) in R_E has y = k(a) + x for a unique a",
           "cc-Schreier extensions")
def check_unique_witness(C):
    for E in cc_exts(C):
        wit = re_data(C, E).witnesses
        bad = next((p for p, w in wit.items() if len(w) != 1), None)
        yield E.name, None if bad is None else f"pair {bad} has witnesses {wit[bad]}"


@statement("S5-RE-point", "(k1 = <0,k>, r1, s0) is a Schreier point on R_E", "cc-Schreier extensions")
def check_re_point(C):
    for E in cc_exts(C):
        yield E.name, None if re_data(C, E).point is not None else "no point structure"


@statement("S5-relation-on-E", "R_E is a relation on E in SExt_M with kernel K x K",
           "cc-Schreier extensions")
def check_relation_on_E(C):
    for E in cc_exts(C):
        R = re_data(C, E).relation
        Rm = R.monoid
        KK, p1, _ = product(E.K, E.K)
        T, k = E.X.table, E.k.map
        khat = Hom(KK, Rm, [Rm.index((k[a], T[k[b]][k[a]])) for (a, b) in KK.labels])
        fr = Hom(Rm, E.M, [E.f(x) for (x, _) in Rm.labels])
        bad = None
        try:
            Ebar = make_extension(khat, fr)
            for m in E.M.elements:
                u = E.u(m)
                if Rm.index((u, u)) not in Ebar.schreier.reps[m]:
                    bad = f"(u_m, u_m) is not a representative over {m}"
            plus = Hom(KK, E.K, [E.K.mul(a, b) for (a, b) in KK.labels])
            for a1, a2 in ((p1, R.r1), (plus, R.r2)):
                err = ext_morphism_violation(Ebar, E, a1, a2)
                if err is not None:
                    bad = f"leg is not a morphism: {err}"
            if len({(p1(i), plus(i)) for i in KK.elements}) != KK.order:
                bad = "p1 and + are not jointly monic"
        except (MonoidError, NotSchreier) as e:
            bad = f"{type(e).__name__}: {e}"
        yield E.name, bad


@statement("S5-self-central", "R_E is self-centralizing, with connector p(x,y,z) = k(b) + x for z = k(b) + y",
           "cc-Schreier extensions")
def check_self_central(C):
    for E in cc_exts(C):
        con = self_connector(E)
        re = re_data(C, E)
        T, k = E.X.table, E.k.map
        bad = next(((x, y, z) for (x, y, z) in con.composite.labels
                    if con(x, y, z) != T[k[re.witness((y, z))]][x]), None)
        yield E.name, None if bad is None else f"connector differs at {bad}"


@statement("S5-chasles-point", "(kappa1, pi1, sigma0) is a Schreier point; Ch_E is S-reflexive",
           "cc-Schreier extensions")
def check_chasles_point(C):
    for E in cc_exts(C):
        b = C.bundle(E)
        ch = b.chasles.relation
        bad = None
        if not (ch.is_reflexive and ch.is_transitive):
            bad = "Ch_E is not reflexive and transitive"
        elif not chasles_membership_ok(b):
            bad = "membership differs from a = b and (x, y) in R_E"
        else:
            s_reflexive_check(ch)
        yield E.name, bad


@statement("S5-chasles-symmetry", "Ch_E symmetric iff R_E symmetric iff K is a group",
           "cc-Schreier extensions")
def check_chasles_symmetry(C):
    for E in cc_exts(C):
        b = C.bundle(E)
        vals = (b.chasles.relation.is_symmetric, b.RE.is_symmetric, E.K.is_group)
        yield E.name, None if len(set(vals)) == 1 else f"{vals}"


# --- direction -----------------------------------------------------------------------------

@statement("S6-gamma-kernel-pair", "the kernel pair of gamma is tau", "cc-Schreier extensions")
def check_gamma_kernel_pair(C):
    for E in cc_exts(C):
        yield E.name, None if gamma_kernel_pair_is_tau(C.bundle(E)) else "kernel pair differs from tau"


@statement("S6-gamma-fibrewise",
           "gamma(x,k(a)+x) = gamma(y,k(a)+y) on Eq(f), and gamma(x,k(a)+x) = gamma(x,k(b)+x) iff a = b",
           "cc-Schreier extensions")
def check_gamma_fibrewise(C):
    for E in cc_exts(C):
        b = C.bundle(E)
        T, k = E.X.table, E.k.map
        bad = None
        for x in E.X.elements:
            for y in E.fibres[E.f(x)]:
                for a in E.K.elements:
                    if b.gamma_of(x, T[k[a]][x]) != b.gamma_of(y, T[k[a]][y]):
                        bad = f"x={x}, y={y}, a={a}"
            vals = [b.gamma_of(x, T[k[a]][x]) for a in E.K.elements]
            if len(set(vals)) != len(vals):
                bad = f"gamma not injective in a at x={x}"
        yield E.name, bad


@statement("S6-df-point", "(kappa_bar, f_bar, s_bar) is a Schreier point with q_bar(gamma(x,k(a)+x)) = a",
           "cc-Schreier extensions")
def check_df_point(C):
    for E in cc_exts(C):
        C.bundle(E)
        yield E.name, None


@statement("S6-df-semidirect", "df is isomorphic to K x|_eta M as a Schreier point",
           "cc-Schreier extensions")
def check_df_semidirect(C):
    for E in cc_exts(C):
        iso = df_isomorphism(C.bundle(E))
        yield E.name, None if iso.is_iso else "comparison is not an isomorphism"


@statement("S6-point-to-monoid",
           "point -> internal commutative monoid -> point is the identity",
           "Schreier points with commutative kernel")
def check_point_to_monoid(C):
    for name, P in commutative_points(C):
        im = point_to_internal_monoid(P)
        P2 = internal_monoid_to_point(P.extension, im.mu, P.s)
        yield name, None if P2.q == P.q and P2.s == P.s else "round trip changes the point"


def internal_monoids(E):
    """Every internal commutative monoid structure (mu, s) on E in SExt_M."""
    _, _, eq = kernel_objects(E.f)
    Em = eq.monoid
    out = []
    for s in enumerate_homs(E.M, E.X, allowed=[E.fibres[m] for m in E.M.elements]):
        fixed = {}
        for b in E.X.elements:
            e = s(E.f(b))
            fixed[Em.index((e, b))] = b
            fixed[Em.index((b, e))] = b
        allowed = [E.fibres[E.f(x)] for (x, _) in Em.labels]
        for mu in enumerate_homs(Em, E.X, fixed=fixed, allowed=allowed):
            from .direction import InternalMonoid
            im = InternalMonoid(E, eq, mu, s)
            if internal_monoid_violation(im) is None:
                out.append(im)
    return out


@statement("S6-monoid-to-point",
           "every internal commutative monoid in SExt_M comes from a point, and the round trip is the identity",
           "Schreier extensions with commutative kernel and carrier <= 6")
def check_monoid_to_point(C):
    for E in commutative_exts(C):
        if E.X.order > 6:
            continue
        for im in internal_monoids(E):
            label = f"{E.name}:s={list(im.unit.map)}"
            try:
                P = internal_monoid_to_point(E, im.mu, im.unit)
            except OmegaNotForced as e:
                yield label, f"multiplication not forced: {e}"
                continue
            back = point_to_internal_monoid(P)
            yield label, None if back.mu.map == im.mu.map else "round trip changes mu"


@statement("S6-mu-bar", "mu_bar(gamma(x,k(a)+x), gamma(y,k(b)+y)) = gamma(x,k(a)+k(b)+x) is the internal monoid of df",
           "cc-Schreier extensions")
def check_mu_bar(C):
    for E in cc_exts(C):
        b = C.bundle(E)
        im = internal_monoid_structure(b)
        ref = point_to_internal_monoid(b.point)
        yield E.name, None if im.mu.map == ref.mu.map else "mu_bar differs from kq(x)+y"


@statement("S6-chasles-identities", "gamma(x,x) is the unit and gamma(x,y).gamma(y,z) = gamma(x,z)",
           "cc-Schreier extensions")
def check_chasles_identities(C):
    for E in cc_exts(C):
        yield E.name, None if chasles_identities_ok(C.bundle(E)) else "identity fails"


@statement("S6-action-coincidence", "the action of the df point equals the induced action of E",
           "cc-Schreier extensions")
def check_action_coincidence(C):
    for E in cc_exts(C):
        yield E.name, None if point_action(C.bundle(E).point) == to_semimodule(E) else "actions differ"


def d_of(C, a):
    def build():
        if is_cc(a.src) and is_cc(a.dst):
            return direction_on_morphism(a, C.bundle(a.src), C.bundle(a.dst))
        return direction_on_morphism(a)
    return C.memo(("d", id(a)), build)


@statement("S6-functor", "d preserves identities and composition", "morphisms between cc extensions")
def check_functor(C):
    mors = cc_morphisms(C)
    for E in {id(a.src): a.src for a in mors}.values():
        i = identity_morphism(E)
        d = direction_on_morphism(i, C.bundle(E), C.bundle(E))
        ok = d.lam1.map == tuple(E.K.elements) and d.lam.map == tuple(C.bundle(E).df.elements)
        yield f"id({E.name})", None if ok else "identity not preserved"
    by_src = {}
    for a in mors:
        by_src.setdefault(id(a.src), []).append(a)
    for a in mors:
        for b in by_src.get(id(a.dst), []):
            ba = b.after(a)
            d = direction_on_morphism(ba, C.bundle(ba.src), C.bundle(ba.dst))
            comp = d_of(C, b).lam.after(d_of(C, a).lam)
            yield f"{mlabel(a)};{mlabel(b)}", None if comp == d.lam else "composition not preserved"


# --- cofibration, products, Baer sums ---------------------------------------------------

@statement("S7-conservative", "if d(alpha) is an isomorphism then so is alpha",
           "morphisms between extensions in smod")
def check_conservative(C):
    for a in smod_morphisms(C):
        d = d_of(C, a)
        yield mlabel(a), None if not d.is_iso or a.is_iso else "d(alpha) iso but alpha is not"


@statement("S7-mono-regepi", "d preserves and reflects injective and surjective components",
           "morphisms between extensions in smod")
def check_mono_regepi(C):
    for a in smod_morphisms(C):
        d = d_of(C, a)
        inj = (a.alpha1.is_injective and a.alpha2.is_injective,
               d.lam1.is_injective and d.lam.is_injective)
        sur = (a.alpha1.is_surjective and a.alpha2.is_surjective,
               d.lam1.is_surjective and d.lam.is_surjective)
        bad = None
        if inj[0] != inj[1]:
            bad = f"injectivity {inj}"
        elif sur[0] != sur[1]:
            bad = f"surjectivity {sur}"
        yield mlabel(a), bad


def product_semimodule(S, T, KK):
    act = [[KK.index((S.act[m][a], T.act[m][b])) for (a, b) in KK.labels] for m in S.M.elements]
    return Semimodule(S.M, KK, act)


@statement("S7-products", "D(E x E') is the product action and df(E x E') = df(E) x df(E')",
           "pairs of smod extensions over the same M with product carrier <= 8, and the terminal extension")
def check_products(C):
    small = [E for E in smod_exts(C) if E.X.order <= 8]
    by_m = {}
    for E in small:
        by_m.setdefault(E.M, []).append(E)
    for M, exts in by_m.items():
        T = trivial_right(M)
        yield f"terminal({M.name})", None if to_semimodule(T).K.order == 1 else "D(1) is not zero"
        for E1, E2 in itertools.combinations_with_replacement(exts, 2):
            if E1.X.order * E2.X.order > 8:
                continue
            P = product_ext(E1, E2)
            nu = product_semimodule(to_semimodule(E1), to_semimodule(E2), P.K)
            label = f"{E1.name}x{E2.name}"
            bad = None
            if to_semimodule(P) != nu:
                bad = "induced action of the product is not the product action"
            for Ei, i in ((E1, 0), (E2, 1)):
                leg1 = Hom(P.K, Ei.K, [ab[i] for ab in P.K.labels])
                leg2 = Hom(P.X, Ei.X, [xy[i] for xy in P.X.labels])
                if ext_morphism_violation(P, Ei, leg1, leg2) is not None:
                    bad = "projection is not a morphism"
            if bad is None and is_cc(P):
                if point_comparison(semidirect(nu), C.bundle(P).point) is None:
                    bad = "df(E x E') is not df(E) x df(E')"
            yield label, bad


def pushforward_instances(C):
    """(E, alpha1, T): E in smod with carrier <= 6, T a corpus semimodule over the same M,
    alpha1 any semimodule map D(E) -> T, limited to |K'||X| <= 16."""
    def build():
        by_m = {}
        for S in C.semimodules:
            by_m.setdefault(S.M, []).append(S)
        out = []
        for E in smod_exts(C):
            if E.X.order > 6:
                continue
            S = to_semimodule(E)
            for T in by_m.get(E.M, []):
                if T.K.order * E.X.order > 16:
                    continue
                for h in enumerate_homs(E.K, T.K):
                    if is_semimodule_hom(h, S, T):
                        out.append((E, h, T))
        return out
    return C.memo("pf-inst", build)


@statement("S7-rho", "rho equals the congruence generated by (alpha1(a), 0) ~ (0, k(a))",
           "pushforward instances")
def check_rho(C):
    for E, h, T in pushforward_instances(C):
        pushforward(E, h, T, check=True)
        yield f"{E.name}|{list(h.map)}|{T!r}", None


@statement("S7-pushforward", "the pushforward is a Schreier extension in smod with D = target, and alpha is a morphism",
           "pushforward instances")
def check_pushforward(C):
    for E, h, T in pushforward_instances(C):
        pf = pushforward(E, h, T, check=False)
        E2 = make_extension(pf.E2.k, pf.E2.f)
        bad = None
        if to_semimodule(E2) != T:
            bad = "D(E') differs from the target"
        elif ext_morphism_violation(E, E2, h, pf.cocart.alpha2) is not None:
            bad = "alpha is not a morphism of Schreier extensions"
        yield f"{E.name}|{list(h.map)}|{T!r}", bad


@statement("S7-cocartesian-uniqueness",
           "each lambda with lambda1 = beta1 alpha1 factors through the pushforward exactly once",
           "morphisms between extensions in smod, split as (lambda1, id) and (id, lambda1)")
def check_cocartesian_uniqueness(C):
    for lam in smod_morphisms(C):
        E, F = lam.src, lam.dst
        SE, SF = to_semimodule(E), to_semimodule(F)
        idE = Hom(E.K, E.K, tuple(E.K.elements))
        idF = Hom(F.K, F.K, tuple(F.K.elements))
        for alpha1, T, beta1, tag in ((lam.alpha1, SF, idF, "push"), (idE, SE, lam.alpha1, "id")):
            pf = pushforward(E, alpha1, T, check=False)
            n = factorization_count(pf, lam, beta1)
            bad = None
            if n != 1:
                bad = f"{n} factorizations"
            else:
                cocartesian_factorize(pf, lam, beta1)
            yield f"{mlabel(lam)}:{tag}", bad


@statement("S7-cofibration", "every morphism lambda: E -> F in smod is cocartesian over D(lambda)",
           "morphisms between extensions in smod")
def check_cofibration(C):
    for lam in smod_morphisms(C):
        F = lam.dst
        pf = pushforward(lam.src, lam.alpha1, to_semimodule(F), check=False)
        beta = cocartesian_factorize(pf, lam, Hom(F.K, F.K, tuple(F.K.elements)))
        yield mlabel(lam), None if beta.is_iso else "comparison to the pushforward is not an isomorphism"


def small_semimodules(C, bound=BRUTE_FORCE_BOUND):
    return [S for S in C.semimodules if S.K.order * S.M.order <= bound]


@statement("S7-fibre-laws", "Baer sum is commutative, associative and unital up to fibre isomorphism",
           "corpus semimodules with |K||M| <= 8")
def check_fibre_laws(C):
    for S in small_semimodules(C):
        cohomology_monoid(S, check=False)
        yield repr(S), None


@statement("S7-fibre-morphisms", "every fibre morphism (alpha1 = id) between classes is an isomorphism",
           "corpus semimodules with |K||M| <= 6")
def check_fibre_morphisms(C):
    for S in small_semimodules(C, 6):
        classes = fiber_classify(S, "fs")
        ident = tuple(S.K.elements)
        bad = None
        for (i, E1), (j, E2) in itertools.product(enumerate(classes), repeat=2):
            for a in extension_morphisms(E1, E2):
                if a.alpha1.map != ident:
                    continue
                if i != j or not a.is_iso:
                    bad = f"fibre morphism from class {i} to class {j} is not an isomorphism"
        yield repr(S), bad


@statement("S7-baer-factor-system", "baer_sum(CP(g), CP(g')) is fibre-isomorphic to CP(g + g')",
           "all factor-system pairs over corpus semimodules with |K||M| <= 8")
def check_baer_factor_system(C):
    for S in small_semimodules(C):
        fss = list(enumerate_factor_systems(S))
        cps = [crossed_product(g) for g in fss]
        for (i, g), (j, h) in itertools.product(enumerate(fss), repeat=2):
            B = baer_sum(cps[i], cps[j], check=False)
            ok = fibre_iso(B, crossed_product(g + h)) is not None
            yield f"{S!r}:{i}+{j}", None if ok else "Baer sum not isomorphic to CP(g+g')"


@statement("S7-modes-agree", "factor-system and brute-force classifications agree",
           "corpus semimodules with |K||M| <= 8")
def check_modes_agree(C):
    for S in small_semimodules(C):
        ok = modes_agree(fiber_classify(S, "fs"), fiber_classify(S, "bf"))
        yield repr(S), None if ok else "class lists differ"


# --- kernel pairs, monomorphisms and regular epimorphisms in cc-SExt_M ------------------------

def kernel_pair(a):
    """Eq(alpha1) >-> Eq(alpha) ->> M with its two projections onto the source."""
    E = a.src
    K1 = Relation(E.K, [(x, y) for x in E.K.elements for y in E.K.elements
                        if a.alpha1(x) == a.alpha1(y)])
    X1 = Relation(E.X, [(x, y) for x in E.X.elements for y in E.X.elements
                        if a.alpha2(x) == a.alpha2(y)])
    Km, Xm = K1.monoid, X1.monoid
    kk = Hom(Km, Xm, [Xm.index((E.k(x), E.k(y))) for (x, y) in Km.labels])
    fb = Hom(Xm, E.M, [E.f(x) for (x, _) in Xm.labels])
    Ebar = make_extension(kk, fb, f"Eq({mlabel(a)})")
    legs = [ExtMorphism(Ebar, E, K1.r1 if i == 0 else K1.r2, X1.r1 if i == 0 else X1.r2)
            for i in (0, 1)]
    return Ebar, legs


def factorizations(a, b):
    """Schreier-extension morphisms g with g . a = b."""
    E2, F = a.dst, b.dst
    fixed = {}
    for x in a.src.X.elements:
        if fixed.setdefault(a.alpha2(x), b.alpha2(x)) != b.alpha2(x):
            return []
    out = []
    kinv = {x: i for i, x in enumerate(F.k.map)}
    allowed = [list(F.fibres[E2.f(y)]) for y in E2.X.elements]
    for g in enumerate_homs(E2.X, F.X, fixed=fixed, allowed=allowed):
        if any(g(E2.k(c)) not in kinv for c in E2.K.elements):
            continue
        g1 = Hom(E2.K, F.K, [kinv[g(E2.k(c))] for c in E2.K.elements])
        if ext_morphism_violation(E2, F, g1, g) is None:
            out.append(ExtMorphism(E2, F, g1, g))
    return out


@statement("A-kernel-pair", "Eq(alpha1) >-> Eq(alpha) ->> M is a cc-Schreier extension and the kernel pair",
           "morphisms between cc extensions")
def check_kernel_pair(C):
    mors = cc_morphisms(C)
    into = {}
    for b in mors:
        into.setdefault(id(b.dst), []).append(b)
    for a in mors:
        Ebar, legs = kernel_pair(a)
        bad = None
        if not is_cc(Ebar):
            bad = "kernel pair is not cc-Schreier"
        else:
            Xm = Ebar.X
            for m in a.src.M.elements:
                u = a.src.u(m)
                if Xm.index((u, u)) not in Ebar.schreier.reps[m]:
                    bad = f"(u_m, u_m) is not a representative over {m}"
            for leg in legs:
                if ext_morphism_violation(Ebar, a.src, leg.alpha1, leg.alpha2) is not None:
                    bad = "projection is not a morphism"
            probes = into.get(id(a.src), [])
            for b, c in itertools.product(probes, repeat=2):
                if b.src is not c.src or a.after(b) != a.after(c):
                    continue
                g2 = Hom(b.src.X, Xm, [Xm.index((b.alpha2(x), c.alpha2(x))) for x in b.src.X.elements])
                g1 = Hom(b.src.K, Ebar.K, [Ebar.K.index((b.alpha1(x), c.alpha1(x)))
                                           for x in b.src.K.elements])
                if ext_morphism_violation(b.src, Ebar, g1, g2) is not None:
                    bad = "induced map into the kernel pair is not a morphism"
        yield mlabel(a), bad


def _out_of(C):
    return C.memo("out-of", lambda: _group_src(cc_morphisms(C)))


def _group_src(mors):
    out = {}
    for b in mors:
        out.setdefault(id(b.src), []).append(b)
    return out


def _coequalizes_kernel_pair(a, probes):
    """Does every probe b that coequalizes the kernel pair factor uniquely through a?"""
    for b in probes:
        if any(a.alpha2(x) == a.alpha2(y) and b.alpha2(x) != b.alpha2(y)
               for x in a.src.X.elements for y in a.src.X.elements):
            continue
        if len(factorizations(a, b)) != 1:
            return False
    return True


@statement("A-regepi", "alpha1, alpha surjective make alpha the coequalizer of its kernel pair",
           "morphisms between cc extensions with surjective components")
def check_regepi(C):
    out = _out_of(C)
    for a in cc_morphisms(C):
        if not (a.alpha1.is_surjective and a.alpha2.is_surjective):
            continue
        probes = out.get(id(a.src), []) + [a]
        yield mlabel(a), None if _coequalizes_kernel_pair(a, probes) else "a probe does not factor uniquely"


def image_morphism(a):
    """The corestriction E -> Im(alpha) of a morphism between cc extensions."""
    F = a.dst
    X1, inc = submonoid(F.X, sorted(set(a.alpha2.map)))
    img = {x: i for i, x in enumerate(inc.map)}
    K1, kinc = submonoid(F.K, sorted(set(a.alpha1.map)))
    kimg = {x: i for i, x in enumerate(kinc.map)}
    k = Hom(K1, X1, [img[F.k(c)] for c in kinc.map])
    f = Hom(X1, F.M, [F.f(x) for x in inc.map])
    P = make_extension(k, f, f"Im({mlabel(a)})")
    return ExtMorphism(a.src, P, Hom(a.src.K, K1, [kimg[a.alpha1(c)] for c in a.src.K.elements]),
                       Hom(a.src.X, X1, [img[a.alpha2(x)] for x in a.src.X.elements]))


@statement("A-mono-char",
           "alpha is mono (regular epi) in cc-SExt_M iff alpha1 and alpha are injective (surjective)",
           "morphisms between cc extensions, probed with kernel pairs, images and corpus morphisms")
def check_mono_char(C):
    out = _out_of(C)
    into = {}
    for b in cc_morphisms(C):
        into.setdefault(id(b.dst), []).append(b)
    for a in cc_morphisms(C):
        Ebar, legs = kernel_pair(a)
        probes_in = [tuple(legs)] + [(b, c) for b, c in itertools.product(into.get(id(a.src), []), repeat=2)
                                     if b.src is c.src]
        mono = not any(b != c and a.after(b) == a.after(c) for b, c in probes_in)
        inj = a.alpha1.is_injective and a.alpha2.is_injective
        bad = None
        if mono != inj:
            bad = f"categorical mono {mono}, injective components {inj}"
        else:
            probes_out = out.get(id(a.src), []) + [a, image_morphism(a)]
            regepi = _coequalizes_kernel_pair(a, probes_out)
            sur = a.alpha1.is_surjective and a.alpha2.is_surjective
            if regepi != sur:
                bad = f"coequalizer of kernel pair {regepi}, surjective components {sur}"
        yield mlabel(a), bad


# --- running ----------------------------------------------------------------------------------

def run_check(check, corpus):
    t0 = time.perf_counter()
    n = 0
    counter = None
    try:
        for label, problem in check.run(corpus):
            n += 1
            if problem is not None:
                counter = {"instance": label, "problem": problem}
                break
    except Exception as e:  # a raised error is a counterexample for the current instance
        counter = {"instance": f"after {n} instances", "problem": f"{type(e).__name__}: {e}",
                   "witness": repr(getattr(e, "witness", None)),
                   "trace": traceback.format_exc(limit=3).splitlines()[-1]}
    status = "fail" if counter else ("pass" if n else "empty")
    return CheckResult(check.id, check.title, check.scope, n, status, counter,
                       time.perf_counter() - t0)


_WORKER_CORPUS = None


def _run_by_id(cid):
    check = next(c for c in REGISTRY if c.id == cid)
    return run_check(check, _WORKER_CORPUS)


def run_all(corpus, ids=None, workers=1):
    """Run the selected checks; results come back in registry order whatever the worker count."""
    global _WORKER_CORPUS
    checks = [c for c in REGISTRY if ids is None or c.id in ids]
    if workers <= 1:
        return [run_check(c, corpus) for c in checks]
    _WORKER_CORPUS = corpus
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        results = pool.map(_run_by_id, [c.id for c in checks], chunksize=1)
    _WORKER_CORPUS = None
    return results
