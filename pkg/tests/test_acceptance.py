"""The eight acceptance criteria; each prints a PASS/FAIL line in the terminal summary."""
import contextlib
import json
import subprocess
import sys
import time

import pytest

import oracles
from conftest import ACCEPTANCE
from monext import io
from monext.action import connector, make_semimodule, semidirect, to_semimodule, trivial_action
from monext.cofib import (BRUTE_FORCE_BOUND, cohomology_monoid, enumerate_factor_systems,
                          fiber_classify, modes_agree)
from monext.corpus import build_corpus
from monext.direction import df_by_semidirect, df_isomorphism, direction_bundle, is_cc
from monext.errors import AxiomViolation, NotSchreier
from monext.extension import compute_schreier, multiplication_extension, s3_extension
from monext.finmon import cyclic, is_isomorphic, kernel_objects, klein, m2, symmetric3


@contextlib.contextmanager
def criterion(request, n, text):
    log = request.config.stash[ACCEPTANCE]
    try:
        yield
    except BaseException:
        log[n] = f"criterion {n}: FAIL  {text}"
        raise
    log[n] = f"criterion {n}: PASS  {text}"


@pytest.fixture(scope="module")
def default_corpus():
    return build_corpus(5, 8)


@pytest.fixture(scope="module")
def verify_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify") / "report.json"
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "monext", "verify", "--out", str(out)],
                          capture_output=True, text=True)
    return proc, json.loads(out.read_text()), time.perf_counter() - t0


def test_criterion_1_c2_by_c2(request):
    with criterion(request, 1, "(C2, C2): 2 classes, table C2, unit V4, nonsplit C4"):
        t0 = time.perf_counter()
        S = trivial_action(cyclic(2), cyclic(2))
        H = cohomology_monoid(S)
        elapsed = time.perf_counter() - t0
        assert len(H.classes) == 2
        assert [list(r) for r in H.table] == [[0, 1], [1, 0]]
        assert is_isomorphic(H.classes[H.unit].X, klein())
        assert is_isomorphic(H.classes[1 - H.unit].X, cyclic(4))
        tables = oracles.fibre_tables(S.K.table, S.M.table, S.act)
        reps = oracles.classes(tables, S.K.table, S.M.table)
        assert len(reps) == 2
        kinds = sorted("C4" if oracles.isomorphic_brute(t.tolist(), cyclic(4).table) else "V4"
                       for t in reps)
        assert kinds == ["C4", "V4"]
        assert elapsed < 1.0


def test_criterion_2_m2_kernel(request):
    with criterion(request, 2, "(C2, M2): 2 classes, idempotent nontrivial class, monoid M2"):
        t0 = time.perf_counter()
        S = trivial_action(cyclic(2), m2())
        H = cohomology_monoid(S)
        assert modes_agree(fiber_classify(S, "fs"), fiber_classify(S, "bf"))
        elapsed = time.perf_counter() - t0
        assert len(H.classes) == 2
        other = 1 - H.unit
        assert H.table[other][other] == other
        assert is_isomorphic(H.as_monoid(), m2())
        assert elapsed < 1.0


def test_criterion_3_m2_base(request):
    with criterion(request, 3, "(M2, C2): 1 class in both modes"):
        S = trivial_action(m2(), cyclic(2))
        fs, bf = fiber_classify(S, "fs"), fiber_classify(S, "bf")
        assert len(fs) == len(bf) == 1
        assert len(cohomology_monoid(S).classes) == 1
        tables = oracles.fibre_tables(S.K.table, S.M.table, S.act)
        assert len(oracles.classes(tables, S.K.table, S.M.table)) == 1


def test_criterion_4_direction_cross_check(request, default_corpus):
    with criterion(request, 4, "df by coequalizer = df by semidirect over the default corpus"):
        t0 = time.perf_counter()
        cc = smod = 0
        for E in default_corpus.extensions:
            try:
                S = to_semimodule(E)
            except AxiomViolation:
                continue
            smod += 1
            P = df_by_semidirect(E)
            assert P.K == E.K and P.M == E.M
            if is_cc(E):
                cc += 1
                b = direction_bundle(E)
                assert df_isomorphism(b).lam.is_iso
                assert to_semimodule(b.point.extension) == S
        assert cc >= 400 and smod >= cc
        assert time.perf_counter() - t0 <= 300


def test_criterion_5_s3_pipeline(request):
    with criterion(request, 5, "S3: inversion action, semidirect = S3, connector x-y+z"):
        t0 = time.perf_counter()
        E = s3_extension()
        S = to_semimodule(E)
        assert S.act[1] == tuple(E.K.inverse(a) for a in E.K.elements)
        C3 = cyclic(3)
        inv = make_semimodule(cyclic(2), C3, [[0, 1, 2], [0, 2, 1]])
        assert oracles.isomorphic_brute(semidirect(inv).B.table, symmetric3().table)
        _, _, eq = kernel_objects(E.f)
        con = connector(eq, eq)
        X = E.X
        assert all(con(x, y, z) == X.mul(X.mul(x, X.inverse(y)), z)
                   for (x, y, z) in con.composite.labels)
        assert time.perf_counter() - t0 < 1.0


def test_criterion_6_verify_default_corpus(request, verify_run):
    with criterion(request, 6, "verify exits 0 on the default corpus, every statement >= 10 instances"):
        proc, report, _ = verify_run
        assert proc.returncode == 0, proc.stdout[-2000:]
        assert report["ok"] and report["summary"]["failed"] == []
        thin = [(s["id"], s["instances"]) for s in report["statements"] if s["instances"] < 10]
        assert thin == []
        ids = {s["id"] for s in report["statements"]}
        for must in ("S6-point-to-monoid", "S6-monoid-to-point", "S7-conservative", "S7-products",
                     "S7-cocartesian-uniqueness", "A-kernel-pair", "A-regepi", "A-mono-char"):
            assert must in ids


def test_criterion_7_negative_controls(request, tmp_path):
    with criterion(request, 7, "multiplication extension is NotSchreier at z; fault injection exits 1"):
        E = multiplication_extension()
        with pytest.raises(NotSchreier) as e:
            compute_schreier(E)
        assert E.M.label(e.value.witness) == "z"
        doc = io.emit_extension(s3_extension(), schreier=True)
        q = doc["schreier"]["q"]
        x = next(i for i, v in enumerate(q) if v != 0 and i not in doc["k"])
        q[x] = (q[x] + 1) % 3
        fixture = tmp_path / "fixture.json"
        fixture.write_text(io.dumps({"extensions": [doc]}))
        proc = subprocess.run([sys.executable, "-m", "monext", "verify", "--max-order", "0",
                               "--corpus-file", str(fixture), "--format", "table"],
                              capture_output=True, text=True)
        assert proc.returncode == 1
        assert "FAILED: " in proc.stdout and "S2-retraction-4" in proc.stdout


def test_criterion_8_baer_factor_systems(request, verify_run, default_corpus):
    with criterion(request, 8, "Baer sum of CP(g), CP(g') = CP(g+g') for all pairs, |K||M| <= 8"):
        _, report, _ = verify_run
        entry = next(s for s in report["statements"] if s["id"] == "S7-baer-factor-system")
        expected = sum(len(list(enumerate_factor_systems(S))) ** 2 for S in default_corpus.semimodules
                       if S.K.order * S.M.order <= BRUTE_FORCE_BOUND)
        assert entry["status"] == "pass"
        assert entry["instances"] == expected
