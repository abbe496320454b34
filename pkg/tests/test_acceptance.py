"""End-to-end acceptance checks; each prints one PASS/FAIL line in the terminal summary."""

import json
import random
import subprocess
import sys
import time
from itertools import permutations
from math import comb
from pathlib import Path

import pytest

from conftest import record
from permder import diffperm
from permder.algebra import load_algebra
from permder.certificates import load
from permder.cli import main
from permder.cur import verify_cur
from permder.envelope import envelope_suite
from permder.fixtures import random_left_symmetric, random_novikov, random_novikov_dialgebra
from permder.identities import eval_in_free_perm, eval_term_free_perm, INTERPRETATIONS, multilinear_dim
from permder.linalg import LinComb, add_into
from permder.presentations import builtin
from permder.replicate import canonical_key
from permder.speciality import (
    check_intersection, check_nice, check_novikov_quotient, check_poisson, compute_ideals, compute_V,
    intersect_with_A, w_generator,
)
from permder.terms import parse_identities

GOLDEN = Path(__file__).parent / "golden" / "dinov.ids"


def finish(k: int, problems: list, elapsed: float, limit: float | None, summary: str) -> None:
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    if limit and elapsed >= limit:
        problems = problems + [f"runtime {elapsed:.2f}s exceeds {limit:g}s"]
    detail = summary if not problems else "; ".join(problems[:3])
    record(k, not problems, f"{detail}; {timing}")
    assert not problems, problems


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    assert main(["fixtures", "--out", str(out)]) == 0
    return out


def cli_json(capsys, *argv):
    code = main([*argv, "--format", "structured"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_criterion_1_perm_dims(capsys):
    t0 = time.perf_counter()
    problems, dims = [], []
    for k in range(1, 7):
        code, cert = cli_json(capsys, "dim", "--variety", "perm", "-n", str(k))
        dims.append(cert["result"]["dim"])
        if code != 0 or dims[-1] != k:
            problems.append(f"dim Perm({k}) = {dims[-1]} (exit {code})")
    finish(1, problems, time.perf_counter() - t0, 10, f"dim Perm(1..6) = {dims}")


def _instances_on_four(ident):
    """Values of an identity on every choice of distinct generators among x1..x4."""
    names = ["x1", "x2", "x3", "x4"]
    for choice in permutations(names, ident.arity):
        acc: dict = {}
        for t, c in ident.body.items():
            add_into(acc, eval_term_free_perm(t, INTERPRETATIONS["derived"], dict(enumerate(choice, 1))).terms, c)
        yield choice, LinComb(acc)


def test_criterion_2_derived_identities():
    t0 = time.perf_counter()
    problems = []
    checked = 0
    for f in builtin("sls").identities:
        for choice, value in _instances_on_four(f):
            checked += 1
            if not value.is_zero():
                problems.append(f"{f.name} nonzero on {choice}")
    probe = builtin("as").identities[0]
    probe_values = [v for _, v in _instances_on_four(probe)]
    if any(v.is_zero() for v in probe_values):
        problems.append("associativity expands to zero on some substitution")
    finish(2, problems, time.perf_counter() - t0, 1,
           f"left symmetry and both SLS identities vanish on {checked} substitutions; associativity nonzero "
           f"({len(probe_values[0])} terms)")


def test_criterion_3_replication_golden(capsys):
    t0 = time.perf_counter()
    problems = []
    code = main(["replicate", "--variety", "nov"])
    emitted = parse_identities(capsys.readouterr().out)
    golden = parse_identities(GOLDEN.read_text())
    if code != 0:
        problems.append(f"replicate exited {code}")
    if sorted(map(canonical_key, emitted)) != sorted(map(canonical_key, golden)):
        problems.append("replicated set differs from the golden file")
    for f in emitted:
        if not eval_in_free_perm(f, "derived").is_zero():
            problems.append(f"{f} nonzero under the derived products")
    finish(3, problems, time.perf_counter() - t0, 1,
           f"{len(emitted)} identities match golden, all vanish in free Perm Der")


def test_criterion_4_sls_dims():
    t0 = time.perf_counter()
    problems = []
    sls = []
    for n in range(1, 5):
        quotient = multilinear_dim(builtin("sls"), n)
        enumerated = len(diffperm.enumerate_sls_basis(n))
        sls.append(quotient)
        if quotient != enumerated:
            problems.append(f"n={n}: quotient {quotient} vs enumeration {enumerated}")
        if multilinear_dim(builtin("lsym"), n) != n ** (n - 1):
            problems.append(f"LSym n={n} disagrees with n^(n-1)")
        if multilinear_dim(builtin("nov"), n) != comb(2 * n - 2, n - 1):
            problems.append(f"Nov n={n} disagrees with C(2n-2, n-1)")
    if sls != [1, 2, 9, 40]:
        problems.append(f"SLS dims {sls}")
    finish(4, problems, time.perf_counter() - t0, 120, f"SLS dims {sls}; LSym and Nov oracles agree")


def test_criterion_5_envelope_suite():
    t0 = time.perf_counter()
    problems = []
    triples = 0
    for seed in range(20):
        rng = random.Random(seed)
        a = random_left_symmetric(rng)
        if a.dim != 3:
            problems.append(f"seed {seed}: dim {a.dim}")
        rep = envelope_suite(a, bound=4, pairs=100, rng=rng)
        triples += sum(e["assignments"] for e in rep["identities"])
        if not rep["passed"]:
            bad = [e["identity"] for e in rep["identities"] if not e["passed"]]
            problems.append(f"seed {seed}: M products {len(rep['m_product_failures'])} failures, identities {bad}")
    finish(5, problems, time.perf_counter() - t0, 60,
           f"20 algebras, 2000 word pairs, {triples} in-bound assignments")


def test_criterion_6_niceness(capsys, fixture_dir):
    t0 = time.perf_counter()
    problems = []
    code, cert = cli_json(capsys, "nice", str(fixture_dir / "sls1.alg"))
    if code != 0 or cert["verdict"] != "nice":
        problems.append(f"sls1: {cert['verdict']}")
    code, cert = cli_json(capsys, "nice", str(fixture_dir / "sls2q.alg"))
    w = cert["result"].get("witness", {})
    a = load_algebra(fixture_dir / "sls2q.alg")
    if code != 0 or cert["verdict"] != "not-nice":
        problems.append(f"sls2q: {cert['verdict']}")
    else:
        rel = [(i, j) for i, j, _ in w["relation"]]
        if rel != [("x", "z")] or w["multiplier"] != "y":
            problems.append(f"sls2q witness {w}")
        x, y, z = (a.basis_index(s) for s in "xyz")
        value = a.mul(a.mul({x: 1}, {y: 1}), {z: 1})
        if not value or a.mul({x: 1}, {z: 1}):
            problems.append("x∘z = 0 and (x∘y)∘z ≠ 0 not reproduced")
    rng = random.Random(6)
    for _ in range(10):
        if not check_nice(random_novikov(rng)).nice:
            problems.append("random Novikov algebra not nice")
    finish(6, problems, time.perf_counter() - t0, 10,
           "sls1 nice; sls2q not nice at (x⊗z, y) with (x∘y)∘z ≠ 0; 10 Novikov algebras nice")


def test_criterion_7_ideal_suite(fixture_dir):
    t0 = time.perf_counter()
    problems = []
    rng = random.Random(7)
    nice_inputs = [("sls1", load_algebra(fixture_dir / "sls1.alg"))]
    nice_inputs += [(f"novikov-{k}", random_novikov(rng)) for k in range(3)]
    for name, a in nice_inputs:
        span = compute_ideals(a, 4)
        if check_intersection(a, span).dim != 0:
            problems.append(f"{name}: A∩J ≠ 0")
        bad = check_poisson(a, span, samples=50, rng=rng)
        if bad is not None:
            problems.append(f"{name}: Poisson defect outside I at {bad[0]}")
        bad = check_novikov_quotient(a, span, samples=100, rng=rng)
        if bad is not None:
            problems.append(f"{name}: {bad[0]} not in J at {bad[1]}")
    q = load_algebra(fixture_dir / "sls2q.alg")
    # w(x, z, y) is itself a generator of V, so it certifies the witness independently
    x, y, z = (q.basis_index(s) for s in "xyz")
    w = w_generator(q, x, z, y)
    if not w or any(len(k) != 1 for k in w) or {q.basis[k[0]] for k in w} != {"xyz"}:
        problems.append(f"w(x,z,y) = {w} is not a nonzero multiple of xyz")
    cert = intersect_with_A(q, compute_V(q, 4), 4, "V")
    if cert.dim < 1 or [q.basis[k] for k in cert.witness] != ["xyz"]:
        problems.append(f"sls2q A∩V at D=4: dim {cert.dim}, witness {cert.witness}")
    finish(7, problems, time.perf_counter() - t0, 120,
           f"A∩J = 0 at D=4 for {len(nice_inputs)} nice algebras; sls2q dim(A∩V) = {cert.dim} at D=4 "
           f"with witness xyz; Poisson 50 and Novikov-quotient 100 samples each")


def test_criterion_8_cur_suite():
    t0 = time.perf_counter()
    problems = []
    rng = random.Random(8)
    n0 = []
    for k in range(10):
        n = random_novikov_dialgebra(rng)
        cert = verify_cur(n)
        n0.append(cert.dims["N0"])
        if n.dim != 3 or not cert.passed:
            problems.append(f"dialgebra {k}: {cert}")
    finish(8, problems, time.perf_counter() - t0, 30, f"10 dialgebras pass; dim N0 = {n0}")


def _run_jobs(workdir: Path) -> dict:
    fx = workdir / "fx"
    cli = [sys.executable, "-m", "permder"]
    subprocess.run(cli + ["fixtures", "--out", str(fx), "--seed", "9", "--count", "1"],
                   check=True, capture_output=True)
    jobs = {
        "dim": ["dim", "--variety", "perm", "-n", "6"],
        "check-identity": ["check-identity", str(GOLDEN)],
        "replicate": ["replicate", "--variety", "nov"],
        "sls-basis": ["sls-basis", "-n", "4"],
        "envelope": ["envelope-test", str(fx / "lsym-9-0.alg"), "-D", "4", "--pairs", "100", "--seed", "5"],
        "nice-sls1": ["nice", str(fx / "sls1.alg")],
        "nice-sls2q": ["nice", str(fx / "sls2q.alg")],
        "ideals": ["ideals", str(fx / "novikov-9-0.alg"), "-D", "4", "--samples", "20", "--seed", "5"],
        "cur": ["cur", str(fx / "dinov-9-0.alg")],
    }
    out = {p.name: p.read_bytes() for p in sorted(fx.iterdir())}
    for name, argv in jobs.items():
        path = workdir / f"{name}.json"
        proc = subprocess.run(cli + argv + ["--out", str(path)], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            raise RuntimeError(f"{name}: {proc.stderr}")
        out[name] = path.read_bytes()
    return out


def test_criterion_9_determinism(tmp_path):
    t0 = time.perf_counter()
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    first = _run_jobs(tmp_path / "a")
    second = _run_jobs(tmp_path / "b")
    problems = [name for name in first if first[name] != second.get(name)]
    for name, blob in first.items():
        if blob.startswith(b"{") and not name.endswith(".alg"):
            load(blob.decode())
    finish(9, [f"{p} differs between runs" for p in problems], time.perf_counter() - t0, None,
           f"{len(first)} artifacts byte-identical across two runs")
