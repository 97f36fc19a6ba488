"""Acceptance campaign: one test per criterion, each printing a PASS/FAIL line.

Every check is exact (integer equality); runtime budgets are asserted where
stated.  The lines are written past pytest's capture so they always appear.
"""

import json
import random
import sys
import time
from math import comb

from grtilt.bott import canonical_bundle, cohomology_gr, dot_normalize
from grtilt.cli import main as cli_main
from grtilt.collection import collection, conv_range, primed_collection
from grtilt.cotangent import ext_cotangent
from grtilt.verify import (
    k_generation_check,
    resolver_oracle_suite,
    verify_ext_vanishing,
    verify_differentials,
)
from grtilt.weights import dualize, lr_tensor, weyl_dim

from conftest import random_gr_bundle, random_weight
from oracle_chars import decompose_product


def report_line(criterion: int, ok: bool, detail: str, cap) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status} - {detail}\n"
    if cap is not None:
        with cap.disabled():
            sys.stdout.write(line)
            sys.stdout.flush()
    else:
        sys.stdout.write(line)


def run_criterion(criterion: int, fn, cap) -> float:
    started = time.perf_counter()
    try:
        detail = fn()
    except BaseException:
        report_line(criterion, False, "assertion failed", cap)
        raise
    elapsed = time.perf_counter() - started
    report_line(criterion, True, f"{detail} [{elapsed:.2f}s]", cap)
    return elapsed


def test_criterion_1_collection_construction(capfd):
    def body():
        t0 = time.perf_counter()
        for N in range(4, 9):
            members = collection(N)
            assert len(members) == comb(N, 2)
            assert len(primed_collection(N)) == comb(N, 2)
        idents = [m.ident for m in collection(4)]
        assert idents == ["E:0,0", "E:0,-1", "E:-1,-1", "K:-1", "K:0", "K:1"]
        members = {m.ident: m for m in collection(4)}
        assert members["K:1"].complex()[-1].terms == (((0, 0), (1, 1), 1),)
        assert members["K:1"].complex()[0].terms == (((1, 1), (0, 0), 1),)
        assert members["K:-1"].complex()[-1].terms == (((-1, -1), (1, 1), 1),)
        assert members["K:-1"].complex()[0].terms == (((0, 0), (0, 0), 1),)
        assert members["K:0"].complex() == {0: members["K:0"].complex()[0]}
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"collection construction took {elapsed:.2f}s"
        return "collections N=4..8 with the N=4 list verbatim"

    run_criterion(1, body, capfd)


def test_criterion_2_differential_suite(capfd):
    def body():
        t0 = time.perf_counter()
        for N in (4, 5, 6):
            rep = verify_differentials(N, 12)
            assert rep.passed, rep.failures()[:3]
            assert any(c.cid.startswith("diff-invariant-one") for c in rep.checks)
            assert any(c.cid.startswith("diff-closed-form") for c in rep.checks)
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        return "unique equivariant Ext^1 and closed form per layer, N=4..6 cutoff 12"

    run_criterion(2, body, capfd)


def test_criterion_3_convolution_existence(capfd):
    def body():
        t0 = time.perf_counter()
        for N in (4, 5, 6):
            rep = verify_differentials(N, 12)
            assert rep.passed
            seen = {c.cid for c in rep.checks}
            for k in range(-1, N - 2):
                idx = list(conv_range(N, k))
                for i in idx:
                    for target in idx:
                        if target - i >= 2:
                            assert f"conv-existence:k={k},i={i},j={target - i}" in seen
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        return "Ext^1 and Ext^2 vanish to all later terms, N=4..6 cutoff 12"

    run_criterion(3, body, capfd)


def test_criterion_4_resolver_oracles(capfd):
    def body():
        t0 = time.perf_counter()
        cases = 0
        for N in (4, 5, 6, 7):
            rep = resolver_oracle_suite(N)
            assert rep.passed, rep.failures()[:3]
            cases += len(rep.checks)
        elapsed = time.perf_counter() - t0
        assert elapsed < 300.0
        return f"{cases} closed-form resolutions reproduced term by term, N=4..7"

    run_criterion(4, body, capfd)


def test_criterion_5_tilting_campaign(capfd):
    def body():
        t0 = time.perf_counter()
        for N in (4, 5, 6):
            rep = verify_ext_vanishing(N, 2 * N)
            assert rep.passed, rep.failures()[:3]
        code = cli_main(["verify", "--n", "4..6", "--suites", "ext-vanishing"])
        assert code == 0
        elapsed = time.perf_counter() - t0
        assert elapsed < 600.0
        return "full Ext campaign N=4..6 at cutoff 2N, exit status 0"

    run_criterion(5, body, capfd)


def test_criterion_6_k_generation(capfd):
    def body():
        t0 = time.perf_counter()
        dets = []
        for N in range(4, 9):
            rep = k_generation_check(N)
            assert rep.passed, rep.failures()[:3]
            dets.append(rep.extras["determinant"])
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        return f"member-class determinants {dets} for N=4..8, two routines"

    run_criterion(6, body, capfd)


def test_criterion_7_property_suites(capfd):
    def body():
        rng = random.Random(74160)

        # Serre duality on 200 random bundles across N <= 6
        omega = {N: canonical_bundle(N) for N in (4, 5, 6)}
        for trial in range(200):
            N = 4 + trial % 3
            bundle = random_gr_bundle(rng, N)
            lhs = cohomology_gr(bundle)
            rhs = cohomology_gr(bundle.dual().tensor(omega[N]))
            top = 2 * (N - 2)
            flipped = {
                top - d: {dualize(w): m for w, m in ws.items()}
                for d, ws in rhs.parts.items()
            }
            assert lhs.parts == flipped

        # dot-action idempotence on normalised outputs
        for _ in range(500):
            w = tuple(rng.randint(-6, 6) for _ in range(rng.randint(2, 8)))
            res = dot_normalize(w)
            if res is not None:
                assert dot_normalize(res[0]) == (res[0], 0)

        # LR dimension conservation on 100 random pairs, n <= 6, entries <= 4,
        # with full character-polynomial decomposition where tractable
        checked_full = 0
        for _ in range(100):
            n = rng.randint(2, 6)
            lam = random_weight(rng, n, -4, 4)
            mu = random_weight(rng, n, -4, 4)
            product = lr_tensor(lam, mu, n)
            assert sum(m * weyl_dim(nu, n) for nu, m in product.items()) == weyl_dim(
                lam, n
            ) * weyl_dim(mu, n)
            if n <= 4:
                assert product == decompose_product(lam, mu, n)
                checked_full += 1
        assert checked_full >= 30

        # cutoff monotonicity on 50 random pairs
        for _ in range(50):
            N = rng.choice((4, 5))
            a = random_gr_bundle(rng, N, max_terms=1)
            b = random_gr_bundle(rng, N, max_terms=1)
            small = ext_cotangent(a, b, cutoff=2)
            big = ext_cotangent(a, b, cutoff=5)
            for deg, ws in small.graded.parts.items():
                for w, m in ws.items():
                    assert big.graded.piece(deg).get(w, 0) >= m

        return "Serre duality x200, dot idempotence, LR conservation x100, monotone cutoffs x50"

    run_criterion(7, body, capfd)


def test_criterion_8_report_determinism(capsys):
    def body():
        t0 = time.perf_counter()
        code1 = cli_main(["verify", "--n", "4..6"])
        out1 = capsys.readouterr().out
        code2 = cli_main(["verify", "--n", "4..6"])
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["schema_version"] == "grtilt-report/1"
        assert doc["body"]["passed"] is True
        elapsed = time.perf_counter() - t0
        return f"two identical runs, {len(out1)} bytes each"

    run_criterion(8, body, capsys)
