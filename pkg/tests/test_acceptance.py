"""Acceptance gate: one test per criterion, each printing a PASS or FAIL line."""

import time
from fractions import Fraction

import numpy as np

from sniep5.c_tables import REFERENCE_ROWS, golden_tables
from sniep5.exact import Surd
from sniep5.pattern_c import reproduce_cells, verify_appendix_c, verify_appendix_d, verify_c_identities
from sniep5.pattern_h import APPENDIX_A_ROOTS, verify_appendix_ab, verify_h_identities
from sniep5.sniep import PATTERN_C, PATTERN_FULL, PATTERN_H, VerdictKind, check_conditions, realize, sample_array
from sniep5.spectral import EXAMPLE_SPECTRUM, eigen_jacobi, example_matrix, verify_example_matrix

F = Fraction


def _gate(capsys, number, title, check):
    start = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as exc:  # noqa: BLE001 - a crash is a FAIL line, then re-raised
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        raise
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'} [{elapsed:.1f}s] {detail}")
    assert ok, detail


def test_criterion_1_appendix_d_replay(capsys):
    def check():
        start = time.perf_counter()
        rep = verify_appendix_d()
        elapsed = time.perf_counter() - start
        dets = [reproduce_cells(r.case, r.given)["det(I - Bmin)"] for r in REFERENCE_ROWS]
        expected = {F(-7419049, 156250000), F(-305646963, 4000000000), F(-2089397, 31250000)}
        ok = rep.ok and len(rep) == 19 and all(d < 0 for d in dets) and expected <= set(dets) and elapsed <= 60
        bad = "; ".join(f"{s.step}: {s.detail}" for s in rep.failures())
        return ok, bad or f"{len(rep)} sub-ranges reproduced cell by cell, all determinants negative"

    _gate(capsys, 1, "table replay", check)


def test_criterion_2_printed_roots(capsys):
    def check():
        start = time.perf_counter()
        rep = verify_appendix_ab(10)
        elapsed = time.perf_counter() - start
        root_steps = [s for s in rep.steps if s.step.startswith(("roots ", "factor_roots "))]
        printed = sum(len(v) for v in APPENDIX_A_ROOTS.values())
        ok = rep.ok and printed >= 12 and len(root_steps) == len(APPENDIX_A_ROOTS) + 2 and elapsed <= 10
        bad = "; ".join(f"{s.step}: {s.detail}" for s in rep.failures())
        return ok, bad or f"{printed} printed roots matched within 1e-9, {len(rep)} steps"

    _gate(capsys, 2, "printed roots", check)


def test_criterion_3_identity_suite(capsys):
    def check():
        start = time.perf_counter()
        reports = [verify_h_identities(), verify_c_identities()]
        elapsed = time.perf_counter() - start
        count = sum(len(r) for r in reports)
        ok = all(r.ok for r in reports) and count >= 15 and elapsed <= 5
        bad = "; ".join(f"{s.step}: {s.detail}" for r in reports for s in r.failures())
        return ok, bad or f"{count} identities reduce to zero"

    _gate(capsys, 3, "identity suite", check)


def test_criterion_4_counterexample(capsys):
    def check():
        result = verify_example_matrix(detail=True)
        lam = eigen_jacobi(example_matrix()).values
        # Independent route: LAPACK on the same float matrix.
        lapack = np.sort(np.linalg.eigvalsh(example_matrix().to_numpy()))[::-1]
        target = np.array([float(x) for x in EXAMPLE_SPECTRUM])
        ok = (
            result.ok
            and np.max(np.abs(lapack - target)) < 1e-9
            and lam[2] > result.trace
            and result.trace < lam[0] / 2
        )
        return ok, f"residual {result.residual:.1e}, lambda3 {lam[2]:.2f} > trace {result.trace:.2f}"

    _gate(capsys, 4, "counterexample", check)


def test_criterion_5_realize_round_trip(capsys):
    def check():
        rng = np.random.default_rng(2024)
        start = time.perf_counter()
        done = failures = 0
        while done < 10_000:
            values = [F(int(v), 100) for v in rng.integers(-100, 101, 5)]
            verdict = check_conditions(values)
            if verdict.kind is not VerdictKind.REALIZABLE:
                continue
            done += 1
            m = realize(verdict.spectrum).matrix.to_numpy()
            got = np.sort(np.linalg.eigvalsh(m))[::-1]
            want = np.array(verdict.spectrum.as_floats())
            if not (np.array_equal(m, m.T) and m.min() >= -1e-12 and np.max(np.abs(got - want)) <= 1e-8):
                failures += 1
        elapsed = time.perf_counter() - start
        return failures == 0 and elapsed <= 60, f"{done} spectra, {failures} failures"

    _gate(capsys, 5, "realize round trip", check)


def test_criterion_6_lambda3_sampling(capsys):
    def check():
        start = time.perf_counter()
        counts = {}
        for name, pattern, seed in (("full", PATTERN_FULL, 1), ("H", PATTERN_H, 2), ("C", PATTERN_C, 3)):
            draws = sample_array(F(1, 2), 100_000, seed, max_radius=1.0, pattern=pattern)
            eig = np.linalg.eigvalsh(draws)
            assert np.allclose(np.trace(draws, axis1=1, axis2=2), 0.5)
            assert eig[:, -1].max() <= 1.0 and draws.min() >= 0
            counts[name] = int((eig[:, 2] > 0.5 + 1e-12).sum())
        elapsed = time.perf_counter() - start
        ok = all(v == 0 for v in counts.values()) and elapsed <= 120
        return ok, ", ".join(f"{k}: {v} violations in 100000" for k, v in counts.items())

    _gate(capsys, 6, "lambda3 sampling", check)


def test_criterion_7_large_b33_certificate(capsys):
    def check():
        rep = verify_appendix_c(samples=100_000, seed=0)
        names = [s.step for s in rep.steps]
        ok = rep.ok and "gap_sampled" in names and "b12_variant_swap" in names
        bad = "; ".join(f"{s.step}: {s.detail}" for s in rep.failures())
        return ok, bad or f"{len(rep)} steps including 100000 sampled points and the symbol swap"

    _gate(capsys, 7, "large-b33 certificate", check)


def _bump(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, Surd):
        return Surd(value.square + F(1, 100))
    return value + F(1, 100)


def test_criterion_8_mutation_sensitivity(capsys):
    def check():
        reference = golden_tables()
        missed = []
        total = 0
        for key, cells in reference.items():
            for name, value in cells.items():
                total += 1
                tables = golden_tables()
                tables[key][name] = _bump(value)
                bad = verify_appendix_d(tables=tables).failures()
                step = f"case {key[0]} sub-range {key[1]}"
                if [s.step for s in bad] != [step] or f"'{name}'" not in bad[0].detail:
                    missed.append(f"{step}/{name}")
        return not missed, f"{total - len(missed)}/{total} mutated cells named" + (f"; missed {missed[:5]}" if missed else "")

    _gate(capsys, 8, "mutation sensitivity", check)
