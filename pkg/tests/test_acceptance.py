"""Acceptance criteria 1-9, each at its stated tolerance and runtime budget.

Every test records one PASS/FAIL line, printed in the pytest terminal summary
(and immediately with ``-s``).  Run alone with ``pytest tests/test_acceptance.py``
or ``python tests/test_acceptance.py``.
"""
import sys
import time

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from genhilbert.measure import Measure, moment, moment_range, moments_upto
from genhilbert.operator import divergence_probe
from genhilbert.probes import (
    CORPUS,
    FLOOR,
    IDENTITY_TOL,
    bergman_probe,
    classification,
    dirichlet_probe,
    h1_probe,
    identity_suite,
    run_probe,
)
from genhilbert.spaces import SpaceSpec, TaylorPolynomial, norm

pytestmark = pytest.mark.acceptance


def record(criterion, passed, detail):
    ACCEPTANCE_LINES[criterion] = (bool(passed), detail)
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        return False


def test_criterion_1_moment_exactness():
    rng = np.random.default_rng(1)
    atoms = list(zip(rng.uniform(0.0, 0.999, 6), rng.uniform(0.1, 2.0, 6)))
    m = Measure.atomic(atoms)
    probe_n = np.unique(np.r_[np.arange(0, 50), rng.integers(0, 10_001, 50), 10_000])
    mpmath.mp.dps = 50
    oracle = np.array([float(mpmath.fsum(mpmath.mpf(c) * mpmath.mpf(t) ** int(n) for t, c in m.atoms))
                       for n in probe_n])
    n = np.arange(10_001)
    with Timer() as tm:
        leb_table = moments_upto(Measure.lebesgue(), 10_000).values
        leb_range = moment_range(Measure.lebesgue(), 0, 10_001)
        leb_single = np.array([moment(Measure.lebesgue(), k) for k in probe_n])
        atom_table = moments_upto(m, 10_000).values
        atom_single = np.array([moment(m, int(k)) for k in probe_n])
    exact = 1.0 / (n + 1.0)
    leb_err = max(np.max(np.abs(leb_table - exact)), np.max(np.abs(leb_range - exact)),
                  np.max(np.abs(leb_single - exact[probe_n])))
    atom_err = max(np.max(np.abs(atom_table[probe_n] - oracle) / oracle),
                   np.max(np.abs(atom_single - oracle) / oracle))
    ok = leb_err <= 1e-12 and atom_err <= 1e-15 and tm.seconds < 1.0
    record(1, ok, f"lebesgue err {leb_err:.1e} (<=1e-12), atomic rel err {atom_err:.1e} (<=1e-15), "
                  f"{tm.seconds:.2f}s (<1s)")


def test_criterion_2_norm_oracles():
    rng = np.random.default_rng(2)
    polys = []
    for _ in range(200):
        d = int(rng.integers(0, 101))
        polys.append(rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1))
    worst = 0.0
    with Timer() as tm:
        for c in polys:
            f = TaylorPolynomial(c)
            a2 = np.abs(c) ** 2
            h2 = np.sqrt(a2.sum())
            a20 = np.sqrt(np.sum(a2 / np.arange(1, c.size + 1)))
            worst = max(worst, abs(norm(f, SpaceSpec.hardy(2)) / h2 - 1),
                        abs(norm(f, SpaceSpec.bergman(2, 0)) / a20 - 1))
    ok = worst <= 1e-8 and tm.seconds < 30
    record(2, ok, f"worst relative deviation {worst:.1e} (<=1e-8) over 200 polynomials, {tm.seconds:.1f}s (<30s)")


def test_criterion_3_identity_suite():
    checks = ["reproducing", "pairing", "radial-a", "radial-b"]
    with Timer() as tm:
        results = identity_suite(42, 100, checks)
    worst = {c: max(r.value for r in results if r.check == c) for c in checks}
    counts = {c: sum(r.check == c for r in results) for c in checks}
    ok = all(counts[c] == 100 for c in checks) and max(worst.values()) <= IDENTITY_TOL and tm.seconds < 60
    detail = ", ".join(f"{c} {worst[c]:.1e}" for c in checks)
    record(3, ok, f"max deviation (<=1e-6): {detail}; {tm.seconds:.1f}s (<60s)")


def test_criterion_4_inequality_constants():
    checks = ["fejer-riesz", "hardy-coefficient", "vinogradov", "hardy-integral"]
    with Timer() as tm:
        results = identity_suite(42, 1000, checks)
    worst = {c: min(r.value for r in results if r.check == c) for c in checks}
    violations = sum(r.value < FLOOR for r in results)
    counts = {c: sum(r.check == c for r in results) for c in checks}
    ok = violations == 0 and all(counts[c] == 1000 for c in checks) and tm.seconds < 60
    detail = ", ".join(f"{c} {worst[c]:.2e}" for c in checks)
    record(4, ok, f"{violations} violations; min slack: {detail}; {tm.seconds:.1f}s (<60s)")


def test_criterion_5_h1_dichotomy():
    with Timer() as t1:
        leb = run_probe(h1_probe(CORPUS["lebesgue"]))
    with Timer() as t2:
        logc = run_probe(h1_probe(CORPUS["atomic-logcarleson"]))
    ell = np.log(1.0 / (1.0 - leb.b))
    band = leb.ratios[-6:] / ell[-6:]
    band_ratio = band.max() / band.min()
    ok = (leb.verdict == "log-divergent" and band_ratio <= 2.0 and logc.verdict == "bounded"
          and logc.e_pow < 0.05 and t1.seconds < 60 and t2.seconds < 60)
    record(5, ok, f"lebesgue {leb.verdict} (R/log band ratio {band_ratio:.3f} <=2), "
                  f"log-Carleson {logc.verdict} e_pow {logc.e_pow:.4f} (<0.05); {t1.seconds:.1f}s, {t2.seconds:.1f}s (<60s each)")


def test_criterion_6_bergman_dichotomy():
    with Timer() as tm:
        leb = run_probe(bergman_probe(CORPUS["lebesgue"], p=4.0, alpha=1.0))
        sq = run_probe(bergman_probe(CORPUS["density-g-0.5"], p=4.0, alpha=1.0))
    ok = (leb.verdict == "bounded" and sq.verdict == "power-divergent" and 0.35 <= sq.e_pow <= 0.65
          and tm.seconds < 120)
    record(6, ok, f"lebesgue {leb.verdict}, density(-0.5) {sq.verdict} e_pow {sq.e_pow:.4f} in [0.35,0.65]; "
                  f"{tm.seconds:.1f}s (<120s)")


def test_criterion_7_dirichlet_dichotomy():
    parts, ok = [], True
    with Timer() as tm:
        for alpha in (0.5, 1.0):
            leb = run_probe(dirichlet_probe(CORPUS["lebesgue"], p=2.0, alpha=alpha))
            sq = run_probe(dirichlet_probe(CORPUS["density-g-0.5"], p=2.0, alpha=alpha))
            ok &= leb.verdict == "bounded" and sq.verdict == "power-divergent" and 0.35 <= sq.e_pow <= 0.65
            parts.append(f"alpha={alpha}: lebesgue {leb.verdict}, density(-0.5) {sq.verdict} e_pow {sq.e_pow:.4f}")
    ok &= tm.seconds < 120
    record(7, ok, "; ".join(parts) + f"; {tm.seconds:.1f}s (<120s)")


def test_criterion_8_divergent_example():
    def log_coeffs(n):
        out = np.zeros(n.shape)
        out[n >= 1] = 1.0 / np.log(n[n >= 1] + 1.0)
        return out

    leb = Measure.lebesgue()
    with Timer() as tm:
        div = divergence_probe(leb, log_coeffs)
        conv = divergence_probe(leb, lambda n: 2.0 ** -n)
    monotone = bool(np.all(np.diff(div.partial_sums[1:]) > 0))
    ok = (div.verdict == "divergent" and conv.verdict == "convergent" and monotone and div.c > 0
          and div.c_lower > 0 and tm.seconds < 30)
    record(8, ok, f"log series {div.verdict} (c={div.c:.4f}, 95% lower {div.c_lower:.4f}, S monotone {monotone}), "
                  f"geometric {conv.verdict}; {tm.seconds:.1f}s (<30s)")


def test_criterion_9_verdict_classification_matrix():
    probes = {"h1": (h1_probe, "log_carleson"), "bergman-p4a1": (bergman_probe, "carleson"),
              "dirichlet-p2a0.5": (dirichlet_probe, "carleson")}
    mismatches = []
    with Timer() as tm:
        for name, m in CORPUS.items():
            cls = classification(m)
            for probe_name, (builder, key) in probes.items():
                verdict = run_probe(builder(m)).verdict
                expected_bounded = cls[key]
                if (verdict == "bounded") != expected_bounded or verdict == "inconclusive":
                    mismatches.append(f"{name}/{probe_name}: {verdict} vs {key}={expected_bounded}")
    ok = len(CORPUS) >= 6 and not mismatches and tm.seconds < 600
    detail = f"{len(CORPUS)} measures x {len(probes)} probes, {len(mismatches)} mismatches"
    if mismatches:
        detail += " (" + "; ".join(mismatches) + ")"
    record(9, ok, detail + f"; {tm.seconds:.1f}s (<600s)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
