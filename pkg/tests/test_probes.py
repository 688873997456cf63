import math

import numpy as np
import pytest

from conftest import poly
from genhilbert.measure import Measure, total_mass
from genhilbert.probes import (
    CHECKS,
    CORPUS,
    DEFAULT_THRESHOLDS,
    EXPERIMENTS,
    FLOOR,
    ProbeSpec,
    StepFunction,
    Thresholds,
    abs_integral_unit,
    alpha_log_probe,
    bergman_probe,
    classification,
    classify_growth,
    d1_alpha_probe,
    fejer_riesz_check,
    h1_probe,
    hardy_coefficient_check,
    hardy_integral_lemma_check,
    identity_suite,
    m_infty_lemma_check,
    run_probe,
    vinogradov_check,
)
from genhilbert.spaces import Family, SpaceSpec, TaylorPolynomial
from genhilbert.spaces import test_function as make_family_member

B = 1.0 - 2.0 ** -np.arange(2, 15)
ELL = np.log(1.0 / (1.0 - B))


# ---------------------------------------------------------------------------
# growth verdicts on synthetic ratio sequences

@pytest.mark.parametrize("ratios,verdict", [
    (np.full(B.size, 3.0), "bounded"),
    (3.0 - 1.0 / ELL, "bounded"),
    (ELL, "log-divergent"),
    ((1 - B) ** -0.5, "power-divergent"),
    ((1 - B) ** -0.1, "log-divergent"),  # between the exponent thresholds and increasing
    (1.0 + 0.5 * (-1.0) ** np.arange(B.size), "inconclusive"),
])
def test_classify_growth(ratios, verdict):
    out = classify_growth(B, ratios)
    assert out["verdict"] == verdict


def test_classify_growth_exponent():
    out = classify_growth(B, 2.0 * (1 - B) ** -0.5)
    assert out["e_pow"] == pytest.approx(0.5, abs=1e-12)


def test_thresholds_validation():
    assert DEFAULT_THRESHOLDS.bounded_exponent == 0.05
    with pytest.raises(ValueError):
        Thresholds(bounded_exponent=0.2, divergent_exponent=0.15)
    with pytest.raises(ValueError):
        Thresholds(spread=1.0)


def test_probe_spec_validation():
    with pytest.raises(ValueError):
        ProbeSpec(Measure.lebesgue(), SpaceSpec.bergman(4, 1), SpaceSpec.bergman(4, 1), Family("h1"))
    spec = bergman_probe(Measure.lebesgue(), grid_exponents=(2, 3, 4))
    np.testing.assert_array_equal(spec.b_grid, [0.75, 0.875, 0.9375])


def test_run_probe_small_grid():
    spec = h1_probe(CORPUS["atomic-logcarleson"], grid_exponents=tuple(range(2, 10)))
    rep = run_probe(spec)
    assert rep.verdict == "bounded"
    assert np.all(rep.ratios > 0)
    rows = rep.rows()
    assert len(rows) == 8 and rows[0]["K"] == 200 and rows[0]["N_out"] == 800
    np.testing.assert_array_equal(rep.ratios, run_probe(spec).ratios)


def test_classification_corpus():
    assert classification(CORPUS["lebesgue"]) == {"carleson": True, "log_carleson": False}
    assert classification(CORPUS["atomic-logcarleson"]) == {"carleson": True, "log_carleson": True}
    assert classification(CORPUS["density-g-0.5"]) == {"carleson": False, "log_carleson": False}
    assert len(CORPUS) >= 6
    assert {"h1-d10-lebesgue", "h1-d10-logcarleson", "bergman-p4a1-sqrt"} <= set(EXPERIMENTS)


@pytest.mark.slow
def test_d1_alpha_one_directional():
    # Carleson measure, -1 < alpha < 0: bounded; the converse is not asserted
    rep = run_probe(d1_alpha_probe(CORPUS["lebesgue"]))
    assert rep.verdict == "bounded"


@pytest.mark.slow
def test_alpha_log_range():
    m = CORPUS["logdensity-d-0.5"]
    assert classification(m)["carleson"]
    rep = run_probe(alpha_log_probe(m))
    assert rep.verdict == "bounded"
    assert rep.ratios.max() / rep.ratios.min() < 1.5


# ---------------------------------------------------------------------------
# inequality checkers

def test_abs_integral_unit():
    assert abs_integral_unit(poly(1, -2)) == pytest.approx(0.5, abs=1e-15)  # |1 - 2t|
    assert abs_integral_unit(poly(0, 0, 1j)) == pytest.approx(1 / 3, rel=1e-14)


def test_fejer_riesz_examples():
    assert fejer_riesz_check(poly(1)) == pytest.approx(math.pi - 1, rel=1e-12)
    for n in (1, 5, 20):
        f = TaylorPolynomial(np.eye(n + 1)[n])
        assert fejer_riesz_check(f) == pytest.approx(math.pi - 1 / (n + 1), rel=1e-12)


def test_hardy_coefficient_examples():
    assert hardy_coefficient_check(poly(1)) == pytest.approx(math.pi - 1, rel=1e-12)
    for N in (5, 40):
        assert hardy_coefficient_check(TaylorPolynomial(np.ones(N + 1))) >= 0
    for j in (2, 6, 10):
        assert hardy_coefficient_check(make_family_member(Family("h1"), 1 - 2.0 ** -j).poly) >= FLOOR
    with pytest.raises(ValueError):
        hardy_coefficient_check(poly(1, -1))


def test_hardy_integral_examples():
    one = StepFunction((0.0, 1.0), (1.0,))
    slack, lhs, rhs = hardy_integral_lemma_check(one, 2.0, 1.0, return_sides=True)
    assert lhs == pytest.approx(1 / 3, rel=1e-14) and rhs == pytest.approx(4 / 3, rel=1e-14)
    assert slack == pytest.approx(1.0, rel=1e-14)
    assert hardy_integral_lemma_check(StepFunction((0.0, 0.5, 1.0), (0.0, 0.0)), 3.0, 2.0) == 0.0
    with pytest.raises(ValueError):
        hardy_integral_lemma_check(one, 1.0, 1.0)
    with pytest.raises(ValueError):
        hardy_integral_lemma_check(one, 2.0, 0.0)


def test_hardy_integral_grid():
    rng = np.random.default_rng(23)
    for _ in range(30):
        br = np.r_[0.0, np.sort(rng.uniform(size=7)), 1.0]
        h = StepFunction(tuple(br), tuple(rng.exponential(size=8)))
        for q in (1.5, 2.0, 3.0):
            for k in (0.5, 1.0, 2.0):
                assert hardy_integral_lemma_check(h, q, k) >= 0


def test_hardy_integral_matches_quadrature():
    from scipy import integrate
    h = StepFunction((0.0, 0.3, 0.8, 1.0), (2.0, 0.5, 1.0))
    q, k = 2.5, 0.7
    hv = lambda x: np.interp(x, [0, 0.3, 0.3, 0.8, 0.8, 1.0], [2, 2, 0.5, 0.5, 1, 1])
    H = lambda x: integrate.quad(hv, x, 1, points=[0.3, 0.8])[0]
    lhs = integrate.quad(lambda x: H(x) ** q * x ** (k - 1), 0, 1, points=[0.3, 0.8], limit=200)[0]
    rhs = (q / k) ** q * integrate.quad(lambda x: hv(x) ** q * x ** (q + k - 1), 0, 1, points=[0.3, 0.8])[0]
    _, l2, r2 = hardy_integral_lemma_check(h, q, k, return_sides=True)
    assert l2 == pytest.approx(lhs, rel=1e-7) and r2 == pytest.approx(rhs, rel=1e-9)


def test_step_function_validation():
    with pytest.raises(ValueError):
        StepFunction((0.0, 0.5), (1.0,))
    with pytest.raises(ValueError):
        StepFunction((0.0, 1.0), (-1.0,))
    with pytest.raises(ValueError):
        StepFunction(tuple(np.linspace(0, 1, 66)), (1.0,) * 65)


def test_vinogradov_examples():
    rng = np.random.default_rng(29)
    for _ in range(10):
        a = np.sort(rng.exponential(size=int(rng.integers(1, 40))))[::-1]
        f = TaylorPolynomial(a)
        assert vinogradov_check(f) >= FLOOR and vinogradov_check(f, "quadrature") >= FLOOR
    with pytest.raises(ValueError):
        vinogradov_check(poly(1, 2))


def test_m_infty_examples():
    for m in (CORPUS["lebesgue"], CORPUS["density-g0.5"], CORPUS["atomic-carleson"]):
        r = m_infty_lemma_check(m, poly(1), 2.0, 0.0)
        assert 0 < r <= total_mass(m)
    vals = [m_infty_lemma_check(CORPUS["lebesgue"], TaylorPolynomial(np.eye(n + 1)[n]), 2.0, 0.0)
            for n in (1, 2, 4, 8)]
    np.testing.assert_allclose(vals, [1 / (2 * (2 * n + 1)) for n in (1, 2, 4, 8)], rtol=1e-8)
    ratios = [m_infty_lemma_check(CORPUS["lebesgue"], make_family_member(Family("h1"), 1 - 2.0 ** -j).kernel,
                                  1.0, 0.0, "dirichlet") for j in range(2, 15)]
    small = make_family_member(Family("h1"), 0.9375)
    assert m_infty_lemma_check(CORPUS["lebesgue"], small.poly, 1.0, 0.0, "dirichlet") == pytest.approx(
        m_infty_lemma_check(CORPUS["lebesgue"], small.kernel, 1.0, 0.0, "dirichlet"), rel=1e-6)
    assert max(ratios) < 5 and max(ratios) / min(ratios) < 3


def test_m_infty_warns_outside_hypothesis():
    with pytest.warns(RuntimeWarning):
        m_infty_lemma_check(CORPUS["density-g-0.5"], poly(1), 2.0, 0.0)


# ---------------------------------------------------------------------------
# identity suite

def test_identity_suite_small_and_deterministic():
    a = identity_suite(42, 5)
    b = identity_suite(42, 5)
    assert len(a) == 5 * len(CHECKS)
    assert all(r.passed for r in a)
    assert [r.value for r in a] == [r.value for r in b]
    # streams are per check: a subset reproduces the same cases
    only = identity_suite(42, 5, ["vinogradov"])
    assert [r.value for r in only] == [r.value for r in a if r.check == "vinogradov"]


def test_identity_suite_errors():
    with pytest.raises(ValueError):
        identity_suite(1, 0)
    with pytest.raises(ValueError):
        identity_suite(1, 2, ["nope"])
