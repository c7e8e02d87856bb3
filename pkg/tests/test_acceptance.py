"""Acceptance suite: one test per criterion, with a printed PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.

Every expected number below is either derived from an independent oracle
inside this file (brute-force quadrature, closed forms) or is a recorded
reference value for the bundled problems.  Four recorded values disagree
with direct evaluation of their own defining formulas; the tests named
``*_recorded_value_discrepancy`` assert those values as recorded, fail
honestly, and carry the independently verified computation in their
message.  Everything else is green.
"""

import time

import numpy as np
import pytest

from hammerstein.conditions import check_growth, index0_check, index1_check, nonexistence_thresholds
from hammerstein.envelopes import NonlinearitySpec
from hammerstein.measures import StieltjesMeasure
from hammerstein.solver import solve
from hammerstein.systems import (
    MeasureGrid,
    system_constants,
    system_index0_check,
    system_index1_check,
    system_multiplicity,
)

E = np.e


def announce(label: str, ok: bool, detail: str = ""):
    print(f"\nACCEPTANCE {label}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"{label}: {detail}"


def trapz_oracle(f, lo, hi, n=100001):
    s = np.linspace(lo, hi, n)
    return float(np.trapezoid(f(s), s))


# ---------------------------------------------------------------------------
# pipelines shared by several criteria, run once
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def reactor_run(reactor_problem):
    start = time.perf_counter()
    r0 = index0_check(reactor_problem, 71.0 / 1000.0, StieltjesMeasure.point(0.5, 0.1))
    r1 = index1_check(reactor_problem, 53.0 / 25.0, StieltjesMeasure.point(0.5, 10.0**-1.25))
    elapsed = time.perf_counter() - start
    return r0, r1, elapsed


@pytest.fixture(scope="module")
def beam_run(beam_problem):
    r1 = index1_check(beam_problem, 0.5, StieltjesMeasure.point(0.75, 3.0))
    r0 = index0_check(beam_problem, 5.0, StieltjesMeasure.point(0.75, 0.5))
    return r1, r0


@pytest.fixture(scope="module")
def thermostat_run(thermostat_problem):
    r1 = index1_check(thermostat_problem, 1.0 / 3.0, StieltjesMeasure.point(0.2, 0.5))
    r0 = index0_check(thermostat_problem, 3.1, StieltjesMeasure.point(0.2, 3.0))
    return r1, r0


@pytest.fixture(scope="module")
def elliptic_run(elliptic_system):
    start = time.perf_counter()
    mg_r = MeasureGrid(
        {
            (1, 2, 1): StieltjesMeasure.point(1.0 / 6.0, 0.3),
            (1, 2, 2): StieltjesMeasure.point(0.2, 0.3),
        }
    )
    mg_s = MeasureGrid(
        {
            (1, 2, 1): StieltjesMeasure.point(1.0 / 6.0, 1.5),
            (1, 2, 2): StieltjesMeasure.point(0.2, 1.5),
        }
    )
    diamond = system_index0_check(
        elliptic_system, 1.0 / 12.0, 1.0 / 12.0, MeasureGrid(), "diamond", diamond_i=2
    )
    idx1 = system_index1_check(elliptic_system, 1.0, 0.5, mg_r)
    idx0 = system_index0_check(elliptic_system, 5.0, 11.0, mg_s, "full")
    summary = system_multiplicity(
        elliptic_system,
        [
            ((1.0 / 12.0, 1.0 / 12.0), "I0d", diamond),
            ((1.0, 0.5), "I1", idx1),
            ((5.0, 11.0), "I0", idx0),
        ],
    )
    consts1 = system_constants(elliptic_system, MeasureGrid(), 1, 1.0, 1.0)
    consts2 = system_constants(elliptic_system, MeasureGrid(), 2, 1.0, 1.0)
    elapsed = time.perf_counter() - start
    return dict(
        diamond=diamond, idx1=idx1, idx0=idx0, summary=summary,
        consts1=consts1, consts2=consts2, elapsed=elapsed,
    )


# ---------------------------------------------------------------------------
# criterion 1: reactor
# ---------------------------------------------------------------------------


def test_criterion1_reactor(reactor_run):
    r0, r1, elapsed = reactor_run
    checks = [
        abs(r0.constants["main.alpha_gamma"] - 0.254) <= 0.005,
        abs(r1.constants["main.alpha_gamma"] - 0.143) <= 0.005,
        abs(r0.constants["main.inf_f"] - 2.057) <= 0.005,
        r0.passed,
        r1.passed,
        elapsed < 1.0,
    ]
    announce(
        "C1 reactor example", all(checks),
        f"alpha={r0.constants['main.alpha_gamma']:.4f}/{r1.constants['main.alpha_gamma']:.4f} "
        f"inf_f={r0.constants['main.inf_f']:.4f} verdicts={r0.verdict}/{r1.verdict} "
        f"runtime={elapsed:.2f}s",
    )


def test_criterion1_reactor_recorded_value_discrepancy(reactor_run):
    _, r1, _ = reactor_run
    sup_f = r1.constants["main.sup_f"]
    # independent oracle: the envelope is decreasing on the value box, so its
    # supremum is f(c * rho2) with c = e^{-1/3}
    c_rho2 = np.exp(-1.0 / 3.0) * 53.0 / 25.0
    oracle = 0.9 * (2.2 - c_rho2) * np.exp(c_rho2)
    assert sup_f == pytest.approx(oracle, rel=1e-9)
    ok = abs(sup_f - 2.811) <= 0.005
    announce(
        "C1 reactor recorded envelope value", ok,
        f"computed sup f = {sup_f:.4f} (closed form f(c*rho2) with c = e^(-1/3) "
        f"agrees); recorded reference prints 2.811, which corresponds to the "
        f"box corner 1.510 = 0.7122 * rho2 rather than c * rho2 = 1.519",
    )


# ---------------------------------------------------------------------------
# criterion 2: beam
# ---------------------------------------------------------------------------


def test_criterion2_beam(beam_run, beam_problem):
    r1, r0 = beam_run
    checks = [
        abs(beam_problem.c - 5.0 / 16.0) < 1e-12,
        abs(r1.constants["main.alpha_gamma"] - 0.633) <= 0.005,
        abs(r0.constants["main.alpha_gamma"] - 0.105) <= 0.005,
        abs(r1.constants["main.sup_f"] - 0.062) <= 0.005,
        abs(r1.constants["main.bound"] - 2.837) <= 0.005,
        abs(r0.constants["main.inf_f"] - 156.25) <= 0.005,
        r1.passed,
        r0.passed,
    ]
    announce(
        "C2 beam example", all(checks),
        f"c=5/16 alpha={r1.constants['main.alpha_gamma']:.4f}/"
        f"{r0.constants['main.alpha_gamma']:.4f} sup_f={r1.constants['main.sup_f']:.4f} "
        f"bound1={r1.constants['main.bound']:.4f} inf_f={r0.constants['main.inf_f']:.2f}",
    )


def test_criterion2_beam_recorded_value_discrepancy(beam_run):
    _, r0 = beam_run
    bound = r0.constants["main.bound"]
    # independent oracle: both bracket terms increase with t, so the infimum
    # sits at t = 1/2; evaluate it by brute-force quadrature
    k = lambda t, s: np.where(s >= t, (3 * t * t * s - t**3) / 6.0,
                              (3 * s * s * t - s**3) / 6.0)
    gamma_half = (3 * 0.25 - 0.125) / 6.0
    CK = 0.5 * trapz_oracle(lambda s: k(0.75, s), 0.5, 1.0)
    bracket = gamma_half / (1 - 27.0 / 256.0) * CK + trapz_oracle(
        lambda s: k(0.5, s), 0.5, 1.0
    )
    assert bound == pytest.approx(1.0 / bracket, rel=1e-5)
    ok = abs(bound - 24.837) <= 0.005
    announce(
        "C2 beam recorded window bound", ok,
        f"computed bound = {bound:.4f} (brute-force quadrature of the stated "
        f"bracket agrees to 1e-5); recorded reference prints 24.837",
    )


# ---------------------------------------------------------------------------
# criterion 3: thermostat
# ---------------------------------------------------------------------------


def test_criterion3_thermostat(thermostat_run, thermostat_problem):
    r1, r0 = thermostat_run
    checks = [
        abs(thermostat_problem.c - 0.5) < 1e-12,
        abs(r1.constants["main.alpha_gamma"] - 0.15) <= 1e-9,
        abs(r0.constants["main.alpha_gamma"] - 0.9) <= 1e-9,
        abs(r1.constants["main.sup_f"] - 0.88) <= 0.005,
        abs(r0.constants["main.inf_f"] - 6.3) <= 1e-9,
        r1.passed,
        r0.passed,
    ]
    announce(
        "C3 thermostat example", all(checks),
        f"c=1/2 alpha={r1.constants['main.alpha_gamma']:.2f}/"
        f"{r0.constants['main.alpha_gamma']:.2f} sup_f={r1.constants['main.sup_f']:.4f} "
        f"inf_f={r0.constants['main.inf_f']:.2f}",
    )


def test_criterion3_thermostat_recorded_value_discrepancy(thermostat_run):
    r1, r0 = thermostat_run
    bound1 = r1.constants["main.bound"]
    bound0 = r0.constants["main.bound"]
    # independent oracles for both brackets
    k = lambda t, s: (0.25 + np.where(s <= 0.25, 0.25 - s, 0.0)
                      - np.where(s <= t, t - s, 0.0))
    CK1 = 0.5 * trapz_oracle(lambda s: k(0.2, s), 0.0, 1.0)
    bracket1 = 0.5 / 0.85 * CK1 + 9.0 / 32.0
    assert bound1 == pytest.approx(1.0 / bracket1, rel=1e-6)
    CK0 = 3.0 * trapz_oracle(lambda s: k(0.2, s), 0.0, 0.25)
    bracket0 = 0.25 / 0.1 * CK0 + 1.0 / 16.0
    assert bound0 == pytest.approx(1.0 / bracket0, rel=1e-6)
    ok = abs(bound1 - 2.704) <= 0.005 and abs(bound0 - 1.85) <= 0.005
    announce(
        "C3 thermostat recorded bounds", ok,
        f"computed bounds = {bound1:.4f} / {bound0:.4f} (brute-force "
        f"quadrature of the stated brackets agrees; the 2.704 value "
        f"corresponds to adding t^2/2 instead of subtracting it in the "
        f"kernel integral); recorded reference prints 2.704 / 1.85",
    )


# ---------------------------------------------------------------------------
# criterion 4: non-existence thresholds and growth
# ---------------------------------------------------------------------------


def test_criterion4_nonexistence(thermostat_problem):
    result = nonexistence_thresholds(thermostat_problem, StieltjesMeasure.zero())
    lam_critical = 2.0 ** (14.0 / 3.0) / 3.0
    growth = {}
    for shift in (+0.1, -0.1):
        lam = lam_critical + shift
        f = NonlinearitySpec(
            lambda t, u, lam=lam: lam * (np.sqrt(np.maximum(u, 0.0)) + u * u),
            arity=2,
        )
        growth[shift] = check_growth(
            f, result.M_alpha, ">", thermostat_problem.kernel.interval, (1e-6, 1e3)
        )
    checks = [
        abs(result.M_alpha - 16.0) <= 1e-6,
        growth[+0.1].passed,
        not growth[-0.1].passed,
    ]
    announce(
        "C4 non-existence example", all(checks),
        f"M_alpha={result.M_alpha:.8f}, growth above/below critical: "
        f"{growth[+0.1].verdict}/{growth[-0.1].verdict}",
    )


# ---------------------------------------------------------------------------
# criterion 5: elliptic system
# ---------------------------------------------------------------------------


def test_criterion5_elliptic(elliptic_run):
    run = elliptic_run
    c1, c2 = run["consts1"], run["consts2"]
    d, i1, i0 = run["diamond"], run["idx1"], run["idx0"]
    checks = [
        abs(c1["m"] - 0.72) <= 0.01,
        abs(c2["m"] - 0.577) <= 0.01,
        abs(c2["M"] - 1.376) <= 0.01,
        d.passed,
        i1.passed,
        i0.passed,
        abs(d.constants["eq2.inf_f"] - 0.125) <= 0.005,
        abs(d.constants["eq2.f_threshold"] - 1.376 / 12.0) <= 0.005,
        abs(i1.constants["eq1.sup_f"] - 0.531) <= 0.005,
        abs(i1.constants["eq2.sup_f"] - 0.281) <= 0.005,
        abs(i1.constants["eq2.f_threshold"] - 0.2885) <= 0.005,
        abs(i0.constants["eq1.inf_f"] - 31.5) <= 0.005,
        abs(i0.constants["eq2.inf_f"] - 15.25) <= 0.005,
        abs(i0.constants["eq2.f_threshold"] - 15.136) <= 0.005,
        run["summary"].pattern == "S3",
        run["summary"].count >= 2,
        run["elapsed"] < 10.0,
    ]
    announce(
        "C5 elliptic example", all(checks),
        f"m1={c1['m']:.4f} m2={c2['m']:.4f} M2={c2['M']:.4f} "
        f"verdicts={d.verdict}/{i1.verdict}/{i0.verdict} "
        f"pattern={run['summary'].pattern} solutions={run['summary'].count} "
        f"runtime={run['elapsed']:.2f}s",
    )


def test_criterion5_elliptic_recorded_value_discrepancy(elliptic_run):
    run = elliptic_run
    M1 = run["consts1"]["M"]
    # independent oracle: both kernels coincide on [0, 1/4] x [0, 1/4], the
    # window integral has closed form (e^2/8)(3 - 4t - 2e^{-2t}) and is
    # decreasing, so 1/M1 = (e^2/4)(1 - e^{-1/2}) and M1 = M2 exactly
    closed = 1.0 / (E**2 / 4.0 * (1.0 - np.exp(-0.5)))
    assert M1 == pytest.approx(closed, rel=1e-6)
    assert M1 == pytest.approx(run["consts2"]["M"], rel=1e-9)

    thr1_i1 = run["idx1"].constants["eq1.f_threshold"]
    thr1_i0 = run["idx0"].constants["eq1.f_threshold"]
    # brute-force oracle for the index-1 threshold of equation 1
    g = lambda s: np.exp(2 * (1 - s))
    k1 = lambda t, s: ((1 - s) / 2.0 + 0.5 * np.where(s <= 0.5, 0.5 - s, 0.0)
                       - np.where(s <= t, t - s, 0.0))
    K121 = 0.3 * trapz_oracle(lambda s: k1(1.0 / 6.0, s) * g(s), 0.0, 1.0)
    inv_m1 = max(trapz_oracle(lambda s: np.abs(k1(t, s)) * g(s), 0.0, 1.0)
                 for t in np.linspace(0, 1, 201))
    theta4 = 1.0 / 0.85
    bracket = 0.5 * theta4 * K121 + inv_m1
    const = 0.5 * theta4 * 0.5 * (0.15 * 0.3) + 0.5 * (0.5 * 0.3)
    assert thr1_i1 == pytest.approx((1.0 - const) / bracket, rel=1e-4)

    ok = (
        abs(M1 - 2.16) <= 0.01
        and abs(thr1_i1 - 0.579) <= 0.005
        and abs(thr1_i0 - 0.416 * 5.0) <= 0.025
    )
    announce(
        "C5 elliptic recorded values", ok,
        f"computed M1 = {M1:.4f} (closed form and the equal-by-symmetry M2 "
        f"agree; recorded reference prints 2.16); computed equation-1 "
        f"thresholds = {thr1_i1:.4f} / {thr1_i0:.4f} (brute-force quadrature "
        f"of the stated expressions agrees; recorded reference prints "
        f"0.579 / 2.08)",
    )


# ---------------------------------------------------------------------------
# criterion 6: solver properties on the reactor
# ---------------------------------------------------------------------------


def test_criterion6_solver(reactor_problem):
    sol = solve(reactor_problem, u0=1.0, damping=0.5, tol=1e-10)
    sols = {
        n: solve(reactor_problem, u0=1.0, damping=0.5, tol=1e-13, grid_n=n)
        for n in (65, 129, 257)
    }
    e1 = np.max(np.abs(sols[129].values[::2] - sols[65].values))
    e2 = np.max(np.abs(sols[257].values[::2] - sols[129].values))
    order = float(np.log2(e1 / e2))
    checks = [
        sol.converged,
        sol.residual < 1e-8,
        bool(np.all(sol.values >= 71.0 / 1000.0)),
        bool(np.all(sol.values <= 53.0 / 25.0)),
        order >= 1.8,
    ]
    announce(
        "C6 solver properties", all(checks),
        f"residual={sol.residual:.2e} range=[{sol.values.min():.4f}, "
        f"{sol.values.max():.4f}] refinement order={order:.2f}",
    )


# ---------------------------------------------------------------------------
# criterion 7: transformed-kernel integrals vs a brute-force oracle
# ---------------------------------------------------------------------------


def test_criterion7_quadrature_oracle(
    reactor_run, beam_run, thermostat_run, elliptic_run
):
    lam = 1.0 / 3.0
    k_re = lambda t, s: np.where(s > t, np.exp(lam * (t - s)), 1.0)
    k_be = lambda t, s: np.where(s >= t, (3 * t * t * s - t**3) / 6.0,
                                 (3 * s * s * t - s**3) / 6.0)
    k_th = lambda t, s: (0.25 + np.where(s <= 0.25, 0.25 - s, 0.0)
                         - np.where(s <= t, t - s, 0.0))
    k_e1 = lambda t, s: ((1 - s) / 2.0 + 0.5 * np.where(s <= 0.5, 0.5 - s, 0.0)
                         - np.where(s <= t, t - s, 0.0))
    g_el = lambda s: np.exp(2 * (1 - s))

    r0, r1, _ = reactor_run
    b1, b0 = beam_run
    t1, t0 = thermostat_run
    pairs = [
        ("reactor-i0", r0.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 0.1 * k_re(0.5, s) * lam, 0, 1)),
        ("reactor-i1", r1.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 10.0**-1.25 * k_re(0.5, s) * lam, 0, 1)),
        ("beam-i1", b1.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 3.0 * k_be(0.75, s), 0, 1)),
        ("beam-i0", b0.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 0.5 * k_be(0.75, s), 0.5, 1)),
        ("thermostat-i1", t1.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 0.5 * k_th(0.2, s), 0, 1)),
        ("thermostat-i0", t0.constants["main.transformed_integral"],
         trapz_oracle(lambda s: 3.0 * k_th(0.2, s), 0, 0.25)),
        ("elliptic-i1", elliptic_run["idx1"].constants["eq1.K_int_full_2"],
         trapz_oracle(lambda s: 0.3 * k_e1(1.0 / 6.0, s) * g_el(s), 0, 1)),
        ("elliptic-i0", elliptic_run["idx0"].constants["eq1.K_int_window_2"],
         trapz_oracle(lambda s: 1.5 * k_e1(1.0 / 6.0, s) * g_el(s), 0, 0.25)),
    ]
    worst = max(abs(ours - oracle) / abs(oracle) for _, ours, oracle in pairs)
    announce(
        "C7 quadrature oracle equivalence", worst <= 1e-6,
        f"worst relative deviation over {len(pairs)} integrals = {worst:.2e}",
    )


# ---------------------------------------------------------------------------
# criteria 8 and 9: randomized property suites
# ---------------------------------------------------------------------------


def test_criterion8_matrix_properties():
    from tests.test_systems import TestMatrix

    suite = TestMatrix()
    suite.test_order_preservation_randomized()
    suite.test_mu_monotonicity_randomized()
    announce(
        "C8 matrix property suite", True,
        "1000 random admissible matrices: inverse order preservation and "
        "diagonal-shift monotonicity",
    )


def test_criterion9_measure_and_envelope_properties():
    from tests.test_envelopes import test_box_monotonicity_randomized
    from tests.test_measures import (
        test_atom_only_application_is_exact,
        test_linearity_randomized,
        test_monotonicity_randomized,
    )

    test_linearity_randomized()
    test_monotonicity_randomized()
    test_atom_only_application_is_exact()
    test_box_monotonicity_randomized()
    announce(
        "C9 measure and envelope properties", True,
        "linearity, monotonicity, exact atom sums, box monotonicity "
        "(1000 randomized cases each)",
    )
