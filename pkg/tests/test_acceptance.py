"""End-to-end acceptance checks.

Each test certifies one advertised behavior at its stated tolerance and
prints a single machine-greppable pass/fail line.
"""

import math

import numpy as np
import pytest

from awrlab import (
    BumpTestFunction,
    EntropyClass,
    GridConfig,
    PressureParams,
    RegionLabel14,
    RiemannSolution17,
    State,
    classify,
    delta_weight_estimate,
    entropy_check,
    grh_residual,
    l1_error_vs_exact,
    limit_delta_consistency,
    simulate,
    solve,
    solve_perturbed,
    special_delta,
    sweep_original,
    sweep_perturbed,
    threshold_A0,
    transport_solve,
    weak_form_residual,
)
from awrlab.core import eigenvalues_original
from awrlab.perturbed import rarefaction_integral

LEFT = State(2.0, 1.0)
RIGHT = State(1.0, 2.0)
LEFT_RR = State(1.0, 1.0)
RIGHT_RR = State(2.0, 2.0)


def report(capsys, number, description, ok):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] acceptance {number}: {description}")
    assert ok, f"acceptance criterion {number} failed: {description}"


def test_01_delta_shock_closed_form(capsys):
    d = transport_solve(LEFT, RIGHT).delta
    ok = (
        abs(d.sigma - math.sqrt(2.0)) < 1e-12
        and abs(d.weight_rate - math.sqrt(2.0 / 3.0)) < 1e-12
    )
    report(capsys, 1, "delta-shock speed and weight rate closed forms (1e-12)", ok)


def test_02_generalized_jump_residuals(capsys):
    rng = np.random.RandomState(42)
    ok = True
    for _ in range(1000):
        rl, rr = 10.0 ** rng.uniform(-2, 2, size=2)
        ur = 10.0 ** rng.uniform(-2, 1)
        ul = ur + 10.0 ** rng.uniform(-3, 1)
        l, r = State(ul, rl), State(ur, rr)
        d = transport_solve(l, r).delta
        scale = max(1.0, l.rho * l.u, r.rho * r.u, abs(d.sigma))
        r1, r2 = grh_residual(d)
        ok &= abs(r1) < 1e-12 * scale and abs(r2) < 1e-12 * scale * scale
        s = special_delta(l, r)
        s1, s2 = grh_residual(s)
        expect = -l.rho * (l.u - r.u) ** 2
        ok &= abs(s1) < 1e-12 * scale
        ok &= abs(s2 - expect) < 1e-10 * max(1.0, abs(expect))
        ok &= entropy_check(d) is EntropyClass.OVERCOMPRESSIVE
    report(capsys, 2, "jump-condition residuals over 1e3 random entropic data", ok)


def test_03_original_delta_forming_sweep(capsys):
    schedule = [10.0**-k for k in range(1, 7)]
    rep = sweep_original(LEFT, RIGHT, 0.5, schedule)
    last = rep.records[-1]
    rhos = [r.rho_star for r in rep.records]
    ok = (
        abs(last.sigma1 - RIGHT.u) < 1e-5
        and abs(last.u_star - RIGHT.u) < 1e-12
        and abs(last.product - 1.0) < 1e-2
        and all(b > a for a, b in zip(rhos, rhos[1:]))
        and rep.passed
    )
    report(capsys, 3, "original-system sweep: speeds coalesce, mass rate -> 1", ok)


def test_04_original_vacuum_forming_sweep(capsys):
    schedule = [10.0**-k for k in range(1, 7)]
    rep = sweep_original(LEFT_RR, RIGHT_RR, 0.5, schedule)
    last = rep.records[-1]
    p_last = PressureParams(last.A, last.B, 0.5)
    lam1 = eigenvalues_original(p_last, LEFT_RR).lambda1
    ok = last.rho_star < 1e-10 and abs(lam1 - LEFT_RR.u) < 1e-5 and rep.passed
    report(capsys, 4, "original-system sweep: vacuum forms, fan collapses", ok)


def test_05_threshold_and_region_flip(capsys):
    a0 = threshold_A0(LEFT, RIGHT, 1.0)
    below = PressureParams(a0 * (1 - 1e-3), a0 * (1 - 1e-3), 1.0)
    above = PressureParams(a0 * (1 + 1e-3), a0 * (1 + 1e-3), 1.0)
    ok = (
        abs(a0 - 2.0 / 3.0) < 1e-12
        and classify(above, LEFT, RIGHT) is RegionLabel14.III
        and classify(below, LEFT, RIGHT) is RegionLabel14.IV
    )
    report(capsys, 5, "coupled threshold value 2/3 and region flip across it", ok)


def test_06_perturbed_delta_forming_sweep(capsys):
    schedule = [10.0**-k for k in range(1, 6)]
    rep = sweep_perturbed(LEFT, RIGHT, 0.5, schedule)
    sigma = math.sqrt(2.0)
    errors = [abs(r.u_star - sigma) for r in rep.records]
    last = rep.records[-1]
    rec = limit_delta_consistency(LEFT, RIGHT, 0.5, schedule[-1], schedule[-1])
    target = math.sqrt(2.0) / math.sqrt(3.0)
    ok = (
        all(b < a for a, b in zip(errors, errors[1:]))
        and errors[-1] < 5e-2
        and last.A_rho_star < 1e-2
        and abs(rec.mass_proxy - target) < 0.05 * target
        and rep.passed
    )
    report(capsys, 6, "perturbed-system sweep: velocity, A*rho and mass limits", ok)


def test_07_perturbed_vacuum_forming_sweep(capsys):
    schedule = [10.0**-k for k in range(1, 6)]
    rep = sweep_perturbed(LEFT_RR, RIGHT_RR, 0.5, schedule)
    last = rep.records[-1]
    # sigma1/sigma2 hold the outer fan edges (backward head, forward tail)
    ok = (
        last.rho_star < 1e-4
        and abs(last.sigma1 - LEFT_RR.u) < 5e-2
        and abs(last.sigma2 - RIGHT_RR.u) < 5e-2
        and rep.passed
    )
    report(capsys, 7, "perturbed-system sweep: vacuum forms, fan edges collapse", ok)


def test_08_quadrature_oracle(capsys):
    rng = np.random.RandomState(8)
    ok = True
    for _ in range(100):
        lo, hi = sorted(10.0 ** rng.uniform(-3, 3, size=2))
        alpha = rng.uniform(0.05, 0.95)
        A = 10.0 ** rng.uniform(-4, 0)
        B = 10.0 ** rng.uniform(-4, 0)
        lin = rarefaction_integral(
            PressureParams(A, 0.0, alpha, system="perturbed"), lo, hi
        )
        expect_lin = 2.0 * math.sqrt(A) * (math.sqrt(hi) - math.sqrt(lo))
        cha = rarefaction_integral(
            PressureParams(0.0, B, alpha, system="perturbed"), lo, hi
        )
        expect_cha = (
            (2.0 / alpha)
            * math.sqrt(B * alpha)
            * (lo ** (-alpha / 2.0) - hi ** (-alpha / 2.0))
        )
        scale_l = max(1.0, abs(expect_lin))
        scale_c = max(1.0, abs(expect_cha))
        ok &= abs(lin - expect_lin) < 1e-10 * scale_l
        ok &= abs(cha - expect_cha) < 1e-10 * scale_c
    report(capsys, 8, "rarefaction integral matches closed forms (1e-10)", ok)


def test_09_weak_formulation(capsys):
    p = PressureParams(1e-2, 1e-2, 0.5, system="perturbed")
    sol = solve_perturbed(p, LEFT, RIGHT)
    s1 = sol.waves[0].speed
    ok = True
    for k, center in enumerate((s1 - 0.6, s1 - 0.2, s1, s1 + 0.2, s1 + 0.6)):
        r1, r2 = weak_form_residual(p, sol, BumpTestFunction(center, 0.8))
        ok &= abs(r1) < 1e-8 and abs(r2) < 1e-8
    bad = RiemannSolution17(
        p, LEFT, State(sol.star.u, sol.star.rho * 1.01), RIGHT, sol.waves
    )
    r1_bad, _ = weak_form_residual(p, bad, BumpTestFunction(s1, 0.8))
    ok &= abs(r1_bad) > 1e-4
    report(capsys, 9, "weak-form residuals vanish exactly, detect 1% error", ok)


def test_10_finite_volume_structure(capsys):
    ok = True
    # mass conservation
    p = PressureParams(0.1, 0.1, 0.5, system="original")
    g = GridConfig(-2.0, 3.0, 400, cfl=0.5, t_end=0.4)
    snap = simulate("original", p, LEFT, RIGHT, g)[-1]
    m0 = LEFT.rho * 2.0 + RIGHT.rho * 3.0
    ok &= abs(snap.total_mass() - m0) < 1e-10 * m0
    # refinement: rarefaction + contact (original)
    p_rj = PressureParams(0.1, 0.1, 0.5, system="original")
    exact_rj = solve(p_rj, State(1.0, 2.0), State(2.0, 1.0))
    errs = []
    for n in (200, 800):
        gg = GridConfig(-2.0, 3.0, n, cfl=0.5, t_end=0.4)
        s = simulate("original", p_rj, State(1.0, 2.0), State(2.0, 1.0), gg)[-1]
        errs.append(l1_error_vs_exact(s, exact_rj.sample))
    ok &= errs[1] < errs[0]
    # refinement: two shocks (perturbed)
    p_ss = PressureParams(1e-2, 1e-2, 0.5, system="perturbed")
    exact_ss = solve_perturbed(p_ss, LEFT, RIGHT)
    errs = []
    for n in (200, 800):
        gg = GridConfig(-2.0, 3.0, n, cfl=0.5, t_end=0.4)
        s = simulate("perturbed", p_ss, LEFT, RIGHT, gg)[-1]
        errs.append(l1_error_vs_exact(s, exact_ss.sample))
    ok &= errs[1] < errs[0]
    # delta-forming run: concentrated mass and peak location
    p_d = PressureParams(1e-4, 1e-4, 0.5, system="perturbed")
    g_d = GridConfig(-1.0, 1.5, 3200, cfl=0.5, t_end=0.5)
    snap_d = simulate("perturbed", p_d, LEFT, RIGHT, g_d)[-1]
    w = delta_weight_estimate(snap_d, LEFT, RIGHT)
    target = math.sqrt(2.0) * 0.5
    ok &= w is not None and abs(w - target) < 0.10 * target
    x_peak = float(snap_d.x[np.argmax(snap_d.rho)])
    sigma = transport_solve(LEFT, RIGHT).delta.sigma
    ok &= abs(x_peak - sigma * 0.5) <= 2.0 * snap_d.dx
    report(capsys, 10, "finite-volume conservation, refinement, concentration", ok)


def test_11_property_suites_deterministic(capsys):
    # the invariant suites run headless under a fixed seed; certify that the
    # seeded draws reproduce bit-for-bit and that every random generator in
    # the suite is constructed with a literal seed
    import os
    import re

    a = np.random.RandomState(20240817).uniform(-6, 0, size=64)
    b = np.random.RandomState(20240817).uniform(-6, 0, size=64)
    ok = bool(np.array_equal(a, b))
    here = os.path.dirname(__file__)
    for name in (
        "test_core.py",
        "test_original.py",
        "test_perturbed.py",
        "test_transport.py",
        "test_fv.py",
        "test_cli.py",
        "test_io.py",
    ):
        path = os.path.join(here, name)
        ok &= os.path.exists(path)
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        for m in re.finditer(r"RandomState\(([^)]*)\)", text):
            ok &= m.group(1).strip().isdigit()
    report(capsys, 11, "property suites are seeded and reproducible", ok)
