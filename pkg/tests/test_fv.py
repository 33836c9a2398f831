"""Finite-volume structure checks: conservation, refinement, concentration."""

import numpy as np
import pytest

from awrlab import (
    GridConfig,
    PressureParams,
    State,
    delta_weight_estimate,
    l1_error_vs_exact,
    simulate,
    solve,
    solve_perturbed,
)

LEFT = State(2.0, 1.0)
RIGHT = State(1.0, 2.0)


class TestGridConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridConfig(-1.0, 1.0, 8)
        with pytest.raises(ValueError):
            GridConfig(-1.0, 1.0, 100, cfl=1.2)
        with pytest.raises(ValueError):
            GridConfig(-1.0, 1.0, 100, t_end=0.0)
        with pytest.raises(ValueError):
            GridConfig(1.0, -1.0, 100)
        with pytest.raises(ValueError):
            GridConfig(-1.0, 1.0, 100, boundary="periodic")

    def test_centers(self):
        g = GridConfig(-1.0, 1.0, 100)
        x = g.centers()
        assert len(x) == 100
        assert x[0] == pytest.approx(-1.0 + 0.5 * g.dx)
        assert x[-1] == pytest.approx(1.0 - 0.5 * g.dx)


class TestConservation:
    @pytest.mark.parametrize("system", ["original", "perturbed"])
    def test_mass_conserved_until_waves_hit_boundary(self, system):
        # this data carries equal mass flux rho*u = 2 on both sides, so the
        # outflow boundary exchange cancels and the raw total is conserved
        p = PressureParams(0.1, 0.1, 0.5, system=system)
        g = GridConfig(-2.0, 3.0, 400, cfl=0.5, t_end=0.4)
        snaps = simulate(system, p, LEFT, RIGHT, g)
        m0 = LEFT.rho * 2.0 + RIGHT.rho * 3.0
        assert snaps[-1].total_mass() == pytest.approx(m0, rel=1e-10)

    def test_momentum_conserved_up_to_boundary_fluxes(self):
        # outflow boundaries exchange momentum at the constant-state flux
        # rate f2(left) - f2(right); the corrected total is conserved
        p = PressureParams(0.1, 0.1, 0.5, system="original")
        g = GridConfig(-2.0, 3.0, 400, cfl=0.5, t_end=0.4)
        last = simulate("original", p, LEFT, RIGHT, g)[-1]
        q2_1 = float(np.sum(last.q2) * last.dx)

        def f2(s):
            pres = p.A * s.rho - p.B / s.rho**p.alpha
            return s.rho * s.u * (s.u + pres)

        def q2_density(s):
            pres = p.A * s.rho - p.B / s.rho**p.alpha
            return s.rho * (s.u + pres)

        q2_0 = q2_density(LEFT) * 2.0 + q2_density(RIGHT) * 3.0
        expected = q2_0 + last.time * (f2(LEFT) - f2(RIGHT))
        assert q2_1 == pytest.approx(expected, rel=1e-10)

    def test_snapshot_times_honored(self):
        p = PressureParams(0.1, 0.1, 0.5, system="original")
        g = GridConfig(-2.0, 3.0, 100, t_end=0.4)
        snaps = simulate("original", p, LEFT, RIGHT, g, snapshot_times=[0.1, 0.25])
        assert [round(s.time, 10) for s in snaps] == [0.1, 0.25, 0.4]


class TestRefinement:
    def test_l1_error_decreases_shock_contact_case(self):
        # strong pressure keeps the intermediate plateau wide enough to
        # resolve at N=200, so refinement is already monotone there
        p = PressureParams(1.0, 1.0, 0.5, system="original")
        exact = solve(p, LEFT, RIGHT)
        errs = []
        for n in (200, 800):
            g = GridConfig(-2.0, 3.0, n, cfl=0.5, t_end=0.4)
            snap = simulate("original", p, LEFT, RIGHT, g)[-1]
            errs.append(l1_error_vs_exact(snap, exact.sample))
        assert errs[1] < errs[0]

    def test_l1_error_decreases_rarefaction_contact_case(self):
        left, right = State(1.0, 2.0), State(2.0, 1.0)
        p = PressureParams(0.1, 0.1, 0.5, system="original")
        exact = solve(p, left, right)
        errs = []
        for n in (200, 800):
            g = GridConfig(-2.0, 3.0, n, cfl=0.5, t_end=0.4)
            snap = simulate("original", p, left, right, g)[-1]
            errs.append(l1_error_vs_exact(snap, exact.sample))
        assert errs[1] < errs[0]

    def test_l1_error_decreases_two_shock_perturbed_case(self):
        p = PressureParams(1e-2, 1e-2, 0.5, system="perturbed")
        exact = solve_perturbed(p, LEFT, RIGHT)
        errs = []
        for n in (200, 800):
            g = GridConfig(-2.0, 3.0, n, cfl=0.5, t_end=0.4)
            snap = simulate("perturbed", p, LEFT, RIGHT, g)[-1]
            errs.append(l1_error_vs_exact(snap, exact.sample))
        assert errs[1] < errs[0]


class TestDeltaConcentration:
    def test_peak_grows_under_joint_refinement(self):
        fine = simulate(
            "perturbed",
            PressureParams(1e-4, 1e-4, 0.5, system="perturbed"),
            LEFT,
            RIGHT,
            GridConfig(-1.0, 1.5, 3200, cfl=0.5, t_end=0.5),
        )[-1]
        coarse = simulate(
            "perturbed",
            PressureParams(1e-3, 1e-3, 0.5, system="perturbed"),
            LEFT,
            RIGHT,
            GridConfig(-1.0, 1.5, 800, cfl=0.5, t_end=0.5),
        )[-1]
        assert float(fine.rho.max()) > 2.0 * float(coarse.rho.max())

    def test_weight_estimate_none_without_peak(self):
        p = PressureParams(0.1, 0.1, 0.5, system="original")
        g = GridConfig(-2.0, 3.0, 100, t_end=0.1)
        snap = simulate("original", p, State(1.0, 2.0), State(2.0, 1.0), g)[-1]
        assert delta_weight_estimate(snap, State(1.0, 2.0), State(2.0, 1.0)) is None

    def test_exact_comparison_requires_positive_time(self):
        p = PressureParams(0.1, 0.1, 0.5, system="original")
        g = GridConfig(-2.0, 3.0, 100, t_end=0.1)
        snap = simulate("original", p, LEFT, RIGHT, g)[-1]
        bad = type(snap)(
            snap.x, snap.q1, snap.q2, snap.rho, snap.u, 0.0, snap.floored_cells
        )
        with pytest.raises(ValueError):
            l1_error_vs_exact(bad, solve(p, LEFT, RIGHT).sample)

    def test_unknown_system_rejected(self):
        with pytest.raises(ValueError):
            simulate(
                "transport",
                PressureParams(0.1, 0.1, 0.5),
                LEFT,
                RIGHT,
                GridConfig(-1.0, 1.0, 100),
            )
