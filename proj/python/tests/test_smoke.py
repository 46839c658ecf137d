"""Smoke tests for the pymems module: a few closed-form checks per operation."""

import math
import sys

import pymems as pm


def approx(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    grid = pm.GridDomain.interval(1.0, 200)
    g = pm.NonlinearityProfile.power_gap(2.0)
    f = pm.ForcingProfile.constant(1.0)

    # model basics
    assert approx(pm.gap_integral(g, 0.0), 1.0 / 3.0, 1e-12)
    value, arg = pm.sup_s_times_g(g)
    assert approx(value, 4.0 / 27.0, 1e-10) and approx(arg, 1.0 / 3.0, 1e-8)
    checks = {c["id"]: c["pass"] for c in pm.check_hypotheses(g, f, grid)}
    assert checks["gap-vanishes-at-contact"] and checks["forcing-inf-positive"]

    # eigenpair
    pair = pm.principal_eigenpair(grid)
    assert approx(pair["mu"], math.pi**2, 1e-3)
    assert abs(sum(w * p for w, p in zip(grid.weights, pair["phi"])) - 1.0) < 1e-10

    # stationary branch
    sol = pm.minimal_solution(grid, f, g, 1.0)
    assert sol["converged"] and sol["monotone"] and max(sol["v"]) < 0.39
    mu_t = pm.linearized_eigenvalue(grid, f, g, 1.0, sol["v"])
    assert mu_t > 0.0

    # pull-in bracket against the quadrature reference
    est = pm.pull_in_voltage(grid, f, g, 1e-4)
    ref = pm.interval_pull_in_reference(2.0, 1.0)
    mid = 0.5 * (est["lambda_lo"] + est["lambda_hi"])
    assert approx(mid, ref, 0.01), (mid, ref)
    assert est["bounds"]["upper_gap_integral"]["applicable"]

    # evolution: settles below the threshold, touches down above it
    settle = pm.evolve(grid, f, g, 0.5 * mid, 0.0, 5.0)
    assert settle["status"] == "completed"
    assert settle["max_u"][-1] < 0.5

    td = pm.evolve(grid, f, g, 6.0, 0.0, 1.0)
    assert td["status"] == "touchdown"
    bounds = pm.touchdown_bounds(grid, f, g, 6.0, 0.0)
    assert bounds["bound_gap"]["applicable"]
    assert td["contact_first_at"] <= bounds["bound_gap"]["value"] * 1.05
    assert td["contact_first_at"] <= bounds["bound_energy"]["value"] * 1.05

    # picard window
    pic = pm.picard_local(grid, f, g, 1.0, 0.0, 6)
    assert pic["t_local"] == 0.0625 and pic["ceiling_ok"]
    assert pic["gaps"][-1] < 1e-5

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
