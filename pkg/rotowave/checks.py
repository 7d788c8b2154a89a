"""
This module contains the acceptance suite run by the verify command. Every
check draws its instances from a seeded generator and returns a CheckResult.

Classes:
CheckResult -- Name, status, measured value and tolerance of a check.

Functions:
run_checks -- Run the checks of a scope.

Constants:
SCOPES              -- Accepted scopes.
g_dispersion_checks -- Checks of the analytic theory.
g_simulator_checks  -- Checks of the simulator against the theory.
"""

import logging as _logging
import math as _math
from collections import namedtuple

import numpy as np

from . import dispersion
from . import planewave
from . import simulator
from . import verify
from .util import InvalidParameterError, PolarizationSingularityError

_log = _logging.getLogger(__name__)

SCOPES = ("dispersion", "simulator", "all")

class CheckResult(namedtuple("CheckResult", "check_name status measured tolerance")):
    __slots__ = ()

    @property
    def passed(self):
        return self.status == "pass"

def _result(name, passed, measured, tolerance):
    result = CheckResult(name, "pass" if passed else "fail", float(measured), float(tolerance))
    if passed:
        _log.info("%s: pass (measured %g, tolerance %g)", name, measured, tolerance)
    else:
        _log.warning("%s: FAIL (measured %g, tolerance %g)", name, measured, tolerance)
    return result

def _random_wave_vectors(rng, n, k_min=0.0, k_max=100.0):
    """
    Returns wave vectors with magnitude in (k_min, k_max] and uniform direction.
    """
    k = k_max - (k_max - k_min) * rng.random(n)
    phi = rng.uniform(0, 2 * np.pi, n)
    return dispersion.WaveVector(k * np.sin(phi), k * np.cos(phi))

def _residual_scale(params, kvec, gamma):
    """
    Magnitude of the largest term of F; the residual of a rounded root is
    limited by |dF/dgamma^2| = sqrt(D), which these terms bound.
    """
    a2, c2, g2 = params.alpha ** 2, params.c ** 2, gamma ** 2
    k2 = kvec.k1 ** 2 + kvec.k3 ** 2
    return np.maximum.reduce([np.ones_like(g2), g2 * g2, g2 * a2, c2 * g2 * k2, c2 * a2 * kvec.k3 ** 2])

# {{{1 dispersion checks

def check_dispersion_residual(rng, n=10000):
    params = dispersion.FluidParams(rng.uniform(0, 10, n), rng.uniform(0.1, 10, n))
    kvec = _random_wave_vectors(rng, n)
    branches = dispersion.frequency_branches(params, kvec)
    worst = 0.0
    for gamma in branches:
        residual = np.abs(dispersion.dispersion_residual(params, kvec, gamma))
        worst = max(worst, float(np.max(residual / _residual_scale(params, kvec, gamma))))
    return _result("dispersion_residual", worst <= 1e-10, worst, 1e-10)

def check_oracle_agreement(rng, n=1000):
    worst = 0.0
    count = 0
    while count < n:
        params = dispersion.FluidParams(rng.uniform(0, 10), rng.uniform(0.1, 10))
        vectors = _random_wave_vectors(rng, 1)
        kvec = dispersion.WaveVector(float(vectors.k1[0]), float(vectors.k3[0]))
        b = params.alpha ** 2 + params.c ** 2 * kvec.magnitude ** 2
        if dispersion.discriminant(params, kvec) <= 1e-3 * b:
            continue
        count += 1
        oracle = verify.quartic_roots_bruteforce(params, kvec)
        formula = dispersion.frequency_branches(params, kvec)
        if len(oracle) != 2:
            return _result("oracle_agreement", False, _math.inf, 1e-9)
        worst = max(worst, abs(oracle[0] - formula.gamma_minus), abs(oracle[1] - formula.gamma_plus))
    return _result("oracle_agreement", worst <= 1e-9, worst, 1e-9)

def check_forbidden_zone(rng, n=100000):
    alpha, theta = 1.0, _math.pi / 3
    k = 100.0 * np.arange(1, n + 1) / n
    x_minus, x_plus = dispersion.branch_frequencies_squared(alpha, 1.0, k * _math.sin(theta), k * _math.cos(theta))
    lower, upper = alpha * _math.cos(theta) + 1e-6, alpha - 1e-6
    hits = 0
    for gamma in (np.sqrt(x_minus), np.sqrt(x_plus)):
        hits += int(np.count_nonzero((gamma > lower) & (gamma < upper)))
    return _result("forbidden_zone", hits == 0, hits, 0)

def check_rest_fluid(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        params = dispersion.FluidParams(0.0, rng.uniform(0.1, 10))
        k = 100.0 * (1 - rng.random())
        phi = rng.uniform(0, 2 * np.pi)
        kvec = dispersion.WaveVector(k * _math.sin(phi), k * _math.cos(phi))
        gamma = dispersion.frequency_branches(params, kvec).gamma_plus
        ck = params.c * kvec.magnitude
        vg = dispersion.group_velocity(params, kvec, gamma)
        vph = dispersion.phase_velocity(kvec, gamma)
        scale = vph.magnitude
        worst = max(worst, abs(gamma - ck) / ck,
                    abs(vg.v1 - vph.v1) / scale, abs(vg.v3 - vph.v3) / scale)
    return _result("rest_fluid_reduction", worst <= 1e-12, worst, 1e-12)

def check_axial(rng, n=1000):
    worst = 0.0
    count = 0
    while count < n:
        params = dispersion.FluidParams(rng.uniform(0, 10), rng.uniform(0.1, 10))
        kvec = dispersion.WaveVector(0.0, 100.0 * (1 - rng.random()))
        ck = params.c * kvec.magnitude
        if abs(ck - params.alpha) <= 0.02 * max(ck, params.alpha):
            continue
        count += 1
        branches = dispersion.frequency_branches(params, kvec)
        gamma = min(branches, key=lambda g: abs(g - ck))
        vg = dispersion.group_velocity(params, kvec, gamma)
        vph = dispersion.phase_velocity(kvec, gamma)
        scale = vph.magnitude
        worst = max(worst, abs(vg.v1 - vph.v1) / scale, abs(vg.v3 - vph.v3) / scale)
    return _result("axial_reduction", worst <= 1e-12, worst, 1e-12)

def check_perpendicular(rng, n=1000):
    worst = 0.0
    strict = True
    for _ in range(n):
        params = dispersion.FluidParams(rng.uniform(0.01, 10), rng.uniform(0.1, 10))
        kvec = dispersion.WaveVector(100.0 * (1 - rng.random()), 0.0)
        gamma = dispersion.frequency_branches(params, kvec).gamma_plus
        vg = dispersion.group_speed(params, kvec, gamma)
        vph = dispersion.phase_speed(kvec, gamma)
        c2 = params.c ** 2
        worst = max(worst, abs(vg * vph - c2) / c2)
        strict = strict and vg < vph
    return _result("perpendicular_normal_dispersion", strict and worst <= 1e-10, worst, 1e-10)

def check_group_velocity_gradient(rng, n=1000):
    worst = 0.0
    count = 0
    while count < n:
        params = dispersion.FluidParams(rng.uniform(0.1, 10), rng.uniform(0.1, 10))
        k = rng.uniform(0.5, 100)
        phi = rng.uniform(0, 2 * np.pi)
        kvec = dispersion.WaveVector(k * _math.sin(phi), k * _math.cos(phi))
        b = params.alpha ** 2 + params.c ** 2 * k ** 2
        if dispersion.discriminant(params, kvec) <= 1e-3 * b or abs(kvec.k3) <= 0.05 * k:
            continue
        count += 1
        branches = dispersion.frequency_branches(params, kvec)
        for branch in dispersion.BRANCHES:
            gamma = dispersion.select_branch(branches, branch)
            formula = dispersion.group_velocity(params, kvec, gamma)
            oracle = verify.finite_difference_group_velocity(params, kvec, branch)
            scale = formula.magnitude
            worst = max(worst, abs(formula.v1 - oracle.v1) / scale, abs(formula.v3 - oracle.v3) / scale)
    return _result("group_velocity_gradient", worst <= 1e-6, worst, 1e-6)

def check_denominator_identity(rng, n=1000):
    params = dispersion.FluidParams(rng.uniform(0, 10, n), rng.uniform(0.1, 10, n))
    kvec = _random_wave_vectors(rng, n)
    a2, c2 = params.alpha ** 2, params.c ** 2
    ck2 = c2 * (kvec.k1 ** 2 + kvec.k3 ** 2)
    root = dispersion.discriminant(params, kvec)
    keep = root > 1e-4 * (a2 + ck2)
    branches = dispersion.frequency_branches(params, kvec)
    plus = np.abs(2 * branches.gamma_plus ** 2 - a2 - ck2 - root) / root
    minus = np.abs(2 * branches.gamma_minus ** 2 - a2 - ck2 + root) / root
    worst = float(max(np.max(plus[keep]), np.max(minus[keep])))
    return _result("denominator_identity", worst <= 1e-10, worst, 1e-10)

# {{{1 simulator checks

def _end_to_end_grid():
    # L1 = 2 pi sqrt(3) puts the angles pi/6 and pi/3 on the grid spectrum
    return simulator.Grid(32, 32, 2 * _math.pi * _math.sqrt(3), 2 * _math.pi)

g_end_to_end_modes = ((0, 1), (0, 2), (1, 1), (2, 2), (3, 1), (6, 2), (1, 0), (2, 0))

def check_end_to_end(rng, periods=8):
    params = dispersion.FluidParams(1.5, 1.0)
    grid = _end_to_end_grid()
    dt = simulator.default_dt(params, grid)
    worst = 0.0
    for m1, m3 in g_end_to_end_modes:
        kvec = grid.wave_vector(m1, m3)
        for branch in dispersion.BRANCHES:
            try:
                mode = planewave.build_eigenmode(params, kvec, branch)
            except PolarizationSingularityError:
                continue
            n_steps = max(verify.g_min_series, int(_math.ceil(periods * 2 * _math.pi / (mode.gamma * dt))))
            config = simulator.SimConfig(params, grid, dt, n_steps, record_every=n_steps)
            record = simulator.run(config, simulator.state_from_mode(grid, mode))
            estimate = verify.extract_frequency(record.probe[:, 4], dt)
            tolerance = max(1e-3 * mode.gamma, estimate.resolution)
            error = abs(estimate.peak_frequency - mode.gamma) / tolerance
            _log.debug("mode (%d, %d) %s: gamma=%g measured=%g", m1, m3, branch, mode.gamma, estimate.peak_frequency)
            worst = max(worst, error)
    return _result("end_to_end_dispersion", worst <= 1.0, worst, 1.0)

def check_energy_conservation(rng, n_steps=1000):
    params = dispersion.FluidParams(1.0, 1.0)
    grid = simulator.Grid(64, 64, 2 * _math.pi, 2 * _math.pi)
    initial = simulator.random_state(grid, seed=int(rng.integers(2 ** 31)), mmax=1)
    config = simulator.SimConfig(params, grid, simulator.default_dt(params, grid), n_steps, record_every=n_steps)
    energy = simulator.run(config, initial).energy[:, 1]
    drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
    return _result("energy_conservation", drift <= 1e-8, drift, 1e-8)

def check_operator_residual(rng):
    params = dispersion.FluidParams(2.0, 1.0)
    grid = simulator.Grid(16, 16, 2 * _math.pi, 2 * _math.pi)
    mode = planewave.build_eigenmode(params, grid.wave_vector(1, 1), dispersion.PLUS)
    dt = 2 * _math.pi / mode.gamma / 400
    config = simulator.SimConfig(params, grid, dt, 256, record_every=16)
    snapshots = simulator.run(config, simulator.state_from_mode(grid, mode)).snapshots
    worst = 0.0
    for field in simulator.FIELDS:
        coarse = verify.operator_residual(params, grid, snapshots[::2], field)
        fine = verify.operator_residual(params, grid, snapshots, field)
        worst = max(worst, abs(coarse / fine - 4.0))
    return _result("operator_residual_order", worst <= 0.5, worst, 0.5)

def check_integrator_order(rng, ladder=(50, 100, 200, 400)):
    params = dispersion.FluidParams(2.0, 1.0)
    grid = simulator.Grid(8, 8, 2 * _math.pi, 2 * _math.pi)
    mode = planewave.build_eigenmode(params, grid.wave_vector(1, 1), dispersion.PLUS)
    errors = [verify.period_error(params, grid, mode, n) for n in ladder]
    slope = verify.convergence_slope([1.0 / n for n in ladder], errors)
    deviation = abs(slope - 4.0)
    _log.debug("integrator order slope %g", slope)
    return _result("integrator_order", deviation <= 0.2, deviation, 0.2)

g_dispersion_checks = (
    check_dispersion_residual,
    check_oracle_agreement,
    check_forbidden_zone,
    check_rest_fluid,
    check_axial,
    check_perpendicular,
    check_group_velocity_gradient,
    check_denominator_identity,
)

g_simulator_checks = (
    check_end_to_end,
    check_energy_conservation,
    check_operator_residual,
    check_integrator_order,
)

def run_checks(scope="all", seed=0):
    """
    Runs the checks of the scope ("dispersion", "simulator" or "all") and
    returns their results in a fixed order.
    """
    if scope not in SCOPES:
        raise InvalidParameterError("unknown scope: {}".format(scope))
    checks = []
    if scope in ("dispersion", "all"):
        checks.extend(g_dispersion_checks)
    if scope in ("simulator", "all"):
        checks.extend(g_simulator_checks)
    results = []
    for index, check in enumerate(checks):
        results.append(check(np.random.default_rng([seed, index])))
    return results
