"""
This module contains independent oracles that tie the simulator to the
analytic dispersion theory.

Classes:
FrequencyEstimate -- Spectral peak of a time series.

Functions:
quartic_roots_bruteforce         -- Roots of F(gamma) by grid scan and bisection.
finite_difference_group_velocity -- Group velocity by differencing frequency_branches.
extract_frequency                -- Dominant angular frequency of a sampled series.
operator_residual                -- Discrete fourth-order operator applied to snapshots.
mode_snapshots                   -- Analytic eigenmode snapshots on a grid.
classical_wave_snapshots         -- Snapshots of cos(k.x - c k t) in every field.
period_error                     -- Relative RK4 error after one period of a mode.
convergence_slope                -- Log-log slope of errors against step sizes.
"""

import logging as _logging
import math as _math
from collections import namedtuple

import numpy as np
from scipy import fft as _fft
from scipy import optimize as _optimize
from scipy import signal as _signal

from . import dispersion
from . import simulator
from .util import DegenerateGroupVelocityError, SignalError

_log = _logging.getLogger(__name__)

g_scan_points = 100000
g_bisection_xtol = 1e-13
g_fd_step = 1e-5
g_min_series = 64

class FrequencyEstimate(namedtuple("FrequencyEstimate", "peak_frequency resolution amplitude")):
    __slots__ = ()

# {{{1 dispersion oracles

def quartic_roots_bruteforce(params, kvec, n_points=g_scan_points):
    """
    Returns the two non-negative roots of F(gamma) in increasing order.

    F is sampled on [0, alpha + c k + 1], which contains both branches since
    gamma_plus^2 <= alpha^2 + c^2 k^2. Sign changes are refined by bisection.
    A double root shows no sign change; it is located as an exact zero or a
    local minimum of |F| that is zero to within the grid resolution, and is
    counted twice.
    """
    upper = params.alpha + params.c * kvec.magnitude + 1.0
    grid = np.linspace(0.0, upper, n_points)
    values = dispersion.dispersion_residual(params, kvec, grid)

    def f(gamma):
        return dispersion.dispersion_residual(params, kvec, gamma)

    roots = []
    for i in np.nonzero(values == 0)[0]:
        roots.append(float(grid[i]))
        # an exact zero without a sign change is a touching root
        if 0 < i < n_points - 1 and values[i - 1] * values[i + 1] > 0:
            roots.append(float(grid[i]))
    for i in np.nonzero(values[:-1] * values[1:] < 0)[0]:
        roots.append(_optimize.bisect(f, grid[i], grid[i + 1], xtol=g_bisection_xtol))
    roots.sort()

    if len(roots) < 2:
        h = grid[1] - grid[0]
        scale = max(1.0, float(np.max(np.abs(values))))
        magnitude = np.abs(values)
        interior = np.arange(1, n_points - 1)
        minima = interior[(magnitude[interior] <= magnitude[interior - 1]) &
                          (magnitude[interior] <= magnitude[interior + 1])]
        for i in minima:
            gamma = float(grid[i])
            if magnitude[i] > 1e-6 * scale or any(abs(gamma - r) <= 2 * h for r in roots):
                continue
            _log.debug("double root near gamma=%g", gamma)
            roots.extend([gamma, gamma])
        roots.sort()
    return roots[:2]

def finite_difference_group_velocity(params, kvec, branch, h=g_fd_step):
    """
    Returns the gradient of the branch frequency by central differences of
    step h and h/2 in k1 and k3, combined by one Richardson extrapolation.
    """
    k1, k3 = kvec
    offsets = (h, -h, 0.5 * h, -0.5 * h)
    stencil = [dispersion.WaveVector(k1 + d, k3) for d in offsets] + \
              [dispersion.WaveVector(k1, k3 + d) for d in offsets]
    for point in [kvec] + stencil:
        b = params.alpha ** 2 + params.c ** 2 * point.magnitude ** 2
        if dispersion.discriminant(params, point) <= 1e-12 * max(1.0, b):
            raise DegenerateGroupVelocityError("branches cross inside the stencil at {}".format(point))
    if branch == dispersion.MINUS and abs(k3) <= h:
        raise DegenerateGroupVelocityError("inertial branch has a kink at k3 = 0 inside the stencil")

    def gamma(point):
        return dispersion.select_branch(dispersion.frequency_branches(params, point), branch)

    values = [gamma(point) for point in stencil]

    def richardson(g_ph, g_mh, g_ph2, g_mh2):
        coarse = (g_ph - g_mh) / (2 * h)
        fine = (g_ph2 - g_mh2) / h
        return (4 * fine - coarse) / 3

    return dispersion.Velocity2(richardson(*values[:4]), richardson(*values[4:]))

# {{{1 time series

def extract_frequency(series, dt):
    """
    Estimates the dominant angular frequency of a uniformly sampled series.

    The series is multiplied by a Hann window, the peak of the magnitude
    spectrum is located and refined by a parabola through the logarithms of
    the peak bin and its neighbours. A constant series yields a peak at zero.
    """
    series = np.asarray(series, dtype=float)
    n = len(series)
    if n < g_min_series:
        raise SignalError("need at least {} samples, got {}".format(g_min_series, n))
    if not np.any(series):
        raise SignalError("all-zero series has no spectral peak")

    window = _signal.get_window("hann", n)
    spectrum = np.abs(_fft.rfft(series * window))
    resolution = 2 * np.pi / (n * dt)
    j = int(np.argmax(spectrum))
    offset, peak = 0.0, float(spectrum[j])
    if 0 < j < len(spectrum) - 1 and spectrum[j - 1] > 0 and spectrum[j + 1] > 0:
        a, b, c = np.log(spectrum[j - 1:j + 2])
        curvature = a - 2 * b + c
        if curvature < 0:
            offset = 0.5 * (a - c) / curvature
            peak = float(np.exp(b - 0.25 * (a - c) * offset))
    return FrequencyEstimate((j + offset) * resolution, resolution, peak)

# {{{1 fourth-order operator

def operator_residual(params, grid, snapshots, field):
    """
    Applies the operator

        L[u] = d2/dt2 [ 1/c^2 u_tt - Laplacian u + alpha^2/c^2 u ] - alpha^2 u_x3x3

    to one field of equally spaced snapshots. Time derivatives use the
    centered 5-point (fourth) and 3-point (second) stencils, space
    derivatives are spectral. Returns the L2 norm of L[u] over all interior
    snapshots divided by the sum of the norms of its four terms.
    """
    if len(snapshots) < 5:
        raise SignalError("need at least 5 snapshots, got {}".format(len(snapshots)))
    if field not in simulator.FIELDS:
        raise SignalError("unknown field: {}".format(field))
    times = np.array([s.t for s in snapshots])
    spacings = np.diff(times)
    tau = spacings[0]
    if not tau > 0 or not np.allclose(spacings, tau, rtol=1e-9, atol=0):
        raise SignalError("snapshots are not equally spaced in time")

    u = np.array([getattr(s, field) for s in snapshots])
    c2, a2 = params.c ** 2, params.alpha ** 2
    u_tttt = (u[:-4] - 4 * u[1:-3] + 6 * u[2:-2] - 4 * u[3:-1] + u[4:]) / tau ** 4
    u_tt = (u[1:-3] - 2 * u[2:-2] + u[3:-1]) / tau ** 2
    center = u[2:-2]

    K1, K3 = grid.wavenumbers()
    axes = (1, 2)
    laplacian_tt = _fft.ifft2(-(K1 ** 2 + K3 ** 2) * _fft.fft2(u_tt, axes=axes), axes=axes).real
    u_x3x3 = _fft.ifft2(-K3 ** 2 * _fft.fft2(center, axes=axes), axes=axes).real

    terms = (u_tttt / c2, -laplacian_tt, a2 / c2 * u_tt, -a2 * u_x3x3)
    scale = sum(np.linalg.norm(term) for term in terms)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(sum(terms)) / scale)

def mode_snapshots(grid, mode, times):
    return [simulator.state_from_mode(grid, mode, t) for t in times]

def classical_wave_snapshots(grid, c, kvec, times):
    """
    Returns snapshots in which every field equals cos(k.x - c k t), a
    solution of the classical wave equation.
    """
    X1, X3 = grid.coordinates()
    omega = c * kvec.magnitude
    snapshots = []
    for t in times:
        u = np.cos(kvec.k1 * X1 + kvec.k3 * X3 - omega * t)
        snapshots.append(simulator.FieldState(u, u.copy(), u.copy(), u.copy(), t=t))
    return snapshots

# {{{1 convergence

def period_error(params, grid, mode, n_steps):
    """
    Integrates a mode over one period 2 pi / gamma in n_steps steps and
    returns the error relative to the initial state.
    """
    dt = 2 * np.pi / mode.gamma / n_steps
    config = simulator.SimConfig(params, grid, dt, n_steps, record_every=n_steps)
    initial = simulator.state_from_mode(grid, mode)
    final = simulator.run(config, initial).snapshots[-1]
    return final.combine(initial, -1.0).norm() / initial.norm()

def convergence_slope(steps, errors):
    """
    Returns the least-squares slope of log(error) against log(step).
    """
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
