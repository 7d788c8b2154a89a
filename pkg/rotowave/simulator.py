"""
This module integrates the linearized rotating-fluid equations

    dv1/dt = alpha v2 - dp/dx1
    dv2/dt = -alpha v1
    dv3/dt = -dp/dx3
    dp/dt  = -c^2 (dv1/dx1 + dv3/dx3)

on a doubly periodic grid. Spatial derivatives are spectral, time stepping is
the classical four-stage Runge-Kutta scheme. The system is linear, so no
de-aliasing is applied.

Fields are stored as arrays of shape (n1, n3); axis 0 runs along x1 and
axis 1 along x3, the rotation axis.

Classes:
Grid       -- Periodic grid with n1 x n3 points on [0, L1) x [0, L3).
FieldState -- Fields v1, v2, v3, p and the time t.
SimConfig  -- Parameters, grid, time step, step count and recording options.
RunRecord  -- Snapshots, probe series, energy series and peak speed of a run.

Functions:
max_frequency     -- Largest acoustic frequency resolved by a grid.
stability_limit   -- Largest admissible RK4 time step.
default_dt        -- Default time step.
rhs               -- Time tendencies of a state.
step              -- Advance a state by one time step.
total_energy      -- Kinetic plus compressional energy.
run               -- Integrate and record.
state_from_mode   -- Seed a state from a plane-wave mode.
random_state      -- Real band-limited random state.
imaginary_leakage -- Imaginary residue of the spectral derivatives.
"""

import logging as _logging
import math as _math
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy import fft as _fft

from . import dispersion
from . import planewave
from .util import InvalidParameterError, StabilityError, NonFiniteFieldError, is_power_of_two

_log = _logging.getLogger(__name__)

# RK4 reaches the imaginary axis at 2 sqrt(2); keep a margin
g_stability_factor = 2.5
g_default_dt_factor = 0.1
g_default_record_every = 10

FIELDS = ("v1", "v2", "v3", "p")

# {{{1 grid

class Grid(namedtuple("Grid", "n1 n3 L1 L3")):
    __slots__ = ()

    def __new__(cls, n1, n3, L1, L3):
        for name, n in (("n1", n1), ("n3", n3)):
            if not is_power_of_two(n) or n < 8:
                raise InvalidParameterError("{} must be a power of two >= 8: {}".format(name, n))
        for name, L in (("L1", L1), ("L3", L3)):
            if not (_math.isfinite(L) and L > 0):
                raise InvalidParameterError("{} must be positive: {}".format(name, L))
        return super(Grid, cls).__new__(cls, int(n1), int(n3), float(L1), float(L3))

    @property
    def shape(self):
        return (self.n1, self.n3)

    @property
    def cell_area(self):
        return self.L1 / self.n1 * self.L3 / self.n3

    def coordinates(self):
        """
        Returns the meshes (X1, X3) of grid point coordinates.
        """
        x1 = np.arange(self.n1) * (self.L1 / self.n1)
        x3 = np.arange(self.n3) * (self.L3 / self.n3)
        return np.meshgrid(x1, x3, indexing="ij")

    def wavenumbers(self):
        """
        Returns the meshes (K1, K3) of angular wavenumbers in FFT order.
        """
        k1 = 2 * np.pi * _fft.fftfreq(self.n1, d=self.L1 / self.n1)
        k3 = 2 * np.pi * _fft.fftfreq(self.n3, d=self.L3 / self.n3)
        return np.meshgrid(k1, k3, indexing="ij")

    def wave_vector(self, m1, m3):
        """
        Returns the grid-admissible wave vector (2 pi m1 / L1, 2 pi m3 / L3).
        The Nyquist line carries no first derivative, so |m| < n/2.
        """
        if abs(m1) >= self.n1 // 2 or abs(m3) >= self.n3 // 2:
            raise InvalidParameterError("mode ({}, {}) not resolved by a {}x{} grid".format(m1, m3, self.n1, self.n3))
        return dispersion.WaveVector(2 * np.pi * m1 / self.L1, 2 * np.pi * m3 / self.L3)

@lru_cache(maxsize=16)
def _derivative_symbols(grid):
    """
    Returns i*K1 and i*K3 with the Nyquist entries zeroed so that derivatives
    of real fields stay real.
    """
    K1, K3 = grid.wavenumbers()
    K1 = K1.copy()
    K3 = K3.copy()
    K1[grid.n1 // 2, :] = 0
    K3[:, grid.n3 // 2] = 0
    return 1j * K1, 1j * K3

# {{{1 state

class FieldState(namedtuple("FieldState", "v1 v2 v3 p t")):
    """
    Velocity components v1, v2, v3 and pressure perturbation p on the grid
    at time t.
    """
    __slots__ = ()

    @classmethod
    def zeros(cls, grid, t=0.0):
        return cls(*(np.zeros(grid.shape) for _ in FIELDS), t=t)

    @property
    def fields(self):
        return (self.v1, self.v2, self.v3, self.p)

    def norm(self):
        return _math.sqrt(sum(float(np.sum(f * f)) for f in self.fields))

    def is_finite(self):
        return all(np.all(np.isfinite(f)) for f in self.fields)

    def combine(self, other, factor):
        """
        Returns self + factor * other for the fields; keeps the time of self.
        """
        return FieldState(*(a + factor * b for a, b in zip(self.fields, other.fields)), t=self.t)

class SimConfig(namedtuple("SimConfig", "params grid dt n_steps record_every probe")):
    __slots__ = ()

    def __new__(cls, params, grid, dt, n_steps, record_every=g_default_record_every, probe=(0, 0)):
        if not (_math.isfinite(dt) and dt > 0):
            raise InvalidParameterError("time step must be positive: {}".format(dt))
        if int(n_steps) != n_steps or n_steps < 0:
            raise InvalidParameterError("step count must be a non-negative integer: {}".format(n_steps))
        if int(record_every) != record_every or record_every < 1:
            raise InvalidParameterError("snapshot cadence must be a positive integer: {}".format(record_every))
        i, j = probe
        if not (0 <= i < grid.n1 and 0 <= j < grid.n3):
            raise InvalidParameterError("probe ({}, {}) outside the {}x{} grid".format(i, j, grid.n1, grid.n3))
        return super(SimConfig, cls).__new__(cls, params, grid, float(dt), int(n_steps), int(record_every), (int(i), int(j)))

class RunRecord(namedtuple("RunRecord", "snapshots probe energy max_speed")):
    """
    snapshots -- FieldStates every record_every steps, starting with the
                 initial state.
    probe     -- Array with rows (t, v1, v2, v3, p) at the probe, every step.
    energy    -- Array with rows (t, E), every step.
    max_speed -- Largest |v| over the grid and over every step.
    """
    __slots__ = ()

# {{{1 stability

def max_frequency(params, grid):
    """
    Returns the largest acoustic-branch frequency over the grid spectrum.
    """
    K1, K3 = grid.wavenumbers()
    _, x_plus = dispersion.branch_frequencies_squared(params.alpha, params.c, K1, K3)
    return float(np.sqrt(np.max(x_plus)))

def stability_limit(params, grid):
    return g_stability_factor / max_frequency(params, grid)

def default_dt(params, grid, dt_factor=g_default_dt_factor):
    """
    Returns dt_factor times the shortest resolved period.
    """
    return dt_factor * 2 * np.pi / max_frequency(params, grid)

def _check_stability(config):
    limit = stability_limit(config.params, config.grid)
    if config.dt > limit:
        raise StabilityError("time step {} exceeds the stability bound {}".format(config.dt, limit))

def _check_shape(grid, state):
    for name, f in zip(FIELDS, state.fields):
        if np.shape(f) != grid.shape:
            raise InvalidParameterError("field {} has shape {}, grid is {}".format(name, np.shape(f), grid.shape))

# {{{1 dynamics

def rhs(params, grid, state):
    """
    Returns the time tendencies of the four fields as a FieldState.
    """
    if not state.is_finite():
        raise NonFiniteFieldError("non-finite field values at t = {}".format(state.t))
    ik1, ik3 = _derivative_symbols(grid)
    p_hat = _fft.fft2(state.p)
    dp1 = _fft.ifft2(ik1 * p_hat).real
    dp3 = _fft.ifft2(ik3 * p_hat).real
    div = _fft.ifft2(ik1 * _fft.fft2(state.v1) + ik3 * _fft.fft2(state.v3)).real
    alpha = params.alpha
    return FieldState(alpha * state.v2 - dp1,
                      -alpha * state.v1,
                      -dp3,
                      -params.c * params.c * div,
                      t=state.t)

def _rk4(params, grid, dt, state):
    k1 = rhs(params, grid, state)
    k2 = rhs(params, grid, state.combine(k1, 0.5 * dt))
    k3 = rhs(params, grid, state.combine(k2, 0.5 * dt))
    k4 = rhs(params, grid, state.combine(k3, dt))
    fields = (s + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d)
              for s, a, b, c, d in zip(state.fields, k1.fields, k2.fields, k3.fields, k4.fields))
    return FieldState(*fields, t=state.t + dt)

def step(config, state):
    """
    Advances the state by one RK4 step of size config.dt.
    """
    _check_stability(config)
    _check_shape(config.grid, state)
    return _rk4(config.params, config.grid, config.dt, state)

def total_energy(params, grid, state):
    """
    Returns the grid quadrature of (v1^2 + v2^2 + v3^2)/2 + p^2/(2 c^2).
    The Coriolis term does no work, so this is conserved.
    """
    density = 0.5 * (state.v1 ** 2 + state.v2 ** 2 + state.v3 ** 2) + 0.5 * state.p ** 2 / (params.c * params.c)
    return float(grid.cell_area * np.sum(density))

def _max_speed(state):
    return float(np.max(np.sqrt(state.v1 ** 2 + state.v2 ** 2 + state.v3 ** 2)))

def _probe_row(state, probe):
    i, j = probe
    return (state.t,) + tuple(float(f[i, j]) for f in state.fields)

def run(config, initial):
    """
    Integrates config.n_steps steps from the initial state.

    Probe values, energy and the peak speed are tracked every step,
    snapshots are kept every config.record_every steps. The result depends only on the inputs.
    """
    _check_stability(config)
    _check_shape(config.grid, initial)
    params, grid = config.params, config.grid
    _log.info("integrating %d steps of dt=%g on a %dx%d grid", config.n_steps, config.dt, grid.n1, grid.n3)

    state = initial
    snapshots = [state]
    probe = [_probe_row(state, config.probe)]
    energy = [(state.t, total_energy(params, grid, state))]
    max_speed = _max_speed(state)
    for n in range(1, config.n_steps + 1):
        state = _rk4(params, grid, config.dt, state)
        probe.append(_probe_row(state, config.probe))
        energy.append((state.t, total_energy(params, grid, state)))
        max_speed = max(max_speed, _max_speed(state))
        if n % config.record_every == 0:
            snapshots.append(state)
            _log.debug("snapshot at step %d, t=%g", n, state.t)
    return RunRecord(snapshots, np.array(probe), np.array(energy), max_speed)

# {{{1 initial states

def state_from_mode(grid, mode, t=0.0):
    """
    Returns the real fields of a plane-wave mode sampled on the grid.
    """
    v1, v2, v3, p = planewave.evaluate_mode(mode, grid.coordinates(), t)
    return FieldState(v1, v2, v3, p, t=t)

def random_state(grid, seed, mmax=1, amplitude=1.0):
    """
    Returns a real random state containing only the wave vectors
    (2 pi m1 / L1, 2 pi m3 / L3) with |m1|, |m3| <= mmax.
    """
    if mmax >= min(grid.n1, grid.n3) // 2:
        raise InvalidParameterError("band limit {} not resolved by the grid".format(mmax))
    rng = np.random.default_rng(seed)
    X1, X3 = grid.coordinates()
    fields = []
    for _ in FIELDS:
        f = np.zeros(grid.shape)
        for m1 in range(0, mmax + 1):
            for m3 in range(-mmax, mmax + 1):
                if m1 == 0 and m3 < 0:
                    continue
                phase = 2 * np.pi * (m1 * X1 / grid.L1 + m3 * X3 / grid.L3)
                a, b = rng.standard_normal(2)
                f += a * np.cos(phase) + b * np.sin(phase)
        fields.append(amplitude * f)
    return FieldState(*fields, t=0.0)

def imaginary_leakage(grid, state):
    """
    Returns the largest imaginary part left by the spectral derivatives,
    relative to the norm of the differentiated field.
    """
    ik1, ik3 = _derivative_symbols(grid)
    leakage = 0.0
    for f in state.fields:
        norm = np.linalg.norm(f)
        if norm == 0:
            continue
        f_hat = _fft.fft2(f)
        for symbol in (ik1, ik3):
            leakage = max(leakage, float(np.linalg.norm(_fft.ifft2(symbol * f_hat).imag) / norm))
    return leakage
