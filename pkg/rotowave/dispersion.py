"""
This module contains the analytic dispersion theory of small-amplitude waves
in a uniformly rotating compressible fluid with motion restricted to the
plane (x1, x3), x3 being the rotation axis.

For a plane wave exp(i(k.x + gamma t)) the frequency satisfies the quartic

    F(gamma) = gamma^4 - gamma^2 alpha^2 - c^2 gamma^2 k^2 + c^2 alpha^2 k3^2 = 0,

which is a quadratic in X = gamma^2 with two non-negative roots: the inertial
branch gamma_minus <= alpha |cos theta| and the acoustic branch
gamma_plus >= max(alpha, c k). All functions are pure and accept numpy arrays
wherever the formula is elementwise.

Classes:
FluidParams        -- Rotation rate, sound speed and equilibrium density.
WaveVector         -- Wave vector (k1, k3).
DispersionBranches -- Inertial and acoustic branch frequencies.
Velocity2          -- Velocity in the (x1, x3) plane.
PropagationRegime  -- Classification of a frequency and direction.

Functions:
wave_angle                 -- Angle between a wave vector and the x3 axis.
branch_frequencies_squared -- Vectorized stable solve for gamma^2 on both branches.
dispersion_residual        -- Evaluate F(gamma).
operator_symbol            -- Fourier symbol of the fourth-order wave operator.
discriminant               -- Square root of the discriminant of the quadratic in gamma^2.
frequency_branches         -- Both branch frequencies of a wave vector.
select_branch              -- Pick one branch by name.
wavenumber_from_frequency  -- Invert the dispersion relation for k.
classify_regime            -- Decide whether a frequency propagates in a direction.
group_velocity             -- Gradient of gamma with respect to the wave vector.
phase_velocity             -- gamma k / k^2.
group_speed, phase_speed   -- Magnitudes of the above.
group_angle                -- Angle between the group velocity and the x3 axis.
inside_characteristic_cone -- Test a point against the characteristic cone.
cone_half_angle            -- Half-angle of the characteristic cone.

Constants:
MINUS, PLUS                 -- Branch names.
PROPAGATING, FORBIDDEN,
EVANESCENT_PERPENDICULAR,
AXIAL_ANY_FREQUENCY         -- Regime tags.
"""

import math as _math
from collections import namedtuple

import numpy as np

from .util import InvalidParameterError, DegenerateWaveVectorError, \
    DegenerateGroupVelocityError, FormulaSingularityError

MINUS, PLUS = "minus", "plus"
BRANCHES = (MINUS, PLUS)

PROPAGATING = "Propagating"
FORBIDDEN = "Forbidden"
EVANESCENT_PERPENDICULAR = "EvanescentPerpendicular"
AXIAL_ANY_FREQUENCY = "AxialAnyFrequency"
REGIMES = (PROPAGATING, FORBIDDEN, EVANESCENT_PERPENDICULAR, AXIAL_ANY_FREQUENCY)

# angles this close to 0 or pi/2 count as axial or perpendicular
g_angle_tol = 1e-12
# relative size below which the group velocity denominator counts as zero
g_degenerate_tol = 1e-12

def _as_float(x):
    """
    Converts scalars to float and everything else to a float array.
    """
    if np.ndim(x) == 0:
        return float(x)
    return np.asarray(x, dtype=float)

def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x

# {{{1 domain types

class FluidParams(namedtuple("FluidParams", "alpha c rho0")):
    """
    Parameters of the rotating fluid.

    alpha -- Rotation rate (twice the angular velocity), alpha >= 0.
    c     -- Sound speed, c > 0.
    rho0  -- Equilibrium density, always 1.
    """
    __slots__ = ()

    def __new__(cls, alpha, c=1.0, rho0=1.0):
        alpha, c = _as_float(alpha), _as_float(c)
        if not np.all(np.isfinite(alpha)) or np.any(alpha < 0):
            raise InvalidParameterError("rotation rate must be finite and non-negative: {}".format(alpha))
        if not np.all(np.isfinite(c)) or np.any(c <= 0):
            raise InvalidParameterError("sound speed must be finite and positive: {}".format(c))
        if rho0 != 1:
            raise InvalidParameterError("equilibrium density is fixed to 1: {}".format(rho0))
        return super(FluidParams, cls).__new__(cls, alpha, c, 1.0)

class WaveVector(namedtuple("WaveVector", "k1 k3")):
    """
    Wave vector with component k1 across and k3 along the rotation axis.
    """
    __slots__ = ()

    def __new__(cls, k1, k3):
        k1, k3 = _as_float(k1), _as_float(k3)
        if not (np.all(np.isfinite(k1)) and np.all(np.isfinite(k3))):
            raise InvalidParameterError("wave vector must be finite: ({}, {})".format(k1, k3))
        return super(WaveVector, cls).__new__(cls, k1, k3)

    @classmethod
    def from_polar(cls, k, theta):
        """
        Builds the wave vector of magnitude k at angle theta from the x3 axis.
        The endpoints theta = 0 and theta = pi/2 give exact zeros.
        """
        if abs(theta) <= g_angle_tol:
            return cls(0.0, k)
        if abs(theta - _math.pi / 2) <= g_angle_tol:
            return cls(k, 0.0)
        return cls(k * _math.sin(theta), k * _math.cos(theta))

    @property
    def magnitude(self):
        return _scalar(np.hypot(self.k1, self.k3))

    @property
    def theta(self):
        return wave_angle(self)

class DispersionBranches(namedtuple("DispersionBranches", "gamma_minus gamma_plus")):
    """
    The inertial (minus) and acoustic (plus) frequencies of one wave vector.
    """
    __slots__ = ()

class Velocity2(namedtuple("Velocity2", "v1 v3")):
    __slots__ = ()

    @property
    def magnitude(self):
        return _scalar(np.hypot(self.v1, self.v3))

class PropagationRegime(namedtuple("PropagationRegime", "tag decay_rate wavenumber")):
    """
    Classification of a frequency travelling in a given direction.

    tag        -- One of the regime constants.
    decay_rate -- Spatial decay rate, only for EvanescentPerpendicular.
    wavenumber -- Real wavenumber when known, for Propagating and
                  AxialAnyFrequency results of wavenumber_from_frequency.
    """
    __slots__ = ()

    def __new__(cls, tag, decay_rate=None, wavenumber=None):
        if tag not in REGIMES:
            raise InvalidParameterError("unknown regime: {}".format(tag))
        if decay_rate is not None and not decay_rate > 0:
            raise InvalidParameterError("decay rate must be positive: {}".format(decay_rate))
        return super(PropagationRegime, cls).__new__(cls, tag, decay_rate, wavenumber)

# {{{1 dispersion relation

def wave_angle(kvec):
    """
    Returns the angle in [0, pi/2] between the wave vector and the x3 axis.

    Only cos^2 theta enters the dispersion relation, so the angle is folded
    by symmetry. The angle of the zero vector is undefined.
    """
    return _scalar(np.arctan2(np.abs(kvec.k1), np.abs(kvec.k3)))

def branch_frequencies_squared(alpha, c, k1, k3):
    """
    Returns (X_minus, X_plus), the roots of

        X^2 - (alpha^2 + c^2 k^2) X + c^2 alpha^2 k3^2 = 0.

    The discriminant is evaluated as the sum of squares
    (alpha^2 - c^2 k^2)^2 + (2 c alpha k1)^2, the larger root directly and the
    smaller one from the product of the roots.
    """
    a2 = np.multiply(alpha, alpha)
    ck2 = np.multiply(c, c) * (np.multiply(k1, k1) + np.multiply(k3, k3))
    b = a2 + ck2
    root = np.hypot(a2 - ck2, 2.0 * np.multiply(c, alpha) * k1)
    x_plus = 0.5 * (b + root)
    q = np.multiply(c, c) * a2 * np.multiply(k3, k3)
    x_minus = np.divide(q, x_plus, out=np.zeros(np.shape(x_plus)), where=x_plus > 0)
    return _scalar(x_minus), _scalar(x_plus)

def dispersion_residual(params, kvec, gamma):
    """
    Returns F(gamma), which vanishes exactly on the dispersion branches.
    """
    a2 = params.alpha * params.alpha
    c2 = params.c * params.c
    k2 = kvec.k1 * kvec.k1 + kvec.k3 * kvec.k3
    g2 = np.multiply(gamma, gamma)
    return _scalar(g2 * g2 - g2 * a2 - c2 * g2 * k2 + c2 * a2 * kvec.k3 * kvec.k3)

def operator_symbol(params, kvec, gamma):
    """
    Returns the Fourier symbol of the fourth-order operator

        L = d2/dt2 [ 1/c^2 d2/dt2 - Laplacian + alpha^2/c^2 ] - alpha^2 d2/dx3^2

    at exp(i(k.x + gamma t)), which equals F(gamma) / c^2.
    """
    return dispersion_residual(params, kvec, gamma) / (params.c * params.c)

def discriminant(params, kvec):
    """
    Returns sqrt(D) where D is the discriminant of the quadratic in gamma^2.
    """
    a2 = params.alpha * params.alpha
    ck2 = params.c * params.c * (kvec.k1 * kvec.k1 + kvec.k3 * kvec.k3)
    return _scalar(np.hypot(a2 - ck2, 2.0 * params.c * params.alpha * kvec.k1))

def frequency_branches(params, kvec):
    """
    Returns the non-negative frequencies of both branches for a non-zero
    wave vector.
    """
    if np.any(kvec.magnitude == 0):
        raise DegenerateWaveVectorError("degenerate wave vector: k = 0")
    x_minus, x_plus = branch_frequencies_squared(params.alpha, params.c, kvec.k1, kvec.k3)
    return DispersionBranches(_scalar(np.sqrt(x_minus)), _scalar(np.sqrt(x_plus)))

def select_branch(branches, name):
    if name == MINUS:
        return branches.gamma_minus
    if name == PLUS:
        return branches.gamma_plus
    raise InvalidParameterError("unknown branch: {}".format(name))

# {{{1 regimes

def _check_frequency_and_angle(gamma, theta):
    if not gamma >= 0:
        raise InvalidParameterError("frequency must be non-negative: {}".format(gamma))
    if not -g_angle_tol <= theta <= _math.pi / 2 + g_angle_tol:
        raise InvalidParameterError("angle must lie in [0, pi/2]: {}".format(theta))

def _is_axial(theta):
    return theta <= g_angle_tol

def _is_perpendicular(theta):
    return abs(theta - _math.pi / 2) <= g_angle_tol

def classify_regime(params, gamma, theta):
    """
    Classifies the frequency gamma travelling at angle theta from the axis.

    Along the axis every frequency propagates. For oblique directions the
    open interval alpha cos(theta) < gamma < alpha is forbidden, and across
    the axis frequencies below alpha decay with rate sqrt(alpha^2 - gamma^2)/c.
    Boundary frequencies propagate.
    """
    _check_frequency_and_angle(gamma, theta)
    alpha = params.alpha
    if _is_axial(theta):
        return PropagationRegime(AXIAL_ANY_FREQUENCY)
    if _is_perpendicular(theta):
        if gamma < alpha:
            return PropagationRegime(EVANESCENT_PERPENDICULAR,
                                     decay_rate=_math.sqrt(alpha * alpha - gamma * gamma) / params.c)
        return PropagationRegime(PROPAGATING)
    if alpha * _math.cos(theta) < gamma < alpha:
        return PropagationRegime(FORBIDDEN)
    return PropagationRegime(PROPAGATING)

def wavenumber_from_frequency(params, gamma, theta):
    """
    Inverts the dispersion relation,

        k = (gamma / c) sqrt((alpha^2 - gamma^2) / (alpha^2 cos^2 theta - gamma^2)).

    Returns a PropagationRegime. Propagating and axial results carry the
    wavenumber; at the boundary gamma = alpha cos(theta) the wavenumber is
    infinite.
    """
    regime = classify_regime(params, gamma, theta)
    alpha, c = params.alpha, params.c
    if regime.tag == AXIAL_ANY_FREQUENCY:
        return PropagationRegime(AXIAL_ANY_FREQUENCY, wavenumber=gamma / c)
    if regime.tag != PROPAGATING:
        return regime
    if gamma == 0:
        return PropagationRegime(PROPAGATING, wavenumber=0.0)
    if _is_perpendicular(theta):
        return PropagationRegime(PROPAGATING, wavenumber=_math.sqrt(gamma * gamma - alpha * alpha) / c)
    a2, g2 = alpha * alpha, gamma * gamma
    num = a2 - g2
    den = a2 * _math.cos(theta) ** 2 - g2
    if den == 0:
        return PropagationRegime(PROPAGATING, wavenumber=_math.inf)
    return PropagationRegime(PROPAGATING, wavenumber=gamma / c * _math.sqrt(num / den))

# {{{1 velocities

def group_velocity(params, kvec, gamma):
    """
    Returns the group velocity

        v_g = gamma / (2 gamma^2 - alpha^2 - c^2 k^2) (c^2 k1, c^2 (gamma^2 - alpha^2) k3 / gamma^2)

    for a frequency on a dispersion branch. The denominator equals +sqrt(D)
    on the acoustic branch and -sqrt(D) on the inertial branch.
    """
    a2 = params.alpha * params.alpha
    c2 = params.c * params.c
    g2 = gamma * gamma
    if g2 == 0:
        raise DegenerateGroupVelocityError("degenerate group velocity: gamma = 0")
    den = 2.0 * g2 - a2 - c2 * (kvec.k1 * kvec.k1 + kvec.k3 * kvec.k3)
    if abs(den) < g_degenerate_tol * max(1.0, g2):
        raise DegenerateGroupVelocityError("degenerate group velocity: branches cross at gamma = {}".format(gamma))
    factor = gamma / den
    return Velocity2(factor * c2 * kvec.k1, factor * c2 * (g2 - a2) * kvec.k3 / g2)

def phase_velocity(kvec, gamma):
    k2 = kvec.k1 * kvec.k1 + kvec.k3 * kvec.k3
    if k2 == 0:
        raise DegenerateWaveVectorError("degenerate wave vector: k = 0")
    return Velocity2(gamma * kvec.k1 / k2, gamma * kvec.k3 / k2)

def group_speed(params, kvec, gamma):
    return group_velocity(params, kvec, gamma).magnitude

def phase_speed(kvec, gamma):
    return phase_velocity(kvec, gamma).magnitude

def group_angle(params, kvec, gamma):
    """
    Returns the angle between the group velocity and the x3 axis,

        theta_gr = arctan[ gamma^2 / (gamma^2 - alpha^2) * k1 / k3 ],

    in (-pi/2, pi/2). This is the angle of the line carrying the group
    velocity: it equals atan2(vg1, vg3) for k3 > 0 and differs from it by
    +-pi for k3 < 0, where the group velocity points into x3 < 0.
    """
    a2 = params.alpha * params.alpha
    g2 = gamma * gamma
    if kvec.k3 == 0:
        raise FormulaSingularityError("group angle undefined for k3 = 0")
    if abs(g2 - a2) <= g_degenerate_tol * max(1.0, g2):
        raise FormulaSingularityError("group angle undefined for gamma = alpha")
    return _math.atan(g2 / (g2 - a2) * kvec.k1 / kvec.k3)

# {{{1 characteristic cone

def inside_characteristic_cone(params, gamma, point):
    """
    Returns true if the point (x1, x3) satisfies

        |x3| > sqrt(alpha^2 - gamma^2) / gamma |x1|.

    For gamma >= alpha the cone opens to the whole plane.
    """
    if gamma < 0:
        raise InvalidParameterError("frequency must be non-negative: {}".format(gamma))
    if gamma == 0:
        raise FormulaSingularityError("characteristic cone collapses to the axis at gamma = 0")
    alpha = params.alpha
    if gamma >= alpha:
        return True
    x1, x3 = point
    slope = _math.sqrt(alpha * alpha - gamma * gamma) / gamma
    return abs(x3) > slope * abs(x1)

def cone_half_angle(params, gamma):
    """
    Returns the half-angle of the characteristic cone measured from the x3
    axis; pi/2 once gamma reaches alpha.
    """
    if not gamma > 0:
        raise FormulaSingularityError("characteristic cone undefined at gamma = {}".format(gamma))
    alpha = params.alpha
    if gamma >= alpha:
        return _math.pi / 2
    return _math.atan2(gamma, _math.sqrt(alpha * alpha - gamma * gamma))
