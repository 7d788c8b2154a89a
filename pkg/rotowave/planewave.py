"""
This module builds plane-wave eigenmodes of the linearized equations

    dv1/dt - alpha v2 + dp/dx1 = 0
    dv2/dt + alpha v1          = 0
    dv3/dt + dp/dx3            = 0
    1/c^2 dp/dt + dv1/dx1 + dv3/dx3 = 0

in the form (v1, v2, v3, p) = Re[A exp(i(k.x + gamma t))]. Amplitudes are
normalized to A_p = 1.

Classes:
PlaneWaveMode -- Wave vector, frequency and complex amplitudes of a mode.

Functions:
build_eigenmode      -- Eigenmode on one dispersion branch.
mode_residuals       -- Relative residuals of the four modal equations.
evaluate_mode        -- Real fields of a mode at points and time.
mode_time_derivative -- Time derivative of the real fields.
scale_mode           -- Multiply all amplitudes by a real factor.
linearity_parameter  -- Ratio of particle velocity to phase speed.

Constants:
g_singular_tol -- Relative distance of gamma to 0 or alpha treated as singular.
g_epsilon_warn -- Linearity parameter from which the linear model is doubtful.
"""

from collections import namedtuple

import numpy as np

from . import dispersion
from .util import InvalidParameterError, PolarizationSingularityError, FormulaSingularityError

g_singular_tol = 1e-12
g_epsilon_warn = 0.1

class PlaneWaveMode(namedtuple("PlaneWaveMode", "kvec gamma amplitudes")):
    """
    A plane wave with complex amplitudes (A_v1, A_v2, A_v3, A_p).
    """
    __slots__ = ()

def build_eigenmode(params, kvec, branch):
    """
    Returns the eigenmode on the given branch ("minus" or "plus").

    The polarization relations are

        A_v1 = -gamma k1 A_p / (gamma^2 - alpha^2)
        A_v2 = i alpha A_v1 / gamma
        A_v3 = -k3 A_p / gamma

    and are singular for gamma = 0 and gamma = alpha.
    """
    gamma = dispersion.select_branch(dispersion.frequency_branches(params, kvec), branch)
    alpha = params.alpha
    scale = max(1.0, alpha)
    if gamma <= g_singular_tol * scale:
        raise PolarizationSingularityError("polarization singular on {} branch: gamma = 0".format(branch))
    if abs(gamma - alpha) <= g_singular_tol * scale:
        raise PolarizationSingularityError("polarization singular on {} branch: gamma = alpha".format(branch))

    a_p = 1.0 + 0.0j
    a_v1 = -gamma * kvec.k1 * a_p / (gamma * gamma - alpha * alpha)
    a_v2 = 1j * alpha * a_v1 / gamma
    a_v3 = -kvec.k3 * a_p / gamma
    return PlaneWaveMode(kvec, gamma, (complex(a_v1), complex(a_v2), complex(a_v3), a_p))

def mode_residuals(params, mode):
    """
    Substitutes the mode into the four equations and returns the residual of
    each, divided by the largest term of that equation.
    """
    a_v1, a_v2, a_v3, a_p = mode.amplitudes
    k1, k3 = mode.kvec
    gamma, alpha, c2 = mode.gamma, params.alpha, params.c * params.c
    equations = [
        (1j * gamma * a_v1, -alpha * a_v2, 1j * k1 * a_p),
        (1j * gamma * a_v2, alpha * a_v1),
        (1j * gamma * a_v3, 1j * k3 * a_p),
        (1j * gamma * a_p / c2, 1j * k1 * a_v1, 1j * k3 * a_v3),
    ]
    residuals = []
    for terms in equations:
        scale = max(abs(term) for term in terms)
        residuals.append(abs(sum(terms)) / scale if scale > 0 else 0.0)
    return tuple(residuals)

def _phase(mode, point, t):
    x1, x3 = point
    k1, k3 = mode.kvec
    return np.exp(1j * (k1 * np.asarray(x1) + k3 * np.asarray(x3) + mode.gamma * t))

def _real(x):
    x = np.real(x)
    return float(x) if np.ndim(x) == 0 else x

def evaluate_mode(mode, point, t):
    """
    Returns the real fields (v1, v2, v3, p) at point = (x1, x3) and time t.
    The coordinates may be numpy arrays.
    """
    phase = _phase(mode, point, t)
    return tuple(_real(a * phase) for a in mode.amplitudes)

def mode_time_derivative(mode, point, t):
    phase = _phase(mode, point, t)
    return tuple(_real(1j * mode.gamma * a * phase) for a in mode.amplitudes)

def scale_mode(mode, factor):
    return mode._replace(amplitudes=tuple(factor * a for a in mode.amplitudes))

def linearity_parameter(v0, vph_magnitude):
    """
    Returns epsilon = v0 / v_ph, the ratio of the advective to the local
    acceleration. The linear equations hold for epsilon << 1.
    """
    if v0 < 0:
        raise InvalidParameterError("velocity amplitude must be non-negative: {}".format(v0))
    if vph_magnitude < 0:
        raise InvalidParameterError("phase speed must be non-negative: {}".format(vph_magnitude))
    if vph_magnitude == 0:
        raise FormulaSingularityError("linearity parameter undefined for zero phase speed")
    return v0 / vph_magnitude
