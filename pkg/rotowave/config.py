"""
This module reads the JSON documents driving the command line.

A simulation configuration looks like

    {"alpha": 2.0, "c": 1.0,
     "grid": {"n1": 32, "n3": 32, "L1": 6.283185307179586, "L3": 6.283185307179586},
     "mode": {"m1": 1, "m3": 1, "branch": "plus", "amplitude": 0.01},
     "dt_factor": 0.1, "n_steps": 2000, "record_every": 10, "probe": [0, 0]}

and a sweep configuration like

    {"alpha": 1.0, "c": 1.0, "theta_list": [0.0, 1.0471975511965976],
     "k_range": [0.01, 10.0, 200]}

with "gamma_range" in place of "k_range" for sweeps over frequency.

Classes:
SweepSpec       -- Parameters of a dispersion sweep.
SimulationSetup -- Simulation configuration plus the seeded mode.

Functions:
load_sweep_spec        -- Read a sweep configuration.
load_simulation_config -- Read a simulation configuration.
"""

import json as _json
import math as _math
import numbers as _numbers
from collections import namedtuple

from . import dispersion
from . import planewave
from . import simulator
from .util import ConfigError, RotowaveError, str_location

class SweepSpec(namedtuple("SweepSpec", "params theta_list k_range gamma_range output_path")):
    """
    Exactly one of k_range and gamma_range is set; each is a triple
    (minimum, maximum, number of samples).
    """
    __slots__ = ()

    def __new__(cls, params, theta_list, k_range=None, gamma_range=None, output_path=None):
        if (k_range is None) == (gamma_range is None):
            raise ConfigError("sweep needs exactly one of k_range and gamma_range")
        for theta in theta_list:
            if not 0 <= theta <= _math.pi / 2:
                raise ConfigError("sweep angle outside [0, pi/2]: {}".format(theta))
        if k_range is not None:
            k_min, k_max, n = k_range
            if not (k_min > 0 and k_max >= k_min and n >= 2):
                raise ConfigError("k_range needs 0 < k_min <= k_max and n >= 2: {}".format(list(k_range)))
        if gamma_range is not None:
            g_min, g_max, n = gamma_range
            if not (g_min >= 0 and g_max >= g_min and n >= 2):
                raise ConfigError("gamma_range needs 0 <= g_min <= g_max and n >= 2: {}".format(list(gamma_range)))
        return super(SweepSpec, cls).__new__(cls, params, tuple(theta_list), k_range, gamma_range, output_path)

class SimulationSetup(namedtuple("SimulationSetup", "config mode")):
    """
    config -- SimConfig of the run.
    mode   -- PlaneWaveMode seeding the run, scaled by its amplitude.
    """
    __slots__ = ()

# {{{1 field access

class _Reader:
    """
    Typed access to the fields of a parsed document with diagnostics naming
    the file and the dotted field path.
    """
    def __init__(self, path, document, prefix=""):
        self.__path = path
        self.__document = document
        self.__prefix = prefix
        if not isinstance(document, dict):
            self.fail(prefix.rstrip(".") or "<root>", "expected an object")

    def fail(self, name, problem):
        raise ConfigError("{}: field '{}': {}".format(self.__path, name, problem))

    def __get(self, key, default, required):
        name = self.__prefix + key
        if key not in self.__document:
            if required:
                self.fail(name, "missing")
            return name, default
        return name, self.__document[key]

    def has(self, key):
        return key in self.__document

    def number(self, key, default=None, required=True):
        name, value = self.__get(key, default, required)
        if isinstance(value, bool) or not isinstance(value, _numbers.Real) or not _math.isfinite(value):
            self.fail(name, "expected a finite number, got {!r}".format(value))
        return float(value)

    def integer(self, key, default=None, required=True):
        name, value = self.__get(key, default, required)
        if isinstance(value, bool) or not isinstance(value, _numbers.Integral):
            self.fail(name, "expected an integer, got {!r}".format(value))
        return int(value)

    def string(self, key, default=None, required=True):
        name, value = self.__get(key, default, required)
        if not isinstance(value, str):
            self.fail(name, "expected a string, got {!r}".format(value))
        return value

    def numbers(self, key, length=None, default=None, required=True):
        name, value = self.__get(key, default, required)
        if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, _numbers.Real) for x in value):
            self.fail(name, "expected a list of numbers, got {!r}".format(value))
        if length is not None and len(value) != length:
            self.fail(name, "expected {} entries, got {}".format(length, len(value)))
        return value

    def child(self, key, required=True):
        name, value = self.__get(key, None, required)
        if value is None:
            return None
        return _Reader(self.__path, value, name + ".")

def _load(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("{}: cannot read: {}".format(path, e.strerror))
    try:
        return _json.loads(text)
    except ValueError as e:
        if isinstance(e, _json.JSONDecodeError):
            raise ConfigError("{}: {}".format(str_location(path, e.lineno, e.colno), e.msg))
        raise ConfigError("{}: {}".format(path, e))

def _params(path, reader):
    alpha, c = reader.number("alpha"), reader.number("c", 1.0, required=False)
    try:
        return dispersion.FluidParams(alpha, c)
    except RotowaveError as e:
        raise ConfigError("{}: {}".format(path, e))

# {{{1 loaders

def load_sweep_spec(path, output_path=None):
    """
    Reads a sweep configuration and returns a SweepSpec.
    """
    reader = _Reader(path, _load(path))
    params = _params(path, reader)
    theta_list = [float(x) for x in reader.numbers("theta_list")]
    if not theta_list:
        reader.fail("theta_list", "expected at least one angle")

    def triple(key):
        if not reader.has(key):
            return None
        lo, hi, n = reader.numbers(key, length=3)
        if int(n) != n:
            reader.fail(key, "sample count must be an integer, got {!r}".format(n))
        return float(lo), float(hi), int(n)

    k_range, gamma_range = triple("k_range"), triple("gamma_range")
    try:
        return SweepSpec(params, theta_list, k_range, gamma_range, output_path)
    except ConfigError as e:
        raise ConfigError("{}: {}".format(path, e))

def load_simulation_config(path):
    """
    Reads a simulation configuration and returns a SimulationSetup.

    The time step is dt_factor * 2 pi / gamma_max, gamma_max being the largest
    acoustic frequency on the grid.
    """
    reader = _Reader(path, _load(path))
    params = _params(path, reader)

    g = reader.child("grid")
    n1, n3, L1, L3 = g.integer("n1"), g.integer("n3"), g.number("L1"), g.number("L3")
    try:
        grid = simulator.Grid(n1, n3, L1, L3)
    except RotowaveError as e:
        raise ConfigError("{}: field 'grid': {}".format(path, e))

    m = reader.child("mode")
    m1, m3 = m.integer("m1"), m.integer("m3")
    branch = m.string("branch", dispersion.PLUS, required=False)
    if branch not in dispersion.BRANCHES:
        m.fail("mode.branch", "expected one of {}, got {!r}".format(", ".join(dispersion.BRANCHES), branch))
    amplitude = m.number("amplitude", 1.0, required=False)
    try:
        kvec = grid.wave_vector(m1, m3)
        mode = planewave.scale_mode(planewave.build_eigenmode(params, kvec, branch), amplitude)
    except RotowaveError as e:
        raise ConfigError("{}: field 'mode': {}".format(path, e))

    dt_factor = reader.number("dt_factor", simulator.g_default_dt_factor, required=False)
    if dt_factor <= 0:
        reader.fail("dt_factor", "must be positive, got {}".format(dt_factor))
    n_steps = reader.integer("n_steps")
    record_every = reader.integer("record_every", simulator.g_default_record_every, required=False)
    probe = reader.numbers("probe", length=2, default=[0, 0], required=False)
    if any(int(x) != x for x in probe):
        reader.fail("probe", "expected integer grid indices, got {!r}".format(probe))
    try:
        config = simulator.SimConfig(params, grid, simulator.default_dt(params, grid, dt_factor),
                                     n_steps, record_every, tuple(int(x) for x in probe))
    except RotowaveError as e:
        raise ConfigError("{}: {}".format(path, e))
    return SimulationSetup(config, mode)
