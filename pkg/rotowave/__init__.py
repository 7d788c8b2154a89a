"""
The rotowave module computes the dispersion of small-amplitude waves in a
rotating compressible fluid and checks the theory against a pseudo-spectral
simulation of the linearized equations.

Classes:
Application -- Main application class.

Functions:
cmd_dispersion -- Write a dispersion sweep.
cmd_simulate   -- Run a simulation and write its records.
cmd_verify     -- Run the acceptance suite and write a report.
main           -- Main function starting the application.

Constants:
EXIT_OK, EXIT_FAILURE, EXIT_USAGE -- Exit codes.
"""

import argparse as _argparse
import json as _json
import logging as _logging
import math as _math
import os as _os
import sys as _sys
from textwrap import dedent as _dedent

import numpy as np

from . import checks
from . import config as _config
from . import dispersion
from . import planewave
from . import simulator
from .util import ConfigError, RotowaveError, DegenerateGroupVelocityError, FormulaSingularityError, \
    InvalidParameterError, StabilityError, format_number, write_csv

_log = _logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

K_SWEEP_HEADER = ("theta", "k", "gamma_minus", "gamma_plus", "vg1_plus", "vg3_plus",
                  "vg1_minus", "vg3_minus", "vph1_plus", "vph3_plus", "regime")
GAMMA_SWEEP_HEADER = ("theta", "gamma", "k", "regime", "decay_rate")

# {{{1 dispersion sweeps

def _group_velocity_or_na(params, kvec, gamma):
    try:
        return dispersion.group_velocity(params, kvec, gamma)
    except DegenerateGroupVelocityError:
        return dispersion.Velocity2(None, None)

def _k_sweep_rows(spec):
    params = spec.params
    k_min, k_max, n = spec.k_range
    for theta in spec.theta_list:
        for k in np.linspace(k_min, k_max, n):
            kvec = dispersion.WaveVector.from_polar(float(k), theta)
            branches = dispersion.frequency_branches(params, kvec)
            vg_plus = _group_velocity_or_na(params, kvec, branches.gamma_plus)
            vg_minus = _group_velocity_or_na(params, kvec, branches.gamma_minus)
            vph_plus = dispersion.phase_velocity(kvec, branches.gamma_plus)
            regime = dispersion.classify_regime(params, branches.gamma_plus, theta)
            yield (theta, float(k), branches.gamma_minus, branches.gamma_plus,
                   vg_plus.v1, vg_plus.v3, vg_minus.v1, vg_minus.v3,
                   vph_plus.v1, vph_plus.v3, regime.tag)

def _gamma_sweep_rows(spec):
    g_min, g_max, n = spec.gamma_range
    for theta in spec.theta_list:
        for gamma in np.linspace(g_min, g_max, n):
            regime = dispersion.wavenumber_from_frequency(spec.params, float(gamma), theta)
            yield theta, float(gamma), regime.wavenumber, regime.tag, regime.decay_rate

def cmd_dispersion(spec):
    """
    Writes the sweep described by spec to spec.output_path.

    A k-sweep lists both branches with their group and phase velocities, the
    regime column classifies the acoustic frequency. A gamma-sweep inverts
    the dispersion relation. Undefined entries are written as NA.
    """
    if spec.k_range is not None:
        header, rows = K_SWEEP_HEADER, list(_k_sweep_rows(spec))
    else:
        header, rows = GAMMA_SWEEP_HEADER, list(_gamma_sweep_rows(spec))
    write_csv(spec.output_path, header, rows)
    _log.info("wrote %d rows to %s", len(rows), spec.output_path)
    return len(rows)

# {{{1 simulations

def _snapshot_rows(state):
    n1, n3 = state.p.shape
    for i in range(n1):
        for j in range(n3):
            yield (i, j, state.v1[i, j], state.v2[i, j], state.v3[i, j], state.p[i, j])

def write_snapshot(path, grid, state):
    """
    Writes a snapshot as CSV with rows (i, j, v1, v2, v3, p) below a header
    line giving the grid and the time.
    """
    preamble = "n1={} n3={} L1={} L3={} t={} fields=v1,v2,v3,p".format(
        grid.n1, grid.n3, format_number(grid.L1), format_number(grid.L3), format_number(state.t))
    write_csv(path, ("i", "j") + simulator.FIELDS, _snapshot_rows(state), preamble)

def cmd_simulate(setup, out_dir):
    """
    Integrates the seeded mode and writes probe.csv, energy.csv and one
    snapshot_<step>.csv per recorded state into out_dir.

    Returns the linearity parameter max|v| / |v_ph| of the run, with the
    maximum taken over every step. Nothing is written if the time step
    violates the stability bound.
    """
    config, mode = setup
    record = simulator.run(config, simulator.state_from_mode(config.grid, mode))
    epsilon = planewave.linearity_parameter(record.max_speed,
                                            dispersion.phase_speed(mode.kvec, mode.gamma))

    _os.makedirs(out_dir, exist_ok=True)
    write_csv(_os.path.join(out_dir, "probe.csv"), ("t",) + simulator.FIELDS, record.probe)
    write_csv(_os.path.join(out_dir, "energy.csv"), ("t", "E"), record.energy)
    for index, state in enumerate(record.snapshots):
        step = index * config.record_every
        write_snapshot(_os.path.join(out_dir, "snapshot_{:06d}.csv".format(step)), config.grid, state)
    _log.info("wrote %d snapshots to %s", len(record.snapshots), out_dir)
    return epsilon

# {{{1 verification

def _json_number(x):
    return x if _math.isfinite(x) else None

def cmd_verify(scope, report_path, seed=0):
    """
    Runs the acceptance suite of the scope, writes the JSON report and
    returns the results.
    """
    results = checks.run_checks(scope, seed)
    report = [{"check_name": r.check_name,
               "status": r.status,
               "measured": _json_number(r.measured),
               "tolerance": _json_number(r.tolerance)} for r in results]
    with open(report_path, "w", encoding="utf-8", newline="\n") as f:
        _json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    return results

# {{{1 application

class Application:
    """
    Command-line application with the subcommands dispersion, simulate and
    verify.
    """
    def __init__(self, name):
        self.program_name = name
        self.version = "1.0"

    def __parse_scope(self, value):
        """
        Parse the scope of the acceptance suite.
        """
        if value not in checks.SCOPES:
            raise _argparse.ArgumentTypeError("expected one of {}".format(", ".join(checks.SCOPES)))
        return value

    def __parse_seed(self, value):
        """
        Parse the seed of the acceptance suite.
        """
        seed = int(value)
        if seed < 0:
            raise _argparse.ArgumentTypeError("seed must be non-negative")
        return seed

    def register_options(self, parser):
        parser.add_argument("--version", action="version",
                            version="{} version {}".format(self.program_name, self.version))
        parser.add_argument("--verbose", action="store_true", help="Report progress")
        parser.add_argument("--debug", action="store_true", help="Report details of every step")
        commands = parser.add_subparsers(dest="command", metavar="command")
        commands.required = True

        sweep = commands.add_parser("dispersion", help="Tabulate frequencies and velocities over a sweep")
        sweep.add_argument("--config", required=True, help="JSON sweep configuration")
        sweep.add_argument("--out", required=True, help="Output directory for dispersion.csv")

        simulate = commands.add_parser("simulate", help="Integrate a plane-wave mode on a periodic grid")
        simulate.add_argument("--config", required=True, help="JSON simulation configuration")
        simulate.add_argument("--out", required=True, help="Output directory for the records")

        verify = commands.add_parser("verify", formatter_class=_argparse.RawDescriptionHelpFormatter,
                                     help="Run the acceptance suite",
                                     description=_dedent("""\
            Run the acceptance suite.

              dispersion: checks of the analytic theory
              simulator : checks of the simulator against the theory
              all       : both
            """))
        verify.add_argument("--scope", type=self.__parse_scope, default="all", help="Checks to run [all]")
        verify.add_argument("--report", required=True, help="Output file for the JSON report")
        verify.add_argument("--seed", type=self.__parse_seed, default=0, help="Seed of the random draws [0]")

    def __dispersion(self, args):
        spec = _config.load_sweep_spec(args.config, _os.path.join(args.out, "dispersion.csv"))
        print("Reading from {}".format(args.config))
        _os.makedirs(args.out, exist_ok=True)
        rows = cmd_dispersion(spec)
        print("Rows         : {}".format(rows))
        return EXIT_OK

    def __simulate(self, args):
        setup = _config.load_simulation_config(args.config)
        print("Reading from {}".format(args.config))
        print("Simulating...")
        epsilon = cmd_simulate(setup, args.out)
        print("Epsilon      : {}".format(format_number(epsilon)))
        if epsilon >= planewave.g_epsilon_warn:
            _log.warning("linearity parameter %g is not small, the linear model may not apply", epsilon)
        return EXIT_OK

    def __verify(self, args):
        print("Verifying {}...".format(args.scope))
        results = cmd_verify(args.scope, args.report, args.seed)
        failed = [r.check_name for r in results if not r.passed]
        for r in results:
            print("{:<32} {}".format(r.check_name, r.status.upper()))
        print("")
        print("Checks       : {}".format(len(results)))
        print("Failed       : {}".format(len(failed)))
        return EXIT_FAILURE if failed else EXIT_OK

    def run(self, argv):
        """
        Parses the arguments, dispatches the command and returns the exit code.
        """
        parser = _argparse.ArgumentParser(prog=self.program_name)
        self.register_options(parser)
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_USAGE

        level = _logging.DEBUG if args.debug else _logging.INFO if args.verbose else _logging.WARNING
        _logging.basicConfig(level=level, format="%(name)s: %(levelname)s: %(message)s")
        print("{} version {}".format(self.program_name, self.version))

        commands = {"dispersion": self.__dispersion, "simulate": self.__simulate, "verify": self.__verify}
        try:
            return commands[args.command](args)
        except (ConfigError, InvalidParameterError, StabilityError, FormulaSingularityError) as e:
            print("{}: error: {}".format(self.program_name, e), file=_sys.stderr)
            return EXIT_USAGE
        except RotowaveError as e:
            print("{}: error: {}".format(self.program_name, e), file=_sys.stderr)
            return EXIT_FAILURE
        except OSError as e:
            print("{}: error: {}: {}".format(self.program_name, e.filename, e.strerror), file=_sys.stderr)
            return EXIT_USAGE

def main():
    """
    Run the rotowave application.
    """
    _sys.exit(Application("rotowave").run(_sys.argv[1:]))
