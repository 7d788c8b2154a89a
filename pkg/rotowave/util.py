"""
This module contains helpers shared by the other rotowave modules.

Classes:
RotowaveError                -- Base class of all rotowave errors.
InvalidParameterError        -- A parameter is outside its admissible range.
DegenerateWaveVectorError    -- The wave vector vanishes.
DegenerateGroupVelocityError -- The group velocity formula is singular.
FormulaSingularityError      -- A closed-form expression is singular.
PolarizationSingularityError -- An eigenmode polarization is singular.
StabilityError               -- A time step violates the stability bound.
NonFiniteFieldError          -- A field contains NaN or Inf values.
SignalError                  -- A time series or snapshot stack is unusable.
ConfigError                  -- A configuration file cannot be used.

Functions:
str_location    -- Turn a file, line and column into a readable location.
is_power_of_two -- Check whether an integer is a positive power of two.
format_number   -- Render a number with 17 significant digits or as NA.
write_csv       -- Write a header row and data rows as CSV.
read_csv        -- Read a CSV file written by write_csv.

Constants:
g_na -- Token rendered for undefined quantities.
"""

import csv as _csv
import math as _math
import numbers as _numbers

g_na = "NA"

# {{{1 errors

class RotowaveError(RuntimeError):
    """
    Base class for errors raised by rotowave.
    """

class InvalidParameterError(RotowaveError, ValueError):
    pass

class DegenerateWaveVectorError(RotowaveError):
    pass

class DegenerateGroupVelocityError(RotowaveError):
    pass

class FormulaSingularityError(RotowaveError):
    pass

class PolarizationSingularityError(RotowaveError):
    pass

class StabilityError(RotowaveError):
    pass

class NonFiniteFieldError(RotowaveError):
    pass

class SignalError(RotowaveError):
    pass

class ConfigError(RotowaveError):
    """
    Raised for unreadable or invalid configuration files.

    The message starts with the location of the problem, either
    file:line:column for syntax errors or file: field 'name' for values.
    """

# {{{1 text formatting

def str_location(filename, line, column):
    """
    Turns a location into a string of the form file:line:column.
    """
    return "{}:{}:{}".format(filename, line, column)

def is_power_of_two(n):
    return isinstance(n, _numbers.Integral) and n > 0 and n & (n - 1) == 0

def format_number(x):
    """
    Renders a number with 17 significant digits, enough to round-trip a
    binary64 value. None and NaN become the NA token.
    """
    if x is None:
        return g_na
    if isinstance(x, str):
        return x
    x = float(x)
    if _math.isnan(x):
        return g_na
    return "%.17g" % x

def write_csv(path, header, rows, preamble=None):
    """
    Writes a comma-separated file with LF line endings in UTF-8.

    Arguments:
    path     -- Output file name.
    header   -- Column names.
    rows     -- Iterable of rows; cells are strings or numbers.
    preamble -- Optional line written first, prefixed with '# '.
    """
    with open(path, "w", encoding="utf-8", newline="") as f:
        if preamble is not None:
            f.write("# {}\n".format(preamble))
        writer = _csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_number(cell) for cell in row] for row in rows)

def read_csv(path):
    """
    Reads a file written by write_csv and returns the header and the rows.

    Numeric cells are converted to float, NA becomes None and other cells are
    kept as strings. A leading preamble line is skipped.
    """
    def convert(cell):
        if cell == g_na:
            return None
        try:
            return float(cell)
        except ValueError:
            return cell

    with open(path, encoding="utf-8", newline="") as f:
        lines = list(f)
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    reader = _csv.reader(lines)
    header = next(reader)
    rows = [[convert(cell) for cell in row] for row in reader if row]
    return header, rows
