"""
Parsing of physical quantities with unit suffixes, as used by the
command line. '100um', '13A' and '5K_per_W' are accepted; a bare
number is not, so that a quantity always says what it is.

Units are looked up and converted by a pint UnitRegistry
(UNIT_REGISTRY), so any pint unit of the right dimension works
('0.1mm', '2mT', '40kelvin'). The registry also knows the compound
names K_per_W, T_per_m and A_per_cm2 used in the docs.

Every parser here can be passed as the type of an argparse argument.
"""
# This file is part of PyCCW
# Copyright (C) 2026 PyCCW developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

from __future__ import print_function, division

import re
import argparse
import pint

UNIT_REGISTRY = pint.UnitRegistry()
"Registry every command line quantity is parsed with"
UNIT_REGISTRY.define('K_per_W = kelvin / watt')
UNIT_REGISTRY.define('T_per_m = tesla / meter')
UNIT_REGISTRY.define('A_per_cm2 = ampere / centimeter ** 2')

QUANTITY_RE = re.compile(
        r'^\s*([-+]?(?:infinity|inf|(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))\s*([A-Za-z_][A-Za-z_0-9]*)\s*$',
        re.IGNORECASE)
"a number (or inf) followed by the name of a unit"

TARGET_UNITS = {
    'length': 'm',
    'current': 'A',
    'temperature': 'K',
    'thermal_resistance': 'K_per_W',
    'field': 'T',
    'gradient': 'T_per_m',
    'current_density': 'A_per_cm2',
    'power': 'W',
    'resistance': 'ohm',
}
"""
The unit pyccw works in for each kind of quantity. Parsed values are
converted to these, so current densities come out in A/cm^2 and the
rest in SI.
"""

HELP_UNITS = {
    'length': ('nm', 'um', 'mm', 'm'),
    'current': ('mA', 'A'),
    'temperature': ('K',),
    'thermal_resistance': ('K_per_W',),
    'field': ('uT', 'mT', 'T'),
    'gradient': ('T_per_m',),
    'current_density': ('A_per_cm2',),
    'power': ('mW', 'W'),
    'resistance': ('uohm', 'mohm', 'ohm'),
}
"Usual units of each kind, listed in help and error messages"

def unitList(kind):
    "the usual units of kind, for help messages"
    return ', '.join(HELP_UNITS[kind])

def parseQuantity(text, kind, allowNegative=False):
    """
    Convert text such as '100um' to a float in TARGET_UNITS[kind].
    Raises argparse.ArgumentTypeError for a missing, unknown or wrong
    unit.
    """
    kindName = kind.replace('_', ' ')
    try:
        float(text)
    except ValueError:
        pass
    else:
        msg = '%r has no unit; give one of %s' % (text, unitList(kind))
        raise argparse.ArgumentTypeError(msg)

    match = QUANTITY_RE.match(text)
    if match is None:
        msg = 'cannot read %r as a %s' % (text, kindName)
        raise argparse.ArgumentTypeError(msg)
    number, unit = match.groups()

    try:
        quantity = UNIT_REGISTRY.Quantity(float(number), unit)
        value = quantity.to(TARGET_UNITS[kind]).magnitude
    except pint.UndefinedUnitError:
        msg = 'unknown unit %r in %r; use one of %s' % (unit, text, unitList(kind))
        raise argparse.ArgumentTypeError(msg)
    except pint.DimensionalityError:
        msg = 'unit %r of %r is not a %s unit; use one of %s' % (unit, text,
                    kindName, unitList(kind))
        raise argparse.ArgumentTypeError(msg)

    value = float(value)
    if value < 0 and not allowNegative:
        msg = '%r must not be negative' % text
        raise argparse.ArgumentTypeError(msg)
    return value

def length(text):
    return parseQuantity(text, 'length')

def coordinate(text):
    "a length that may be negative"
    return parseQuantity(text, 'length', allowNegative=True)

def current(text):
    return parseQuantity(text, 'current')

def temperature(text):
    return parseQuantity(text, 'temperature')

def thermalResistance(text):
    return parseQuantity(text, 'thermal_resistance')

def field(text):
    return parseQuantity(text, 'field')

def gradient(text):
    return parseQuantity(text, 'gradient')

def currentDensity(text):
    return parseQuantity(text, 'current_density')

def power(text):
    return parseQuantity(text, 'power')

def resistance(text):
    return parseQuantity(text, 'resistance')

def positiveNumber(text):
    """
    Dimensionless number > 0 (RRR, squares, counts...).
    """
    try:
        value = float(text)
    except ValueError:
        msg = '%r is not a number' % text
        raise argparse.ArgumentTypeError(msg)
    if not value > 0:
        msg = '%r must be positive' % text
        raise argparse.ArgumentTypeError(msg)
    return value
