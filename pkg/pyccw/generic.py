"""
Constants and exceptions shared by all of pyccw.

All quantities inside pyccw are SI: metres, amperes, kelvin, tesla,
ohms, watts. Unit conversion only happens at the edges (layout files
and the command line).
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

import numpy

from . import __version__

MESSAGE_WARNING = 0
"Warning message. Passed to the message handler set with Controls.setMessageHandler"
MESSAGE_INFORMATION = 1
"Information message. Passed to the message handler"
MESSAGE_DEBUG = 2
"Debug message. Passed to the message handler"

MU0 = 4e-7 * numpy.pi
"Vacuum permeability used by the field solver (T m / A)"

BIOT_SAVART_PREFACTOR = MU0 / (4 * numpy.pi)
"mu0 / 4 pi, the prefactor of the Biot-Savart law"

SQM_PER_SQCM = 1e-4
"area of one square centimetre in square metres"

ROOM_TEMPERATURE = 293.0
"temperature (K) at which the residual resistance ratio is referenced"

SOFTWARE_NAME = 'PyCCW %s' % __version__
"Written into the metadata of every output"

class CCWException(Exception):
    "Base class for all pyccw errors"

class CCWLayoutSyntaxError(CCWException):
    "The layout document could not be read"

class CCWInvalidLayout(CCWException):
    "The layout was read but breaks a layout rule"
    def __init__(self, msg, wireIndex=None):
        CCWException.__init__(self, msg)
        self.wireIndex = wireIndex

class CCWInvalidSetting(CCWException):
    "An argument or control setting is out of range"

class CCWSingularity(CCWException):
    "Field requested on a filament or inside a conductor"
    def __init__(self, msg, wireIndex=None):
        CCWException.__init__(self, msg)
        self.wireIndex = wireIndex

class CCWConductorIntersection(CCWException):
    "Evaluation grid or stencil intersects a conductor"
    def __init__(self, msg, indices=None):
        CCWException.__init__(self, msg)
        if indices is None:
            indices = []
        self.indices = list(indices)

class CCWNotBracketed(CCWException):
    "The field minimum lies on the boundary of the search box"

class CCWOutOfRange(CCWException):
    "Temperature outside the range of the resistivity table"

class CCWDegenerateData(CCWException):
    "Fit input does not identify the unknowns"

def finiteOrNone(value):
    "value as a float, or None for None, nan and +/-inf"
    if value is None or not numpy.isfinite(value):
        return None
    return float(value)

def jsonReady(data):
    """
    Copy of data (dicts, lists, tuples, numbers, numpy arrays and
    scalars) that json.dump accepts with allow_nan=False. nan and
    +/-inf become None, which JSON writes as null.
    """
    if isinstance(data, dict):
        return dict([(key, jsonReady(value)) for key, value in data.items()])
    if isinstance(data, numpy.ndarray):
        return jsonReady(data.tolist())
    if isinstance(data, (list, tuple)):
        return [jsonReady(value) for value in data]
    if isinstance(data, (bool, numpy.bool_)):
        return bool(data)
    if isinstance(data, (int, numpy.integer)):
        return int(data)
    if isinstance(data, (float, numpy.floating)):
        return finiteOrNone(data)
    return data
