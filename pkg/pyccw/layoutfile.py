"""
Reading and writing wire layouts as JSON documents.

A layout document looks like::

    {
        "format": "pyccw-layout",
        "version": 1,
        "name": "gate zone",
        "unit": "um",
        "wires": [
            {"label": "gate north", "width": 100, "depth": 15,
             "current_A": 1.0, "vertices": [[-280, -7.5, 420], ...]}
        ]
    }

Lengths (vertices, width, depth) are in unit, one of m, mm, um or nm
(default um). Currents (current_A) are in amperes. Any other member is
rejected. The schema is in the docs (layout_schema.json).
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

import json
import numbers

from . import generic
from . import geometry

LAYOUT_FORMAT = 'pyccw-layout'
"value of the format member of a layout document"
LAYOUT_VERSION = 1
"version of the layout document this module writes"

LENGTH_UNITS = {'m': 1.0, 'mm': 1e-3, 'um': 1e-6, 'nm': 1e-9}
"length units allowed in layout documents, with their size in metres"

DEFAULT_LENGTH_UNIT = 'um'
"length unit assumed when a document has none"

LAYOUT_MEMBERS = ('format', 'version', 'name', 'unit', 'wires')
"members allowed at the top level of a layout document"

WIRE_MEMBERS = ('vertices', 'width', 'depth', 'current_A', 'label')
"members allowed in each wire of a layout document"

def checkMembers(container, allowed, wireIndex=None):
    """
    Raise CCWLayoutSyntaxError naming the first member of container
    that is not in allowed.
    """
    unknown = sorted([key for key in container if key not in allowed])
    if len(unknown) > 0:
        if wireIndex is None:
            msg = 'unknown layout member "%s". Allowed: %s' % (unknown[0], ', '.join(allowed))
        else:
            msg = 'wire %d: unknown member "%s". Allowed: %s' % (wireIndex, unknown[0],
                    ', '.join(allowed))
        raise generic.CCWLayoutSyntaxError(msg)

def isNumber(value):
    "True for int and float values but not bool"
    return isinstance(value, numbers.Real) and not isinstance(value, bool)

def getMember(container, key, wireIndex=None):
    """
    Return container[key], raising CCWLayoutSyntaxError if it is missing.
    """
    if key not in container:
        if wireIndex is None:
            msg = 'layout document has no "%s" member' % key
        else:
            msg = 'wire %d has no "%s" member' % (wireIndex, key)
        raise generic.CCWLayoutSyntaxError(msg)
    return container[key]

def getNumber(container, key, wireIndex):
    value = getMember(container, key, wireIndex)
    if not isNumber(value):
        msg = 'wire %d: "%s" must be a number, got %r' % (wireIndex, key, value)
        raise generic.CCWLayoutSyntaxError(msg)
    return float(value)

def parseWire(data, wireIndex, scale):
    """
    Convert one wire member of a layout document to a WirePath.
    """
    if not isinstance(data, dict):
        msg = 'wire %d must be an object' % wireIndex
        raise generic.CCWLayoutSyntaxError(msg)
    checkMembers(data, WIRE_MEMBERS, wireIndex)

    vertices = getMember(data, 'vertices', wireIndex)
    if not isinstance(vertices, list):
        msg = 'wire %d: "vertices" must be a list' % wireIndex
        raise generic.CCWLayoutSyntaxError(msg)
    for vertIdx, vertex in enumerate(vertices):
        if (not isinstance(vertex, list) or len(vertex) != 3 or
                not all([isNumber(v) for v in vertex])):
            msg = 'wire %d: vertex %d must be a list of 3 numbers' % (wireIndex, vertIdx)
            raise generic.CCWLayoutSyntaxError(msg)

    width = getNumber(data, 'width', wireIndex)
    depth = getNumber(data, 'depth', wireIndex)
    current = getNumber(data, 'current_A', wireIndex)
    label = data.get('label')
    if label is not None and not isinstance(label, str):
        msg = 'wire %d: "label" must be a string' % wireIndex
        raise generic.CCWLayoutSyntaxError(msg)

    try:
        section = geometry.CrossSection(width * scale, depth * scale)
        wire = geometry.WirePath([[v * scale for v in vertex] for vertex in vertices],
                    section, current, label)
    except generic.CCWInvalidLayout as e:
        msg = 'wire %d: %s' % (wireIndex, e)
        raise generic.CCWInvalidLayout(msg, wireIndex=wireIndex)
    return wire

def parseLayout(text):
    """
    Parse a layout document (a str) into a WireLayout.

    Raises CCWLayoutSyntaxError if the document is not valid JSON or
    does not have the expected structure, and CCWInvalidLayout (with
    the wireIndex attribute set) when a wire breaks a layout rule
    such as a non positive cross section or repeated vertices.
    """
    try:
        data = json.loads(text)
    except ValueError as e:
        msg = 'layout is not valid JSON: %s' % e
        raise generic.CCWLayoutSyntaxError(msg)

    if not isinstance(data, dict):
        msg = 'layout document must be a JSON object'
        raise generic.CCWLayoutSyntaxError(msg)
    checkMembers(data, LAYOUT_MEMBERS)

    fmt = data.get('format', LAYOUT_FORMAT)
    if fmt != LAYOUT_FORMAT:
        msg = 'unknown layout format %r' % fmt
        raise generic.CCWLayoutSyntaxError(msg)
    version = data.get('version', LAYOUT_VERSION)
    if version != LAYOUT_VERSION:
        msg = 'unsupported layout version %r' % version
        raise generic.CCWLayoutSyntaxError(msg)

    unit = data.get('unit', DEFAULT_LENGTH_UNIT)
    if unit not in LENGTH_UNITS:
        msg = 'unknown length unit %r. Use one of %s' % (unit, ', '.join(sorted(LENGTH_UNITS)))
        raise generic.CCWLayoutSyntaxError(msg)
    scale = LENGTH_UNITS[unit]

    name = data.get('name')
    if name is not None and not isinstance(name, str):
        msg = 'layout "name" must be a string'
        raise generic.CCWLayoutSyntaxError(msg)

    wires = getMember(data, 'wires')
    if not isinstance(wires, list):
        msg = 'layout "wires" must be a list'
        raise generic.CCWLayoutSyntaxError(msg)
    if len(wires) == 0:
        msg = 'layout has no wires'
        raise generic.CCWInvalidLayout(msg)

    return geometry.WireLayout([parseWire(wire, idx, scale)
                for idx, wire in enumerate(wires)], name)

def serializeLayout(layout, lengthUnit='m'):
    """
    Returns the layout as a JSON document (str). With the default
    length unit of metres parseLayout(serializeLayout(layout)) gives
    back an equal layout. Other units scale the coordinates and may
    round the last bit.
    """
    if lengthUnit not in LENGTH_UNITS:
        msg = 'unknown length unit %r' % lengthUnit
        raise generic.CCWInvalidSetting(msg)
    scale = LENGTH_UNITS[lengthUnit]

    wires = []
    for wire in layout:
        wireData = {'vertices': (wire.vertices / scale).tolist(),
                'width': wire.width / scale, 'depth': wire.depth / scale,
                'current_A': wire.current}
        if wire.label is not None:
            wireData['label'] = wire.label
        wires.append(wireData)

    data = {'format': LAYOUT_FORMAT, 'version': LAYOUT_VERSION,
            'unit': lengthUnit, 'wires': wires}
    if layout.name is not None:
        data['name'] = layout.name
    return json.dumps(data, indent=2, sort_keys=True) + '\n'

def readLayout(fname):
    """
    Read a WireLayout from a layout file.
    """
    with open(fname) as f:
        text = f.read()
    return parseLayout(text)

def writeLayout(layout, fname, lengthUnit='um'):
    """
    Write a WireLayout to a layout file.
    """
    text = serializeLayout(layout, lengthUnit)
    with open(fname, 'w') as f:
        f.write(text)
