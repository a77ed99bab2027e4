"""
Field maps: the field of a layout sampled on a regular grid, and the
writers for the CSV and JSON versions of a map.
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
import numpy

from pyccw import generic
from pyccw import ccwprocessor
from . import magnetostatics

PLANES = {'xy': (0, 1, 2), 'xz': (0, 2, 1), 'yz': (1, 2, 0)}
"""
Planes a map can be taken in: the two in-plane axes and the axis
held at the plane level
"""

CSV_COLUMNS = ('x', 'y', 'z', 'Bx', 'By', 'Bz', '|B|')
"Header of a field map CSV file. Positions in m, fields in T."

CSV_FORMAT = '%.10e'
"printf format of every value in a field map CSV file"

FIELDMAP_DTYPE = numpy.dtype([('X', 'f8'), ('Y', 'f8'), ('Z', 'f8'),
            ('BX', 'f8'), ('BY', 'f8'), ('BZ', 'f8'), ('BMAG', 'f8')])
"Row layout of getFieldMapAsArray"

class FieldMap(object):
    """
    Field of a layout on the grid axes[0] x axes[1] x axes[2]. Rows of
    points and field are in grid order: x changes slowest, z fastest.
    """
    def __init__(self, axes, points, field):
        self.axes = axes
        self.points = points
        self.field = field

    @property
    def shape(self):
        return tuple([axis.shape[0] for axis in self.axes])

    @property
    def magnitude(self):
        return numpy.sqrt((self.field**2).sum(axis=1))

    def magnitudeGrid(self):
        "|B| reshaped to the grid shape"
        return self.magnitude.reshape(self.shape)

def planeAxes(plane, level, range1, range2, resolution):
    """
    Grid axes for a map in one coordinate plane.

    Parameters:

    * plane       'xy', 'xz' or 'yz'
    * level       value (m) of the remaining coordinate
    * range1      (min, max) of the first in-plane axis
    * range2      (min, max) of the second in-plane axis
    * resolution  (n1, n2) samples along each in-plane axis

    Returns the (x, y, z) tuple of axis arrays for fieldMap.
    """
    if plane not in PLANES:
        msg = 'plane must be one of %s, got %r' % (', '.join(sorted(PLANES)), plane)
        raise generic.CCWInvalidSetting(msg)
    first, second, normal = PLANES[plane]
    axes = [None, None, None]
    for axis, valueRange, n in ((first, range1, resolution[0]), (second, range2, resolution[1])):
        lo, hi = valueRange
        if int(n) != n or n < 1:
            msg = 'resolution must be integers >= 1, got %s' % (resolution,)
            raise generic.CCWInvalidSetting(msg)
        if lo > hi:
            msg = 'range minimum %s exceeds maximum %s' % (lo, hi)
            raise generic.CCWInvalidSetting(msg)
        axes[axis] = numpy.linspace(lo, hi, int(n))
    axes[normal] = numpy.array([float(level)])
    return tuple(axes)

def fieldMap(layout, axes, discretization=None, controls=None):
    """
    Evaluate the field of layout on the grid given by axes, a tuple of
    x, y and z sample arrays (see planeAxes). Points are processed in
    blocks of Controls.windowSize. The result does not depend on the
    block size.

    Raises CCWConductorIntersection, listing the offending row indices,
    if any grid point is inside the copper.
    """
    controls = ccwprocessor.getControls(controls)
    axes = tuple([numpy.atleast_1d(numpy.asarray(axis, dtype=numpy.float64)) for axis in axes])
    if len(axes) != 3 or min([axis.shape[0] for axis in axes]) < 1:
        msg = 'a field map needs 3 non empty axes'
        raise generic.CCWInvalidSetting(msg)

    grids = numpy.meshgrid(*axes, indexing='ij')
    points = numpy.column_stack([grid.flatten() for grid in grids])

    solver = magnetostatics.makeSolver(layout, discretization, controls)
    solver.checkClear(points, 'field map')

    field = numpy.empty_like(points)
    nPoints = points.shape[0]
    starts = range(0, nPoints, controls.windowSize)
    for start in controls.progressIter(starts, total=len(starts), desc='field map'):
        end = min(start + controls.windowSize, nPoints)
        field[start:end] = solver.field(points[start:end])

    return FieldMap(axes, points, field)

def localMinima(fmap):
    """
    Row indices of the strict local minima of |B| in a planar map:
    interior grid points below all 8 neighbours. Raises
    CCWInvalidSetting unless exactly two axes have more than one sample.
    """
    shape = fmap.shape
    planeAxesIdx = [axis for axis in range(3) if shape[axis] > 1]
    if len(planeAxesIdx) != 2:
        msg = 'local minima need a planar map, got shape %s' % (shape,)
        raise generic.CCWInvalidSetting(msg)
    mag = fmap.magnitudeGrid()
    rowIndex = numpy.arange(mag.size).reshape(shape)
    mag = mag.reshape(shape[planeAxesIdx[0]], shape[planeAxesIdx[1]])
    rowIndex = rowIndex.reshape(mag.shape)

    centre = mag[1:-1, 1:-1]
    isMin = numpy.ones(centre.shape, dtype=bool)
    n1, n2 = mag.shape
    for d1 in (-1, 0, 1):
        for d2 in (-1, 0, 1):
            if d1 == 0 and d2 == 0:
                continue
            neighbour = mag[1 + d1:n1 - 1 + d1, 1 + d2:n2 - 1 + d2]
            isMin &= centre < neighbour
    return rowIndex[1:-1, 1:-1][isMin].tolist()

def getFieldMapAsArray(fmap):
    """
    The map as a FIELDMAP_DTYPE structured array, one row per point.
    """
    arr = numpy.empty(fmap.points.shape[0], dtype=FIELDMAP_DTYPE)
    arr['X'] = fmap.points[:, 0]
    arr['Y'] = fmap.points[:, 1]
    arr['Z'] = fmap.points[:, 2]
    arr['BX'] = fmap.field[:, 0]
    arr['BY'] = fmap.field[:, 1]
    arr['BZ'] = fmap.field[:, 2]
    arr['BMAG'] = fmap.magnitude
    return arr

def writeFieldMapCSV(fmap, outfile):
    """
    Write the map as CSV with columns x,y,z,Bx,By,Bz,|B| (SI units),
    one row per grid point in grid order.
    """
    arr = getFieldMapAsArray(fmap)
    numpy.savetxt(outfile, arr, fmt=CSV_FORMAT, delimiter=',',
            header=','.join(CSV_COLUMNS), comments='', newline='\n')

def writeFieldMapJSON(fmap, outfile):
    """
    Write the map as a JSON document with the grid axes and the
    field vector at every point.
    """
    data = {'axes': {'x': fmap.axes[0].tolist(), 'y': fmap.axes[1].tolist(),
                'z': fmap.axes[2].tolist()},
            'field': fmap.field.tolist(),
            'order': 'x slowest, z fastest',
            'units': {'position': 'm', 'field': 'T'}}
    with open(outfile, 'w') as f:
        json.dump(generic.jsonReady(data), f, indent=1, sort_keys=True, allow_nan=False)
        f.write('\n')
