"""
Wire layout types and the builders for the standard CCW structures.

A layout is a set of WirePath objects. Each path is a polyline of
vertices along the centroid of a conductor of rectangular cross
section, carrying a signed current in the direction the vertices are
listed. Coordinates are metres with x along the wire, y normal to the
chip surface (surface at y = 0, ion side positive) and z across the
wires, which for a gate zone is the trap axis.

For the field solver each conductor is replaced by a bundle of thin
filaments, one per sub-rectangle of the cross section. Filaments are
held in a structured array of type FILAMENT_DTYPE.
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

import collections
import numpy

from . import generic

FILAMENT_DTYPE = numpy.dtype([('X0', 'f8'), ('Y0', 'f8'), ('Z0', 'f8'),
                ('X1', 'f8'), ('Y1', 'f8'), ('Z1', 'f8'),
                ('CURRENT', 'f8'), ('WIRE', 'i4')])
"""
Layout of the filament arrays. (X0, Y0, Z0) is the start, (X1, Y1, Z1)
the end, CURRENT is in amperes flowing start to end and WIRE is the
index of the wire in its layout.
"""

SEGMENT_FRAME_DTYPE = numpy.dtype([('START', 'f8', (3,)), ('TANGENT', 'f8', (3,)),
                ('LATERAL', 'f8', (3,)), ('NORMAL', 'f8', (3,)),
                ('LENGTH', 'f8'), ('HALFWIDTH', 'f8'), ('HALFDEPTH', 'f8'),
                ('STARTEXT', 'f8'), ('ENDEXT', 'f8'),
                ('WIRE', 'i4')])
"""
Local frame of each straight segment of a layout. TANGENT runs along
the segment, LATERAL across the width and NORMAL through the depth.
STARTEXT and ENDEXT extend the copper past a vertex where the wire
joins its next segment, covering the outside of the corner.
"""

SURFACE_LEVEL = 0.0
"y coordinate of the chip surface. Builders put the top of the copper here."

UP = numpy.array([0.0, 1.0, 0.0])
"Surface normal, the reference for the lateral direction of a segment"

def makePoint(x, y, z):
    """
    Returns a Point3 (float64 array of shape (3,)). Raises
    CCWInvalidSetting if a coordinate is not finite.
    """
    point = numpy.array([x, y, z], dtype=numpy.float64)
    if not numpy.isfinite(point).all():
        msg = 'point coordinates must be finite, got %s' % point
        raise generic.CCWInvalidSetting(msg)
    return point

class CrossSection(collections.namedtuple('CrossSection', ['width', 'depth'])):
    """
    Rectangular cross section of a wire. width is in the chip plane,
    depth normal to it. Both in metres and strictly positive.
    """
    __slots__ = ()
    def __new__(cls, width, depth):
        width = float(width)
        depth = float(depth)
        if not (numpy.isfinite(width) and numpy.isfinite(depth)) or width <= 0 or depth <= 0:
            msg = 'cross section must have positive width and depth, got (%s, %s)' % (width, depth)
            raise generic.CCWInvalidLayout(msg)
        return super(CrossSection, cls).__new__(cls, width, depth)

    @property
    def area(self):
        "area of the cross section in m^2"
        return self.width * self.depth

    @property
    def diagonal(self):
        "length of the diagonal of the cross section"
        return numpy.hypot(self.width, self.depth)

class WirePath(object):
    """
    One conductor. vertices is an (N, 3) array of centroid positions
    (N >= 2, consecutive vertices distinct). The current in amperes
    flows from the first vertex to the last. A path whose last vertex
    equals its first is a closed loop.
    """
    def __init__(self, vertices, crossSection, current, label=None):
        vertices = numpy.array(vertices, dtype=numpy.float64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            msg = 'vertices must be a list of (x, y, z) points'
            raise generic.CCWInvalidLayout(msg)
        if vertices.shape[0] < 2:
            msg = 'a wire needs at least 2 vertices, got %d' % vertices.shape[0]
            raise generic.CCWInvalidLayout(msg)
        if not numpy.isfinite(vertices).all():
            msg = 'vertex coordinates must be finite'
            raise generic.CCWInvalidLayout(msg)
        steps = numpy.sqrt((numpy.diff(vertices, axis=0)**2).sum(axis=1))
        zeroSteps = numpy.where(steps == 0)[0]
        if zeroSteps.size > 0:
            msg = 'consecutive vertices %d and %d coincide' % (zeroSteps[0], zeroSteps[0] + 1)
            raise generic.CCWInvalidLayout(msg)

        current = float(current)
        if not numpy.isfinite(current):
            msg = 'wire current must be finite, got %s' % current
            raise generic.CCWInvalidLayout(msg)

        if not isinstance(crossSection, CrossSection):
            crossSection = CrossSection(*crossSection)

        vertices.flags.writeable = False
        steps.flags.writeable = False
        self.vertices = vertices
        self.crossSection = crossSection
        self.current = current
        self.label = label
        self.segmentLengths = steps

    @property
    def width(self):
        return self.crossSection.width

    @property
    def depth(self):
        return self.crossSection.depth

    @property
    def length(self):
        "total centreline length in metres"
        return self.segmentLengths.sum()

    @property
    def nSegments(self):
        return self.vertices.shape[0] - 1

    @property
    def isClosed(self):
        return bool((self.vertices[0] == self.vertices[-1]).all())

    def withVertices(self, vertices):
        "copy of this wire on new vertices"
        return WirePath(vertices, self.crossSection, self.current, self.label)

    def withCurrent(self, current):
        "copy of this wire carrying a different current"
        return WirePath(self.vertices, self.crossSection, current, self.label)

    def __eq__(self, other):
        if not isinstance(other, WirePath):
            return NotImplemented
        return (self.vertices.shape == other.vertices.shape and
                bool((self.vertices == other.vertices).all()) and
                self.crossSection == other.crossSection and
                self.current == other.current and self.label == other.label)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'WirePath(%d vertices, %s, %g A)' % (self.vertices.shape[0],
                    self.crossSection, self.current)

class WireLayout(object):
    """
    An ordered, non empty collection of WirePath objects. The position
    of a wire in the layout is the wire index used in filament arrays
    and error reports.
    """
    def __init__(self, wires, name=None):
        wires = tuple(wires)
        if len(wires) == 0:
            msg = 'a layout needs at least one wire'
            raise generic.CCWInvalidLayout(msg)
        for idx, wire in enumerate(wires):
            if not isinstance(wire, WirePath):
                msg = 'wire %d is not a WirePath' % idx
                raise generic.CCWInvalidLayout(msg, wireIndex=idx)
        self.wires = wires
        self.name = name

    def __len__(self):
        return len(self.wires)

    def __iter__(self):
        return iter(self.wires)

    def __getitem__(self, idx):
        return self.wires[idx]

    def __eq__(self, other):
        if not isinstance(other, WireLayout):
            return NotImplemented
        return self.wires == other.wires and self.name == other.name

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    @property
    def driveCurrent(self):
        """
        Largest absolute wire current. Per amp quantities of the layout
        are normalized by this, the series drive current.
        """
        return max([abs(wire.current) for wire in self.wires])

    def allVertices(self):
        "(N, 3) array of the vertices of all the wires"
        return numpy.vstack([wire.vertices for wire in self.wires])

def checkBuilderArgs(**kwargs):
    """
    Raises CCWInvalidSetting unless every named argument is finite
    and strictly positive.
    """
    for name in sorted(kwargs.keys()):
        value = kwargs[name]
        if not numpy.isfinite(value) or value <= 0:
            msg = '%s must be positive, got %s' % (name, value)
            raise generic.CCWInvalidSetting(msg)

def wireOffset(width, separation, centreToCentre=False):
    """
    Distance from the symmetry plane z = 0 to the centreline of each
    wire of a pair. separation is the edge to edge gap unless
    centreToCentre is True, in which case it is the centreline distance.
    """
    if centreToCentre:
        if separation < width:
            msg = 'centre to centre separation %s is less than the wire width %s' % (separation, width)
            raise generic.CCWInvalidSetting(msg)
        return separation / 2
    if not numpy.isfinite(separation) or separation < 0:
        msg = 'separation must be >= 0, got %s' % separation
        raise generic.CCWInvalidSetting(msg)
    return (separation + width) / 2

def antiparallelPair(width, depth, separation, length, current, centreToCentre=False):
    """
    Two straight parallel wires along x, centred on the origin and
    mirrored about the plane z = 0, with the copper top at the chip
    surface. Wire 0 (z > 0) carries +current, wire 1 (z < 0) carries
    -current. A separation of zero gives touching wires.
    """
    checkBuilderArgs(width=width, depth=depth, length=length, current=current)
    offset = wireOffset(width, separation, centreToCentre)
    section = CrossSection(width, depth)
    yc = SURFACE_LEVEL - depth / 2
    halfLen = length / 2
    wires = []
    for sign in (1.0, -1.0):
        vertices = [[-halfLen, yc, sign * offset], [halfLen, yc, sign * offset]]
        wires.append(WirePath(vertices, section, sign * current))
    return WireLayout(wires, name='antiparallel pair')

def gateLoops(width, depth, separation, gateLength, returnOffset, current,
            centreToCentre=False):
    """
    Routed gate zone. The two wires of an antiparallel pair of length
    gateLength each close into a rectangular loop through a return
    conductor returnOffset (centreline to centreline) further from the
    trap axis. The loops circulate in opposite senses, so the gate wires
    carry antiparallel currents and the returns push the field back to
    zero at a height set by returnOffset. That null is the quadrupole.

    Wire 0 is the loop at z > 0, wire 1 its mirror image at z < 0.
    Both carry +current along their vertex order.
    """
    checkBuilderArgs(width=width, depth=depth, gateLength=gateLength,
            returnOffset=returnOffset, current=current)
    if returnOffset <= width:
        msg = 'return offset %s must exceed the wire width %s' % (returnOffset, width)
        raise generic.CCWInvalidSetting(msg)
    a = wireOffset(width, separation, centreToCentre)
    c = a + returnOffset
    x0 = gateLength / 2
    yc = SURFACE_LEVEL - depth / 2
    section = CrossSection(width, depth)
    north = [[-x0, yc, c], [-x0, yc, a], [x0, yc, a], [x0, yc, c], [-x0, yc, c]]
    south = [[x0, yc, -c], [x0, yc, -a], [-x0, yc, -a], [-x0, yc, -c], [x0, yc, -c]]
    wires = [WirePath(north, section, current, label='gate north'),
            WirePath(south, section, current, label='gate south')]
    return WireLayout(wires, name='gate loops')

def straightWire(width, depth, length, current=1.0):
    """
    Single straight wire along x. Used as the series equivalent of a
    whole device when only its resistance matters.
    """
    checkBuilderArgs(width=width, depth=depth, length=length)
    yc = SURFACE_LEVEL - depth / 2
    wire = WirePath([[-length / 2, yc, 0.0], [length / 2, yc, 0.0]],
                CrossSection(width, depth), current)
    return WireLayout([wire], name='straight wire')

def lateralDirection(tangent):
    """
    Unit vector across the width of a segment with unit tangent.
    Lies in the chip plane unless the segment is vertical.
    """
    lateral = numpy.cross(tangent, UP)
    norm = numpy.sqrt((lateral**2).sum())
    if norm < 1e-9:
        lateral = numpy.cross(tangent, numpy.array([1.0, 0.0, 0.0]))
        norm = numpy.sqrt((lateral**2).sum())
    return lateral / norm

def segmentFrames(layout):
    """
    Returns a SEGMENT_FRAME_DTYPE array with the local frame of every
    segment of every wire in the layout.
    """
    nSegments = sum([wire.nSegments for wire in layout])
    frames = numpy.empty(nSegments, dtype=SEGMENT_FRAME_DTYPE)
    idx = 0
    for wireIdx, wire in enumerate(layout):
        for segIdx in range(wire.nSegments):
            start = wire.vertices[segIdx]
            segLen = wire.segmentLengths[segIdx]
            tangent = (wire.vertices[segIdx + 1] - start) / segLen
            lateral = lateralDirection(tangent)
            frames[idx]['START'] = start
            frames[idx]['TANGENT'] = tangent
            frames[idx]['LATERAL'] = lateral
            frames[idx]['NORMAL'] = numpy.cross(lateral, tangent)
            frames[idx]['LENGTH'] = segLen
            frames[idx]['HALFWIDTH'] = wire.width / 2
            frames[idx]['HALFDEPTH'] = wire.depth / 2
            # joints get the corner square, free ends stop at the vertex
            joinedStart = segIdx > 0 or wire.isClosed
            joinedEnd = segIdx < wire.nSegments - 1 or wire.isClosed
            frames[idx]['STARTEXT'] = wire.width / 2 if joinedStart else 0.0
            frames[idx]['ENDEXT'] = wire.width / 2 if joinedEnd else 0.0
            frames[idx]['WIRE'] = wireIdx
            idx += 1
    return frames

def mitre(a, b):
    """
    Offset direction at a joint between segments with unit offset
    directions a and b. Its projection on both is 1, so a filament
    offset by s along it keeps distance s from both centrelines.
    """
    cosAngle = numpy.dot(a, b)
    if cosAngle <= -1 + 1e-9:
        return None
    return (a + b) / (1 + cosAngle)

def vertexOffsets(path, wireIndex=0):
    """
    Lateral and normal offset directions at every vertex of path, as two
    (nVertices, 3) arrays. Interior vertices (and the closing vertex of
    a loop) are mitred so filaments of neighbouring segments join.
    """
    nSeg = path.nSegments
    laterals = numpy.empty((nSeg, 3))
    normals = numpy.empty((nSeg, 3))
    for segIdx in range(nSeg):
        tangent = (path.vertices[segIdx + 1] - path.vertices[segIdx]) / path.segmentLengths[segIdx]
        laterals[segIdx] = lateralDirection(tangent)
        normals[segIdx] = numpy.cross(laterals[segIdx], tangent)

    vLateral = numpy.empty((nSeg + 1, 3))
    vNormal = numpy.empty((nSeg + 1, 3))
    for vIdx in range(nSeg + 1):
        before = vIdx - 1
        after = vIdx
        if vIdx == 0:
            before = nSeg - 1 if path.isClosed else 0
        elif vIdx == nSeg:
            after = 0 if path.isClosed else nSeg - 1
        lat = mitre(laterals[before], laterals[after])
        nrm = mitre(normals[before], normals[after])
        if lat is None or nrm is None:
            msg = 'wire %d folds back on itself at vertex %d' % (wireIndex, vIdx)
            raise generic.CCWInvalidLayout(msg, wireIndex)
        vLateral[vIdx] = lat
        vNormal[vIdx] = nrm
    return vLateral, vNormal

def filamentOffsets(size, n):
    "centres of n equal sub intervals of an interval of size centred on 0"
    return size * ((numpy.arange(n) + 0.5) / n - 0.5)

def discretize(path, nWidth, nDepth, wireIndex=0):
    """
    Replace a wire with nWidth * nDepth thin filaments, one through the
    centre of each sub rectangle of the cross section. Each filament
    carries current / (nWidth * nDepth) and follows the wire as a
    continuous polyline, so the filaments of a closed wire are closed
    loops. Returns a FILAMENT_DTYPE array with nWidth * nDepth entries
    per segment, segment by segment.
    """
    if int(nWidth) != nWidth or int(nDepth) != nDepth or nWidth < 1 or nDepth < 1:
        msg = 'filament counts must be integers >= 1, got (%s, %s)' % (nWidth, nDepth)
        raise generic.CCWInvalidSetting(msg)
    nWidth = int(nWidth)
    nDepth = int(nDepth)
    nPerSegment = nWidth * nDepth

    # all (width, depth) offset pairs of one cross section
    wOffsets, dOffsets = numpy.meshgrid(filamentOffsets(path.width, nWidth),
                        filamentOffsets(path.depth, nDepth), indexing='ij')
    wOffsets = wOffsets.flatten()
    dOffsets = dOffsets.flatten()

    vLateral, vNormal = vertexOffsets(path, wireIndex)
    # (nVertices, nPerSegment, 3)
    points = (path.vertices[:, numpy.newaxis, :] +
            wOffsets[numpy.newaxis, :, numpy.newaxis] * vLateral[:, numpy.newaxis, :] +
            dOffsets[numpy.newaxis, :, numpy.newaxis] * vNormal[:, numpy.newaxis, :])

    starts = points[:-1].reshape(-1, 3)
    ends = points[1:].reshape(-1, 3)
    lengths = numpy.sqrt(((ends - starts)**2).sum(axis=1))
    if (lengths <= 0).any():
        segIdx = numpy.nonzero(lengths <= 0)[0][0] // nPerSegment
        msg = 'segment %d of wire %d has zero length after offsetting filaments' % (
                    segIdx, wireIndex)
        raise generic.CCWInvalidLayout(msg, wireIndex)

    filaments = numpy.empty(starts.shape[0], dtype=FILAMENT_DTYPE)
    filaments['X0'] = starts[:, 0]
    filaments['Y0'] = starts[:, 1]
    filaments['Z0'] = starts[:, 2]
    filaments['X1'] = ends[:, 0]
    filaments['Y1'] = ends[:, 1]
    filaments['Z1'] = ends[:, 2]
    filaments['CURRENT'] = path.current / nPerSegment
    filaments['WIRE'] = wireIndex
    return filaments

def discretizeLayout(layout, nWidth, nDepth):
    """
    Filaments of every wire in the layout, tagged with the wire index.
    """
    return numpy.concatenate([discretize(wire, nWidth, nDepth, wireIdx)
                for wireIdx, wire in enumerate(layout)])

def lineFilaments(starts, ends, currents, wires=None):
    """
    Build a filament array directly from (N, 3) start and end points,
    for zero cross section conductors.
    """
    starts = numpy.atleast_2d(starts)
    ends = numpy.atleast_2d(ends)
    filaments = numpy.empty(starts.shape[0], dtype=FILAMENT_DTYPE)
    filaments['X0'] = starts[:, 0]
    filaments['Y0'] = starts[:, 1]
    filaments['Z0'] = starts[:, 2]
    filaments['X1'] = ends[:, 0]
    filaments['Y1'] = ends[:, 1]
    filaments['Z1'] = ends[:, 2]
    filaments['CURRENT'] = currents
    if wires is None:
        wires = numpy.arange(starts.shape[0])
    filaments['WIRE'] = wires
    return filaments

def squares(path):
    """
    Number of squares of the wire: centreline length / width.
    """
    return path.length / path.width

def layoutSquares(layout):
    "total squares of all wires in the layout"
    return sum([squares(wire) for wire in layout])

def currentDensity(path, current):
    """
    Mean current density in A/cm^2 when the wire carries current.
    """
    area = path.crossSection.area / generic.SQM_PER_SQCM
    return abs(current) / area

def translateLayout(layout, offset):
    """
    Copy of the layout shifted by offset (a Point3).
    """
    offset = numpy.asarray(offset, dtype=numpy.float64)
    wires = [wire.withVertices(wire.vertices + offset) for wire in layout]
    return WireLayout(wires, layout.name)

def mirrorLayout(layout, axis=2, flipCurrent=False):
    """
    Copy of the layout reflected through the plane where coordinate
    axis is zero. With flipCurrent the wire currents change sign too.
    """
    if axis not in (0, 1, 2):
        msg = 'mirror axis must be 0, 1 or 2, got %s' % axis
        raise generic.CCWInvalidSetting(msg)
    scale = numpy.ones(3)
    scale[axis] = -1.0
    wires = []
    for wire in layout:
        current = -wire.current if flipCurrent else wire.current
        wires.append(WirePath(wire.vertices * scale, wire.crossSection, current,
                        wire.label))
    return WireLayout(wires, layout.name)

def scaleLayoutCurrent(layout, factor):
    """
    Copy of the layout with every wire current multiplied by factor.
    """
    wires = [wire.withCurrent(wire.current * factor) for wire in layout]
    return WireLayout(wires, layout.name)
