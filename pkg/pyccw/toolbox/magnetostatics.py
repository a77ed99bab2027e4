"""
Magnetostatic field of wire layouts.

Each wire is replaced by a bundle of straight filaments (see
geometry.discretize) and the field is the sum of the exact Biot-Savart
field of every finite straight filament. Field values are in tesla,
positions in metres and currents in amperes.

Because the layouts built by pyccw are closed or mirror symmetric the
summed field is divergence free to rounding and, for closed loops,
curl free outside the copper. Points inside a conductor are refused
rather than approximated.
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

import os
import numpy
from scipy.optimize import least_squares

from pyccw import generic
from pyccw import geometry
from pyccw import ccwprocessor

DEBUG_MODE = os.getenv('PYCCW_DEBUG', '0')
DEBUG_MODE = int(DEBUG_MODE) > 0
if DEBUG_MODE:
    def jit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        def decorator(func):
            return func
        return decorator
else:
    from numba import jit

SINGULAR_DISTANCE = 1e-12 # m
"Points closer than this to a filament are treated as lying on it"

NO_WIRE = -1
"Wire index meaning 'not inside any conductor'"

PREFACTOR = generic.BIOT_SAVART_PREFACTOR
"mu0 / 4 pi, frozen into the compiled kernel"

@jit(nopython=True)
def filamentFieldKernel(points, x0, y0, z0, x1, y1, z1, current, guard,
            outField, singular):
    """
    Adds the field of every filament at every point into outField
    (shape (N, 3)). For each point singular receives the index of the
    first filament the point lies on, or is left alone.

    For a filament from A to B and u = B - A, ra = p - A, rb = p - B
    the field is

        mu0 I / 4 pi * (u x ra) / |u x ra|^2 * (u.ra / |ra| - u.rb / |rb|)

    A point on the line of a filament but outside it gets no field
    from that filament.
    """
    nPoints = points.shape[0]
    nFilaments = x0.shape[0]
    for p in range(nPoints):
        px = points[p, 0]
        py = points[p, 1]
        pz = points[p, 2]
        bx = 0.0
        by = 0.0
        bz = 0.0
        for f in range(nFilaments):
            ux = x1[f] - x0[f]
            uy = y1[f] - y0[f]
            uz = z1[f] - z0[f]
            rax = px - x0[f]
            ray = py - y0[f]
            raz = pz - z0[f]
            rbx = px - x1[f]
            rby = py - y1[f]
            rbz = pz - z1[f]
            cx = uy * raz - uz * ray
            cy = uz * rax - ux * raz
            cz = ux * ray - uy * rax
            c2 = cx * cx + cy * cy + cz * cz
            u2 = ux * ux + uy * uy + uz * uz
            along = ux * rax + uy * ray + uz * raz
            if c2 <= guard * guard * u2:
                # on the line of the filament
                if along >= 0.0 and along <= u2 and singular[p] < 0:
                    singular[p] = f
                continue
            na = numpy.sqrt(rax * rax + ray * ray + raz * raz)
            nb = numpy.sqrt(rbx * rbx + rby * rby + rbz * rbz)
            factor = current[f] * (along / na - (ux * rbx + uy * rby + uz * rbz) / nb) / c2
            bx += factor * cx
            by += factor * cy
            bz += factor * cz
        outField[p, 0] += bx * PREFACTOR
        outField[p, 1] += by * PREFACTOR
        outField[p, 2] += bz * PREFACTOR

def filamentField(points, filaments):
    """
    Field of a FILAMENT_DTYPE array at an (N, 3) array of points.
    Returns the (N, 3) field and an (N,) array holding, for each
    point, the index of the filament it lies on (-1 if none).
    """
    points = numpy.ascontiguousarray(numpy.atleast_2d(points), dtype=numpy.float64)
    outField = numpy.zeros((points.shape[0], 3))
    singular = numpy.full(points.shape[0], -1, dtype=numpy.int64)
    filamentFieldKernel(points,
            numpy.ascontiguousarray(filaments['X0']), numpy.ascontiguousarray(filaments['Y0']),
            numpy.ascontiguousarray(filaments['Z0']), numpy.ascontiguousarray(filaments['X1']),
            numpy.ascontiguousarray(filaments['Y1']), numpy.ascontiguousarray(filaments['Z1']),
            numpy.ascontiguousarray(filaments['CURRENT']), SINGULAR_DISTANCE,
            outField, singular)
    return outField, singular

def segmentField(point, start, end, current):
    """
    Field (T) at point of a single straight filament from start to
    end carrying current (A). Raises CCWSingularity when the point
    lies on the filament. Collinear points beyond the ends get zero.
    """
    filaments = geometry.lineFilaments(numpy.asarray(start, dtype=numpy.float64),
                    numpy.asarray(end, dtype=numpy.float64), current)
    field, singular = filamentField(point, filaments)
    if singular[0] >= 0:
        msg = 'point %s lies on the filament' % (numpy.asarray(point),)
        raise generic.CCWSingularity(msg, wireIndex=0)
    return field[0]

def getDiscretization(discretization, controls):
    "(nWidth, nDepth) from the argument, falling back to the controls"
    if discretization is None:
        controls = ccwprocessor.getControls(controls)
        discretization = controls.getDiscretization()
    return discretization

class FieldSolver(object):
    """
    Holds the filaments and the conductor volumes of a layout so that
    many evaluations can share them.
    """
    def __init__(self, layout, nWidth, nDepth):
        self.layout = layout
        self.discretization = (nWidth, nDepth)
        self.filaments = geometry.discretizeLayout(layout, nWidth, nDepth)
        self.frames = geometry.segmentFrames(layout)

    def wiresAt(self, points):
        """
        For each of an (N, 3) array of points, the index of the wire
        whose copper contains it, or NO_WIRE. Conductor surfaces count
        as inside.
        """
        points = numpy.atleast_2d(points)
        wires = numpy.full(points.shape[0], NO_WIRE, dtype=numpy.int64)
        for frame in self.frames:
            rel = points - frame['START']
            along = rel.dot(frame['TANGENT'])
            across = numpy.abs(rel.dot(frame['LATERAL']))
            through = numpy.abs(rel.dot(frame['NORMAL']))
            inside = ((along >= -frame['STARTEXT']) &
                    (along <= frame['LENGTH'] + frame['ENDEXT']) &
                    (across <= frame['HALFWIDTH']) & (through <= frame['HALFDEPTH']) &
                    (wires == NO_WIRE))
            wires[inside] = frame['WIRE']
        return wires

    def checkClear(self, points, what='grid'):
        """
        Raises CCWConductorIntersection, listing the offending point
        indices, if any of the points is inside a conductor.
        """
        wires = self.wiresAt(points)
        bad = numpy.where(wires != NO_WIRE)[0]
        if bad.size > 0:
            msg = '%d %s point(s) lie inside conductors (first index %d, wire %d)' % (
                    bad.size, what, bad[0], wires[bad[0]])
            raise generic.CCWConductorIntersection(msg, indices=bad.tolist())

    def field(self, points):
        """
        (N, 3) field at an (N, 3) array of points. Raises CCWSingularity
        with the wire index if a point is inside a conductor or on a
        filament.
        """
        points = numpy.atleast_2d(numpy.asarray(points, dtype=numpy.float64))
        wires = self.wiresAt(points)
        inside = numpy.where(wires != NO_WIRE)[0]
        if inside.size > 0:
            idx = inside[0]
            msg = 'point %s is inside wire %d' % (points[idx], wires[idx])
            raise generic.CCWSingularity(msg, wireIndex=int(wires[idx]))

        field, singular = filamentField(points, self.filaments)
        onFilament = numpy.where(singular >= 0)[0]
        if onFilament.size > 0:
            idx = onFilament[0]
            wireIdx = int(self.filaments['WIRE'][singular[idx]])
            msg = 'point %s lies on a filament of wire %d' % (points[idx], wireIdx)
            raise generic.CCWSingularity(msg, wireIndex=wireIdx)
        return field

def makeSolver(layout, discretization=None, controls=None):
    "FieldSolver for layout at the requested or default discretization"
    nWidth, nDepth = getDiscretization(discretization, controls)
    return FieldSolver(layout, nWidth, nDepth)

def insideConductors(points, layout):
    """
    Boolean array, True for each of an (N, 3) array of points that lies
    in the copper of layout (surfaces included).
    """
    solver = FieldSolver(layout, 1, 1)
    return solver.wiresAt(numpy.asarray(points, dtype=numpy.float64)) != NO_WIRE

def layoutField(point, layout, discretization=None, controls=None):
    """
    Field vector (T) of the whole layout at a point. discretization is
    (nWidth, nDepth) and defaults to that of the controls. Raises
    CCWSingularity if the point is inside a conductor or on a filament.
    """
    solver = makeSolver(layout, discretization, controls)
    return solver.field(point)[0]

def layoutFieldArray(points, layout, discretization=None, controls=None):
    """
    Like layoutField but for an (N, 3) array of points. Returns (N, 3).
    """
    solver = makeSolver(layout, discretization, controls)
    return solver.field(points)

class GradientResult(object):
    """
    Field derivatives at one point.

    Attributes:

    * point     the evaluation point
    * field     the field vector there
    * jacobian  3 x 3 array, jacobian[i, j] = dB_i / dx_j (T/m)
    * gradMag   gradient of |B| (T/m), shape (3,)
    * step      the central difference step used
    """
    def __init__(self, point, field, jacobian, gradMag, step):
        self.point = point
        self.field = field
        self.jacobian = jacobian
        self.gradMag = gradMag
        self.step = step

    @property
    def perAxis(self):
        """
        Norm of dB/dx_j for each axis j. At a field null this is the
        slope of |B| moving away along that axis.
        """
        return numpy.sqrt((self.jacobian**2).sum(axis=0))

    @property
    def axialGradient(self):
        "perAxis along z, the trap axis of a gate zone"
        return self.perAxis[2]

    @property
    def divergence(self):
        return numpy.trace(self.jacobian)

    @property
    def curl(self):
        j = self.jacobian
        return numpy.array([j[2, 1] - j[1, 2], j[0, 2] - j[2, 0], j[1, 0] - j[0, 1]])

def stencilPoints(point, step):
    """
    The 7 point central difference stencil: the point itself then
    point - step and point + step along x, y and z.
    """
    offsets = numpy.vstack([numpy.zeros(3), -step * numpy.eye(3), step * numpy.eye(3)])
    order = [0, 1, 4, 2, 5, 3, 6]
    return point + offsets[order]

def gradientFromStencil(point, stencilField, step):
    "Build a GradientResult from the field at stencilPoints()"
    mags = numpy.sqrt((stencilField**2).sum(axis=1))
    jacobian = numpy.empty((3, 3))
    gradMag = numpy.empty(3)
    for axis in range(3):
        minus = 1 + 2 * axis
        plus = minus + 1
        jacobian[:, axis] = (stencilField[plus] - stencilField[minus]) / (2 * step)
        gradMag[axis] = (mags[plus] - mags[minus]) / (2 * step)
    return GradientResult(point, stencilField[0], jacobian, gradMag, step)

def gradientWithSolver(point, solver, step):
    "gradient() using an existing FieldSolver"
    point = numpy.asarray(point, dtype=numpy.float64)
    stencil = stencilPoints(point, step)
    solver.checkClear(stencil, 'stencil')
    return gradientFromStencil(point, solver.field(stencil), step)

def gradient(point, layout, discretization=None, controls=None, step=None):
    """
    Jacobian of B and gradient of |B| at point by central differences
    with step (default Controls.gradientStep, 0.1 um). Raises
    CCWConductorIntersection if the stencil touches a conductor.
    """
    controls = ccwprocessor.getControls(controls)
    if step is None:
        step = controls.gradientStep
    if not step > 0:
        msg = 'gradient step must be positive, got %s' % step
        raise generic.CCWInvalidSetting(msg)
    solver = makeSolver(layout, discretization, controls)
    return gradientWithSolver(point, solver, step)

class QuadrupolePoint(object):
    """
    Result of findQuadrupole.

    Attributes:

    * position        location of the |B| minimum (m)
    * residualField   |B| there (T)
    * gradientPerAmp  per axis |B| slope divided by the drive current,
                      (3,) array in T/m/A
    * gradient        the GradientResult at the position
    """
    def __init__(self, position, residualField, gradientPerAmp, gradient):
        self.position = position
        self.residualField = residualField
        self.gradientPerAmp = gradientPerAmp
        self.gradient = gradient

    @property
    def axialGradientPerAmp(self):
        return self.gradientPerAmp[2]

def checkSearchBox(searchBox):
    """
    searchBox as a (3, 2) array of (min, max) per axis.
    """
    box = numpy.array(searchBox, dtype=numpy.float64)
    if box.shape != (3, 2) or not numpy.isfinite(box).all():
        msg = 'search box must be 3 (min, max) pairs of finite numbers'
        raise generic.CCWInvalidSetting(msg)
    if (box[:, 0] > box[:, 1]).any():
        msg = 'search box minimum exceeds maximum: %s' % box.tolist()
        raise generic.CCWInvalidSetting(msg)
    return box

def findQuadrupole(layout, searchBox, discretization=None, controls=None):
    """
    Locate the minimum of |B| inside searchBox, ((xmin, xmax),
    (ymin, ymax), (zmin, zmax)) in metres.

    |B| is first scanned on a grid of pitch Controls.searchPitch and the
    best grid point is then refined by bounded least squares on the
    field components, stopping at Controls.searchTolerance. An axis
    whose min and max are equal is held fixed.

    Raises CCWNotBracketed if the best grid point lies on a face of the
    box (the minimum is outside it) and CCWConductorIntersection if the
    box reaches into the copper.
    """
    controls = ccwprocessor.getControls(controls)
    box = checkSearchBox(searchBox)
    solver = makeSolver(layout, discretization, controls)

    axes = []
    for lo, hi in box:
        nSteps = int(numpy.ceil((hi - lo) / controls.searchPitch - 1e-9))
        axes.append(numpy.linspace(lo, hi, max(nSteps, 0) + 1))
    grids = numpy.meshgrid(*axes, indexing='ij')
    points = numpy.column_stack([grid.flatten() for grid in grids])
    solver.checkClear(points, 'search grid')

    mags = numpy.sqrt((solver.field(points)**2).sum(axis=1))
    best = numpy.argmin(mags)
    bestIdx = numpy.unravel_index(best, grids[0].shape)
    for axis in range(3):
        nAxis = axes[axis].shape[0]
        if nAxis > 1 and bestIdx[axis] in (0, nAxis - 1):
            msg = ('minimum of |B| on the search grid is on the box boundary ' +
                    'at %s; the quadrupole is not bracketed') % (points[best],)
            raise generic.CCWNotBracketed(msg)

    start = points[best]
    free = [axis for axis in range(3) if axes[axis].shape[0] > 1]
    position = start.copy()
    if len(free) > 0:
        scale = controls.searchPitch

        def toPoint(u):
            p = start.copy()
            p[free] = start[free] + u * scale
            return p

        def residuals(u):
            return solver.field(toPoint(u))[0]

        def jacobian(u):
            result = gradientWithSolver(toPoint(u), solver, controls.gradientStep)
            return result.jacobian[:, free] * scale

        lower = (box[free, 0] - start[free]) / scale
        upper = (box[free, 1] - start[free]) / scale
        fit = least_squares(residuals, numpy.zeros(len(free)), jac=jacobian,
                bounds=(lower, upper), xtol=controls.searchTolerance / scale / 10,
                ftol=1e-15, gtol=1e-15, method='trf')
        candidate = toPoint(fit.x)
        candidateMag = numpy.sqrt((residuals(fit.x)**2).sum())
        if candidateMag <= mags[best]:
            position = candidate
        msg = 'quadrupole refined from grid point %s to %s in %d evaluations' % (
                start, position, fit.nfev)
        controls.messageHandler(msg, generic.MESSAGE_DEBUG)

    result = gradientWithSolver(position, solver, controls.gradientStep)
    residual = numpy.sqrt((result.field**2).sum())
    gradientPerAmp = result.perAxis / layout.driveCurrent
    return QuadrupolePoint(position, residual, gradientPerAmp, result)

def thinWireReference(separation, height, current, length, width=0.0, step=1e-7):
    """
    Axial gradient per amp (T/m/A) of the idealized straight pair: two
    zero cross section wires of the given length at y = 0, with their
    centrelines (separation + width) / 2 either side of z = 0, carrying
    +current and -current. Evaluated at (0, height, 0), without a
    minimum search.

    Passing the width of a finite pair gives the thin wire version of
    the same layout.
    """
    geometry.checkBuilderArgs(height=height, current=current, length=length)
    if not separation >= 0 or not width >= 0 or separation + width <= 0:
        msg = 'separation and width must be >= 0 and not both zero, got (%s, %s)' % (
                separation, width)
        raise generic.CCWInvalidSetting(msg)
    offset = (separation + width) / 2
    starts = numpy.array([[-length / 2, 0.0, offset], [-length / 2, 0.0, -offset]])
    ends = starts.copy()
    ends[:, 0] = length / 2
    filaments = geometry.lineFilaments(starts, ends, [current, -current])

    point = numpy.array([0.0, height, 0.0])
    stencil = stencilPoints(point, step)
    field, singular = filamentField(stencil, filaments)
    if (singular >= 0).any():
        msg = 'reference point lies on a wire'
        raise generic.CCWSingularity(msg, wireIndex=int(filaments['WIRE'][singular.max()]))
    result = gradientFromStencil(point, field, step)
    return result.axialGradient / current

def convergedDiscretization(layout, points, controls=None, tolerance=0.005,
            maxDoublings=4):
    """
    Starting from the discretization of the controls, double both
    filament counts until |B| at every one of points changes by less
    than tolerance (relative). Returns the (nWidth, nDepth) that met
    the criterion.
    """
    controls = ccwprocessor.getControls(controls)
    nWidth, nDepth = controls.getDiscretization()
    mags = numpy.sqrt((FieldSolver(layout, nWidth, nDepth).field(points)**2).sum(axis=1))
    for doubling in range(maxDoublings):
        newMags = numpy.sqrt((FieldSolver(layout, 2 * nWidth, 2 * nDepth).field(points)**2).sum(axis=1))
        change = numpy.abs(newMags - mags) / numpy.maximum(newMags, 1e-300)
        if change.max() < tolerance:
            return (nWidth, nDepth)
        nWidth *= 2
        nDepth *= 2
        mags = newMags
        msg = 'field changed by %.3g%%, doubling to %d x %d filaments' % (
                100 * change.max(), nWidth, nDepth)
        controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    msg = 'discretization not converged after %d doublings' % maxDoublings
    controls.messageHandler(msg, generic.MESSAGE_WARNING)
    return (nWidth, nDepth)
