"""
Evaluate a single CCW design: place the quadrupole at the ion height,
measure its gradient, and score the drive current against the
current density, thermal and storage field constraints.
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
from scipy.optimize import brentq

from pyccw import generic
from pyccw import geometry
from pyccw import ccwprocessor
from pyccw.toolbox import magnetostatics
from pyccw.toolbox import electrothermal
from . import designcommon

MIN_RETURN_GAP = 10e-6 # m
"Smallest edge to edge gap between a gate wire and its return conductor"
MAX_RETURN_OFFSET = 5e-3 # m
"Largest return conductor offset tried when placing the quadrupole"
RETURN_OFFSET_TOLERANCE = 1e-10 # m
"Tolerance of the return offset root finding"
SEARCH_HALF_WIDTH = 20e-6 # m
"Half size of the quadrupole search box along x and z"
SEARCH_HALF_HEIGHT = 30e-6 # m
"Half size of the quadrupole search box along y (capped at half the ion height)"

GateSolution = collections.namedtuple('GateSolution', ['returnOffset', 'layout', 'quadrupole'])
"The routed gate of a design at 1 A and the quadrupole found in it"

def gateLayout(design, returnOffset, current=1.0):
    "gate loops of a design with the given return offset"
    return geometry.gateLoops(design.width, design.depth, design.separation,
                design.gateLength, returnOffset, current)

def searchBox(design):
    "quadrupole search box centred on the intended ion position"
    halfHeight = min(SEARCH_HALF_HEIGHT, design.ionHeight / 2)
    return [(-SEARCH_HALF_WIDTH, SEARCH_HALF_WIDTH),
            (design.ionHeight - halfHeight, design.ionHeight + halfHeight),
            (-SEARCH_HALF_WIDTH, SEARCH_HALF_WIDTH)]

def solveGate(design, controls=None):
    """
    Find the return offset that puts the field null of the gate loops
    at (0, ionHeight, 0), then locate and measure the quadrupole.
    Symmetry makes Bx and Bz vanish on that line so only By has to be
    driven to zero.

    Raises CCWDesignError if no offset between MIN_RETURN_GAP and
    MAX_RETURN_OFFSET does it.
    """
    controls = ccwprocessor.getControls(controls)
    ionPoint = numpy.array([0.0, design.ionHeight, 0.0])

    def byAtIon(returnOffset):
        layout = gateLayout(design, returnOffset)
        return magnetostatics.layoutField(ionPoint, layout, controls=controls)[1]

    lowOffset = design.width + MIN_RETURN_GAP
    highOffset = MAX_RETURN_OFFSET
    if lowOffset >= highOffset:
        msg = 'wire width %g m leaves no room for the return conductor' % design.width
        raise designcommon.CCWDesignError(msg)
    byLow = byAtIon(lowOffset)
    byHigh = byAtIon(highOffset)
    if byLow * byHigh > 0:
        msg = ('no return offset in [%g, %g] m puts the quadrupole at %g m ' +
                'for this gate geometry') % (lowOffset, highOffset, design.ionHeight)
        raise designcommon.CCWDesignError(msg)

    returnOffset = brentq(byAtIon, lowOffset, highOffset, xtol=RETURN_OFFSET_TOLERANCE)
    layout = gateLayout(design, returnOffset)
    quadrupole = magnetostatics.findQuadrupole(layout, searchBox(design), controls=controls)
    msg = 'return offset %.3f um puts the quadrupole at %s' % (returnOffset * 1e6,
                quadrupole.position)
    controls.messageHandler(msg, generic.MESSAGE_DEBUG)
    return GateSolution(returnOffset, layout, quadrupole)

def getGate(design, controls, gateCache):
    """
    solveGate with an optional cache dict keyed on the geometry. Failures
    are cached too and raised again.
    """
    if gateCache is None:
        return solveGate(design, controls)
    key = design.geometryKey()
    if key not in gateCache:
        try:
            gateCache[key] = solveGate(design, controls)
        except generic.CCWException as e:
            gateCache[key] = e
    result = gateCache[key]
    if isinstance(result, Exception):
        raise result
    return result

def checkConstraints(metrics, constraints):
    """
    One Verdict per constraint, in designcommon.VERDICT_NAMES order.
    Bounds are closed; a nan metric fails its constraint.
    """
    gradientLow, gradientHigh = constraints.gradientRange
    if metrics.storageB.shape[0] > 0:
        storageB = metrics.storageB.max()
    else:
        storageB = 0.0
    gradient = metrics.gradientAtCurrent
    return [designcommon.Verdict('current_density', metrics.currentDensity,
                constraints.jMax, bool(metrics.currentDensity <= constraints.jMax)),
            designcommon.Verdict('power_budget', metrics.power,
                constraints.powerBudget, bool(metrics.power <= constraints.powerBudget)),
            designcommon.Verdict('operating_temperature', metrics.tOp,
                constraints.tOpMax, bool(metrics.tOp <= constraints.tOpMax)),
            designcommon.Verdict('storage_field', storageB,
                constraints.storageBMax, bool(storageB <= constraints.storageBMax)),
            designcommon.Verdict('gradient_target', gradient,
                (gradientLow, gradientHigh), bool(gradientLow <= gradient <= gradientHigh))]

def evaluate(design, env, model, constraints=None, controls=None, gateCache=None):
    """
    Score a DesignPoint.

    The gate zone is built with gateLoops and its return offset solved
    so the quadrupole sits at the ion height. The series resistance
    is that of a straight wire of the design length and cross section.
    Returns a designcommon.Metrics. Errors of the field solvers and
    CCWDesignError are raised. A non converged operating point is not
    an error; it fails the thermal constraints.
    """
    if constraints is None:
        constraints = designcommon.Constraints()
    controls = ccwprocessor.getControls(controls)
    gate = getGate(design, controls, gateCache)

    metrics = designcommon.Metrics()
    metrics.returnOffset = gate.returnOffset
    metrics.quadrupole = gate.quadrupole
    metrics.gradientPerAmp = gate.quadrupole.axialGradientPerAmp
    metrics.gradientAtCurrent = metrics.gradientPerAmp * design.current
    metrics.currentDensity = geometry.currentDensity(gate.layout[0], design.current)

    series = geometry.straightWire(design.width, design.depth, design.length)
    point = electrothermal.operatingPoint(design.current, env, series, model,
                controls=controls)
    metrics.operatingPoint = point
    if point.converged:
        metrics.power = point.power
        metrics.tOp = point.temperature
    else:
        msg = 'no thermal operating point for %s' % (design,)
        controls.messageHandler(msg, generic.MESSAGE_WARNING)

    metrics.storagePoints = constraints.getStoragePoints(design.ionHeight)
    driven = geometry.scaleLayoutCurrent(gate.layout, design.current)
    storageField = magnetostatics.layoutFieldArray(metrics.storagePoints, driven,
                controls=controls)
    metrics.storageB = numpy.sqrt((storageField**2).sum(axis=1))

    metrics.verdicts = checkConstraints(metrics, constraints)
    return metrics

def currentForGradient(design, target, controls=None, gradientPerAmp=None):
    """
    Drive current (A) that gives the target axial gradient (T/m).
    gradientPerAmp is worked out from the design unless given.
    """
    if not numpy.isfinite(target) or target < 0:
        msg = 'target gradient must be >= 0, got %s' % target
        raise generic.CCWInvalidSetting(msg)
    if gradientPerAmp is None:
        gradientPerAmp = solveGate(design, controls).quadrupole.axialGradientPerAmp
    if gradientPerAmp == 0:
        msg = 'the design has no gradient, no current reaches %g T/m' % target
        raise designcommon.CCWDesignError(msg)
    return target / gradientPerAmp
