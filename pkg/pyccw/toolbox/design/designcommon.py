"""
Types shared by the design evaluation and the sweeps.
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

from pyccw import generic

DEFAULT_ION_HEIGHT = 125e-6 # m
"Height of the ion above the chip surface"
DEFAULT_GATE_LENGTH = 560e-6 # m
"Length of the gate wires of the routed gate zone"
DEFAULT_SERIES_LENGTH = 39e-3 # m
"Total conductor length of the device in series (390 squares at 100 um)"

DEFAULT_J_MAX = 1e6 # A/cm^2
"Current density limit"
DEFAULT_GRADIENT_RANGE = (100.0, 150.0) # T/m
"Desired gradient band"
DEFAULT_STORAGE_B_MAX = 2e-3 # T
"Largest field allowed in the storage zones"
DEFAULT_STORAGE_OFFSET = 5e-3 # m
"Distance of the default storage points from the gate along the junction arms"

DESIGN_FIELDS = ('width', 'depth', 'separation', 'length', 'current', 'ionHeight',
            'gateLength')
"Fields of a DesignPoint, in the order sweeps enumerate them"

VERDICT_NAMES = ('current_density', 'power_budget', 'operating_temperature',
            'storage_field', 'gradient_target')
"Names of the per constraint verdicts, in report order"

class CCWDesignError(generic.CCWException):
    "A design that cannot be built or scored"

class DesignPoint(collections.namedtuple('DesignPoint', DESIGN_FIELDS)):
    """
    One candidate design. Lengths in metres, current in amperes.

    * width, depth   cross section of the wires
    * separation     edge to edge gap of the gate wires
    * length         total series conductor length, sets the resistance
    * current        drive current
    * ionHeight      height where the quadrupole must sit
    * gateLength     length of the gate wires of the routed gate zone

    Ordering is lexicographic in the order above.
    """
    __slots__ = ()
    def __new__(cls, width, depth, separation, length, current,
                ionHeight=DEFAULT_ION_HEIGHT, gateLength=DEFAULT_GATE_LENGTH):
        values = [float(v) for v in (width, depth, separation, length, current,
                    ionHeight, gateLength)]
        for name, value in zip(DESIGN_FIELDS, values):
            if not numpy.isfinite(value) or value <= 0:
                msg = 'design %s must be positive, got %s' % (name, value)
                raise generic.CCWInvalidSetting(msg)
        return super(DesignPoint, cls).__new__(cls, *values)

    def geometryKey(self):
        "the fields the magnetic part of an evaluation depends on"
        return (self.width, self.depth, self.separation, self.ionHeight, self.gateLength)

def defaultStoragePoints(ionHeight):
    """
    Storage points DEFAULT_STORAGE_OFFSET either side of the gate
    along x, at the ion height.
    """
    return numpy.array([[-DEFAULT_STORAGE_OFFSET, ionHeight, 0.0],
                    [DEFAULT_STORAGE_OFFSET, ionHeight, 0.0]])

class Constraints(object):
    """
    Bounds a design must meet. All bounds are closed (a value on the
    bound passes) and may be numpy.inf.

    * jMax           current density limit (A/cm^2)
    * gradientRange  (low, high) band for the gradient at the drive current (T/m)
    * powerBudget    largest self heated dissipation (W)
    * tOpMax         highest operating temperature (K)
    * storageBMax    largest |B| at any storage point (T)
    * storagePoints  (N, 3) array of storage positions, or None for
                     defaultStoragePoints at the ion height of each design
    """
    def __init__(self, jMax=DEFAULT_J_MAX, gradientRange=DEFAULT_GRADIENT_RANGE,
                powerBudget=numpy.inf, tOpMax=numpy.inf,
                storageBMax=DEFAULT_STORAGE_B_MAX, storagePoints=None):
        for name, value in (('jMax', jMax), ('powerBudget', powerBudget),
                    ('tOpMax', tOpMax), ('storageBMax', storageBMax)):
            if numpy.isnan(value) or value < 0:
                msg = 'constraint %s must be >= 0, got %s' % (name, value)
                raise generic.CCWInvalidSetting(msg)
        low, high = gradientRange
        if numpy.isnan(low) or numpy.isnan(high) or low < 0 or low > high:
            msg = 'gradient range must satisfy 0 <= low <= high, got %s' % (gradientRange,)
            raise generic.CCWInvalidSetting(msg)
        if storagePoints is not None:
            storagePoints = numpy.atleast_2d(numpy.array(storagePoints, dtype=numpy.float64))
            if storagePoints.shape[1] != 3:
                msg = 'storage points must be (x, y, z) triples'
                raise generic.CCWInvalidSetting(msg)
        self.jMax = float(jMax)
        self.gradientRange = (float(low), float(high))
        self.powerBudget = float(powerBudget)
        self.tOpMax = float(tOpMax)
        self.storageBMax = float(storageBMax)
        self.storagePoints = storagePoints

    def getStoragePoints(self, ionHeight):
        if self.storagePoints is None:
            return defaultStoragePoints(ionHeight)
        return self.storagePoints

    def relaxed(self, **kwargs):
        """
        Copy of the constraints with some bounds replaced.
        """
        args = {'jMax': self.jMax, 'gradientRange': self.gradientRange,
                'powerBudget': self.powerBudget, 'tOpMax': self.tOpMax,
                'storageBMax': self.storageBMax, 'storagePoints': self.storagePoints}
        args.update(kwargs)
        return Constraints(**args)

    def asDict(self):
        "Unbounded limits are None"
        return generic.jsonReady({'j_max_A_per_cm2': self.jMax,
                'gradient_range_T_per_m': list(self.gradientRange),
                'power_budget_W': self.powerBudget, 't_op_max_K': self.tOpMax,
                'storage_b_max_T': self.storageBMax,
                'storage_points_m': (None if self.storagePoints is None
                        else self.storagePoints.tolist())})

Verdict = collections.namedtuple('Verdict', ['name', 'value', 'bound', 'passed'])
"""
Outcome of one constraint. bound is a number, or a (low, high) pair
for the gradient band.
"""

class Metrics(object):
    """
    Everything evaluate() works out about a design.

    * gradientPerAmp     axial gradient per amp at the quadrupole (T/m/A)
    * gradientAtCurrent  gradientPerAmp * design current (T/m)
    * currentDensity     in the gate wires (A/cm^2)
    * power, tOp         self heated dissipation (W) and temperature (K),
                         nan when the operating point did not converge
    * storageB           |B| at each storage point (T)
    * storagePoints      the points storageB was evaluated at
    * returnOffset       solved return conductor offset of the gate loops (m)
    * quadrupole         magnetostatics.QuadrupolePoint
    * operatingPoint     electrothermal.OperatingPoint
    * verdicts           list of Verdict, one per VERDICT_NAMES
    * problem            message if the magnetic part could not be solved
    """
    def __init__(self):
        self.gradientPerAmp = numpy.nan
        self.gradientAtCurrent = numpy.nan
        self.currentDensity = numpy.nan
        self.power = numpy.nan
        self.tOp = numpy.nan
        self.storageB = numpy.array([])
        self.storagePoints = numpy.empty((0, 3))
        self.returnOffset = numpy.nan
        self.quadrupole = None
        self.operatingPoint = None
        self.verdicts = []
        self.problem = None

    @property
    def feasible(self):
        return (self.problem is None and len(self.verdicts) > 0 and
                all([verdict.passed for verdict in self.verdicts]))

    def getVerdict(self, name):
        for verdict in self.verdicts:
            if verdict.name == name:
                return verdict
        msg = 'no verdict named %s' % name
        raise KeyError(msg)

    def asDict(self):
        """
        The metrics as a dict ready for JSON. Metrics that could not be
        worked out are None.
        """
        finite = generic.finiteOrNone
        return {'gradient_per_amp_T_per_m_per_A': finite(self.gradientPerAmp),
                'gradient_at_current_T_per_m': finite(self.gradientAtCurrent),
                'current_density_A_per_cm2': finite(self.currentDensity),
                'power_W': finite(self.power), 't_op_K': finite(self.tOp),
                'storage_b_T': generic.jsonReady(self.storageB),
                'storage_points_m': self.storagePoints.tolist(),
                'return_offset_m': finite(self.returnOffset),
                'quadrupole_position_m': (None if self.quadrupole is None
                        else self.quadrupole.position.tolist()),
                'operating_point_converged': (None if self.operatingPoint is None
                        else self.operatingPoint.converged),
                'verdicts': [{'name': v.name, 'value': finite(v.value),
                        'bound': generic.jsonReady(v.bound),
                        'passed': v.passed} for v in self.verdicts],
                'feasible': self.feasible, 'problem': self.problem}
