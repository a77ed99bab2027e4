"""
Checks scoring single designs against the constraints
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

from . import utils
from pyccw import generic
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal
from pyccw.toolbox.design import designcommon
from pyccw.toolbox.design import evaluate

# a sink good enough for the standard design to reach an operating point
COOL_RTH = 1.0 # K/W

def standardDesign(current=13.0, width=100e-6):
    return designcommon.DesignPoint(width, 15e-6, 88e-6, 39e-3, current)

def checkStandardDesign(controls, model):
    """
    The standard design at 13A meets the default constraints
    """
    env = electrothermal.ThermalEnvironment(40.0, COOL_RTH)
    metrics = evaluate.evaluate(standardDesign(), env, model, controls=controls)
    utils.compareValue('gradient at 13A', metrics.gradientAtCurrent, 144.0, rtol=0.2)
    utils.checkTrue('standard design feasible', metrics.feasible,
            'verdicts %s' % (metrics.verdicts,))
    utils.checkTrue('verdict order', tuple([v.name for v in metrics.verdicts]) ==
            designcommon.VERDICT_NAMES)
    utils.compareValue('operating temperature', metrics.tOp,
            40.0 + COOL_RTH * metrics.power, atol=1e-3)
    utils.compareValue('quadrupole at the ion height', metrics.quadrupole.position[1],
            125e-6, atol=15e-6)
    utils.checkInRange('storage field', metrics.storageB.max(), 0.0, 2e-3)

    again = evaluate.evaluate(standardDesign(), env, model, controls=controls)
    utils.checkTrue('deterministic evaluation', json.dumps(metrics.asDict(), sort_keys=True) ==
            json.dumps(again.asDict(), sort_keys=True))
    return metrics

def checkCurrentScaling(controls, model, metrics):
    """
    Gradient and current density follow the drive current
    """
    env = electrothermal.ThermalEnvironment(40.0, COOL_RTH)
    cache = {}
    half = evaluate.evaluate(standardDesign(6.5), env, model, controls=controls,
            gateCache=cache)
    utils.compareValue('gradient linear in current', 2 * half.gradientAtCurrent,
            metrics.gradientAtCurrent, rtol=1e-12)
    full = evaluate.evaluate(standardDesign(13.0), env, model, controls=controls,
            gateCache=cache)
    utils.checkTrue('gate solved once', len(cache) == 1)
    utils.compareValue('cached gate', full.gradientPerAmp, metrics.gradientPerAmp)

    high = evaluate.evaluate(standardDesign(15.0), env, model, controls=controls,
            gateCache=cache)
    utils.compareValue('current density at 15A', high.currentDensity, 1e6, rtol=1e-12)
    onBound = designcommon.Constraints(jMax=high.currentDensity)
    verdict = evaluate.checkConstraints(high, onBound)[0]
    utils.checkTrue('bound is inclusive', verdict.name == 'current_density' and verdict.passed)

    current = evaluate.currentForGradient(standardDesign(), 150.0, controls)
    utils.compareValue('current for 150 T/m', current, 13.4, rtol=0.05)
    utils.compareValue('current for no gradient', evaluate.currentForGradient(
            standardDesign(), 0.0, gradientPerAmp=metrics.gradientPerAmp), 0.0)
    utils.compareValue('current from a given gradient', evaluate.currentForGradient(
            standardDesign(), 150.0, gradientPerAmp=10.0), 15.0)
    utils.checkRaises('negative target gradient', generic.CCWInvalidSetting,
            evaluate.currentForGradient, standardDesign(), -1.0, controls, 10.0)

def checkConstraintBounds(metrics):
    """
    Infinite and zero bounds
    """
    unbounded = designcommon.Constraints(jMax=numpy.inf, gradientRange=(0.0, numpy.inf),
            powerBudget=numpy.inf, tOpMax=numpy.inf, storageBMax=numpy.inf)
    utils.checkTrue('infinite bounds pass', all([v.passed for v in
            evaluate.checkConstraints(metrics, unbounded)]))

    noStorage = designcommon.Constraints(storageBMax=0.0)
    verdicts = evaluate.checkConstraints(metrics, noStorage)
    utils.checkTrue('zero storage field fails', not verdicts[3].passed and
            all([v.passed for idx, v in enumerate(verdicts) if idx != 3]))

    tight = designcommon.Constraints(powerBudget=0.5 * metrics.power)
    utils.checkTrue('power budget', not evaluate.checkConstraints(metrics, tight)[1].passed)

    utils.checkRaises('negative bound', generic.CCWInvalidSetting,
            designcommon.Constraints, jMax=-1.0)
    utils.checkRaises('inverted gradient band', generic.CCWInvalidSetting,
            designcommon.Constraints, gradientRange=(150.0, 100.0))
    utils.checkRaises('zero width design', generic.CCWInvalidSetting,
            designcommon.DesignPoint, 0.0, 15e-6, 88e-6, 39e-3, 13.0)

def checkFailures(controls, model):
    """
    Designs that run away or whose gate cannot be built
    """
    hot = electrothermal.ThermalEnvironment(40.0, 5.0)
    metrics = evaluate.evaluate(standardDesign(), hot, model, controls=controls)
    utils.checkTrue('runaway design infeasible', not metrics.feasible and
            not metrics.operatingPoint.converged and numpy.isnan(metrics.power))
    utils.checkTrue('runaway fails the thermal verdicts',
            not metrics.getVerdict('power_budget').passed and
            not metrics.getVerdict('operating_temperature').passed)

    custom = designcommon.Constraints(storagePoints=[[0.0, 125e-6, 2e-3]])
    cool = electrothermal.ThermalEnvironment(40.0, COOL_RTH)
    metrics = evaluate.evaluate(standardDesign(), cool, model, custom, controls)
    utils.checkTrue('custom storage points', metrics.storageB.shape == (1,))

    cache = {}
    for attempt in (1, 2):
        utils.checkRaises('no room for the return conductor %d' % attempt,
                designcommon.CCWDesignError, evaluate.evaluate,
                standardDesign(width=150e-6), cool, model, None, controls, cache)
    utils.checkTrue('failure cached', len(cache) == 1)

def run(oldpath, newpath):
    """
    Runs the design test suite. Tests:

    Scoring the standard design
    Scaling with the drive current and the current for a target gradient
    Inclusive, infinite and zero bounds
    Thermal runaway and unbuildable gates
    """
    controls = utils.getQuietControls()
    model = resistivity.ResistivityModel(100)
    metrics = checkStandardDesign(controls, model)
    checkCurrentScaling(controls, model, metrics)
    checkConstraintBounds(metrics)
    checkFailures(controls, model)
