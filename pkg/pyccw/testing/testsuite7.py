"""
Checks fitting the residual resistance ratio to R(T) samples and the
thermal consequences of the fitted model
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
import json
import numpy

from . import utils
from pyccw import generic
from pyccw import geometry
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal

SQUARES = 390.0
THICKNESS = 15e-6

FIT_REPORT = 'testsuite7_fit.json'

# measured chip: 1.028W dissipated at 10A from a 38K base
SELF_HEATING_CURRENT = 10.0
SELF_HEATING_POWER = 1.028
SELF_HEATING_BASE = 38.0

MEASURED_RATIO = 1.43
"Self heated over isothermal power measured on the chip"
MEASURED_WIRE_TEMPERATURE = 43.0
"Wire temperature measured at the self heating point (K)"

def chipLayout():
    return geometry.straightWire(100e-6, THICKNESS, SQUARES * 100e-6)

def checkRoundTrip():
    """
    Samples generated from a model give its RRR back
    """
    layout = chipLayout()
    temps = [293.0, 40.0, 70.0, 150.0]
    for rrr in (20, 50, 100, 300):
        model = resistivity.ResistivityModel(rrr)
        samples = [(t, resistivity.layoutResistance(layout, t, model)) for t in temps]
        fit = resistivity.fitRRR(samples, SQUARES, THICKNESS)
        utils.compareValue('RRR %d round trip' % rrr, fit.rrrHat, rrr, rtol=0.05)
        utils.checkTrue('RRR %d exact interval' % rrr, fit.interval == (fit.rrrHat, fit.rrrHat))
        utils.compareValue('RRR %d residual' % rrr, fit.residualNorm, 0.0, atol=1e-6)

def checkChipSamples(oldpath, newpath):
    """
    The measured chip samples
    """
    samples = resistivity.readRTSamples(os.path.join(oldpath, utils.RT_SAMPLES))
    utils.checkTrue('sample count', samples.shape[0] == 3)
    fit = resistivity.fitRRR(samples, SQUARES, THICKNESS)
    utils.checkInRange('fitted RRR', fit.rrrHat, 115.0, 395.0)
    utils.checkTrue('interval brackets the fit',
            fit.interval[0] <= fit.rrrHat <= fit.interval[1])
    utils.checkInRange('interval lower end', fit.interval[0], 100.0, fit.rrrHat)
    utils.checkTrue('anchored at room temperature', fit.anchorIndex == 0)

    fname = os.path.join(newpath, FIT_REPORT)
    resistivity.writeFitReport(fit, fname, extra={'note': 'chip samples'})
    with open(fname) as f:
        report = json.load(f)
    utils.compareValue('report RRR', report['rrr_hat'], fit.rrrHat)
    utils.checkTrue('report extra', report['note'] == 'chip samples')
    utils.checkTrue('report samples', len(report['samples']) == 3)
    return fit

def checkDegenerate():
    """
    Sample sets the fit refuses
    """
    utils.checkRaises('single sample', generic.CCWDegenerateData,
            resistivity.fitRRR, [(293.0, 0.438)], SQUARES, THICKNESS)
    utils.checkRaises('repeated temperature', generic.CCWDegenerateData,
            resistivity.fitRRR, [(293.0, 0.438), (40.0, 0.008), (40.0, 0.009)],
            SQUARES, THICKNESS)
    utils.checkRaises('no room temperature anchor', generic.CCWDegenerateData,
            resistivity.fitRRR, [(40.0, 0.008), (70.0, 0.04)], SQUARES, THICKNESS)
    utils.checkRaises('negative resistance', generic.CCWDegenerateData,
            resistivity.fitRRR, [(293.0, 0.438), (40.0, -0.008)], SQUARES, THICKNESS)
    utils.checkRaises('sample above the table', generic.CCWOutOfRange,
            resistivity.fitRRR, [(293.0, 0.438), (400.0, 0.6)], SQUARES, THICKNESS)
    utils.checkRaises('malformed sample', generic.CCWDegenerateData,
            resistivity.fitRRR, [(293.0,), (40.0, 0.008)], SQUARES, THICKNESS)

def checkSelfHeating(fit, controls):
    """
    The fitted model against the measured self heating
    """
    layout = chipLayout()
    model = resistivity.fittedModel(fit)
    utils.compareValue('fitted sheet resistance at 40K', resistivity.sheetResistance(
            40.0, THICKNESS, model), 20.9e-6, rtol=0.05)

    rTh = electrothermal.fitThermalResistance(SELF_HEATING_CURRENT, SELF_HEATING_POWER,
            SELF_HEATING_BASE, layout, model)
    utils.compareValue('fitted thermal resistance', rTh, 5.16, rtol=0.03)

    env = electrothermal.ThermalEnvironment(SELF_HEATING_BASE, rTh)
    point = electrothermal.operatingPoint(SELF_HEATING_CURRENT, env, layout, model,
            controls=controls)
    utils.compareValue('measured power reproduced', point.power, SELF_HEATING_POWER,
            rtol=1e-3)
    ratio = electrothermal.selfHeatingRatio(SELF_HEATING_CURRENT, env, layout, model,
            controls)
    utils.compareValue('self heating ratio', ratio, MEASURED_RATIO, atol=0.15)

    runaway = electrothermal.runawayCurrent(env, layout, model, 40.0, controls)
    utils.checkTrue('runaway near the operating current',
            runaway is not None and 6.5 <= runaway <= 26.0, 'runaway at %s' % runaway)

def checkSelfHeatingConsistency(fit, controls):
    """
    The fitted model predicts the measured power from an independent
    wire temperature or thermal resistance, and a wrong RRR does not.
    """
    layout = chipLayout()
    model = resistivity.fittedModel(fit)
    args = (SELF_HEATING_CURRENT, SELF_HEATING_POWER, SELF_HEATING_BASE, layout)

    check = electrothermal.checkSelfHeating(*args, model=model,
            wireTemperature=MEASURED_WIRE_TEMPERATURE, controls=controls)
    utils.checkTrue('fitted model consistent at measured wire temperature',
            check['consistent'] is True, str(check))
    utils.compareValue('model ratio at measured wire temperature', check['ratio_model'],
            1.439, atol=0.02)
    utils.compareValue('ratio implied by measured power', check['ratio_implied'],
            1.471, atol=0.02)
    utils.checkInRange('power error at measured wire temperature',
            check['power_error'], -0.05, 0.0)

    check = electrothermal.checkSelfHeating(*args, model=model, rTh=5.0,
            controls=controls)
    utils.checkTrue('fitted model consistent with 5 K/W', check['consistent'] is True,
            str(check))
    check = electrothermal.checkSelfHeating(*args, model=model, rTh=2.0,
            controls=controls)
    utils.checkTrue('fitted model inconsistent with 2 K/W',
            check['consistent'] is False, str(check))

    wrong = resistivity.ResistivityModel(50.0, rhoRef=fit.rhoRef)
    check = electrothermal.checkSelfHeating(*args, model=wrong,
            wireTemperature=MEASURED_WIRE_TEMPERATURE, controls=controls)
    utils.checkTrue('RRR 50 inconsistent at measured wire temperature',
            check['consistent'] is False, str(check))
    utils.checkTrue('RRR 50 overpredicts power', check['power_error'] > 0.5,
            str(check))

    check = electrothermal.checkSelfHeating(*args, model=model, controls=controls)
    utils.checkTrue('no verdict without independent input',
            check['consistent'] is None and check['power_model_W'] is None, str(check))
    utils.checkRaises('wire temperature and thermal resistance together',
            generic.CCWInvalidSetting, electrothermal.checkSelfHeating, *args,
            model=model, wireTemperature=MEASURED_WIRE_TEMPERATURE, rTh=5.0)

def run(oldpath, newpath):
    """
    Runs the fit test suite. Tests:

    Recovering the RRR of generated samples
    Fitting the measured chip samples and writing the report
    Refusing degenerate sample sets
    Thermal resistance, self heating and runaway of the fitted chip
    Measured self heating against independent thermal inputs
    """
    controls = utils.getQuietControls()
    checkRoundTrip()
    fit = checkChipSamples(oldpath, newpath)
    checkDegenerate()
    checkSelfHeating(fit, controls)
    checkSelfHeatingConsistency(fit, controls)
