"""
Checks the electrothermal operating point, power curves and the
thermal runaway search
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

from . import utils
from pyccw import generic
from pyccw import geometry
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal

POWER_CURVE_CSV = 'testsuite6_power.csv'

def seriesWire():
    return geometry.straightWire(100e-6, 15e-6, 39e-3)

def checkOperatingPoint(controls):
    """
    Fixed point at zero, moderate and isothermal conditions
    """
    layout = seriesWire()
    model = resistivity.ResistivityModel(50)
    env = electrothermal.ThermalEnvironment(40.0, 5.0)

    idle = electrothermal.operatingPoint(0.0, env, layout, model, controls=controls)
    utils.checkTrue('idle converged', idle.converged and idle.iterations == 1)
    utils.compareValue('idle power', idle.power, 0.0)
    utils.compareValue('idle temperature', idle.temperature, 40.0)

    point = electrothermal.operatingPoint(10.0, env, layout, model, controls=controls)
    utils.checkTrue('10A converged', point.converged)
    utils.compareValue('power at 10A', point.power, 2.3, rtol=0.15)
    utils.compareValue('heat balance', point.temperature, env.tBase + env.rTh * point.power,
            atol=1e-3)
    utils.compareValue('joule heating', point.power, 100.0 * point.resistance, rtol=1e-12)

    hot = electrothermal.operatingPoint(10.0, env, layout, model, tInit=150.0,
            controls=controls)
    utils.compareValue('start temperature independence', hot.temperature,
            point.temperature, atol=1e-2)

    sink = electrothermal.ThermalEnvironment(40.0, 0.0)
    isothermal = electrothermal.operatingPoint(10.0, sink, layout, model, controls=controls)
    utils.compareValue('zero thermal resistance', isothermal.temperature, 40.0)
    utils.compareValue('isothermal power', isothermal.power,
            100.0 * resistivity.layoutResistance(layout, 40.0, model), rtol=1e-12)

    capped = utils.getQuietControls()
    capped.setMaxIterations(2)
    stopped = electrothermal.operatingPoint(10.0, env, layout, model, controls=capped)
    utils.checkTrue('iteration cap', not stopped.converged and stopped.iterations == 2)

    utils.checkRaises('negative current', generic.CCWInvalidSetting,
            electrothermal.operatingPoint, -1.0, env, layout, model)
    utils.checkRaises('base below 4K', generic.CCWInvalidSetting,
            electrothermal.ThermalEnvironment, 3.0, 5.0)
    utils.checkRaises('negative thermal resistance', generic.CCWInvalidSetting,
            electrothermal.ThermalEnvironment, 40.0, -1.0)

def checkPowerCurve(controls, newpath):
    """
    Self heated power lies above the isothermal power
    """
    layout = seriesWire()
    model = resistivity.ResistivityModel(50)
    env = electrothermal.ThermalEnvironment(40.0, 5.0)
    currents = numpy.arange(0.0, 10.5, 1.0)
    curve = electrothermal.powerCurve(currents, env, layout, model, controls)
    utils.checkTrue('curve converged', curve['CONVERGED'].all())
    utils.checkTrue('self heating adds power',
            (curve['POWER_SELFHEATED'] >= curve['POWER_ISOTHERMAL']).all())
    utils.checkTrue('power increases with current',
            (numpy.diff(curve['POWER_SELFHEATED']) > 0).all())
    utils.compareArrays('isothermal power is quadratic', curve['POWER_ISOTHERMAL'],
            currents**2 * curve['POWER_ISOTHERMAL'][1], rtol=1e-12)

    ratio = electrothermal.selfHeatingRatio(10.0, env, layout, model, controls)
    utils.compareValue('self heating ratio from the curve', ratio,
            curve['POWER_SELFHEATED'][-1] / curve['POWER_ISOTHERMAL'][-1], rtol=1e-12)
    sink = electrothermal.ThermalEnvironment(40.0, 0.0)
    utils.compareValue('no self heating at the sink', electrothermal.selfHeatingRatio(
            10.0, sink, layout, model, controls), 1.0, rtol=1e-12)

    fname = os.path.join(newpath, POWER_CURVE_CSV)
    electrothermal.writePowerCurve(curve, fname)
    data = numpy.loadtxt(fname, delimiter=',', skiprows=1)
    utils.checkTrue('power curve rows', data.shape == (currents.shape[0], 5))
    utils.compareArrays('power curve file', data[:, 1], curve['POWER_SELFHEATED'], rtol=1e-8)

    utils.checkRaises('descending currents', generic.CCWInvalidSetting,
            electrothermal.powerCurve, [2.0, 1.0], env, layout, model, controls)

def checkRunaway(controls):
    """
    Runaway current falls as the thermal resistance grows
    """
    layout = seriesWire()
    model = resistivity.ResistivityModel(50)
    runaways = []
    for rTh in (1.0, 5.0, 20.0):
        env = electrothermal.ThermalEnvironment(40.0, rTh)
        runaways.append(electrothermal.runawayCurrent(env, layout, model, 40.0, controls))
    utils.checkTrue('runaway found', None not in runaways, 'runaway currents %s' % runaways)
    utils.checkTrue('runaway falls with thermal resistance',
            runaways[0] > runaways[1] > runaways[2], 'runaway currents %s' % runaways)
    utils.compareValue('runaway at 5 K/W', runaways[1], 11.2, rtol=0.1)

    env = electrothermal.ThermalEnvironment(40.0, 5.0)
    below = electrothermal.operatingPoint(runaways[1] - 0.2, env, layout, model,
            controls=controls)
    above = electrothermal.operatingPoint(runaways[1] + 0.2, env, layout, model,
            controls=controls)
    utils.checkTrue('converged below runaway', below.converged)
    utils.checkTrue('no operating point above runaway', not above.converged)

    sink = electrothermal.ThermalEnvironment(40.0, 0.0)
    utils.checkTrue('no runaway without thermal resistance',
            electrothermal.runawayCurrent(sink, layout, model, 40.0, controls) is None)

def checkThermalFit(controls):
    """
    Recover the thermal resistance from a computed operating point
    """
    layout = seriesWire()
    model = resistivity.ResistivityModel(50)
    env = electrothermal.ThermalEnvironment(40.0, 5.0)
    point = electrothermal.operatingPoint(10.0, env, layout, model, controls=controls)
    rTh = electrothermal.fitThermalResistance(10.0, point.power, 40.0, layout, model)
    utils.compareValue('thermal resistance recovered', rTh, 5.0, rtol=2e-3)

    isothermal = 100.0 * resistivity.layoutResistance(layout, 40.0, model)
    utils.checkRaises('power below isothermal', generic.CCWDegenerateData,
            electrothermal.fitThermalResistance, 10.0, 0.5 * isothermal, 40.0, layout, model)
    utils.checkRaises('power needs a hot chip', generic.CCWOutOfRange,
            electrothermal.fitThermalResistance, 10.0, 1000.0, 40.0, layout, model)

def run(oldpath, newpath):
    """
    Runs the electrothermal test suite. Tests:

    Operating points at zero current, with and without self heating
    Power curves and the self heating ratio
    Runaway current against thermal resistance
    Fitting the thermal resistance
    """
    controls = utils.getQuietControls()
    checkOperatingPoint(controls)
    checkPowerCurve(controls, newpath)
    checkRunaway(controls)
    checkThermalFit(controls)
