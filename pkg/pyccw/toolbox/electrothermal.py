"""
Lumped electrothermal model of a CCW chip.

The chip is one thermal node connected to a heat sink at t_base
through a thermal resistance r_th. Driving a current I through the
layout dissipates P = I^2 R(T), which raises the node to
T = t_base + r_th P. Since R grows with T this is a fixed point
problem. When the feedback is too strong there is no fixed point and
the temperature runs away out of the resistivity table.
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
from scipy.optimize import brentq

from pyccw import generic
from pyccw import ccwprocessor
from . import resistivity

MIN_BASE_TEMPERATURE = 4.0
"Lowest heat sink temperature accepted (K)"

NO_RUNAWAY = None
"Returned by runawayCurrent when every current up to the search bound converges"

POWER_CURVE_DTYPE = numpy.dtype([('CURRENT', 'f8'), ('POWER_SELFHEATED', 'f8'),
            ('POWER_ISOTHERMAL', 'f8'), ('TEMPERATURE', 'f8'), ('CONVERGED', 'u1')])
"""
Rows of a power curve. POWER_SELFHEATED and TEMPERATURE are nan where
the operating point did not converge.
"""

SELF_HEATING_TOLERANCE = 0.05
"Relative power error accepted by checkSelfHeating"

class ThermalEnvironment(object):
    """
    Heat sink temperature tBase (K, >= 4) and the overall thermal
    resistance rTh (K/W, >= 0) from the wires to the sink.
    """
    def __init__(self, tBase, rTh):
        if not numpy.isfinite(tBase) or tBase < MIN_BASE_TEMPERATURE:
            msg = 'base temperature must be >= %g K, got %s' % (MIN_BASE_TEMPERATURE, tBase)
            raise generic.CCWInvalidSetting(msg)
        if not numpy.isfinite(rTh) or rTh < 0:
            msg = 'thermal resistance must be >= 0, got %s' % rTh
            raise generic.CCWInvalidSetting(msg)
        self.tBase = float(tBase)
        self.rTh = float(rTh)

    def __repr__(self):
        return 'ThermalEnvironment(tBase=%g K, rTh=%g K/W)' % (self.tBase, self.rTh)

class OperatingPoint(object):
    """
    Self consistent state of the chip at one drive current.

    When converged, temperature equals tBase + rTh * power to within
    the solver tolerance and power is current**2 * resistance.
    Otherwise the attributes hold the last iterate.
    """
    def __init__(self, current, temperature, resistance, power, converged, iterations):
        self.current = current
        self.temperature = temperature
        self.resistance = resistance
        self.power = power
        self.converged = converged
        self.iterations = iterations

    def asDict(self):
        "Values the iteration did not reach are None"
        finite = generic.finiteOrNone
        return {'current_A': self.current, 'temperature_K': finite(self.temperature),
                'resistance_ohm': finite(self.resistance), 'power_W': finite(self.power),
                'converged': self.converged, 'iterations': self.iterations}

def checkCurrent(current):
    if not numpy.isfinite(current) or current < 0:
        msg = 'current must be >= 0, got %s' % current
        raise generic.CCWInvalidSetting(msg)

def solveOperatingPoint(current, env, factor, model, tInit, controls):
    """
    The damped fixed point iteration behind operatingPoint, for a
    layout already reduced to its geometry factor (R = factor * rho).
    """
    temperature = env.tBase if tInit is None else float(tInit)
    resistance = numpy.nan
    power = numpy.nan
    current2 = current * current
    for iteration in range(1, controls.maxIterations + 1):
        if not model.inRange(temperature):
            return OperatingPoint(current, temperature, resistance, power, False,
                        iteration - 1)
        resistance = factor * model.resistivity(temperature)
        power = current2 * resistance
        target = env.tBase + env.rTh * power
        if abs(target - temperature) < controls.temperatureTolerance:
            return OperatingPoint(current, temperature, resistance, power, True, iteration)
        temperature += controls.damping * (target - temperature)

    return OperatingPoint(current, temperature, resistance, power, False,
                controls.maxIterations)

def operatingPoint(current, env, layout, model, tInit=None, controls=None, thickness=None):
    """
    Solve T = t_base + r_th I^2 R(T) for the layout driven with current
    (A) by damped iteration starting from tInit (default t_base).
    Damping, tolerance and iteration cap come from the controls.

    Never raises for non convergence: an OperatingPoint with
    converged False is returned when the iteration cap is hit or the
    temperature leaves the resistivity table.
    """
    checkCurrent(current)
    controls = ccwprocessor.getControls(controls)
    factor = resistivity.geometryFactor(layout, thickness)
    return solveOperatingPoint(float(current), env, factor, model, tInit, controls)

def powerCurve(currents, env, layout, model, controls=None, thickness=None):
    """
    Self heated and isothermal (T = t_base) dissipation at each of
    currents, which must be non negative and ascending. Returns a
    POWER_CURVE_DTYPE array.
    """
    controls = ccwprocessor.getControls(controls)
    currents = numpy.atleast_1d(numpy.asarray(currents, dtype=numpy.float64))
    if (currents < 0).any() or not numpy.isfinite(currents).all():
        msg = 'currents must be finite and >= 0'
        raise generic.CCWInvalidSetting(msg)
    if (numpy.diff(currents) < 0).any():
        msg = 'currents must be in ascending order'
        raise generic.CCWInvalidSetting(msg)

    factor = resistivity.geometryFactor(layout, thickness)
    isothermalR = factor * model.resistivity(env.tBase)
    curve = numpy.empty(currents.shape[0], dtype=POWER_CURVE_DTYPE)
    curve['CURRENT'] = currents
    curve['POWER_ISOTHERMAL'] = currents**2 * isothermalR
    for idx, current in enumerate(currents):
        point = solveOperatingPoint(current, env, factor, model, None, controls)
        curve['CONVERGED'][idx] = point.converged
        if point.converged:
            curve['POWER_SELFHEATED'][idx] = point.power
            curve['TEMPERATURE'][idx] = point.temperature
        else:
            curve['POWER_SELFHEATED'][idx] = numpy.nan
            curve['TEMPERATURE'][idx] = numpy.nan
            msg = 'no operating point at %g A' % current
            controls.messageHandler(msg, generic.MESSAGE_WARNING)
    return curve

def writePowerCurve(curve, outfile):
    """
    Write a power curve as CSV (A, W, W, K, 0/1).
    """
    header = 'current_A,power_selfheated_W,power_isothermal_W,temperature_K,converged'
    numpy.savetxt(outfile, curve, fmt=['%.6f', '%.9e', '%.9e', '%.6f', '%d'],
            delimiter=',', header=header, comments='', newline='\n')

def runawayCurrent(env, layout, model, iMaxSearch, controls=None, thickness=None):
    """
    Largest current in [0, iMaxSearch] with a converged operating
    point, by bisection to Controls.runawayResolution. Returns
    NO_RUNAWAY (None) if iMaxSearch itself converges.
    """
    if not numpy.isfinite(iMaxSearch) or iMaxSearch <= 0:
        msg = 'search bound must be positive, got %s' % iMaxSearch
        raise generic.CCWInvalidSetting(msg)
    controls = ccwprocessor.getControls(controls)
    factor = resistivity.geometryFactor(layout, thickness)

    def converges(current):
        return solveOperatingPoint(current, env, factor, model, None, controls).converged

    if converges(iMaxSearch):
        return NO_RUNAWAY

    low = 0.0
    high = float(iMaxSearch)
    while high - low > controls.runawayResolution:
        mid = (low + high) / 2
        if converges(mid):
            low = mid
        else:
            high = mid

    msg = 'thermal runaway between %.3f A and %.3f A' % (low, high)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return low

def fitThermalResistance(current, power, tBase, layout, model, thickness=None):
    """
    Thermal resistance (K/W) that explains a measured dissipation
    power (W) at current (A) from a sink at tBase: the temperature
    where I^2 R(T) equals power, less tBase, over power.

    Raises CCWDegenerateData if power is below the isothermal power at
    tBase and CCWOutOfRange if it needs a temperature above the table.
    """
    if not current > 0 or not power > 0:
        msg = 'current and power must be positive, got (%s, %s)' % (current, power)
        raise generic.CCWInvalidSetting(msg)
    factor = resistivity.geometryFactor(layout, thickness)

    def excess(t):
        return current**2 * factor * model.resistivity(t) - power

    atBase = excess(tBase)
    if atBase > 0:
        msg = 'measured power %g W is below the isothermal power %g W at %g K' % (
                power, atBase + power, tBase)
        raise generic.CCWDegenerateData(msg)
    if atBase == 0:
        return 0.0
    if excess(model.tMax) < 0:
        msg = 'measured power %g W needs a temperature above %g K' % (power, model.tMax)
        raise generic.CCWOutOfRange(msg)
    temperature = brentq(excess, tBase, model.tMax, xtol=1e-9)
    return (temperature - tBase) / power

def selfHeatingRatio(current, env, layout, model, controls=None, thickness=None):
    """
    Ratio of self heated to isothermal power at current. nan when the
    operating point does not converge.
    """
    controls = ccwprocessor.getControls(controls)
    curve = powerCurve([current], env, layout, model, controls, thickness)
    return curve['POWER_SELFHEATED'][0] / curve['POWER_ISOTHERMAL'][0]

def checkSelfHeating(current, power, tBase, layout, model, wireTemperature=None,
        rTh=None, controls=None, thickness=None, tolerance=SELF_HEATING_TOLERANCE):
    """
    Compare a measured dissipation power (W) at current (A) from a sink
    at tBase with the power the resistivity model predicts from an
    independent thermal measurement: either the wire temperature (K)
    measured under drive, or a separately known thermal resistance
    rTh (K/W). Not both.

    Returns a dict with the isothermal power at tBase, the ratio
    implied by the measurement, the ratio and power predicted by the
    model and their relative power error. 'consistent' is True when the
    prediction is within tolerance of the measurement, False when not
    and None when no independent input was given.
    """
    if not current > 0 or not power > 0:
        msg = 'current and power must be positive, got (%s, %s)' % (current, power)
        raise generic.CCWInvalidSetting(msg)
    if wireTemperature is not None and rTh is not None:
        msg = 'give either a wire temperature or a thermal resistance, not both'
        raise generic.CCWInvalidSetting(msg)
    controls = ccwprocessor.getControls(controls)
    factor = resistivity.geometryFactor(layout, thickness)
    isothermal = current**2 * factor * model.resistivity(tBase)

    predicted = numpy.nan
    predictedTemperature = numpy.nan
    basis = None
    if wireTemperature is not None:
        basis = 'wire_temperature'
        predictedTemperature = wireTemperature
        predicted = current**2 * factor * model.resistivity(wireTemperature)
    elif rTh is not None:
        basis = 'thermal_resistance'
        env = ThermalEnvironment(tBase, rTh)
        point = solveOperatingPoint(float(current), env, factor, model, None, controls)
        if point.converged:
            predicted = point.power
            predictedTemperature = point.temperature
        else:
            msg = 'no operating point at %g A with r_th %g K/W' % (current, rTh)
            controls.messageHandler(msg, generic.MESSAGE_WARNING)

    powerError = (predicted - power) / power
    if basis is None:
        consistent = None
    else:
        consistent = bool(numpy.isfinite(powerError) and abs(powerError) <= tolerance)

    return {'basis': basis,
            'power_isothermal_W': generic.finiteOrNone(isothermal),
            'ratio_implied': generic.finiteOrNone(power / isothermal),
            'power_model_W': generic.finiteOrNone(predicted),
            'ratio_model': generic.finiteOrNone(predicted / isothermal),
            'temperature_model_K': generic.finiteOrNone(predictedTemperature),
            'power_error': generic.finiteOrNone(powerError),
            'tolerance': tolerance,
            'consistent': consistent}
