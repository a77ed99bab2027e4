"""
Fits the residual resistance ratio of a copper film to measured R(T)
samples and writes the fit as JSON.

With --selfheating CURRENT POWER TBASE a measured self heated
dissipation is also reported on: the thermal resistance it implies
under the fitted model and the runaway current that follows. Given an
independent thermal measurement, either the wire temperature under
drive (--wiretemp) or a known thermal resistance (--rth), the power
predicted by the fitted model is compared with the measured one.
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

import sys
import argparse

from pyccw import generic
from pyccw import geometry
from pyccw.toolbox import units
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_fitrrr'

NOMINAL_WIDTH = 100e-6 # m
"Width of the straight wire standing in for a squares count"

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Fit the RRR of a copper film to measured resistances")
    p.add_argument("-i", "--input", help="Input CSV file with columns T_K,R_ohm " +
            "and optionally R_err_ohm (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--squares", type=units.positiveNumber,
            help="Squares of the measured film, a plain number")
    p.add_argument("-l", "--layout", help="Layout JSON file to take the squares " +
            "(and unless --thickness is given, the thickness) from")
    p.add_argument("--thickness", type=units.length,
            help="Film thickness, a length in nm, um, mm or m")
    p.add_argument("--selfheating", nargs=3, metavar=('CURRENT', 'POWER', 'TBASE'),
            help="Measured dissipation POWER (mW or W) at CURRENT (mA or A) " +
            "from a sink at TBASE (K)")
    p.add_argument("--wiretemp", type=units.temperature,
            help="Wire temperature measured at the --selfheating point (K)")
    p.add_argument("--rth", type=units.thermalResistance,
            help="Independently known thermal resistance to the sink, K_per_W")
    p.add_argument("--imax", type=units.current, default='40A',
            help="Runaway search bound with --selfheating, mA or A (default: %(default)s)")
    p.add_argument("--coppertable", 
            help="CSV file (T_K,rho_ohm_m) replacing the built in copper table. " +
            "Defaults to $%s if set" % resistivity.COPPER_TABLE_ENV)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.input is None or cmdargs.output is None:
        print("Must specify input and output file names")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    if (cmdargs.squares is None) == (cmdargs.layout is None):
        print("Specify one of --squares and --layout")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    if cmdargs.layout is None and cmdargs.thickness is None:
        print("--thickness is needed with --squares")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)

    if cmdargs.selfheating is not None:
        try:
            current, power, tBase = cmdargs.selfheating
            cmdargs.selfheating = (units.current(current), units.power(power),
                        units.temperature(tBase))
        except argparse.ArgumentTypeError as e:
            p.error('--selfheating: %s' % e)
    elif cmdargs.wiretemp is not None or cmdargs.rth is not None:
        print("--wiretemp and --rth need --selfheating")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    if cmdargs.wiretemp is not None and cmdargs.rth is not None:
        print("Specify at most one of --wiretemp and --rth")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def getGeometry(cmdargs):
    """
    (layout, squares, thickness) of the measured film. With --squares
    the layout is a straight wire of NOMINAL_WIDTH with that many
    squares.
    """
    if cmdargs.layout is not None:
        layout = cmdcommon.readLayoutArg(cmdargs.layout)
        thickness = cmdargs.thickness
        if thickness is None:
            depths = set([wire.depth for wire in layout])
            if len(depths) != 1:
                msg = 'layout wires differ in depth, give --thickness'
                raise generic.CCWInvalidSetting(msg)
            thickness = depths.pop()
        return layout, geometry.layoutSquares(layout), thickness

    squares = cmdargs.squares
    thickness = cmdargs.thickness
    layout = geometry.straightWire(NOMINAL_WIDTH, thickness, squares * NOMINAL_WIDTH)
    return layout, squares, thickness

def getSelfHeatingReport(cmdargs, layout, thickness, model, controls):
    """
    Check one measured self heated power against the fitted model and
    describe the chip that results.
    """
    current, power, tBase = cmdargs.selfheating
    report = {'current_A': current, 'power_W': power, 't_base_K': tBase,
            'wire_temperature_K': cmdargs.wiretemp, 'r_th_given_K_per_W': cmdargs.rth}
    report.update(electrothermal.checkSelfHeating(current, power, tBase, layout,
                model, wireTemperature=cmdargs.wiretemp, rTh=cmdargs.rth,
                controls=controls, thickness=thickness))

    try:
        rThImplied = electrothermal.fitThermalResistance(current, power, tBase, layout,
                    model, thickness)
        report['problem'] = None
    except (generic.CCWDegenerateData, generic.CCWOutOfRange) as e:
        # fitted RRR cannot produce the measured power at any temperature
        rThImplied = None
        report['problem'] = str(e)
    report['r_th_implied_K_per_W'] = rThImplied

    rTh = cmdargs.rth if cmdargs.rth is not None else rThImplied
    runaway = None
    if rTh is not None:
        env = electrothermal.ThermalEnvironment(tBase, rTh)
        runaway = electrothermal.runawayCurrent(env, layout, model, cmdargs.imax,
                    controls, thickness)
    report.update({'runaway_current_A': runaway, 'runaway_search_bound_A': cmdargs.imax})
    return report

def runFitRRR(cmdargs, argv):
    """
    Read the samples, fit and write the report.
    """
    inputs = [cmdargs.input]
    if cmdargs.layout is not None:
        inputs.append(cmdargs.layout)
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, inputs, cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    table = None
    if cmdargs.coppertable is not None:
        table = resistivity.readCopperTable(cmdargs.coppertable)
    samples = resistivity.readRTSamples(cmdargs.input)
    layout, squares, thickness = getGeometry(cmdargs)
    fit = resistivity.fitRRR(samples, squares, thickness, table)

    extra = None
    if cmdargs.selfheating is not None:
        model = resistivity.fittedModel(fit, table)
        extra = {'self_heating': getSelfHeatingReport(cmdargs, layout,
                    thickness, model, controls)}

    cmdcommon.writeOutput(cmdargs.output,
                lambda fname: resistivity.writeFitReport(fit, fname, extra))
    cmdcommon.writeMetadata(runConfig, argv)

    msg = '%s: RRR %.1f (%.1f to %.1f), log residual norm %.3g' % (COMMAND, fit.rrrHat,
                fit.interval[0], fit.interval[1], fit.residualNorm)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    if extra is not None:
        selfHeating = extra['self_heating']
        if selfHeating['r_th_implied_K_per_W'] is None:
            msg = '%s: self heating not explained by the fit: %s' % (COMMAND,
                        selfHeating['problem'])
            controls.messageHandler(msg, generic.MESSAGE_WARNING)
        else:
            msg = '%s: implied r_th %.3f K/W, measured self heating ratio %.3f' % (
                        COMMAND, selfHeating['r_th_implied_K_per_W'],
                        selfHeating['ratio_implied'])
            controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
        if selfHeating['consistent'] is not None:
            msg = '%s: model predicts %s W against %.4g W measured, %s' % (COMMAND,
                        selfHeating['power_model_W'], selfHeating['power_W'],
                        'consistent' if selfHeating['consistent'] else 'inconsistent')
            level = (generic.MESSAGE_INFORMATION if selfHeating['consistent']
                        else generic.MESSAGE_WARNING)
            controls.messageHandler(msg, level)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the RRR fit.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runFitRRR, argv)
