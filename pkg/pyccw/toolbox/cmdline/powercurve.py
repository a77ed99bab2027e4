"""
Self heated and isothermal dissipation of a layout over a range of
currents, written as CSV. Currents with no operating point are kept,
flagged in the converged column with nan power and temperature.
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

import numpy

from pyccw import generic
from pyccw.toolbox import units
from pyccw.toolbox import electrothermal
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_powercurve'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Power against current for a self heated CCW layout")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output CSV file (required). Columns current_A, " +
            "power_selfheated_W, power_isothermal_W, temperature_K, converged")
    p.add_argument("--currents", nargs="+", type=units.current,
            help="Currents to evaluate, mA or A, in ascending order")
    p.add_argument("--range", nargs=3, type=units.current, dest="currentrange",
            metavar=('START', 'STOP', 'STEP'),
            help="Evenly spaced currents from START to STOP inclusive, mA or A")
    p.add_argument("--thickness", type=units.length,
            help="Film thickness, a length in nm, um, mm or m " +
            "(default: the depth of each wire)")
    cmdcommon.addThermalArgs(p)
    cmdcommon.addModelArgs(p)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None:
        print("Must specify layout and output file names")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    if (cmdargs.currents is None) == (cmdargs.currentrange is None):
        print("Specify one of --currents and --range")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def getCurrents(cmdargs):
    """
    The currents asked for, as an array.
    """
    if cmdargs.currents is not None:
        return numpy.array(cmdargs.currents)
    start, stop, step = cmdargs.currentrange
    if not step > 0 or stop < start:
        msg = 'current range needs STEP > 0 and STOP >= START'
        raise generic.CCWInvalidSetting(msg)
    nSteps = int(numpy.floor((stop - start) / step + 1e-9))
    return start + step * numpy.arange(nSteps + 1)

def runPowerCurve(cmdargs, argv):
    """
    Build the curve and write it out.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    model = cmdcommon.getModel(cmdargs)
    env = cmdcommon.getEnvironment(cmdargs)
    curve = electrothermal.powerCurve(getCurrents(cmdargs), env, layout, model,
                controls=controls, thickness=cmdargs.thickness)

    cmdcommon.writeOutput(cmdargs.output,
                lambda fname: electrothermal.writePowerCurve(curve, fname))
    cmdcommon.writeMetadata(runConfig, argv)

    nConverged = int(curve['CONVERGED'].sum())
    msg = '%s: %d currents, %d with an operating point' % (COMMAND, curve.shape[0],
                nConverged)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the power curve routine.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runPowerCurve, argv)
