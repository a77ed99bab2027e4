"""
Self consistent temperature and dissipation of a layout driven with
one current, written as JSON. Exits with the non-convergence status
(after writing the last iterate) when there is no operating point.
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
from pyccw.toolbox import units
from pyccw.toolbox import electrothermal
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_operatingpoint'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Self heated operating point of a CCW layout")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--current", type=units.current,
            help="Drive current, mA or A (required)")
    p.add_argument("--tinit", type=units.temperature,
            help="Starting temperature of the iteration, K (default: the sink temperature)")
    p.add_argument("--thickness", type=units.length,
            help="Film thickness, a length in nm, um, mm or m " +
            "(default: the depth of each wire)")
    cmdcommon.addThermalArgs(p)
    cmdcommon.addModelArgs(p)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None or cmdargs.current is None:
        print("Must specify layout, output file names and the current")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def runOperatingPoint(cmdargs, argv):
    """
    Solve for the operating point and write it out.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    model = cmdcommon.getModel(cmdargs)
    env = cmdcommon.getEnvironment(cmdargs)
    point = electrothermal.operatingPoint(cmdargs.current, env, layout, model,
                tInit=cmdargs.tinit, controls=controls, thickness=cmdargs.thickness)

    report = point.asDict()
    report.update({'t_base_K': env.tBase, 'r_th_K_per_W': env.rTh, 'rrr': model.rrr})
    cmdcommon.writeJSON(cmdargs.output, report)
    cmdcommon.writeMetadata(runConfig, argv)

    if not point.converged:
        msg = '%s: no operating point at %g A after %d iterations' % (COMMAND,
                    point.current, point.iterations)
        controls.messageHandler(msg, generic.MESSAGE_WARNING)
        return cmdcommon.EXIT_NONCONVERGENCE

    msg = '%s: %.4f W at %.3f K (%.4f mohm) for %g A' % (COMMAND, point.power,
                point.temperature, point.resistance * 1e3, point.current)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the operating point solver.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runOperatingPoint, argv)
