"""
Evaluates every design in a grid of parameter values and writes one
CSV row per design, with a JSON summary of the feasible designs and
their Pareto front (highest gradient against lowest power). Exits with
the constraint failure status if no design is feasible.
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
from pyccw.toolbox.design import sweep
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_sweep'

SUMMARY_SUFFIX = '.summary.json'
"Appended to the CSV name when --summary is not given"

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Sweep CCW gate designs and find the Pareto front")
    p.add_argument("-o", "--output", help="Output CSV file, one row per design (required)")
    p.add_argument("--summary", help="Output JSON summary file " +
            "(default: the output name with %s appended)" % SUMMARY_SUFFIX)
    cmdcommon.addDesignArgs(p, multiple=True)
    cmdcommon.addConstraintArgs(p)
    cmdcommon.addThermalArgs(p)
    cmdcommon.addModelArgs(p)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.output is None:
        print("Must specify output file name")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    if cmdargs.summary is None:
        cmdargs.summary = cmdargs.output + SUMMARY_SUFFIX
    return cmdargs

def runSweep(cmdargs, argv):
    """
    Run the sweep and write both reports.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    constraints = cmdcommon.getConstraints(cmdargs)
    model = cmdcommon.getModel(cmdargs)
    env = cmdcommon.getEnvironment(cmdargs)
    result = sweep.sweep(cmdcommon.getDesignValues(cmdargs), constraints, env, model,
                controls)

    cmdcommon.writeOutput(cmdargs.output,
                lambda fname: sweep.writeSweepCSV(result, fname))
    cmdcommon.writeOutput(cmdargs.summary,
                lambda fname: sweep.writeSweepJSON(result, fname))
    cmdcommon.writeMetadata(runConfig, argv)

    msg = '%s: %d designs, %d feasible, %d on the Pareto front' % (COMMAND,
                len(result.designs), len(result.feasible), len(result.pareto))
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    if len(result.feasible) == 0:
        return cmdcommon.EXIT_CONSTRAINT_FAILURE
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the sweep.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runSweep, argv)
