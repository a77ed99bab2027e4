"""
Highest current a layout can carry before thermal runaway, written as
JSON. A null runaway current means the search bound itself still has
an operating point.
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

COMMAND = 'ccw_runaway'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Thermal runaway current of a CCW layout")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--imax", type=units.current, default='40A',
            help="Upper end of the search, mA or A (default: %(default)s)")
    p.add_argument("--resolution", type=units.current, default='10mA',
            help="Bisection resolution, mA or A (default: %(default)s)")
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
    return cmdargs

def runRunaway(cmdargs, argv):
    """
    Search for the runaway current and write the report.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    controls.setRunawayResolution(cmdargs.resolution)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    model = cmdcommon.getModel(cmdargs)
    env = cmdcommon.getEnvironment(cmdargs)
    runaway = electrothermal.runawayCurrent(env, layout, model, cmdargs.imax,
                controls=controls, thickness=cmdargs.thickness)

    report = {'runaway_current_A': runaway, 'search_bound_A': cmdargs.imax,
            'resolution_A': controls.runawayResolution,
            't_base_K': env.tBase, 'r_th_K_per_W': env.rTh, 'rrr': model.rrr}
    cmdcommon.writeJSON(cmdargs.output, report)
    cmdcommon.writeMetadata(runConfig, argv)

    if runaway is electrothermal.NO_RUNAWAY:
        msg = '%s: no runaway up to %g A' % (COMMAND, cmdargs.imax)
    else:
        msg = '%s: runaway above %.3f A' % (COMMAND, runaway)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the runaway search.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runRunaway, argv)
