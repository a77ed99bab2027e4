"""
Series resistance of a layout at one temperature, written as JSON.
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
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_resistance'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Resistance of a CCW layout from the copper resistivity model")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--temperature", type=units.temperature, default='293K',
            help="Wire temperature, K (default: %(default)s)")
    p.add_argument("--thickness", type=units.length,
            help="Film thickness, a length in nm, um, mm or m, used for every wire " +
            "(default: the depth of each wire)")
    cmdcommon.addModelArgs(p)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None:
        print("Must specify layout and output file names")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def getFilmThickness(layout, thickness):
    "the common thickness of the wires, or None if they differ"
    if thickness is not None:
        return thickness
    depths = set([wire.depth for wire in layout])
    if len(depths) == 1:
        return depths.pop()
    return None

def runResistance(cmdargs, argv):
    """
    Work out the resistance and write the report.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    model = cmdcommon.getModel(cmdargs)
    t = cmdargs.temperature
    resistance = resistivity.layoutResistance(layout, t, model, cmdargs.thickness)

    report = {'resistance_ohm': resistance,
            'temperature_K': t,
            'rrr': model.rrr,
            'resistivity_ohm_m': float(model.resistivity(t)),
            'squares': geometry.layoutSquares(layout)}
    thickness = getFilmThickness(layout, cmdargs.thickness)
    if thickness is not None:
        report['thickness_m'] = thickness
        report['sheet_resistance_ohm_per_sq'] = float(
                resistivity.sheetResistance(t, thickness, model))

    cmdcommon.writeJSON(cmdargs.output, report)
    cmdcommon.writeMetadata(runConfig, argv)

    msg = '%s: %.4f mohm at %.1f K over %.1f squares' % (COMMAND, resistance * 1e3, t,
                report['squares'])
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the resistance routine.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runResistance, argv)
