"""
Locates the magnetic quadrupole of a layout inside a search box and
writes its position, residual field and gradient per amp as JSON.
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
from pyccw.toolbox import magnetostatics
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_quadrupole'

DEFAULT_BOX = ['-20um', '20um', '95um', '155um', '-20um', '20um']
"Search box around the usual 125um ion height"

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Find the field minimum of a CCW layout and its gradient")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--box", nargs=6, type=units.coordinate, default=DEFAULT_BOX,
            metavar=('XMIN', 'XMAX', 'YMIN', 'YMAX', 'ZMIN', 'ZMAX'),
            help="Search box as 6 lengths in nm, um, mm or m (default: %(default)s)")
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None:
        print("Must specify layout and output file names")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)

    cmdargs.box = [units.coordinate(v) if isinstance(v, str) else v for v in cmdargs.box]
    return cmdargs

def getQuadrupoleReport(quadrupole, layout):
    "dict of a QuadrupolePoint for the JSON output"
    grad = quadrupole.gradient
    return {'position_m': quadrupole.position.tolist(),
            'residual_field_T': float(quadrupole.residualField),
            'gradient_per_amp_T_per_m_per_A': quadrupole.gradientPerAmp.tolist(),
            'axial_gradient_per_amp_T_per_m_per_A': float(quadrupole.axialGradientPerAmp),
            'jacobian_T_per_m': grad.jacobian.tolist(),
            'drive_current_A': layout.driveCurrent}

def runQuadrupole(cmdargs, argv):
    """
    Search the box and write the report.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    box = [cmdargs.box[0:2], cmdargs.box[2:4], cmdargs.box[4:6]]
    quadrupole = magnetostatics.findQuadrupole(layout, box, controls=controls)

    cmdcommon.writeJSON(cmdargs.output, getQuadrupoleReport(quadrupole, layout))
    cmdcommon.writeMetadata(runConfig, argv)

    position = quadrupole.position * 1e6
    msg = '%s: quadrupole at (%.2f, %.2f, %.2f) um, |B| %.3e T, %.3f T/m per A' % (
                COMMAND, position[0], position[1], position[2],
                quadrupole.residualField, quadrupole.axialGradientPerAmp)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the quadrupole search.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runQuadrupole, argv)
