"""
Field and field derivatives of a layout at one point, written as JSON.
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

COMMAND = 'ccw_gradient'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Magnetic field gradient of a CCW layout at a point")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--point", nargs=3, type=units.coordinate, metavar=('X', 'Y', 'Z'),
            help="Evaluation point as 3 lengths in nm, um, mm or m (required)")
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None or cmdargs.point is None:
        print("Must specify layout, output file names and the point")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def getGradientReport(result, layout):
    "dict of a GradientResult for the JSON output"
    report = {'point_m': result.point.tolist(),
            'field_T': result.field.tolist(),
            'jacobian_T_per_m': result.jacobian.tolist(),
            'grad_magnitude_T_per_m': result.gradMag.tolist(),
            'per_axis_T_per_m': result.perAxis.tolist(),
            'axial_gradient_T_per_m': float(result.axialGradient),
            'divergence_T_per_m': float(result.divergence),
            'curl_T_per_m': result.curl.tolist(),
            'step_m': result.step}
    drive = layout.driveCurrent
    if drive > 0:
        report['axial_gradient_per_amp_T_per_m_per_A'] = float(result.axialGradient) / drive
    return report

def runGradient(cmdargs, argv):
    """
    Work out the derivatives and write the report.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    result = magnetostatics.gradient(cmdargs.point, layout, controls=controls)

    cmdcommon.writeJSON(cmdargs.output, getGradientReport(result, layout))
    cmdcommon.writeMetadata(runConfig, argv)

    msg = '%s: |B| %.4e T, axial gradient %.4f T/m, div B %.2e T/m' % (COMMAND,
                float((result.field**2).sum())**0.5, result.axialGradient, result.divergence)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the gradient routine.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runGradient, argv)
