"""
Makes a map of the magnetic field of a layout over a grid in one
coordinate plane and writes it as CSV (or JSON with --json).
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
from pyccw.toolbox import fieldmap
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_fieldmap'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Magnetic field of a CCW layout over a planar grid")
    p.add_argument("-l", "--layout", help="Input layout JSON file (required)")
    p.add_argument("-o", "--output", help="Output CSV file (required). Columns x,y,z " +
            "in m and Bx,By,Bz,|B| in T")
    p.add_argument("--plane", default="xz", choices=sorted(fieldmap.PLANES),
            help="Plane of the map (default: %(default)s)")
    p.add_argument("--level", type=units.coordinate, default="125um",
            help="Value of the out of plane coordinate, a length in nm, um, mm or m " +
            "(default: %(default)s)")
    p.add_argument("--range1", nargs=2, type=units.coordinate, default=['-100um', '100um'],
            metavar=('MIN', 'MAX'),
            help="Extent along the first in plane axis, lengths in nm, um, mm or m " +
            "(default: %(default)s)")
    p.add_argument("--range2", nargs=2, type=units.coordinate, default=['-100um', '100um'],
            metavar=('MIN', 'MAX'),
            help="Extent along the second in plane axis, lengths in nm, um, mm or m " +
            "(default: %(default)s)")
    p.add_argument("--resolution", nargs=2, type=int, default=[101, 101], metavar=('N1', 'N2'),
            help="Number of samples along each in plane axis (default: %(default)s)")
    p.add_argument("--json", default=False, action="store_true",
            help="Write JSON with the axes and the field instead of CSV")
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.layout is None or cmdargs.output is None:
        print("Must specify layout and output file names")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)

    # nargs=2 defaults are not run through type
    cmdargs.range1 = [units.coordinate(v) if isinstance(v, str) else v for v in cmdargs.range1]
    cmdargs.range2 = [units.coordinate(v) if isinstance(v, str) else v for v in cmdargs.range2]
    return cmdargs

def runFieldMap(cmdargs, argv):
    """
    Build the grid, map the field and write it out.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [cmdargs.layout], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    layout = cmdcommon.readLayoutArg(cmdargs.layout)
    axes = fieldmap.planeAxes(cmdargs.plane, cmdargs.level, cmdargs.range1, cmdargs.range2,
                cmdargs.resolution)
    fmap = fieldmap.fieldMap(layout, axes, controls=controls)

    if cmdargs.json:
        writer = fieldmap.writeFieldMapJSON
    else:
        writer = fieldmap.writeFieldMapCSV
    cmdcommon.writeOutput(cmdargs.output, lambda fname: writer(fmap, fname))
    cmdcommon.writeMetadata(runConfig, argv)

    magnitude = fmap.magnitude
    idx = magnitude.argmin()
    msg = '%s: %d points, min |B| %.4e T at %s m' % (COMMAND, magnitude.shape[0],
                magnitude[idx], fmap.points[idx])
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the field map routine.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runFieldMap, argv)
