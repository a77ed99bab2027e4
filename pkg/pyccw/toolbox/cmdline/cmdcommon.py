"""
Things shared by all the command line utils: the common flags, the
exit statuses, the run configuration and the writing of outputs.

Outputs are written to a temporary file next to the destination and
renamed into place only once complete, so a failed run leaves no
partial file. Run metadata (version, arguments, time) goes into a
separate sidecar file <output>.meta.json so the data files themselves
depend only on the inputs.
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

import os
import sys
import json
import datetime
import tempfile

from pyccw import generic
from pyccw import ccwprocessor
from pyccw import layoutfile
from pyccw.toolbox import units
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal
from pyccw.toolbox.design import designcommon

EXIT_OK = 0
"Command ran and all checks passed"
EXIT_INPUT_ERROR = 2
"Bad arguments or unreadable / invalid input files (argparse uses 2 too)"
EXIT_NONCONVERGENCE = 3
"A solver did not converge or found nothing in its search range"
EXIT_CONSTRAINT_FAILURE = 4
"The design checks ran but at least one constraint failed"

META_SUFFIX = '.meta.json'
"Appended to an output file name to get its metadata sidecar"

DEFAULT_RRR = 100.0
"RRR used when --rrr is not given"
DEFAULT_TBASE = '40K'
"Default heat sink temperature"
DEFAULT_RTH = '5K_per_W'
"Default thermal resistance"

NONCONVERGENCE_ERRORS = (generic.CCWNotBracketed, designcommon.CCWDesignError)
"Exceptions that mean a search or solve failed rather than bad input"

class RunConfig(object):
    """
    What one invocation of a command was asked to do: the command
    name, the input paths (which must exist), the output path, the
    parsed arguments (solver overrides included) and whether to echo
    the parsed quantities.
    """
    def __init__(self, command, cmdargs, inputs, output):
        for fname in inputs:
            if fname is None or not os.path.isfile(fname):
                msg = 'input file %s does not exist' % fname
                raise generic.CCWInvalidSetting(msg)
        self.command = command
        self.cmdargs = cmdargs
        self.inputs = list(inputs)
        self.output = output
        self.echoUnits = getattr(cmdargs, 'echo_units', False)

    def echo(self, controls):
        """
        Print every parsed argument, quantities in SI units.
        """
        for name in sorted(vars(self.cmdargs)):
            msg = '%s = %r' % (name, getattr(self.cmdargs, name))
            controls.messageHandler(msg, generic.MESSAGE_INFORMATION)

    def getMetadata(self, argv):
        return {'software': generic.SOFTWARE_NAME, 'command': self.command,
                'arguments': list(argv), 'inputs': self.inputs, 'output': self.output,
                'utc_time': datetime.datetime.utcnow().isoformat() + 'Z'}

def addSolverArgs(p):
    """
    Flags that override the solver controls, plus the verbosity flags.
    """
    g = p.add_argument_group('solver overrides')
    g.add_argument("--nw", type=int, default=ccwprocessor.DEFAULT_N_WIDTH,
            help="Filaments across each wire width (default: %(default)s)")
    g.add_argument("--nd", type=int, default=ccwprocessor.DEFAULT_N_DEPTH,
            help="Filaments through each wire depth (default: %(default)s)")
    g.add_argument("--step", type=units.length, default='0.1um',
            help="Central difference step, a length in nm, um, mm or m " +
            "(default: %(default)s)")
    g.add_argument("--pitch", type=units.length, default='2um',
            help="Quadrupole search grid pitch, a length in nm, um, mm or m " +
            "(default: %(default)s)")
    g.add_argument("--searchtol", type=units.length, default='0.01um',
            help="Quadrupole search tolerance, a length in nm, um, mm or m " +
            "(default: %(default)s)")
    g.add_argument("--damping", type=float, default=ccwprocessor.DEFAULT_DAMPING,
            help="Thermal iteration damping in (0, 1] (default: %(default)s)")
    g.add_argument("--ttol", type=units.temperature, default='0.001K',
            help="Thermal iteration tolerance, a temperature in K (default: %(default)s)")
    g.add_argument("--maxiter", type=int, default=ccwprocessor.DEFAULT_MAX_ITERATIONS,
            help="Thermal iteration cap (default: %(default)s)")
    g.add_argument("--progress", default=False, action="store_true",
            help="Show a progress bar for long loops")
    g.add_argument("-q", "--quiet", default=False, action="store_true",
            help="Do not print the summary line or other messages")
    g.add_argument("--echo-units", dest="echo_units", default=False, action="store_true",
            help="Print every parsed argument in SI units before running")

def addModelArgs(p):
    "Flags describing the copper resistivity model"
    p.add_argument("--rrr", type=units.positiveNumber, default=DEFAULT_RRR,
            help="Residual resistance ratio, dimensionless > 1 (default: %(default)s)")
    p.add_argument("--coppertable", 
            help="CSV file (T_K,rho_ohm_m) replacing the built in copper table. " +
            "Defaults to $%s if set" % resistivity.COPPER_TABLE_ENV)

def addThermalArgs(p):
    "Flags describing the thermal environment"
    p.add_argument("--tbase", type=units.temperature, default=DEFAULT_TBASE,
            help="Heat sink temperature, K (default: %(default)s)")
    p.add_argument("--rth", type=units.thermalResistance, default=DEFAULT_RTH,
            help="Thermal resistance to the sink, K_per_W (default: %(default)s)")

def getControls(cmdargs):
    """
    Controls built from the solver override flags. Raises
    CCWInvalidSetting for out of range values.
    """
    controls = ccwprocessor.Controls()
    controls.setDiscretization(cmdargs.nw, cmdargs.nd)
    controls.setGradientStep(cmdargs.step)
    controls.setSearchPitch(cmdargs.pitch)
    controls.setSearchTolerance(cmdargs.searchtol)
    controls.setDamping(cmdargs.damping)
    controls.setTemperatureTolerance(cmdargs.ttol)
    controls.setMaxIterations(cmdargs.maxiter)
    controls.setProgress(cmdargs.progress)
    if cmdargs.quiet:
        controls.setMessageHandler(ccwprocessor.silentMessageFn)
    return controls

def getModel(cmdargs):
    "ResistivityModel from the model flags"
    table = None
    if cmdargs.coppertable is not None:
        table = resistivity.readCopperTable(cmdargs.coppertable)
    return resistivity.ResistivityModel(cmdargs.rrr, table)

def getEnvironment(cmdargs):
    return electrothermal.ThermalEnvironment(cmdargs.tbase, cmdargs.rth)

def readLayoutArg(fname):
    "read the layout named on the command line"
    return layoutfile.readLayout(fname)

def writeOutput(fname, writerFn):
    """
    Call writerFn(tempname) then rename the temporary file to fname.
    Nothing is left behind if writerFn fails.
    """
    outdir = os.path.dirname(os.path.abspath(fname))
    handle, tempname = tempfile.mkstemp(prefix='.pyccw_', dir=outdir)
    os.close(handle)
    try:
        writerFn(tempname)
        os.replace(tempname, fname)
    finally:
        if os.path.exists(tempname):
            os.remove(tempname)

def writeJSON(fname, data):
    """
    Write data as JSON with sorted keys.
    """
    def writer(tempname):
        with open(tempname, 'w') as f:
            json.dump(generic.jsonReady(data), f, indent=2, sort_keys=True,
                    allow_nan=False)
            f.write('\n')
    writeOutput(fname, writer)

def writeMetadata(runConfig, argv):
    "Write the sidecar metadata file of a run"
    if runConfig.output is not None:
        writeJSON(runConfig.output + META_SUFFIX, runConfig.getMetadata(argv))

def runCommand(command, getCmdargs, body, argv=None):
    """
    Run one command and return its exit status.

    getCmdargs(argv) parses the arguments. body(cmdargs, argv) does
    the work and returns an exit status. pyccw errors and I/O errors are turned
    into a message on stderr and EXIT_INPUT_ERROR, or
    EXIT_NONCONVERGENCE for failed searches.
    """
    if argv is None:
        argv = sys.argv[1:]
    try:
        cmdargs = getCmdargs(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR

    try:
        return body(cmdargs, argv)
    except NONCONVERGENCE_ERRORS as e:
        print('%s: %s' % (command, e), file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (generic.CCWException, IOError, OSError, ValueError) as e:
        print('%s: %s' % (command, e), file=sys.stderr)
        return EXIT_INPUT_ERROR

def addConstraintArgs(p):
    "Flags for the design constraints"
    g = p.add_argument_group('constraints')
    g.add_argument("--jmax", type=units.currentDensity, default='1e6A_per_cm2',
            help="Current density limit, A_per_cm2 (default: %(default)s)")
    g.add_argument("--gradmin", type=units.gradient, default='100T_per_m',
            help="Lower end of the gradient band, T_per_m (default: %(default)s)")
    g.add_argument("--gradmax", type=units.gradient, default='150T_per_m',
            help="Upper end of the gradient band, T_per_m (default: %(default)s)")
    g.add_argument("--powerbudget", type=units.power, default='infW',
            help="Largest dissipation, mW or W (default: %(default)s)")
    g.add_argument("--topmax", type=units.temperature, default='infK',
            help="Highest operating temperature, K (default: %(default)s)")
    g.add_argument("--storagebmax", type=units.field, default='2mT',
            help="Largest field in the storage zones, uT, mT or T (default: %(default)s)")
    g.add_argument("--storagepoint", nargs=3, type=units.coordinate, action="append",
            metavar=('X', 'Y', 'Z'),
            help="Storage zone position as 3 lengths in nm, um, mm or m. " +
            "Can be given multiple times " +
            "(default: 5mm either side of the gate along x at the ion height)")

def getConstraints(cmdargs):
    "Constraints from the constraint flags"
    return designcommon.Constraints(jMax=cmdargs.jmax,
            gradientRange=(cmdargs.gradmin, cmdargs.gradmax),
            powerBudget=cmdargs.powerbudget, tOpMax=cmdargs.topmax,
            storageBMax=cmdargs.storagebmax, storagePoints=cmdargs.storagepoint)

DESIGN_FLAGS = (('width', 'width', 'length', '100um'),
        ('depth', 'depth', 'length', '15um'),
        ('separation', 'separation', 'length', '88um'),
        ('length', 'length', 'length', '39mm'),
        ('current', 'current', 'current', '13A'),
        ('ionheight', 'ionHeight', 'length', '125um'),
        ('gatelength', 'gateLength', 'length', '560um'))
"(flag, DesignPoint field, kind of quantity, default) of each design flag"

def getQuantityParser(kind):
    "argparse type function for a kind of quantity in units.TARGET_UNITS"
    def parser(text):
        return units.parseQuantity(text, kind)
    parser.__name__ = kind
    return parser

def addDesignArgs(p, multiple=False):
    """
    One flag per DesignPoint field. With multiple each takes a list
    of values for a sweep.
    """
    g = p.add_argument_group('design')
    for flag, field, kind, default in DESIGN_FLAGS:
        parser = getQuantityParser(kind)
        unitNames = units.unitList(kind)
        if multiple:
            g.add_argument("--" + flag, nargs="+", type=parser, default=[default],
                    help="Values of the design %s, %s (default: %%(default)s)" % (
                    field, unitNames))
        else:
            g.add_argument("--" + flag, type=parser, default=default,
                    help="Design %s, %s (default: %%(default)s)" % (field, unitNames))

def getDesignValues(cmdargs):
    """
    dict of DesignPoint field to the value (or list of values) given.
    List defaults skip the argparse type conversion so are parsed here.
    """
    values = {}
    for flag, field, kind, default in DESIGN_FLAGS:
        parser = getQuantityParser(kind)
        value = getattr(cmdargs, flag)
        if isinstance(value, list):
            value = [parser(v) if isinstance(v, str) else v for v in value]
        values[field] = value
    return values
