#!/usr/bin/env python

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

# update the TESTSUITE_VERSION in pyccw/testing/utils.py
# before running this

from __future__ import print_function, division

import os
import sys

# remove the location of this script from sys.path so we get the 
# actual installed pyccw rather than the files in the sandbox
del sys.path[0]

from pyccw import geometry
from pyccw import layoutfile
from pyccw.testing.utils import TESTSUITE_VERSION, TESTDATA_DIR, VERSION_FILE
from pyccw.testing.utils import GATE_LAYOUT, RT_SAMPLES
from pyccw.toolbox.design import designcommon
from pyccw.toolbox.design import evaluate

if os.path.split(os.getcwd())[1] != TESTDATA_DIR:
    msg = ("This script should be run in a directory called %s that will hold " +
            "the test files") % TESTDATA_DIR
    raise SystemExit(msg)

# the gate zone of the standard design, return offset solved at 1A
design = designcommon.DesignPoint(100e-6, 15e-6, 88e-6, 39e-3, 1.0)
gate = evaluate.solveGate(design)
print('return offset %.4f um, quadrupole at %s' % (gate.returnOffset * 1e6,
        gate.quadrupole.position))
name = ('gate zone reconstruction: 100um x 15um wires, 88um gap, 560um gate, ' +
        'return offset %.4fum') % (gate.returnOffset * 1e6)
layout = geometry.WireLayout(list(gate.layout), name=name)
layoutfile.writeLayout(layout, GATE_LAYOUT, lengthUnit='um')

# resistance of the 390 square chip wire at room temperature and at
# the two operating temperatures, with the 40K and 70K readout error
samples = [(293.0, 0.438, 0.0), (40.0, 0.0082, 0.0004), (70.0, 0.0408, 0.0004)]
with open(RT_SAMPLES, 'w') as f:
    f.write('T_K,R_ohm,R_err_ohm\n')
    for sample in samples:
        f.write('%.1f,%s,%s\n' % sample)

with open(VERSION_FILE, 'w') as f:
    f.write('%d\n' % TESTSUITE_VERSION)
