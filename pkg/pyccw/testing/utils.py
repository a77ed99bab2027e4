"""
Things shared by the test suites: locating the reference inputs,
comparing numbers and files, and checking that the right errors
are raised.
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
import re
import glob
import shutil
import hashlib
import numpy

from pyccw import ccwprocessor

TESTSUITE_VERSION = 1
"""
Version of the test suite. Increment each change.
Checked against the version file in the test data directory.
"""

TESTDATA_DIR = 'testdata'
"directory (relative to the path given to testall) with the reference inputs"

NEWDATA_DIR = 'newdata'
"""
directory that will be created next to TESTDATA_DIR to hold the
files written by the test suites.
"""

VERSION_FILE = 'version.txt'
"name of the file containing the version of the test data"

GATE_LAYOUT = 'gate_zone_reconstruction.json'
"reconstructed routed gate zone, 100um wires, 88um gap, quadrupole at 125um"

RT_SAMPLES = 'chip_rt_samples.csv'
"measured R(T) of the chip, 390 squares of 15um copper"

SUITE_RE = re.compile(r'^testsuite(\d+)([a-z]?)\.py$')
"file names of the test suites"

class TestingError(Exception):
    "Base class for testing Exceptions"

class TestingVersionError(TestingError):
    "Was a mismatch in versions"

class TestingDataMismatch(TestingError):
    "Data does not match between expected and newly calculated"

class TestingToleranceError(TestingError):
    "A number is outside its expected tolerance"

def getTestList():
    """
    Names of the testsuiteN modules in this package, in numeric order.
    """
    here = os.path.dirname(os.path.abspath(__file__))
    tests = []
    for fname in glob.glob(os.path.join(here, 'testsuite*.py')):
        match = SUITE_RE.match(os.path.basename(fname))
        if match is not None:
            tests.append((int(match.group(1)), match.group(2),
                    os.path.basename(fname)[:-3]))
    tests.sort()
    return [name for number, suffix, name in tests]

def setupPaths(path, checkVersion=True):
    """
    Returns (oldpath, newpath). oldpath is the test data directory
    under path, newpath a fresh empty directory beside it.
    """
    oldpath = os.path.join(path, TESTDATA_DIR)
    if not os.path.isdir(oldpath):
        msg = 'cannot find the test data directory %s' % oldpath
        raise IOError(msg)

    if checkVersion:
        versionPath = os.path.join(oldpath, VERSION_FILE)
        with open(versionPath) as f:
            version = int(f.readline())
        if version != TESTSUITE_VERSION:
            msg = 'Version mismatch. Expected %d, got %d' % (TESTSUITE_VERSION, version)
            raise TestingVersionError(msg)

    newpath = os.path.join(path, NEWDATA_DIR)
    if os.path.exists(newpath):
        shutil.rmtree(newpath)
    os.mkdir(newpath)
    return oldpath, newpath

def getQuietControls():
    "Controls that print nothing, for use inside the suites"
    controls = ccwprocessor.Controls()
    controls.setMessageHandler(ccwprocessor.silentMessageFn)
    return controls

def compareValue(name, value, expected, rtol=None, atol=None):
    """
    Raises TestingToleranceError unless value is within rtol (relative)
    or atol (absolute) of expected. With neither, they must be equal.
    """
    error = abs(value - expected)
    ok = False
    if rtol is None and atol is None:
        ok = value == expected
    if rtol is not None and error <= rtol * abs(expected):
        ok = True
    if atol is not None and error <= atol:
        ok = True
    if not ok:
        msg = '%s is %r, expected %r (rtol=%s, atol=%s)' % (name, value, expected, rtol, atol)
        raise TestingToleranceError(msg)
    print(name, 'check ok')

def checkInRange(name, value, low, high):
    """
    Raises TestingToleranceError unless low <= value <= high.
    """
    if not low <= value <= high:
        msg = '%s is %r, expected between %r and %r' % (name, value, low, high)
        raise TestingToleranceError(msg)
    print(name, 'check ok')

def checkTrue(name, condition, msg=None):
    "Raises TestingDataMismatch if condition is False"
    if not condition:
        if msg is None:
            msg = '%s failed' % name
        raise TestingDataMismatch(msg)
    print(name, 'check ok')

def compareArrays(name, new, old, rtol=0.0, atol=0.0):
    """
    Compares 2 arrays elementwise and raises TestingToleranceError
    naming the worst element if they differ by more than the tolerance.
    """
    new = numpy.asarray(new, dtype=numpy.float64)
    old = numpy.asarray(old, dtype=numpy.float64)
    if new.shape != old.shape:
        msg = '%s has shape %s, expected %s' % (name, new.shape, old.shape)
        raise TestingDataMismatch(msg)
    if not numpy.allclose(new, old, rtol=rtol, atol=atol, equal_nan=True):
        excess = numpy.abs(new - old) - (atol + rtol * numpy.abs(old))
        idx = numpy.unravel_index(numpy.nanargmax(excess), excess.shape)
        msg = '%s differs at %s: %r against %r' % (name, idx, new[idx], old[idx])
        raise TestingToleranceError(msg)
    print(name, 'check ok')

def getFileDigest(fname):
    "md5 hex digest of the contents of a file"
    digest = hashlib.md5()
    with open(fname, 'rb') as f:
        digest.update(f.read())
    return digest.hexdigest()

def compareFilesIdentical(oldfile, newfile):
    """
    Raises TestingDataMismatch unless the 2 files have the same bytes.
    """
    if getFileDigest(oldfile) != getFileDigest(newfile):
        msg = '%s and %s differ' % (oldfile, newfile)
        raise TestingDataMismatch(msg)
    print(os.path.basename(newfile), 'check ok')

def checkRaises(name, excClass, fn, *args, **kwargs):
    """
    Calls fn(*args, **kwargs) and returns the exception it raised.
    Raises TestingDataMismatch if it did not raise excClass.
    """
    try:
        fn(*args, **kwargs)
    except excClass as e:
        print(name, 'check ok')
        return e
    msg = '%s: expected %s to be raised' % (name, excClass.__name__)
    raise TestingDataMismatch(msg)
