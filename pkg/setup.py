#!/usr/bin/env python

"""
Install script for PyCCW
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
from __future__ import print_function

import os
from setuptools import setup

import pyccw

# Are we installing the command line scripts?
# this is an experimental option for users who are
# using the Python entry point feature of setuptools and Conda instead
NO_INSTALL_CMDLINE = int(os.getenv('PYCCW_NOCMDLINE', '0')) > 0

if NO_INSTALL_CMDLINE:
    scriptList = None
else:
    scriptList = ['bin/ccw_fieldmap', 'bin/ccw_quadrupole', 'bin/ccw_gradient',
            'bin/ccw_resistance', 'bin/ccw_operatingpoint', 'bin/ccw_powercurve',
            'bin/ccw_runaway', 'bin/ccw_fitrrr', 'bin/ccw_evaluate', 'bin/ccw_sweep',
            'bin/ccw_test']

setup(name='pyccw',
      version=pyccw.PYCCW_VERSION,
      description='Field, electrothermal and design tools for current carrying ' +
            'wire ion traps.',
      packages=['pyccw', 'pyccw.toolbox', 'pyccw.toolbox.design',
                'pyccw.toolbox.cmdline', 'pyccw.testing'],
      scripts=scriptList,
      install_requires=['numpy', 'scipy', 'numba', 'tqdm', 'pint'],
      license='GPLv3',
      classifiers=['Intended Audience :: Science/Research',
          'Operating System :: OS Independent',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Physics'])
