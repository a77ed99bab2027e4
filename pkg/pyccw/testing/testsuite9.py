"""
Checks design sweeps, the Pareto front and the sweep reports
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
import json
import numpy

from . import utils
from pyccw import generic
from pyccw.toolbox import resistivity
from pyccw.toolbox import electrothermal
from pyccw.toolbox.design import designcommon
from pyccw.toolbox.design import sweep

SWEEP_CSV = 'testsuite9_sweep.csv'
SWEEP_JSON = 'testsuite9_sweep.json'

GRID = {'width': [100e-6], 'depth': [10e-6, 15e-6, 20e-6], 'separation': [88e-6],
        'length': [20e-3, 39e-3, 60e-3], 'current': [11.0, 13.0, 15.0]}
"27 designs over current, series length and thickness"

def getEnvironment():
    return electrothermal.ThermalEnvironment(40.0, 1.0)

def checkParetoFront():
    """
    The front of a few hand made objective pairs
    """
    objectives = [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (0.0, 0.0), (2.0, 1.0)]
    utils.checkTrue('hand made front', sweep.paretoFront(objectives) == [1, 3, 4])
    utils.checkTrue('empty front', sweep.paretoFront([]) == [])
    utils.checkTrue('equal pairs do not dominate', not sweep.dominates((1.0, 1.0), (1.0, 1.0)))

def checkGrid(controls, model):
    """
    The 27 design grid
    """
    constraints = designcommon.Constraints()
    result = sweep.sweep(GRID, constraints, getEnvironment(), model, controls)
    utils.checkTrue('design count', len(result.designs) == 27)
    utils.checkTrue('lexicographic order', result.designs == sorted(result.designs))
    utils.checkTrue('some designs feasible', len(result.feasible) > 0)
    utils.checkTrue('front within the feasible set', set(result.pareto) <= set(result.feasible))

    # brute force: nothing feasible dominates a front member, everything
    # else feasible is dominated
    objectives = dict([(idx, (result.metrics[idx].gradientAtCurrent,
            result.metrics[idx].power)) for idx in result.feasible])
    for idx in result.feasible:
        dominated = any([sweep.dominates(objectives[other], objectives[idx])
                for other in result.feasible if other != idx])
        utils.checkTrue('pareto membership of design %d' % idx,
                dominated == (idx not in result.pareto))

    relaxed = constraints.relaxed(jMax=2e6, gradientRange=(50.0, 250.0))
    loose = sweep.sweep(GRID, relaxed, getEnvironment(), model, controls)
    utils.checkTrue('relaxing keeps feasible designs', set(result.feasible) <= set(loose.feasible))
    utils.checkTrue('relaxing adds designs', len(loose.feasible) > len(result.feasible))

    shuffled = dict([(name, list(reversed(values))) for name, values in GRID.items()])
    shuffled['current'] = [13.0, 15.0, 11.0, 13.0]
    again = sweep.sweep(shuffled, constraints, getEnvironment(), model, controls)
    utils.checkTrue('input order invariance', again.designs == result.designs and
            again.feasible == result.feasible and again.pareto == result.pareto)

    closed = sweep.sweep(GRID, constraints.relaxed(jMax=0.0), getEnvironment(), model,
            controls)
    utils.checkTrue('zero current density limit', closed.feasible == [] and closed.pareto == [])
    return result

def checkRelaxation(controls, model):
    """
    Loosening any one bound keeps every feasible design feasible
    """
    tight = designcommon.Constraints(jMax=1e6, gradientRange=(100.0, 150.0),
            powerBudget=1.5, tOpMax=45.0)
    env = getEnvironment()
    base = sweep.sweep(GRID, tight, env, model, controls)
    utils.checkTrue('feasible under tight bounds', len(base.feasible) > 0)
    looser = [('jMax', {'jMax': 2e6}),
            ('gradient low', {'gradientRange': (50.0, 150.0)}),
            ('gradient high', {'gradientRange': (100.0, 250.0)}),
            ('powerBudget', {'powerBudget': numpy.inf}),
            ('tOpMax', {'tOpMax': numpy.inf}),
            ('storageBMax', {'storageBMax': 1.0})]
    union = set(base.feasible)
    for name, kwargs in looser:
        loose = sweep.sweep(GRID, tight.relaxed(**kwargs), env, model, controls)
        utils.checkTrue('relaxing %s keeps feasible designs' % name,
                set(base.feasible) <= set(loose.feasible),
                '%s against %s' % (base.feasible, loose.feasible))
        union |= set(loose.feasible)

    everything = dict([(key, value) for name, kwargs in looser
            for key, value in kwargs.items()])
    everything['gradientRange'] = (50.0, 250.0)
    loosest = sweep.sweep(GRID, tight.relaxed(**everything), env, model, controls)
    utils.checkTrue('relaxing every bound keeps each relaxed set',
            union <= set(loosest.feasible), '%s against %s' % (sorted(union),
            loosest.feasible))

def checkReports(result, newpath):
    """
    CSV and JSON reports of a sweep
    """
    fname = os.path.join(newpath, SWEEP_CSV)
    sweep.writeSweepCSV(result, fname)
    with open(fname) as f:
        lines = f.read().splitlines()
    utils.checkTrue('sweep CSV rows', len(lines) == len(result.designs) + 1)
    utils.checkTrue('sweep CSV header', lines[0].split(',') == list(sweep.SWEEP_CSV_DTYPE.names))
    arr = sweep.getSweepAsArray(result)
    utils.checkTrue('feasible column', [int(i) for i in arr['feasible'].nonzero()[0]] ==
            result.feasible)

    fname = os.path.join(newpath, SWEEP_JSON)
    sweep.writeSweepJSON(result, fname)
    with open(fname) as f:
        summary = json.load(f)
    utils.checkTrue('summary counts', summary['n_designs'] == 27 and
            summary['n_feasible'] == len(result.feasible))
    utils.checkTrue('summary front', [entry['index'] for entry in summary['pareto_front']] ==
            result.pareto)

def checkSmallSweeps(controls, model):
    """
    A single design and designs whose gate cannot be built
    """
    single = dict([(name, values[:1]) for name, values in GRID.items()])
    result = sweep.sweep(single, designcommon.Constraints(), getEnvironment(), model, controls)
    utils.checkTrue('single design sweep', len(result.designs) == 1 and
            len(result.metrics) == 1)

    mixed = dict(single, width=[100e-6, 150e-6])
    result = sweep.sweep(mixed, designcommon.Constraints(), getEnvironment(), model, controls)
    broken = result.metrics[1]
    utils.checkTrue('unbuildable design kept', len(result.designs) == 2 and
            broken.problem is not None and not broken.feasible)
    utils.checkTrue('unbuildable design fails every verdict',
            not any([v.passed for v in broken.verdicts if v.name != 'storage_field']))

    utils.checkRaises('missing range', generic.CCWInvalidSetting, sweep.getDesigns,
            {'width': [1e-4]})
    utils.checkRaises('unknown range', generic.CCWInvalidSetting, sweep.getDesigns,
            dict(single, colour=[1]))
    utils.checkRaises('empty range', generic.CCWInvalidSetting, sweep.getDesigns,
            dict(single, current=[]))

def run(oldpath, newpath):
    """
    Runs the sweep test suite. Tests:

    Pareto front of hand made objectives
    Brute force Pareto check, relaxed constraints and input order on a grid
    Loosening one bound at a time
    Sweep reports
    Single design and unbuildable designs
    """
    controls = utils.getQuietControls()
    model = resistivity.ResistivityModel(100)
    checkParetoFront()
    result = checkGrid(controls, model)
    checkRelaxation(controls, model)
    checkReports(result, newpath)
    checkSmallSweeps(controls, model)
