"""
Exhaustive sweeps over design parameters, the Pareto front of the
feasible designs and the sweep reports.
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

import json
import itertools
import numpy

from pyccw import generic
from pyccw import ccwprocessor
from . import designcommon
from . import evaluate

REQUIRED_FIELDS = ('width', 'depth', 'separation', 'length', 'current')
"DesignPoint fields a sweep must be given values for"

SWEEP_CSV_DTYPE = numpy.dtype([('width_m', 'f8'), ('depth_m', 'f8'),
        ('separation_m', 'f8'), ('length_m', 'f8'), ('current_A', 'f8'),
        ('ion_height_m', 'f8'), ('gate_length_m', 'f8'),
        ('gradient_per_amp_T_per_m_per_A', 'f8'), ('gradient_T_per_m', 'f8'),
        ('current_density_A_per_cm2', 'f8'), ('power_W', 'f8'), ('t_op_K', 'f8'),
        ('storage_b_max_T', 'f8'), ('return_offset_m', 'f8')] +
        [('ok_' + name, 'u1') for name in designcommon.VERDICT_NAMES] +
        [('feasible', 'u1'), ('pareto', 'u1')])
"One row of the sweep CSV report"

class SweepResult(object):
    """
    Outcome of a sweep.

    * designs         every DesignPoint, in lexicographic order
    * metrics         the Metrics of each design
    * feasible        indices of the feasible designs
    * pareto          indices of the Pareto front members
    * constraints     the Constraints used
    """
    def __init__(self, designs, metrics, feasible, pareto, constraints):
        self.designs = designs
        self.metrics = metrics
        self.feasible = feasible
        self.pareto = pareto
        self.constraints = constraints

def getDesigns(ranges):
    """
    All DesignPoints in the product of the value lists in ranges (a
    dict keyed by DesignPoint field). Each list is sorted and
    deduplicated, so the result is in lexicographic order whatever the
    order of the input. ionHeight and gateLength may be omitted.
    """
    unknown = sorted(set(ranges.keys()) - set(designcommon.DESIGN_FIELDS))
    if len(unknown) > 0:
        msg = 'unknown design fields: %s' % ', '.join(unknown)
        raise generic.CCWInvalidSetting(msg)
    values = []
    for name in designcommon.DESIGN_FIELDS:
        if name in ranges:
            fieldValues = sorted(set([float(v) for v in ranges[name]]))
        elif name in REQUIRED_FIELDS:
            msg = 'sweep needs values for %s' % name
            raise generic.CCWInvalidSetting(msg)
        elif name == 'ionHeight':
            fieldValues = [designcommon.DEFAULT_ION_HEIGHT]
        else:
            fieldValues = [designcommon.DEFAULT_GATE_LENGTH]
        if len(fieldValues) == 0:
            msg = 'sweep range for %s is empty' % name
            raise generic.CCWInvalidSetting(msg)
        values.append(fieldValues)
    return [designcommon.DesignPoint(*combo) for combo in itertools.product(*values)]

def dominates(a, b):
    """
    True if objective pair a = (gradient, power) dominates b: no worse
    in both and better in one.
    """
    return a[0] >= b[0] and a[1] <= b[1] and (a[0] > b[0] or a[1] < b[1])

def paretoFront(objectives):
    """
    Indices of the members of objectives, a list of (gradient, power)
    pairs, that no other member dominates.
    """
    front = []
    for i, candidate in enumerate(objectives):
        if not any([dominates(other, candidate) for j, other in enumerate(objectives) if j != i]):
            front.append(i)
    return front

def sweep(ranges, constraints, env, model, controls=None):
    """
    Evaluate every design in the product of ranges (see getDesigns).
    Designs whose gate cannot be solved are kept, infeasible, with the
    reason in Metrics.problem. The Pareto front maximizes the gradient
    at the drive current and minimizes power over the feasible designs.
    """
    controls = ccwprocessor.getControls(controls)
    designs = getDesigns(ranges)
    gateCache = {}
    allMetrics = []
    for design in controls.progressIter(designs, total=len(designs), desc='sweep'):
        try:
            metrics = evaluate.evaluate(design, env, model, constraints, controls, gateCache)
        except generic.CCWException as e:
            metrics = designcommon.Metrics()
            metrics.problem = str(e)
            metrics.verdicts = evaluate.checkConstraints(metrics, constraints)
            msg = 'design %s not scored: %s' % (design, e)
            controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
        allMetrics.append(metrics)

    feasible = [idx for idx, metrics in enumerate(allMetrics) if metrics.feasible]
    objectives = [(allMetrics[idx].gradientAtCurrent, allMetrics[idx].power) for idx in feasible]
    pareto = [feasible[idx] for idx in paretoFront(objectives)]
    return SweepResult(designs, allMetrics, feasible, pareto, constraints)

def getSweepAsArray(result):
    """
    The sweep as a SWEEP_CSV_DTYPE array, one row per design.
    """
    arr = numpy.zeros(len(result.designs), dtype=SWEEP_CSV_DTYPE)
    pareto = set(result.pareto)
    for idx, (design, metrics) in enumerate(zip(result.designs, result.metrics)):
        row = arr[idx:idx + 1]
        row['width_m'] = design.width
        row['depth_m'] = design.depth
        row['separation_m'] = design.separation
        row['length_m'] = design.length
        row['current_A'] = design.current
        row['ion_height_m'] = design.ionHeight
        row['gate_length_m'] = design.gateLength
        row['gradient_per_amp_T_per_m_per_A'] = metrics.gradientPerAmp
        row['gradient_T_per_m'] = metrics.gradientAtCurrent
        row['current_density_A_per_cm2'] = metrics.currentDensity
        row['power_W'] = metrics.power
        row['t_op_K'] = metrics.tOp
        if metrics.storageB.shape[0] > 0:
            row['storage_b_max_T'] = metrics.storageB.max()
        else:
            row['storage_b_max_T'] = numpy.nan
        row['return_offset_m'] = metrics.returnOffset
        for verdict in metrics.verdicts:
            row['ok_' + verdict.name] = verdict.passed
        row['feasible'] = metrics.feasible
        row['pareto'] = idx in pareto
    return arr

def writeSweepCSV(result, outfile):
    """
    Write the sweep as CSV, one row per design in sweep order.
    """
    arr = getSweepAsArray(result)
    fmt = []
    for name in arr.dtype.names:
        if arr.dtype[name] == numpy.uint8:
            fmt.append('%d')
        else:
            fmt.append('%.9e')
    numpy.savetxt(outfile, arr, fmt=fmt, delimiter=',', header=','.join(arr.dtype.names),
            comments='', newline='\n')

def getSweepSummary(result):
    "dict with the counts, the constraints and the Pareto front"
    front = []
    for idx in result.pareto:
        design = result.designs[idx]
        front.append({'index': idx,
                'design': dict([(name, getattr(design, name)) for name in designcommon.DESIGN_FIELDS]),
                'metrics': result.metrics[idx].asDict()})
    return {'n_designs': len(result.designs), 'n_feasible': len(result.feasible),
            'feasible_indices': result.feasible, 'pareto_front': front,
            'constraints': result.constraints.asDict()}

def writeSweepJSON(result, outfile):
    """
    Write the JSON summary of the sweep and its Pareto front.
    """
    with open(outfile, 'w') as f:
        json.dump(generic.jsonReady(getSweepSummary(result)), f, indent=2,
                sort_keys=True, allow_nan=False)
        f.write('\n')
