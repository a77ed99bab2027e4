"""
Temperature dependent resistivity of the copper wires, wire and
layout resistance, and the fit of the residual resistance ratio to
measured R(T) data.

The model follows Matthiessen's rule::

    rho(T) = rho_pure(T) + rho_ref / RRR

where rho_pure is a table for pure copper and rho_ref is the
resistivity of the film at 293 K, so that RRR = rho(293 K) / residual.
Unless given explicitly rho_ref is chosen self consistently,
rho_ref = rho_pure(293) / (1 - 1 / RRR), which makes rho(293) equal
to rho_ref exactly.

The default pure copper table (COPPER_TABLE) holds 24 points from 10 K
to 300 K. It was assembled from the recommended values for high purity
copper compiled by Matula (J. Phys. Chem. Ref. Data 8, 1147 (1979)),
as reproduced in the CRC Handbook, at 10, 20, 40, 60, 80, 100, 150,
200, 273, 293 and 300 K. The remaining points were filled in with the
temperature dependence of the Bloch-Gruneisen form (Debye temperature
343 K) scaled to pass through the neighbouring reference values. The
table can be replaced by setting $PYCCW_COPPER_TABLE to a CSV file
with columns T_K,rho_ohm_m.
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
import itertools
import numpy
from scipy.optimize import least_squares

from pyccw import generic
from pyccw import geometry

COPPER_TABLE = numpy.array([
    [10.0, 0.00202], [15.0, 0.002171], [20.0, 0.0028], [25.0, 0.004423],
    [30.0, 0.007888], [35.0, 0.01412], [40.0, 0.0239], [45.0, 0.03719],
    [50.0, 0.05408], [55.0, 0.07423], [60.0, 0.0971], [70.0, 0.1524],
    [80.0, 0.215], [90.0, 0.2808], [100.0, 0.348], [125.0, 0.5249],
    [150.0, 0.699], [175.0, 0.8742], [200.0, 1.046], [225.0, 1.218],
    [250.0, 1.388], [273.0, 1.543], [293.0, 1.678], [300.0, 1.725]])
COPPER_TABLE[:, 1] *= 1e-8
"Pure copper resistivity. Column 0 is T (K), column 1 rho (ohm m)"

COPPER_TABLE_ENV = 'PYCCW_COPPER_TABLE'
"Environment variable naming a CSV file that replaces COPPER_TABLE"

TABLE_COVERAGE = (10.0, 300.0)
"A resistivity table must cover at least this temperature range (K)"

ANCHOR_WINDOW = 10.0 # K
"fitRRR needs a sample within this distance of 293 K"

RRR_SEARCH_RANGE = (1.0 + 1e-6, 1e7)
"Range of RRR values considered by fitRRR"

MAX_EXTREME_SAMPLES = 12
"""
fitRRR refits at every min/max combination of the sample
uncertainties. Above this many uncertain samples that is refused.
"""

def checkTable(table):
    """
    Check a resistivity table (N x 2 array of T, rho) and return it as
    a read only float64 array. Raises CCWInvalidSetting.
    """
    table = numpy.array(table, dtype=numpy.float64)
    if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
        msg = 'resistivity table must have 2 columns and at least 2 rows'
        raise generic.CCWInvalidSetting(msg)
    temps = table[:, 0]
    rho = table[:, 1]
    if not numpy.isfinite(table).all() or (rho <= 0).any():
        msg = 'resistivity table values must be finite and positive'
        raise generic.CCWInvalidSetting(msg)
    if (numpy.diff(temps) <= 0).any():
        msg = 'resistivity table temperatures must be strictly increasing'
        raise generic.CCWInvalidSetting(msg)
    if (numpy.diff(rho) < 0).any():
        msg = 'resistivity table values must not decrease with temperature'
        raise generic.CCWInvalidSetting(msg)
    if temps[0] > TABLE_COVERAGE[0] or temps[-1] < TABLE_COVERAGE[1]:
        msg = 'resistivity table must cover %g K to %g K, covers %g K to %g K' % (
                TABLE_COVERAGE + (temps[0], temps[-1]))
        raise generic.CCWInvalidSetting(msg)
    table.flags.writeable = False
    return table

def readCopperTable(fname):
    """
    Read a resistivity table from a CSV file with a header line and
    columns T_K,rho_ohm_m.
    """
    data = numpy.genfromtxt(fname, delimiter=',', names=True)
    names = data.dtype.names
    if names is None or 'T_K' not in names or 'rho_ohm_m' not in names:
        msg = 'copper table %s needs the columns T_K and rho_ohm_m' % fname
        raise generic.CCWInvalidSetting(msg)
    data = numpy.atleast_1d(data)
    return checkTable(numpy.column_stack([data['T_K'], data['rho_ohm_m']]))

def getDefaultCopperTable():
    """
    The table named by $PYCCW_COPPER_TABLE if set, otherwise
    COPPER_TABLE.
    """
    fname = os.getenv(COPPER_TABLE_ENV)
    if fname:
        return readCopperTable(fname)
    return checkTable(COPPER_TABLE)

class ResistivityModel(object):
    """
    Copper resistivity rho(T) = rho_pure(T) + rhoRef / rrr.

    rrr must be > 1 (numpy.inf gives pure copper). table defaults to
    getDefaultCopperTable(). rhoRef (ohm m at 293 K) defaults to the
    self consistent value.
    """
    def __init__(self, rrr, table=None, rhoRef=None):
        rrr = float(rrr)
        if not rrr > 1:
            msg = 'RRR must be > 1, got %s' % rrr
            raise generic.CCWInvalidSetting(msg)
        if table is None:
            table = getDefaultCopperTable()
        self.table = checkTable(table)
        self.logRho = numpy.log(self.table[:, 1])
        self.rrr = rrr
        if rhoRef is None:
            rhoRef = self.pure(generic.ROOM_TEMPERATURE) / (1 - 1 / rrr)
        elif not rhoRef > 0:
            msg = 'reference resistivity must be positive, got %s' % rhoRef
            raise generic.CCWInvalidSetting(msg)
        self.rhoRef = float(rhoRef)

    @property
    def tMin(self):
        return self.table[0, 0]

    @property
    def tMax(self):
        return self.table[-1, 0]

    @property
    def residual(self):
        "temperature independent part of rho (ohm m)"
        return self.rhoRef / self.rrr

    def inRange(self, t):
        return bool(numpy.all((numpy.asarray(t) >= self.tMin) & (numpy.asarray(t) <= self.tMax)))

    def pure(self, t):
        """
        Pure copper resistivity, interpolated linearly in log(rho).
        Raises CCWOutOfRange outside the table.
        """
        if not self.inRange(t):
            msg = 'temperature %s K outside the resistivity table (%g K to %g K)' % (
                    t, self.tMin, self.tMax)
            raise generic.CCWOutOfRange(msg)
        return numpy.exp(numpy.interp(t, self.table[:, 0], self.logRho))

    def resistivity(self, t):
        "rho (ohm m) at temperature t (K), scalar or array"
        return self.pure(t) + self.residual

def resistivity(t, model):
    """
    Resistivity in ohm m at temperature t (K). Raises CCWOutOfRange
    outside the table of the model.
    """
    return model.resistivity(t)

def sheetResistance(t, thickness, model):
    """
    Sheet resistance (ohm per square) of a film of the given thickness (m).
    """
    if not thickness > 0:
        msg = 'thickness must be positive, got %s' % thickness
        raise generic.CCWInvalidSetting(msg)
    return model.resistivity(t) / thickness

def geometryFactor(layout, thickness=None):
    """
    Sum over the wires of squares / thickness (1/m). The resistance of
    the layout is this times rho. Each wire uses its own depth unless
    thickness is given.
    """
    if thickness is not None and not thickness > 0:
        msg = 'thickness must be positive, got %s' % thickness
        raise generic.CCWInvalidSetting(msg)
    factor = 0.0
    for wire in layout:
        wireThickness = wire.depth if thickness is None else thickness
        factor += geometry.squares(wire) / wireThickness
    return factor

def layoutResistance(layout, t, model, thickness=None):
    """
    Series resistance (ohm) of all the wires of layout at temperature t.
    """
    return geometryFactor(layout, thickness) * model.resistivity(t)

def resistanceRatioCurve(temperatures, rrrValues, table=None):
    """
    rho(T) / rho(293 K) at each temperature for each RRR value. Returns
    a dict keyed by RRR (numpy.inf for pure copper) of arrays.
    """
    curves = {}
    for rrr in rrrValues:
        model = ResistivityModel(rrr, table)
        curves[rrr] = (model.resistivity(numpy.asarray(temperatures)) /
                    model.resistivity(generic.ROOM_TEMPERATURE))
    return curves

RT_SAMPLE_DTYPE = numpy.dtype([('T_K', 'f8'), ('R_ohm', 'f8'), ('R_err_ohm', 'f8')])
"One measured resistance sample, as read from an R(T) CSV file"

def makeRTSamples(samples):
    """
    Convert a sequence of (T, R) or (T, R, err) tuples, or an array
    with T_K and R_ohm fields, to an RT_SAMPLE_DTYPE array.
    """
    if isinstance(samples, numpy.ndarray) and samples.dtype.names is not None:
        arr = numpy.zeros(samples.shape[0], dtype=RT_SAMPLE_DTYPE)
        arr['T_K'] = samples['T_K']
        arr['R_ohm'] = samples['R_ohm']
        if 'R_err_ohm' in samples.dtype.names:
            arr['R_err_ohm'] = samples['R_err_ohm']
    else:
        samples = list(samples)
        arr = numpy.zeros(len(samples), dtype=RT_SAMPLE_DTYPE)
        for idx, sample in enumerate(samples):
            if len(sample) not in (2, 3):
                msg = 'samples must be (T, R) or (T, R, err), got %s' % (sample,)
                raise generic.CCWDegenerateData(msg)
            arr['T_K'][idx] = sample[0]
            arr['R_ohm'][idx] = sample[1]
            if len(sample) == 3 and sample[2] is not None:
                arr['R_err_ohm'][idx] = sample[2]
    arr['R_err_ohm'] = numpy.where(numpy.isnan(arr['R_err_ohm']), 0.0, arr['R_err_ohm'])
    return arr

def readRTSamples(fname):
    """
    Read measured resistances from a CSV file with a header line and
    columns T_K, R_ohm and optionally R_err_ohm.
    """
    data = numpy.genfromtxt(fname, delimiter=',', names=True)
    names = data.dtype.names
    if names is None or 'T_K' not in names or 'R_ohm' not in names:
        msg = '%s needs the columns T_K and R_ohm' % fname
        raise generic.CCWDegenerateData(msg)
    return makeRTSamples(numpy.atleast_1d(data))

class RrrFit(object):
    """
    Result of fitRRR.

    Attributes:

    * rrrHat          best fit RRR
    * interval        (low, high) RRR from refitting at the sample extremes
    * residualNorm    Euclidean norm of the log R residuals
    * residuals       per sample log R residual (measured - model)
    * rhoRef          resistivity at 293 K implied by the anchor sample
    * anchorIndex     index of the sample used as the 293 K anchor
    * samples         the RT_SAMPLE_DTYPE samples fitted
    * squares, thickness  the geometry the fit assumed
    """
    def __init__(self, rrrHat, interval, residualNorm, residuals, rhoRef,
                anchorIndex, samples, squares, thickness):
        self.rrrHat = rrrHat
        self.interval = interval
        self.residualNorm = residualNorm
        self.residuals = residuals
        self.rhoRef = rhoRef
        self.anchorIndex = anchorIndex
        self.samples = samples
        self.squares = squares
        self.thickness = thickness

def checkRTSamples(samples, table):
    """
    Check fit input and return the index of the 293 K anchor sample.
    Raises CCWDegenerateData or CCWOutOfRange.
    """
    if samples.shape[0] < 2:
        msg = 'at least 2 samples are needed, got %d' % samples.shape[0]
        raise generic.CCWDegenerateData(msg)
    temps = samples['T_K']
    if numpy.unique(temps).shape[0] != temps.shape[0]:
        msg = 'samples must be at distinct temperatures, got %s' % temps.tolist()
        raise generic.CCWDegenerateData(msg)
    if not (samples['R_ohm'] > 0).all() or not numpy.isfinite(samples['R_ohm']).all():
        msg = 'sample resistances must be positive'
        raise generic.CCWDegenerateData(msg)
    if (samples['R_err_ohm'] < 0).any() or (samples['R_err_ohm'] >= samples['R_ohm']).any():
        msg = 'sample uncertainties must be >= 0 and below the resistance'
        raise generic.CCWDegenerateData(msg)
    if (temps < table[0, 0]).any() or (temps > table[-1, 0]).any():
        msg = 'sample temperatures must lie within %g K to %g K' % (table[0, 0], table[-1, 0])
        raise generic.CCWOutOfRange(msg)

    distance = numpy.abs(temps - generic.ROOM_TEMPERATURE)
    anchor = numpy.argmin(distance)
    if distance[anchor] > ANCHOR_WINDOW:
        msg = 'no sample within %g K of %g K to anchor the room temperature resistivity' % (
                ANCHOR_WINDOW, generic.ROOM_TEMPERATURE)
        raise generic.CCWDegenerateData(msg)
    return anchor

def fitLogRRR(temps, resistances, anchor, factor, pureModel):
    """
    Least squares fit of log R over log RRR for one set of resistances.
    Returns (rrr, residuals, rhoRef).
    """
    pureRho = pureModel.pure(temps)
    # resistivity at 293 K from the anchor, corrected from the anchor temperature
    rhoRef = (resistances[anchor] / factor + pureModel.pure(generic.ROOM_TEMPERATURE) -
                pureRho[anchor])
    logR = numpy.log(resistances)

    def residuals(x):
        rrr = numpy.exp(x[0])
        return logR - numpy.log(factor * (pureRho + rhoRef / rrr))

    # coarse scan so least squares starts in the right basin
    lo, hi = numpy.log(RRR_SEARCH_RANGE[0]), numpy.log(RRR_SEARCH_RANGE[1])
    grid = numpy.linspace(lo, hi, 400)
    costs = [(residuals([x])**2).sum() for x in grid]
    x0 = grid[numpy.argmin(costs)]

    fit = least_squares(residuals, [x0], bounds=([lo], [hi]), xtol=1e-12, ftol=1e-14,
                gtol=1e-14)
    return numpy.exp(fit.x[0]), residuals(fit.x), rhoRef

def fitRRR(samples, squares, thickness, table=None):
    """
    Fit the residual resistance ratio to measured resistances of a
    film of known squares and thickness (m).

    samples is anything makeRTSamples accepts. One sample must lie
    within 10 K of 293 K; it fixes rho_ref. RRR is then the least
    squares fit of log R over all samples. The interval is the range of
    RRR found by refitting at every combination of R - err and R + err
    of the samples that have an uncertainty.

    Raises CCWDegenerateData for unusable input (fewer than 2 samples,
    repeated temperatures, non positive resistance, no anchor).
    """
    if not squares > 0 or not thickness > 0:
        msg = 'squares and thickness must be positive, got (%s, %s)' % (squares, thickness)
        raise generic.CCWInvalidSetting(msg)
    samples = makeRTSamples(samples)
    pureModel = ResistivityModel(numpy.inf, table)
    anchor = checkRTSamples(samples, pureModel.table)
    factor = squares / thickness

    temps = samples['T_K']
    resistances = samples['R_ohm']
    rrrHat, residuals, rhoRef = fitLogRRR(temps, resistances, anchor, factor, pureModel)

    uncertain = numpy.where(samples['R_err_ohm'] > 0)[0]
    if uncertain.shape[0] > MAX_EXTREME_SAMPLES:
        msg = 'too many uncertain samples (%d) for extreme combination refitting' % uncertain.shape[0]
        raise generic.CCWDegenerateData(msg)
    low = high = rrrHat
    for signs in itertools.product((-1.0, 1.0), repeat=uncertain.shape[0]):
        varied = resistances.copy()
        varied[uncertain] += numpy.array(signs) * samples['R_err_ohm'][uncertain]
        rrr, _, _ = fitLogRRR(temps, varied, anchor, factor, pureModel)
        low = min(low, rrr)
        high = max(high, rrr)

    residualNorm = numpy.sqrt((residuals**2).sum())
    return RrrFit(rrrHat, (low, high), residualNorm, residuals, rhoRef, anchor,
                samples, squares, thickness)

def fittedModel(fit, table=None):
    """
    The ResistivityModel described by an RrrFit.
    """
    return ResistivityModel(fit.rrrHat, table, rhoRef=fit.rhoRef)

def getFitReport(fit, extra=None):
    """
    The fit as a dict ready for JSON. extra (a dict) is merged in.
    """
    report = {'rrr_hat': fit.rrrHat,
            'interval': [fit.interval[0], fit.interval[1]],
            'residual_norm': fit.residualNorm,
            'rho_ref_ohm_m': fit.rhoRef,
            'squares': fit.squares,
            'thickness_m': fit.thickness,
            'anchor_T_K': float(fit.samples['T_K'][fit.anchorIndex]),
            'samples': [{'T_K': float(s['T_K']), 'R_ohm': float(s['R_ohm']),
                    'R_err_ohm': float(s['R_err_ohm']), 'log_residual': float(r)}
                    for s, r in zip(fit.samples, fit.residuals)]}
    if extra is not None:
        report.update(extra)
    return report

def writeFitReport(fit, fname, extra=None):
    """
    Write the fit report as JSON.
    """
    with open(fname, 'w') as f:
        json.dump(generic.jsonReady(getFitReport(fit, extra)), f, indent=2,
                sort_keys=True, allow_nan=False)
        f.write('\n')
