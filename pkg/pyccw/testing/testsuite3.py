"""
Checks the quadrupole search, the field gradients and the thin wire
reference model
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
import numpy

from . import utils
from pyccw import generic
from pyccw import geometry
from pyccw import layoutfile
from pyccw.toolbox import magnetostatics

ION_HEIGHT = 125e-6

SEARCH_BOX = [(-20e-6, 20e-6), (95e-6, 155e-6), (-20e-6, 20e-6)]

EXPECTED_GRADIENT_PER_AMP = 11.1 # T/m/A
"Axial gradient per amp of the reference gate zone at its quadrupole"

THIN_WIRE_RATIO = 0.83
"Finite pair over thin wire pair gradient at the ion height"

FAR_POINTS = numpy.array([[0.0, 320e-6, 0.0], [0.0, 400e-6, 100e-6], [700e-6, 0.0, 0.0]])

def checkQuadrupole(gate, controls):
    """
    The quadrupole of the reference gate zone
    """
    quad = magnetostatics.findQuadrupole(gate, SEARCH_BOX, (4, 2), controls)
    utils.compareValue('quadrupole height', quad.position[1], ION_HEIGHT, atol=15e-6)
    utils.compareValue('quadrupole on the trap axis', quad.position[2], 0.0, atol=1e-7)
    utils.compareValue('quadrupole centred along the wires', quad.position[0], 0.0,
            atol=1e-6)
    utils.compareValue('gradient per amp', quad.axialGradientPerAmp,
            EXPECTED_GRADIENT_PER_AMP, rtol=0.2)
    utils.checkInRange('residual field', quad.residualField, 0.0,
            1e-6 * quad.axialGradientPerAmp)

    halved = magnetostatics.gradient(quad.position, gate, (4, 2), controls,
            step=controls.gradientStep / 2)
    utils.compareValue('gradient step halving', halved.axialGradient,
            quad.gradient.axialGradient, rtol=1e-3)

    finer = magnetostatics.gradient(quad.position, gate, (8, 4), controls)
    utils.compareValue('filament doubling', finer.axialGradient,
            quad.gradient.axialGradient, rtol=5e-3)

    utils.checkTrue('discretization converged',
            magnetostatics.convergedDiscretization(gate, FAR_POINTS, controls) == (4, 2))
    return quad

def checkTranslation(gate, quad, controls):
    """
    Moving the layout and the box moves the quadrupole with them
    """
    offset = numpy.array([200e-6, 30e-6, -150e-6])
    moved = geometry.translateLayout(gate, offset)
    box = numpy.array(SEARCH_BOX) + offset[:, numpy.newaxis]
    movedQuad = magnetostatics.findQuadrupole(moved, box, (4, 2), controls)
    utils.compareArrays('translated quadrupole', movedQuad.position, quad.position + offset,
            atol=1e-8)
    utils.compareValue('translated gradient', movedQuad.axialGradientPerAmp,
            quad.axialGradientPerAmp, rtol=1e-4)

def checkThinWire(controls):
    """
    Finite pair against the idealized pair and its scaling
    """
    point = [0.0, ION_HEIGHT, 0.0]
    pair = geometry.antiparallelPair(100e-6, 15e-6, 88e-6, 4e-3, 1.0)
    finite = magnetostatics.gradient(point, pair, (4, 2), controls).axialGradient
    thin = magnetostatics.thinWireReference(88e-6, ION_HEIGHT, 1.0, 4e-3, width=100e-6)
    utils.compareValue('thin wire ratio', finite / thin, THIN_WIRE_RATIO, atol=0.08)

    fine = geometry.antiparallelPair(10e-9, 10e-9, 88e-6, 4e-3, 1.0)
    limit = magnetostatics.gradient(point, fine, (4, 2), controls).axialGradient
    thin = magnetostatics.thinWireReference(88e-6, ION_HEIGHT, 1.0, 4e-3, width=10e-9)
    utils.compareValue('vanishing cross section', limit, thin, rtol=1e-3)

    k = 2.0
    scaled = geometry.antiparallelPair(k * 100e-6, k * 15e-6, k * 88e-6, k * 4e-3, 1.0)
    scaledGradient = magnetostatics.gradient([0.0, k * ION_HEIGHT, 0.0], scaled, (4, 2),
            controls, step=k * controls.gradientStep).axialGradient
    utils.compareValue('inverse square scaling', scaledGradient, finite / k**2, rtol=1e-6)
    utils.compareValue('thin wire scaling', magnetostatics.thinWireReference(
            k * 88e-6, k * ION_HEIGHT, 1.0, k * 4e-3),
            magnetostatics.thinWireReference(88e-6, ION_HEIGHT, 1.0, 4e-3) / k**2,
            rtol=1e-6)

    utils.checkRaises('thin wire with no separation', generic.CCWInvalidSetting,
            magnetostatics.thinWireReference, 0.0, ION_HEIGHT, 1.0, 4e-3)

def checkThinWireGate(controls):
    """
    Long gate loops of thin wire at a fixed return offset. Far from the
    loop ends the gate and return wires are two antiparallel pairs at
    z = +/-a and z = +/-c, whose fields cancel at height sqrt(a c).
    """
    a = 94e-6
    for returnOffset, box in ((228.608e-6, (150e-6, 200e-6)),
                (400e-6, (190e-6, 240e-6))):
        thin = geometry.gateLoops(10e-9, 10e-9, 2 * a, 20e-3, returnOffset, 1.0,
                centreToCentre=True)
        searchBox = [(-20e-6, 20e-6), box, (-20e-6, 20e-6)]
        quad = magnetostatics.findQuadrupole(thin, searchBox, (1, 1), controls)
        null = numpy.sqrt(a * (a + returnOffset))
        utils.compareValue('thin wire null at return offset %g' % returnOffset,
                quad.position[1], null, atol=0.5e-6)
        utils.compareValue('thin wire null on the axis at return offset %g' % returnOffset,
                quad.position[2], 0.0, atol=1e-7)

def checkSearchErrors(gate, controls):
    """
    Boxes that miss the minimum or reach into the copper
    """
    above = [(-20e-6, 20e-6), (200e-6, 260e-6), (-20e-6, 20e-6)]
    utils.checkRaises('minimum outside the box', generic.CCWNotBracketed,
            magnetostatics.findQuadrupole, gate, above, (4, 2), controls)

    copper = [(-20e-6, 20e-6), (-10e-6, 20e-6), (-120e-6, 120e-6)]
    e = utils.checkRaises('box in the copper', generic.CCWConductorIntersection,
            magnetostatics.findQuadrupole, gate, copper, (4, 2), controls)
    utils.checkTrue('intersection indices', len(e.indices) > 0)

    inverted = [(20e-6, -20e-6), (95e-6, 155e-6), (-20e-6, 20e-6)]
    utils.checkRaises('inverted box', generic.CCWInvalidSetting,
            magnetostatics.findQuadrupole, gate, inverted, (4, 2), controls)

def run(oldpath, newpath):
    """
    Runs the quadrupole test suite. Tests:

    Position and gradient of the reference gate quadrupole
    Convergence in gradient step and filament count
    Translating the layout
    The finite pair against the thin wire pair, and scaling with size
    Thin wire gate nulls against the closed form height
    Search box errors
    """
    controls = utils.getQuietControls()
    gate = layoutfile.readLayout(os.path.join(oldpath, utils.GATE_LAYOUT))
    quad = checkQuadrupole(gate, controls)
    checkTranslation(gate, quad, controls)
    checkThinWire(controls)
    checkThinWireGate(controls)
    checkSearchErrors(gate, controls)
