"""
Classes that are passed to the solvers. The Controls object carries
the numerical settings shared by the field, thermal and design code
together with the message handler and progress reporting.
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

from tqdm import tqdm

from . import generic

MESSAGE_WARNING = generic.MESSAGE_WARNING
"""
to be passed to message handler function set with
Controls.setMessageHandler
"""
MESSAGE_INFORMATION = generic.MESSAGE_INFORMATION
"""
to be passed to message handler function set with
Controls.setMessageHandler
"""
MESSAGE_DEBUG = generic.MESSAGE_DEBUG
"""
to be passed to message handler function set with
Controls.setMessageHandler
"""

DEFAULT_N_WIDTH = 4
"Default number of filaments across the width of a wire"
DEFAULT_N_DEPTH = 2
"Default number of filaments through the depth of a wire"
DEFAULT_GRADIENT_STEP = 1e-7 # m
"Central difference step used for field gradients"
DEFAULT_SEARCH_PITCH = 2e-6 # m
"Pitch of the coarse grid scan in the quadrupole search"
DEFAULT_SEARCH_TOLERANCE = 1e-8 # m
"Step at which the quadrupole refinement stops"
DEFAULT_DAMPING = 0.5
"Relaxation factor of the thermal fixed point iteration"
DEFAULT_TEMPERATURE_TOLERANCE = 1e-3 # K
"Convergence threshold of the thermal fixed point iteration"
DEFAULT_MAX_ITERATIONS = 1000
"Iteration cap of the thermal fixed point iteration"
DEFAULT_RUNAWAY_RESOLUTION = 0.01 # A
"Resolution of the runaway current bisection"
DEFAULT_WINDOW_SIZE = 4096 # points
"Number of field points evaluated per block in a field map"

class OtherArgs(object):
    """
    Container class for any extra information a caller wants to pass
    around with a run. No conversion of the contents happens.
    """
    pass

def defaultMessageFn(message, level):
    """
    Default message printer. Prints all messages regardless of level.
    
    Change with Controls.setMessageHandler
    """
    print(message)
    
def silentMessageFn(message, level):
    """
    Alternate message printer - does nothing.
    """
    pass

def warningMessageFn(message, level):
    """
    Alternate message printer - only prints warnings.
    """
    if level == MESSAGE_WARNING:
        print(message)

class Controls(object):
    """
    The controls object. This is passed to the solvers and contains
    methods for controlling the numerical behaviour of the processing.
    Every setter checks its argument and raises CCWInvalidSetting.
    """
    def __init__(self):
        self.nWidth = DEFAULT_N_WIDTH
        self.nDepth = DEFAULT_N_DEPTH
        self.gradientStep = DEFAULT_GRADIENT_STEP
        self.searchPitch = DEFAULT_SEARCH_PITCH
        self.searchTolerance = DEFAULT_SEARCH_TOLERANCE
        self.damping = DEFAULT_DAMPING
        self.temperatureTolerance = DEFAULT_TEMPERATURE_TOLERANCE
        self.maxIterations = DEFAULT_MAX_ITERATIONS
        self.runawayResolution = DEFAULT_RUNAWAY_RESOLUTION
        self.windowSize = DEFAULT_WINDOW_SIZE
        self.progress = False
        self.messageHandler = defaultMessageFn

    @staticmethod
    def checkPositive(name, value):
        "raise CCWInvalidSetting unless value > 0"
        if not value > 0:
            msg = '%s must be positive, got %s' % (name, value)
            raise generic.CCWInvalidSetting(msg)

    def setDiscretization(self, nWidth, nDepth):
        """
        Number of filaments across the width and through the depth of
        each wire. Both must be at least 1.
        """
        if int(nWidth) != nWidth or int(nDepth) != nDepth or nWidth < 1 or nDepth < 1:
            msg = 'filament counts must be integers >= 1, got (%s, %s)' % (nWidth, nDepth)
            raise generic.CCWInvalidSetting(msg)
        self.nWidth = int(nWidth)
        self.nDepth = int(nDepth)

    def getDiscretization(self):
        "Returns the (nWidth, nDepth) tuple"
        return (self.nWidth, self.nDepth)

    def setGradientStep(self, step):
        """
        Central difference step (m) for field gradients.
        """
        self.checkPositive('gradient step', step)
        self.gradientStep = step

    def setSearchPitch(self, pitch):
        """
        Pitch (m) of the grid scanned before the quadrupole position
        is refined.
        """
        self.checkPositive('search pitch', pitch)
        self.searchPitch = pitch

    def setSearchTolerance(self, tolerance):
        "Step (m) below which the quadrupole refinement stops"
        self.checkPositive('search tolerance', tolerance)
        self.searchTolerance = tolerance

    def setDamping(self, damping):
        """
        Relaxation factor of the thermal iteration. 1.0 is the plain
        fixed point map; smaller values are slower but more robust.
        """
        if not (0 < damping <= 1):
            msg = 'damping must be in (0, 1], got %s' % damping
            raise generic.CCWInvalidSetting(msg)
        self.damping = damping

    def setTemperatureTolerance(self, tolerance):
        "Convergence threshold (K) of the thermal iteration"
        self.checkPositive('temperature tolerance', tolerance)
        self.temperatureTolerance = tolerance

    def setMaxIterations(self, maxIterations):
        "Iteration cap of the thermal iteration"
        if int(maxIterations) != maxIterations or maxIterations < 1:
            msg = 'iteration cap must be an integer >= 1, got %s' % maxIterations
            raise generic.CCWInvalidSetting(msg)
        self.maxIterations = int(maxIterations)

    def setRunawayResolution(self, resolution):
        "Resolution (A) of the runaway current bisection"
        self.checkPositive('runaway resolution', resolution)
        self.runawayResolution = resolution

    def setWindowSize(self, size):
        """
        Number of points evaluated in each block of a field map.
        Only changes memory use, never the result.
        """
        if int(size) != size or size < 1:
            msg = 'window size must be an integer >= 1, got %s' % size
            raise generic.CCWInvalidSetting(msg)
        self.windowSize = int(size)

    def setProgress(self, progress):
        """
        Set whether long loops (field maps and sweeps) show a tqdm
        progress bar. Default is no progress.
        """
        self.progress = bool(progress)

    def setMessageHandler(self, messageHandler):
        """
        Set the message handler function to use for printing messages regarding
        things discovered during the processing. The default behaviour is to 
        print all messages. 
        
        Can pass in silentMessageFn which will print nothing, or your own
        function that takes a message string and a level (one of the
        MESSAGE_* constants).
        """
        self.messageHandler = messageHandler

    def progressIter(self, iterable, total=None, desc=None):
        """
        Wrap iterable in a tqdm progress bar when progress is on.
        """
        return tqdm(iterable, total=total, desc=desc, disable=not self.progress)

def getControls(controls):
    "Returns controls, or a default Controls instance if it is None"
    if controls is None:
        controls = Controls()
    return controls
