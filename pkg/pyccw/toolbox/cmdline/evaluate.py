"""
Scores one CCW design against the constraints and writes the metrics
and per constraint verdicts as JSON. Exits with the constraint failure
status if any constraint fails.
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
from pyccw.toolbox.design import designcommon
from pyccw.toolbox.design import evaluate
from pyccw.toolbox.cmdline import cmdcommon

COMMAND = 'ccw_evaluate'

def getCmdargs(argv=None):
    """
    Get commandline arguments
    """
    p = argparse.ArgumentParser(prog=COMMAND,
            description="Evaluate a CCW gate design against the constraints")
    p.add_argument("-o", "--output", help="Output JSON file (required)")
    p.add_argument("--targetgradient", type=units.gradient,
            help="Also report the drive current giving this gradient, T_per_m")
    cmdcommon.addDesignArgs(p)
    cmdcommon.addConstraintArgs(p)
    cmdcommon.addThermalArgs(p)
    cmdcommon.addModelArgs(p)
    cmdcommon.addSolverArgs(p)

    cmdargs = p.parse_args(argv)
    if cmdargs.output is None:
        print("Must specify output file name")
        p.print_help()
        sys.exit(cmdcommon.EXIT_INPUT_ERROR)
    return cmdargs

def runEvaluate(cmdargs, argv):
    """
    Evaluate the design and write the report.
    """
    runConfig = cmdcommon.RunConfig(COMMAND, cmdargs, [], cmdargs.output)
    controls = cmdcommon.getControls(cmdargs)
    if runConfig.echoUnits:
        runConfig.echo(controls)

    design = designcommon.DesignPoint(**cmdcommon.getDesignValues(cmdargs))
    constraints = cmdcommon.getConstraints(cmdargs)
    model = cmdcommon.getModel(cmdargs)
    env = cmdcommon.getEnvironment(cmdargs)
    metrics = evaluate.evaluate(design, env, model, constraints, controls)

    report = {'design': design._asdict(), 'metrics': metrics.asDict(),
            'constraints': constraints.asDict(),
            't_base_K': env.tBase, 'r_th_K_per_W': env.rTh, 'rrr': model.rrr}
    if cmdargs.targetgradient is not None:
        report['current_for_target_A'] = evaluate.currentForGradient(design,
                    cmdargs.targetgradient, controls, metrics.gradientPerAmp)
        report['target_gradient_T_per_m'] = cmdargs.targetgradient
    cmdcommon.writeJSON(cmdargs.output, report)
    cmdcommon.writeMetadata(runConfig, argv)

    msg = '%s: %.2f T/m at %g A, %.3e A/cm2, %.3f W at %.2f K' % (COMMAND,
                metrics.gradientAtCurrent, design.current, metrics.currentDensity,
                metrics.power, metrics.tOp)
    controls.messageHandler(msg, generic.MESSAGE_INFORMATION)
    if not metrics.feasible:
        failed = [verdict.name for verdict in metrics.verdicts if not verdict.passed]
        msg = '%s: infeasible, failed %s' % (COMMAND, ', '.join(failed))
        controls.messageHandler(msg, generic.MESSAGE_WARNING)
        return cmdcommon.EXIT_CONSTRAINT_FAILURE
    return cmdcommon.EXIT_OK

def run(argv=None):
    """
    Main function. Checks the command line parameters and calls
    the design evaluation.
    """
    return cmdcommon.runCommand(COMMAND, getCmdargs, runEvaluate, argv)
