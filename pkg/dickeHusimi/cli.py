# Copyright 2026 The dicke-husimi authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import argparse
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
import logging
import os
import sys
import traceback

import numpy as np

from .csvserialize import CSVSerializer, JSONSerializer
from .eigensolve import (
    DEFAULT_E_TOL, DEFAULT_INITIAL_CUTOFF, DEFAULT_MAX_CUTOFF, DEFAULT_W_TOL,
    convergeCutoff, meanExcitationFraction, observables,
)
from .errors import DickeHusimiError, ValidationError
from .husimi import HusimiField, husimiGrid, sliceDirections, wehrlEntropy
from .model import EVEN, ODD, ModelParams
from .quadrature import (
    DEFAULT_ALPHA_POINTS, DEFAULT_MAX_REFINEMENTS, DEFAULT_PHI_POINTS, DEFAULT_REL_TOL,
    DEFAULT_THETA_POINTS, QuadratureSpec,
)
from .variational import (
    MINIMIZER, PAPER_FORMULA, CatState, equilibriumDiscrepancy, husimiVariationalGrid,
    wehrlVariationalAnalytic, wehrlVariationalQuadrature,
)
from .zeros import ZGridSpec, conformalGrid, equilibriumFor, fringeLines, zeroSurface

logger = logging.getLogger(__name__)

MAX_CUTOFF_ENV = "DICKE_HUSIMI_MAX_CUTOFF"
LOG_FORMAT = "[%(messageCode)s] %(message)s"

# Half-width of the default alpha axis beyond the packet centre
ALPHA_AXIS_MARGIN = 4.0

WEHRL_HEADERS = {
    "exact": ("lambda", "W"),
    "variational": ("lambda", "alpha_e", "z_e", "W_analytic", "W_quadrature", "source"),
    "both": ("lambda", "W", "alpha_e", "z_e", "W_analytic", "W_quadrature", "source"),
}
EQUILIBRIUM_HEADER = ("lambda", "alpha_e", "z_e", "W_analytic", "W_quadrature", "source")
HUSIMI_HEADER = ("axis1", "axis2", "psi")
ZEROS_HEADER = ("family", "line_id", "re_alpha", "im_alpha", "re_z", "im_z")


class MessageCodeFilter(logging.Filter):
    """
    Gives records logged without a message code one derived from the
    logger name and level, e.g. "cli:warning".
    """

    def filter(self, record):
        if not hasattr(record, "messageCode"):
            record.messageCode = "%s:%s" % (record.name.rsplit(".", 1)[-1], record.levelname.lower())
        return True


def setupLogging(level="INFO"):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(MessageCodeFilter())
    packageLogger = logging.getLogger(__package__)
    packageLogger.handlers = [handler]
    packageLogger.setLevel(level)


def maxCutoffDefault():
    value = os.environ.get(MAX_CUTOFF_ENV)
    if value is None:
        return DEFAULT_MAX_CUTOFF
    try:
        return int(value)
    except ValueError:
        raise ValidationError("%s must be an integer, got %r" % (MAX_CUTOFF_ENV, value))


def resolveOutPath(outPath, defaultName):
    """
    Path to write to: `outPath` itself, or `defaultName` inside it when it is
    an existing directory.  None means standard output.
    """
    if outPath is None:
        return None
    if os.path.isdir(outPath):
        return os.path.join(outPath, defaultName)
    if outPath.endswith(os.sep):
        # Looks like a directory, but isn't one
        raise ValidationError("Directory %s does not exist" % outPath)
    if not os.path.isdir(os.path.dirname(os.path.abspath(outPath))):
        raise ValidationError("Directory %s does not exist" % os.path.dirname(os.path.abspath(outPath)))
    return outPath


@contextmanager
def openOutput(path):
    if path is None:
        yield sys.stdout
        return
    logger.info("Writing %s", path, extra={"messageCode": "cli:info"})
    with open(path, "w", newline="", encoding="utf-8") as fout:
        yield fout


class RunConfig:
    """
    Validated settings of one invocation.  Every flag a subcommand reads is
    checked here, before any computation starts.
    """

    def __init__(self, args):
        self.command = args.command
        self.params = ModelParams(args.omega, args.omega0, args.coupling, args.j)
        self.format = getattr(args, "format", "csv")
        self.threads = getattr(args, "threads", 1)
        if self.threads < 1:
            raise ValidationError("--threads must be at least 1")

        self.eTol = getattr(args, "e_tol", DEFAULT_E_TOL)
        self.wTol = getattr(args, "w_tol", DEFAULT_W_TOL)
        self.initialCutoff = getattr(args, "initial_cutoff", DEFAULT_INITIAL_CUTOFF)
        self.maxCutoff = getattr(args, "max_cutoff", None)
        if self.maxCutoff is None:
            self.maxCutoff = maxCutoffDefault()
        self.sector = EVEN if getattr(args, "sector", "even") == "even" else None
        if not (self.eTol > 0 and self.wTol > 0):
            raise ValidationError("--e-tol and --w-tol must be positive")
        if self.initialCutoff < 1 or self.maxCutoff < 2 * self.initialCutoff:
            raise ValidationError("cutoffs must satisfy 1 <= 2 x --initial-cutoff <= --max-cutoff (got %d, %d)"
                                  % (self.initialCutoff, self.maxCutoff))

        self.quadrature = {
            "alphaPoints": getattr(args, "alpha_points", DEFAULT_ALPHA_POINTS),
            "thetaPoints": getattr(args, "theta_points", DEFAULT_THETA_POINTS),
            "phiPoints": getattr(args, "phi_points", DEFAULT_PHI_POINTS),
            "relTol": getattr(args, "rel_tol", DEFAULT_REL_TOL),
            "maxRefinements": getattr(args, "max_refinements", DEFAULT_MAX_REFINEMENTS),
        }
        QuadratureSpec(**self.quadrature)

        self.lambdas = self._lambdas(args)
        self.method = getattr(args, "method", None)
        self.source = getattr(args, "source", MINIMIZER)
        self.parity = ODD if getattr(args, "parity", "even") == "odd" else EVEN
        self.slice = getattr(args, "slice", "position")
        self.directions = sliceDirections(self.slice)
        self.alphaRange = self._range(args, "alpha", allowDefault=True)
        self.zRange = self._range(args, "z", allowDefault=False)
        self.branch = getattr(args, "l", 0)
        self.fringes = getattr(args, "fringes", False)
        if self.command == "zeros":
            self.zGrid = ZGridSpec(args.re_min, args.re_max, args.im_min, args.im_max, args.lines, args.points)

        self.outPath = resolveOutPath(getattr(args, "out", None), self.defaultOutName())

    def _lambdas(self, args):
        if not hasattr(args, "steps"):
            return [self.params.coupling]
        lo = self.params.coupling if args.lambda_from is None else args.lambda_from
        hi = lo if args.lambda_to is None else args.lambda_to
        if lo < 0 or hi < lo:
            raise ValidationError("lambda range must satisfy 0 <= --lambda-from <= --lambda-to (got %g, %g)"
                                  % (lo, hi))
        if args.steps < 1:
            raise ValidationError("--steps must be at least 1")
        return [float(x) for x in np.linspace(lo, hi, args.steps)]

    def _range(self, args, name, allowDefault):
        lo = getattr(args, name + "_min", None)
        hi = getattr(args, name + "_max", None)
        steps = getattr(args, name + "_steps", None)
        if steps is None:
            return None
        if steps < 2:
            raise ValidationError("--%s-steps must be at least 2" % name)
        if (lo is None) != (hi is None) or (lo is None and not allowDefault):
            raise ValidationError("--%s-min and --%s-max must be given together" % (name, name))
        if lo is not None and not lo < hi:
            raise ValidationError("--%s-min must be below --%s-max" % (name, name))
        return lo, hi, steps

    def defaultOutName(self):
        if self.command == "ground":
            return "ground-state.%s" % self.format
        if self.command == "zeros" and self.fringes:
            return "fringes.json"
        return "%s.%s" % (self.command, self.format)

    def paramsAt(self, coupling):
        return self.params.withCoupling(coupling)

    def quadratureSpec(self, alphaE):
        return QuadratureSpec.forEquilibrium(alphaE, **self.quadrature)

    def groundState(self, p):
        return convergeCutoff(p, eTol=self.eTol, wTol=self.wTol, nCut0=self.initialCutoff,
                              maxCutoff=self.maxCutoff, sector=self.sector)


def _writeRows(config, header, rows):
    """
    Streams rows as CSV, flushing each one, or collects them into a JSON list.
    """
    with openOutput(config.outPath) as fout:
        if config.format == "json":
            JSONSerializer().serialize([dict(zip(header, row)) for row in rows], fout)
        else:
            CSVSerializer(fout, header).serialize(rows)


def _sweep(config, worker):
    """
    Results of `worker` over the lambda values, yielded in lambda order
    whatever order the pool finishes them in.
    """
    executor = ThreadPoolExecutor(max_workers=config.threads)
    try:
        for row in executor.map(worker, config.lambdas):
            yield row
    finally:
        executor.shutdown(wait=True, cancel_futures=True)


def cmdGround(config):
    p = config.params
    g = config.groundState(p)
    meanPhotons, meanJz, parity = observables(g)
    print("energy: %.17g" % g.energy)
    print("n_c: %d" % g.nCut)
    print("<a+a>: %.17g" % meanPhotons)
    print("<Jz>: %.17g" % meanJz)
    print("<parity>: %+.17g" % parity)
    print("excitation fraction: %.17g" % meanExcitationFraction(g))
    sys.stdout.flush()

    if config.outPath is not None:
        with openOutput(config.outPath) as fout:
            if config.format == "json":
                JSONSerializer().serialize(g.toJSON(), fout)
            else:
                CSVSerializer(fout, ("n", "m", "c")).serialize(
                    (entry["n"], entry["m"], entry["c"]) for entry in g.toJSON()["coeffs"])
    return 0


def _axes(config, alphaE):
    lo, hi, steps = config.alphaRange
    if lo is None:
        hi = max(ALPHA_AXIS_MARGIN, abs(alphaE) + ALPHA_AXIS_MARGIN)
        lo = -hi
    return np.linspace(lo, hi, steps), np.linspace(*config.zRange)


def cmdHusimi(config):
    p = config.params
    eq = equilibriumFor(p, config.source)
    axis1, axis2 = _axes(config, eq.alphaE)
    if config.method == "exact":
        field = husimiGrid(config.groundState(p), config.slice, axis1, axis2)
    else:
        cat = CatState.fromEquilibrium(eq, config.parity)
        values = husimiVariationalGrid(cat, config.directions, axis1, axis2)
        field = HusimiField(config.slice, axis1, axis2, values, config.directions)

    if config.format == "json":
        with openOutput(config.outPath) as fout:
            JSONSerializer().serialize({
                "slice": field.slice,
                "method": config.method,
                "params": p.asDict(),
                "axis1": field.axis1.tolist(),
                "axis2": field.axis2.tolist(),
                "psi": field.values.tolist(),
            }, fout)
    else:
        _writeRows(config, HUSIMI_HEADER, field.rows())
    return 0


def _variationalColumns(config, p):
    eq = equilibriumFor(p, config.source)
    analytic = wehrlVariationalAnalytic(p, eq)
    quadrature = wehrlVariationalQuadrature(CatState.fromEquilibrium(eq), config.quadratureSpec(eq.alphaE))
    return (eq.alphaE, eq.zE, analytic.value, quadrature, eq.source)


def cmdWehrl(config):
    method = config.method or "both"

    def worker(coupling):
        p = config.paramsAt(coupling)
        row = (coupling,)
        if method in ("exact", "both"):
            alphaE = equilibriumFor(p, MINIMIZER).alphaE
            row += (wehrlEntropy(config.groundState(p), config.quadratureSpec(alphaE)),)
        if method in ("variational", "both"):
            row += _variationalColumns(config, p)
        return row

    _writeRows(config, WEHRL_HEADERS[method], _sweep(config, worker))
    return 0


def cmdEquilibrium(config):
    sources = (PAPER_FORMULA, MINIMIZER) if config.source == "both" else (config.source,)

    def worker(coupling):
        p = config.paramsAt(coupling)
        rows = []
        for source in sources:
            eq = equilibriumFor(p, source)
            rows.append((coupling, eq.alphaE, eq.zE, wehrlVariationalAnalytic(p, eq).value,
                         wehrlVariationalQuadrature(CatState.fromEquilibrium(eq), config.quadratureSpec(eq.alphaE)),
                         source))
        if len(sources) == 2:
            logger.debug("lambda=%g: %r", coupling, equilibriumDiscrepancy(p),
                         extra={"messageCode": "cli:equilibrium"})
        return rows

    _writeRows(config, EQUILIBRIUM_HEADER, (row for rows in _sweep(config, worker) for row in rows))
    return 0


def cmdZeros(config):
    p = config.params
    surface = zeroSurface(p, config.branch, config.source)
    if config.fringes:
        with openOutput(config.outPath) as fout:
            JSONSerializer().serialize(fringeLines(surface.equilibrium, p.j, config.branch).toJSON(), fout)
        return 0

    curves = conformalGrid(surface, config.zGrid)
    if config.format == "json":
        with openOutput(config.outPath) as fout:
            JSONSerializer().serialize([{
                "family": c.family,
                "line_id": c.lineId,
                "alpha": [[a.real, a.imag] for a in c.alpha],
                "z": [[z.real, z.imag] for z in c.z],
            } for c in curves], fout)
    else:
        _writeRows(config, ZEROS_HEADER, (row for c in curves for row in c.rows()))
    return 0


COMMANDS = {
    "ground": cmdGround,
    "husimi": cmdHusimi,
    "wehrl": cmdWehrl,
    "equilibrium": cmdEquilibrium,
    "zeros": cmdZeros,
}


def buildParser():
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--j", type=float, required=True, help="Spin length j = N/2 (2j must be an integer)")
    model.add_argument("--omega", type=float, default=1.0, help="Field frequency")
    model.add_argument("--omega0", type=float, default=1.0, help="Atomic level splitting")
    model.add_argument("--lambda", dest="coupling", type=float, default=0.0, help="Coupling constant")
    model.add_argument("--log-level", default="INFO", choices=("DEBUG", "INFO", "WARNING", "ERROR"),
                       help="Logging threshold for messages on stderr")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", "-o", help="File or directory to write output to (default: standard output)")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--format", choices=("csv", "json"), default="csv", help="Output format")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--e-tol", type=float, default=DEFAULT_E_TOL, help="Ground energy tolerance")
    solver.add_argument("--w-tol", type=float, default=DEFAULT_W_TOL, help="Photon tail weight tolerance")
    solver.add_argument("--initial-cutoff", type=int, default=DEFAULT_INITIAL_CUTOFF, help="First photon cutoff")
    solver.add_argument("--max-cutoff", type=int,
                        help="Photon cutoff ceiling (default: $%s or %d)" % (MAX_CUTOFF_ENV, DEFAULT_MAX_CUTOFF))
    solver.add_argument("--sector", choices=("even", "full"), default="even",
                        help="Diagonalize the even-parity sector or the full matrix")

    quadrature = argparse.ArgumentParser(add_help=False)
    quadrature.add_argument("--alpha-points", type=int, default=DEFAULT_ALPHA_POINTS,
                            help="Gauss-Legendre points per alpha axis")
    quadrature.add_argument("--theta-points", type=int, default=DEFAULT_THETA_POINTS, help="Points in cos(theta)")
    quadrature.add_argument("--phi-points", type=int, default=DEFAULT_PHI_POINTS, help="Points in phi")
    quadrature.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL, help="Quadrature tolerance")
    quadrature.add_argument("--max-refinements", type=int, default=DEFAULT_MAX_REFINEMENTS,
                            help="Grid doublings before giving up")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--lambda-from", type=float, help="First coupling of the sweep (default: --lambda)")
    sweep.add_argument("--lambda-to", type=float, help="Last coupling of the sweep (default: --lambda-from)")
    sweep.add_argument("--steps", type=int, default=1, help="Number of couplings in the sweep")
    sweep.add_argument("--threads", type=int, default=1, help="Worker threads for the sweep")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--source", choices=(MINIMIZER, PAPER_FORMULA), default=MINIMIZER,
                        help="Where the equilibrium point comes from")

    parser = argparse.ArgumentParser(prog="dicke-husimi",
                                     description="Phase-space analysis of the Dicke model ground state")
    commands = parser.add_subparsers(dest="command", required=True)

    ground = commands.add_parser("ground", parents=[model, output, solver], help="Converged ground state and observables")
    ground.add_argument("--format", choices=("csv", "json"), default="json",
                        help="Format of the saved state: JSON document or n,m,c table")

    husimi = commands.add_parser("husimi", parents=[model, output, table, solver, source],
                                 help="Husimi distribution on a position or momentum slice")
    husimi.add_argument("--method", choices=("exact", "variational"), default="exact")
    husimi.add_argument("--slice", choices=("position", "momentum"), default="position")
    husimi.add_argument("--parity", choices=("even", "odd"), default="even", help="Cat parity (variational)")
    husimi.add_argument("--alpha-min", type=float)
    husimi.add_argument("--alpha-max", type=float)
    husimi.add_argument("--alpha-steps", type=int, default=81)
    husimi.add_argument("--z-min", type=float, default=-2.0)
    husimi.add_argument("--z-max", type=float, default=2.0)
    husimi.add_argument("--z-steps", type=int, default=81)

    wehrl = commands.add_parser("wehrl", parents=[model, output, table, solver, quadrature, sweep, source],
                                help="Wehrl entropy over a coupling sweep")
    wehrl.add_argument("--method", choices=("exact", "variational", "both"), default="both")

    equilibrium = commands.add_parser("equilibrium", parents=[model, output, table, quadrature, sweep],
                                      help="Equilibrium points and variational entropies over a coupling sweep")
    equilibrium.add_argument("--source", choices=(MINIMIZER, PAPER_FORMULA, "both"), default="both")

    zeros = commands.add_parser("zeros", parents=[model, output, table, source],
                                help="Zero surface of the variational Husimi distribution")
    zeros.add_argument("--l", type=int, default=0, help="Branch label of the zero surface")
    zeros.add_argument("--fringes", action="store_true", help="Write the dark-fringe lines as JSON instead")
    zeros.add_argument("--re-min", type=float, default=ZGridSpec.reMin)
    zeros.add_argument("--re-max", type=float, default=ZGridSpec.reMax)
    zeros.add_argument("--im-min", type=float, default=ZGridSpec.imMin)
    zeros.add_argument("--im-max", type=float, default=ZGridSpec.imMax)
    zeros.add_argument("--lines", type=int, default=ZGridSpec.lines, help="Grid lines per family")
    zeros.add_argument("--points", type=int, default=ZGridSpec.points, help="Points per grid line")
    return parser


def main(argv=None):
    args = buildParser().parse_args(argv)
    setupLogging(args.log_level)
    try:
        config = RunConfig(args)
        return COMMANDS[config.command](config)
    except DickeHusimiError as ex:
        logger.error(ex.message, extra={"messageCode": "cli:error"})
        return ex.exitCode
    except Exception as ex:
        logger.error("Exception %s \nTraceback %s", ex, traceback.format_tb(sys.exc_info()[2]),
                     extra={"messageCode": "cli:error"})
        return 1
