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

#
# Zeros of the even-cat Husimi distribution.  Psi vanishes where the two
# packet amplitudes cancel,
#
#     2 alpha alpha_e + 2j ln((1 + z z_e)/(1 - z z_e)) = i pi (2l + 1),
#
# so each integer l gives a complex surface alpha = f_l(z).  For large j the
# surfaces flatten onto straight "dark fringes" in the rescaled variable
# beta = sqrt(2j) z.
#

from dataclasses import dataclass
import logging
import math

import numpy as np

from .errors import NoZerosError, SingularInputError, ValidationError
from .variational import MINIMIZER, PAPER_FORMULA, equilibriumMinimize, equilibriumPaper

logger = logging.getLogger(__name__)

# |1 +- z z_e| below this is a branch point of the surface
BRANCH_POINT_TOL = 1e-12

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


def _requireSuperradiant(eq):
    if eq.alphaE == 0.0:
        raise NoZerosError("the Husimi distribution has no zeros in the normal phase (lambda=%g)"
                           % eq.params.coupling)


@dataclass(frozen=True)
class ZeroSurface:
    """
    Surface number `l` of zeros around a superradiant equilibrium.
    """
    l: int
    equilibrium: object
    j: float

    def __post_init__(self):
        _requireSuperradiant(self.equilibrium)

    @property
    def offset(self):
        """
        alpha at z = 0.
        """
        return 1j * math.pi * (2 * self.l + 1) / (2 * self.equilibrium.alphaE)


def equilibriumFor(p, source=MINIMIZER):
    if source == MINIMIZER:
        return equilibriumMinimize(p)
    if source == PAPER_FORMULA:
        return equilibriumPaper(p)
    raise ValidationError("unknown equilibrium source %r" % (source,))


def zeroSurface(p, l, source=MINIMIZER):
    return ZeroSurface(l, equilibriumFor(p, source), p.j)


def zeroSurfaceAlpha(s, z):
    """
    alpha = (j/alpha_e) Ln((1 - z z_e)/(1 + z z_e)) + i pi (2l+1)/(2 alpha_e)
    on the principal branch.  Accepts a scalar or an array of z.
    """
    alphaE = s.equilibrium.alphaE
    w = np.asarray(z, dtype=complex) * s.equilibrium.zE
    if np.any(np.abs(1 - w) < BRANCH_POINT_TOL) or np.any(np.abs(1 + w) < BRANCH_POINT_TOL):
        raise SingularInputError("z z_e = +-1 is a branch point of the zero surface")
    alpha = s.j / alphaE * np.log((1 - w) / (1 + w)) + s.offset
    if np.ndim(alpha) == 0:
        return complex(alpha)
    return alpha


@dataclass(frozen=True)
class ZGridSpec:
    reMin: float = -1.0
    reMax: float = 1.0
    imMin: float = -1.0
    imMax: float = 1.0
    lines: int = 21
    points: int = 201

    def __post_init__(self):
        if not (self.reMin < self.reMax and self.imMin < self.imMax):
            raise ValidationError("z grid ranges must be increasing")
        if self.lines < 1 or self.points < 2:
            raise ValidationError("a z grid needs at least one line of two points")


class ConformalCurve:
    """
    One connected polyline of a mapped grid line.
    """

    def __init__(self, family, lineId, z, alpha):
        self.family = family
        self.lineId = lineId
        self.z = z
        self.alpha = alpha

    def rows(self):
        for z, a in zip(self.z, self.alpha):
            yield (self.family, self.lineId, a.real, a.imag, z.real, z.imag)


def _splitAtJumps(z, alpha, threshold):
    breaks = np.nonzero(np.abs(np.diff(alpha)) > threshold)[0] + 1
    return zip(np.split(z, breaks), np.split(alpha, breaks))


def conformalGrid(s, spec=None):
    """
    Images of the lines Re z = const ("vertical") and Im z = const
    ("horizontal") under zeroSurfaceAlpha.  A line is cut where it crosses
    the branch cut of the logarithm, so every curve is smooth; each piece gets
    its own line id.
    """
    if spec is None:
        spec = ZGridSpec()
    re = np.linspace(spec.reMin, spec.reMax, spec.lines)
    im = np.linspace(spec.imMin, spec.imMax, spec.lines)
    reFine = np.linspace(spec.reMin, spec.reMax, spec.points)
    imFine = np.linspace(spec.imMin, spec.imMax, spec.points)
    # A branch crossing jumps Im alpha by 2 pi j/|alpha_e|
    threshold = math.pi * s.j / abs(s.equilibrium.alphaE)

    lines = [(VERTICAL, x + 1j * imFine) for x in re] + [(HORIZONTAL, reFine + 1j * y) for y in im]
    curves = []
    for family, z in lines:
        alpha = zeroSurfaceAlpha(s, z)
        for zPart, alphaPart in _splitAtJumps(z, alpha, threshold):
            if len(zPart) > 1:
                curves.append(ConformalCurve(family, len(curves), zPart, alphaPart))
    logger.debug("conformal grid l=%d: %d curves from %d lines", s.l, len(curves), len(lines),
                 extra={"messageCode": "zeros:info"})
    return curves


class FringeLines:
    """
    Dark fringes of branch l in the (Re beta, Re alpha) and (Im beta, Im alpha)
    planes: alpha = slope * beta + intercept.
    """

    def __init__(self, l, slope, interceptPosition, interceptMomentum):
        self.l = l
        self.slope = slope
        self.interceptPosition = interceptPosition
        self.interceptMomentum = interceptMomentum

    def toJSON(self):
        return {
            "l": self.l,
            "slope": self.slope,
            "intercept_position": self.interceptPosition,
            "intercept_momentum": self.interceptMomentum,
        }


def fringeLines(eq, j, l):
    _requireSuperradiant(eq)
    betaE = math.sqrt(2 * j) * eq.zE
    return FringeLines(l, -betaE / eq.alphaE, 0.0, math.pi * (2 * l + 1) / (2 * eq.alphaE))


def fringeBranches(eq, window):
    """
    Branch labels l whose momentum intercept pi(2l+1)/(2 alpha_e) lies in
    the closed interval `window`.
    """
    _requireSuperradiant(eq)
    lo, hi = window
    if lo > hi:
        raise ValidationError("fringe window must be ordered, got %r" % (window,))
    ends = sorted(eq.alphaE * y / math.pi - 0.5 for y in (lo, hi))
    return list(range(math.ceil(ends[0]), math.floor(ends[1]) + 1))


def countFringes(eq, j, window):
    """
    Number of dark fringes crossing the momentum axis inside `window`.
    """
    return len([f for f in (fringeLines(eq, j, l) for l in fringeBranches(eq, window))
                if window[0] <= f.interceptMomentum <= window[1]])
