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
# Parity-adapted coherent states ("Schroedinger cats")
#
#     |alpha, z, +-> = (|alpha>|z> +- |-alpha>|-z>) / N+-
#
# centred on the minimum of the coherent-state energy surface.  The
# equilibrium is found by minimizing the energy surface itself.  The older
# closed form is kept as `equilibriumPaper` for comparison; its alpha_e is
# twice the stationary value.
#

from dataclasses import dataclass
import logging
import math

import numpy as np
from scipy import optimize

from .coherent import logGlauberOverlap, logSpinOverlap, logSpinOverlapSphere
from .errors import DegenerateStateError, NonConvergenceError, ValidationError
from .model import criticalCoupling
from .quadrature import HusimiAmplitude, QuadratureSpec, convergeIntegral

logger = logging.getLogger(__name__)

PAPER_FORMULA = "paper_formula"
MINIMIZER = "minimizer"

NORMAL = "normal"
SUPERRADIANT = "superradiant"
CROSSOVER = "crossover"

# Cat overlap below which the two packets count as separated
CROSSOVER_OVERLAP = 1e-6

SEED_POINTS = 64
GRADIENT_TOL = 1e-12
# Gradient norm accepted, relative to max(1, |E|)
GRADIENT_REL_TOL = 1e-6
NEWTON_STEPS = 3


@dataclass(frozen=True)
class Equilibrium:
    alphaE: float
    zE: float
    source: str
    params: object
    energy: float = float("nan")

    @property
    def isNormal(self):
        return self.alphaE == 0.0 and self.zE == 0.0


def energySurface(p, alpha, z):
    """
    <alpha, z|H|alpha, z> for the product coherent state.
    """
    alpha = complex(alpha)
    z = complex(z)
    r2 = abs(z) ** 2
    return (p.omega * abs(alpha) ** 2
            + p.j * p.omega0 * (r2 - 1) / (r2 + 1)
            + p.coupling * math.sqrt(2 * p.j) * ((alpha + alpha.conjugate()) * (z.conjugate() + z)).real / (r2 + 1))


def _realSurface(p):
    """
    Energy surface on the real section with its gradient and Hessian.
    """
    c = 4 * p.coupling * math.sqrt(2 * p.j)
    jw0 = p.j * p.omega0

    def energy(x):
        a, z = x
        return p.omega * a * a + jw0 * (z * z - 1) / (z * z + 1) + c * a * z / (1 + z * z)

    def gradient(x):
        a, z = x
        d = (1 + z * z) ** 2
        return np.array([
            2 * p.omega * a + c * z / (1 + z * z),
            4 * jw0 * z / d + c * a * (1 - z * z) / d,
        ])

    def hessian(x):
        a, z = x
        d3 = (1 + z * z) ** 3
        mixed = c * (1 - z * z) / (1 + z * z) ** 2
        return np.array([
            [2 * p.omega, mixed],
            [mixed, 4 * jw0 * (1 - 3 * z * z) / d3 + 2 * c * a * z * (z * z - 3) / d3],
        ])

    return energy, gradient, hessian


def equilibriumPaper(p):
    """
    The older closed-form equilibrium, including its alpha_e prefactor
    sqrt(omega0/omega) lambda/lambda_c.
    """
    lc = criticalCoupling(p)
    if p.coupling < lc:
        return Equilibrium(0.0, 0.0, PAPER_FORMULA, p, -p.j * p.omega0)
    x = p.coupling / lc
    alphaE = -math.sqrt(2 * p.j) * math.sqrt(p.omega0 / p.omega) * x * math.sqrt(1 - x ** -4)
    zE = math.sqrt((x - 1 / x) / (x + 1 / x))
    return Equilibrium(alphaE, zE, PAPER_FORMULA, p, energySurface(p, alphaE, zE))


def equilibriumStationary(p):
    """
    Stationary point of the energy surface in closed form:
    z_e^2 = (1 - mu)/(1 + mu), alpha_e = -sqrt(2j) lambda/omega sqrt(1 - mu^2),
    mu = (lambda_c/lambda)^2.
    """
    lc = criticalCoupling(p)
    if p.coupling <= lc:
        return 0.0, 0.0
    mu = (lc / p.coupling) ** 2
    return -math.sqrt(2 * p.j) * p.coupling / p.omega * math.sqrt(1 - mu * mu), math.sqrt((1 - mu) / (1 + mu))


def _newtonPolish(x, gradient, hessian):
    """
    Up to NEWTON_STEPS full Newton steps, each kept only while it lowers
    the gradient norm.
    """
    x = np.asarray(x, dtype=float)
    gnorm = np.linalg.norm(gradient(x))
    for _ in range(NEWTON_STEPS):
        try:
            candidate = x - np.linalg.solve(hessian(x), gradient(x))
        except np.linalg.LinAlgError:
            break
        candidateNorm = np.linalg.norm(gradient(candidate))
        if not candidateNorm < gnorm:
            break
        x, gnorm = candidate, candidateNorm
    return x


def equilibriumMinimize(p):
    """
    Minimize the energy surface on its real section: a SEED_POINTS^2 grid
    over alpha in [-2 sqrt(2j) max(1, lambda/omega), 0], z in [0, 1) picks
    the start, then a trust-region Newton iteration polishes it.  The
    mirror minimum (-alpha_e, -z_e) is not reported.
    """
    if p.coupling <= criticalCoupling(p):
        return Equilibrium(0.0, 0.0, MINIMIZER, p, -p.j * p.omega0)

    energy, gradient, hessian = _realSurface(p)
    extent = 2 * math.sqrt(2 * p.j) * max(1.0, p.coupling / p.omega)
    alphas = np.linspace(-extent, 0.0, SEED_POINTS)
    zs = np.linspace(0.0, 1.0, SEED_POINTS, endpoint=False)
    a, z = np.meshgrid(alphas, zs, indexing="ij")
    grid = energy((a, z))
    i, k = np.unravel_index(np.argmin(grid), grid.shape)
    start = np.array([alphas[i], zs[k]])

    result = optimize.minimize(energy, start, jac=gradient, hess=hessian, method="trust-exact",
                               options={"gtol": GRADIENT_TOL})
    x = _newtonPolish(result.x, gradient, hessian)
    gnorm = float(np.linalg.norm(gradient(x)))
    bound = GRADIENT_REL_TOL * max(1.0, abs(float(energy(x))))
    if gnorm > bound:
        raise NonConvergenceError("energy surface minimization stopped with gradient %.3g (bound %.3g) "
                                  "at alpha=%r, z=%r" % (gnorm, bound, x[0], x[1]),
                                  alpha=float(x[0]), z=float(x[1]), gradient=gnorm)
    if not result.success:
        logger.debug("trust region stopped early (%s); gradient %.3g after Newton polish", result.message, gnorm,
                     extra={"messageCode": "variational:minimize"})
    alphaE, zE = float(x[0]), float(x[1])
    if zE < 0:
        alphaE, zE = -alphaE, -zE
    return Equilibrium(alphaE, zE, MINIMIZER, p, float(energy((alphaE, zE))))


def equilibriumDiscrepancy(p):
    """
    How the older closed form compares with the minimizer.
    """
    paper = equilibriumPaper(p)
    minimum = equilibriumMinimize(p)
    ratio = paper.alphaE / minimum.alphaE if minimum.alphaE != 0.0 else float("nan")
    return {
        "alpha_e_paper": paper.alphaE,
        "alpha_e_minimizer": minimum.alphaE,
        "alpha_ratio": ratio,
        "z_e_difference": paper.zE - minimum.zE,
        "energy_paper": paper.energy,
        "energy_minimizer": minimum.energy,
    }


def catOverlap(alphaE, zE, j):
    """
    <alpha_e, z_e | -alpha_e, -z_e> for real centres.
    """
    twoJ = int(round(2 * j))
    return math.exp(-2 * alphaE * alphaE) * ((1 - zE * zE) / (1 + zE * zE)) ** twoJ


def catNorm(alphaE, zE, j, paritySign):
    """
    N+- = sqrt(2) (1 +- <alpha_e, z_e|-alpha_e, -z_e>)^(1/2)
    """
    if paritySign not in (1, -1):
        raise ValidationError("parity sign must be +1 or -1, got %r" % (paritySign,))
    inner = 1 + paritySign * catOverlap(alphaE, zE, j)
    if inner <= 0.0:
        raise DegenerateStateError("the odd cat state vanishes at alpha_e = z_e = 0")
    return math.sqrt(2) * math.sqrt(inner)


class CatState(HusimiAmplitude):

    def __init__(self, alphaE, zE, j, paritySign=1):
        self.alphaE = float(alphaE)
        self.zE = float(zE)
        self.j = j
        self.twoJ = int(round(2 * j))
        self.paritySign = paritySign
        self.norm = catNorm(self.alphaE, self.zE, j, paritySign)
        self.alphaReach = abs(self.alphaE)

    @classmethod
    def fromEquilibrium(cls, eq, paritySign=1):
        return cls(eq.alphaE, eq.zE, eq.params.j, paritySign)

    def amplitude(self, alpha, z):
        """
        <alpha, z|alpha_e, z_e, +->, broadcast over alpha and z.
        """
        first = logGlauberOverlap(alpha, self.alphaE) + logSpinOverlap(z, self.zE, self.j)
        second = logGlauberOverlap(alpha, -self.alphaE) + logSpinOverlap(z, -self.zE, self.j)
        return (np.exp(first) + self.paritySign * np.exp(second)) / self.norm

    def sphereFactors(self, theta, phi):
        return (np.exp(logSpinOverlapSphere(theta, phi, self.zE, self.j)),
                np.exp(logSpinOverlapSphere(theta, phi, -self.zE, self.j)))

    def evaluate(self, alphas, factors):
        first = np.exp(logGlauberOverlap(alphas, self.alphaE))
        second = np.exp(logGlauberOverlap(alphas, -self.alphaE))
        return (np.outer(first, factors[0]) + self.paritySign * np.outer(second, factors[1])) / self.norm


class PacketSuperposition(HusimiAmplitude):
    """
    Equal-weight superposition of coherent packets |alpha_i>|z_i>.  For well
    separated packets its Wehrl entropy exceeds that of one packet by ln(s).
    """

    def __init__(self, centers, j):
        if not centers:
            raise ValidationError("at least one packet centre is required")
        self.centers = [(complex(a), complex(z)) for a, z in centers]
        self.j = j
        self.twoJ = int(round(2 * j))
        gram = np.array([[np.exp(logGlauberOverlap(a, b) + logSpinOverlap(z, w, j))
                          for b, w in self.centers] for a, z in self.centers])
        self.norm = math.sqrt(float(np.sum(gram).real))
        self.alphaReach = max(abs(a) for a, _ in self.centers)

    def sphereFactors(self, theta, phi):
        return [np.exp(logSpinOverlapSphere(theta, phi, z, self.j)) for _, z in self.centers]

    def evaluate(self, alphas, factors):
        total = 0
        for (a, _), spin in zip(self.centers, factors):
            total = total + np.outer(np.exp(logGlauberOverlap(alphas, a)), spin)
        return total / self.norm


def husimiVariational(c, pt):
    return float(abs(c.amplitude(pt.alpha, pt.z)) ** 2)


class WehrlEstimate:
    """
    Closed-form Wehrl entropy of the even cat.  `value` is None in the
    crossover regime, where only the quadrature path gives a number.
    """

    def __init__(self, value, regime, overlap):
        self.value = value
        self.regime = regime
        self.overlap = overlap

    def __repr__(self):
        return "WehrlEstimate(value=%r, regime=%r)" % (self.value, self.regime)


def wehrlVariationalAnalytic(p, eq=None):
    if eq is None:
        eq = equilibriumMinimize(p)
    base = 1 + 2 * p.j / (2 * p.j + 1)
    if eq.isNormal:
        return WehrlEstimate(base, NORMAL, 1.0)
    overlap = catOverlap(eq.alphaE, eq.zE, p.j)
    if overlap < CROSSOVER_OVERLAP:
        return WehrlEstimate(base + math.log(2), SUPERRADIANT, overlap)
    return WehrlEstimate(None, CROSSOVER, overlap)


def wehrlVariationalQuadrature(c, q=None):
    """
    Wehrl entropy of a cat (or any packet superposition) by quadrature.
    """
    if q is None:
        q = QuadratureSpec.forEquilibrium(c.alphaReach)
    return convergeIntegral(c, q, quantity="entropy").entropy


def husimiVariationalGrid(c, directions, axis1, axis2):
    dAlpha, dZ = directions
    alpha = np.asarray(axis1, dtype=float)[:, None] * dAlpha
    z = np.asarray(axis2, dtype=float)[None, :] * dZ
    return np.abs(c.amplitude(alpha, z)) ** 2
