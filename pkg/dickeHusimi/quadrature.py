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
# Quadrature over the four-dimensional phase space with the invariant measure
#
#     dmu = (2j+1)/pi^2 d^2alpha d^2z / (1+|z|^2)^2
#
# The z-plane is mapped onto the Bloch sphere, z = tan(theta/2) exp(i phi),
# which turns the z factor into (2j+1)/(4 pi) sin(theta) dtheta dphi.  The
# alpha factor is a tensor Gauss-Legendre rule on a square box.
#

from dataclasses import dataclass, replace
import logging
import math

import numpy as np

from .errors import QuadratureNonConvergenceError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_ALPHA_POINTS = 48
DEFAULT_THETA_POINTS = 64
DEFAULT_PHI_POINTS = 64
DEFAULT_REL_TOL = 1e-3
DEFAULT_MAX_REFINEMENTS = 2

# Packets are unit-width Gaussians in alpha; six widths leave < 1e-8 outside
ALPHA_MARGIN = 6.0
MIN_ALPHA_EXTENT = 8.0

# Psi below exp(LOG_CUTOFF) contributes nothing to -Psi ln Psi
LOG_CUTOFF = -700.0

# Amplitude entries evaluated per alpha chunk
CHUNK_ENTRIES = 1 << 21


@dataclass(frozen=True)
class QuadratureSpec:
    alphaExtent: float = MIN_ALPHA_EXTENT
    alphaPoints: int = DEFAULT_ALPHA_POINTS
    thetaPoints: int = DEFAULT_THETA_POINTS
    phiPoints: int = DEFAULT_PHI_POINTS
    relTol: float = DEFAULT_REL_TOL
    maxRefinements: int = DEFAULT_MAX_REFINEMENTS

    def __post_init__(self):
        for name in ("alphaPoints", "thetaPoints", "phiPoints"):
            if getattr(self, name) < 8:
                raise ValidationError("%s must be at least 8, got %r" % (name, getattr(self, name)))
        if not 0 < self.relTol <= 0.1:
            raise ValidationError("relTol must lie in (0, 0.1], got %r" % (self.relTol,))
        if not self.alphaExtent > 0:
            raise ValidationError("alphaExtent must be positive, got %r" % (self.alphaExtent,))
        if self.maxRefinements < 0:
            raise ValidationError("maxRefinements must be non-negative")

    @classmethod
    def forEquilibrium(cls, alphaE, **kwargs):
        """
        A box covering both packets at +-alphaE with ALPHA_MARGIN to spare.
        """
        return cls(alphaExtent=max(abs(alphaE) + ALPHA_MARGIN, MIN_ALPHA_EXTENT), **kwargs)

    def refined(self):
        return replace(self,
                       alphaPoints=2 * self.alphaPoints,
                       thetaPoints=2 * self.thetaPoints,
                       phiPoints=2 * self.phiPoints)


class PhaseSpaceRule:
    """
    Nodes and weights of the product rule.  Alpha weights include 1/pi and
    sphere weights include (2j+1)/(4 pi), so sum(w) over a normalized Husimi
    distribution is 1.
    """

    def __init__(self, spec, twoJ):
        self.spec = spec
        self.twoJ = twoJ

        x, w = np.polynomial.legendre.leggauss(spec.alphaPoints)
        x = x * spec.alphaExtent
        w = w * spec.alphaExtent
        re, im = np.meshgrid(x, x, indexing="ij")
        self.alphaNodes = (re + 1j * im).ravel()
        self.alphaWeights = np.outer(w, w).ravel() / math.pi

        t, wt = np.polynomial.legendre.leggauss(spec.thetaPoints)
        phi = 2 * math.pi * np.arange(spec.phiPoints) / spec.phiPoints
        theta, phi = np.meshgrid(np.arccos(t), phi, indexing="ij")
        self.theta = theta.ravel()
        self.phi = phi.ravel()
        wPhi = 2 * math.pi / spec.phiPoints
        self.sphereWeights = np.outer(wt, np.full(spec.phiPoints, wPhi)).ravel() * (twoJ + 1) / (4 * math.pi)


def phaseSpaceRule(spec, twoJ):
    return PhaseSpaceRule(spec, twoJ)


class HusimiAmplitude:
    """
    A state seen through its coherent-state amplitude <alpha, z|psi>.

    Subclasses precompute whatever depends on the sphere nodes only in
    `sphereFactors` and combine it with a chunk of alpha nodes in `evaluate`,
    which returns an array of shape (len(alphas), len(theta)).
    """

    twoJ = None

    def sphereFactors(self, theta, phi):
        raise NotImplementedError

    def evaluate(self, alphas, factors):
        raise NotImplementedError


class PhaseSpaceIntegral:

    def __init__(self, norm, entropy, spec):
        self.norm = norm
        self.entropy = entropy
        self.spec = spec

    def value(self, quantity):
        return getattr(self, quantity)

    def __repr__(self):
        return "PhaseSpaceIntegral(norm=%r, entropy=%r)" % (self.norm, self.entropy)


def integrateHusimi(amplitude, spec):
    """
    One pass of the product rule: returns the integrals of Psi and
    -Psi ln Psi.  Chunk sums are combined with an exactly rounded sum, so the
    result does not depend on how the work was scheduled.
    """
    rule = phaseSpaceRule(spec, amplitude.twoJ)
    factors = amplitude.sphereFactors(rule.theta, rule.phi)
    chunk = max(1, CHUNK_ENTRIES // len(rule.theta))

    normParts = []
    entropyParts = []
    for start in range(0, len(rule.alphaNodes), chunk):
        alphas = rule.alphaNodes[start:start + chunk]
        psi = np.abs(amplitude.evaluate(alphas, factors)) ** 2
        with np.errstate(divide="ignore"):
            logPsi = np.log(psi)
        integrand = np.where(logPsi > LOG_CUTOFF, psi * logPsi, 0.0)
        weights = rule.alphaWeights[start:start + chunk]
        normParts.append(float(weights @ (psi @ rule.sphereWeights)))
        entropyParts.append(-float(weights @ (integrand @ rule.sphereWeights)))

    return PhaseSpaceIntegral(math.fsum(normParts), math.fsum(entropyParts), spec)


def convergeIntegral(amplitude, spec, quantity="entropy"):
    """
    Double every point count until `quantity` ("norm" or "entropy") changes
    by less than relTol relative to its value.
    """
    previous = integrateHusimi(amplitude, spec)
    logger.debug("quadrature %dx%d / %dx%d: norm=%.12g entropy=%.12g", spec.alphaPoints, spec.alphaPoints,
                 spec.thetaPoints, spec.phiPoints, previous.norm, previous.entropy,
                 extra={"messageCode": "husimi:quadrature"})
    delta = float("nan")
    for _ in range(spec.maxRefinements):
        spec = spec.refined()
        current = integrateHusimi(amplitude, spec)
        logger.debug("quadrature %dx%d / %dx%d: norm=%.12g entropy=%.12g", spec.alphaPoints, spec.alphaPoints,
                     spec.thetaPoints, spec.phiPoints, current.norm, current.entropy,
                     extra={"messageCode": "husimi:quadrature"})
        delta = abs(current.value(quantity) - previous.value(quantity))
        if delta < spec.relTol * abs(current.value(quantity)):
            return current
        previous = current

    raise QuadratureNonConvergenceError("%s did not converge to relative tolerance %g (last change %.3g)"
                                        % (quantity, spec.relTol, delta),
                                        delta=delta, value=previous.value(quantity))
