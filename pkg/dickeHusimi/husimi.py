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

import logging

import numpy as np

from .coherent import glauberAmplitudes, spinAmplitudes, spinAmplitudesSphere
from .errors import ValidationError
from .quadrature import HusimiAmplitude, QuadratureSpec, convergeIntegral
from .variational import equilibriumMinimize

logger = logging.getLogger(__name__)

# Complex directions of the two plotted axes (alpha axis, z axis)
SLICES = {
    "position": (1.0, 1.0),
    "momentum": (1j, 1j),
}


class ExactAmplitude(HusimiAmplitude):
    """
    <alpha, z|psi> = sum_nm c_nm conj(phi_nm(alpha, z)), evaluated as a
    product of the photon table, the coefficient table and the spin table.
    """

    def __init__(self, g):
        self.g = g
        self.twoJ = g.params.twoJ

    def sphereFactors(self, theta, phi):
        return np.conj(spinAmplitudesSphere(theta, phi, self.twoJ))

    def evaluate(self, alphas, factors):
        photon = np.conj(glauberAmplitudes(alphas, self.g.nCut))
        return (photon @ self.g.coeffs) @ factors.T

    def planeAmplitude(self, alphas, zs):
        photon = np.conj(glauberAmplitudes(alphas, self.g.nCut))
        spin = np.conj(spinAmplitudes(zs, self.twoJ))
        return (photon @ self.g.coeffs) @ spin.T


class HusimiField:
    """
    Samples of a Husimi distribution on a two-dimensional slice: alpha runs
    along axis1 and z along axis2.
    """

    def __init__(self, slice, axis1, axis2, values, directions):
        self.slice = slice
        self.axis1 = axis1
        self.axis2 = axis2
        self.values = values
        self.directions = directions

    def rows(self):
        for a, u in enumerate(self.axis1):
            for b, v in enumerate(self.axis2):
                yield (u, v, self.values[a, b])


def sliceDirections(slice, directions=None):
    if slice == "custom":
        if directions is None:
            raise ValidationError("a custom slice needs explicit (alpha, z) directions")
        return complex(directions[0]), complex(directions[1])
    if slice not in SLICES:
        raise ValidationError("unknown slice %r" % (slice,))
    return SLICES[slice]


def _checkAxis(axis, name):
    axis = np.asarray(axis, dtype=float)
    if axis.ndim != 1 or len(axis) < 2 or np.any(np.diff(axis) <= 0):
        raise ValidationError("%s must be strictly increasing with at least two points" % name)
    return axis


def husimiExact(g, pt):
    """
    Psi(alpha, z) = |<alpha, z|psi>|^2 for a single phase-space point.
    """
    amplitude = ExactAmplitude(g).planeAmplitude(np.array([pt.alpha]), np.array([pt.z]))
    return float(np.abs(amplitude[0, 0]) ** 2)


def husimiGrid(g, slice, axis1, axis2, directions=None):
    dAlpha, dZ = sliceDirections(slice, directions)
    axis1 = _checkAxis(axis1, "axis1")
    axis2 = _checkAxis(axis2, "axis2")
    amplitude = ExactAmplitude(g).planeAmplitude(axis1 * dAlpha, axis2 * dZ)
    return HusimiField(slice, axis1, axis2, np.abs(amplitude) ** 2, (dAlpha, dZ))


def defaultQuadratureSpec(params, **kwargs):
    eq = equilibriumMinimize(params)
    return QuadratureSpec.forEquilibrium(eq.alphaE, **kwargs)


def husimiNorm(g, q=None):
    """
    The integral of Psi over the invariant measure; 1 for a normalized state.
    """
    if q is None:
        q = defaultQuadratureSpec(g.params)
    return convergeIntegral(ExactAmplitude(g), q, quantity="norm").norm


def wehrlEntropy(g, q=None):
    """
    W = -integral Psi ln Psi dmu, converged by doubling the quadrature.
    """
    if q is None:
        q = defaultQuadratureSpec(g.params)
    result = convergeIntegral(ExactAmplitude(g), q, quantity="entropy")
    logger.info("Wehrl entropy %.9g at lambda=%g, j=%g (norm %.9g)", result.entropy, g.params.coupling, g.j,
                result.norm, extra={"messageCode": "husimi:info"})
    return result.entropy


def wehrlLowerBound(j):
    """
    Entropy of a product of Glauber and spin coherent states.
    """
    return 1 + 2 * j / (2 * j + 1)


def findLocalMaxima(field, threshold=1e-3):
    """
    Grid points strictly larger than their eight neighbours and at least
    `threshold` times the global maximum, as (axis1, axis2, value) tuples.
    Edge points are never reported.
    """
    v = field.values
    if v.shape[0] < 3 or v.shape[1] < 3:
        return []
    inner = v[1:-1, 1:-1]
    isPeak = inner >= threshold * v.max()
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            if da == 0 and db == 0:
                continue
            neighbour = v[1 + da:v.shape[0] - 1 + da, 1 + db:v.shape[1] - 1 + db]
            isPeak &= inner > neighbour
    a, b = np.nonzero(isPeak)
    return [(field.axis1[i + 1], field.axis2[k + 1], v[i + 1, k + 1]) for i, k in zip(a, b)]
