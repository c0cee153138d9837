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
# Glauber and spin-j coherent states.
#
#     <n|alpha>   = exp(-|alpha|^2/2) alpha^n / sqrt(n!)
#     <j,m|z>     = (1+|z|^2)^-j sqrt(C(2j, j+m)) z^(j+m)
#
# Everything is evaluated as log-magnitude plus phase; n! and (1+conj(z) w)^2j
# overflow long before the cutoffs and spins used for the figures.
#

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, xlogy


@dataclass(frozen=True)
class PhasePoint:
    alpha: complex
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "z", complex(self.z))
        if not (np.isfinite(self.alpha) and np.isfinite(self.z)):
            raise ValueError("phase-space coordinates must be finite")

    def antipode(self):
        return PhasePoint(-self.alpha, -self.z)


def _logPower(base, exponent):
    """
    log(base**exponent) for complex base, with 0**0 = 1 and 0**k = 0.
    """
    base = np.asarray(base, dtype=complex)
    exponent = np.asarray(exponent)
    with np.errstate(divide="ignore"):
        magnitude = xlogy(exponent, np.abs(base))
    return magnitude + 1j * exponent * np.angle(base)


def logBinomial(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def logGlauberAmplitudes(alpha, nMax):
    """
    log <n|alpha> for n = 0..nMax, broadcast over the shape of `alpha`
    (the photon axis is last).
    """
    alpha = np.asarray(alpha, dtype=complex)[..., None]
    n = np.arange(nMax + 1)
    return -0.5 * np.abs(alpha) ** 2 + _logPower(alpha, n) - 0.5 * gammaln(n + 1)


def glauberAmplitudes(alpha, nMax):
    return np.exp(logGlauberAmplitudes(alpha, nMax))


def glauberAmplitude(n, alpha):
    if n < 0:
        raise ValueError("photon number must be non-negative")
    return complex(glauberAmplitudes(alpha, n)[..., n])


def logSpinAmplitudes(z, twoJ):
    """
    log <j,m|z> for m = -j..j (offset k = m + j on the last axis).
    """
    z = np.asarray(z, dtype=complex)[..., None]
    k = np.arange(twoJ + 1)
    return -0.5 * twoJ * np.log1p(np.abs(z) ** 2) + 0.5 * logBinomial(twoJ, k) + _logPower(z, k)


def spinAmplitudes(z, twoJ):
    return np.exp(logSpinAmplitudes(z, twoJ))


def spinAmplitude(m, z, j):
    twoJ = int(round(2 * j))
    k = int(round(m + j))
    if not 0 <= k <= twoJ:
        raise ValueError("spin projection %r outside [-j, j]" % (m,))
    return complex(spinAmplitudes(z, twoJ)[..., k])


def spinAmplitudesSphere(theta, phi, twoJ):
    """
    <j,m|z> on the Bloch sphere, z = tan(theta/2) exp(i phi):

        sqrt(C(2j, k)) cos(theta/2)^(2j-k) sin(theta/2)^k exp(i k phi)

    Finite everywhere, including the north pole that the z-plane cannot reach.
    """
    theta = np.asarray(theta, dtype=float)[..., None]
    phi = np.asarray(phi, dtype=float)[..., None]
    k = np.arange(twoJ + 1)
    with np.errstate(divide="ignore"):
        logMagnitude = (0.5 * logBinomial(twoJ, k)
                        + xlogy(twoJ - k, np.cos(theta / 2))
                        + xlogy(k, np.sin(theta / 2)))
    return np.exp(logMagnitude + 1j * k * phi)


def jointAmplitude(n, m, pt, j):
    """
    Amplitude of n photons and j+m excited atoms in |alpha, z>.
    """
    return glauberAmplitude(n, pt.alpha) * spinAmplitude(m, pt.z, j)


def logGlauberOverlap(alpha, beta):
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    return -0.5 * np.abs(alpha) ** 2 - 0.5 * np.abs(beta) ** 2 + np.conj(alpha) * beta


def glauberOverlap(alpha, beta):
    """
    <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta)
    """
    return np.exp(logGlauberOverlap(alpha, beta))


def logSpinOverlap(z, w, j):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    twoJ = int(round(2 * j))
    with np.errstate(divide="ignore"):
        return (twoJ * np.log(1 + np.conj(z) * w)
                - 0.5 * twoJ * np.log1p(np.abs(z) ** 2)
                - 0.5 * twoJ * np.log1p(np.abs(w) ** 2))


def spinOverlap(z, w, j):
    """
    <z|w> = (1 + conj(z) w)^2j / ((1+|z|^2)^j (1+|w|^2)^j)
    """
    return np.exp(logSpinOverlap(z, w, j))


def logSpinOverlapSphere(theta, phi, w, j):
    """
    log <z|w> with z = tan(theta/2) exp(i phi) given by its sphere angles.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    w = complex(w)
    twoJ = int(round(2 * j))
    base = np.cos(theta / 2) + np.sin(theta / 2) * np.exp(-1j * phi) * w
    with np.errstate(divide="ignore"):
        return twoJ * np.log(base) - 0.5 * twoJ * np.log1p(abs(w) ** 2)


def sphereToPlane(theta, phi):
    return np.tan(np.asarray(theta) / 2) * np.exp(1j * np.asarray(phi))
