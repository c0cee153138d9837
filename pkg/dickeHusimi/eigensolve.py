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

import json
import logging
import math

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import CutoffCeilingError, NonConvergenceError, ValidationError
from .model import (
    DEFAULT_MAX_DIMENSION, DENSE_DIMENSION_LIMIT, EVEN, ModelParams,
    buildHamiltonian, parityTable,
)

logger = logging.getLogger(__name__)

DEFAULT_E_TOL = 1e-8
DEFAULT_W_TOL = 1e-8
DEFAULT_INITIAL_CUTOFF = 16
DEFAULT_MAX_CUTOFF = 512

RESIDUAL_FACTOR = 1e-10
PARITY_PURITY = 1e-10

# Relative gap below which the two lowest levels are treated as one doublet
DEGENERACY_GAP = 1e-8


class GroundState:
    """
    Ground state of the truncated Hamiltonian as a coefficient table
    c[n, j+m] over the product basis.
    """

    def __init__(self, params, nCut, energy, coeffs, parity=EVEN):
        self.params = params
        self.nCut = nCut
        self.energy = energy
        self.coeffs = coeffs
        self.parity = parity

    @property
    def j(self):
        return self.params.j

    def scaled(self, factor):
        return GroundState(self.params, self.nCut, self.energy, self.coeffs * factor, self.parity)

    def tailWeight(self):
        """
        Weight carried by photon numbers above half the cutoff.
        """
        return float(np.sum(self.coeffs[self.nCut // 2 + 1:] ** 2))

    def toJSON(self):
        twoJ = self.params.twoJ
        coeffs = [
            {"n": n, "m": k - twoJ / 2, "c": float(self.coeffs[n, k])}
            for n in range(self.nCut + 1)
            for k in range(twoJ + 1)
            if self.coeffs[n, k] != 0.0
        ]
        return {
            "params": self.params.asDict(),
            "n_c": self.nCut,
            "energy": self.energy,
            "parity": self.parity,
            "coeffs": coeffs,
        }

    @classmethod
    def fromJSON(cls, data):
        params = ModelParams.fromDict(data["params"])
        nCut = int(data["n_c"])
        coeffs = np.zeros((nCut + 1, params.twoJ + 1))
        for entry in data["coeffs"]:
            coeffs[int(entry["n"]), int(round(entry["m"] + params.j))] = entry["c"]
        return cls(params, nCut, float(data["energy"]), coeffs, int(data.get("parity", EVEN)))

    def dumps(self):
        return json.dumps(self.toJSON(), indent=1, allow_nan=False)


def _residual(H, energy, vector):
    return float(np.linalg.norm(H.entries @ vector - energy * vector))


def _lowestPair(H):
    """
    The two lowest eigenpairs, or one for a 1x1 matrix.
    """
    count = min(2, H.dim)
    if not H.isSparse or H.dim <= 3:
        values, vectors = scipy.linalg.eigh(H.toDense(), subset_by_index=[0, count - 1])
        return values, vectors
    # Fixed start vector keeps the Lanczos iteration reproducible
    v0 = np.full(H.dim, 1.0 / math.sqrt(H.dim))
    try:
        values, vectors = scipy.sparse.linalg.eigsh(H.entries, k=count, which="SA", v0=v0, tol=0)
    except scipy.sparse.linalg.ArpackNoConvergence as ex:
        residual = float("nan")
        if len(ex.eigenvalues):
            order = np.argsort(ex.eigenvalues)
            residual = _residual(H, ex.eigenvalues[order[0]], ex.eigenvectors[:, order[0]])
        raise NonConvergenceError("Lanczos iteration did not converge for dimension %d" % H.dim,
                                  residual=residual)
    order = np.argsort(values)
    return values[order], vectors[:, order]


def groundEigenpair(H):
    """
    Algebraically smallest eigenvalue of H and a unit eigenvector.

    When the two lowest levels of a full (both-parity) matrix form a doublet
    within DEGENERACY_GAP, the even member of the doublet is returned: the
    doublet is projected onto the even sector and renormalized.
    """
    values, vectors = _lowestPair(H)
    energy = float(values[0])
    vector = vectors[:, 0]

    if H.sector is None and len(values) > 1:
        scale = max(H.maxAbs(), 1.0)
        if values[1] - values[0] < DEGENERACY_GAP * scale:
            parity = parityTable(H.params.j, H.nCut).ravel()[H.indices]
            candidates = [np.where(parity == EVEN, vectors[:, i], 0.0) for i in range(2)]
            vector = max(candidates, key=np.linalg.norm)
            vector = vector / np.linalg.norm(vector)
            energy = float(vector @ (H.entries @ vector))
            logger.debug("Ground doublet with gap %.3g resolved to its even member", values[1] - values[0],
                         extra={"messageCode": "eigensolve:info"})

    vector = vector / np.linalg.norm(vector)
    if vector[np.argmax(np.abs(vector))] < 0:
        vector = -vector

    residual = _residual(H, energy, vector)
    bound = RESIDUAL_FACTOR * max(H.maxAbs(), 1.0) * H.dim
    if residual > bound:
        raise NonConvergenceError("eigenvector residual %.3g exceeds %.3g" % (residual, bound), residual=residual)
    return energy, vector


def solveGroundState(p, nCut, sector=EVEN, maxDimension=DEFAULT_MAX_DIMENSION, denseLimit=DENSE_DIMENSION_LIMIT):
    """
    Ground state at a fixed cutoff.  The even sector is diagonalized by
    default; `sector=None` diagonalizes the full matrix.
    """
    H = buildHamiltonian(p, nCut, sector=sector, maxDimension=maxDimension, denseLimit=denseLimit)
    energy, vector = groundEigenpair(H)
    coeffs = np.zeros((nCut + 1) * (p.twoJ + 1))
    coeffs[H.indices] = vector
    coeffs = coeffs.reshape(nCut + 1, p.twoJ + 1)

    oddWeight = float(np.sum(coeffs[parityTable(p.j, nCut) != EVEN] ** 2))
    if oddWeight > 0.5:
        logger.warning("Lowest level at cutoff %d is odd; diagonalizing the even sector", nCut,
                       extra={"messageCode": "eigensolve:parity"})
        return solveGroundState(p, nCut, sector=EVEN, maxDimension=maxDimension, denseLimit=denseLimit)
    if oddWeight > PARITY_PURITY:
        # Mixed parity outside a resolvable doublet: keep the even part
        coeffs[parityTable(p.j, nCut) != EVEN] = 0.0
        coeffs /= np.linalg.norm(coeffs)
        logger.warning("Ground state had odd-parity weight %.3g; projected onto the even sector", oddWeight,
                       extra={"messageCode": "eigensolve:parity"})
    return GroundState(p, nCut, energy, coeffs, EVEN)


def convergeCutoff(p, eTol=DEFAULT_E_TOL, wTol=DEFAULT_W_TOL, nCut0=DEFAULT_INITIAL_CUTOFF,
                   maxCutoff=DEFAULT_MAX_CUTOFF, sector=EVEN, maxDimension=DEFAULT_MAX_DIMENSION):
    """
    Double the photon cutoff from `nCut0` until the ground energy changes by
    less than `eTol` between successive cutoffs and the state at the smaller
    cutoff carries less than `wTol` weight above half of it.  Returns the
    state at the smaller of the two agreeing cutoffs.
    """
    if not (eTol > 0 and wTol > 0):
        raise ValidationError("convergence tolerances must be positive")
    if nCut0 < 1:
        raise ValidationError("initial cutoff must be at least 1")
    if maxCutoff < 2 * nCut0:
        # Convergence compares a cutoff with its double
        raise ValidationError("cutoff ceiling %d leaves no room to double the initial cutoff %d" % (maxCutoff, nCut0))

    current = solveGroundState(p, nCut0, sector=sector, maxDimension=maxDimension)
    deltaE = float("nan")
    while 2 * current.nCut <= maxCutoff:
        refined = solveGroundState(p, 2 * current.nCut, sector=sector, maxDimension=maxDimension)
        deltaE = abs(refined.energy - current.energy)
        tail = current.tailWeight()
        logger.debug("cutoff %d: E0=%.15g dE=%.3g tail=%.3g", current.nCut, current.energy, deltaE, tail,
                     extra={"messageCode": "eigensolve:cutoff"})
        if deltaE < eTol and tail < wTol:
            logger.info("Ground state converged at cutoff %d (E0=%.12g)", current.nCut, current.energy,
                        extra={"messageCode": "eigensolve:info"})
            return current
        current = refined

    raise CutoffCeilingError("cutoff ceiling %d reached without convergence (last dE=%.3g, tail weight=%.3g)"
                             % (maxCutoff, deltaE, current.tailWeight()),
                             deltaE=deltaE, tailWeight=current.tailWeight(), nCut=current.nCut)


def observables(g):
    """
    (<a^+ a>, <Jz>, <Parity>) of a normalized ground state.
    """
    weights = g.coeffs ** 2
    n = np.arange(g.nCut + 1)[:, None]
    m = np.arange(g.params.twoJ + 1)[None, :] - g.j
    meanPhotons = float(np.sum(n * weights))
    meanJz = float(np.sum(m * weights))
    parity = float(np.sum(parityTable(g.j, g.nCut) * weights))
    return meanPhotons, meanJz, parity


def meanExcitationFraction(g):
    """
    <Jz + j> / 2j, the fraction of excited atoms.
    """
    _, meanJz, _ = observables(g)
    return (meanJz + g.j) / (2 * g.j)
