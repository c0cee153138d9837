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
from dataclasses import dataclass, replace
import math

import numpy as np
import scipy.sparse as sparse

from .errors import DimensionOverflowError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIMENSION = 200000

# Above this size the Hamiltonian is kept in coordinate-list form
DENSE_DIMENSION_LIMIT = 5000

EVEN = 1
ODD = -1


@dataclass(frozen=True)
class ModelParams:
    """
    Physical constants of the single-mode Dicke Hamiltonian

        H = omega0 Jz + omega a^+ a + coupling / sqrt(2j) (a^+ + a)(J+ + J-)

    for N = 2j two-level atoms.  Energies are dimensionless.
    """

    omega: float = 1.0
    omega0: float = 1.0
    coupling: float = 0.0
    j: float = 0.5

    def __post_init__(self):
        twoJ = 2 * float(self.j)
        if not math.isfinite(twoJ) or abs(twoJ - round(twoJ)) > 1e-9 or round(twoJ) < 1:
            raise ValidationError("j must be a positive half-integer (2j a positive integer), got %r" % (self.j,))
        if not self.omega > 0:
            raise ValidationError("omega must be positive, got %r" % (self.omega,))
        if not self.omega0 > 0:
            raise ValidationError("omega0 must be positive, got %r" % (self.omega0,))
        if not self.coupling >= 0:
            raise ValidationError("coupling must be non-negative, got %r" % (self.coupling,))
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "omega0", float(self.omega0))
        object.__setattr__(self, "coupling", float(self.coupling))
        object.__setattr__(self, "j", round(twoJ) / 2)

    @property
    def twoJ(self):
        return int(2 * self.j)

    @property
    def criticalCoupling(self):
        return criticalCoupling(self)

    def withCoupling(self, coupling):
        return replace(self, coupling=coupling)

    def asDict(self):
        return {
            "omega": self.omega,
            "omega0": self.omega0,
            "lambda": self.coupling,
            "j": self.j,
        }

    @classmethod
    def fromDict(cls, d):
        return cls(d["omega"], d["omega0"], d["lambda"], d["j"])


class BasisIndex:
    """
    A product basis state |n; j, m>.  The spin projection is stored as the
    integer offset k = m + j so half-integer spins need no float indices.
    """

    __slots__ = ("n", "k")

    def __init__(self, n, k):
        self.n = int(n)
        self.k = int(k)

    @classmethod
    def fromProjection(cls, n, m, j):
        k = m + j
        if abs(k - round(k)) > 1e-9:
            raise ValidationError("m + j must be an integer, got m=%r j=%r" % (m, j))
        return cls(n, round(k))

    def m(self, j):
        return self.k - j

    def __eq__(self, other):
        return isinstance(other, BasisIndex) and (self.n, self.k) == (other.n, other.k)

    def __hash__(self):
        return hash((self.n, self.k))

    def __repr__(self):
        return "BasisIndex(n=%d, k=%d)" % (self.n, self.k)


class HamiltonianMatrix:
    """
    Truncated Hamiltonian, optionally restricted to one parity sector.

    `indices` holds the flat index (over the full product basis) of every row,
    so sector matrices can be mapped back onto the coefficient table.
    """

    def __init__(self, params, nCut, entries, indices, sector=None):
        self.params = params
        self.nCut = nCut
        self.entries = entries
        self.indices = indices
        self.sector = sector

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def isSparse(self):
        return sparse.issparse(self.entries)

    def toDense(self):
        if self.isSparse:
            return self.entries.toarray()
        return self.entries

    def maxAbs(self):
        if self.isSparse:
            return abs(self.entries).max() if self.entries.nnz else 0.0
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0


def basisDimension(j, nCut):
    return (nCut + 1) * (int(round(2 * j)) + 1)


def flatIndex(b, j, nCut):
    """
    Row-major position of a basis state: n outer, m inner.
    """
    twoJ = int(round(2 * j))
    if not 0 <= b.n <= nCut:
        raise ValidationError("photon number %d outside [0, %d]" % (b.n, nCut))
    if not 0 <= b.k <= twoJ:
        raise ValidationError("spin offset %d outside [0, %d]" % (b.k, twoJ))
    return b.n * (twoJ + 1) + b.k


def basisIndexOf(index, j, nCut):
    twoJ = int(round(2 * j))
    if not 0 <= index < basisDimension(j, nCut):
        raise ValidationError("flat index %d outside the basis" % index)
    n, k = divmod(index, twoJ + 1)
    return BasisIndex(n, k)


def parityOf(b, j):
    # n + m + j = n + k
    return EVEN if (b.n + b.k) % 2 == 0 else ODD


def criticalCoupling(p):
    return math.sqrt(p.omega * p.omega0) / 2


def parityTable(j, nCut):
    """
    Parity of every basis state, shaped like the coefficient table.
    """
    twoJ = int(round(2 * j))
    n = np.arange(nCut + 1)[:, None]
    k = np.arange(twoJ + 1)[None, :]
    return np.where((n + k) % 2 == 0, EVEN, ODD)


def sectorIndices(j, nCut, sector):
    return np.flatnonzero(parityTable(j, nCut).ravel() == sector)


def _couplingEntries(p, nCut):
    """
    Upper-triangle couplings <n+1, m'|H|n, m> with m' = m +- 1 as
    (row, col, value) arrays over the full flat basis.
    """
    twoJ = p.twoJ
    j = p.j
    scale = p.coupling / math.sqrt(twoJ)
    n, k = np.meshgrid(np.arange(nCut), np.arange(twoJ + 1), indexing="ij")
    m = k - j
    photon = np.sqrt(n + 1.0)
    col = n * (twoJ + 1) + k

    rows, cols, values = [], [], []
    for shift in (1, -1):
        ladder = np.sqrt(np.maximum(j * (j + 1) - m * (m + shift), 0.0))
        valid = (k + shift >= 0) & (k + shift <= twoJ)
        row = (n + 1) * (twoJ + 1) + k + shift
        rows.append(row[valid])
        cols.append(col[valid])
        values.append((scale * photon * ladder)[valid])
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(values)


def buildHamiltonian(p, nCut, sector=None, maxDimension=DEFAULT_MAX_DIMENSION, denseLimit=DENSE_DIMENSION_LIMIT):
    """
    Assemble the truncated Hamiltonian in the |n; j, m> basis.

    The upper triangle is filled and mirrored, so the result is exactly
    symmetric.  With `sector` set to EVEN or ODD only that parity block is
    built.  Blocks larger than `denseLimit` are returned as CSR matrices.
    """
    if nCut < 1:
        raise ValidationError("cutoff must be at least 1, got %r" % (nCut,))
    fullDim = basisDimension(p.j, nCut)
    if fullDim > maxDimension:
        raise DimensionOverflowError("basis dimension %d exceeds the configured maximum %d" % (fullDim, maxDimension),
                                     dimension=fullDim)

    n = np.arange(nCut + 1)[:, None]
    m = np.arange(p.twoJ + 1)[None, :] - p.j
    diagonal = (n * p.omega + m * p.omega0).ravel()
    rows, cols, values = _couplingEntries(p, nCut)

    if sector is None:
        indices = np.arange(fullDim)
    else:
        indices = sectorIndices(p.j, nCut, sector)
        position = np.full(fullDim, -1)
        position[indices] = np.arange(len(indices))
        keep = position[cols] >= 0
        rows, cols, values = position[rows[keep]], position[cols[keep]], values[keep]
        diagonal = diagonal[indices]

    dim = len(indices)
    if dim > denseLimit:
        upper = sparse.coo_matrix((values, (cols, rows)), shape=(dim, dim))
        entries = (sparse.diags(diagonal) + upper + upper.T).tocsr()
    else:
        entries = np.zeros((dim, dim))
        entries[cols, rows] = values
        entries += entries.T
        entries[np.diag_indices(dim)] = diagonal

    logger.debug("Built Hamiltonian of dimension %d (cutoff %d, sector %s)", dim, nCut, sector,
                 extra={"messageCode": "model:info"})
    return HamiltonianMatrix(p, nCut, entries, indices, sector)
