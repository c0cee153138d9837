# Copyright 2026 The dicke-husimi authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

#
# Library operation:
#
#     p = ModelParams(omega=1, omega0=1, coupling=1, j=10)
#     g = convergeCutoff(p)
#     wehrlEntropy(g)
#
# Command line operation:
#
#     dicke-husimi ground --j 5 --lambda 0.6 --out ground.json
#     dicke-husimi husimi --method exact --slice position --j 3 --lambda 1 --out husimi.csv
#     dicke-husimi wehrl --j 5 --lambda-from 0 --lambda-to 1 --steps 41 --threads 8 --out wehrl.csv
#     dicke-husimi zeros --j 10 --lambda 1 --l 0 --out zeros.csv
#
#     The cutoff ceiling defaults to $DICKE_HUSIMI_MAX_CUTOFF when it is set.  Exit codes are 0 on
#     success, 2 for invalid input, 3 for a domain error (e.g. no zeros in the normal phase) and 4
#     when a numerical method fails to converge.
#
from .coherent import PhasePoint, glauberAmplitude, glauberOverlap, jointAmplitude, spinAmplitude, spinOverlap
from .eigensolve import GroundState, convergeCutoff, groundEigenpair, observables, solveGroundState
from .errors import (
    DickeHusimiError, DomainError, NoZerosError, NonConvergenceError, ValidationError,
)
from .husimi import (
    HusimiField, QuadratureSpec, husimiExact, husimiGrid, husimiNorm, wehrlEntropy,
)
from .model import BasisIndex, ModelParams, buildHamiltonian, criticalCoupling, flatIndex
from .variational import (
    CatState, Equilibrium, catNorm, energySurface, equilibriumMinimize, equilibriumPaper,
    husimiVariational, wehrlVariationalAnalytic, wehrlVariationalQuadrature,
)
from .zeros import ZeroSurface, conformalGrid, fringeLines, zeroSurfaceAlpha
