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


class DickeHusimiError(Exception):
    """
    Base class for every error raised by the library.

    The command line driver maps each family onto its exit code.
    """

    exitCode = 1

    def __init__(self, message, **achieved):
        super(DickeHusimiError, self).__init__(message)
        self.message = message
        self.achieved = achieved


class ValidationError(DickeHusimiError):
    exitCode = 2


class DimensionOverflowError(ValidationError):
    pass


class DomainError(DickeHusimiError):
    exitCode = 3


class NoZerosError(DomainError):
    pass


class SingularInputError(DomainError):
    pass


class DegenerateStateError(DomainError):
    pass


class NonConvergenceError(DickeHusimiError):
    exitCode = 4


class CutoffCeilingError(NonConvergenceError):
    pass


class QuadratureNonConvergenceError(NonConvergenceError):
    pass
