#!/usr/bin/env python3

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
# Regenerates the data sets behind the standard plots: exact Husimi slices
# across the transition, Wehrl entropy sweeps, variational contours and the
# zero surface with its dark fringes.  Every file is written by the
# dicke-husimi command line, so each step can be repeated by hand.
#

import argparse
import os
import sys

from dickeHusimi.cli import main

SLICE_COUPLINGS = ("0.2", "0.5", "0.7", "1.0")
SWEEP_SPINS = ("5", "10")
FRINGE_BRANCHES = range(-3, 3)


def husimiSlices(j, outDir):
    for coupling in SLICE_COUPLINGS:
        for slice in ("position", "momentum"):
            yield ["husimi", "--j", j, "--lambda", coupling, "--slice", slice,
                   "--out", os.path.join(outDir, "husimi-%s-lambda%s.csv" % (slice, coupling))]


def wehrlSweeps(outDir, threads):
    for j in SWEEP_SPINS:
        yield ["wehrl", "--j", j, "--lambda-from", "0", "--lambda-to", "1", "--steps", "41",
               "--threads", threads, "--out", os.path.join(outDir, "wehrl-j%s.csv" % j)]
    yield ["equilibrium", "--j", "10", "--lambda-from", "0", "--lambda-to", "1", "--steps", "41",
           "--threads", threads, "--out", os.path.join(outDir, "equilibrium-j10.csv")]


def variationalContours(j, outDir):
    for coupling in SLICE_COUPLINGS:
        for parity in ("even", "odd") if float(coupling) > 0.5 else ("even",):
            yield ["husimi", "--method", "variational", "--parity", parity, "--j", j, "--lambda", coupling,
                   "--out", os.path.join(outDir, "cat-%s-lambda%s.csv" % (parity, coupling))]


def zeroSurfaces(j, outDir):
    yield ["zeros", "--j", j, "--lambda", "1", "--out", os.path.join(outDir, "zeros-l0.csv")]
    for l in FRINGE_BRANCHES:
        yield ["zeros", "--j", "50", "--lambda", "1", "--l", str(l), "--fringes",
               "--out", os.path.join(outDir, "fringes-l%d.json" % l)]


def buildRuns(outDir, j, threads, skipExact=False):
    runs = []
    if not skipExact:
        runs += list(husimiSlices(j, outDir))
        runs += list(wehrlSweeps(outDir, threads))
    runs += list(variationalContours(j, outDir))
    runs += list(zeroSurfaces(j, outDir))
    return runs


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Build the data files behind the Husimi and Wehrl plots")
    parser.add_argument("--out", "-o", help="Directory to write data files to", default="figures")
    parser.add_argument("--j", help="Spin length for the slices and contours", default="10")
    parser.add_argument("--threads", help="Worker threads for the sweeps", default="4")
    parser.add_argument("--skip-exact", action="store_true", help="Only build the variational and zero data")
    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    for argv in buildRuns(args.out, args.j, args.threads, args.skip_exact):
        print(" ".join(argv))
        code = main(argv)
        if code != 0:
            print("Failed with exit code %d" % code)
            sys.exit(code)
