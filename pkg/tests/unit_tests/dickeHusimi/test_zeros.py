import math
import unittest

import numpy as np

from dickeHusimi.coherent import PhasePoint
from dickeHusimi.errors import NoZerosError, SingularInputError, ValidationError
from dickeHusimi.model import ModelParams
from dickeHusimi.variational import PAPER_FORMULA, CatState, husimiVariational
from dickeHusimi.zeros import (
    HORIZONTAL, VERTICAL, ZGridSpec, ZeroSurface, conformalGrid, countFringes, equilibriumFor,
    fringeBranches, fringeLines, zeroSurface, zeroSurfaceAlpha,
)

SUPERRADIANT = ModelParams(coupling=1.0, j=10)


class TestZeroSurface(unittest.TestCase):

    def test_zeroSurfaceAlpha_at_origin(self):
        s = zeroSurface(SUPERRADIANT, 0)
        value = zeroSurfaceAlpha(s, 0)
        self.assertAlmostEqual(value.real, 0.0, places=14)
        self.assertAlmostEqual(value.imag, -0.362760, places=6)

    def test_zeroSurface_normal_phase(self):
        with self.assertRaises(NoZerosError) as cm:
            zeroSurface(ModelParams(coupling=0.3, j=10), 0)
        self.assertEqual(cm.exception.exitCode, 3)

    def test_zeroSurfaceAlpha_branch_point(self):
        s = zeroSurface(SUPERRADIANT, 1)
        with self.assertRaises(SingularInputError):
            zeroSurfaceAlpha(s, 1 / s.equilibrium.zE)
        with self.assertRaises(SingularInputError):
            zeroSurfaceAlpha(s, np.array([0.1, -1 / s.equilibrium.zE]))

    def test_zeroSurfaceAlpha_solves_zero_condition(self):
        s = zeroSurface(SUPERRADIANT, 2)
        z = 0.3 - 0.4j
        alpha = zeroSurfaceAlpha(s, z)
        w = z * s.equilibrium.zE
        lhs = 2 * alpha * s.equilibrium.alphaE + 2 * s.j * np.log((1 + w) / (1 - w))
        self.assertAlmostEqual(abs(lhs - 1j * math.pi * 5), 0.0, places=10)

    def test_zeroSurfaceAlpha_zeros_of_husimi(self):
        """
        The even cat vanishes on every branch, relative to its packet centre.
        """
        eq = equilibriumFor(SUPERRADIANT)
        cat = CatState.fromEquilibrium(eq)
        peak = husimiVariational(cat, PhasePoint(eq.alphaE, eq.zE))
        rng = np.random.default_rng(2012)
        for l in range(-2, 3):
            s = ZeroSurface(l, eq, SUPERRADIANT.j)
            zs = rng.uniform(-0.9, 0.9, 100) + 1j * rng.uniform(-0.9, 0.9, 100)
            for z, alpha in zip(zs, zeroSurfaceAlpha(s, zs)):
                self.assertLessEqual(husimiVariational(cat, PhasePoint(alpha, z)), 1e-18 * peak)

    def test_zeroSurfaceAlpha_branch_parity(self):
        eq = equilibriumFor(SUPERRADIANT)
        z = 0.45 + 0.2j
        for l in (0, 1, 3):
            upper = zeroSurfaceAlpha(ZeroSurface(l, eq, 10), z)
            lower = zeroSurfaceAlpha(ZeroSurface(-(l + 1), eq, 10), z.conjugate())
            self.assertAlmostEqual(abs(upper - lower.conjugate()), 0.0, places=12)

    def test_zeroSurface_paper_source(self):
        s = zeroSurface(SUPERRADIANT, 0, source=PAPER_FORMULA)
        self.assertAlmostEqual(s.equilibrium.alphaE, -8.660254, places=6)
        with self.assertRaises(ValidationError):
            zeroSurface(SUPERRADIANT, 0, source="guess")


class TestConformalGrid(unittest.TestCase):

    def setUp(self):
        self.surface = zeroSurface(SUPERRADIANT, 0)

    def test_conformalGrid_default(self):
        curves = conformalGrid(self.surface)
        self.assertEqual(len(curves), 42)
        self.assertEqual(sum(1 for c in curves if c.family == VERTICAL), 21)
        self.assertEqual(len(curves[0].z), 201)
        self.assertEqual(len({c.lineId for c in curves}), 42)

    def test_conformalGrid_real_axis(self):
        """
        Im z = 0 maps onto the horizontal line Im alpha = pi/(2 alpha_e).
        """
        curves = conformalGrid(self.surface, ZGridSpec(lines=3))
        axis = [c for c in curves if c.family == HORIZONTAL][1]
        np.testing.assert_allclose(axis.z.imag, 0.0)
        np.testing.assert_allclose(axis.alpha.imag, math.pi / (2 * self.surface.equilibrium.alphaE), atol=1e-12)

    def test_conformalGrid_mirror_symmetry(self):
        curves = conformalGrid(self.surface, ZGridSpec(lines=5, points=11))
        centre = 2 * self.surface.offset
        first = [c for c in curves if c.family == VERTICAL][0]
        last = [c for c in curves if c.family == VERTICAL][-1]
        np.testing.assert_allclose(first.alpha, centre - last.alpha[::-1], atol=1e-12)

    def test_conformalGrid_splits_at_branch_cut(self):
        """
        Vertical lines beyond the branch points at +-1/z_e cross the cut on
        the real axis and come back as two pieces each.
        """
        curves = conformalGrid(self.surface, ZGridSpec(reMin=-2.0, reMax=2.0, lines=20))
        self.assertEqual(len(curves), 48)
        self.assertEqual(len({c.lineId for c in curves}), 48)
        threshold = math.pi * 10 / abs(self.surface.equilibrium.alphaE)
        for c in curves:
            self.assertTrue(np.all(np.abs(np.diff(c.alpha)) <= threshold))

    def test_rows(self):
        curve = conformalGrid(self.surface, ZGridSpec(lines=1, points=2))[0]
        rows = list(curve.rows())
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0][:2], (VERTICAL, 0))
        self.assertEqual(rows[0][4:], (-1.0, -1.0))

    def test_ZGridSpec_validation(self):
        with self.assertRaises(ValidationError):
            ZGridSpec(reMin=1.0, reMax=-1.0)
        with self.assertRaises(ValidationError):
            ZGridSpec(points=1)


class TestFringeLines(unittest.TestCase):

    def test_fringeLines(self):
        f = fringeLines(equilibriumFor(SUPERRADIANT), 10, 0)
        self.assertAlmostEqual(f.slope, 0.8, places=7)
        self.assertAlmostEqual(f.interceptMomentum, -0.362760, places=6)
        self.assertEqual(f.interceptPosition, 0.0)
        self.assertEqual(set(f.toJSON()), {"l", "slope", "intercept_position", "intercept_momentum"})

    def test_fringeLines_normal_phase(self):
        with self.assertRaises(NoZerosError):
            fringeLines(equilibriumFor(ModelParams(coupling=0.3, j=10)), 10, 0)

    def test_fringeLines_small_z_asymptotics(self):
        p = ModelParams(coupling=1.0, j=50)
        eq = equilibriumFor(p)
        rng = np.random.default_rng(50)
        for l in (-1, 0, 2):
            s = ZeroSurface(l, eq, p.j)
            f = fringeLines(eq, p.j, l)
            for z in rng.uniform(-0.007, 0.007, 20) + 1j * rng.uniform(-0.007, 0.007, 20):
                beta = math.sqrt(2 * p.j) * z
                line = complex(f.slope * beta.real + f.interceptPosition, f.slope * beta.imag + f.interceptMomentum)
                self.assertLess(abs(zeroSurfaceAlpha(s, z) - line), 1e-3)

    def test_countFringes(self):
        eq = equilibriumFor(SUPERRADIANT)
        self.assertEqual(fringeBranches(eq, (-2.0, 2.0)), [-3, -2, -1, 0, 1, 2])
        self.assertEqual(countFringes(eq, 10, (-2.0, 2.0)), 6)

    def test_countFringes_grows_with_coupling_and_spin(self):
        window = (-3.0, 3.0)
        base = countFringes(equilibriumFor(SUPERRADIANT), 10, window)
        stronger = countFringes(equilibriumFor(ModelParams(coupling=2.0, j=10)), 10, window)
        larger = countFringes(equilibriumFor(ModelParams(coupling=1.0, j=40)), 40, window)
        self.assertGreater(stronger, base)
        self.assertGreater(larger, base)

    def test_fringeBranches_rejects_reversed_window(self):
        with self.assertRaises(ValidationError):
            fringeBranches(equilibriumFor(SUPERRADIANT), (1.0, -1.0))
