import math
import os
import unittest
from unittest.mock import Mock, patch

import numpy as np

from dickeHusimi.coherent import PhasePoint
from dickeHusimi.errors import DegenerateStateError, NonConvergenceError, ValidationError
from dickeHusimi.model import ODD, ModelParams
from dickeHusimi.quadrature import QuadratureSpec
from dickeHusimi.variational import (
    CROSSOVER, MINIMIZER, NORMAL, PAPER_FORMULA, SUPERRADIANT, CatState, PacketSuperposition,
    catNorm, catOverlap, energySurface, equilibriumDiscrepancy, equilibriumMinimize, equilibriumPaper,
    equilibriumStationary, husimiVariational, husimiVariationalGrid, wehrlVariationalAnalytic,
    wehrlVariationalQuadrature,
)

SLOW_TESTS = os.environ.get("DICKE_HUSIMI_SLOW_TESTS")

ALPHA_E = -4.330127018922193
Z_E = math.sqrt(0.6)


class TestEquilibrium(unittest.TestCase):

    def test_equilibriumPaper_as_printed(self):
        eq = equilibriumPaper(ModelParams(coupling=1.0, j=10))
        self.assertEqual(eq.source, PAPER_FORMULA)
        self.assertAlmostEqual(eq.zE, 0.774597, places=6)
        self.assertAlmostEqual(eq.alphaE, -8.660254, places=6)

    def test_equilibriumMinimize_superradiant(self):
        eq = equilibriumMinimize(ModelParams(coupling=1.0, j=10))
        self.assertEqual(eq.source, MINIMIZER)
        self.assertAlmostEqual(eq.alphaE, ALPHA_E, places=6)
        self.assertAlmostEqual(eq.zE, Z_E, delta=1e-8)

    def test_equilibriumMinimize_normal_phase(self):
        for coupling in (0.0, 0.3, 0.5):
            p = ModelParams(coupling=coupling, j=5)
            for eq in (equilibriumMinimize(p), equilibriumPaper(p)):
                self.assertEqual((eq.alphaE, eq.zE), (0.0, 0.0))
                self.assertTrue(eq.isNormal)

    def test_equilibriumMinimize_matches_closed_forms(self):
        """
        z_e agrees with the printed formula; alpha_e with the stationary
        point of the energy surface.
        """
        for omega, omega0 in ((1.0, 1.0), (2.0, 0.5)):
            lc = math.sqrt(omega * omega0) / 2
            for ratio in (1.2, 2.0, 4.0):
                p = ModelParams(omega=omega, omega0=omega0, coupling=ratio * lc, j=10)
                minimum = equilibriumMinimize(p)
                self.assertAlmostEqual(minimum.zE, equilibriumPaper(p).zE, delta=1e-8)
                alphaE, zE = equilibriumStationary(p)
                self.assertAlmostEqual(minimum.alphaE, alphaE, delta=1e-7)
                self.assertAlmostEqual(minimum.zE, zE, delta=1e-8)

    def test_equilibriumMinimize_is_lowest(self):
        for ratio in (1.2, 2.0, 4.0):
            p = ModelParams(coupling=ratio * 0.5, j=10)
            minimum = equilibriumMinimize(p)
            paper = equilibriumPaper(p)
            self.assertLess(minimum.energy, paper.energy)
            self.assertLess(minimum.energy, energySurface(p, 0, 0))
            self.assertAlmostEqual(minimum.energy, energySurface(p, minimum.alphaE, minimum.zE), places=10)

    def test_equilibriumMinimize_reports_stalled_search(self):
        result = Mock(success=False, x=np.array([-1.0, 0.3]), message="stalled")
        with patch("dickeHusimi.variational.optimize.minimize", return_value=result), \
                patch("dickeHusimi.variational._newtonPolish", side_effect=lambda x, gradient, hessian: x):
            with self.assertRaises(NonConvergenceError) as cm:
                equilibriumMinimize(ModelParams(coupling=1.0, j=10))
        self.assertGreater(cm.exception.achieved["gradient"], 1e-4)

    def test_equilibriumMinimize_polishes_stalled_search(self):
        """
        A trust region that stops short at rounding level is finished by
        Newton steps instead of being reported as a failure.
        """
        p = ModelParams(coupling=1.0, j=10)
        alphaE, zE = equilibriumStationary(p)
        result = Mock(success=False, x=np.array([alphaE + 2e-8, zE + 1.3e-9]), message="stalled")
        with patch("dickeHusimi.variational.optimize.minimize", return_value=result):
            eq = equilibriumMinimize(p)
        self.assertAlmostEqual(eq.alphaE, alphaE, delta=1e-10)
        self.assertAlmostEqual(eq.zE, zE, delta=1e-10)

    def test_equilibriumMinimize_sweep(self):
        """
        Every point of a 41-point coupling sweep converges for several spin
        lengths, and z_e follows the closed form.
        """
        for j in (3, 5, 10, 50):
            for coupling in np.linspace(0.0, 1.0, 41):
                p = ModelParams(coupling=coupling, j=j)
                eq = equilibriumMinimize(p)
                alphaE, zE = equilibriumStationary(p)
                self.assertAlmostEqual(eq.zE, equilibriumPaper(p).zE, delta=1e-8, msg="j=%g lambda=%g" % (j, coupling))
                self.assertAlmostEqual(eq.zE, zE, delta=1e-8)
                self.assertAlmostEqual(eq.alphaE, alphaE, delta=1e-7 * max(1.0, abs(alphaE)))

    def test_energySurface_vacuum(self):
        p = ModelParams(omega0=0.7, coupling=0.9, j=4)
        self.assertAlmostEqual(energySurface(p, 0, 0), -4 * 0.7)

    def test_energySurface_symmetric(self):
        p = ModelParams(coupling=0.9, j=4)
        self.assertAlmostEqual(energySurface(p, 1.2 + 0.3j, 0.4 - 0.1j), energySurface(p, -1.2 - 0.3j, -0.4 + 0.1j))

    def test_equilibriumDiscrepancy(self):
        report = equilibriumDiscrepancy(ModelParams(coupling=1.0, j=10))
        self.assertAlmostEqual(report["alpha_ratio"], 2.0, places=7)
        self.assertAlmostEqual(report["z_e_difference"], 0.0, delta=1e-8)
        self.assertGreater(report["energy_paper"], report["energy_minimizer"])


class TestCatState(unittest.TestCase):

    def test_catNorm_separated(self):
        self.assertAlmostEqual(catNorm(ALPHA_E, Z_E, 10, 1), math.sqrt(2), places=12)
        self.assertLess(catOverlap(ALPHA_E, Z_E, 10), 1e-16)

    def test_catNorm_normal_phase(self):
        self.assertAlmostEqual(catNorm(0.0, 0.0, 3, 1), 2.0)

    def test_catNorm_degenerate_odd(self):
        with self.assertRaises(DegenerateStateError) as cm:
            catNorm(0.0, 0.0, 3, ODD)
        self.assertEqual(cm.exception.exitCode, 3)

    def test_catNorm_rejects_bad_sign(self):
        with self.assertRaises(ValidationError):
            catNorm(1.0, 0.5, 3, 0)

    def test_husimiVariational_normal_phase(self):
        cat = CatState(0.0, 0.0, 3)
        self.assertAlmostEqual(husimiVariational(cat, PhasePoint(0, 0)), 1.0, places=14)
        alpha, z = 0.7 - 0.2j, 0.3 + 0.5j
        self.assertAlmostEqual(husimiVariational(cat, PhasePoint(alpha, z)),
                               math.exp(-abs(alpha) ** 2) / (1 + abs(z) ** 2) ** 6, places=14)

    def test_husimiVariational_packet_centre(self):
        """
        Each well-separated packet carries half of the weight.
        """
        cat = CatState(ALPHA_E, Z_E, 10)
        self.assertAlmostEqual(husimiVariational(cat, PhasePoint(ALPHA_E, Z_E)), 0.5, places=12)

    def test_husimiVariational_point_symmetric(self):
        cat = CatState(-1.3, 0.4, 3)
        rng = np.random.default_rng(7)
        for _ in range(20):
            alpha = complex(*rng.uniform(-3, 3, 2))
            z = complex(*rng.uniform(-1.5, 1.5, 2))
            self.assertAlmostEqual(husimiVariational(cat, PhasePoint(alpha, z)),
                                   husimiVariational(cat, PhasePoint(-alpha, -z)), delta=1e-12)

    def test_husimiVariational_odd_cat_vanishes_at_origin(self):
        cat = CatState(-1.3, 0.4, 3, ODD)
        self.assertAlmostEqual(husimiVariational(cat, PhasePoint(0, 0)), 0.0, places=20)

    def test_husimiVariationalGrid_matches_pointwise(self):
        cat = CatState(-1.3, 0.4, 3)
        values = husimiVariationalGrid(cat, (1j, 1j), [-1.0, 0.5], [0.2, 0.7])
        self.assertAlmostEqual(values[1, 0], husimiVariational(cat, PhasePoint(0.5j, 0.2j)), places=14)

    def test_evaluate_matches_amplitude(self):
        """
        The quadrature path through the sphere chart gives the plane amplitude.
        """
        cat = CatState(-1.3, 0.4, 3)
        theta, phi = np.array([0.4, 2.0]), np.array([1.0, -2.5])
        alphas = np.array([0.3 + 0.1j, -1.0])
        z = np.tan(theta / 2) * np.exp(1j * phi)
        np.testing.assert_allclose(cat.evaluate(alphas, cat.sphereFactors(theta, phi)),
                                   cat.amplitude(alphas[:, None], z[None, :]), atol=1e-13)


class TestWehrlVariational(unittest.TestCase):

    def test_wehrlVariationalAnalytic_normal(self):
        estimate = wehrlVariationalAnalytic(ModelParams(coupling=0.2, j=5))
        self.assertEqual(estimate.regime, NORMAL)
        self.assertAlmostEqual(estimate.value, 21 / 11, places=12)

    def test_wehrlVariationalAnalytic_superradiant(self):
        estimate = wehrlVariationalAnalytic(ModelParams(coupling=1.0, j=10))
        self.assertEqual(estimate.regime, SUPERRADIANT)
        self.assertAlmostEqual(estimate.value, 2.645550, places=6)

    def test_wehrlVariationalAnalytic_crossover(self):
        estimate = wehrlVariationalAnalytic(ModelParams(coupling=0.55, j=5))
        self.assertEqual(estimate.regime, CROSSOVER)
        self.assertIsNone(estimate.value)
        self.assertGreater(estimate.overlap, 1e-6)

    def test_wehrlVariationalAnalytic_excess(self):
        high = wehrlVariationalAnalytic(ModelParams(coupling=1.0, j=10)).value
        low = wehrlVariationalAnalytic(ModelParams(coupling=0.2, j=10)).value
        self.assertAlmostEqual(high - low, math.log(2), delta=1e-6)

    def test_wehrlVariationalAnalytic_large_spin_limits(self):
        self.assertAlmostEqual(wehrlVariationalAnalytic(ModelParams(coupling=0.1, j=5000)).value, 2.0, delta=1e-3)
        self.assertAlmostEqual(wehrlVariationalAnalytic(ModelParams(coupling=1.0, j=5000)).value,
                               2.0 + math.log(2), delta=1e-3)

    def test_wehrlVariationalQuadrature_normal(self):
        cat = CatState.fromEquilibrium(equilibriumMinimize(ModelParams(coupling=0.2, j=5)))
        self.assertAlmostEqual(wehrlVariationalQuadrature(cat), 21 / 11, delta=1e-3)

    def test_wehrlVariationalQuadrature_superradiant(self):
        cat = CatState.fromEquilibrium(equilibriumMinimize(ModelParams(coupling=1.0, j=10)))
        self.assertAlmostEqual(wehrlVariationalQuadrature(cat), 2.645550, delta=3e-3)

    def test_wehrlVariationalQuadrature_excess(self):
        far = CatState.fromEquilibrium(equilibriumMinimize(ModelParams(coupling=1.0, j=10)))
        normal = CatState.fromEquilibrium(equilibriumMinimize(ModelParams(coupling=0.2, j=10)))
        excess = wehrlVariationalQuadrature(far) - wehrlVariationalQuadrature(normal)
        self.assertAlmostEqual(excess, math.log(2), delta=3e-3)

    def test_wehrlVariationalQuadrature_packet_superposition(self):
        """
        s separated copies of one coherent packet add ln(s) to its entropy.
        """
        single = wehrlVariationalQuadrature(PacketSuperposition([(0.0, 0.3)], 0.5))
        self.assertAlmostEqual(single, 1.5, delta=2e-3)
        for centers in ([(-5.0, 0.3), (5.0, 0.3)], [(-6.0, 0.3), (0.0, 0.3), (6.0, 0.3)]):
            entropy = wehrlVariationalQuadrature(PacketSuperposition(centers, 0.5))
            self.assertAlmostEqual(entropy - single, math.log(len(centers)), delta=4e-3)

    def test_PacketSuperposition_requires_centres(self):
        with self.assertRaises(ValidationError):
            PacketSuperposition([], 1)

    def test_wehrlVariationalQuadrature_explicit_spec(self):
        cat = CatState(0.0, 0.0, 1)
        spec = QuadratureSpec(alphaPoints=24, thetaPoints=16, phiPoints=16)
        self.assertAlmostEqual(wehrlVariationalQuadrature(cat, spec), 5 / 3, delta=1e-3)

    @unittest.skipUnless(SLOW_TESTS, "set DICKE_HUSIMI_SLOW_TESTS to run phase-space sweeps")
    def test_wehrlVariationalQuadrature_agrees_outside_crossover(self):
        for coupling in np.linspace(0, 1, 41):
            p = ModelParams(coupling=coupling, j=10)
            eq = equilibriumMinimize(p)
            analytic = wehrlVariationalAnalytic(p, eq)
            if analytic.regime == CROSSOVER:
                continue
            self.assertAlmostEqual(wehrlVariationalQuadrature(CatState.fromEquilibrium(eq)), analytic.value,
                                   delta=3e-3)
