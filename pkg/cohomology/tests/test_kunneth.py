from django.test import SimpleTestCase


class TestKunnethIdeal(SimpleTestCase):
    def test_sphere_is_trivial(self):
        """
        a sphere has no positive-degree products, so its Künneth ideal is zero
        :return:
        """
        from cohomology.ring import sphere_ring, kunneth_ideal_basis, in_kunneth_ideal
        ring = sphere_ring(4)
        self.assertEqual(kunneth_ideal_basis(ring, 4), [])
        self.assertFalse(in_kunneth_ideal(ring, ring.fundamental_class()))

    def test_torus_volume(self):
        from cohomology.ring import torus_ring, kunneth_ideal_basis, in_kunneth_ideal
        ring = torus_ring(3)
        self.assertTrue(in_kunneth_ideal(ring, ring.fundamental_class()))
        self.assertEqual(len(kunneth_ideal_basis(ring, 2)), 3)

    def test_cp_powers(self):
        """
        in CP^(m+1) the class s^m lies in K^(2m) for m >= 2, and s itself does not lie in K^2
        :return:
        """
        from cohomology.ring import cp_ring, in_kunneth_ideal
        for m in range(2, 4):
            ring = cp_ring(m + 1)
            s = ring.named_class("sym")
            power = ring.unit()
            for _ in range(m):
                power = power * s
            self.assertTrue(in_kunneth_ideal(ring, power))
        ring = cp_ring(2)
        self.assertFalse(in_kunneth_ideal(ring, ring.named_class("sym")))

    def test_product_of_surfaces(self):
        """
        vol(1) + vol(2) should lie in K^2 of a product of two genus-2 surfaces
        :return:
        """
        from cohomology.expressions import parse_manifold
        from cohomology.ring import build, evaluate_class, in_kunneth_ideal, kunneth_ideal_basis
        ring = build(parse_manifold("surface(2) * surface(2)"))
        omega = evaluate_class(ring, "vol(1) + vol(2)")
        self.assertTrue(in_kunneth_ideal(ring, omega))
        self.assertEqual(len(kunneth_ideal_basis(ring, 2)), ring.dims[2])

    def test_degree_one_and_zero(self):
        """
        a non-zero degree-one class never lies in the ideal; the zero class always does
        :return:
        """
        from cohomology.ring import torus_ring, in_kunneth_ideal
        ring = torus_ring(2)
        self.assertFalse(in_kunneth_ideal(ring, ring.basis(1)[0]))
        self.assertTrue(in_kunneth_ideal(ring, ring.zero()))

    def test_undefined_layers(self):
        from cohomology.ring import torus_ring, kunneth_ideal_basis
        from cohomology.exceptions import IdealUndefinedError
        ring = torus_ring(2)
        with self.assertRaises(IdealUndefinedError):
            kunneth_ideal_basis(ring, 1)
        with self.assertRaises(IdealUndefinedError):
            kunneth_ideal_basis(ring, 3)

    def test_non_homogeneous(self):
        from cohomology.ring import torus_ring, in_kunneth_ideal
        from cohomology.exceptions import NonHomogeneousError
        ring = torus_ring(2)
        with self.assertRaises(NonHomogeneousError):
            in_kunneth_ideal(ring, ring.unit() + ring.fundamental_class())

    def test_connsum_s2xs2(self):
        """
        the top class of a connected sum of S2xS2 lies in K^4, and K^2 is zero
        :return:
        """
        from cohomology.ring import connsum_ring, s2xs2_ring, in_kunneth_ideal, kunneth_ideal_basis
        ring = connsum_ring([s2xs2_ring()] * 4)
        self.assertTrue(in_kunneth_ideal(ring, ring.fundamental_class()))
        self.assertEqual(kunneth_ideal_basis(ring, 2), [])


class TestFactorizations(SimpleTestCase):
    def test_surface_volume(self):
        """
        every degree-one basis class of a surface divides the volume class
        :return:
        """
        from cohomology.ring import surface_ring, factorizations
        ring = surface_ring(2)
        pairs = factorizations(ring, ring.fundamental_class(), 1)
        self.assertEqual(len(pairs), 4)
        for c, c_prime in pairs:
            self.assertEqual(c * c_prime, ring.fundamental_class())

    def test_out_of_range(self):
        from cohomology.ring import surface_ring, factorizations
        ring = surface_ring(2)
        self.assertEqual(factorizations(ring, ring.fundamental_class(), 2), [])
        self.assertEqual(factorizations(ring, ring.zero(), 1), [])
