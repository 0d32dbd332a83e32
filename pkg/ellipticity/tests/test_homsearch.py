from django.test import SimpleTestCase


def ring_and_class(manifold, omega):
    from cohomology.expressions import parse_manifold
    from cohomology.ring import build, evaluate_class
    ring = build(parse_manifold(manifold))
    return ring, evaluate_class(ring, omega)


def e(n, *axes, coeff=1):
    from cohomology.exterior import ExtElement
    return ExtElement.basis_vector(n, axes, coeff)


class TestVerifyHom(SimpleTestCase):
    def test_torus(self):
        """
        the coordinate map of the 2-torus should verify
        :return:
        """
        from ellipticity.homsearch import induced_witness, verify_hom, hom_failure
        ring, vol = ring_and_class("torus(2)", "vol")
        witness = induced_witness(ring, [e(2, 1), e(2, 2)], 2)
        self.assertEqual(witness.images[2], [e(2, 1, 2)])
        self.assertTrue(verify_hom(witness, vol))
        self.assertIsNone(hom_failure(witness, vol))

    def test_vanishing_form(self):
        from ellipticity.homsearch import induced_witness, hom_failure
        ring, vol = ring_and_class("torus(2)", "vol")
        witness = induced_witness(ring, [e(2, 1), e(2, 1)], 2)
        self.assertEqual(hom_failure(witness, vol), "Phi(omega) = 0")

    def test_not_multiplicative(self):
        """
        hom_failure should name the first basis pair whose product is not preserved
        :return:
        """
        from ellipticity.homsearch import HomWitness, hom_failure, verify_hom
        ring, vol = ring_and_class("torus(2)", "vol")
        witness = HomWitness(ring, 2, {1: [e(2, 1), e(2, 2)], 2: [e(2, 1, 2, coeff=2)]})
        self.assertFalse(verify_hom(witness, vol))
        self.assertIn("Phi(t1*t2)", hom_failure(witness, vol))

    def test_shape(self):
        from ellipticity.homsearch import HomWitness, verify_hom
        from ellipticity.exceptions import WitnessShapeError
        ring, vol = ring_and_class("torus(2)", "vol")
        with self.assertRaises(WitnessShapeError):
            verify_hom(HomWitness(ring, 2, {1: [e(2, 1), e(2, 2)]}), vol)
        with self.assertRaises(WitnessShapeError):
            verify_hom(HomWitness(ring, 2, {1: [e(2, 1)], 2: [e(2, 1, 2)]}), vol)
        with self.assertRaises(WitnessShapeError):
            verify_hom(HomWitness(ring, 2, {1: [e(2, 1), e(2, 1, 2)], 2: [e(2, 1, 2)]}), vol)
        with self.assertRaises(WitnessShapeError):
            verify_hom(HomWitness(ring, 2, {1: [e(3, 1), e(3, 2)], 2: [e(3, 1, 2)]}), vol)

    def test_symplectic(self):
        """
        s -> e12 + e34 should map sym^2 in CP^2 to 2 e1234, while s -> e12 kills it
        :return:
        """
        from ellipticity.homsearch import induced_witness, verify_hom
        ring, omega = ring_and_class("cp(2)", "sym ^ sym")
        witness = induced_witness(ring, [e(4, 1, 2) + e(4, 3, 4)], 4)
        self.assertTrue(verify_hom(witness, omega))
        self.assertEqual(witness.apply(omega), e(4, 1, 2, 3, 4, coeff=2))
        self.assertFalse(verify_hom(induced_witness(ring, [e(4, 1, 2)], 4), omega))

    def test_degrees_above_n(self):
        """
        classes above degree n should map to zero
        :return:
        """
        from ellipticity.homsearch import induced_witness
        ring, omega = ring_and_class("surface(1) * cp(2)", "vol(1) ^ sym(2)")
        witness = induced_witness(ring, [e(4, 1), e(4, 2), e(4, 3, 4)], 4)
        self.assertEqual(sorted(witness.images.keys()), [1, 2, 3, 4])
        self.assertTrue(witness.apply(ring.fundamental_class()).is_zero())

    def test_missing_presentation(self):
        from ellipticity.homsearch import induced_witness, HomEnumerator
        from ellipticity.exceptions import PresentationMissingError
        ring, vol = ring_and_class("torus(2)", "vol")
        bare = ring.replaced(presentation=None)
        with self.assertRaises(PresentationMissingError):
            induced_witness(bare, [e(2, 1), e(2, 2)], 2)
        with self.assertRaises(PresentationMissingError):
            HomEnumerator(bare, bare.fundamental_class(), 2)


class TestTemplates(SimpleTestCase):
    def _template(self, manifold, omega, n):
        from cohomology.expressions import parse_manifold
        from ellipticity.homsearch import witness_template
        ring, form = ring_and_class(manifold, omega)
        return ring, form, witness_template(parse_manifold(manifold), form, n, ring)

    def test_torus_times_cp2(self):
        """
        T^2 x CP^2 in dimension 4 should use the torus axes e1, e2 and s -> e34
        :return:
        """
        from ellipticity.homsearch import verify_hom
        ring, omega, witness = self._template("surface(1) * cp(2)", "vol(1) ^ sym(2)", 4)
        self.assertIsNotNone(witness)
        self.assertEqual(witness.images[1][:2], [e(4, 1), e(4, 2)])
        self.assertEqual(witness.image_of_basis(2, 0), e(4, 3, 4))
        self.assertTrue(verify_hom(witness, omega))

    def test_cp(self):
        ring, omega, witness = self._template("cp(2)", "sym ^ sym", 4)
        self.assertEqual(witness.images[2], [e(4, 1, 2) + e(4, 3, 4)])

        ring, omega, witness = self._template("cp(3)", "sym ^ sym", 4)
        self.assertEqual(witness.images[2], [e(4, 1, 2) + e(4, 3, 4)])

        ring, omega, witness = self._template("cp(3)", "sym ^ sym ^ sym", 6)
        self.assertEqual(witness.images[2], [e(6, 1, 2) + e(6, 3, 4) + e(6, 5, 6)])

    def test_connsum_times_cp2(self):
        """
        up to three S2xS2 summands should share one 4-block next to a 2-block for CP^2
        :return:
        """
        from ellipticity.homsearch import verify_hom
        for count in range(1, 4):
            ring, omega, witness = self._template("connsum(s2xs2, {0}) * cp(2)".format(count), "vol(1) ^ sym(2)", 6)
            self.assertIsNotNone(witness)
            self.assertTrue(verify_hom(witness, omega))
            self.assertEqual(witness.apply(omega), e(6, 1, 2, 3, 4, 5, 6))

    def test_no_template(self):
        ring, omega, witness = self._template("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4)
        self.assertIsNone(witness)

    def test_factor_templates_order(self):
        """
        CP^m templates should be offered from the largest block down, ending with the zero map
        :return:
        """
        from cohomology.expressions import CPm
        from ellipticity.homsearch import factor_templates
        sizes = [size for size, _ in factor_templates(CPm(3), 1)]
        self.assertEqual(sizes, [6, 4, 2, 0])


class TestEnumeration(SimpleTestCase):
    def test_candidate_images(self):
        """
        candidates should come sparsest first, and with no zero in the coefficient set only with full support
        :return:
        """
        from ellipticity.homsearch import candidate_images
        from fractions import Fraction
        coefficients = (Fraction(0), Fraction(1), Fraction(-1))
        found = list(candidate_images(2, 1, coefficients))
        self.assertEqual(len(found), 9)
        self.assertTrue(found[0].is_zero())
        self.assertEqual(found[1], e(2, 1))
        self.assertEqual(found[2], e(2, 1, coeff=-1))
        self.assertEqual(found[5], e(2, 1) + e(2, 2))
        self.assertEqual(len(list(candidate_images(2, 1, (Fraction(1), Fraction(-1))))), 4)

    def test_torus(self):
        from ellipticity.homsearch import enumerate_hom
        ring, vol = ring_and_class("torus(2)", "vol")
        witness = enumerate_hom(ring, vol, 2, "0,1,-1", 1000, 1)
        self.assertEqual(witness.images[1], [e(2, 1), e(2, 2)])

    def test_cp2(self):
        """
        the first CP^2 witness in enumeration order should be s -> e12 + e34
        :return:
        """
        from ellipticity.homsearch import enumerate_hom
        ring, omega = ring_and_class("cp(2)", "sym ^ sym")
        witness = enumerate_hom(ring, omega, 4, "0,1,-1", 1000, 1)
        self.assertEqual(witness.images[2], [e(4, 1, 2) + e(4, 3, 4)])

    def test_exhausted_budget(self):
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("torus(2)", "vol")
        enumerator = HomEnumerator(ring, vol, 2, "0,1,-1", 1, 1)
        self.assertIsNone(enumerator.run())
        self.assertTrue(enumerator.exhausted)
        self.assertEqual(enumerator.nodes_visited, 1)

    def test_complete_search_without_witness(self):
        """
        a genus-2 surface has no witness in dimension 2, and the search should finish without exhausting its budget
        :return:
        """
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("surface(2)", "vol")
        enumerator = HomEnumerator(ring, vol, 2, "1,-1", 100000, 1)
        self.assertIsNone(enumerator.run())
        self.assertFalse(enumerator.exhausted)
        self.assertGreater(enumerator.nodes_visited, 0)

    def test_jobs_do_not_change_the_answer(self):
        """
        the witness found should not depend on the number of workers
        :return:
        """
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("torus(3)", "vol")
        single = HomEnumerator(ring, vol, 3, "0,1,-1", 20000, 1)
        pooled = HomEnumerator(ring, vol, 3, "0,1,-1", 20000, 2)
        first = single.run()
        second = pooled.run()
        self.assertEqual(first.images, second.images)
        self.assertEqual(single.nodes_visited, pooled.nodes_visited)

    def test_every_candidate_costs_a_node(self):
        """
        rejected candidates should be charged like accepted ones: ten nodes below the zero image of t1, then five
        more until t1 -> e1, t2 -> e2
        :return:
        """
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("torus(2)", "vol")
        enumerator = HomEnumerator(ring, vol, 2, "0,1,-1", 1000, 1)
        witness = enumerator.run()
        self.assertEqual(witness.images[1], [e(2, 1), e(2, 2)])
        self.assertEqual(enumerator.nodes_visited, 15)

        capped = HomEnumerator(ring, vol, 2, "0,1,-1", 12, 1)
        self.assertIsNone(capped.run())
        self.assertTrue(capped.exhausted)
        self.assertFalse(capped.timed_out)
        self.assertEqual(capped.nodes_visited, 12)

    def test_deadline(self):
        """
        once the wall-clock deadline has passed the enumeration should stop and report itself exhausted and timed out
        :return:
        """
        from itertools import chain, repeat
        from mock import patch
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("torus(3)", "vol")
        enumerator = HomEnumerator(ring, vol, 3, "0,1,-1", 20000, 1, deadline=5)
        with patch("ellipticity.homsearch.time.time", side_effect=chain([0.0], repeat(100.0))):
            self.assertIsNone(enumerator.run())
        self.assertTrue(enumerator.exhausted)
        self.assertTrue(enumerator.timed_out)

    def test_no_deadline(self):
        from ellipticity.homsearch import HomEnumerator
        ring, vol = ring_and_class("torus(2)", "vol")
        enumerator = HomEnumerator(ring, vol, 2, "0,1,-1", 1000, 1, deadline=0)
        self.assertIsNone(enumerator.deadline)
        self.assertIsNotNone(enumerator.run())
        self.assertFalse(enumerator.timed_out)
