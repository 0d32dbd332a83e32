from django.test import SimpleTestCase
from fractions import Fraction
from hypothesis import given, settings as hsettings, strategies as st


def random_element(draw, n, k):
    from cohomology.exterior import ExtElement, blades
    terms = {}
    for b in blades(n, k):
        c = draw(st.integers(min_value=-2, max_value=2))
        if c != 0:
            terms[b] = c
    return ExtElement(n, terms)


@st.composite
def homogeneous_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    p = draw(st.integers(min_value=0, max_value=n))
    q = draw(st.integers(min_value=0, max_value=n))
    return n, p, q, random_element(draw, n, p), random_element(draw, n, q)


class TestBlade(SimpleTestCase):
    def test_rejects_unsorted_axes(self):
        """
        Blade should refuse axes that are not strictly increasing or lie outside 1..n
        :return:
        """
        from cohomology.exterior import Blade
        from cohomology.exceptions import InvalidBladeError
        with self.assertRaises(InvalidBladeError):
            Blade((2, 1), 3)
        with self.assertRaises(InvalidBladeError):
            Blade((1, 1), 3)
        with self.assertRaises(InvalidBladeError):
            Blade((1, 4), 3)

    def test_element_with_bad_blade(self):
        """
        an element built from raw axes should report a bad blade as InvalidBladeError, not a bare ValueError
        :return:
        """
        from cohomology.exterior import ExtElement
        from cohomology.exceptions import InvalidBladeError
        with self.assertRaises(InvalidBladeError) as ctx:
            ExtElement(3, {(3, 1): 1})
        self.assertNotIsInstance(ctx.exception, ValueError)

    def test_str(self):
        from cohomology.exterior import Blade
        self.assertEqual(str(Blade((), 4)), "1")
        self.assertEqual(str(Blade((1, 3), 4)), "e13")
        self.assertEqual(str(Blade((2, 11), 12)), "e(2,11)")


class TestDimComponent(SimpleTestCase):
    def test_binomials(self):
        """
        dim_component should be the binomial coefficient, and zero outside 0..n
        :return:
        """
        from cohomology.exterior import dim_component, blades
        self.assertEqual(dim_component(4, 2), 6)
        self.assertEqual(dim_component(6, 3), 20)
        self.assertEqual(dim_component(3, 4), 0)
        self.assertEqual(dim_component(3, -1), 0)
        for n in range(1, 6):
            for k in range(0, n + 1):
                self.assertEqual(len(list(blades(n, k))), dim_component(n, k))

    def test_blade_order(self):
        from cohomology.exterior import blades
        self.assertEqual([b.axes for b in blades(3, 2)], [(1, 2), (1, 3), (2, 3)])


class TestWedge(SimpleTestCase):
    def test_basis_pairs(self):
        """
        wedge of two basis blades should be the merged blade with the permutation sign, or zero if an axis repeats
        :return:
        """
        from cohomology.exterior import ExtElement, wedge
        e = lambda *axes: ExtElement.basis_vector(4, axes)
        self.assertEqual(wedge(e(1), e(2)), e(1, 2))
        self.assertEqual(wedge(e(2), e(1)), e(1, 2) * -1)
        self.assertEqual(wedge(e(1, 3), e(2)), e(1, 2, 3) * -1)
        self.assertEqual(wedge(e(2, 4), e(1, 3)), e(1, 2, 3, 4) * -1)
        self.assertEqual(wedge(e(1, 2), e(3, 4)), e(1, 2, 3, 4))
        self.assertTrue(wedge(e(1, 2), e(2, 3)).is_zero())

    def test_symplectic_square(self):
        """
        (e12 + e34) ^ (e12 + e34) should be 2 e1234
        :return:
        """
        from cohomology.exterior import ExtElement, wedge
        omega = ExtElement.basis_vector(4, (1, 2)) + ExtElement.basis_vector(4, (3, 4))
        self.assertEqual(wedge(omega, omega), ExtElement.basis_vector(4, (1, 2, 3, 4), 2))

    def test_dimension_mismatch(self):
        from cohomology.exterior import ExtElement, wedge
        from cohomology.exceptions import DimensionMismatchError
        with self.assertRaises(DimensionMismatchError):
            wedge(ExtElement.basis_vector(3, (1,)), ExtElement.basis_vector(4, (1,)))

    def test_wedge_all_empty(self):
        """
        the empty wedge product should be the scalar 1
        :return:
        """
        from cohomology.exterior import ExtElement, wedge_all
        self.assertEqual(wedge_all([], 3), ExtElement.scalar(3, 1))

    @hsettings(max_examples=60, deadline=None)
    @given(homogeneous_pairs())
    def test_graded_commutativity(self, sample):
        """
        a ^ b should equal (-1)^(pq) b ^ a for homogeneous a, b
        :return:
        """
        from cohomology.exterior import wedge
        n, p, q, a, b = sample
        sign = -1 if (p * q) % 2 else 1
        self.assertEqual(wedge(a, b), wedge(b, a) * sign)

    @hsettings(max_examples=40, deadline=None)
    @given(homogeneous_pairs(), st.integers(min_value=-3, max_value=3))
    def test_bilinear(self, sample, scalar):
        from cohomology.exterior import wedge
        n, p, q, a, b = sample
        self.assertEqual(wedge(a * scalar, b), wedge(a, b) * scalar)
        self.assertEqual(wedge(a + a, b), wedge(a, b) + wedge(a, b))


class TestExtElement(SimpleTestCase):
    def test_cancellation(self):
        """
        terms that cancel should not be stored
        :return:
        """
        from cohomology.exterior import ExtElement
        x = ExtElement.basis_vector(3, (1,)) - ExtElement.basis_vector(3, (1,))
        self.assertTrue(x.is_zero())
        self.assertEqual(x.degrees(), [])

    def test_coordinates(self):
        from cohomology.exterior import ExtElement
        x = ExtElement.from_coordinates(3, 2, [1, 0, Fraction(1, 2)])
        self.assertEqual(x.coordinates(2), [Fraction(1), Fraction(0), Fraction(1, 2)])
        self.assertEqual(x.degree, 2)

    def test_from_coordinates_length(self):
        from cohomology.exterior import ExtElement
        from cohomology.exceptions import DimensionMismatchError
        with self.assertRaises(DimensionMismatchError):
            ExtElement.from_coordinates(3, 2, [1, 0])

    def test_linearly_independent(self):
        """
        linearly_independent should use exact rank and reject mixed degrees
        :return:
        """
        from cohomology.exterior import ExtElement, linearly_independent
        from cohomology.exceptions import NonHomogeneousError
        e = lambda *axes: ExtElement.basis_vector(3, axes)
        self.assertTrue(linearly_independent([e(1), e(2), e(3)], 1))
        self.assertFalse(linearly_independent([e(1), e(2), e(1) + e(2)], 1))
        self.assertFalse(linearly_independent([e(1), e(2), e(3), e(1) - e(3)], 1))
        with self.assertRaises(NonHomogeneousError):
            linearly_independent([e(1), e(1, 2)], 1)
