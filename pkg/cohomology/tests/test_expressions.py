from django.test import SimpleTestCase
from fractions import Fraction


class TestParseManifold(SimpleTestCase):
    def test_atoms(self):
        """
        parse_manifold should recognise every constructor
        :return:
        """
        from cohomology.expressions import parse_manifold, Sphere, Torus, Surface, CPm, S2xS2
        self.assertEqual(parse_manifold("sphere(3)"), Sphere(3))
        self.assertEqual(parse_manifold("torus(4)"), Torus(4))
        self.assertEqual(parse_manifold(" Surface( 2 ) "), Surface(2))
        self.assertEqual(parse_manifold("cp(2)"), CPm(2))
        self.assertEqual(parse_manifold("s2xs2"), S2xS2())

    def test_product_flattens(self):
        """
        factors() should flatten nested products left to right
        :return:
        """
        from cohomology.expressions import parse_manifold, Surface, CPm, Torus
        expr = parse_manifold("surface(2) * (cp(2) * torus(1))")
        self.assertEqual(expr.factors(), [Surface(2), CPm(2), Torus(1)])
        self.assertEqual(expr.top_degree(), 8)

    def test_connsum_power(self):
        """
        connsum(X, k) should be the k-fold connected sum and print back in the short form
        :return:
        """
        from cohomology.expressions import parse_manifold, S2xS2
        expr = parse_manifold("connsum(s2xs2, 3)")
        self.assertEqual(expr.summands(), [S2xS2(), S2xS2(), S2xS2()])
        self.assertEqual(expr.to_text(), "connsum(s2xs2, 3)")
        self.assertEqual(expr.top_degree(), 4)

    def test_connsum_pair(self):
        from cohomology.expressions import parse_manifold, CPm, S2xS2
        expr = parse_manifold("connsum(cp(2), s2xs2)")
        self.assertEqual(expr.summands(), [CPm(2), S2xS2()])

    def test_text_round_trip(self):
        from cohomology.expressions import parse_manifold
        for text in ("surface(2) * cp(2)", "connsum(s2xs2, 8) * cp(2)", "torus(3)"):
            self.assertEqual(parse_manifold(parse_manifold(text).to_text()), parse_manifold(text))

    def test_errors_carry_position(self):
        """
        parse errors should report the offset where parsing stopped
        :return:
        """
        from cohomology.expressions import parse_manifold
        from cohomology.exceptions import ExpressionParseError
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_manifold("torus(2) * klein(2)")
        self.assertEqual(ctx.exception.position, 11)

        with self.assertRaises(ExpressionParseError) as ctx:
            parse_manifold("torus(2")
        self.assertEqual(ctx.exception.position, 7)

        with self.assertRaises(ExpressionParseError) as ctx:
            parse_manifold("")
        self.assertEqual(ctx.exception.position, 0)

    def test_constructor_errors(self):
        """
        out-of-range arguments should become parse errors at the constructor
        :return:
        """
        from cohomology.expressions import parse_manifold
        from cohomology.exceptions import ExpressionParseError
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_manifold("cp(2) * surface(0)")
        self.assertEqual(ctx.exception.position, 8)
        with self.assertRaises(ExpressionParseError):
            parse_manifold("connsum(s2xs2, 0)")


class TestParseClass(SimpleTestCase):
    def test_names_and_arguments(self):
        from cohomology.expressions import parse_class, ClassName, ClassProduct
        node = parse_class("vol(1) ^ sym(2)")
        self.assertIsInstance(node, ClassProduct)
        self.assertEqual(node.left.key, "vol(1)")
        self.assertEqual(node.right.key, "sym(2)")
        self.assertEqual(parse_class("gen(1, 3)").key, "gen(1,3)")
        self.assertIsInstance(parse_class("vol"), ClassName)

    def test_scalars_and_signs(self):
        """
        scalar literals should parse to exact fractions and unary minus to negation
        :return:
        """
        from cohomology.expressions import parse_class, ClassScalar, ClassNeg, ClassProduct, ClassSum
        node = parse_class("3/2 * b(4,1)")
        self.assertIsInstance(node, ClassProduct)
        self.assertEqual(node.left, ClassScalar(Fraction(3, 2)))
        self.assertIsInstance(parse_class("-2*gen(1,3)"), ClassNeg)
        self.assertIsInstance(parse_class("vol(1) - vol(2)"), ClassSum)

    def test_errors(self):
        from cohomology.expressions import parse_class
        from cohomology.exceptions import ExpressionParseError
        with self.assertRaises(ExpressionParseError) as ctx:
            parse_class("vol(1) +")
        self.assertEqual(ctx.exception.position, 8)
        with self.assertRaises(ExpressionParseError):
            parse_class("1/0 * vol")
        with self.assertRaises(ExpressionParseError):
            parse_class("vol(1) vol(2)")
