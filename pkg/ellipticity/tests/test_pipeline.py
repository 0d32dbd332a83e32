from django.test import SimpleTestCase
from mock import patch


class TestQuery(SimpleTestCase):
    def test_needs_manifold_or_ring(self):
        from ellipticity.pipeline import Query
        with self.assertRaises(ValueError):
            Query(None, "vol", 2)

    def test_expression(self):
        from cohomology.expressions import Torus
        from ellipticity.pipeline import Query
        self.assertEqual(Query("torus(2)", "vol", 2).expression(), Torus(2))


class TestRunQuery(SimpleTestCase):
    def test_obstructed(self):
        """
        run_query should stop at the first certificate and record the manifold on it
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_OBSTRUCTED, CERTIFICATE_H1_ANNIHILATOR
        verdict = run_query(Query("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4))
        self.assertEqual(verdict.status, VERDICT_OBSTRUCTED)
        self.assertEqual(verdict.exit_code, 1)
        self.assertEqual(verdict.certificate.kind, CERTIFICATE_H1_ANNIHILATOR)
        self.assertEqual(verdict.certificate.manifold, "surface(2) * cp(2)")
        self.assertEqual(verdict.search_log, [{"stage": "obstruction", "found": True}])
        self.assertIsNone(verdict.witness)

    def test_template_witness(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_WITNESS, WITNESS_SOURCE_TEMPLATE
        verdict = run_query(Query("surface(1) * cp(2)", "vol(1) ^ sym(2)", 4))
        self.assertEqual(verdict.status, VERDICT_WITNESS)
        self.assertEqual(verdict.exit_code, 0)
        self.assertEqual(verdict.witness_source, WITNESS_SOURCE_TEMPLATE)
        self.assertEqual([entry["stage"] for entry in verdict.search_log], ["obstruction", "template"])

    def test_enumeration_witness(self):
        """
        with no template available the pipeline should fall through to the enumeration
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_WITNESS, WITNESS_SOURCE_ENUMERATION
        with patch("ellipticity.pipeline.witness_template", return_value=None) as mock_template:
            verdict = run_query(Query("torus(2)", "vol", 2), "0,1,-1", 1000, 1)
            mock_template.assert_called_once()
        self.assertEqual(verdict.status, VERDICT_WITNESS)
        self.assertEqual(verdict.witness_source, WITNESS_SOURCE_ENUMERATION)
        entry = verdict.search_log[-1]
        self.assertEqual(entry["stage"], "enumeration")
        self.assertTrue(entry["found"])
        self.assertFalse(entry["exhausted"])
        self.assertEqual(entry["budget"], 1000)
        self.assertEqual(entry["coeff_set"], ["0", "1", "-1"])

    def test_unknown(self):
        """
        a query with no certificate, no template and no enumerated witness within budget should be UNKNOWN
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_UNKNOWN
        verdict = run_query(Query("connsum(s2xs2, 5) * cp(2)", "vol(1) ^ sym(2)", 6), "0,1,-1", 50, 1)
        self.assertEqual(verdict.status, VERDICT_UNKNOWN)
        self.assertEqual(verdict.exit_code, 2)
        self.assertTrue(verdict.search_log[-1]["exhausted"])

    def test_ring_without_expression(self):
        """
        a query given only a ring should skip the templates
        :return:
        """
        from cohomology.expressions import parse_manifold
        from cohomology.ring import build
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_WITNESS
        ring = build(parse_manifold("torus(2)"))
        verdict = run_query(Query(None, "vol", 2, ring), "0,1,-1", 1000, 1)
        self.assertEqual(verdict.status, VERDICT_WITNESS)
        self.assertEqual(verdict.search_log[1], {"stage": "template", "found": False,
                                                 "skipped": "no manifold expression"})

    def test_ring_without_presentation(self):
        from cohomology.expressions import parse_manifold
        from cohomology.ring import build
        from ellipticity.pipeline import Query, run_query
        from ellipticity.choices import VERDICT_UNKNOWN
        ring = build(parse_manifold("torus(2)")).replaced(presentation=None)
        verdict = run_query(Query(None, "vol", 2, ring))
        self.assertEqual(verdict.status, VERDICT_UNKNOWN)
        self.assertEqual(verdict.search_log[-1]["skipped"], "no monomial presentation")

    def test_preconditions(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.exceptions import PreconditionError
        with self.assertRaises(PreconditionError):
            run_query(Query("sphere(4)", "vol", 4))
