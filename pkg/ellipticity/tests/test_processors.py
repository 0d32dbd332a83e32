from django.test import SimpleTestCase
from mock import MagicMock
import json


def as_body(content) -> bytes:
    from cohomology.serializers import render_json
    return render_json(content).encode("UTF-8")


def reloaded(content) -> dict:
    return json.loads(as_body(content).decode("UTF-8"))


class TestVerdictFiles(SimpleTestCase):
    def test_obstructed_verdict(self):
        """
        an OBSTRUCTED verdict file should re-verify from its recorded manifold expression
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        verdict = run_query(Query("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4))
        message = verify_file(as_body(verdict_file_content(verdict)))
        self.assertTrue(message.startswith("OBSTRUCTED verdict verified: H1Annihilator 4 >= 4"))

    def test_witness_verdict(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        verdict = run_query(Query("surface(1) * cp(2)", "vol(1) ^ sym(2)", 4))
        self.assertEqual(verify_file(as_body(verdict_file_content(verdict))), "WITNESS verdict verified")

    def test_status_without_payload(self):
        """
        a verdict whose status does not match its payload should be refused
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidWitnessError
        verdict = run_query(Query("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4))
        content = reloaded(verdict_file_content(verdict))
        content["status"] = "WITNESS"
        with self.assertRaises(InvalidWitnessError):
            verify_file(as_body(content))

    def test_obstructed_verdict_for_another_class(self):
        """
        an OBSTRUCTED verdict whose form class no longer matches its certificate should be refused
        :return:
        """
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        verdict = run_query(Query("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4))
        content = reloaded(verdict_file_content(verdict))
        self.assertEqual(content["omega"]["components"][0]["vector"], ["0", "1"])
        content["omega"]["components"][0]["vector"] = ["1", "1"]
        with self.assertRaises(InvalidCertificateError) as ctx:
            verify_file(as_body(content))
        self.assertIn("different form class", str(ctx.exception))

        tampered = run_query(Query("surface(2) * cp(2)", "sym(2) ^ sym(2) + vol(1) ^ sym(2)", 4))
        self.assertEqual(tampered.status, "WITNESS")

    def test_obstructed_verdict_for_another_dimension(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        verdict = run_query(Query("surface(2) * cp(2)", "vol(1) ^ sym(2)", 4))
        content = reloaded(verdict_file_content(verdict))
        content["certificate"]["n"] = 5
        with self.assertRaises(InvalidCertificateError):
            verify_file(as_body(content))

    def test_tampered_preconditions(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import verdict_file_content
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        verdict = run_query(Query("surface(1) * cp(2)", "vol(1) ^ sym(2)", 4))
        content = reloaded(verdict_file_content(verdict))
        content["preconditions"]["omega_in_Kn"] = False
        with self.assertRaises(InvalidCertificateError):
            verify_file(as_body(content))


class TestCertificateFiles(SimpleTestCase):
    def setUp(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import certificate_file_content
        self.verdict = run_query(Query("connsum(s2xs2, 8) * cp(2)", "vol(1) ^ sym(2)", 6))
        self.content = reloaded(certificate_file_content(self.verdict.certificate))

    def test_round_trip(self):
        from ellipticity.processors import verify_file
        self.assertEqual(verify_file(as_body(self.content)), "DualPair certificate verified: 16 > 15")

    def test_tampered_product(self):
        """
        changing one entry of the products table should be reported against that product
        :return:
        """
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        entry = self.content["certificate"]["products"][3]
        entry["vector"][0] = "7"
        with self.assertRaises(InvalidCertificateError) as ctx:
            verify_file(as_body(self.content))
        self.assertIn("{0}*{1}".format(entry["left"], entry["right"]), str(ctx.exception))

    def test_tampered_hash(self):
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        self.content["certificate"]["ring_hash"] = "a" * 64
        with self.assertRaises(InvalidCertificateError):
            verify_file(as_body(self.content))

    def test_without_manifold(self):
        """
        a certificate with no manifold expression should verify only when the ring is passed in
        :return:
        """
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        self.content["certificate"]["manifold"] = None
        with self.assertRaises(InvalidCertificateError):
            verify_file(as_body(self.content))
        self.assertTrue(verify_file(as_body(self.content), self.verdict.ring).startswith("DualPair"))

    def test_malformed_class(self):
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        self.content["certificate"]["classes"]["left"][0]["components"][0]["vector"] = ["1"]
        with self.assertRaises(InvalidCertificateError):
            verify_file(as_body(self.content))


class TestWitnessFiles(SimpleTestCase):
    def setUp(self):
        from ellipticity.pipeline import Query, run_query
        from ellipticity.serializers import witness_file_content
        verdict = run_query(Query("cp(2)", "sym ^ sym", 4))
        self.content = reloaded(witness_file_content(verdict.witness, verdict.omega, "cp(2)", verdict.witness_source))

    def test_round_trip(self):
        from ellipticity.processors import verify_file
        self.assertEqual(verify_file(as_body(self.content)), "witness verified: Phi(omega) = 2*e1234")

    def test_not_a_homomorphism(self):
        """
        a witness whose degree-four image disagrees with the square of the degree-two image should be refused
        :return:
        """
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidWitnessError
        for entry in self.content["witness"]["images"]:
            if entry["degree"] == 4:
                entry["images"][0]["terms"][0]["coeff"] = "3"
        with self.assertRaises(InvalidWitnessError) as ctx:
            verify_file(as_body(self.content))
        self.assertIn("Phi(s*s)", str(ctx.exception))

    def test_missing_degree(self):
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidWitnessError
        self.content["witness"]["images"] = self.content["witness"]["images"][:1]
        with self.assertRaises(InvalidWitnessError):
            verify_file(as_body(self.content))


class TestSubmanifoldReportFiles(SimpleTestCase):
    def setUp(self):
        from cohomology.expressions import parse_manifold
        from cohomology.ring import evaluate_class, slice_inclusion
        from ellipticity.obstruct import submanifold_bound
        from ellipticity.serializers import report_file_content
        manifold = "surface(2) * torus(2)"
        ring_n, ring_m, iota = slice_inclusion(parse_manifold(manifold), 1)
        report = submanifold_bound(ring_n, ring_m, iota, evaluate_class(ring_n, "vol(1) + vol(2)"), 2, 1)
        report.certificate.manifold = manifold
        self.content = reloaded(report_file_content(report, manifold, 1))

    def test_round_trip(self):
        from ellipticity.processors import verify_file
        self.assertEqual(verify_file(as_body(self.content)), "submanifold report and certificate verified")

    def test_tampered_report(self):
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        self.content["report"]["degrees"][1]["image_dim"] = 2
        with self.assertRaises(InvalidCertificateError) as ctx:
            verify_file(as_body(self.content))
        self.assertIn("degrees", str(ctx.exception))


class TestFileDispatch(SimpleTestCase):
    def test_unknown_kind(self):
        from ellipticity.processors import verify_file
        from ellipticity.exceptions import InvalidCertificateError
        with self.assertRaises(InvalidCertificateError):
            verify_file(b'{"kind": "bundle"}')
        with self.assertRaises(InvalidCertificateError):
            verify_file(b'[1, 2]')
        with self.assertRaises(InvalidCertificateError):
            verify_file(b'not json')

    def test_schema_failure(self):
        """
        a file that fails its schema should never reach valid_content_receive
        :return:
        """
        from ellipticity.processors import CertificateFileProcessor
        from ellipticity.exceptions import InvalidCertificateError
        processor = CertificateFileProcessor()
        processor.valid_content_receive = MagicMock()
        with self.assertRaises(InvalidCertificateError):
            processor.process({"kind": "certificate", "certificate": {"type": "DualPair"}})
        processor.valid_content_receive.assert_not_called()

    def test_dispatch(self):
        from ellipticity.processors import FILE_PROCESSORS, WitnessFileProcessor
        self.assertIs(FILE_PROCESSORS["witness"], WitnessFileProcessor)
