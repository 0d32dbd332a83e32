from django.test import SimpleTestCase
from fractions import Fraction
import json


class TestRingFiles(SimpleTestCase):
    def _ring(self, text="surface(2) * cp(2)"):
        from cohomology.expressions import parse_manifold
        from cohomology.ring import build
        return build(parse_manifold(text))

    def test_round_trip(self):
        """
        a ring written with ring_file_content and read back with load_ring_file should be the same ring with the same
        hash and named classes
        :return:
        """
        from cohomology.serializers import ring_file_content, render_json, load_ring_file, ring_hash
        ring = self._ring()
        body = render_json(ring_file_content(ring)).encode("UTF-8")
        loaded = load_ring_file(body)
        self.assertTrue(loaded.same_ring(ring))
        self.assertEqual(ring_hash(loaded), ring_hash(ring))
        self.assertEqual(loaded.named_class("sym(2)").vector(2), ring.named_class("sym(2)").vector(2))
        self.assertEqual(len(loaded.presentation.generators), 5)

    def test_hash_is_stable(self):
        """
        the hash should depend only on the algebraic content, not on the description or named classes
        :return:
        """
        from cohomology.serializers import ring_hash
        ring = self._ring("torus(3)")
        self.assertEqual(ring_hash(ring), ring_hash(self._ring("torus(3)")))
        self.assertEqual(ring_hash(ring), ring_hash(ring.replaced(description="renamed", named={})))
        self.assertNotEqual(ring_hash(ring), ring_hash(self._ring("torus(2) * torus(1)").replaced(
            labels=ring.labels)))
        self.assertRegex(ring_hash(ring), r"^[0-9a-f]{64}$")

    def test_tampered_hash(self):
        from cohomology.serializers import ring_file_content, render_json, load_ring_file
        from cohomology.exceptions import RingFormatError
        content = ring_file_content(self._ring("torus(2)"))
        content["ring_hash"] = "0" * 64
        with self.assertRaises(RingFormatError):
            load_ring_file(render_json(content).encode("UTF-8"))

    def test_tampered_structure(self):
        """
        a ring file whose products break graded commutativity should be refused by validation
        :return:
        """
        from cohomology.serializers import ring_to_dict, load_ring_file
        from cohomology.exceptions import RingStructureError
        content = json.loads(json.dumps(ring_to_dict(self._ring("s2xs2"))))
        for entry in content["structure"]:
            if entry["i"] == 1 and entry["j"] == 0:
                entry["product"][0]["coeff"] = "-1"
        body = json.dumps({"kind": "ring", "ring": content}).encode("UTF-8")
        with self.assertRaises(RingStructureError):
            load_ring_file(body)

    def test_incomplete_presentation(self):
        """
        a ring file whose monomial presentation leaves a basis element without a word should be refused
        :return:
        """
        from cohomology.serializers import ring_to_dict, load_ring_file
        from cohomology.exceptions import RingFormatError
        content = json.loads(json.dumps(ring_to_dict(self._ring("torus(2)"))))
        words = content["monomial_presentation"]["words"]
        content["monomial_presentation"]["words"] = [w for w in words if (w["degree"], w["index"]) != (2, 0)]
        body = json.dumps({"kind": "ring", "ring": content}).encode("UTF-8")
        with self.assertRaises(RingFormatError) as ctx:
            load_ring_file(body)
        self.assertIn("(2, 0)", str(ctx.exception))

    def test_presentation_word_of_wrong_degree(self):
        from cohomology.serializers import ring_to_dict, load_ring_file
        from cohomology.exceptions import RingFormatError
        content = json.loads(json.dumps(ring_to_dict(self._ring("torus(2)"))))
        for w in content["monomial_presentation"]["words"]:
            if (w["degree"], w["index"]) == (2, 0):
                w["generators"] = [0]
        body = json.dumps({"kind": "ring", "ring": content}).encode("UTF-8")
        with self.assertRaises(RingFormatError):
            load_ring_file(body)

    def test_not_json(self):
        from cohomology.serializers import load_ring_file
        from cohomology.exceptions import RingFormatError
        with self.assertRaises(RingFormatError):
            load_ring_file(b"{not json")
        with self.assertRaises(RingFormatError):
            load_ring_file(b'{"kind": "verdict"}')

    def test_bad_dims(self):
        from cohomology.serializers import ring_to_dict, ring_from_dict
        from cohomology.exceptions import RingFormatError
        content = json.loads(json.dumps(ring_to_dict(self._ring("torus(2)"))))
        content["dims"] = [1, 2]
        with self.assertRaises(RingFormatError):
            ring_from_dict(content)


class TestElementSerializers(SimpleTestCase):
    def test_ring_element(self):
        """
        ring elements should be written with exact p/q coordinates
        :return:
        """
        from cohomology.ring import torus_ring
        from cohomology.serializers import element_to_dict, element_from_dict
        ring = torus_ring(2)
        x = ring.basis(1)[0].scaled(Fraction(-3, 2))
        content = element_to_dict(x)
        self.assertEqual(content, {"components": [{"degree": 1, "vector": ["-3/2", "0"]}]})
        self.assertEqual(element_from_dict(ring, content), x)

    def test_ring_element_wrong_length(self):
        from cohomology.ring import torus_ring
        from cohomology.serializers import element_from_dict
        from cohomology.exceptions import RingFormatError
        with self.assertRaises(RingFormatError):
            element_from_dict(torus_ring(2), {"components": [{"degree": 1, "vector": ["1"]}]})

    def test_ext_element(self):
        from cohomology.exterior import ExtElement
        from cohomology.serializers import ExtElementSerializer, ext_from_dict
        x = ExtElement.basis_vector(4, (1, 2)) + ExtElement.basis_vector(4, (3, 4), Fraction(1, 3))
        content = ExtElementSerializer(x).data
        self.assertEqual(ext_from_dict(content), x)

    def test_ext_element_bad_blade(self):
        from cohomology.serializers import ext_from_dict
        from cohomology.exceptions import RingFormatError
        with self.assertRaises(RingFormatError):
            ext_from_dict({"ambient_n": 3, "terms": [{"axes": [2, 1], "coeff": "1"}]})
        with self.assertRaises(RingFormatError):
            ext_from_dict({"ambient_n": 3, "terms": [{"axes": [1], "coeff": "1/0"}]})
