"""
JSON forms of exterior-algebra elements, ring elements and whole rings.

Coefficients are written as "p/q" (or "p") strings so that files round-trip exactly.  Ring files are checked against
RING_FILE_SCHEMA before the serializers see them.
"""
from fractions import Fraction
from typing import Optional
import hashlib
import io
import json
import logging

import jsonschema
from django.conf import settings
from rest_framework.parsers import JSONParser
from rest_framework.serializers import Serializer, Field, CharField, IntegerField, ListField, ValidationError

from .exceptions import RingFormatError, RingStructureError
from .exterior import ExtElement
from .ring import GradedRing, Generator, MonomialPresentation, RingElement, Word

logger = logging.getLogger(__name__)

RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]+)?$"


class FractionField(Field):
    """
    an exact rational written as a "p/q" string
    """
    default_error_messages = {
        "invalid": "'{value}' is not a rational of the form p or p/q",
        "zero_denominator": "'{value}' has a zero denominator",
    }

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        if isinstance(data, int) and not isinstance(data, bool):
            return Fraction(data)
        if not isinstance(data, str):
            self.fail("invalid", value=data)
        try:
            return Fraction(data.strip())
        except ZeroDivisionError:
            self.fail("zero_denominator", value=data)
        except ValueError:
            self.fail("invalid", value=data)


class BladeTermSerializer(Serializer):
    axes = ListField(child=IntegerField(min_value=1), allow_empty=True)
    coeff = FractionField()


class ExtElementSerializer(Serializer):
    """
    {"ambient_n": n, "terms": [{"axes": [...], "coeff": "p/q"}, ...]}
    """
    ambient_n = IntegerField(min_value=1)
    terms = ListField(child=BladeTermSerializer(), allow_empty=True)

    def to_representation(self, instance: ExtElement):
        return {"ambient_n": instance.ambient_n, "terms": instance.term_list}

    def validate(self, attrs):
        for term in attrs["terms"]:
            axes = term["axes"]
            if any(a >= b for a, b in zip(axes, axes[1:])) or any(a > attrs["ambient_n"] for a in axes):
                raise ValidationError("blade {0} is not a strictly increasing subset of 1..{1}".format(
                    axes, attrs["ambient_n"]))
        return attrs

    def create(self, validated_data) -> ExtElement:
        return ExtElement(validated_data["ambient_n"],
                          {tuple(t["axes"]): t["coeff"] for t in validated_data["terms"]})


class CoordinatesSerializer(Serializer):
    """
    a homogeneous ring class as a degree plus an exact coordinate vector
    """
    degree = IntegerField(min_value=0)
    vector = ListField(child=FractionField(), allow_empty=True)


class RingElementSerializer(Serializer):
    """
    {"components": [{"degree": k, "vector": [...]}, ...]}; building an element needs the ring in the context
    """
    components = ListField(child=CoordinatesSerializer(), allow_empty=True)

    def to_representation(self, instance: RingElement):
        return {"components": [{"degree": k, "vector": [str(v) for v in vec]} for k, vec in instance.coords.items()]}

    def create(self, validated_data) -> RingElement:
        ring = self.context["ring"]
        try:
            return RingElement(ring, {c["degree"]: c["vector"] for c in validated_data["components"]})
        except (IndexError, RingStructureError) as e:
            raise RingFormatError("class does not fit the ring: {0}".format(e))


def element_to_dict(elem: RingElement) -> dict:
    return RingElementSerializer(elem).data


def element_from_dict(ring: GradedRing, content: dict) -> RingElement:
    serializer = RingElementSerializer(data=content, context={"ring": ring})
    if not serializer.is_valid():
        raise RingFormatError(str(serializer.errors))
    return serializer.save()


def ext_from_dict(content: dict) -> ExtElement:
    serializer = ExtElementSerializer(data=content)
    if not serializer.is_valid():
        raise RingFormatError(str(serializer.errors))
    return serializer.save()


class SparseEntrySerializer(Serializer):
    index = IntegerField(min_value=0)
    coeff = FractionField()


class StructureEntrySerializer(Serializer):
    """
    one stored product: basis_p[i] * basis_q[j] = sum of coeff * basis_{p+q}[index]
    """
    p = IntegerField(min_value=0)
    q = IntegerField(min_value=0)
    i = IntegerField(min_value=0)
    j = IntegerField(min_value=0)
    product = ListField(child=SparseEntrySerializer(), allow_empty=True)


class GeneratorSerializer(Serializer):
    name = CharField()
    degree = IntegerField(min_value=1)
    index = IntegerField(min_value=0)


class WordSerializer(Serializer):
    degree = IntegerField(min_value=0)
    index = IntegerField(min_value=0)
    coeff = FractionField()
    generators = ListField(child=IntegerField(min_value=0), allow_empty=True)


class PresentationSerializer(Serializer):
    generators = ListField(child=GeneratorSerializer(), allow_empty=True)
    words = ListField(child=WordSerializer(), allow_empty=True)


class NamedClassSerializer(Serializer):
    key = CharField()
    degree = IntegerField(min_value=0)
    vector = ListField(child=FractionField(), allow_empty=True)


class KunnethEntrySerializer(Serializer):
    degree = IntegerField(min_value=0)
    index = IntegerField(min_value=0)
    components = ListField(child=ListField(child=IntegerField(min_value=0), min_length=2, max_length=2))


class GradedRingSerializer(Serializer):
    """
    Ring file content. Unit products are implicit and never written.
    """
    top_degree = IntegerField(min_value=1)
    dims = ListField(child=IntegerField(min_value=0))
    labels = ListField(child=ListField(child=CharField(), allow_empty=True))
    structure = ListField(child=StructureEntrySerializer(), allow_empty=True)
    fundamental_index = IntegerField(min_value=0, default=0)
    monomial_presentation = PresentationSerializer(required=False, allow_null=True)
    named_classes = ListField(child=NamedClassSerializer(), required=False)
    kunneth = ListField(child=KunnethEntrySerializer(), required=False, allow_null=True)
    description = CharField(required=False, allow_null=True, allow_blank=True)

    def to_representation(self, ring: GradedRing):
        structure = []
        for (p, q) in ring.structure_pairs():
            if p == 0 or q == 0:
                continue
            for (i, j), vec in sorted(ring.structure_table(p, q).items()):
                structure.append({"p": p, "q": q, "i": i, "j": j,
                                  "product": [{"index": idx, "coeff": str(c)} for idx, c in vec]})
        content = {
            "top_degree": ring.top_degree,
            "dims": list(ring.dims),
            "labels": [list(row) for row in ring.labels],
            "structure": structure,
            "fundamental_index": ring.fundamental_index,
            "monomial_presentation": None,
            "named_classes": [{"key": key, "degree": degree, "vector": [str(v) for v in vector]}
                              for key, degree, vector in ring.named_items()],
            "kunneth": None,
            "description": ring.description,
        }
        if ring.presentation is not None:
            content["monomial_presentation"] = {
                "generators": [{"name": g.name, "degree": g.degree, "index": g.index}
                               for g in ring.presentation.generators],
                "words": [{"degree": k, "index": i, "coeff": str(Fraction(w.coeff)), "generators": list(w.generators)}
                          for (k, i), w in sorted(ring.presentation.words.items())],
            }
        if ring.kunneth is not None:
            content["kunneth"] = [{"degree": k, "index": i, "components": [list(c) for c in comps]}
                                  for (k, i), comps in sorted(ring.kunneth.items())]
        return content

    def validate(self, attrs):
        d = attrs["top_degree"]
        dims = attrs["dims"]
        if len(dims) != d + 1:
            raise ValidationError("dims must list {0} entries for top degree {1}".format(d + 1, d))
        for entry in attrs["structure"]:
            p, q = entry["p"], entry["q"]
            if p + q > d or entry["i"] >= dims[p] or entry["j"] >= dims[q]:
                raise ValidationError("structure entry {0} does not fit dims {1}".format(
                    (p, q, entry["i"], entry["j"]), dims))
            for t in entry["product"]:
                if t["index"] >= dims[p + q]:
                    raise ValidationError("product index {0} out of range in degree {1}".format(t["index"], p + q))
        if attrs["fundamental_index"] >= dims[d]:
            raise ValidationError("fundamental_index {0} out of range".format(attrs["fundamental_index"]))
        presentation = attrs.get("monomial_presentation")
        if presentation is not None:
            for g in presentation["generators"]:
                if g["degree"] > d or g["index"] >= dims[g["degree"]]:
                    raise ValidationError("generator {0} is not a basis element".format(g["name"]))
            generators = presentation["generators"]
            covered = set()
            for w in presentation["words"]:
                key = (w["degree"], w["index"])
                if w["degree"] > d or w["index"] >= dims[w["degree"]]:
                    raise ValidationError("word for {0} is not a basis element".format(key))
                if any(g >= len(generators) for g in w["generators"]):
                    raise ValidationError("word for {0} names an unknown generator".format(key))
                if sum(generators[g]["degree"] for g in w["generators"]) != w["degree"]:
                    raise ValidationError("word for {0} has generators of total degree {1}".format(
                        key, sum(generators[g]["degree"] for g in w["generators"])))
                covered.add(key)
            missing = [(k, i) for k in range(d + 1) for i in range(dims[k]) if (k, i) not in covered]
            if missing:
                raise ValidationError("monomial presentation has no word for basis elements {0}".format(missing))
        return attrs

    def create(self, validated_data) -> GradedRing:
        structure = {}
        for entry in validated_data["structure"]:
            structure.setdefault((entry["p"], entry["q"]), {})[(entry["i"], entry["j"])] = \
                tuple((t["index"], t["coeff"]) for t in entry["product"])

        presentation = None
        if validated_data.get("monomial_presentation") is not None:
            raw = validated_data["monomial_presentation"]
            presentation = MonomialPresentation(
                [Generator(g["name"], g["degree"], g["index"]) for g in raw["generators"]],
                {(w["degree"], w["index"]): Word(w["coeff"], tuple(w["generators"])) for w in raw["words"]})

        kunneth = None
        if validated_data.get("kunneth") is not None:
            kunneth = {(e["degree"], e["index"]): tuple(tuple(c) for c in e["components"])
                       for e in validated_data["kunneth"]}

        named = {c["key"]: (c["degree"], tuple(c["vector"])) for c in validated_data.get("named_classes", [])}
        try:
            return GradedRing(validated_data["top_degree"], validated_data["dims"], validated_data["labels"],
                              structure, validated_data["fundamental_index"], presentation, named, kunneth,
                              validated_data.get("description"))
        except RingStructureError as e:
            raise RingFormatError(str(e))


RING_FILE_SCHEMA = {
    "type": "object",
    "required": ["kind", "ring"],
    "properties": {
        "kind": {"const": "ring"},
        "ring_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "ring": {
            "type": "object",
            "required": ["top_degree", "dims", "labels", "structure"],
            "properties": {
                "top_degree": {"type": "integer", "minimum": 1},
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "labels": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
                "structure": {"type": "array"},
                "fundamental_index": {"type": "integer", "minimum": 0},
            },
        },
    },
}


def canonical_json(content) -> str:
    return json.dumps(content, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def render_json(content, indent: Optional[int] = None) -> str:
    """
    stable JSON output: sorted keys, indentation from settings.QROB_OUTPUT_INDENT unless given
    """
    if indent is None:
        indent = getattr(settings, "QROB_OUTPUT_INDENT", 2)
    return json.dumps(content, sort_keys=True, indent=indent if indent and indent > 0 else None,
                      ensure_ascii=False) + "\n"


def parse_json_bytes(body: bytes):
    """
    parses file content with the REST framework JSON parser
    :raises RingFormatError: if the content is not JSON
    """
    try:
        return JSONParser().parse(stream=io.BytesIO(body))
    except Exception as e:
        raise RingFormatError("content is not valid JSON: {0}".format(e))


def ring_to_dict(ring: GradedRing) -> dict:
    return GradedRingSerializer(ring).data


def ring_hash(ring: GradedRing) -> str:
    """
    SHA-256 over the canonical JSON of the algebraic content (top degree, dims, labels, structure, fundamental index
    and monomial presentation); named classes and descriptions do not contribute
    """
    content = ring_to_dict(ring)
    hashed = {k: content[k] for k in ("top_degree", "dims", "labels", "structure", "fundamental_index",
                                      "monomial_presentation")}
    return hashlib.sha256(canonical_json(hashed).encode("ascii")).hexdigest()


def ring_from_dict(content: dict) -> GradedRing:
    """
    builds a ring from the inner "ring" object of a ring file
    :raises RingFormatError: if the content does not describe a ring
    """
    serializer = GradedRingSerializer(data=content)
    if not serializer.is_valid():
        raise RingFormatError(str(serializer.errors))
    return serializer.save()


def ring_file_content(ring: GradedRing) -> dict:
    return {"kind": "ring", "ring_hash": ring_hash(ring), "ring": ring_to_dict(ring)}


def load_ring_file(body: bytes, validate: Optional[bool] = None) -> GradedRing:
    """
    reads a ring file, checks its schema and stored hash, and runs the ring invariants
    :param body: raw file content
    :param validate: run GradedRing.validate(); defaults to settings.QROB_VALIDATE_RINGS
    :raises RingFormatError: on malformed content or a hash mismatch
    :raises RingStructureError: if the ring breaks an invariant
    """
    content = parse_json_bytes(body)
    try:
        jsonschema.validate(content, RING_FILE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise RingFormatError("not a ring file: {0}".format(e.message))
    ring = ring_from_dict(content["ring"])
    if "ring_hash" in content and content["ring_hash"] != ring_hash(ring):
        raise RingFormatError("stored ring_hash {0} does not match the ring content".format(content["ring_hash"]))
    if validate is None:
        validate = getattr(settings, "QROB_VALIDATE_RINGS", True)
    if validate:
        ring.validate()
    logger.debug("loaded ring {0} with dims {1}".format(ring.description, list(ring.dims)))
    return ring
