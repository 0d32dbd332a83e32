"""
JSON forms of certificates, witnesses, submanifold reports and verdicts.

Classes are written as coordinate vectors over the ring's basis; building objects back from JSON therefore needs the
ring, which is passed in the serializer context.
"""
from typing import Optional
import logging

from rest_framework.serializers import Serializer, CharField, ChoiceField, DictField, IntegerField, JSONField, \
    ListField, ValidationError

from cohomology.exceptions import RingFormatError, RingStructureError
from cohomology.exterior import ExtElement
from cohomology.ring import GradedRing, RingElement
from cohomology.serializers import ExtElementSerializer, FractionField, RingElementSerializer, element_to_dict, \
    ring_hash

from .choices import CERTIFICATE_KINDS, FILE_KIND_CERTIFICATE, FILE_KIND_SUBMANIFOLD_REPORT, FILE_KIND_VERDICT, \
    FILE_KIND_WITNESS, RELATION_GREATER, RELATION_GREATER_EQUAL, VERDICT_EXIT_CODES, WITNESS_SOURCE_ENUMERATION, \
    WITNESS_SOURCE_FILE, WITNESS_SOURCE_TEMPLATE
from .homsearch import HomWitness
from .obstruct import Certificate, Inequality, ProductRecord, SubmanifoldReport

logger = logging.getLogger(__name__)


def _element(ring: GradedRing, validated: dict) -> RingElement:
    try:
        return RingElement(ring, {c["degree"]: c["vector"] for c in validated["components"]})
    except (IndexError, RingStructureError) as e:
        raise RingFormatError("class does not fit the ring: {0}".format(e))


def _ext(validated: dict) -> ExtElement:
    return ExtElement(validated["ambient_n"], {tuple(t["axes"]): t["coeff"] for t in validated["terms"]})


class InequalitySerializer(Serializer):
    lhs = IntegerField()
    rel = ChoiceField(choices=[RELATION_GREATER, RELATION_GREATER_EQUAL])
    rhs = IntegerField()


class ProductRecordSerializer(Serializer):
    """
    one entry of a certificate's products table: left * right has these coordinates in `degree`
    """
    left = CharField()
    right = CharField()
    degree = IntegerField(min_value=0)
    vector = ListField(child=FractionField(), allow_empty=True)


class CertificateSerializer(Serializer):
    type = ChoiceField(choices=CERTIFICATE_KINDS)
    n = IntegerField(min_value=1)
    ring_hash = CharField(required=False, allow_null=True)
    manifold = CharField(required=False, allow_null=True)
    omega = RingElementSerializer(required=False, allow_null=True)
    parameters = JSONField(required=False)
    classes = DictField(child=ListField(child=RingElementSerializer(), allow_empty=True))
    products = ListField(child=ProductRecordSerializer(), allow_empty=True)
    inequality = InequalitySerializer()
    conclusion = CharField(allow_blank=True)

    def to_representation(self, cert: Certificate):
        return {
            "type": cert.kind,
            "n": cert.n,
            "ring_hash": cert.ring_hash,
            "manifold": cert.manifold,
            "omega": element_to_dict(cert.omega) if cert.omega is not None else None,
            "parameters": dict(cert.parameters),
            "classes": {role: [element_to_dict(x) for x in members] for role, members in cert.classes.items()},
            "products": [{"left": p.left, "right": p.right, "degree": p.degree, "vector": [str(v) for v in p.vector]}
                         for p in cert.products],
            "inequality": {"lhs": cert.inequality.lhs, "rel": cert.inequality.rel, "rhs": cert.inequality.rhs},
            "conclusion": cert.conclusion,
        }

    def validate_parameters(self, value):
        if not isinstance(value, dict):
            raise ValidationError("parameters must be an object")
        return value

    def create(self, validated_data) -> Certificate:
        ring = self.context["ring"]
        omega = validated_data.get("omega")
        inequality = validated_data["inequality"]
        return Certificate(
            validated_data["type"],
            validated_data["n"],
            {role: [_element(ring, x) for x in members] for role, members in validated_data["classes"].items()},
            [ProductRecord(p["left"], p["right"], p["degree"], tuple(p["vector"])) for p in validated_data["products"]],
            Inequality(inequality["lhs"], inequality["rel"], inequality["rhs"]),
            validated_data["conclusion"],
            omega=_element(ring, omega) if omega is not None else None,
            parameters=validated_data.get("parameters") or {},
            ring_hash=validated_data.get("ring_hash"),
            manifold=validated_data.get("manifold"),
        )


class WitnessImagesSerializer(Serializer):
    degree = IntegerField(min_value=1)
    images = ListField(child=ExtElementSerializer(), allow_empty=True)


class WitnessSerializer(Serializer):
    """
    {ring_hash, ambient_n, omega, images: [{degree, images: [ExtElement, ...]}, ...]}
    """
    ring_hash = CharField()
    ambient_n = IntegerField(min_value=1)
    manifold = CharField(required=False, allow_null=True)
    omega = RingElementSerializer()
    images = ListField(child=WitnessImagesSerializer(), allow_empty=True)
    source = ChoiceField(choices=[WITNESS_SOURCE_TEMPLATE, WITNESS_SOURCE_ENUMERATION, WITNESS_SOURCE_FILE],
                         required=False, default=WITNESS_SOURCE_FILE)

    def to_representation(self, instance):
        witness, omega = instance["witness"], instance["omega"]
        return {
            "ring_hash": ring_hash(witness.ring),
            "ambient_n": witness.ambient_n,
            "manifold": instance.get("manifold"),
            "omega": element_to_dict(omega),
            "images": [{"degree": k, "images": [ExtElementSerializer(e).data for e in witness.images[k]]}
                       for k in sorted(witness.images.keys())],
            "source": instance.get("source") or WITNESS_SOURCE_FILE,
        }

    def validate(self, attrs):
        degrees = [entry["degree"] for entry in attrs["images"]]
        if len(set(degrees)) != len(degrees):
            raise ValidationError("a degree is listed more than once in images")
        return attrs

    def create(self, validated_data) -> dict:
        ring = self.context["ring"]
        images = {entry["degree"]: [_ext(e) for e in entry["images"]] for entry in validated_data["images"]}
        return {
            "witness": HomWitness(ring, validated_data["ambient_n"], images),
            "omega": _element(ring, validated_data["omega"]),
            "ring_hash": validated_data["ring_hash"],
            "manifold": validated_data.get("manifold"),
            "source": validated_data.get("source"),
        }


def certificate_to_dict(cert: Certificate) -> dict:
    return CertificateSerializer(cert).data


def certificate_from_dict(ring: GradedRing, content: dict) -> Certificate:
    serializer = CertificateSerializer(data=content, context={"ring": ring})
    if not serializer.is_valid():
        raise RingFormatError(str(serializer.errors))
    return serializer.save()


def witness_to_dict(witness: HomWitness, omega: RingElement, manifold: Optional[str] = None,
                    source: Optional[str] = None) -> dict:
    return WitnessSerializer({"witness": witness, "omega": omega, "manifold": manifold, "source": source}).data


def witness_from_dict(ring: GradedRing, content: dict) -> dict:
    """
    :return: dict with the HomWitness under "witness", the form class under "omega" and the stored "ring_hash"
    """
    serializer = WitnessSerializer(data=content, context={"ring": ring})
    if not serializer.is_valid():
        raise RingFormatError(str(serializer.errors))
    return serializer.save()


def report_to_dict(report: SubmanifoldReport, manifold: Optional[str] = None, factor: Optional[int] = None) -> dict:
    return {
        "n": report.n,
        "manifold": manifold,
        "omega": element_to_dict(report.omega) if report.omega is not None else None,
        "factor": factor,
        "degrees": [dict(entry) for entry in report.degrees],
        "kernel_meets_ideal": report.kernel_meets_ideal,
        "kernel_condition": report.kernel_condition,
        "bounds_hold": report.bounds_hold,
    }


### file contents

def certificate_file_content(cert: Certificate) -> dict:
    return {"kind": FILE_KIND_CERTIFICATE, "certificate": certificate_to_dict(cert)}


def witness_file_content(witness: HomWitness, omega: RingElement, manifold: Optional[str] = None,
                         source: Optional[str] = None) -> dict:
    return {"kind": FILE_KIND_WITNESS, "witness": witness_to_dict(witness, omega, manifold, source)}


def report_file_content(report: SubmanifoldReport, manifold: Optional[str] = None,
                        factor: Optional[int] = None) -> dict:
    return {
        "kind": FILE_KIND_SUBMANIFOLD_REPORT,
        "report": report_to_dict(report, manifold, factor),
        "certificate": certificate_to_dict(report.certificate) if report.certificate is not None else None,
    }


def verdict_file_content(verdict) -> dict:
    return {
        "kind": FILE_KIND_VERDICT,
        "status": verdict.status,
        "manifold": verdict.manifold,
        "n": verdict.n,
        "omega": element_to_dict(verdict.omega),
        "ring_hash": ring_hash(verdict.ring),
        "preconditions": dict(verdict.preconditions),
        "search_log": list(verdict.search_log),
        "certificate": certificate_to_dict(verdict.certificate) if verdict.certificate is not None else None,
        "witness": witness_to_dict(verdict.witness, verdict.omega, verdict.manifold, verdict.witness_source)
        if verdict.witness is not None else None,
    }


### schemas

_HASH = {"type": "string", "pattern": "^[0-9a-f]{64}$"}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["type", "n", "classes", "products", "inequality", "conclusion"],
    "properties": {
        "type": {"enum": [kind for kind, _ in CERTIFICATE_KINDS]},
        "n": {"type": "integer", "minimum": 1},
        "ring_hash": {"anyOf": [_HASH, {"type": "null"}]},
        "manifold": {"type": ["string", "null"]},
        "classes": {"type": "object"},
        "products": {"type": "array"},
        "inequality": {
            "type": "object",
            "required": ["lhs", "rel", "rhs"],
            "properties": {
                "lhs": {"type": "integer"},
                "rel": {"enum": [RELATION_GREATER, RELATION_GREATER_EQUAL]},
                "rhs": {"type": "integer"},
            },
        },
        "conclusion": {"type": "string"},
    },
}

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["ring_hash", "ambient_n", "omega", "images"],
    "properties": {
        "ring_hash": _HASH,
        "ambient_n": {"type": "integer", "minimum": 1},
        "manifold": {"type": ["string", "null"]},
        "omega": {"type": "object"},
        "images": {"type": "array"},
    },
}

CERTIFICATE_FILE_SCHEMA = {
    "type": "object",
    "required": ["kind", "certificate"],
    "properties": {
        "kind": {"const": FILE_KIND_CERTIFICATE},
        "certificate": CERTIFICATE_SCHEMA,
    },
}

WITNESS_FILE_SCHEMA = {
    "type": "object",
    "required": ["kind", "witness"],
    "properties": {
        "kind": {"const": FILE_KIND_WITNESS},
        "witness": WITNESS_SCHEMA,
    },
}

SUBMANIFOLD_REPORT_FILE_SCHEMA = {
    "type": "object",
    "required": ["kind", "report", "certificate"],
    "properties": {
        "kind": {"const": FILE_KIND_SUBMANIFOLD_REPORT},
        "report": {
            "type": "object",
            "required": ["n", "degrees", "kernel_meets_ideal"],
        },
        "certificate": {"anyOf": [CERTIFICATE_SCHEMA, {"type": "null"}]},
    },
}

VERDICT_FILE_SCHEMA = {
    "type": "object",
    "required": ["kind", "status", "n", "omega", "ring_hash", "preconditions", "certificate", "witness"],
    "properties": {
        "kind": {"const": FILE_KIND_VERDICT},
        "status": {"enum": list(VERDICT_EXIT_CODES.keys())},
        "manifold": {"type": ["string", "null"]},
        "n": {"type": "integer"},
        "ring_hash": _HASH,
        "preconditions": {
            "type": "object",
            "required": ["omega_nonzero", "omega_in_Kn"],
        },
        "search_log": {"type": "array"},
        "certificate": {"anyOf": [CERTIFICATE_SCHEMA, {"type": "null"}]},
        "witness": {"anyOf": [WITNESS_SCHEMA, {"type": "null"}]},
    },
}
