"""
Re-verification of emitted files. Each file kind has a processor that checks the content against its JSON schema,
rebuilds the ring (from the recorded manifold expression or a ring file given by the caller), checks the ring hash and
re-runs the exact verifiers on the payload.
"""
from typing import Optional
import logging

import jsonschema

from cohomology.exceptions import ConstructorError, ExpressionParseError, RingFormatError
from cohomology.expressions import parse_manifold
from cohomology.ring import GradedRing, build, slice_inclusion
from cohomology.serializers import element_from_dict, parse_json_bytes, ring_hash

from .choices import CERTIFICATE_SUBMANIFOLD_BOUND, FILE_KIND_CERTIFICATE, FILE_KIND_SUBMANIFOLD_REPORT, \
    FILE_KIND_VERDICT, FILE_KIND_WITNESS, VERDICT_OBSTRUCTED, VERDICT_UNKNOWN, VERDICT_WITNESS
from .exceptions import InclusionError, InvalidCertificateError, InvalidWitnessError, WitnessShapeError
from .homsearch import hom_failure
from .obstruct import Certificate, preconditions_report, submanifold_bound, verify_certificate
from .serializers import CERTIFICATE_FILE_SCHEMA, SUBMANIFOLD_REPORT_FILE_SCHEMA, VERDICT_FILE_SCHEMA, \
    WITNESS_FILE_SCHEMA, certificate_from_dict, report_to_dict, witness_from_dict

logger = logging.getLogger(__name__)


def resolve_ring(manifold: Optional[str], stored_hash: Optional[str], ring: Optional[GradedRing] = None,
                 error_class=InvalidCertificateError) -> GradedRing:
    """
    the ring a payload refers to: the given ring if there is one, otherwise the ring of the recorded manifold
    :raises error_class: if there is neither, or the stored hash does not match
    """
    if ring is None:
        if manifold is None:
            raise error_class("the file records no manifold expression; pass the ring file")
        try:
            ring = build(parse_manifold(manifold))
        except (ExpressionParseError, ConstructorError) as e:
            raise error_class("recorded manifold '{0}' cannot be rebuilt: {1}".format(manifold, e))
    if stored_hash is not None and stored_hash != ring_hash(ring):
        raise error_class("ring_hash {0} does not match the ring {1} ({2})".format(
            stored_hash, ring.description, ring_hash(ring)))
    return ring


class FileProcessor(object):
    """
    FileProcessor describes the interface that all file processor classes should implement
    """
    schema = None   # override this in a subclass
    kind = None     # override this in a subclass
    error_class = InvalidCertificateError

    def validate_with_schema(self, content: dict) -> dict:
        try:
            jsonschema.validate(content, self.schema)
        except jsonschema.ValidationError as e:
            raise self.error_class("not a valid {0} file: {1}".format(self.kind, e.message))
        return content

    def valid_content_receive(self, content: dict, ring: Optional[GradedRing] = None) -> str:
        """
        override this method in a subclass; returns a one-line description of what was verified
        """
        raise NotImplementedError

    def process(self, content: dict, ring: Optional[GradedRing] = None) -> str:
        self.validate_with_schema(content)
        try:
            return self.valid_content_receive(content, ring)
        except RingFormatError as e:
            raise self.error_class("{0} payload is malformed: {1}".format(self.kind, e))


def verify_certificate_content(content: dict, ring: Optional[GradedRing] = None,
                               error_class=InvalidCertificateError) -> Certificate:
    """
    rebuilds and verifies the certificate object of a certificate, verdict or report file
    """
    if content["type"] == CERTIFICATE_SUBMANIFOLD_BOUND:
        manifold = content.get("manifold")
        factor = (content.get("parameters") or {}).get("factor")
        if manifold is None or not isinstance(factor, int):
            raise error_class("a submanifold certificate needs its manifold expression and factor")
        try:
            ring_n, ring_m, iota_star = slice_inclusion(parse_manifold(manifold), factor)
        except (ExpressionParseError, ConstructorError) as e:
            raise error_class("cannot rebuild the inclusion: {0}".format(e))
        resolve_ring(manifold, content.get("ring_hash"), ring_n, error_class)
        cert = certificate_from_dict(ring_n, content)
        verify_certificate(cert, ring_n, (ring_m, iota_star))
        return cert

    ring = resolve_ring(content.get("manifold"), content.get("ring_hash"), ring, error_class)
    cert = certificate_from_dict(ring, content)
    verify_certificate(cert, ring)
    return cert


def verify_witness_content(content: dict, ring: Optional[GradedRing] = None) -> dict:
    """
    rebuilds a witness and checks ring hash, shapes, multiplicativity and Phi(omega) != 0
    :raises InvalidWitnessError: naming the first failure
    """
    ring = resolve_ring(content.get("manifold"), content.get("ring_hash"), ring, InvalidWitnessError)
    loaded = witness_from_dict(ring, content)
    try:
        failure = hom_failure(loaded["witness"], loaded["omega"])
    except WitnessShapeError as e:
        raise InvalidWitnessError("witness has the wrong shape: {0}".format(e))
    if failure is not None:
        raise InvalidWitnessError(failure)
    return loaded


class CertificateFileProcessor(FileProcessor):
    kind = FILE_KIND_CERTIFICATE
    schema = CERTIFICATE_FILE_SCHEMA

    def valid_content_receive(self, content, ring=None):
        cert = verify_certificate_content(content["certificate"], ring)
        return "{0} certificate verified: {1} {2} {3}".format(cert.kind, cert.inequality.lhs, cert.inequality.rel,
                                                             cert.inequality.rhs)


class WitnessFileProcessor(FileProcessor):
    kind = FILE_KIND_WITNESS
    schema = WITNESS_FILE_SCHEMA
    error_class = InvalidWitnessError

    def valid_content_receive(self, content, ring=None):
        loaded = verify_witness_content(content["witness"], ring)
        return "witness verified: Phi(omega) = {0}".format(loaded["witness"].apply(loaded["omega"]))


class VerdictFileProcessor(FileProcessor):
    kind = FILE_KIND_VERDICT
    schema = VERDICT_FILE_SCHEMA

    def valid_content_receive(self, content, ring=None):
        status = content["status"]
        ring = resolve_ring(content.get("manifold"), content["ring_hash"], ring)
        omega = element_from_dict(ring, content["omega"])
        report = preconditions_report(ring, omega, content["n"])
        if report != content["preconditions"]:
            raise InvalidCertificateError("preconditions {0} do not match the recomputed {1}".format(
                content["preconditions"], report))

        if status == VERDICT_OBSTRUCTED:
            if content["certificate"] is None or content["witness"] is not None:
                raise InvalidCertificateError("an OBSTRUCTED verdict carries exactly a certificate")
            cert = verify_certificate_content(content["certificate"], ring)
            if cert.n != content["n"]:
                raise InvalidCertificateError("the certificate is for n = {0}, the verdict for n = {1}".format(
                    cert.n, content["n"]))
            if cert.omega is None or cert.omega != omega:
                raise InvalidCertificateError("the certificate is for a different form class")
            return "OBSTRUCTED verdict verified: {0} {1} {2} {3}".format(
                cert.kind, cert.inequality.lhs, cert.inequality.rel, cert.inequality.rhs)
        if status == VERDICT_WITNESS:
            if content["witness"] is None or content["certificate"] is not None:
                raise InvalidWitnessError("a WITNESS verdict carries exactly a witness")
            loaded = verify_witness_content(content["witness"], ring)
            if loaded["omega"] != omega:
                raise InvalidWitnessError("the witness is for a different form class")
            if loaded["witness"].ambient_n != content["n"]:
                raise InvalidWitnessError("the witness maps into dimension {0}, the verdict has n = {1}".format(
                    loaded["witness"].ambient_n, content["n"]))
            return "WITNESS verdict verified"
        if content["certificate"] is not None or content["witness"] is not None:
            raise InvalidCertificateError("an UNKNOWN verdict carries no payload")
        return "{0} verdict has no payload to verify".format(VERDICT_UNKNOWN)


class SubmanifoldReportFileProcessor(FileProcessor):
    kind = FILE_KIND_SUBMANIFOLD_REPORT
    schema = SUBMANIFOLD_REPORT_FILE_SCHEMA

    def valid_content_receive(self, content, ring=None):
        stored = content["report"]
        manifold, factor = stored.get("manifold"), stored.get("factor")
        if manifold is None or not isinstance(factor, int) or stored.get("omega") is None:
            raise InvalidCertificateError("a submanifold report needs its manifold expression, factor and form class")
        try:
            ring_n, ring_m, iota_star = slice_inclusion(parse_manifold(manifold), factor)
            omega = element_from_dict(ring_n, stored["omega"])
            recomputed = submanifold_bound(ring_n, ring_m, iota_star, omega, stored["n"], factor)
        except (ExpressionParseError, ConstructorError, InclusionError) as e:
            raise InvalidCertificateError("cannot recompute the report: {0}".format(e))
        expected = report_to_dict(recomputed, manifold, factor)
        for key in sorted(expected.keys()):
            if stored.get(key) != expected[key]:
                raise InvalidCertificateError("report field {0} is {1}, recomputed {2}".format(
                    key, stored.get(key), expected[key]))
        if (content["certificate"] is None) != (recomputed.certificate is None):
            raise InvalidCertificateError("report certificate presence does not match the recomputed report")
        if content["certificate"] is not None:
            verify_certificate_content(content["certificate"])
            return "submanifold report and certificate verified"
        return "submanifold report verified; no bound is violated"


FILE_PROCESSORS = {
    FILE_KIND_CERTIFICATE: CertificateFileProcessor,
    FILE_KIND_WITNESS: WitnessFileProcessor,
    FILE_KIND_VERDICT: VerdictFileProcessor,
    FILE_KIND_SUBMANIFOLD_REPORT: SubmanifoldReportFileProcessor,
}


def verify_file(body: bytes, ring: Optional[GradedRing] = None) -> str:
    """
    re-verifies a file written by check_pair, submanifold_bound or the witness/certificate exporters
    :param body: raw file content
    :param ring: ring to verify against instead of rebuilding it from the recorded manifold
    :return: a one-line description of what was verified
    :raises InvalidCertificateError, InvalidWitnessError: naming the first failure
    """
    try:
        content = parse_json_bytes(body)
    except RingFormatError as e:
        raise InvalidCertificateError(str(e))
    if not isinstance(content, dict) or content.get("kind") not in FILE_PROCESSORS:
        raise InvalidCertificateError("unrecognised file kind {0}".format(
            content.get("kind") if isinstance(content, dict) else type(content).__name__))
    processor = FILE_PROCESSORS[content["kind"]]()
    logger.debug("verifying {0} file with {1}".format(content["kind"], processor.__class__.__name__))
    return processor.process(content, ring)
