import logging
import sys

from django.core.management.base import CommandError

from cohomology.serializers import load_ring_file
from ellipticity.choices import EXIT_CODE_ERROR
from ellipticity.pipeline import Query, run_query
from ellipticity.serializers import verdict_file_content

from ._base import RingCommand

logger = logging.getLogger(__name__)


def verdict_text(verdict) -> str:
    lines = [
        "status: {0}".format(verdict.status),
        "manifold: {0}".format(verdict.manifold or verdict.ring.description),
        "omega: {0}  (n = {1})".format(verdict.omega.describe(), verdict.n),
        "preconditions: " + ", ".join("{0}={1}".format(k, v) for k, v in sorted(verdict.preconditions.items())),
    ]
    if verdict.certificate is not None:
        cert = verdict.certificate
        lines.append("certificate: {0} ({1} {2} {3})".format(cert.kind, cert.inequality.lhs, cert.inequality.rel,
                                                            cert.inequality.rhs))
        lines.append("conclusion: {0}".format(cert.conclusion))
    if verdict.witness is not None:
        lines.append("witness ({0}):".format(verdict.witness_source))
        for k in sorted(verdict.witness.images.keys()):
            for i, image in enumerate(verdict.witness.images[k]):
                lines.append("  Phi({0}) = {1}".format(verdict.ring.label_of(k, i), image))
    for entry in verdict.search_log:
        lines.append("search: " + ", ".join("{0}={1}".format(k, v) for k, v in sorted(entry.items())))
    return "\n".join(lines)


class Command(RingCommand):
    """
    runs the full pipeline on a pair (N, omega): preconditions, obstruction search, template and enumeration search.
    Exit code 0 = WITNESS, 1 = OBSTRUCTED, 2 = UNKNOWN, 3 = error
    """
    help = "Decide whether a pair (N, omega) is obstructed or admits a homomorphism witness"
    expression_required = False

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--omega", type=str, required=True, help="form class, e.g. \"vol(1) ^ sym(2)\"")
        parser.add_argument("--n", type=int, required=True, help="target dimension")
        parser.add_argument("--ring-file", type=str, default=None, help="read the ring from this JSON file instead")
        parser.add_argument("--coeff-set", type=str, default=None,
                            help="enumeration coefficients in order, e.g. \"0,1,-1\" (default from QROB_COEFF_SET)")
        parser.add_argument("--enum-budget", type=int, default=None,
                            help="node cap for the enumeration (default from QROB_ENUM_BUDGET)")
        parser.add_argument("--enum-deadline", type=float, default=None,
                            help="seconds allowed for the enumeration, 0 for no limit (default from QROB_ENUM_DEADLINE)")
        parser.add_argument("--jobs", type=int, default=None, help="worker processes (default from QROB_JOBS)")

    def run(self, options):
        ring = None
        if options.get("ring_file"):
            with open(options["ring_file"], "rb") as f:
                ring = load_ring_file(f.read())
        elif not options.get("manifold"):
            raise CommandError("give a manifold expression or --ring-file", returncode=EXIT_CODE_ERROR)
        query = Query(options.get("manifold"), options["omega"], options["n"], ring)
        verdict = run_query(query, options.get("coeff_set"), options.get("enum_budget"), options.get("jobs"),
                            options.get("enum_deadline"))
        logger.info("{0}: {1}".format(query, verdict.status))
        self.emit(verdict_file_content(verdict), verdict_text(verdict), options)
        if verdict.exit_code != 0:
            sys.exit(verdict.exit_code)
