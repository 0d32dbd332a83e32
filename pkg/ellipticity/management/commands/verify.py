from django.core.management.base import CommandError

from cohomology.serializers import load_ring_file
from ellipticity.choices import EXIT_CODE_ERROR
from ellipticity.exceptions import InvalidCertificateError, InvalidWitnessError
from ellipticity.processors import verify_file

from ._base import RingCommand


class Command(RingCommand):
    """
    re-checks a verdict, certificate, witness or submanifold report file against its ring
    """
    help = "Re-verify a file written by check_pair or submanifold_bound"

    def add_arguments(self, parser):
        parser.add_argument("file", type=str, help="file to verify")
        parser.add_argument("--ring-file", type=str, default=None,
                            help="ring file to verify against, for files that record no manifold expression")

    def run(self, options):
        ring = None
        if options.get("ring_file"):
            with open(options["ring_file"], "rb") as f:
                ring = load_ring_file(f.read())
        with open(options["file"], "rb") as f:
            body = f.read()
        try:
            message = verify_file(body, ring)
        except (InvalidCertificateError, InvalidWitnessError) as e:
            raise CommandError("verification failed: {0}".format(e), returncode=EXIT_CODE_ERROR)
        self.stdout.write(message)
