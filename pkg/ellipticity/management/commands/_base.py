from typing import Optional
import logging

from django.core.management.base import BaseCommand, CommandError

from cohomology.exceptions import ConstructorError, DimensionMismatchError, ExpressionParseError, \
    IdealUndefinedError, InvalidBladeError, NonHomogeneousError, RingFormatError, RingMismatchError, \
    RingStructureError, UnknownClassError
from cohomology.expressions import parse_manifold
from cohomology.ring import GradedRing, build
from cohomology.serializers import load_ring_file, render_json
from ellipticity.choices import EXIT_CODE_ERROR
from ellipticity.exceptions import ConfigurationError, InclusionError, PreconditionError, PresentationMissingError

logger = logging.getLogger(__name__)

# library errors that a command reports with the error exit code
USER_ERRORS = (
    ConstructorError,
    DimensionMismatchError,
    ExpressionParseError,
    IdealUndefinedError,
    InvalidBladeError,
    NonHomogeneousError,
    RingFormatError,
    RingMismatchError,
    RingStructureError,
    UnknownClassError,
    ConfigurationError,
    InclusionError,
    PresentationMissingError,
)


class RingCommand(BaseCommand):
    """
    base for commands that take a manifold expression (or a ring file) and print text or JSON
    """
    expression_required = True

    def add_arguments(self, parser):
        parser.add_argument("manifold", type=str, nargs=None if self.expression_required else "?",
                            help="manifold expression, e.g. \"surface(2) * cp(2)\"")
        parser.add_argument("--format", type=str, choices=["json", "text"], default="text", help="output format")
        parser.add_argument("-o", "--output", type=str, default=None, help="write the JSON result to this file")

    def load_ring(self, options) -> GradedRing:
        if options.get("ring_file"):
            with open(options["ring_file"], "rb") as f:
                return load_ring_file(f.read())
        if not options.get("manifold"):
            raise CommandError("give a manifold expression or --ring-file", returncode=EXIT_CODE_ERROR)
        return build(parse_manifold(options["manifold"]))

    def emit(self, content: dict, text: Optional[str], options):
        """
        writes the JSON content to --output if given, and prints either the text form or the JSON
        """
        rendered = render_json(content)
        if options.get("output"):
            with open(options["output"], "w", encoding="UTF-8") as f:
                f.write(rendered)
            logger.info("wrote {0}".format(options["output"]))
        if options.get("format") == "json" or text is None:
            if not options.get("output"):
                self.stdout.write(rendered, ending="")
        else:
            self.stdout.write(text)

    def run(self, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            self.run(options)
        except PreconditionError as e:
            self.stdout.write(render_json({"error": str(e), "preconditions": e.report}), ending="")
            raise CommandError(str(e), returncode=EXIT_CODE_ERROR)
        except USER_ERRORS as e:
            raise CommandError("{0}: {1}".format(e.__class__.__name__, e), returncode=EXIT_CODE_ERROR)
        except (IOError, OSError) as e:
            raise CommandError(str(e), returncode=EXIT_CODE_ERROR)
