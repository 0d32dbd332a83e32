from cohomology.ring import kunneth_ideal_basis
from cohomology.serializers import element_to_dict

from ._base import RingCommand


class Command(RingCommand):
    help = "Print a basis and the dimension of the Künneth ideal K^k of a manifold's cohomology ring"
    expression_required = False

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--k", type=int, required=True, help="degree of the ideal layer")
        parser.add_argument("--ring-file", type=str, default=None, help="read the ring from this JSON file instead")

    def run(self, options):
        ring = self.load_ring(options)
        basis = kunneth_ideal_basis(ring, options["k"])
        content = {
            "manifold": options.get("manifold"),
            "k": options["k"],
            "dim": len(basis),
            "basis": [element_to_dict(b) for b in basis],
        }
        lines = ["K^{0}({1}) has dim {2}".format(options["k"], ring.description, len(basis))]
        lines.extend("  {0}".format(b.describe()) for b in basis)
        self.emit(content, "\n".join(lines), options)
