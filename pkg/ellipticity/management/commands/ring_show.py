from cohomology.ring import poincare_pairing
from cohomology.serializers import ring_file_content

from ._base import RingCommand


class Command(RingCommand):
    """
    prints the per-degree dimensions and basis labels of a ring, and its Poincaré pairing matrices
    """
    help = "Show the cohomology ring of a manifold expression"
    expression_required = False

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--ring-file", type=str, default=None, help="read the ring from this JSON file instead")

    def run(self, options):
        ring = self.load_ring(options)
        lines = ["{0}: top degree {1}, dims {2}".format(ring.description, ring.top_degree, list(ring.dims))]
        for k in range(ring.top_degree + 1):
            lines.append("H^{0} (dim {1}): {2}".format(k, ring.dims[k], ", ".join(ring.labels[k])))
        for k in range(ring.top_degree + 1):
            matrix = poincare_pairing(ring, k)
            if len(matrix) == 0:
                continue
            lines.append("pairing H^{0} x H^{1}:".format(k, ring.top_degree - k))
            for row in matrix:
                lines.append("  [" + " ".join(str(v) for v in row) + "]")
        self.emit(ring_file_content(ring), "\n".join(lines), options)
