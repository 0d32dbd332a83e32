import sys

from cohomology.expressions import parse_manifold
from cohomology.ring import evaluate_class, slice_inclusion
from ellipticity.obstruct import submanifold_bound
from ellipticity.serializers import report_file_content

from ._base import RingCommand


class Command(RingCommand):
    """
    checks the binomial bounds on the restriction of H*(N) to the slice M = factor I of a product N, for a form class
    restricting non-trivially to M. Exits with 1 when a SubmanifoldBound certificate is emitted
    """
    help = "Compare dim i*H^k(N) with C(n,k) for a factor slice of a product manifold"

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument("--factor", type=int, required=True, help="1-based index of the factor M")
        parser.add_argument("--omega", type=str, required=True, help="form class on N")
        parser.add_argument("--n", type=int, required=True, help="dimension of M")

    def run(self, options):
        manifold = options["manifold"]
        ring_n, ring_m, iota_star = slice_inclusion(parse_manifold(manifold), options["factor"])
        omega = evaluate_class(ring_n, options["omega"])
        report = submanifold_bound(ring_n, ring_m, iota_star, omega, options["n"], options["factor"])
        if report.certificate is not None:
            report.certificate.manifold = manifold

        lines = ["{0} restricted to factor {1}:".format(manifold, options["factor"])]
        for entry in report.degrees:
            lines.append("  k={degree}: dim i*H^k = {image_dim}, C(n,k) = {binomial}, bound holds: {bound_holds}, "
                         "onto: {surjective}".format(**entry))
        lines.append("dim(ker i* ∩ K^{0}) = {1}".format(options["n"], report.kernel_meets_ideal))
        if report.certificate is not None:
            lines.append("certificate: {0}".format(report.certificate.conclusion))
        self.emit(report_file_content(report, manifold, options["factor"]), "\n".join(lines), options)
        if report.certificate is not None:
            sys.exit(1)
