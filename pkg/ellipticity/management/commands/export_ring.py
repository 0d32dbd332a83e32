from cohomology.serializers import ring_file_content

from ._base import RingCommand


class Command(RingCommand):
    """
    writes the ring of a manifold expression as a ring file, which check_pair and verify accept with --ring-file
    """
    help = "Export the cohomology ring of a manifold expression as JSON"

    def run(self, options):
        options["format"] = "json"
        self.emit(ring_file_content(self.load_ring(options)), None, options)
