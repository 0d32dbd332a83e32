"""
Graded algebra homomorphisms Phi: H*(N) -> Λ*R^n with Phi(omega) != 0.

Witnesses come from two searchers: a catalog of explicit per-factor templates, and a bounded enumeration over
generator images. Whatever a searcher proposes is only returned after verify_hom accepts it.
"""
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging
import time

from cohomology.exterior import ExtElement, blades, wedge, wedge_all
from cohomology.expressions import CPm, ConnSum, ManifoldExpr, S2xS2, Sphere, Surface, Torus
from cohomology.ring import GradedRing, RingElement, factor_rings

from .exceptions import PresentationMissingError, WitnessShapeError
from .options import resolve_budget, resolve_coeff_set, resolve_deadline, resolve_jobs
from .parallel import ordered_map

logger = logging.getLogger(__name__)


class HomWitness(object):
    """
    Images of every basis element of H^k(N), 1 <= k <= min(d, n), in Λ^k R^n. Degree 0 maps the unit to 1 and
    degrees above n map to zero.
    """
    def __init__(self, ring: GradedRing, ambient_n: int, images: Dict[int, Sequence[ExtElement]]):
        self.ring = ring
        self.ambient_n = ambient_n
        self.images = {int(k): list(v) for k, v in images.items()}

    @property
    def top(self) -> int:
        return min(self.ring.top_degree, self.ambient_n)

    def check_shape(self):
        """
        :raises WitnessShapeError: if a degree is missing, has the wrong number of images, or an image has the wrong
        dimension or degree
        """
        if self.ambient_n < 1:
            raise WitnessShapeError("ambient dimension must be positive, got {0}".format(self.ambient_n))
        expected = set(range(1, self.top + 1))
        if set(self.images.keys()) != expected:
            raise WitnessShapeError("images are given for degrees {0}, expected {1}".format(
                sorted(self.images.keys()), sorted(expected)))
        for k, row in self.images.items():
            if len(row) != self.ring.dims[k]:
                raise WitnessShapeError("degree {0} has {1} images, expected {2}".format(k, len(row), self.ring.dims[k]))
            for i, img in enumerate(row):
                if img.ambient_n != self.ambient_n:
                    raise WitnessShapeError("image of {0} lives in dimension {1}, not {2}".format(
                        self.ring.label_of(k, i), img.ambient_n, self.ambient_n))
                if any(deg != k for deg in img.degrees()):
                    raise WitnessShapeError("image of {0} is not of degree {1}".format(self.ring.label_of(k, i), k))

    def image_of_basis(self, degree: int, index: int) -> ExtElement:
        if degree == 0:
            return ExtElement.scalar(self.ambient_n, 1)
        if degree > self.top:
            return ExtElement.zero(self.ambient_n)
        return self.images[degree][index]

    def apply(self, x: RingElement) -> ExtElement:
        """
        Phi(x), extended linearly over all degrees
        """
        result = ExtElement.zero(self.ambient_n)
        for k, vec in x.coords.items():
            if k > self.top:
                continue
            for i, c in enumerate(vec):
                if c != 0:
                    result = result + self.image_of_basis(k, i) * c
        return result


def hom_failure(witness: HomWitness, omega: RingElement) -> Optional[str]:
    """
    the first reason the witness is not a graded algebra homomorphism with Phi(omega) != 0, or None if it is one
    :raises WitnessShapeError: if the witness does not fit its ring
    """
    witness.check_shape()
    ring = witness.ring
    if not omega.ring.same_ring(ring):
        raise WitnessShapeError("form class belongs to a different ring")
    d = ring.top_degree
    for p in range(1, d):
        for q in range(p, d + 1 - p):
            for i, x in enumerate(ring.basis(p)):
                for j, y in enumerate(ring.basis(q)):
                    lhs = witness.apply(x * y)
                    rhs = wedge(witness.image_of_basis(p, i), witness.image_of_basis(q, j))
                    if lhs != rhs:
                        return "Phi({0}*{1}) = {2} but Phi({0}) ^ Phi({1}) = {3}".format(
                            ring.label_of(p, i), ring.label_of(q, j), lhs, rhs)
    if witness.apply(omega).is_zero():
        return "Phi(omega) = 0"
    return None


def verify_hom(witness: HomWitness, omega: RingElement) -> bool:
    """
    true iff the witness is unital, multiplicative on every basis pair and Phi(omega) != 0
    :raises WitnessShapeError: if the witness does not fit its ring
    """
    return hom_failure(witness, omega) is None


def induced_witness(ring: GradedRing, generator_images: Sequence[ExtElement], n: int) -> HomWitness:
    """
    extends generator images to every basis element through the monomial presentation
    """
    presentation = ring.presentation
    if presentation is None:
        raise PresentationMissingError("ring {0} has no monomial presentation".format(ring.description))
    images = {}
    for k in range(1, min(ring.top_degree, n) + 1):
        row = []
        for i in range(ring.dims[k]):
            word = presentation.word(k, i)
            row.append(wedge_all([generator_images[g] for g in word.generators], n) * word.coeff)
        images[k] = row
    return HomWitness(ring, n, images)


### templates

def _axis(offset: int, a: int, n: int, coeff=1) -> ExtElement:
    return ExtElement.basis_vector(n, (offset + a,), coeff)


def _pair(offset: int, a: int, b: int, n: int, coeff=1) -> ExtElement:
    return ExtElement.basis_vector(n, (offset + a, offset + b), coeff)


# (x, y) images of the degree-two classes of up to three S^2 x S^2 summands on one 4-block
S2XS2_PAIRS = (
    ((1, 2, 1), (3, 4, 1)),
    ((1, 3, 1), (2, 4, -1)),
    ((1, 4, 1), (2, 3, 1)),
)


def factor_templates(expr: ManifoldExpr, generator_count: int):
    """
    template options for one Künneth factor, as (block size, images(offset, n)) pairs, largest block first and the
    zero template last
    """
    options = []
    if isinstance(expr, Torus):
        options.append((expr.n, lambda off, n, m=expr.n: [_axis(off, a, n) for a in range(1, m + 1)]))
    elif isinstance(expr, Surface) and expr.g == 1:
        options.append((2, lambda off, n: [_axis(off, 1, n), _axis(off, 2, n)]))
    elif isinstance(expr, Sphere):
        options.append((expr.n, lambda off, n, m=expr.n: [
            ExtElement.basis_vector(n, tuple(off + a for a in range(1, m + 1)))]))
    elif isinstance(expr, CPm):
        for r in range(expr.m, 0, -1):
            options.append((2 * r, lambda off, n, r=r: [
                sum((_pair(off, 2 * j - 1, 2 * j, n) for j in range(1, r + 1)), ExtElement.zero(n))]))
    elif isinstance(expr, S2xS2) or _s2xs2_sum_count(expr) in (1, 2, 3):
        def images(off, n):
            result = []
            for (xa, xb, xc), (ya, yb, yc) in S2XS2_PAIRS[:generator_count // 2]:
                result.extend([_pair(off, xa, xb, n, xc), _pair(off, ya, yb, n, yc)])
            return result
        options.append((4, images))
    options.append((0, lambda off, n, count=generator_count: [ExtElement.zero(n)] * count))
    return options


def _s2xs2_sum_count(expr: ManifoldExpr) -> Optional[int]:
    if isinstance(expr, ConnSum) and all(isinstance(s, S2xS2) for s in expr.summands()):
        return len(expr.summands())
    return None


def witness_template(expr: ManifoldExpr, omega: RingElement, n: int,
                     ring: Optional[GradedRing] = None) -> Optional[HomWitness]:
    """
    tries the template catalog on disjoint axis blocks, in canonical order, and returns the first combination that
    verifies
    """
    if ring is None:
        ring = omega.ring
    if ring.presentation is None:
        return None
    factors = expr.factors()
    rings = factor_rings(expr)
    counts = [len(r.presentation.generators) if r.presentation is not None else 0 for r in rings]
    if sum(counts) != len(ring.presentation.generators):
        logger.warning("template generators do not line up with the ring presentation of {0}".format(
            ring.description))
        return None

    per_factor = [factor_templates(f, count) for f, count in zip(factors, counts)]
    tried = 0
    for combination in product(*per_factor):
        if sum(size for size, _ in combination) > n:
            continue
        offset = 0
        generator_images = []
        for size, images in combination:
            generator_images.extend(images(offset, n))
            offset += size
        tried += 1
        candidate = induced_witness(ring, generator_images, n)
        if verify_hom(candidate, omega):
            logger.info("template witness for {0} after {1} combinations".format(ring.description, tried))
            return candidate
    logger.debug("no template witness for {0} ({1} combinations)".format(ring.description, tried))
    return None


### enumeration

def candidate_images(n: int, k: int, coefficients: Sequence) -> Iterator[ExtElement]:
    """
    elements of Λ^k R^n with coefficients from the given set, sparsest first; supports in canonical blade order and
    coefficients in the given order
    """
    basis = list(blades(n, k))
    nonzero = [c for c in coefficients if c != 0]
    sizes = range(0, len(basis) + 1) if any(c == 0 for c in coefficients) else [len(basis)]
    for size in sizes:
        for support in combinations(basis, size):
            for coeffs in product(nonzero, repeat=size):
                yield ExtElement(n, dict(zip(support, coeffs)))


class _BranchResult(object):
    def __init__(self, nodes: int, images: Optional[List[ExtElement]], complete: bool, timed_out: bool = False):
        self.nodes = nodes
        self.images = images
        self.complete = complete
        self.timed_out = timed_out


class HomEnumerator(object):
    """
    Depth-first search over generator images in presentation order. Every candidate image tried for a generator
    counts as one node, whether or not the partial assignment survives the multiplicativity checks; a basis pair is
    checked as soon as all generators it involves are assigned. The search is split into branches by the first
    generator's image and the node budget is shared in branch order, so the witness found is the same for any number
    of workers. An optional wall-clock deadline stops the search early; the run is then reported as exhausted and
    `timed_out` is set.
    """
    def __init__(self, ring: GradedRing, omega: RingElement, n: int, coefficients: Optional[Sequence] = None,
                 budget: Optional[int] = None, jobs: Optional[int] = None, deadline=None):
        if ring.presentation is None:
            raise PresentationMissingError("enumeration needs a monomial presentation; ring {0} has none".format(
                ring.description))
        self.ring = ring
        self.omega = omega
        self.n = n
        self.coefficients = resolve_coeff_set(coefficients)
        self.budget = resolve_budget(budget)
        self.jobs = resolve_jobs(jobs)
        self.deadline = resolve_deadline(deadline)
        self.nodes_visited = 0
        self.exhausted = False
        self.timed_out = False
        self._stop_at = None
        self.generators = ring.presentation.generators
        self._checks = self._schedule_checks()

    def _schedule_checks(self) -> Dict[int, List[Tuple[int, int, int, int]]]:
        """
        basis pairs (p, i, q, j) grouped by the last generator position they depend on
        """
        ring = self.ring
        words = ring.presentation.words
        top = min(ring.top_degree, self.n)
        checks = {}
        for p in range(1, top):
            for q in range(p, top + 1 - p):
                for i in range(ring.dims[p]):
                    for j in range(ring.dims[q]):
                        needed = set(words[(p, i)].generators) | set(words[(q, j)].generators)
                        for idx, _ in ring.basis_product(p, i, q, j):
                            needed |= set(words[(p + q, idx)].generators)
                        last = max(needed) if needed else 0
                        checks.setdefault(last, []).append((p, i, q, j))
        return checks

    def _basis_image(self, images: Sequence[ExtElement], degree: int, index: int) -> ExtElement:
        if degree == 0:
            return ExtElement.scalar(self.n, 1)
        if degree > self.n:
            return ExtElement.zero(self.n)
        word = self.ring.presentation.word(degree, index)
        return wedge_all([images[g] for g in word.generators], self.n) * word.coeff

    def _consistent(self, images: Sequence[ExtElement], position: int) -> bool:
        cache = {}

        def image_of(degree, index):
            if (degree, index) not in cache:
                cache[(degree, index)] = self._basis_image(images, degree, index)
            return cache[(degree, index)]

        for p, i, q, j in self._checks.get(position, []):
            lhs = ExtElement.zero(self.n)
            for idx, c in self.ring.basis_product(p, i, q, j):
                lhs = lhs + image_of(p + q, idx) * c
            rhs = wedge(image_of(p, i), image_of(q, j))
            if lhs != rhs:
                return False
        return True

    def _options(self, position: int) -> Iterator[ExtElement]:
        degree = self.generators[position].degree
        if degree > self.n:
            return iter([ExtElement.zero(self.n)])
        return candidate_images(self.n, degree, self.coefficients)

    def _leaf_ok(self, images: Sequence[ExtElement]) -> bool:
        result = ExtElement.zero(self.n)
        for k, vec in self.omega.coords.items():
            for i, c in enumerate(vec):
                if c != 0:
                    result = result + self._basis_image(images, k, i) * c
        return not result.is_zero()

    def _past_deadline(self) -> bool:
        return self._stop_at is not None and time.time() >= self._stop_at

    def run_branch(self, first: ExtElement, cap: int) -> _BranchResult:
        """
        depth-first search below a fixed first-generator image, visiting at most `cap` nodes
        """
        nodes = 1
        images = [first]
        if not self._consistent(images, 0):
            return _BranchResult(nodes, None, True)
        if len(self.generators) == 1:
            return _BranchResult(nodes, list(images) if self._leaf_ok(images) else None, True)

        stack = [self._options(1)]
        while stack:
            if nodes >= cap:
                return _BranchResult(nodes, None, False)
            if self._past_deadline():
                return _BranchResult(nodes, None, False, timed_out=True)
            try:
                image = next(stack[-1])
            except StopIteration:
                stack.pop()
                images.pop()
                continue
            nodes += 1
            position = len(stack)
            images.append(image)
            if self._consistent(images, position):
                if position == len(self.generators) - 1:
                    if self._leaf_ok(images):
                        return _BranchResult(nodes, list(images), True)
                else:
                    stack.append(self._options(position + 1))
                    continue
            images.pop()
        return _BranchResult(nodes, None, True)

    def run(self) -> Optional[HomWitness]:
        """
        :return: the first verified witness in enumeration order, or None when the space is exhausted, the budget
        runs out or the deadline passes (see `exhausted` and `timed_out`)
        """
        self.nodes_visited = 0
        self.exhausted = False
        self.timed_out = False
        self._stop_at = time.time() + self.deadline if self.deadline is not None else None
        if len(self.generators) == 0:
            return None
        remaining = self.budget
        branches = self._options(0)
        batch_size = max(1, self.jobs * 4)
        while True:
            batch = []
            for first in branches:
                batch.append(first)
                if len(batch) >= batch_size:
                    break
            if len(batch) == 0:
                logger.info("enumeration of {0} finished after {1} nodes without a witness".format(
                    self.ring.description, self.nodes_visited))
                return None
            if remaining <= 0:
                return self._out_of_budget()
            if self._past_deadline():
                return self._out_of_time()
            results = ordered_map(_run_branch, [(self, first, remaining) for first in batch], self.jobs)
            for result in results:
                if result.timed_out:
                    self.nodes_visited += min(result.nodes, remaining)
                    return self._out_of_time()
                if result.nodes > remaining or not result.complete:
                    self.nodes_visited += remaining
                    return self._out_of_budget()
                self.nodes_visited += result.nodes
                remaining -= result.nodes
                if result.images is not None:
                    witness = induced_witness(self.ring, result.images, self.n)
                    if verify_hom(witness, self.omega):
                        logger.info("enumeration found a witness for {0} after {1} nodes".format(
                            self.ring.description, self.nodes_visited))
                        return witness
                    logger.error("enumerated assignment failed verification; skipping it")

    def _out_of_budget(self) -> None:
        self.exhausted = True
        logger.warning("enumeration budget of {0} nodes exhausted for {1}".format(self.budget, self.ring.description))
        return None

    def _out_of_time(self) -> None:
        self.exhausted = True
        self.timed_out = True
        logger.warning("enumeration deadline of {0}s passed for {1} after {2} nodes".format(
            self.deadline, self.ring.description, self.nodes_visited))
        return None


def _run_branch(task) -> _BranchResult:
    enumerator, first, cap = task
    return enumerator.run_branch(first, cap)


def enumerate_hom(ring: GradedRing, omega: RingElement, n: int, coefficients=None, budget: Optional[int] = None,
                  jobs: Optional[int] = None, deadline=None) -> Optional[HomWitness]:
    """
    bounded deterministic enumeration over generator images
    :param deadline: seconds allowed, defaults to settings.QROB_ENUM_DEADLINE; 0 means no limit
    :raises PresentationMissingError: if the ring has no monomial presentation
    """
    return HomEnumerator(ring, omega, n, coefficients, budget, jobs, deadline).run()
