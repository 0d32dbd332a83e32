"""
Searchers and exact verifiers for obstruction certificates.

A certificate asserts that no graded algebra homomorphism Phi: H*(N) -> Λ*R^n with Phi(omega) != 0 exists. It carries
the classes it was built from, the table of every product it relies on and the integer inequality those classes
violate, so that it can be re-checked against the ring without repeating the search.
"""
from collections import namedtuple
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import re

from cohomology.exterior import dim_component
from cohomology.exceptions import NonHomogeneousError
from cohomology.linalg import nullspace_basis, rank, rref, solve, transpose, mat_vec
from cohomology.ring import GradedRing, RingElement, factorizations, in_kunneth_ideal, kunneth_ideal_basis, \
    multiplication_columns, multiply
from cohomology.serializers import ring_hash

from .choices import CERTIFICATE_DUAL_PAIR, CERTIFICATE_H1_ANNIHILATOR, CERTIFICATE_PRYWES_BOUND, \
    CERTIFICATE_SUBMANIFOLD_BOUND, RELATION_GREATER, RELATION_GREATER_EQUAL
from .exceptions import InclusionError, InvalidCertificateError, InvalidSystemError, PreconditionError
from .options import resolve_jobs
from .parallel import ordered_first

logger = logging.getLogger(__name__)

Inequality = namedtuple("Inequality", "lhs rel rhs")
ProductRecord = namedtuple("ProductRecord", "left right degree vector")

ref_re = re.compile(r'^(?P<name>[a-z_]+)(\[(?P<index>\d+)])?$')


def inequality_holds(inequality: Inequality) -> bool:
    if inequality.rel == RELATION_GREATER:
        return inequality.lhs > inequality.rhs
    if inequality.rel == RELATION_GREATER_EQUAL:
        return inequality.lhs >= inequality.rhs
    raise ValueError("unknown relation {0}".format(inequality.rel))


class Certificate(object):
    """
    A re-verifiable obstruction. `classes` maps a role name ("c", "c_prime", "left", "right") to its list of ring
    classes; products refer to them as "c" or "left[3]".
    """
    def __init__(self, kind: str, n: int, classes: Dict[str, List[RingElement]], products: Sequence[ProductRecord],
                 inequality: Inequality, conclusion: str, omega: Optional[RingElement] = None,
                 parameters: Optional[dict] = None, ring_hash: Optional[str] = None, manifold: Optional[str] = None):
        self.kind = kind
        self.n = n
        self.classes = {k: list(v) for k, v in classes.items()}
        self.products = list(products)
        self.inequality = inequality
        self.conclusion = conclusion
        self.omega = omega
        self.parameters = dict(parameters or {})
        self.ring_hash = ring_hash
        self.manifold = manifold

    @property
    def m(self) -> int:
        return len(self.classes.get("left", []))

    def class_at(self, ref: str) -> RingElement:
        match = ref_re.match(ref)
        if match is None or match.group("name") not in self.classes:
            raise InvalidCertificateError("unknown class reference '{0}'".format(ref))
        members = self.classes[match.group("name")]
        index = int(match.group("index")) if match.group("index") is not None else 0
        if index >= len(members):
            raise InvalidCertificateError("class reference '{0}' is out of range".format(ref))
        return members[index]

    def __repr__(self):
        return "Certificate({0}, {1} {2} {3})".format(self.kind, self.inequality.lhs, self.inequality.rel,
                                                      self.inequality.rhs)


def _ref(name: str, index: Optional[int] = None) -> str:
    return name if index is None else "{0}[{1}]".format(name, index)


def _record(left_ref: str, right_ref: str, product: RingElement, degree: int) -> ProductRecord:
    return ProductRecord(left_ref, right_ref, degree, tuple(product.vector(degree)))


def _homogeneous_degree(elem: RingElement, what: str) -> int:
    if elem.is_zero() or not elem.is_homogeneous:
        raise InvalidSystemError("{0} must be a non-zero homogeneous class, got {1}".format(what, elem.describe()))
    return elem.degree


def _kronecker_check(left: Sequence[RingElement], right: Sequence[RingElement], c: RingElement,
                     records: List[ProductRecord]):
    k = c.degree
    zero = c.ring.zero()
    for i, x in enumerate(left):
        for ell, y in enumerate(right):
            product = multiply(x, y)
            expected = c if i == ell else zero
            if product != expected:
                raise InvalidSystemError("left[{0}]*right[{1}] = {2}, expected {3}".format(
                    i, ell, product.describe(), expected.describe()), pair=(i, ell))
            records.append(_record(_ref("left", i), _ref("right", ell), product, k))


### systems

class DualSystem(object):
    """
    classes c_1..c_m of degree k' and c'_1..c'_m of degree k-k' with c_i*c'_l = delta_il * c.
    When `cofactor` and `omega` are given, c*cofactor = omega records that c divides the form class.
    """
    def __init__(self, ring: GradedRing, c: RingElement, left: Sequence[RingElement], right: Sequence[RingElement],
                 cofactor: Optional[RingElement] = None, omega: Optional[RingElement] = None):
        self.ring = ring
        self.c = c
        self.left = list(left)
        self.right = list(right)
        self.cofactor = cofactor
        self.omega = omega

    @property
    def m(self) -> int:
        return len(self.left)


class AnnihilatorSystem(object):
    """
    classes c, c' with c*c' = omega; degree-one classes c_1..c_m with c*c_i = 0; and c'_1..c'_m of degree deg(c)-1 with
    c_i*c'_l = delta_il * c
    """
    def __init__(self, ring: GradedRing, c: RingElement, c_prime: RingElement, omega: RingElement,
                 annihilators: Sequence[RingElement], duals: Sequence[RingElement]):
        self.ring = ring
        self.c = c
        self.c_prime = c_prime
        self.omega = omega
        self.annihilators = list(annihilators)
        self.duals = list(duals)

    @property
    def m(self) -> int:
        return len(self.annihilators)


def verify_dual_system(system: DualSystem, n: int) -> Optional[Certificate]:
    """
    checks every defining product of the system and, if m > C(n, k'), returns a DualPair certificate
    :raises InvalidSystemError: identifying the first failing product
    """
    k = _homogeneous_degree(system.c, "c")
    if len(system.left) != len(system.right):
        raise InvalidSystemError("dual system has {0} left and {1} right classes".format(
            len(system.left), len(system.right)))
    if system.m == 0:
        return None
    k_prime = _homogeneous_degree(system.left[0], "left[0]")
    if k < 2 or k_prime < 1 or k_prime > k - 1:
        raise InvalidSystemError("left degree {0} must lie in 1..{1}".format(k_prime, k - 1))
    for i, x in enumerate(system.left):
        if _homogeneous_degree(x, _ref("left", i)) != k_prime:
            raise InvalidSystemError("left[{0}] is not of degree {1}".format(i, k_prime), pair=(i, None))
    for i, y in enumerate(system.right):
        if _homogeneous_degree(y, _ref("right", i)) != k - k_prime:
            raise InvalidSystemError("right[{0}] is not of degree {1}".format(i, k - k_prime), pair=(None, i))

    records = []
    classes = {"c": [system.c], "left": system.left, "right": system.right}
    if system.cofactor is not None:
        product = multiply(system.c, system.cofactor)
        if system.omega is None or product != system.omega:
            raise InvalidSystemError("c*c_prime = {0} is not the form class".format(product.describe()),
                                     pair=("c", "c_prime"))
        records.append(_record("c", "c_prime", product, product.degree))
        classes["c_prime"] = [system.cofactor]
    _kronecker_check(system.left, system.right, system.c, records)

    inequality = Inequality(system.m, RELATION_GREATER, dim_component(n, k_prime))
    if not inequality_holds(inequality):
        return None
    conclusion = "m = {0} > C({1},{2}) = {3}: no graded algebra homomorphism H*(N) -> Λ*R^{1} has Phi(c) != 0".format(
        system.m, n, k_prime, inequality.rhs)
    if system.cofactor is not None:
        conclusion += "; since c*c' = omega, none has Phi(omega) != 0"
    return Certificate(CERTIFICATE_DUAL_PAIR, n, classes, records, inequality, conclusion, omega=system.omega,
                       parameters={"k": k, "k_prime": k_prime})


def verify_annihilator_system(system: AnnihilatorSystem, n: int) -> Optional[Certificate]:
    """
    checks every defining product of the system and, if m >= n, returns an H1Annihilator certificate
    :raises InvalidSystemError: identifying the first failing product
    """
    k = _homogeneous_degree(system.c, "c")
    _homogeneous_degree(system.c_prime, "c_prime")
    records = []
    product = multiply(system.c, system.c_prime)
    if system.omega.is_zero() or product != system.omega:
        raise InvalidSystemError("c*c_prime = {0} is not the non-zero form class".format(product.describe()),
                                 pair=("c", "c_prime"))
    records.append(_record("c", "c_prime", product, product.degree))

    if len(system.annihilators) != len(system.duals):
        raise InvalidSystemError("annihilator system has {0} classes and {1} duals".format(
            len(system.annihilators), len(system.duals)))
    if system.m == 0:
        return None
    for i, x in enumerate(system.annihilators):
        if _homogeneous_degree(x, _ref("left", i)) != 1:
            raise InvalidSystemError("left[{0}] is not of degree 1".format(i), pair=(i, None))
        annihilated = multiply(system.c, x)
        if not annihilated.is_zero():
            raise InvalidSystemError("c*left[{0}] = {1}, expected 0".format(i, annihilated.describe()),
                                     pair=("c", i))
        records.append(_record("c", _ref("left", i), annihilated, k + 1))
    for i, y in enumerate(system.duals):
        if _homogeneous_degree(y, _ref("right", i)) != k - 1:
            raise InvalidSystemError("right[{0}] is not of degree {1}".format(i, k - 1), pair=(None, i))
    _kronecker_check(system.annihilators, system.duals, system.c, records)

    inequality = Inequality(system.m, RELATION_GREATER_EQUAL, n)
    if not inequality_holds(inequality):
        return None
    conclusion = "m = {0} >= n = {1}: no graded algebra homomorphism H*(N) -> Λ*R^{1} has Phi(c) ^ Phi(c') != 0; " \
                 "since c*c' = omega, none has Phi(omega) != 0".format(system.m, n)
    classes = {"c": [system.c], "c_prime": [system.c_prime], "left": system.annihilators, "right": system.duals}
    return Certificate(CERTIFICATE_H1_ANNIHILATOR, n, classes, records, inequality, conclusion, omega=system.omega,
                       parameters={"k": k})


def prywes_bound(ring: GradedRing, n: int, omega: Optional[RingElement] = None) -> Optional[Certificate]:
    """
    the first degree k <= min(d, n) with dim H^k > C(n, k). The certificate obstructs Phi(omega) != 0 only when
    n equals the top degree (Phi is then injective); otherwise it bounds injective homomorphisms only.
    """
    if n < 2:
        raise ValueError("target dimension must be at least 2, got {0}".format(n))
    for k in range(0, min(ring.top_degree, n) + 1):
        binomial = dim_component(n, k)
        if ring.dims[k] > binomial:
            inequality = Inequality(ring.dims[k], RELATION_GREATER, binomial)
            if omega is not None and n == ring.top_degree:
                conclusion = "dim H^{0} = {1} > C({2},{0}) = {3}: a homomorphism with Phi(omega) != 0 for a top-degree " \
                             "omega would be injective, so none exists".format(k, ring.dims[k], n, binomial)
            else:
                conclusion = "dim H^{0} = {1} > C({2},{0}) = {3}: no injective graded algebra homomorphism " \
                             "H*(N) -> Λ*R^{2} exists".format(k, ring.dims[k], n, binomial)
            return Certificate(CERTIFICATE_PRYWES_BOUND, n, {}, [], inequality, conclusion,
                               omega=omega if n == ring.top_degree else None, parameters={"degree": k})
    return None


### assembly

def _solve_duals(ring: GradedRing, lefts: Sequence[RingElement], dual_degree: int,
                 target: RingElement) -> Optional[List[RingElement]]:
    """
    for each i, a class y_i of degree dual_degree with lefts[j]*y_i = delta_ij * target for all j, or None
    """
    if dual_degree < 0 or dual_degree > ring.top_degree:
        return None
    k = target.degree
    blocks = [multiplication_columns(ring, x, dual_degree) for x in lefts]
    columns = []
    for b in range(ring.dims[dual_degree]):
        col = []
        for block in blocks:
            col.extend(block[b])
        columns.append(col)
    t = list(target.vector(k))
    zero = [0] * len(t)
    duals = []
    for i in range(len(lefts)):
        rhs = []
        for j in range(len(lefts)):
            rhs.extend(t if i == j else zero)
        y = solve(columns, rhs)
        if y is None:
            return None
        duals.append(ring.element(dual_degree, y))
    return duals


def _greedy_system(ring: GradedRing, candidates: Sequence[RingElement], dual_degree: int,
                   target: RingElement) -> Tuple[List[RingElement], List[RingElement]]:
    """
    walks the candidates in order, keeping each one for which the enlarged family still has exact duals
    """
    selected, duals = [], []
    for x in candidates:
        trial = selected + [x]
        solved = _solve_duals(ring, trial, dual_degree, target)
        if solved is not None:
            selected, duals = trial, solved
    return selected, duals


def assemble_annihilator_system(ring: GradedRing, c: RingElement, c_prime: RingElement,
                                omega: RingElement) -> AnnihilatorSystem:
    """
    the degree-one kernel of x -> c*x (as a nullspace basis) followed by a greedy choice of classes with exact duals
    """
    ell = c.degree
    if ring.dims[1] == 0:
        return AnnihilatorSystem(ring, c, c_prime, omega, [], [])
    columns = multiplication_columns(ring, c, 1)
    height = len(columns[0]) if columns else 0
    kernel = [ring.element(1, v) for v in nullspace_basis(transpose(columns, height), ring.dims[1])]
    left, right = _greedy_system(ring, kernel, ell - 1, c)
    return AnnihilatorSystem(ring, c, c_prime, omega, left, right)


def assemble_dual_system(ring: GradedRing, c: RingElement, k_prime: int, cofactor: Optional[RingElement] = None,
                         omega: Optional[RingElement] = None) -> DualSystem:
    """
    a greedy dual system over the degree-k' basis classes, duals solved in degree deg(c)-k'
    """
    left, right = _greedy_system(ring, ring.basis(k_prime), c.degree - k_prime, c)
    return DualSystem(ring, c, left, right, cofactor, omega)


### search

def preconditions_report(ring: GradedRing, omega: RingElement, n: int) -> dict:
    """
    the hypotheses on the form class: omega != 0 and omega in the Künneth layer K^n
    """
    homogeneous = omega.is_homogeneous
    degree_ok = homogeneous and (omega.is_zero() or omega.degree == n)
    return {
        "omega_nonzero": not omega.is_zero(),
        "omega_in_Kn": bool(degree_ok and 2 <= n <= ring.top_degree and not omega.is_zero()
                            and in_kunneth_ideal(ring, omega)),
    }


def check_preconditions(ring: GradedRing, omega: RingElement, n: int) -> dict:
    """
    :raises PreconditionError: carrying the report, if n is out of range or omega is zero, mixed, of the wrong degree
    or outside K^n
    """
    if n < 2 or n > ring.top_degree:
        raise PreconditionError("target dimension {0} must lie in 2..{1}".format(n, ring.top_degree),
                                preconditions_report(ring, omega, n))
    if not omega.is_homogeneous:
        raise PreconditionError("the form class has components in degrees {0}".format(omega.degrees()),
                                preconditions_report(ring, omega, n))
    if not omega.is_zero() and omega.degree != n:
        raise PreconditionError("the form class has degree {0}, expected {1}".format(omega.degree, n),
                                preconditions_report(ring, omega, n))
    report = preconditions_report(ring, omega, n)
    if not report["omega_nonzero"]:
        raise PreconditionError("the form class is zero", report)
    if not report["omega_in_Kn"]:
        raise PreconditionError("the form class does not lie in the Künneth ideal K^{0}".format(n), report)
    return report


def _evaluate_candidate(candidate) -> Optional[Certificate]:
    kind, ring, omega, n, c, cofactor, k_prime = candidate
    if kind == CERTIFICATE_H1_ANNIHILATOR:
        system = assemble_annihilator_system(ring, c, cofactor, omega)
        logger.debug("annihilator system for {0}: m = {1}".format(c.describe(), system.m))
        return verify_annihilator_system(system, n)
    system = assemble_dual_system(ring, c, k_prime, cofactor, omega)
    logger.debug("dual system for {0} in degree {1}: m = {2}".format(c.describe(), k_prime, system.m))
    return verify_dual_system(system, n)


def obstruction_candidates(ring: GradedRing, omega: RingElement, n: int) -> List[tuple]:
    """
    candidate systems in canonical order: annihilator systems for every factorization by increasing degree of the
    factor, then dual systems for every distinct factor and every split degree
    """
    pairs = []
    for ell in range(1, n):
        pairs.extend(factorizations(ring, omega, ell))
    candidates = [(CERTIFICATE_H1_ANNIHILATOR, ring, omega, n, c, cp, None) for c, cp in pairs]
    seen = []
    for c, cp in pairs:
        if c in seen:
            continue
        seen.append(c)
        for k_prime in range(1, c.degree):
            candidates.append((CERTIFICATE_DUAL_PAIR, ring, omega, n, c, cp, k_prime))
    return candidates


def search_obstruction(ring: GradedRing, omega: RingElement, n: int, jobs: Optional[int] = None) -> Optional[Certificate]:
    """
    deterministic search for the canonically first certificate: the binomial bound (only when n is the top degree),
    then annihilator systems, then dual systems. Every certificate returned has been verified.
    :raises PreconditionError: if omega fails a hypothesis
    """
    check_preconditions(ring, omega, n)
    jobs = resolve_jobs(jobs)

    certificate = None
    if n == ring.top_degree:
        certificate = prywes_bound(ring, n, omega)
    if certificate is None:
        candidates = obstruction_candidates(ring, omega, n)
        logger.debug("{0} candidate systems for {1}".format(len(candidates), ring.description))
        certificate = ordered_first(_evaluate_candidate, candidates, jobs)
    if certificate is None:
        logger.info("no obstruction found for {0} in dimension {1}".format(ring.description, n))
        return None

    certificate.ring_hash = ring_hash(ring)
    verify_certificate(certificate, ring)
    logger.info("found {0} certificate for {1}: {2} {3} {4}".format(certificate.kind, ring.description,
                                                                   certificate.inequality.lhs,
                                                                   certificate.inequality.rel,
                                                                   certificate.inequality.rhs))
    return certificate


### submanifolds

def pull_back(ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list], x: RingElement) -> RingElement:
    coords = {}
    for k, vec in x.coords.items():
        if k > ring_m.top_degree or k not in iota_star:
            continue
        coords[k] = mat_vec(iota_star[k], vec)
    return RingElement(ring_m, coords)


def check_inclusion(ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list]):
    """
    checks that iota_star is a degree-preserving unital ring homomorphism H*(N) -> H*(M), on all basis pairs
    :raises InclusionError: naming the failing degree or pair
    """
    for k in range(0, min(ring_n.top_degree, ring_m.top_degree) + 1):
        matrix = iota_star.get(k)
        if matrix is None or len(matrix) != ring_m.dims[k] or any(len(row) != ring_n.dims[k] for row in matrix):
            raise InclusionError("restriction matrix in degree {0} must be {1}x{2}".format(
                k, ring_m.dims[k], ring_n.dims[k]))
    if pull_back(ring_n, ring_m, iota_star, ring_n.unit()) != ring_m.unit():
        raise InclusionError("restriction does not preserve the unit")

    d = ring_m.top_degree
    for p in range(1, d):
        for q in range(p, d + 1 - p):
            for i, x in enumerate(ring_n.basis(p)):
                for j, y in enumerate(ring_n.basis(q)):
                    lhs = pull_back(ring_n, ring_m, iota_star, multiply(x, y))
                    rhs = multiply(pull_back(ring_n, ring_m, iota_star, x), pull_back(ring_n, ring_m, iota_star, y))
                    if lhs != rhs:
                        raise InclusionError("restriction is not multiplicative on {0}*{1}".format(
                            ring_n.label_of(p, i), ring_n.label_of(q, j)))


class SubmanifoldReport(object):
    """
    per-degree image dimensions of a restriction H*(N) -> H*(M) against the binomial bounds, and the certificate
    (if any) for a violated bound
    """
    def __init__(self, n: int, degrees: List[dict], kernel_meets_ideal: int, certificate: Optional[Certificate],
                 omega: Optional[RingElement] = None):
        self.n = n
        self.omega = omega
        self.degrees = degrees
        self.kernel_meets_ideal = kernel_meets_ideal
        self.certificate = certificate

    @property
    def kernel_condition(self) -> bool:
        return self.kernel_meets_ideal == 0

    @property
    def bounds_hold(self) -> bool:
        return all(entry["bound_holds"] for entry in self.degrees)


def _kernel_meets_ideal(ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list], n: int) -> int:
    """
    dim (ker iota* ∩ K^n(N))
    """
    basis = kunneth_ideal_basis(ring_n, n)
    if len(basis) == 0:
        return 0
    images = [list(pull_back(ring_n, ring_m, iota_star, b).vector(n)) for b in basis]
    return len(basis) - rank(images, ring_m.dims[n])


def _submanifold_system(ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list], k: int, n: int):
    """
    classes of degree k whose restrictions form a basis of iota* H^k(N), and lifts of their Poincaré duals in M
    """
    reduced, pivots = rref(iota_star[k], ring_n.dims[k])
    left = [ring_n.basis_element(k, j) for j in pivots]
    images = [pull_back(ring_n, ring_m, iota_star, x) for x in left]
    duals_m = _solve_duals(ring_m, images, n - k, ring_m.fundamental_class())
    if duals_m is None:
        raise InclusionError("restricted classes in degree {0} have no Poincaré duals in M".format(k))
    lift_columns = transpose(iota_star[n - k], ring_n.dims[n - k])
    right = []
    for w in duals_m:
        y = solve(lift_columns, list(w.vector(n - k)))
        if y is None:
            raise InclusionError("restriction is not surjective in degree {0}".format(n - k))
        right.append(ring_n.element(n - k, y))
    return left, right


def _submanifold_products(ring_n, ring_m, iota_star, left, right) -> List[ProductRecord]:
    vol = ring_m.fundamental_class()
    zero = ring_m.zero()
    records = []
    for i, x in enumerate(left):
        for ell, y in enumerate(right):
            product = multiply(pull_back(ring_n, ring_m, iota_star, x), pull_back(ring_n, ring_m, iota_star, y))
            expected = vol if i == ell else zero
            if product != expected:
                raise InvalidSystemError("i*left[{0}] * i*right[{1}] = {2}, expected {3}".format(
                    i, ell, product.describe(), expected.describe()), pair=(i, ell))
            records.append(_record(_ref("left", i), _ref("right", ell), product, ring_m.top_degree))
    return records


def _submanifold_conclusion(m: int, k: int, n: int, binomial: int, kernel_condition: bool) -> str:
    text = "dim i*H^{0}(N) = {1} > C({2},{0}) = {3} with i* onto H^{4}(M): no graded algebra homomorphism " \
           "Psi as in the submanifold bound exists".format(k, m, n, binomial, n - k)
    if kernel_condition:
        return text + "; ker i* meets K^{0}(N) trivially, so no quasiregular omega-curve of infinite energy " \
                      "with omega bounded below exists".format(n)
    return text + "; conclusion holds only for curves F with ker i* ∩ K^{0}(N) ⊂ core(F)".format(n)


def submanifold_bound(ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list], omega: RingElement,
                      n: int, factor: Optional[int] = None) -> SubmanifoldReport:
    """
    compares dim i*H^k(N) with C(n, k) for a closed n-submanifold M of N, given the restriction matrices i*.
    A SubmanifoldBound certificate is emitted for the first k in 1..n-1 where i* is onto in degree n-k and the bound
    fails.
    :raises InclusionError: if i* is not a ring homomorphism, dim M != n or i*omega = 0
    """
    if ring_m.top_degree != n:
        raise InclusionError("submanifold has dimension {0}, expected {1}".format(ring_m.top_degree, n))
    if not omega.is_homogeneous or omega.is_zero() or omega.degree != n:
        raise InclusionError("the form class must be non-zero of degree {0}".format(n))
    check_inclusion(ring_n, ring_m, iota_star)
    if pull_back(ring_n, ring_m, iota_star, omega).is_zero():
        raise InclusionError("the form class restricts to zero on the submanifold")

    degrees = []
    for k in range(0, n + 1):
        image_dim = rank(iota_star[k], ring_n.dims[k]) if ring_m.dims[k] > 0 else 0
        binomial = dim_component(n, k)
        degrees.append({
            "degree": k,
            "image_dim": image_dim,
            "binomial": binomial,
            "bound_holds": image_dim <= binomial,
            "surjective": image_dim == ring_m.dims[k],
        })
    meets = _kernel_meets_ideal(ring_n, ring_m, iota_star, n)

    certificate = None
    for k in range(1, n):
        entry = degrees[k]
        if entry["bound_holds"] or not degrees[n - k]["surjective"]:
            continue
        left, right = _submanifold_system(ring_n, ring_m, iota_star, k, n)
        records = _submanifold_products(ring_n, ring_m, iota_star, left, right)
        inequality = Inequality(len(left), RELATION_GREATER, entry["binomial"])
        certificate = Certificate(CERTIFICATE_SUBMANIFOLD_BOUND, n, {"left": left, "right": right}, records,
                                  inequality, _submanifold_conclusion(len(left), k, n, entry["binomial"], meets == 0),
                                  omega=omega, parameters={"degree": k, "factor": factor,
                                                           "kernel_meets_ideal": meets},
                                  ring_hash=ring_hash(ring_n))
        logger.info("submanifold bound fails in degree {0}: {1} > {2}".format(k, len(left), entry["binomial"]))
        break
    return SubmanifoldReport(n, degrees, meets, certificate, omega)


### verification

def _compare_products(stored: Sequence[ProductRecord], recomputed: Sequence[ProductRecord]):
    if len(stored) != len(recomputed):
        raise InvalidCertificateError("products table lists {0} products, expected {1}".format(
            len(stored), len(recomputed)))
    for a, b in zip(stored, recomputed):
        if (a.left, a.right) != (b.left, b.right):
            raise InvalidCertificateError("products table entry {0}*{1} found where {2}*{3} was expected".format(
                a.left, a.right, b.left, b.right))
        if a.degree != b.degree or tuple(a.vector) != tuple(b.vector):
            raise InvalidCertificateError("product {0}*{1} does not match: stored {2}, recomputed {3}".format(
                a.left, a.right, [str(v) for v in a.vector], [str(v) for v in b.vector]))


def _compare_inequality(stored: Inequality, recomputed: Inequality):
    for field in ("lhs", "rel", "rhs"):
        if getattr(stored, field) != getattr(recomputed, field):
            raise InvalidCertificateError("inequality {0} is {1}, recomputed {2}".format(
                field, getattr(stored, field), getattr(recomputed, field)))


def _check_omega(cert: Certificate, ring: GradedRing, required: bool):
    if cert.omega is None:
        if required:
            raise InvalidCertificateError("{0} certificate does not carry the form class".format(cert.kind))
        return
    if not cert.omega.ring.same_ring(ring):
        raise InvalidCertificateError("form class belongs to a different ring")
    if not cert.omega.is_homogeneous or cert.omega.is_zero() or cert.omega.degree != cert.n:
        raise InvalidCertificateError("form class must be non-zero of degree {0}".format(cert.n))


def verify_certificate(cert: Certificate, ring: GradedRing, inclusion: Optional[tuple] = None) -> bool:
    """
    re-checks a certificate from its payload: ring hash, every listed product and the integers of the inequality.
    :param inclusion: (R_M, iota_star) for SubmanifoldBound certificates
    :raises InvalidCertificateError: naming the first failing product or integer
    """
    if cert.ring_hash is not None:
        try:
            actual = ring_hash(ring)
        except Exception as e:
            raise InvalidCertificateError("could not hash the ring: {0}".format(e))
        if actual != cert.ring_hash:
            raise InvalidCertificateError("ring_hash {0} does not match the ring ({1})".format(cert.ring_hash, actual))
    if cert.n < 2:
        raise InvalidCertificateError("target dimension {0} is below 2".format(cert.n))

    try:
        if cert.kind == CERTIFICATE_PRYWES_BOUND:
            _check_omega(cert, ring, required=False)
            k = cert.parameters.get("degree")
            if not isinstance(k, int) or k < 0 or k > min(ring.top_degree, cert.n):
                raise InvalidCertificateError("degree {0} is out of range".format(k))
            if cert.omega is not None and cert.n != ring.top_degree:
                raise InvalidCertificateError("the binomial bound obstructs the form class only in the top degree")
            recomputed = Inequality(ring.dims[k], RELATION_GREATER, dim_component(cert.n, k))
            _compare_inequality(cert.inequality, recomputed)
            _compare_products(cert.products, [])

        elif cert.kind == CERTIFICATE_H1_ANNIHILATOR:
            _check_omega(cert, ring, required=True)
            system = AnnihilatorSystem(ring, cert.class_at("c"), cert.class_at("c_prime"), cert.omega,
                                       cert.classes.get("left", []), cert.classes.get("right", []))
            _compare_recomputed(cert, verify_annihilator_system(system, cert.n))

        elif cert.kind == CERTIFICATE_DUAL_PAIR:
            _check_omega(cert, ring, required="c_prime" in cert.classes)
            cofactor = cert.class_at("c_prime") if "c_prime" in cert.classes else None
            system = DualSystem(ring, cert.class_at("c"), cert.classes.get("left", []), cert.classes.get("right", []),
                                cofactor, cert.omega)
            _compare_recomputed(cert, verify_dual_system(system, cert.n))

        elif cert.kind == CERTIFICATE_SUBMANIFOLD_BOUND:
            _check_omega(cert, ring, required=True)
            if inclusion is None:
                raise InvalidCertificateError("a submanifold certificate needs the restriction to be verified")
            _verify_submanifold(cert, ring, *inclusion)

        else:
            raise InvalidCertificateError("unknown certificate kind {0}".format(cert.kind))
    except InvalidSystemError as e:
        raise InvalidCertificateError("certificate payload fails: {0}".format(e))
    except NonHomogeneousError as e:
        raise InvalidCertificateError(str(e))

    logger.debug("{0} certificate verified".format(cert.kind))
    return True


def _compare_recomputed(cert: Certificate, recomputed: Optional[Certificate]):
    if recomputed is None:
        raise InvalidCertificateError("the payload does not violate the bound {0} {1} {2}".format(
            cert.inequality.lhs, cert.inequality.rel, cert.inequality.rhs))
    _compare_products(cert.products, recomputed.products)
    _compare_inequality(cert.inequality, recomputed.inequality)


def _verify_submanifold(cert: Certificate, ring_n: GradedRing, ring_m: GradedRing, iota_star: Dict[int, list]):
    n = cert.n
    if ring_m.top_degree != n:
        raise InvalidCertificateError("submanifold has dimension {0}, expected {1}".format(ring_m.top_degree, n))
    try:
        check_inclusion(ring_n, ring_m, iota_star)
    except InclusionError as e:
        raise InvalidCertificateError(str(e))
    if pull_back(ring_n, ring_m, iota_star, cert.omega).is_zero():
        raise InvalidCertificateError("the form class restricts to zero")

    k = cert.parameters.get("degree")
    if not isinstance(k, int) or k < 1 or k > n - 1:
        raise InvalidCertificateError("degree {0} is out of range".format(k))
    left = cert.classes.get("left", [])
    right = cert.classes.get("right", [])
    if len(left) != len(right):
        raise InvalidCertificateError("certificate has {0} left and {1} right classes".format(len(left), len(right)))
    for i, x in enumerate(left):
        if not x.is_homogeneous or x.degree != k:
            raise InvalidCertificateError("left[{0}] is not of degree {1}".format(i, k))
    for i, y in enumerate(right):
        if not y.is_homogeneous or y.degree != n - k:
            raise InvalidCertificateError("right[{0}] is not of degree {1}".format(i, n - k))
    if rank(iota_star[n - k], ring_n.dims[n - k]) != ring_m.dims[n - k]:
        raise InvalidCertificateError("restriction is not onto in degree {0}".format(n - k))

    _compare_products(cert.products, _submanifold_products(ring_n, ring_m, iota_star, left, right))
    meets = _kernel_meets_ideal(ring_n, ring_m, iota_star, n)
    if cert.parameters.get("kernel_meets_ideal") != meets:
        raise InvalidCertificateError("kernel_meets_ideal is {0}, recomputed {1}".format(
            cert.parameters.get("kernel_meets_ideal"), meets))
    _compare_inequality(cert.inequality, Inequality(len(left), RELATION_GREATER, dim_component(n, k)))
    if not inequality_holds(cert.inequality):
        raise InvalidCertificateError("the payload does not violate the bound")
