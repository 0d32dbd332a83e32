"""
The query pipeline: build the ring, evaluate the form class, check its hypotheses, then search for an obstruction
certificate and, failing that, for a homomorphism witness.
"""
from typing import List, Optional
import logging

from cohomology.expressions import ManifoldExpr, parse_manifold
from cohomology.ring import GradedRing, RingElement, build, evaluate_class

from .choices import VERDICT_EXIT_CODES, VERDICT_OBSTRUCTED, VERDICT_UNKNOWN, VERDICT_WITNESS, \
    WITNESS_SOURCE_ENUMERATION, WITNESS_SOURCE_TEMPLATE
from .homsearch import HomEnumerator, HomWitness, witness_template
from .obstruct import Certificate, check_preconditions, search_obstruction
from .options import resolve_budget, resolve_coeff_set, resolve_deadline, resolve_jobs

logger = logging.getLogger(__name__)


class Query(object):
    """
    A pair (N, omega) and a target dimension n. N is given either as a manifold expression or as a ready-made ring
    (read from a ring file); omega is a form-class expression over the ring's named classes.
    """
    def __init__(self, manifold: Optional[str], omega: str, n: int, ring: Optional[GradedRing] = None):
        if manifold is None and ring is None:
            raise ValueError("a query needs a manifold expression or a ring")
        self.manifold = manifold
        self.omega = omega
        self.n = n
        self.ring = ring

    def expression(self) -> Optional[ManifoldExpr]:
        if self.manifold is None:
            return None
        return parse_manifold(self.manifold)

    def __repr__(self):
        return "Query({0}, {1}, n={2})".format(self.manifold or self.ring.description, self.omega, self.n)


class Verdict(object):
    def __init__(self, status: str, ring: GradedRing, omega: RingElement, n: int, preconditions: dict,
                 search_log: List[dict], certificate: Optional[Certificate] = None,
                 witness: Optional[HomWitness] = None, witness_source: Optional[str] = None,
                 manifold: Optional[str] = None):
        self.status = status
        self.ring = ring
        self.omega = omega
        self.n = n
        self.preconditions = preconditions
        self.search_log = search_log
        self.certificate = certificate
        self.witness = witness
        self.witness_source = witness_source
        self.manifold = manifold

    @property
    def exit_code(self) -> int:
        return VERDICT_EXIT_CODES[self.status]

    def __repr__(self):
        return "Verdict({0})".format(self.status)


def run_query(query: Query, coeff_set=None, budget: Optional[int] = None, jobs: Optional[int] = None,
              deadline=None) -> Verdict:
    """
    runs the full pipeline for one query
    :param coeff_set: enumeration coefficients, defaults to settings.QROB_COEFF_SET
    :param budget: enumeration node cap, defaults to settings.QROB_ENUM_BUDGET
    :param jobs: worker processes, defaults to settings.QROB_JOBS
    :param deadline: seconds for the enumeration, defaults to settings.QROB_ENUM_DEADLINE; 0 means no limit
    :raises PreconditionError: if omega is zero, of the wrong degree or outside K^n, or n is out of range
    :raises ExpressionParseError: if the manifold or form expression does not parse
    """
    coefficients = resolve_coeff_set(coeff_set)
    budget = resolve_budget(budget)
    jobs = resolve_jobs(jobs)
    deadline = resolve_deadline(deadline)

    expr = query.expression()
    ring = query.ring if query.ring is not None else build(expr)
    omega = evaluate_class(ring, query.omega)
    preconditions = check_preconditions(ring, omega, query.n)
    search_log = []

    def verdict(status, **kwargs):
        return Verdict(status, ring, omega, query.n, preconditions, search_log, manifold=query.manifold, **kwargs)

    certificate = search_obstruction(ring, omega, query.n, jobs)
    search_log.append({"stage": "obstruction", "found": certificate is not None})
    if certificate is not None:
        certificate.manifold = query.manifold
        return verdict(VERDICT_OBSTRUCTED, certificate=certificate)

    if expr is not None:
        witness = witness_template(expr, omega, query.n, ring)
        search_log.append({"stage": "template", "found": witness is not None})
        if witness is not None:
            return verdict(VERDICT_WITNESS, witness=witness, witness_source=WITNESS_SOURCE_TEMPLATE)
    else:
        search_log.append({"stage": "template", "found": False, "skipped": "no manifold expression"})

    if ring.presentation is None:
        logger.warning("{0} has no monomial presentation; skipping enumeration".format(ring.description))
        search_log.append({"stage": "enumeration", "found": False, "skipped": "no monomial presentation"})
        return verdict(VERDICT_UNKNOWN)

    enumerator = HomEnumerator(ring, omega, query.n, coefficients, budget, jobs, deadline or 0)
    witness = enumerator.run()
    search_log.append({
        "stage": "enumeration",
        "found": witness is not None,
        "nodes_visited": enumerator.nodes_visited,
        "exhausted": enumerator.exhausted,
        "timed_out": enumerator.timed_out,
        "budget": budget,
        "deadline": deadline,
        "coeff_set": [str(c) for c in coefficients],
    })
    if witness is not None:
        return verdict(VERDICT_WITNESS, witness=witness, witness_source=WITNESS_SOURCE_ENUMERATION)

    logger.info("no verdict for {0}; reporting UNKNOWN".format(query))
    return verdict(VERDICT_UNKNOWN)
