"""
Finite-dimensional graded commutative algebras over Q, used as models of de Rham cohomology rings of closed
oriented manifolds.

A ring stores, per degree, a basis (with human-readable labels) and structure constants: for each pair of basis
elements b_i (degree p) and b_j (degree q) with p+q <= top_degree, the coordinates of b_i*b_j in degree p+q.
Products landing above the top degree are zero.
"""
from collections import namedtuple
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple
import hashlib
import json
import logging

from django.conf import settings

from .exceptions import ConstructorError, IdealUndefinedError, NonHomogeneousError, RingMismatchError, \
    RingStructureError, UnknownClassError
from .expressions import ClassName, ClassNeg, ClassProduct, ClassScalar, ClassSum, CPm, ConnSum, ManifoldExpr, \
    S2xS2, Sphere, Surface, Torus, class_key, parse_class
from .linalg import rank, row_space_basis, solve, to_fraction

logger = logging.getLogger(__name__)

SparseVector = Tuple[Tuple[int, Fraction], ...]

Generator = namedtuple("Generator", "name degree index")
Word = namedtuple("Word", "coeff generators")   # basis element == coeff * product of the listed generator positions


class MonomialPresentation(object):
    """
    Expresses every basis element as a scalar multiple of a product of generators. Generators are themselves basis
    elements (given by degree and index).
    """
    def __init__(self, generators: Sequence[Generator], words: Dict[Tuple[int, int], Word]):
        self.generators = tuple(generators)
        self.words = dict(words)

    def word(self, degree: int, index: int) -> Word:
        return self.words[(degree, index)]

    def renamed(self, rename) -> "MonomialPresentation":
        return MonomialPresentation([g._replace(name=rename(g.name)) for g in self.generators], self.words)

    def generator_names(self) -> List[str]:
        return [g.name for g in self.generators]


class GradedRing(object):
    """
    An immutable graded commutative Q-algebra with per-degree bases and structure constants.
    """
    def __init__(self, top_degree: int, dims: Sequence[int], labels: Sequence[Sequence[str]],
                 structure: Dict[Tuple[int, int], Dict[Tuple[int, int], SparseVector]],
                 fundamental_index: int = 0,
                 presentation: Optional[MonomialPresentation] = None,
                 named: Optional[Dict[str, Tuple[int, Tuple[Fraction, ...]]]] = None,
                 kunneth: Optional[Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]]] = None,
                 description: Optional[str] = None):
        if top_degree < 1:
            raise RingStructureError("top degree must be at least 1, got {0}".format(top_degree))
        if len(dims) != top_degree + 1:
            raise RingStructureError("expected {0} dimensions for top degree {1}, got {2}".format(
                top_degree + 1, top_degree, len(dims)))
        if len(labels) != len(dims) or any(len(labels[k]) != dims[k] for k in range(len(dims))):
            raise RingStructureError("labels do not match the per-degree dimensions {0}".format(list(dims)))

        self._d = top_degree
        self._dims = tuple(int(x) for x in dims)
        self._labels = tuple(tuple(row) for row in labels)
        self._fundamental = fundamental_index
        self._presentation = presentation
        self._named = dict(named or {})
        self._kunneth = kunneth
        self.description = description
        self._fingerprint = None

        table = {}
        for (p, q), entries in structure.items():
            if p < 0 or q < 0 or p + q > top_degree:
                continue
            cleaned = {}
            for (i, j), vec in entries.items():
                vec = tuple((int(idx), to_fraction(c)) for idx, c in vec if to_fraction(c) != 0)
                if len(vec) > 0:
                    cleaned[(i, j)] = vec
            if len(cleaned) > 0:
                table[(p, q)] = cleaned
        # unit products are implicit unless given explicitly
        if self._dims[0] == 1:
            for q in range(top_degree + 1):
                for j in range(self._dims[q]):
                    table.setdefault((0, q), {}).setdefault((0, j), ((j, Fraction(1)),))
                    table.setdefault((q, 0), {}).setdefault((j, 0), ((j, Fraction(1)),))
        self._structure = table

    @property
    def top_degree(self) -> int:
        return self._d

    @property
    def dims(self) -> Tuple[int, ...]:
        return self._dims

    @property
    def labels(self) -> Tuple[Tuple[str, ...], ...]:
        return self._labels

    @property
    def fundamental_index(self) -> int:
        return self._fundamental

    @property
    def presentation(self) -> Optional[MonomialPresentation]:
        return self._presentation

    @property
    def named_keys(self) -> List[str]:
        return sorted(self._named.keys())

    @property
    def kunneth(self):
        return self._kunneth

    def structure_table(self, p: int, q: int) -> Dict[Tuple[int, int], SparseVector]:
        return self._structure.get((p, q), {})

    def structure_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self._structure.keys())

    def basis_product(self, p: int, i: int, q: int, j: int) -> SparseVector:
        """
        coordinates of b_i (degree p) times b_j (degree q), as a sparse vector in degree p+q
        """
        if p + q > self._d:
            return tuple()
        return self._structure.get((p, q), {}).get((i, j), tuple())

    def fingerprint(self) -> str:
        """
        SHA-256 over the top degree, dims, labels, fundamental index and products; decides whether two ring objects
        describe the same ring, and is stable across processes
        """
        if self._fingerprint is None:
            structure = [[p, q, i, j, [[index, str(c)] for index, c in product]]
                         for (p, q), table in sorted(self._structure.items())
                         for (i, j), product in sorted(table.items())]
            content = [self._d, list(self._dims), [list(ls) for ls in self._labels], self._fundamental, structure]
            body = json.dumps(content, separators=(",", ":"), ensure_ascii=False)
            self._fingerprint = hashlib.sha256(body.encode("UTF-8")).hexdigest()
        return self._fingerprint

    def same_ring(self, other: "GradedRing") -> bool:
        return self is other or (isinstance(other, GradedRing) and self.fingerprint() == other.fingerprint())

    def replaced(self, **changes) -> "GradedRing":
        """
        returns a copy of this ring with some of the constructor arguments replaced
        """
        args = {
            "top_degree": self._d,
            "dims": self._dims,
            "labels": self._labels,
            "structure": self._structure,
            "fundamental_index": self._fundamental,
            "presentation": self._presentation,
            "named": self._named,
            "kunneth": self._kunneth,
            "description": self.description,
        }
        args.update(changes)
        return GradedRing(**args)

    ### elements

    def element(self, degree: int, vector: Sequence) -> "RingElement":
        return RingElement(self, {degree: vector})

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def unit(self) -> "RingElement":
        return self.basis_element(0, 0)

    def basis_element(self, degree: int, index: int) -> "RingElement":
        if degree < 0 or degree > self._d or index < 0 or index >= self._dims[degree]:
            raise IndexError("no basis element {0} in degree {1} (dimension {2})".format(
                index, degree, self._dims[degree] if 0 <= degree <= self._d else 0))
        vec = [Fraction(0)] * self._dims[degree]
        vec[index] = Fraction(1)
        return RingElement(self, {degree: vec})

    def basis(self, degree: int) -> List["RingElement"]:
        if degree < 0 or degree > self._d:
            return []
        return [self.basis_element(degree, i) for i in range(self._dims[degree])]

    def fundamental_class(self) -> "RingElement":
        return self.basis_element(self._d, self._fundamental)

    def named_class(self, key: str) -> "RingElement":
        if key == "vol":
            return self.fundamental_class()
        if key.startswith("b(") and key not in self._named:
            try:
                degree, index = (int(x) for x in key[2:-1].split(","))
                return self.basis_element(degree, index - 1)
            except (ValueError, IndexError):
                raise UnknownClassError("no basis class {0} in this ring".format(key))
        if key not in self._named:
            raise UnknownClassError("unknown class '{0}'; known classes are {1}".format(
                key, ", ".join(["vol", "b(k,i)"] + self.named_keys)))
        degree, vector = self._named[key]
        return RingElement(self, {degree: vector})

    def named_items(self) -> List[Tuple[str, int, Tuple[Fraction, ...]]]:
        return [(k, self._named[k][0], tuple(self._named[k][1])) for k in sorted(self._named.keys())]

    def label_of(self, degree: int, index: int) -> str:
        return self._labels[degree][index]

    ### invariants

    def validate(self):
        """
        checks every ring invariant: unit, graded commutativity, associativity over all basis triples of total degree
        at most top_degree, and non-degeneracy of the Poincaré pairing in every degree.
        :raises RingStructureError: naming the first failure found
        """
        d = self._d
        if self._dims[0] != 1:
            raise RingStructureError("degree 0 must be one-dimensional, got {0}".format(self._dims[0]))
        if self._dims[d] != 1:
            raise RingStructureError("top degree {0} must be one-dimensional, got {1}".format(d, self._dims[d]))
        if self._fundamental != 0:
            raise RingStructureError("fundamental index must be 0 in a one-dimensional top degree")

        for q in range(d + 1):
            for j in range(self._dims[q]):
                expected = ((j, Fraction(1)),)
                if self.basis_product(0, 0, q, j) != expected or self.basis_product(q, j, 0, 0) != expected:
                    raise RingStructureError("unit law fails for {0}".format(self._labels[q][j]))

        for p in range(1, d + 1):
            for q in range(p, d + 1 - p):
                sign = -1 if (p * q) % 2 else 1
                for i in range(self._dims[p]):
                    for j in range(self._dims[q]):
                        lhs = self.basis_product(p, i, q, j)
                        rhs = tuple((idx, sign * c) for idx, c in self.basis_product(q, j, p, i))
                        if dict(lhs) != dict(rhs):
                            raise RingStructureError("graded commutativity fails for {0}*{1}".format(
                                self._labels[p][i], self._labels[q][j]))

        for p in range(1, d + 1):
            for q in range(1, d + 1 - p):
                for r in range(1, d + 1 - p - q):
                    self._check_associativity(p, q, r)

        for k in range(d + 1):
            pairing = poincare_pairing(self, k)
            if self._dims[k] != self._dims[d - k] or rank(pairing, self._dims[d - k]) != self._dims[k]:
                raise RingStructureError("Poincaré pairing is degenerate in degree {0}".format(k))
        logger.debug("ring {0} with dims {1} passed validation".format(self.description, list(self._dims)))

    def _mul_sparse(self, p: int, vec: SparseVector, q: int, j: int) -> Dict[int, Fraction]:
        out = {}
        for t, c in vec:
            for idx, c2 in self.basis_product(p, t, q, j):
                out[idx] = out.get(idx, Fraction(0)) + c * c2
        return {k: v for k, v in out.items() if v != 0}

    def _rmul_sparse(self, p: int, i: int, q: int, vec: SparseVector) -> Dict[int, Fraction]:
        out = {}
        for t, c in vec:
            for idx, c2 in self.basis_product(p, i, q, t):
                out[idx] = out.get(idx, Fraction(0)) + c * c2
        return {k: v for k, v in out.items() if v != 0}

    def _check_associativity(self, p: int, q: int, r: int):
        for i in range(self._dims[p]):
            for j in range(self._dims[q]):
                ij = self.basis_product(p, i, q, j)
                for k in range(self._dims[r]):
                    left = self._mul_sparse(p + q, ij, r, k)
                    right = self._rmul_sparse(p, i, q + r, self.basis_product(q, j, r, k))
                    if left != right:
                        raise RingStructureError("associativity fails for ({0}*{1})*{2}".format(
                            self._labels[p][i], self._labels[q][j], self._labels[r][k]))

    def __repr__(self):
        return "GradedRing({0}, dims={1})".format(self.description or "?", list(self._dims))


class RingElement(object):
    """
    An immutable element of a GradedRing: a map from degree to exact coordinate vector. Zero components are not stored.
    """
    __slots__ = ("_ring", "_coords")

    def __init__(self, ring: GradedRing, coords: Dict[int, Sequence]):
        self._ring = ring
        cleaned = {}
        for degree, vector in coords.items():
            if degree < 0 or degree > ring.top_degree:
                if any(to_fraction(v) != 0 for v in vector):
                    raise IndexError("degree {0} outside 0..{1}".format(degree, ring.top_degree))
                continue
            vector = tuple(to_fraction(v) for v in vector)
            if len(vector) != ring.dims[degree]:
                raise RingStructureError("degree {0} vector has length {1}, expected {2}".format(
                    degree, len(vector), ring.dims[degree]))
            if any(v != 0 for v in vector):
                cleaned[degree] = vector
        self._coords = dict(sorted(cleaned.items()))

    @property
    def ring(self) -> GradedRing:
        return self._ring

    @property
    def coords(self) -> Dict[int, Tuple[Fraction, ...]]:
        return dict(self._coords)

    def degrees(self) -> List[int]:
        return list(self._coords.keys())

    def is_zero(self) -> bool:
        return len(self._coords) == 0

    @property
    def is_homogeneous(self) -> bool:
        return len(self._coords) <= 1

    @property
    def degree(self) -> Optional[int]:
        """
        the degree of a non-zero homogeneous element, otherwise None
        """
        return next(iter(self._coords)) if len(self._coords) == 1 else None

    def vector(self, degree: int) -> Tuple[Fraction, ...]:
        if degree < 0 or degree > self._ring.top_degree:
            return tuple()
        return self._coords.get(degree, tuple([Fraction(0)] * self._ring.dims[degree]))

    def component(self, degree: int) -> "RingElement":
        return RingElement(self._ring, {degree: self.vector(degree)} if degree in self._coords else {})

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement):
            raise TypeError("expected a RingElement, got {0}".format(type(other).__name__))
        if not self._ring.same_ring(other._ring):
            raise RingMismatchError("elements belong to different rings ({0} and {1})".format(
                self._ring.description, other._ring.description))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        result = {}
        for degree in set(self._coords) | set(other._coords):
            result[degree] = [a + b for a, b in zip(self.vector(degree), other.vector(degree))]
        return RingElement(self._ring, result)

    def __neg__(self) -> "RingElement":
        return RingElement(self._ring, {d: [-v for v in vec] for d, vec in self._coords.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scaled(self, scalar) -> "RingElement":
        s = to_fraction(scalar)
        return RingElement(self._ring, {d: [v * s for v in vec] for d, vec in self._coords.items()})

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return multiply(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._ring.same_ring(other._ring) and self._coords == other._coords

    def __hash__(self):
        return hash((self._ring.fingerprint(), tuple(self._coords.items())))

    def describe(self) -> str:
        """
        human-readable sum of labelled basis elements
        """
        if self.is_zero():
            return "0"
        parts = []
        for degree, vec in self._coords.items():
            for i, c in enumerate(vec):
                if c == 0:
                    continue
                label = self._ring.label_of(degree, i)
                parts.append(label if c == 1 else ("-" + label if c == -1 else "{0}*{1}".format(c, label)))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "RingElement({0})".format(self.describe())


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """
    bilinear extension of the structure constants; components above the top degree vanish
    :raises RingMismatchError: if the elements come from different rings
    """
    x._check(y)
    ring = x.ring
    result = {}
    for p, u in x.coords.items():
        for q, v in y.coords.items():
            if p + q > ring.top_degree:
                continue
            table = ring.structure_table(p, q)
            if len(table) == 0:
                continue
            acc = result.setdefault(p + q, [Fraction(0)] * ring.dims[p + q])
            for i, ui in enumerate(u):
                if ui == 0:
                    continue
                for j, vj in enumerate(v):
                    if vj == 0:
                        continue
                    for idx, c in table.get((i, j), ()):
                        acc[idx] += ui * vj * c
    return RingElement(ring, result)


def multiplication_columns(ring: GradedRing, c: RingElement, degree: int) -> List[List[Fraction]]:
    """
    the matrix of x -> c*x restricted to x in the given degree, as a list of columns (one per basis element)
    """
    return [list(multiply(c, b).vector(c.degree + degree)) if c.degree is not None else []
            for b in ring.basis(degree)]


### constructors

def _structure_from_products(dims: Sequence[int], top: int, product) -> Dict:
    """
    tabulates product(p, i, q, j) -> sparse vector for all positive-degree pairs with p+q <= top
    """
    structure = {}
    for p in range(1, top + 1):
        for q in range(1, top + 1 - p):
            entries = {}
            for i in range(dims[p]):
                for j in range(dims[q]):
                    vec = product(p, i, q, j)
                    if vec:
                        entries[(i, j)] = vec
            if entries:
                structure[(p, q)] = entries
    return structure


def _atomic_kunneth(dims: Sequence[int]) -> Dict:
    return {(k, i): ((k, i),) for k in range(len(dims)) for i in range(dims[k])}


def sphere_ring(n: int) -> GradedRing:
    if n < 1:
        raise ConstructorError("sphere dimension must be at least 1, got {0}".format(n))
    dims = [1] + [0] * (n - 1) + [1] if n > 1 else [1, 1]
    labels = [["1"]] + [[] for _ in range(n - 1)] + [["u"]]
    presentation = MonomialPresentation([Generator("u", n, 0)], {(0, 0): Word(1, ()), (n, 0): Word(1, (0,))})
    return GradedRing(n, dims, labels, {}, 0, presentation,
                      named={"vol": (n, (1,)), "gen(1)": (n, (1,))},
                      kunneth=_atomic_kunneth(dims), description="sphere({0})".format(n))


def torus_ring(n: int) -> GradedRing:
    """
    cohomology of the n-torus: the exterior algebra on n degree-one generators t1..tn
    """
    if n < 1:
        raise ConstructorError("torus dimension must be at least 1, got {0}".format(n))
    bases = [list(combinations(range(1, n + 1), k)) for k in range(n + 1)]
    index = [{axes: i for i, axes in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]
    labels = [["".join("t{0}".format(a) for a in axes) or "1" for axes in b] for b in bases]

    def product(p, i, q, j):
        a, b = bases[p][i], bases[q][j]
        if set(a).intersection(b):
            return tuple()
        inversions = sum(1 for x in a for y in b if x > y)
        merged = tuple(sorted(a + b))
        return ((index[p + q][merged], Fraction(-1 if inversions % 2 else 1)),)

    generators = [Generator("t{0}".format(a), 1, a - 1) for a in range(1, n + 1)]
    words = {(k, i): Word(1, tuple(a - 1 for a in axes)) for k in range(n + 1) for i, axes in enumerate(bases[k])}
    named = {"vol": (n, (1,))}
    for a in range(1, n + 1):
        vec = [0] * n
        vec[a - 1] = 1
        named["gen({0})".format(a)] = (1, tuple(vec))
    return GradedRing(n, dims, labels, _structure_from_products(dims, n, product), 0,
                      MonomialPresentation(generators, words), named=named,
                      kunneth=_atomic_kunneth(dims), description="torus({0})".format(n))


def cp_ring(m: int) -> GradedRing:
    """
    cohomology of CP^m: truncated polynomial ring Q[s]/(s^{m+1}) with s in degree 2
    """
    if m < 1:
        raise ConstructorError("complex projective space needs m >= 1, got {0}".format(m))
    top = 2 * m
    dims = [1 if k % 2 == 0 else 0 for k in range(top + 1)]
    labels = [[("s^{0}".format(k // 2) if k > 2 else ("s" if k == 2 else "1"))] if k % 2 == 0 else []
              for k in range(top + 1)]

    def product(p, i, q, j):
        return ((0, Fraction(1)),) if p + q <= top else tuple()

    words = {(2 * j, 0): Word(1, tuple([0] * j)) for j in range(m + 1)}
    named = {"vol": (top, (1,)), "sym": (2, (1,)), "gen(1)": (2, (1,))}
    return GradedRing(top, dims, labels, _structure_from_products(dims, top, product), 0,
                      MonomialPresentation([Generator("s", 2, 0)], words), named=named,
                      kunneth=_atomic_kunneth(dims), description="cp({0})".format(m))


def s2xs2_ring() -> GradedRing:
    """
    cohomology of S^2 x S^2 with degree-two classes x, y: x^2 = y^2 = 0 and xy = yx = vol
    """
    dims = [1, 0, 2, 0, 1]
    labels = [["1"], [], ["x", "y"], [], ["vol"]]
    structure = {(2, 2): {(0, 1): ((0, Fraction(1)),), (1, 0): ((0, Fraction(1)),)}}
    presentation = MonomialPresentation(
        [Generator("x", 2, 0), Generator("y", 2, 1)],
        {(0, 0): Word(1, ()), (2, 0): Word(1, (0,)), (2, 1): Word(1, (1,)), (4, 0): Word(1, (0, 1))})
    named = {"vol": (4, (1,)), "gen(1)": (2, (1, 0)), "gen(2)": (2, (0, 1))}
    return GradedRing(4, dims, labels, structure, 0, presentation, named=named,
                      kunneth=_atomic_kunneth(dims), description="s2xs2")


def connsum_ring(summands: Sequence[GradedRing]) -> GradedRing:
    """
    connected sum of equidimensional rings. Middle degrees are direct sums, the top classes are identified,
    products inside a summand are inherited and positive-degree products across summands vanish.
    """
    if len(summands) == 0:
        raise ConstructorError("connected sum needs at least one summand")
    d = summands[0].top_degree
    for s in summands:
        if s.top_degree != d:
            raise ConstructorError("connected sum needs equal dimensions, got {0} and {1}".format(d, s.top_degree))

    offsets = []
    dims = [1] + [0] * (d - 1) + [1] if d > 1 else [1, 1]
    for s in summands:
        offsets.append([dims[k] if 0 < k < d else 0 for k in range(d + 1)])
        for k in range(1, d):
            dims[k] += s.dims[k]

    labels = [["1"]] + [[] for _ in range(d - 1)] + [["vol"]]
    for pos, s in enumerate(summands, start=1):
        for k in range(1, d):
            labels[k].extend("{0}#{1}".format(label, pos) for label in s.labels[k])
    if d == 1:
        labels = [["1"], ["vol"]]

    structure = {}
    for s, offset in zip(summands, offsets):
        for p in range(1, d):
            for q in range(1, d + 1 - p):
                for (i, j), vec in s.structure_table(p, q).items():
                    if p + q < d:
                        mapped = tuple((offset[p + q] + idx, c) for idx, c in vec)
                    else:
                        mapped = tuple((0, c) for idx, c in vec if idx == s.fundamental_index)
                    if mapped:
                        structure.setdefault((p, q), {})[(offset[p] + i, offset[q] + j)] = mapped

    presentation = None
    if all(s.presentation is not None for s in summands):
        generators = []
        words = {(0, 0): Word(1, ())}
        top_word = None
        for pos, (s, offset) in enumerate(zip(summands, offsets), start=1):
            local_to_global = {}
            for g_pos, g in enumerate(s.presentation.generators):
                if 0 < g.degree < d:
                    local_to_global[g_pos] = len(generators)
                    generators.append(Generator("{0}#{1}".format(g.name, pos), g.degree, offset[g.degree] + g.index))
            for k in range(1, d):
                for i in range(s.dims[k]):
                    w = s.presentation.word(k, i)
                    words[(k, offset[k] + i)] = Word(w.coeff, tuple(local_to_global[g] for g in w.generators))
            w = s.presentation.word(d, s.fundamental_index)
            if top_word is None and all(g in local_to_global for g in w.generators):
                top_word = Word(w.coeff, tuple(local_to_global[g] for g in w.generators))
        if top_word is None:
            generators.append(Generator("vol", d, 0))
            top_word = Word(1, (len(generators) - 1,))
        words[(d, 0)] = top_word
        presentation = MonomialPresentation(generators, words)

    named = {"vol": (d, (1,))}
    if presentation is not None:
        for pos, g in enumerate(presentation.generators, start=1):
            vec = [0] * dims[g.degree]
            vec[g.index] = 1
            named["gen({0})".format(pos)] = (g.degree, tuple(vec))
    description = "connsum({0})".format(", ".join(s.description or "?" for s in summands))
    return GradedRing(d, dims, labels, structure, 0, presentation, named=named,
                      kunneth=_atomic_kunneth(dims), description=description)


def surface_ring(g: int) -> GradedRing:
    """
    the genus-g surface as the g-fold connected sum of 2-tori, with basis c1..c2g of degree one satisfying
    c_i*c_{i+1} = vol for odd i
    """
    if g < 1:
        raise ConstructorError("surface genus must be at least 1, got {0}".format(g))
    ring = connsum_ring([torus_ring(2)] * g)
    names = ["c{0}".format(i) for i in range(1, 2 * g + 1)]
    labels = [["1"], names, ["vol"]]
    presentation = MonomialPresentation(
        [gen._replace(name=names[gen.index]) for gen in ring.presentation.generators], ring.presentation.words)
    return ring.replaced(labels=labels, presentation=presentation, description="surface({0})".format(g))


def tensor_product(left: GradedRing, right: GradedRing) -> GradedRing:
    """
    Künneth product: basis {a (x) b}, with (a (x) b)(a' (x) b') = (-1)^{|b||a'|} (aa') (x) (bb')
    """
    d = left.top_degree + right.top_degree
    bases = []
    for k in range(d + 1):
        entries = []
        for p in range(max(0, k - right.top_degree), min(k, left.top_degree) + 1):
            for i in range(left.dims[p]):
                for j in range(right.dims[k - p]):
                    entries.append((p, i, j))
        bases.append(entries)
    index = [{e: n for n, e in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]

    def label(k, entry):
        p, i, j = entry
        lhs, rhs = left.labels[p][i], right.labels[k - p][j]
        if lhs == "1":
            return rhs
        if rhs == "1":
            return lhs
        return "{0}.{1}".format(lhs, rhs)

    labels = [[label(k, e) for e in bases[k]] for k in range(d + 1)]

    def product(k1, a, k2, b):
        p, i, j = bases[k1][a]
        p2, i2, j2 = bases[k2][b]
        sign = -1 if ((k1 - p) * p2) % 2 else 1
        lvec = left.basis_product(p, i, p2, i2)
        if not lvec:
            return tuple()
        rvec = right.basis_product(k1 - p, j, k2 - p2, j2)
        out = {}
        for li, lc in lvec:
            for ri, rc in rvec:
                target = index[k1 + k2][(p + p2, li, ri)]
                out[target] = out.get(target, Fraction(0)) + sign * lc * rc
        return tuple((t, c) for t, c in sorted(out.items()) if c != 0)

    structure = _structure_from_products(dims, d, product)

    presentation = None
    if left.presentation is not None and right.presentation is not None:
        shift = len(left.presentation.generators)
        generators = [Generator(g.name, g.degree, index[g.degree][(g.degree, g.index, 0)])
                      for g in left.presentation.generators]
        generators += [Generator(g.name, g.degree, index[g.degree][(0, 0, g.index)])
                       for g in right.presentation.generators]
        words = {}
        for k in range(d + 1):
            for n, (p, i, j) in enumerate(bases[k]):
                lw = left.presentation.word(p, i)
                rw = right.presentation.word(k - p, j)
                words[(k, n)] = Word(to_fraction(lw.coeff) * to_fraction(rw.coeff),
                                     lw.generators + tuple(g + shift for g in rw.generators))
        presentation = MonomialPresentation(generators, words)

    named = {}
    for key, degree, vector in left.named_items():
        if key == "vol":
            continue
        vec = [Fraction(0)] * dims[degree]
        for i, c in enumerate(vector):
            vec[index[degree][(degree, i, 0)]] = c
        named[key] = (degree, tuple(vec))
    for key, degree, vector in right.named_items():
        if key == "vol":
            continue
        vec = [Fraction(0)] * dims[degree]
        for j, c in enumerate(vector):
            vec[index[degree][(0, 0, j)]] = c
        named[key] = (degree, tuple(vec))
    named["vol"] = (d, (Fraction(1),))

    kunneth = None
    if left.kunneth is not None and right.kunneth is not None:
        kunneth = {(k, n): left.kunneth[(p, i)] + right.kunneth[(k - p, j)]
                   for k in range(d + 1) for n, (p, i, j) in enumerate(bases[k])}

    fundamental = index[d][(left.top_degree, left.fundamental_index, right.fundamental_index)]
    description = "{0} * {1}".format(left.description, right.description)
    return GradedRing(d, dims, labels, structure, fundamental, presentation, named, kunneth, description)


def _indexed_factor(ring: GradedRing, position: int, suffix: bool) -> GradedRing:
    """
    re-keys the named classes of a factor ring with its factor position (vol -> vol(i), sym -> sym(i),
    gen(j) -> gen(i,j)); with suffix=True labels and generator names also get an "@i" suffix
    """
    named = {} if suffix else {key: (degree, vector) for key, degree, vector in ring.named_items()}
    for key, degree, vector in ring.named_items():
        if key in ("vol", "sym"):
            named[class_key(key, (position,))] = (degree, vector)
        elif key.startswith("gen("):
            named[class_key("gen", (position, int(key[4:-1])))] = (degree, vector)
    changes = {"named": named}
    if suffix:
        changes["labels"] = [[label if label == "1" else "{0}@{1}".format(label, position) for label in row]
                             for row in ring.labels]
        if ring.presentation is not None:
            changes["presentation"] = ring.presentation.renamed(lambda n: "{0}@{1}".format(n, position))
    return ring.replaced(**changes)


def _build_factor(expr: ManifoldExpr) -> GradedRing:
    if isinstance(expr, Sphere):
        return sphere_ring(expr.n)
    if isinstance(expr, Torus):
        return torus_ring(expr.n)
    if isinstance(expr, Surface):
        return surface_ring(expr.g)
    if isinstance(expr, CPm):
        return cp_ring(expr.m)
    if isinstance(expr, S2xS2):
        return s2xs2_ring()
    if isinstance(expr, ConnSum):
        return connsum_ring([build(s, validate=False) for s in expr.summands()])
    raise ConstructorError("cannot build a ring from {0}".format(type(expr).__name__))


def build(expr: ManifoldExpr, validate: Optional[bool] = None) -> GradedRing:
    """
    evaluates a manifold expression to its cohomology ring.
    :param expr: the expression
    :param validate: run the full invariant check; defaults to settings.QROB_VALIDATE_RINGS
    :return: the ring, with named classes vol, vol(i), sym(i), gen(i,j) attached
    """
    if validate is None:
        validate = getattr(settings, "QROB_VALIDATE_RINGS", True)

    factors = expr.factors()
    if len(factors) == 1:
        ring = _indexed_factor(_build_factor(factors[0]), 1, suffix=False)
    else:
        rings = [_indexed_factor(_build_factor(f), pos, suffix=True) for pos, f in enumerate(factors, start=1)]
        ring = reduce(tensor_product, rings)
        for pos, f in enumerate(factors, start=1):
            logger.debug("factor {0}: {1}".format(pos, f.to_text()))
    ring = ring.replaced(description=expr.to_text())
    if validate:
        ring.validate()
    logger.debug("built {0} with dims {1}".format(ring.description, list(ring.dims)))
    return ring


def factor_rings(expr: ManifoldExpr) -> List[GradedRing]:
    """
    the unvalidated rings of the Künneth factors of expr, in product order
    """
    return [_build_factor(f) for f in expr.factors()]


### queries

def poincare_pairing(ring: GradedRing, k: int) -> List[List[Fraction]]:
    """
    P[i][j] = coefficient of the fundamental class in b_i * b'_j, for b_i of degree k and b'_j of degree d-k
    """
    d = ring.top_degree
    if k < 0 or k > d:
        raise IndexError("degree {0} outside 0..{1}".format(k, d))
    matrix = []
    for i in range(ring.dims[k]):
        row = []
        for j in range(ring.dims[d - k]):
            row.append(dict(ring.basis_product(k, i, d - k, j)).get(ring.fundamental_index, Fraction(0)))
        matrix.append(row)
    return matrix


def poincare_dual_basis(ring: GradedRing, k: int) -> List[RingElement]:
    """
    classes y_j of degree d-k with b_i * y_j = delta_ij * vol, one per basis element b_j of degree k
    :raises RingStructureError: if the pairing is degenerate
    """
    d = ring.top_degree
    pairing = poincare_pairing(ring, k)
    columns = [[pairing[i][t] for i in range(ring.dims[k])] for t in range(ring.dims[d - k])]
    duals = []
    for j in range(ring.dims[k]):
        target = [Fraction(1) if i == j else Fraction(0) for i in range(ring.dims[k])]
        y = solve(columns, target)
        if y is None:
            raise RingStructureError("basis element {0} has no Poincaré dual".format(ring.label_of(k, j)))
        duals.append(ring.element(d - k, y))
    return duals


def kunneth_ideal_basis(ring: GradedRing, k: int) -> List[RingElement]:
    """
    basis of K^k = span{ b*b' : deg b = l, deg b' = k-l, 1 <= l <= k-1 }, in reduced echelon form
    :raises IdealUndefinedError: if k < 2 or k is above the top degree
    """
    if k < 2 or k > ring.top_degree:
        raise IdealUndefinedError("the Künneth ideal has layers 2..{0}, not {1}".format(ring.top_degree, k))
    rows = []
    for ell in range(1, k):
        for i in range(ring.dims[ell]):
            for j in range(ring.dims[k - ell]):
                vec = ring.basis_product(ell, i, k - ell, j)
                if vec:
                    row = [Fraction(0)] * ring.dims[k]
                    for idx, c in vec:
                        row[idx] = c
                    rows.append(row)
    return [ring.element(k, row) for row in row_space_basis(rows, ring.dims[k])]


def in_kunneth_ideal(ring: GradedRing, omega: RingElement) -> bool:
    """
    exact membership test of a homogeneous class in its Künneth layer. The zero class belongs to every layer;
    a non-zero class of degree below 2 belongs to none.
    :raises NonHomogeneousError: for a mixed-degree class
    """
    if not omega.is_homogeneous:
        raise NonHomogeneousError("class {0} has components in degrees {1}".format(omega.describe(), omega.degrees()))
    if omega.is_zero():
        return True
    k = omega.degree
    if k < 2:
        return False
    basis = [list(b.vector(k)) for b in kunneth_ideal_basis(ring, k)]
    return rank(basis + [list(omega.vector(k))], ring.dims[k]) == len(basis)


def factorizations(ring: GradedRing, omega: RingElement, ell: int) -> List[Tuple[RingElement, RingElement]]:
    """
    all pairs (c, c') with c a degree-ell basis element and c' an exact solution of c*x = omega, in basis order
    """
    if not omega.is_homogeneous or omega.is_zero():
        return []
    k = omega.degree
    if ell < 1 or ell > k - 1:
        return []
    target = list(omega.vector(k))
    result = []
    for c in ring.basis(ell):
        x = solve(multiplication_columns(ring, c, k - ell), target)
        if x is not None:
            result.append((c, ring.element(k - ell, x)))
    return result


def evaluate_class(ring: GradedRing, source) -> RingElement:
    """
    evaluates a form-class expression (text or parsed AST) in the given ring
    :raises UnknownClassError: if a class name is not attached to the ring
    """
    node = parse_class(source) if isinstance(source, str) else source
    if isinstance(node, ClassName):
        return ring.named_class(node.key)
    if isinstance(node, ClassScalar):
        return ring.unit().scaled(node.value)
    if isinstance(node, ClassNeg):
        return -evaluate_class(ring, node.operand)
    if isinstance(node, ClassSum):
        return evaluate_class(ring, node.left) + evaluate_class(ring, node.right)
    if isinstance(node, ClassProduct):
        return multiply(evaluate_class(ring, node.left), evaluate_class(ring, node.right))
    raise TypeError("not a class expression node: {0}".format(node))


def slice_inclusion(expr: ManifoldExpr, factor: int):
    """
    the ring of factor `factor` of a product expression and the per-degree matrices of i^* for the slice inclusion
    M -> M x P, m -> (m, p). A product class pulls back to its factor component when every other component is the unit.
    :return: tuple (R_N, R_M, iota_star) with iota_star[k] a dims_M[k] x dims_N[k] matrix
    """
    factors = expr.factors()
    if factor < 1 or factor > len(factors):
        raise ConstructorError("factor {0} out of range 1..{1}".format(factor, len(factors)))
    ring_n = build(expr)
    ring_m = build(factors[factor - 1])
    if ring_n.kunneth is None or len(factors) == 1:
        iota = {k: [[Fraction(1) if r == c else Fraction(0) for c in range(ring_n.dims[k])]
                    for r in range(ring_m.dims[k])] for k in range(ring_m.top_degree + 1)}
        return ring_n, ring_m, iota

    iota = {}
    for k in range(ring_n.top_degree + 1):
        if k > ring_m.top_degree:
            continue
        matrix = [[Fraction(0)] * ring_n.dims[k] for _ in range(ring_m.dims[k])]
        for col in range(ring_n.dims[k]):
            components = ring_n.kunneth[(k, col)]
            others_trivial = all(comp == (0, 0) for pos, comp in enumerate(components) if pos != factor - 1)
            if others_trivial:
                degree, idx = components[factor - 1]
                matrix[idx][col] = Fraction(1)
        iota[k] = matrix
    return ring_n, ring_m, iota
