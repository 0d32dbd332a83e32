"""
Exact sparse arithmetic in the exterior algebra of R^n.

An ExtElement is a map from blades (strictly increasing tuples of axes in 1..n) to non-zero Fractions.  All of the
homomorphisms built elsewhere in the project land here.
"""
from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence
import logging

from .exceptions import DimensionMismatchError, InvalidBladeError, NonHomogeneousError
from .linalg import rank, to_fraction

logger = logging.getLogger(__name__)


class Blade(namedtuple("Blade", "axes ambient_n")):
    """
    A basis monomial e_{i1} ^ ... ^ e_{ik} of the exterior algebra, with i1 < ... < ik.
    The empty tuple of axes is the scalar unit.
    """
    __slots__ = ()

    def __new__(cls, axes: Sequence[int], ambient_n: int):
        axes = tuple(int(a) for a in axes)
        if ambient_n < 1:
            raise DimensionMismatchError("ambient dimension must be positive, got {0}".format(ambient_n))
        for a, b in zip(axes, axes[1:]):
            if a >= b:
                raise InvalidBladeError("blade axes {0} are not strictly increasing".format(axes))
        if len(axes) > 0 and (axes[0] < 1 or axes[-1] > ambient_n):
            raise InvalidBladeError("blade axes {0} out of range for ambient dimension {1}".format(axes, ambient_n))
        return super(Blade, cls).__new__(cls, axes, ambient_n)

    @property
    def degree(self) -> int:
        return len(self.axes)

    def sort_key(self):
        return len(self.axes), self.axes

    def __str__(self):
        if len(self.axes) == 0:
            return "1"
        return "e" + "".join(str(a) for a in self.axes) if self.ambient_n < 10 else "e(" + ",".join(str(a) for a in self.axes) + ")"


def dim_component(n: int, k: int) -> int:
    """
    dimension of the degree-k part of the exterior algebra on n generators, C(n,k) (zero when k > n)
    """
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def blades(n: int, k: int) -> Iterator[Blade]:
    """
    yields the degree-k blades of the exterior algebra on n generators in canonical (lexicographic) order
    """
    for axes in combinations(range(1, n + 1), k):
        yield Blade(axes, n)


def merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """
    sign of the permutation sorting left+right, given both are ascending and disjoint.
    counts inversions directly; O(len(left)*len(right))
    """
    inversions = 0
    for a in left:
        for b in right:
            if a > b:
                inversions += 1
    return -1 if inversions % 2 else 1


class ExtElement(object):
    """
    An immutable element of the exterior algebra of R^n with exact rational coefficients.
    Mixed-degree elements are allowed; homogeneity is only asserted where an operation needs it.
    """
    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, ambient_n: int, terms: Optional[Dict] = None):
        if ambient_n < 1:
            raise DimensionMismatchError("ambient dimension must be positive, got {0}".format(ambient_n))
        self._n = ambient_n
        cleaned = {}
        for blade, coeff in (terms or {}).items():
            if not isinstance(blade, Blade):
                blade = Blade(blade, ambient_n)
            elif blade.ambient_n != ambient_n:
                raise DimensionMismatchError("blade {0} lives in dimension {1}, not {2}".format(blade, blade.ambient_n, ambient_n))
            coeff = to_fraction(coeff)
            if coeff != 0:
                cleaned[blade] = cleaned.get(blade, Fraction(0)) + coeff
                if cleaned[blade] == 0:
                    del cleaned[blade]
        self._terms = dict(sorted(cleaned.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @staticmethod
    def zero(ambient_n: int) -> "ExtElement":
        return ExtElement(ambient_n)

    @staticmethod
    def scalar(ambient_n: int, value) -> "ExtElement":
        return ExtElement(ambient_n, {Blade((), ambient_n): value})

    @staticmethod
    def basis_vector(ambient_n: int, axes: Sequence[int], coeff=1) -> "ExtElement":
        return ExtElement(ambient_n, {Blade(axes, ambient_n): coeff})

    @staticmethod
    def from_coordinates(ambient_n: int, k: int, vector: Sequence) -> "ExtElement":
        """
        builds a homogeneous element from its coordinates over blades(ambient_n, k)
        """
        basis = list(blades(ambient_n, k))
        if len(vector) != len(basis):
            raise DimensionMismatchError("expected {0} coordinates for degree {1} in dimension {2}, got {3}".format(
                len(basis), k, ambient_n, len(vector)))
        return ExtElement(ambient_n, {b: v for b, v in zip(basis, vector)})

    @property
    def ambient_n(self) -> int:
        return self._n

    @property
    def terms(self) -> Dict[Blade, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def term_list(self) -> List[dict]:
        """
        serialisable form of the terms, in canonical order
        """
        return [{"axes": list(b.axes), "coeff": str(c)} for b, c in self._terms.items()]

    def is_zero(self) -> bool:
        return len(self._terms) == 0

    def degrees(self) -> List[int]:
        return sorted(set(b.degree for b in self._terms))

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """
        the degree of a homogeneous element, or None for the zero element or a mixed-degree element
        """
        degs = self.degrees()
        return degs[0] if len(degs) == 1 else None

    def component(self, k: int) -> "ExtElement":
        return ExtElement(self._n, {b: c for b, c in self._terms.items() if b.degree == k})

    def coordinates(self, k: int) -> List[Fraction]:
        """
        dense coordinate vector of the degree-k component over blades(n, k)
        """
        return [self._terms.get(b, Fraction(0)) for b in blades(self._n, k)]

    def _check_compatible(self, other: "ExtElement"):
        if not isinstance(other, ExtElement):
            raise TypeError("expected an ExtElement, got {0}".format(type(other).__name__))
        if other._n != self._n:
            raise DimensionMismatchError("cannot combine elements of dimensions {0} and {1}".format(self._n, other._n))

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check_compatible(other)
        result = dict(self._terms)
        for b, c in other._terms.items():
            result[b] = result.get(b, Fraction(0)) + c
        return ExtElement(self._n, result)

    def __neg__(self) -> "ExtElement":
        return ExtElement(self._n, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def __mul__(self, scalar) -> "ExtElement":
        if isinstance(scalar, ExtElement):
            raise TypeError("use wedge() or ^ to multiply two ExtElements")
        s = to_fraction(scalar)
        return ExtElement(self._n, {b: c * s for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return "ExtElement({0}, {1})".format(self._n, str(self))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for b, c in self._terms.items():
            if c == 1:
                parts.append(str(b))
            elif c == -1:
                parts.append("-" + str(b))
            else:
                parts.append("{0}*{1}".format(c, b))
        return " + ".join(parts).replace("+ -", "- ")


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    """
    exterior product. The sign of each blade pair is the parity of the merge permutation; blades sharing an axis vanish.
    :raises DimensionMismatchError: if the elements live in different ambient dimensions
    """
    if a.ambient_n != b.ambient_n:
        raise DimensionMismatchError("cannot wedge elements of dimensions {0} and {1}".format(a.ambient_n, b.ambient_n))
    n = a.ambient_n
    result = {}
    for ba, ca in a.items():
        set_a = set(ba.axes)
        for bb, cb in b.items():
            if set_a.intersection(bb.axes):
                continue
            merged = tuple(sorted(ba.axes + bb.axes))
            coeff = ca * cb * merge_sign(ba.axes, bb.axes)
            result[merged] = result.get(merged, Fraction(0)) + coeff
    return ExtElement(n, {Blade(axes, n): c for axes, c in result.items()})


def wedge_all(elements: Iterable[ExtElement], ambient_n: int) -> ExtElement:
    """
    wedge product of a sequence, the empty product being the scalar 1
    """
    result = ExtElement.scalar(ambient_n, 1)
    for e in elements:
        result = wedge(result, e)
    return result


def linearly_independent(elems: Sequence[ExtElement], k: int) -> bool:
    """
    exact test of linear independence for homogeneous degree-k elements, by the rank of their coordinate vectors
    :raises NonHomogeneousError: if an element has a component outside degree k
    """
    if len(elems) == 0:
        return True
    n = elems[0].ambient_n
    for e in elems:
        if e.ambient_n != n:
            raise DimensionMismatchError("elements live in dimensions {0} and {1}".format(n, e.ambient_n))
        if any(d != k for d in e.degrees()):
            raise NonHomogeneousError("element {0} is not homogeneous of degree {1}".format(e, k))
    width = dim_component(n, k)
    if len(elems) > width:
        return False
    return rank([e.coordinates(k) for e in elems], width) == len(elems)
