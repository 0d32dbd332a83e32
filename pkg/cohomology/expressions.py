"""
Manifold expressions and form-class expressions.

Manifold DSL:  `surface(2) * cp(2)`, `connsum(s2xs2, 8)`, `torus(4)`, `sphere(3)`, `connsum(cp(2), s2xs2)`
Class DSL:     `vol(1) ^ sym(2)`, `vol(1) + vol(2)`, `-2*gen(1,3)`, `3/2 * b(4,1)`, `sym(1)^sym(1)`
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Tuple
import re
import logging

from .exceptions import ConstructorError, ExpressionParseError

logger = logging.getLogger(__name__)


class ManifoldExpr(object):
    """
    base class of the manifold AST. Concrete nodes are frozen dataclasses so equal ASTs compare and hash equal
    """
    def top_degree(self) -> int:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def factors(self) -> List["ManifoldExpr"]:
        """
        the Künneth factors of this expression, flattening nested products left to right
        """
        return [self]

    def summands(self) -> List["ManifoldExpr"]:
        """
        the connected-sum summands of this expression, flattening nested connected sums left to right
        """
        return [self]

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Sphere(ManifoldExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ConstructorError("sphere dimension must be at least 1, got {0}".format(self.n))

    def top_degree(self):
        return self.n

    def to_text(self):
        return "sphere({0})".format(self.n)


@dataclass(frozen=True)
class Torus(ManifoldExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ConstructorError("torus dimension must be at least 1, got {0}".format(self.n))

    def top_degree(self):
        return self.n

    def to_text(self):
        return "torus({0})".format(self.n)


@dataclass(frozen=True)
class Surface(ManifoldExpr):
    """
    closed orientable surface of genus g, i.e. the g-fold connected sum of 2-tori. The sphere (g=0) is excluded
    """
    g: int

    def __post_init__(self):
        if self.g < 1:
            raise ConstructorError("surface genus must be at least 1, got {0}".format(self.g))

    def top_degree(self):
        return 2

    def to_text(self):
        return "surface({0})".format(self.g)


@dataclass(frozen=True)
class CPm(ManifoldExpr):
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ConstructorError("complex projective space needs m >= 1, got {0}".format(self.m))

    def top_degree(self):
        return 2 * self.m

    def to_text(self):
        return "cp({0})".format(self.m)


@dataclass(frozen=True)
class S2xS2(ManifoldExpr):
    def top_degree(self):
        return 4

    def to_text(self):
        return "s2xs2"


@dataclass(frozen=True)
class Product(ManifoldExpr):
    left: ManifoldExpr
    right: ManifoldExpr

    def top_degree(self):
        return self.left.top_degree() + self.right.top_degree()

    def factors(self):
        return self.left.factors() + self.right.factors()

    def to_text(self):
        return " * ".join(f.to_text() for f in self.factors())


@dataclass(frozen=True)
class ConnSum(ManifoldExpr):
    left: ManifoldExpr
    right: ManifoldExpr

    def __post_init__(self):
        if self.left.top_degree() != self.right.top_degree():
            raise ConstructorError("connected sum needs equal dimensions, got {0} and {1}".format(
                self.left.top_degree(), self.right.top_degree()))

    def top_degree(self):
        return self.left.top_degree()

    def summands(self):
        return self.left.summands() + self.right.summands()

    def to_text(self):
        parts = self.summands()
        if all(p == parts[0] for p in parts):
            return "connsum({0}, {1})".format(parts[0].to_text(), len(parts))
        return "connsum({0}, {1})".format(self.left.to_text(), self.right.to_text())


def connsum_power(expr: ManifoldExpr, count: int) -> ManifoldExpr:
    """
    the count-fold connected sum of expr with itself, as a left-folded ConnSum chain
    """
    if count < 1:
        raise ConstructorError("connected sum needs at least one summand, got {0}".format(count))
    return reduce(lambda acc, e: ConnSum(acc, e), [expr] * (count - 1), expr)


class _Tokenizer(object):
    token_re = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>\S))")

    def __init__(self, source: str):
        self.source = source
        self.tokens = []    # (kind, value, position)
        pos = 0
        while pos < len(source):
            m = self.token_re.match(source, pos)
            if m is None or m.end() == pos:
                break
            if m.group("int") is not None:
                self.tokens.append(("int", m.group("int"), m.start("int")))
            elif m.group("name") is not None:
                self.tokens.append(("name", m.group("name").lower(), m.start("name")))
            elif m.group("sym") is not None:
                self.tokens.append(("sym", m.group("sym"), m.start("sym")))
            pos = m.end()
        self.index = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    @property
    def position(self) -> int:
        tok = self.peek()
        return tok[2] if tok is not None else len(self.source)

    def error(self, message: str):
        raise ExpressionParseError(message, self.source, self.position)

    def take(self) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.index += 1
        return tok

    def accept(self, symbol: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "sym" and tok[1] == symbol:
            self.index += 1
            return True
        return False

    def expect(self, symbol: str):
        if not self.accept(symbol):
            self.error("expected '{0}'".format(symbol))

    def expect_int(self) -> int:
        tok = self.peek()
        if tok is None or tok[0] != "int":
            self.error("expected an integer")
        self.index += 1
        return int(tok[1])

    def at_end(self) -> bool:
        return self.peek() is None


def parse_manifold(source: str) -> ManifoldExpr:
    """
    parses the manifold DSL into a ManifoldExpr
    :raises ExpressionParseError: with the offending position
    """
    tk = _Tokenizer(source)
    if tk.at_end():
        tk.error("empty manifold expression")
    expr = _parse_product(tk)
    if not tk.at_end():
        tk.error("unexpected token '{0}'".format(tk.peek()[1]))
    return expr


def _parse_product(tk: _Tokenizer) -> ManifoldExpr:
    expr = _parse_manifold_atom(tk)
    while tk.accept("*"):
        expr = Product(expr, _parse_manifold_atom(tk))
    return expr


def _parse_manifold_atom(tk: _Tokenizer) -> ManifoldExpr:
    if tk.accept("("):
        inner = _parse_product(tk)
        tk.expect(")")
        return inner

    kind, value, position = tk.take()
    if kind != "name":
        tk.index -= 1
        tk.error("expected a manifold constructor")

    try:
        if value == "s2xs2":
            return S2xS2()
        if value in ("sphere", "torus", "surface", "cp"):
            tk.expect("(")
            arg = tk.expect_int()
            tk.expect(")")
            return {"sphere": Sphere, "torus": Torus, "surface": Surface, "cp": CPm}[value](arg)
        if value == "connsum":
            tk.expect("(")
            first = _parse_product(tk)
            tk.expect(",")
            tok = tk.peek()
            if tok is not None and tok[0] == "int":
                result = connsum_power(first, tk.expect_int())
            else:
                result = ConnSum(first, _parse_product(tk))
            tk.expect(")")
            return result
    except ConstructorError as e:
        raise ExpressionParseError(str(e), tk.source, position)

    raise ExpressionParseError("unknown manifold constructor '{0}'".format(value), tk.source, position)


### form-class expressions

@dataclass(frozen=True)
class ClassName(object):
    key: str
    position: int


@dataclass(frozen=True)
class ClassScalar(object):
    value: Fraction


@dataclass(frozen=True)
class ClassSum(object):
    left: object
    right: object


@dataclass(frozen=True)
class ClassNeg(object):
    operand: object


@dataclass(frozen=True)
class ClassProduct(object):
    left: object
    right: object


def class_key(name: str, args: Tuple[int, ...] = ()) -> str:
    """
    canonical key of a named class, e.g. class_key("gen", (1, 3)) == "gen(1,3)"
    """
    if len(args) == 0:
        return name
    return "{0}({1})".format(name, ",".join(str(a) for a in args))


def parse_class(source: str):
    """
    parses a form-class expression into a small AST (ClassName / ClassScalar / ClassSum / ClassNeg / ClassProduct).
    `*` and `^` both denote the ring product; integers and p/q literals are multiples of the unit.
    :raises ExpressionParseError: with the offending position
    """
    tk = _Tokenizer(source)
    if tk.at_end():
        tk.error("empty class expression")
    expr = _parse_class_sum(tk)
    if not tk.at_end():
        tk.error("unexpected token '{0}'".format(tk.peek()[1]))
    return expr


def _parse_class_sum(tk: _Tokenizer):
    if tk.accept("-"):
        expr = ClassNeg(_parse_class_term(tk))
    else:
        tk.accept("+")
        expr = _parse_class_term(tk)
    while True:
        if tk.accept("+"):
            expr = ClassSum(expr, _parse_class_term(tk))
        elif tk.accept("-"):
            expr = ClassSum(expr, ClassNeg(_parse_class_term(tk)))
        else:
            return expr


def _parse_class_term(tk: _Tokenizer):
    expr = _parse_class_unary(tk)
    while tk.accept("^") or tk.accept("*"):
        expr = ClassProduct(expr, _parse_class_unary(tk))
    return expr


def _parse_class_unary(tk: _Tokenizer):
    if tk.accept("-"):
        return ClassNeg(_parse_class_unary(tk))
    return _parse_class_primary(tk)


def _parse_class_primary(tk: _Tokenizer):
    if tk.accept("("):
        inner = _parse_class_sum(tk)
        tk.expect(")")
        return inner

    tok = tk.peek()
    if tok is None:
        tk.error("unexpected end of input")
    if tok[0] == "int":
        numerator = tk.expect_int()
        if tk.accept("/"):
            denominator = tk.expect_int()
            if denominator == 0:
                tk.error("zero denominator")
            return ClassScalar(Fraction(numerator, denominator))
        return ClassScalar(Fraction(numerator))
    if tok[0] == "name":
        kind, name, position = tk.take()
        args = []
        if tk.accept("("):
            args.append(tk.expect_int())
            while tk.accept(","):
                args.append(tk.expect_int())
            tk.expect(")")
        return ClassName(class_key(name, tuple(args)), position)
    tk.error("unexpected token '{0}'".format(tok[1]))
