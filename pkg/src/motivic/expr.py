"""Small expression language for motivic classes.

Grammar (whitespace-insensitive, byte offsets reported on error):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor | '/' gatom)*
    factor := atom ('^' nat)?
    atom   := 'A^'nat | 'Gm' | 'P^'nat | 'GL('nat')' | 'pt'
            | 'B' 'GL('nat')' | '[' expr '/' group ']' | '(' expr ')'
    group  := gatom ('*' gatom)*
    gatom  := 'GL('nat')' | 'Gm' ('^' nat)? | '(' group ')'

The slash binds a class to a group and produces a quotient node, the same
node the bracket form builds.  Directly inside brackets the slash is
reserved for the closing '/ group', so the bracket split is unambiguous;
parentheses restore the sugar.  Differences are formal ring arithmetic:
no containment of classes is checked or checkable here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExprSyntaxError, GuardError
from .groups import GeneralLinear, GroupDesc, product, torus, upsilon_group
from .ratfield import Polynomial, RatFunc

__all__ = [
    "parse",
    "eval_class",
    "render",
    "Affine",
    "Gm",
    "Projective",
    "GLClass",
    "Point",
    "Product",
    "Power",
    "Sum",
    "Diff",
    "Quotient",
    "BStack",
]

DIM_MAX = 64  # exponents and dimensions in expressions
GL_MAX = 16


class ClassExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Affine(ClassExpr):
    n: int


@dataclass(frozen=True)
class Gm(ClassExpr):
    pass


@dataclass(frozen=True)
class Projective(ClassExpr):
    n: int


@dataclass(frozen=True)
class GLClass(ClassExpr):
    m: int


@dataclass(frozen=True)
class Point(ClassExpr):
    pass


@dataclass(frozen=True)
class Product(ClassExpr):
    items: tuple


@dataclass(frozen=True)
class Power(ClassExpr):
    base: ClassExpr
    k: int


@dataclass(frozen=True)
class Sum(ClassExpr):
    items: tuple


@dataclass(frozen=True)
class Diff(ClassExpr):
    a: ClassExpr
    b: ClassExpr


@dataclass(frozen=True)
class Quotient(ClassExpr):
    expr: ClassExpr
    group: GroupDesc


@dataclass(frozen=True)
class BStack(ClassExpr):
    group: GroupDesc


# ---------------------------------------------------------------------------
# tokenizer

_SYMBOLS = "^*+-/()[]"
_KEYWORDS = ("pt", "Gm", "GL", "A", "P", "B")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("nat", int(text[i:j]), i))
            i = j
            continue
        for kw in _KEYWORDS:
            if text.startswith(kw, i):
                tokens.append((kw, kw, i))
                i += len(kw)
                break
        else:
            raise ExprSyntaxError(i, _ATOM_STARTS | {"number", "operator"}, text[i])
    tokens.append(("eof", None, n))
    return tokens


_ATOM_STARTS = {"A", "Gm", "P", "GL", "pt", "B", "(", "["}
_GROUP_STARTS = {"GL", "Gm", "("}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, value, pos = self.peek()
        found = None if kind == "eof" else str(value)
        raise ExprSyntaxError(pos, expected, found)

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail({kind})
        return self.next()

    def nat(self, maximum, what):
        if self.peek()[0] != "nat":
            self.fail({"number"})
        kind, value, pos = self.next()
        if value > maximum:
            raise GuardError("%s %d exceeds the supported bound %d" % (what, value, maximum))
        return value

    # -- grammar

    def expr(self, allow_div=True):
        node = self.term(allow_div)
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term(allow_div)
            if op == "+":
                if isinstance(node, Sum):
                    node = Sum(node.items + (rhs,))
                else:
                    node = Sum((node, rhs))
            else:
                node = Diff(node, rhs)
        return node

    def term(self, allow_div=True):
        node = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.next()
                rhs = self.factor()
                if isinstance(node, Product):
                    node = Product(node.items + (rhs,))
                else:
                    node = Product((node, rhs))
            elif kind == "/" and allow_div:
                self.next()
                node = Quotient(node, self.group_atom())
            else:
                return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.next()
            k = self.nat(DIM_MAX, "exponent")
            node = Power(node, k)
        return node

    def atom(self):
        kind = self.peek()[0]
        if kind == "A":
            self.next()
            self.expect("^")
            return Affine(self.nat(DIM_MAX, "affine dimension"))
        if kind == "P":
            self.next()
            self.expect("^")
            return Projective(self.nat(DIM_MAX, "projective dimension"))
        if kind == "Gm":
            self.next()
            return Gm()
        if kind == "pt":
            self.next()
            return Point()
        if kind == "GL":
            return GLClass(self._gl_rank())
        if kind == "B":
            self.next()
            if self.peek()[0] != "GL":
                self.fail({"GL"})
            return BStack(GeneralLinear(self._gl_rank()))
        if kind == "(":
            self.next()
            node = self.expr(allow_div=True)
            self.expect(")")
            return node
        if kind == "[":
            self.next()
            node = self.expr(allow_div=False)
            if self.peek()[0] == "]" and isinstance(node, Quotient):
                self.next()
                return node
            self.expect("/")
            grp = self.group()
            self.expect("]")
            return Quotient(node, grp)
        self.fail(_ATOM_STARTS)

    def _gl_rank(self):
        self.expect("GL")
        self.expect("(")
        m = self.nat(GL_MAX, "GL rank")
        if m < 1:
            raise GuardError("GL rank must be at least 1")
        self.expect(")")
        return m

    def group(self):
        factors = [self.group_atom()]
        while self.peek()[0] == "*":
            self.next()
            factors.append(self.group_atom())
        return product(*factors)

    def group_atom(self):
        kind = self.peek()[0]
        if kind == "GL":
            return GeneralLinear(self._gl_rank())
        if kind == "Gm":
            self.next()
            if self.peek()[0] == "^":
                self.next()
                return torus(self.nat(DIM_MAX, "torus rank"))
            return torus(1)
        if kind == "(":
            self.next()
            grp = self.group()
            self.expect(")")
            return grp
        self.fail(_GROUP_STARTS)


def parse(text):
    """Parse an expression; errors carry the byte offset and expected set."""
    p = _Parser(text)
    node = p.expr(allow_div=True)
    if p.peek()[0] != "eof":
        p.fail({"operator", "end of input"})
    return node


# ---------------------------------------------------------------------------
# evaluation


def eval_class(e):
    """Class of the expression in Q(l); quotients divide by the group class."""
    if isinstance(e, Affine):
        return RatFunc(Polynomial.monomial(e.n))
    if isinstance(e, Gm):
        return RatFunc.ell() - 1
    if isinstance(e, Projective):
        # the cell decomposition: 1 + l + ... + l^n
        return RatFunc(Polynomial((1,) * (e.n + 1)))
    if isinstance(e, GLClass):
        return upsilon_group(GeneralLinear(e.m))
    if isinstance(e, Point):
        return RatFunc.one()
    if isinstance(e, Product):
        acc = RatFunc.one()
        for item in e.items:
            acc = acc * eval_class(item)
        return acc
    if isinstance(e, Power):
        return eval_class(e.base) ** e.k
    if isinstance(e, Sum):
        acc = RatFunc.zero()
        for item in e.items:
            acc = acc + eval_class(item)
        return acc
    if isinstance(e, Diff):
        return eval_class(e.a) - eval_class(e.b)
    if isinstance(e, Quotient):
        return eval_class(e.expr) / upsilon_group(e.group)
    if isinstance(e, BStack):
        return RatFunc.one() / upsilon_group(e.group)
    raise TypeError("not a class expression: %r" % (e,))


# ---------------------------------------------------------------------------
# rendering

_PREC_SUM = 1
_PREC_PRODUCT = 2
_PREC_POWER = 3
_PREC_ATOM = 4


def _prec(e):
    if isinstance(e, (Sum, Diff)):
        return _PREC_SUM
    if isinstance(e, Product):
        return _PREC_PRODUCT
    if isinstance(e, Power):
        return _PREC_POWER
    return _PREC_ATOM


def render_group(g):
    from .groups import Product as GroupProduct
    from .groups import Torus

    if isinstance(g, GeneralLinear):
        return "GL(%d)" % g.m
    if isinstance(g, Torus):
        k = g.cls.torus_rank
        return "Gm" if k == 1 else "Gm^%d" % k
    if isinstance(g, GroupProduct):
        return " * ".join(render_group(f) for f in g.factors)
    raise TypeError("cannot render group %r" % (g,))


def render(e):
    """Canonical text for an expression; parse(render(parse(s))) == parse(s)."""
    if isinstance(e, Affine):
        return "A^%d" % e.n
    if isinstance(e, Gm):
        return "Gm"
    if isinstance(e, Projective):
        return "P^%d" % e.n
    if isinstance(e, GLClass):
        return "GL(%d)" % e.m
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, BStack):
        return "B" + render_group(e.group)
    if isinstance(e, Quotient):
        return "[%s / %s]" % (render(e.expr), render_group(e.group))
    if isinstance(e, Power):
        base = render(e.base)
        if _prec(e.base) < _PREC_ATOM or isinstance(e.base, (Affine, Projective)):
            base = "(%s)" % base
        return "%s^%d" % (base, e.k)
    if isinstance(e, Product):
        parts = []
        for item in e.items:
            s = render(item)
            if _prec(item) < _PREC_PRODUCT:
                s = "(%s)" % s
            parts.append(s)
        return " * ".join(parts)
    if isinstance(e, Sum):
        return " + ".join(render(item) for item in e.items)
    if isinstance(e, Diff):
        left = render(e.a)
        right = render(e.b)
        if _prec(e.b) <= _PREC_SUM:
            right = "(%s)" % right
        return "%s - %s" % (left, right)
    raise TypeError("not a class expression: %r" % (e,))
