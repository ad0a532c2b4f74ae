"""Propositional formulas: AST, parser, pretty-printer and classical evaluation.

Formulas are immutable trees built from :class:`Atom`, :class:`Not`,
:class:`And`, :class:`Or`, :data:`VERUM` and :data:`FALSUM`.  The Python
operators ``~``, ``&`` and ``|`` build the corresponding nodes::

    >>> A, B = Atom("A"), Atom("B")
    >>> print(~A | B)
    not A or B
    >>> parse_formula("not A and B") == And(Not(A), B)
    True

There is deliberately no implication connective; the material conditional
is spelled out as ``not A or B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple

from .errors import AtomLimitExceeded, FormulaSyntaxError, MissingAtom

#: Maximum number of distinct atoms in any single problem.
ATOM_LIMIT = 16

RESERVED = frozenset({"and", "or", "not", "T", "F", "in", "p"})

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Formula:
    """Base class of the formula tree."""

    __slots__ = ()

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"reserved word {self.name!r} cannot name an atom")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    operand: Formula

    def __repr__(self):
        return f"Not({self.operand!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Verum(Formula):
    def __repr__(self):
        return "VERUM"


@dataclass(frozen=True, repr=False)
class Falsum(Formula):
    def __repr__(self):
        return "FALSUM"


VERUM = Verum()
FALSUM = Falsum()

Valuation = Mapping[str, bool]


# ---------------------------------------------------------------------------
# evaluation


def eval_formula(f: Formula, v: Valuation) -> bool:
    """Classical two-valued truth of ``f`` under valuation ``v``."""
    if isinstance(f, Atom):
        try:
            return bool(v[f.name])
        except KeyError:
            raise MissingAtom(f"valuation has no value for atom {f.name!r}") from None
    if isinstance(f, Not):
        return not eval_formula(f.operand, v)
    # both sides are evaluated so a missing atom is never masked
    if isinstance(f, And):
        left, right = eval_formula(f.left, v), eval_formula(f.right, v)
        return left and right
    if isinstance(f, Or):
        left, right = eval_formula(f.left, v), eval_formula(f.right, v)
        return left or right
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    raise TypeError(f"not a formula: {f!r}")


def _walk_atoms(f: Formula) -> Iterator[str]:
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node.name
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)


def atoms_of(*formulas: Formula) -> tuple[str, ...]:
    """Sorted, duplicate-free names of the atoms occurring in ``formulas``."""
    names: set[str] = set()
    for f in formulas:
        names.update(_walk_atoms(f))
    return tuple(sorted(names))


def atom_mask(index: int, n_atoms: int) -> int:
    """Bitmask of the rows where atom ``index`` is true.

    Rows are numbered in binary-counting order with *true* as the 0 digit and
    the first atom as the most significant digit, so row 0 makes every atom
    true and the last row makes every atom false.
    """
    block = 1 << (n_atoms - 1 - index)
    period = 2 * block
    total = 1 << n_atoms
    repeat = ((1 << total) - 1) // ((1 << period) - 1)
    return ((1 << block) - 1) * repeat


def truth_mask(f: Formula, atoms: tuple[str, ...]) -> int:
    """Truth table of ``f`` over ``atoms`` packed into an integer bitmask."""
    n = len(atoms)
    full = (1 << (1 << n)) - 1
    masks = {name: atom_mask(k, n) for k, name in enumerate(atoms)}

    def go(node: Formula) -> int:
        if isinstance(node, Atom):
            try:
                return masks[node.name]
            except KeyError:
                raise MissingAtom(f"atom {node.name!r} not among {atoms}") from None
        if isinstance(node, Not):
            return full & ~go(node.operand)
        if isinstance(node, And):
            return go(node.left) & go(node.right)
        if isinstance(node, Or):
            return go(node.left) | go(node.right)
        if isinstance(node, Verum):
            return full
        if isinstance(node, Falsum):
            return 0
        raise TypeError(f"not a formula: {node!r}")

    return go(f)


def check_atom_limit(atoms) -> None:
    if len(atoms) > ATOM_LIMIT:
        raise AtomLimitExceeded(
            f"{len(atoms)} atoms exceed the limit of {ATOM_LIMIT}")


def is_contradiction(f: Formula) -> bool:
    """True iff ``f`` is false under every valuation of its atoms."""
    atoms = atoms_of(f)
    check_atom_limit(atoms)
    return truth_mask(f, atoms) == 0


def is_tautology(f: Formula) -> bool:
    atoms = atoms_of(f)
    check_atom_limit(atoms)
    return truth_mask(f, atoms) == (1 << (1 << len(atoms))) - 1


def entails(premise: Formula, conclusion: Formula) -> bool:
    """Classical consequence, checked over every valuation of both formulas."""
    atoms = atoms_of(premise, conclusion)
    check_atom_limit(atoms)
    return truth_mask(premise, atoms) & ~truth_mask(conclusion, atoms) == 0


# ---------------------------------------------------------------------------
# pretty-printing

_PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3


def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    return _PREC_UNARY


def to_text(f: Formula) -> str:
    """Render ``f`` in the DSL syntax with the minimum of parentheses.

    Binary connectives associate to the left, so ``parse_formula(to_text(f))``
    rebuilds ``f`` exactly.
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Verum):
        return "T"
    if isinstance(f, Falsum):
        return "F"
    if isinstance(f, Not):
        inner = to_text(f.operand)
        if _prec(f.operand) < _PREC_UNARY:
            inner = f"({inner})"
        return f"not {inner}"
    if isinstance(f, (And, Or)):
        level = _prec(f)
        word = "and" if level == _PREC_AND else "or"
        left, right = to_text(f.left), to_text(f.right)
        if _prec(f.left) < level:
            left = f"({left})"
        if _prec(f.right) <= level:
            right = f"({right})"
        return f"{left} {word} {right}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# lexing and parsing


class Token(NamedTuple):
    kind: str  # "ident", "number", "end", a keyword, or a punctuation mark
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+\s*/\s*\d+|\d*\.\d+|\d+\.?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()|=\[\],;?])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        value = m.group()
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind == "number":
            tokens.append(Token("number", re.sub(r"\s+", "", value), line, column))
        elif kind == "ident":
            tokens.append(Token(value if value in RESERVED else "ident", value, line, column))
        elif kind == "punct":
            tokens.append(Token(value, value, line, column))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list, shared by the formula and problem parsers."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise self.error(f"expected {what or repr(kind)}", tok)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> FormulaSyntaxError:
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return FormulaSyntaxError(f"{message}, found {found}", tok.line, tok.column)


def parse_disjunction(ts: TokenStream) -> Formula:
    f = parse_conjunction(ts)
    while ts.accept("or"):
        f = Or(f, parse_conjunction(ts))
    return f


def parse_conjunction(ts: TokenStream) -> Formula:
    f = parse_unary(ts)
    while ts.accept("and"):
        f = And(f, parse_unary(ts))
    return f


def parse_unary(ts: TokenStream) -> Formula:
    tok = ts.peek()
    if tok.kind == "not":
        ts.next()
        return Not(parse_unary(ts))
    if tok.kind == "ident":
        ts.next()
        return Atom(tok.text)
    if tok.kind == "T":
        ts.next()
        return VERUM
    if tok.kind == "F":
        ts.next()
        return FALSUM
    if tok.kind == "(":
        ts.next()
        f = parse_disjunction(ts)
        ts.expect(")", "')'")
        return f
    if tok.kind in RESERVED:
        raise ts.error(f"reserved word {tok.text!r} cannot be used as an atom", tok)
    raise ts.error("expected a formula", tok)


def parse_formula(text: str) -> Formula:
    """Parse a single formula; precedence is ``not`` > ``and`` > ``or``."""
    ts = TokenStream(tokenize(text))
    f = parse_disjunction(ts)
    if ts.peek().kind != "end":
        raise ts.error("unexpected trailing input")
    return f
