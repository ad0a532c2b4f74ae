"""Parser for problem files.

A problem file lists assessments and at most one query::

    # modus ponens
    p(B) = 0.9
    p(C | B) in [3/4, 1];
    ? p(C)

Values are decimals or fractions and are converted to exact rationals.
Statements may be separated by newlines, ``;`` or ``,``; ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coherence import Assessment, Entry
from .conditional import ConditionalEvent, make_conditional
from .errors import ContradictoryAntecedent, FormulaSyntaxError, InvalidAssessment
from .events import VERUM, TokenStream, parse_disjunction, tokenize


@dataclass(frozen=True)
class Statement:
    event: ConditionalEvent
    lower: Fraction
    upper: Fraction
    line: int


@dataclass(frozen=True)
class ProblemFile:
    premises: tuple[Statement, ...]
    query: ConditionalEvent | None = None

    def assessment(self) -> Assessment:
        entries = []
        seen = {}
        for s in self.premises:
            if s.event in seen:
                raise InvalidAssessment(
                    f"line {s.line}: p({s.event}) already assessed on line {seen[s.event]}")
            if not (0 <= s.lower <= s.upper <= 1):
                raise InvalidAssessment(
                    f"line {s.line}: p({s.event}) needs 0 <= lower <= upper <= 1, "
                    f"got [{s.lower}, {s.upper}]")
            seen[s.event] = s.line
            entries.append(Entry(s.event, s.lower, s.upper))
        return Assessment(tuple(entries))


def _value(ts: TokenStream) -> Fraction:
    tok = ts.expect("number", "a probability value")
    return Fraction(tok.text)


def _condevent(ts: TokenStream) -> ConditionalEvent:
    ts.expect("p", "'p'")
    open_tok = ts.expect("(", "'('")
    consequent = parse_disjunction(ts)
    antecedent = parse_disjunction(ts) if ts.accept("|") else VERUM
    ts.expect(")", "')'")
    try:
        return make_conditional(consequent, antecedent)
    except ContradictoryAntecedent as exc:
        raise ContradictoryAntecedent(
            f"line {open_tok.line}, column {open_tok.column}: {exc}") from None


def parse_problem(text: str) -> ProblemFile:
    ts = TokenStream(tokenize(text))
    premises = []
    query = None
    while ts.peek().kind != "end":
        tok = ts.peek()
        if tok.kind in (";", ","):
            ts.next()
            continue
        if tok.kind == "?":
            ts.next()
            if query is not None:
                raise FormulaSyntaxError("a problem may contain at most one query",
                                         tok.line, tok.column)
            query = _condevent(ts)
            continue
        if tok.kind != "p":
            raise ts.error("expected a statement 'p(...)' or a query '? p(...)'")
        event = _condevent(ts)
        if ts.accept("="):
            lo = hi = _value(ts)
        elif ts.accept("in"):
            ts.expect("[", "'['")
            lo = _value(ts)
            ts.expect(",", "','")
            hi = _value(ts)
            ts.expect("]", "']'")
        else:
            raise ts.error("expected '=' or 'in' after the event")
        premises.append(Statement(event, lo, hi, tok.line))
    return ProblemFile(tuple(premises), query)
