"""Coherence checking of conditional probability assessments.

An assessment assigns to each conditional event ``E|H`` a point value or an
interval ``[lower, upper]``.  Coherence is decided layer by layer.  Layer 0
asks for a distribution ``lambda`` over the constituents where some
antecedent holds such that, for every entry,

    lower * lambda(H) <= lambda(E & H) <= upper * lambda(H).

If none exists, the Farkas certificate of that system is turned into a Dutch
book.  Otherwise the entries whose antecedent gets zero mass in *every*
solution are checked again on their own, and so on until no such entry is
left.  For interval entries the procedure decides g-coherence: whether some
coherent point assessment lies inside the intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .conditional import ConditionalEvent, TruthValue3
from .constituents import ConstituentTable, enumerate_constituents, iter_bits
from .errors import CoherentAssessment, InvalidAssessment
from .rational_lp import EQ, GE, LE, Constraint, LinearProgram, Simplex

_ZERO, _ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class Entry:
    event: ConditionalEvent
    lower: Fraction
    upper: Fraction

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def __str__(self):
        if self.is_point:
            return f"p({self.event}) = {self.lower}"
        return f"p({self.event}) in [{self.lower}, {self.upper}]"


@dataclass(frozen=True)
class Assessment:
    """Ordered, duplicate-free list of assessed conditional events."""

    entries: tuple[Entry, ...] = ()

    def __post_init__(self):
        entries = []
        seen = set()
        for e in self.entries:
            lo, hi = Fraction(e.lower), Fraction(e.upper)
            if not (0 <= lo <= hi <= 1):
                raise InvalidAssessment(
                    f"p({e.event}) needs 0 <= lower <= upper <= 1, got [{lo}, {hi}]")
            if e.event in seen:
                raise InvalidAssessment(f"event {e.event} is assessed more than once")
            seen.add(e.event)
            entries.append(Entry(e.event, lo, hi))
        object.__setattr__(self, "entries", tuple(entries))

    @classmethod
    def of(cls, *items) -> Assessment:
        """Build from ``(event, value)`` or ``(event, (lower, upper))`` pairs."""
        entries = []
        for event, value in items:
            if isinstance(value, tuple):
                lo, hi = value
            else:
                lo = hi = value
            entries.append(Entry(event, Fraction(lo), Fraction(hi)))
        return cls(tuple(entries))

    @property
    def events(self) -> tuple[ConditionalEvent, ...]:
        return tuple(e.event for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i) -> Entry:
        return self.entries[i]

    def extended(self, event: ConditionalEvent, lower, upper=None) -> Assessment:
        upper = lower if upper is None else upper
        return Assessment(self.entries + (Entry(event, Fraction(lower), Fraction(upper)),))

    def index(self, event: ConditionalEvent) -> int | None:
        for i, e in enumerate(self.entries):
            if e.event == event:
                return i
        return None


@dataclass(frozen=True)
class Layer:
    active: tuple[int, ...]
    solvable: bool


@dataclass(frozen=True)
class DutchBook:
    """Bets that make the assessing agent lose in every relevant constituent.

    A positive stake buys the bet on ``E|H`` at the lower price, a negative one
    sells it at the upper price; the agent's gain from entry ``i`` is
    ``stakes[i] * [H] * ([E] - prices[i])`` and a bet whose antecedent is
    false is called off.  ``max_gain`` is the best outcome for the agent over
    the constituents where some staked bet is active; it is negative.
    """

    stakes: tuple[Fraction, ...]
    prices: tuple[Fraction, ...]
    max_gain: Fraction
    guaranteed_sign: str = "agent_sure_loss"


@dataclass(frozen=True)
class CoherenceVerdict:
    coherent: bool
    layer_trace: tuple[Layer, ...]
    certificate: DutchBook | None = None


# ---------------------------------------------------------------------------
# linear systems


def _entry_rows(entry: Entry, pos: int, patterns) -> list[tuple[list[Fraction], str]]:
    """Homogeneous constraint rows of one entry over the given column patterns."""

    def coeffs(x):
        one_minus = _ONE - x
        out = []
        for pattern in patterns:
            tv = pattern[pos]
            out.append(one_minus if tv is TruthValue3.TRUE
                       else -x if tv is TruthValue3.FALSE else _ZERO)
        return out

    if entry.is_point:
        return [(coeffs(entry.lower), EQ)]
    return [(coeffs(entry.lower), GE), (coeffs(entry.upper), LE)]


def premise_constraints(assessment: Assessment, active: Sequence[int], patterns) -> list[Constraint]:
    rows = []
    for pos, j in enumerate(active):
        for coeffs, rel in _entry_rows(assessment[j], pos, patterns):
            rows.append(Constraint(tuple(coeffs), rel, _ZERO))
    return rows


def _ungrouped(table: ConstituentTable, active: Sequence[int], within: int):
    out = []
    for i in iter_bits(within):
        bit = 1 << i
        out.append((bit, tuple(table.classification(i, j) for j in active)))
    return out


def layer_columns(table: ConstituentTable, active: Sequence[int], merge: bool = True):
    """Variable columns of the layer system for ``active``: ``(row mask, pattern)`` pairs."""
    within = table.union_of_antecedents(active)
    if merge:
        return table.partition(active, within)
    return _ungrouped(table, active, within)


def _normalized_program(assessment, active, columns) -> LinearProgram:
    patterns = [p for _, p in columns]
    constraints = premise_constraints(assessment, active, patterns)
    constraints.append(Constraint((_ONE,) * len(columns), EQ, _ONE))
    return LinearProgram(len(columns), tuple(constraints))


def build_system(assessment: Assessment, active: Iterable[int],
                 table: ConstituentTable, merge: bool = False) -> LinearProgram:
    """The linear system of one layer.

    With ``merge=False`` there is one variable per constituent row in the
    union of the active antecedents, in row order.  ``merge=True`` collapses
    rows that every active event classifies alike into one variable, which
    leaves the solution set of the system unchanged up to that aggregation.
    """
    active = tuple(active)
    if not active:
        raise ValueError("the active set of a layer must be nonempty")
    return _normalized_program(assessment, active, layer_columns(table, active, merge))


def antecedent_mass(witness, columns, pos: int) -> Fraction:
    return sum((w for w, (_, pattern) in zip(witness, columns)
                if pattern[pos] is not TruthValue3.VOID and w), _ZERO)


def forced_zero(solver: Simplex, columns, active: Sequence[int]) -> tuple[int, ...]:
    """Active entries whose antecedent has zero mass in every solution.

    Repeatedly maximizes the total mass of the remaining candidates; each
    positive optimum clears at least one candidate, a zero optimum proves the
    rest.  ``solver`` must have passed phase 1.
    """
    witness = solver.witness()
    cand = [pos for pos in range(len(active)) if antecedent_mass(witness, columns, pos) == 0]
    while cand:
        objective = [sum(1 for pos in cand if pattern[pos] is not TruthValue3.VOID)
                     for _, pattern in columns]
        result = solver.optimize(objective, "max")
        if result.value == 0:
            break
        cand = [pos for pos in cand if antecedent_mass(result.witness, columns, pos) == 0]
    return tuple(active[pos] for pos in cand)


# ---------------------------------------------------------------------------
# Dutch books


def _stakes_from_certificate(assessment, active, certificate, n_entries):
    stakes = [_ZERO] * n_entries
    k = 0
    for j in active:
        if assessment[j].is_point:
            stakes[j] = certificate[k]
            k += 1
        else:
            stakes[j] = certificate[k] + certificate[k + 1]
            k += 2
    top = max(abs(s) for s in stakes)
    if top == 0:
        raise AssertionError("Farkas certificate carries no stakes")
    return [s / top for s in stakes]


def book_gains(assessment: Assessment, stakes, prices, table: ConstituentTable):
    """Agent gain on every constituent where some bet with nonzero stake is active.

    Returns ``(row mask, gain)`` pairs, one per group of indistinguishable rows.
    """
    staked = [j for j in range(len(stakes)) if stakes[j]]
    within = table.union_of_antecedents(staked)
    out = []
    for mask, pattern in table.partition(staked, within):
        gain = _ZERO
        for pos, j in enumerate(staked):
            tv = pattern[pos]
            if tv is TruthValue3.TRUE:
                gain += stakes[j] * (_ONE - prices[j])
            elif tv is TruthValue3.FALSE:
                gain -= stakes[j] * prices[j]
        out.append((mask, gain))
    return out


def validate_dutch_book(assessment: Assessment, book: DutchBook,
                        table: ConstituentTable | None = None) -> bool:
    """Exhaustively confirm that ``book`` is a sure loss for the agent."""
    if len(book.stakes) != len(assessment) or not any(book.stakes):
        return False
    for s, p, e in zip(book.stakes, book.prices, assessment):
        expected = e.lower if s > 0 else e.upper if s < 0 else p
        if p != expected:
            return False
    table = table or enumerate_constituents(assessment.events)
    gains = book_gains(assessment, book.stakes, book.prices, table)
    return bool(gains) and all(g < 0 for _, g in gains) and max(g for _, g in gains) == book.max_gain


def _make_book(assessment, active, certificate, table) -> DutchBook:
    stakes = _stakes_from_certificate(assessment, active, certificate, len(assessment))
    prices = [e.lower if s >= 0 else e.upper for s, e in zip(stakes, assessment)]
    gains = book_gains(assessment, stakes, prices, table)
    book = DutchBook(tuple(stakes), tuple(prices), max(g for _, g in gains))
    if not validate_dutch_book(assessment, book, table):
        raise AssertionError("extracted Dutch book failed exhaustive validation")
    return book


# ---------------------------------------------------------------------------
# entry points


def check_coherence(assessment: Assessment, table: ConstituentTable | None = None) -> CoherenceVerdict:
    """Decide (g-)coherence of ``assessment``.

    ``table`` may be supplied when already built; its first events must be the
    assessment's events in order.
    """
    if not len(assessment):
        return CoherenceVerdict(True, ())
    if table is None:
        table = enumerate_constituents(assessment.events)
    elif table.events[:len(assessment)] != assessment.events:
        raise ValueError("constituent table does not match the assessment")
    active = tuple(range(len(assessment)))
    trace = []
    while active:
        columns = layer_columns(table, active)
        solver = Simplex(_normalized_program(assessment, active, columns))
        if not solver.phase1():
            trace.append(Layer(active, False))
            book = _make_book(assessment, active, solver.certificate(), table)
            return CoherenceVerdict(False, tuple(trace), book)
        trace.append(Layer(active, True))
        active = forced_zero(solver, columns, active)
    return CoherenceVerdict(True, tuple(trace))


def dutch_book(assessment: Assessment) -> DutchBook:
    verdict = check_coherence(assessment)
    if verdict.coherent:
        raise CoherentAssessment("the assessment is coherent; no Dutch book exists")
    return verdict.certificate
