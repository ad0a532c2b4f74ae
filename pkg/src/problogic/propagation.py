"""Tightest coherent bounds for a conclusion given premise assessments.

For premises ``P`` and conclusion ``E|H`` the coherent values ``z`` of
``p(E|H)`` form a closed interval.  It is the union of two parts:

* the ratios ``mu(E & H) / mu(H)`` over nonnegative ``mu`` satisfying the
  premises in homogeneous form with ``mu(H) > 0``.  Normalizing ``mu(H) = 1``
  turns the ratio into a linear objective, so a min and a max LP give them;
* when the premises can be satisfied with ``H`` at zero mass, the coherent
  values for ``E|H`` given only the premises whose antecedents are then
  forced to zero mass, computed recursively.

Every returned endpoint, and the midpoint, is re-certified with a full
coherence check of the extended assessment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coherence import (Assessment, CoherenceVerdict, _normalized_program, check_coherence,
                        forced_zero, premise_constraints)
from .conditional import ConditionalEvent, TruthValue3
from .constituents import ConstituentTable, enumerate_constituents
from .errors import AntecedentUnreachable, IncoherentPremises, NonIntervalExtension
from .rational_lp import EQ, Constraint, LinearProgram, Simplex

_ZERO, _ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class PropagationResult:
    lower: Fraction
    upper: Fraction
    non_informative: bool
    premise_verdict: CoherenceVerdict


def _require_coherent(premises: Assessment, verdict: CoherenceVerdict | None) -> CoherenceVerdict:
    verdict = verdict or check_coherence(premises)
    if not verdict.coherent:
        raise IncoherentPremises("the premise assessment is incoherent", verdict)
    return verdict


def _with_conclusion(premises: Assessment, conclusion: ConditionalEvent, z: Fraction):
    """Premises extended by ``p(conclusion) = z``; None if that contradicts a premise."""
    i = premises.index(conclusion)
    if i is None:
        return premises.extended(conclusion, z)
    e = premises[i]
    if not e.lower <= z <= e.upper:
        return None
    entries = list(premises.entries)
    entries[i] = type(e)(conclusion, z, z)
    return Assessment(tuple(entries))


def is_coherent_extension(premises: Assessment, conclusion: ConditionalEvent, z,
                          verdict: CoherenceVerdict | None = None) -> bool:
    """Whether adding ``p(conclusion) = z`` keeps the premises coherent."""
    z = Fraction(z)
    if not 0 <= z <= 1:
        raise ValueError(f"probability value {z} outside [0, 1]")
    _require_coherent(premises, verdict)
    extended = _with_conclusion(premises, conclusion, z)
    return extended is not None and check_coherence(extended).coherent


def _ratio_range(table: ConstituentTable, premises: Assessment, active, c: int):
    """Min and max of mu(E&H) subject to the homogeneous premises and mu(H) = 1."""
    within = table.union_of_antecedents(active) | table.antecedent_mask(c)
    columns = table.partition(list(active) + [c], within)
    patterns = [p for _, p in columns]
    constraints = premise_constraints(premises, active, patterns)
    in_h = [_ONE if p[-1] is not TruthValue3.VOID else _ZERO for p in patterns]
    constraints.append(Constraint(tuple(in_h), EQ, _ONE))
    solver = Simplex(LinearProgram(len(columns), tuple(constraints)))
    if not solver.phase1():
        return None
    objective = [_ONE if p[-1] is TruthValue3.TRUE else _ZERO for p in patterns]
    lo = solver.optimize(objective, "min").value
    hi = solver.optimize(objective, "max").value
    return lo, hi


def _extension_bounds(table: ConstituentTable, premises: Assessment, active, c: int):
    ratio = _ratio_range(table, premises, active, c)
    rest = None
    h = table.antecedent_mask(c)
    # premises satisfiable with zero mass on the conclusion's antecedent
    if active and table.union_of_antecedents(active) & ~h:
        columns = table.partition(active, table.union_of_antecedents(active) & ~h)
        solver = Simplex(_normalized_program(premises, active, columns))
        if solver.phase1():
            rest = _extension_bounds(table, premises, forced_zero(solver, columns, active), c)
    if ratio is None and rest is None:
        raise AntecedentUnreachable(
            "no coherent scenario reaches the conclusion's antecedent")
    if ratio is None:
        return rest
    if rest is None:
        return ratio
    if rest[1] < ratio[0] or rest[0] > ratio[1]:
        raise NonIntervalExtension(
            f"coherent extension set splits into [{rest[0]}, {rest[1]}] "
            f"and [{ratio[0]}, {ratio[1]}]")
    return min(ratio[0], rest[0]), max(ratio[1], rest[1])


def extension_interval(premises: Assessment, conclusion: ConditionalEvent) -> PropagationResult:
    """Tightest coherent interval for ``p(conclusion)`` given ``premises``."""
    verdict = _require_coherent(premises, None)
    table = enumerate_constituents(premises.events + (conclusion,))
    lo, hi = _extension_bounds(table, premises, tuple(range(len(premises))), len(premises))
    for z in sorted({lo, hi, (lo + hi) / 2}):
        if not is_coherent_extension(premises, conclusion, z, verdict):
            raise NonIntervalExtension(
                f"computed bounds [{lo}, {hi}] but p({conclusion}) = {z} is not coherent")
    return PropagationResult(lo, hi, lo == 0 and hi == 1, verdict)


def is_non_informative(premises: Assessment, conclusion: ConditionalEvent) -> bool:
    r = extension_interval(premises, conclusion)
    return r.non_informative
