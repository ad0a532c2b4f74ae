"""Conditional events ``B|A`` and their three-valued semantics."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ContradictoryAntecedent
from .events import VERUM, Formula, Not, Valuation, atoms_of, eval_formula, is_contradiction, to_text


class TruthValue3(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    VOID = "void"


@dataclass(frozen=True)
class ConditionalEvent:
    """The conditional event ``consequent | antecedent``.

    Build instances with :func:`make_conditional`, which rejects contradictory
    antecedents.  Both fields are plain formulas, so conditionals cannot nest.
    """

    consequent: Formula
    antecedent: Formula

    @property
    def atoms(self) -> tuple[str, ...]:
        return atoms_of(self.consequent, self.antecedent)

    @property
    def is_unconditional(self) -> bool:
        return self.antecedent == VERUM

    def __str__(self) -> str:
        if self.is_unconditional:
            return to_text(self.consequent)
        return f"{to_text(self.consequent)} | {to_text(self.antecedent)}"


def make_conditional(consequent: Formula, antecedent: Formula = VERUM) -> ConditionalEvent:
    """Build ``consequent | antecedent``; unconditional events condition on verum."""
    if is_contradiction(antecedent):
        raise ContradictoryAntecedent(
            f"antecedent {to_text(antecedent)!r} is a contradiction; "
            "conditioning on it is undefined")
    return ConditionalEvent(consequent, antecedent)


def eval3(ce: ConditionalEvent, v: Valuation) -> TruthValue3:
    if not eval_formula(ce.antecedent, v):
        # consequent still evaluated so that missing atoms are always reported
        eval_formula(ce.consequent, v)
        return TruthValue3.VOID
    return TruthValue3.TRUE if eval_formula(ce.consequent, v) else TruthValue3.FALSE


def negate_narrow(ce: ConditionalEvent) -> ConditionalEvent:
    """Negate a conditional by negating its consequent: ``B|A`` becomes ``not B|A``."""
    return ConditionalEvent(Not(ce.consequent), ce.antecedent)
