"""Catalog of named argument forms with closed-form propagation rules.

Each propagation rule pairs a premise/conclusion schema with the closed-form
bounds on the conclusion.  Schemas are functions of their placeholder
formulas, so a rule can be instantiated with fresh atoms (the default) or
with arbitrary formulas, e.g. ``VERUM`` for ``A`` in CUT.  ``verify=True``
also runs the propagation engine on the instantiated problem and compares.

Connexive principles (AT1, AT2, BT1, BT2, AFP) are certified by
:func:`check_connexive`; the probabilistic truth-table task by
:func:`pttt_predictions`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .coherence import Assessment, Entry, check_coherence
from .conditional import ConditionalEvent, negate_narrow
from .constituents import enumerate_constituents
from .events import VERUM, Atom, Formula
from .errors import (MissingParam, NotADistribution, RuleMismatch, UnknownParam, UnknownRule,
                     ValueOutOfRange)
from .propagation import PropagationResult, extension_interval

_ZERO, _ONE = Fraction(0), Fraction(1)
HALF = Fraction(1, 2)

#: The marker used by closed forms of probabilistically non-informative rules.
NON_INFORMATIVE = (_ZERO, _ONE)

Schema = Callable[..., tuple[list[tuple[ConditionalEvent, str, str]], ConditionalEvent]]


def cond(consequent: Formula, antecedent: Formula = VERUM) -> ConditionalEvent:
    return ConditionalEvent(consequent, antecedent)


@dataclass(frozen=True)
class RuleSpec:
    """A named argument form.

    ``schema`` maps placeholder formulas to the premise list (event plus the
    names of its lower and upper parameters) and the conclusion event.
    """

    name: str
    description: str
    placeholders: tuple[str, ...]
    params: tuple[str, ...]
    schema: Schema
    closed_form: Callable[[Mapping[str, Fraction]], tuple[Fraction, Fraction]]
    aliases: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def fresh_atoms(self) -> dict[str, Atom]:
        return {ph: Atom(f"{ph}1") for ph in self.placeholders}

    def instantiate(self, values: Mapping[str, Fraction], **formulas: Formula):
        """Premise assessment and conclusion for the given parameter values."""
        atoms = self.fresh_atoms()
        atoms.update(formulas)
        premises, conclusion = self.schema(**atoms)
        entries = tuple(Entry(ev, values[lo], values[hi]) for ev, lo, hi in premises)
        return Assessment(entries), conclusion


def _and_schema(A, B, C):
    return [(cond(B, A), "xl", "xu"), (cond(C, A), "yl", "yu")], cond(B & C, A)


def _cut_schema(A, B, C):
    return [(cond(B, A), "x", "x"), (cond(C, A & B), "y", "y")], cond(C, A)


def _mp_schema(B, C):
    return [(cond(B), "x", "x"), (cond(C, B), "y", "y")], cond(C)


def _paradox_ce_schema(A, B):
    return [(cond(B), "x", "x")], cond(B, A)


def _paradox_mat_schema(A, B):
    return [(cond(B), "x", "x")], cond(~A | B)


def _monotonicity_schema(B, F, P):
    return [(cond(F, B), "x", "x")], cond(F, B & P)


def _contraposition_schema(A, B):
    return [(cond(B, A), "x", "x")], cond(~A, ~B)


def _transitivity_schema(A, B, C):
    return [(cond(B, A), "x", "x"), (cond(C, B), "y", "y")], cond(C, A)


def _at1_schema(A):
    return [], negate_narrow(cond(A, ~A))


def _at2_schema(A):
    return [], negate_narrow(cond(~A, A))


def _bt1_schema(A, B):
    return [(cond(B, A), "x", "x")], negate_narrow(cond(~B, A))


def _bt2_schema(A, B):
    return [(cond(~B, A), "x", "x")], negate_narrow(cond(B, A))


def _product_bounds(p):
    xy = p["x"] * p["y"]
    return xy, xy + 1 - p["x"]


def _point_x(p):
    return p["x"], p["x"]


CATALOG: dict[str, RuleSpec] = {r.name: r for r in [
    RuleSpec("AND", "p(B|A) in [xl,xu], p(C|A) in [yl,yu] => p(B and C|A)",
             ("A", "B", "C"), ("xl", "xu", "yl", "yu"), _and_schema,
             lambda p: (max(_ZERO, p["xl"] + p["yl"] - 1), min(p["xu"], p["yu"])),
             {"x": ("xl", "xu"), "y": ("yl", "yu")}),
    RuleSpec("CUT", "p(B|A)=x, p(C|A and B)=y => p(C|A)",
             ("A", "B", "C"), ("x", "y"), _cut_schema, _product_bounds),
    RuleSpec("MP", "p(B)=x, p(C|B)=y => p(C)",
             ("B", "C"), ("x", "y"), _mp_schema, _product_bounds),
    RuleSpec("PARADOX_CE", "p(B)=x => p(B|A)",
             ("A", "B"), ("x",), _paradox_ce_schema, lambda p: NON_INFORMATIVE),
    RuleSpec("PARADOX_MAT", "p(B)=x => p(not A or B)",
             ("A", "B"), ("x",), _paradox_mat_schema, lambda p: (p["x"], _ONE)),
    RuleSpec("MONOTONICITY", "p(F|B)=x => p(F|B and P)",
             ("B", "F", "P"), ("x",), _monotonicity_schema, lambda p: NON_INFORMATIVE),
    RuleSpec("CONTRAPOSITION", "p(B|A)=x => p(not A|not B)",
             ("A", "B"), ("x",), _contraposition_schema, lambda p: NON_INFORMATIVE),
    RuleSpec("TRANSITIVITY", "p(B|A)=x, p(C|B)=y => p(C|A)",
             ("A", "B", "C"), ("x", "y"), _transitivity_schema, lambda p: NON_INFORMATIVE),
    RuleSpec("AT1", "no premises => p(not A|not A), the negation of A|not A",
             ("A",), (), _at1_schema, lambda p: (_ONE, _ONE)),
    RuleSpec("AT2", "no premises => p(not not A|A), the negation of not A|A",
             ("A",), (), _at2_schema, lambda p: (_ONE, _ONE)),
    RuleSpec("BT1", "p(B|A)=x => p(not not B|A), the negation of not B|A",
             ("A", "B"), ("x",), _bt1_schema, _point_x),
    RuleSpec("BT2", "p(not B|A)=x => p(not B|A), the negation of B|A",
             ("A", "B"), ("x",), _bt2_schema, _point_x),
]}

#: Every stable rule identifier, including those served by dedicated functions.
RULE_NAMES = tuple(CATALOG) + ("AFP", "PTTT")

DESCRIPTIONS = {name: spec.description for name, spec in CATALOG.items()}
DESCRIPTIONS["AFP"] = "p(B|A) >= t and p(not B|A) >= t is incoherent for t > 1/2"
DESCRIPTIONS["PTTT"] = "p(A and B)=x1, p(A and not B)=x2, p(not A and B)=x3, p(not A and not B)=x4"


def get_rule(name: str) -> RuleSpec:
    try:
        return CATALOG[name.upper()]
    except KeyError:
        raise UnknownRule(f"unknown rule {name!r}; known rules: {', '.join(RULE_NAMES)}") from None


def _check_unit(name, value) -> Fraction:
    value = Fraction(value)
    if not 0 <= value <= 1:
        raise ValueOutOfRange(f"parameter {name} = {value} is outside [0, 1]")
    return value


def bind_params(spec: RuleSpec, params: Mapping[str, object]) -> dict[str, Fraction]:
    values = {}
    for key, raw in params.items():
        if key in spec.aliases:
            for target in spec.aliases[key]:
                values.setdefault(target, _check_unit(key, raw))
        elif key in spec.params:
            values[key] = _check_unit(key, raw)
        else:
            raise UnknownParam(f"rule {spec.name} has no parameter {key!r}")
    missing = [p for p in spec.params if p not in values]
    if missing:
        raise MissingParam(f"rule {spec.name} needs parameter(s) {', '.join(missing)}")
    for lo, hi in (("xl", "xu"), ("yl", "yu")):
        if lo in values and values[lo] > values[hi]:
            raise ValueOutOfRange(f"{lo} = {values[lo]} exceeds {hi} = {values[hi]}")
    return values


@dataclass(frozen=True)
class RuleResult:
    name: str
    lower: Fraction
    upper: Fraction
    premises: Assessment
    conclusion: ConditionalEvent
    engine: PropagationResult | None = None

    @property
    def non_informative(self) -> bool:
        return (self.lower, self.upper) == NON_INFORMATIVE

    @property
    def equal(self) -> bool | None:
        if self.engine is None:
            return None
        return (self.engine.lower, self.engine.upper) == (self.lower, self.upper)


def apply_rule(name: str, params: Mapping[str, object] | None = None, verify: bool = False,
               strict: bool = True, **formulas: Formula) -> RuleResult:
    """Closed-form conclusion bounds of a catalog rule.

    With ``verify`` the engine interval is computed too; ``strict`` then
    raises :class:`RuleMismatch` unless the two agree exactly.  Keyword
    formulas override the fresh atoms of the named placeholders.
    """
    spec = get_rule(name)
    values = bind_params(spec, params or {})
    lower, upper = spec.closed_form(values)
    premises, conclusion = spec.instantiate(values, **formulas)
    engine = extension_interval(premises, conclusion) if verify else None
    result = RuleResult(spec.name, lower, upper, premises, conclusion, engine)
    if verify and strict and not result.equal:
        raise RuleMismatch(
            f"{spec.name}: closed form [{lower}, {upper}] but engine "
            f"[{engine.lower}, {engine.upper}]")
    return result


# ---------------------------------------------------------------------------
# connexive principles


@dataclass(frozen=True)
class ConnexiveReport:
    name: str
    holds: bool
    statement: str
    findings: tuple[tuple[str, object], ...]


def _forced(conclusion, premises=Assessment()):
    r = extension_interval(premises, conclusion)
    return r.lower, r.upper


def _eval3_identical(a: ConditionalEvent, b: ConditionalEvent) -> bool:
    table = enumerate_constituents([a, b])
    return table.true_masks[0] == table.true_masks[1] and table.false_masks[0] == table.false_masks[1]


def _afp_premises(t: Fraction, A: Formula, B: Formula) -> Assessment:
    return Assessment.of((cond(B, A), (t, _ONE)), (cond(~B, A), (t, _ONE)))


def check_connexive(name: str, x=None, t=None) -> ConnexiveReport:
    """Certify a connexive principle with the coherence engine.

    ``x`` is the premise value for BT1/BT2 (default 7/10); ``t`` the "high"
    threshold for AFP (default 3/5, must exceed 1/2).
    """
    key = name.upper()
    A, B = Atom("A1"), Atom("B1")
    if key in ("AT1", "AT2"):
        inner = cond(A, ~A) if key == "AT1" else cond(~A, A)
        negated = negate_narrow(inner)
        inner_iv, negated_iv = _forced(inner), _forced(negated)
        holds = inner_iv == (_ZERO, _ZERO) and negated_iv == (_ONE, _ONE)
        return ConnexiveReport(key, holds,
                               f"p({inner}) is forced to 0 and p({negated}) to 1",
                               ((f"p({inner})", inner_iv), (f"p({negated})", negated_iv)))
    if key in ("BT1", "BT2"):
        x = _check_unit("x", Fraction(7, 10) if x is None else x)
        antecedent = cond(B, A) if key == "BT1" else cond(~B, A)
        consequent = negate_narrow(cond(~B, A) if key == "BT1" else cond(B, A))
        iv = _forced(consequent, Assessment.of((antecedent, x)))
        identical = _eval3_identical(antecedent, consequent)
        holds = identical and iv == (x, x)
        return ConnexiveReport(key, holds,
                               f"p({antecedent}) = {x} entails p({consequent}) = {x}",
                               ((f"p({consequent})", iv), ("eval3-identical", identical)))
    if key == "AFP":
        t = Fraction(3, 5) if t is None else _check_unit("t", t)
        if t <= HALF:
            raise ValueOutOfRange(f"AFP threshold t = {t} must exceed 1/2")
        probes = {}
        for probe in (t, HALF + Fraction(1, 1000), HALF):
            probes[probe] = check_coherence(_afp_premises(probe, A, B)).coherent
        holds = not probes[t] and not probes[HALF + Fraction(1, 1000)] and probes[HALF]
        return ConnexiveReport(
            key, holds,
            f"p({cond(B, A)}) >= t and p({cond(~B, A)}) >= t is incoherent for t > 1/2",
            tuple((f"t = {probe}", "coherent" if ok else "incoherent")
                  for probe, ok in probes.items()))
    raise UnknownRule(f"{name!r} is not a connexive principle (AT1, AT2, BT1, BT2, AFP)")


# ---------------------------------------------------------------------------
# probabilistic truth-table task


def _pttt_values(x1, x2, x3, x4):
    xs = tuple(Fraction(v) for v in (x1, x2, x3, x4))
    if any(v < 0 for v in xs) or sum(xs) != 1:
        raise NotADistribution(f"({', '.join(map(str, xs))}) is not a probability distribution")
    return xs


def pttt_predictions(x1, x2, x3, x4) -> dict[str, object]:
    """Predicted answer for "if A then B" under three readings of the conditional.

    The conditional-probability reading is the interval ``(0, 1)`` when
    ``p(A) = 0``: any value is then coherent for ``p(B|A)``.
    """
    x1, x2, x3, x4 = _pttt_values(x1, x2, x3, x4)
    cp = x1 / (x1 + x2) if x1 + x2 else NON_INFORMATIVE
    return {"conditional_probability": cp, "conjunction": x1, "material_conditional": x1 + x3 + x4}


def pttt_engine(x1, x2, x3, x4) -> dict[str, tuple[Fraction, Fraction]]:
    """Engine intervals for the three readings, from the four cell probabilities."""
    xs = _pttt_values(x1, x2, x3, x4)
    A, B = Atom("A1"), Atom("B1")
    cells = (A & B, A & ~B, ~A & B, ~A & ~B)
    premises = Assessment.of(*((cond(c), x) for c, x in zip(cells, xs)))
    return {
        "conditional_probability": _forced(cond(B, A), premises),
        "conjunction": _forced(cond(A & B), premises),
        "material_conditional": _forced(cond(~A | B), premises),
    }
