"""Exact coherence checking and probability propagation for conditional events."""

from .coherence import (Assessment, CoherenceVerdict, DutchBook, Entry, Layer, build_system,
                        check_coherence, dutch_book, validate_dutch_book)
from .conditional import ConditionalEvent, TruthValue3, eval3, make_conditional, negate_narrow
from .constituents import ConstituentTable, enumerate_constituents, q_points
from .dsl import ProblemFile, parse_problem
from .errors import *  # noqa: F401,F403
from .events import (FALSUM, VERUM, And, Atom, Falsum, Formula, Not, Or, Verum, atoms_of,
                     entails, eval_formula, is_contradiction, is_tautology, parse_formula,
                     to_text, truth_mask)
from .propagation import (PropagationResult, extension_interval, is_coherent_extension,
                          is_non_informative)
from .rational_lp import (Constraint, LinearProgram, Objective, optimize, solve_feasibility,
                          verify_certificate)
from .rules import (CATALOG, RULE_NAMES, apply_rule, check_connexive, cond, get_rule,
                    pttt_engine, pttt_predictions)

__version__ = "0.1.0"
