"""Exception hierarchy shared by every module of the engine."""


class ProbLogicError(Exception):
    """Base class for all errors raised by problogic."""


class FormulaSyntaxError(ProbLogicError, ValueError):
    """Malformed formula or problem text.

    ``line`` and ``column`` are 1-based; ``line`` is 1 for single-line input.
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class MissingAtom(ProbLogicError, KeyError):
    """A valuation does not assign a value to an atom being evaluated."""

    def __str__(self):
        return Exception.__str__(self)


class AtomLimitExceeded(ProbLogicError, ValueError):
    pass


class ContradictoryAntecedent(ProbLogicError, ValueError):
    """Conditioning on a logical contradiction is undefined."""


class InvalidAssessment(ProbLogicError, ValueError):
    pass


class CoherentAssessment(ProbLogicError):
    """A Dutch book was requested for an assessment that admits none."""


class IncoherentPremises(ProbLogicError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class AntecedentUnreachable(ProbLogicError):
    pass


class NonIntervalExtension(ProbLogicError):
    """The set of coherent extensions failed interval certification."""


class UnknownRule(ProbLogicError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MissingParam(ProbLogicError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ValueOutOfRange(ProbLogicError, ValueError):
    pass


class NotADistribution(ProbLogicError, ValueError):
    pass


class RuleMismatch(ProbLogicError, AssertionError):
    """A closed-form rule disagreed with the propagation engine."""


class UnknownParam(ProbLogicError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
