"""Exception classes.

Every error carries an ``exit_code`` used by the command line front end:
1 for domain errors, 2 for malformed input or unknown commands.
"""


class HMFError(Exception):
    exit_code = 1


class NotTotallyReal(HMFError):
    pass


class NotMonic(HMFError):
    pass


class NotSquarefree(HMFError):
    pass


class NotIrreducible(HMFError):
    pass


class IntegralBasisRequired(HMFError):
    pass


class IndexDivisor(HMFError):
    pass


class ZeroIdeal(HMFError):
    pass


class ZeroElement(HMFError):
    pass


class DegreeUnsupported(HMFError):
    pass


class IndexOutOfRange(HMFError):
    pass


class PrecisionExhausted(HMFError):
    pass


class WeightOrder(HMFError):
    pass


class ValidationFailed(HMFError):
    pass


class ParityViolation(HMFError):
    pass


class OddWeightUntwisted(HMFError):
    pass


class NegativeFactorial(HMFError):
    pass


class OutOfConvergenceRegion(HMFError):
    pass


class MissingLocalData(HMFError):
    pass


class NotCritical(HMFError):
    pass


class InvariantViolation(HMFError):
    pass


class ParseError(HMFError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UnknownCommand(HMFError):
    exit_code = 2
