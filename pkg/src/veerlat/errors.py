"""Exception types raised across the package.

Each CLI-facing error carries an ``exit_code`` so the command line layer can
map failures without a lookup table of its own.
"""


class VeerlatError(Exception):
    exit_code = 1


class FlipIllegal(VeerlatError):
    pass


class IncompatibleReference(VeerlatError):
    pass


class NotPseudoAnosov(VeerlatError):
    exit_code = 2


class Unveerable(VeerlatError):
    exit_code = 3

    def __init__(self, message, tetrahedron=None):
        super().__init__(message)
        self.tetrahedron = tetrahedron


class BadScript(VeerlatError):
    exit_code = 4


class HashMismatch(VeerlatError):
    exit_code = 5


class NotCompatible(VeerlatError):
    exit_code = 6

    def __init__(self, message, pivots=()):
        super().__init__(message)
        self.pivots = tuple(pivots)


class EmptyProjection(VeerlatError):
    def __init__(self, message, side=None):
        super().__init__(message)
        self.side = side


class NoBoundApplicable(VeerlatError):
    pass


class InessentialGraph(VeerlatError):
    pass


class WindowExceeded(VeerlatError):
    pass


class MoveIllegal(VeerlatError):
    pass


class NotDisjoint(VeerlatError):
    pass


class EmptyConstraint(VeerlatError):
    pass


class NotOrdered(VeerlatError):
    pass


class NotContaining(VeerlatError):
    pass


class DeterminismViolation(VeerlatError):
    """Two greedy runs that must agree produced different sections."""


class ModelUnsupported(VeerlatError):
    pass


class HypothesisUnmet(VeerlatError):
    def __init__(self, message, measured=None, threshold=None):
        super().__init__(message)
        self.measured = measured
        self.threshold = threshold


class NoT0InBand(VeerlatError):
    pass


class NoOverlapFound(VeerlatError):
    pass
