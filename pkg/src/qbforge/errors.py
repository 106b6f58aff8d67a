"""Exception hierarchy shared by every qbforge module."""


class QBForgeError(Exception):
    """Base class for all errors raised by qbforge."""


class InputError(QBForgeError):
    """Malformed input: bad tables, unknown labels, unreadable files."""


class PosetError(InputError):
    law = ""

    def __init__(self, *witness):
        self.witness = tuple(witness)
        super().__init__(f"{self.law} fails at {self.witness}")


class NotReflexive(PosetError):
    law = "reflexivity"


class NotAntisymmetric(PosetError):
    law = "antisymmetry"


class NotTransitive(PosetError):
    law = "transitivity"


class MultipleUnits(InputError):
    def __init__(self, u1, u2):
        self.witness = (u1, u2)
        super().__init__(f"two unit candidates {u1} and {u2}")


class JoinMissing(QBForgeError):
    def __init__(self, x, y):
        self.witness = (x, y)
        super().__init__(f"no join for ({x}, {y})")


class CapExceeded(QBForgeError):
    def __init__(self, cap, progress=None):
        self.cap = cap
        self.progress = progress or {}
        msg = f"enumeration exceeds cap {cap}"
        if self.progress:
            msg += f" ({self.progress})"
        super().__init__(msg)


class PreconditionViolated(QBForgeError):
    pass


class NotAHoop(PreconditionViolated):
    pass


class DecompositionFailed(QBForgeError):
    pass


class OracleMismatch(QBForgeError):
    """Two independent computations of the same object disagree."""


class TheoremViolation(QBForgeError):
    """A computed object contradicts a theorem whose hypotheses were checked."""


class UnknownName(InputError):
    pass


class ValidationFailed(QBForgeError):
    pass


class FormatError(InputError):
    pass
