"""Exception hierarchy shared by all modules."""


class CoverError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(CoverError, ValueError):
    """An argument is outside its documented domain (negative radius, s <= 0, ...)."""


class ConstructionError(CoverError):
    """A metric space could not be built from the given input."""


class PreconditionError(CoverError):
    """An algorithm's input does not satisfy the hypothesis it relies on."""


class RecolorError(CoverError):
    """No scale on the ladder admits a coloring with the requested number of colors.

    Attributes
    ----------
    lam : float
        Smallest scale factor that was attempted.
    witness : tuple of int
        Indices of sets forming the obstruction: one set together with
        neighbours that already use every available color.
    """

    def __init__(self, message, lam, witness):
        super().__init__(message)
        self.lam = lam
        self.witness = tuple(witness)


class AnnulusCoverError(CoverError):
    """The annulus generator exhausted its ladder; carries the best attempt."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class LadderExhausted(CoverError):
    """A pipeline ran out of parameter values to escalate to."""


class CertificationError(CoverError):
    """A produced cover failed its own certification."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
