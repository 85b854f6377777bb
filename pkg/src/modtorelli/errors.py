"""Exception hierarchy.

Every domain precondition failure raises a subclass of ``ModTorelliError``;
the CLI maps these to exit code 1.
"""


class ModTorelliError(ValueError):
    pass


class NotInvertibleMod(ModTorelliError):
    pass


class NotSymplectic(ModTorelliError):
    pass


class ShapeMismatch(ModTorelliError):
    pass


class GenusMismatch(ModTorelliError):
    pass


class NotCongruentToIdentity(ModTorelliError):
    pass


class CriterionFails(ModTorelliError):
    """det of the H block is not congruent to +-1 modulo d."""


class NotCoprime(ModTorelliError):
    pass


class NotModDTorelli(ModTorelliError):
    pass


class DepthTooShallow(ModTorelliError):
    pass


class NotAutomorphismCandidate(ModTorelliError):
    pass


class UnsupportedCombination(ModTorelliError):
    pass
