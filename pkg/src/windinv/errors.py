"""Exception types shared across the package."""


class WordSyntaxError(ValueError):
    pass


class ExponentOverflow(ValueError):
    pass


class PolySyntaxError(ValueError):
    pass


class NonZeroExponents(ValueError):
    """The word does not lie in the commutator subgroup."""


class OddExponents(ValueError):
    pass


class NotProductOfSquares(ValueError):
    pass


class InapplicableTest(ValueError):
    """The hypotheses of an obstruction test are not met by the input."""


class NonUnimodular(ValueError):
    pass


class ResourceExceeded(RuntimeError):
    """A search or basis computation hit its configured cap."""


class VerificationError(RuntimeError):
    """A constructed witness failed its own re-check. Always a bug."""


class RegionError(ValueError):
    pass


class EmptyRegion(RegionError):
    pass


class NotConnected(RegionError):
    pass


class NotSimplyConnected(RegionError):
    pass


class OddCellCount(RegionError):
    pass


class BaseNotOnBoundary(RegionError):
    pass


class NotTranslateBisection(RegionError):
    pass
