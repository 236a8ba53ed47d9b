"""Exception classes raised across the package."""


class OrbhallError(Exception):
    """Base class for every error raised by orbhall."""


class SignatureError(OrbhallError, ValueError):
    pass


class NonIntegerGenus(OrbhallError, ValueError):
    pass


class IncompatibleOrder(OrbhallError, ValueError):
    pass


class SizeGuard(OrbhallError, ValueError):
    """An enumeration would exceed its configured size limit."""


class NumericDomain(OrbhallError, ValueError):
    pass


class NotHyperbolic(OrbhallError, ValueError):
    pass


class ConstraintViolated(OrbhallError, ValueError):
    pass


class NotScalar(OrbhallError, ValueError):
    pass


class NotAntisymmetric(OrbhallError, ValueError):
    pass


class OddDimension(OrbhallError, ValueError):
    pass


class CoincidentPoints(OrbhallError, ValueError):
    pass


class OddParticleNumber(OrbhallError, ValueError):
    pass
