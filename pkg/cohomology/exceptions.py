class DimensionMismatchError(Exception):
    pass


class InvalidBladeError(Exception):
    pass


class NonHomogeneousError(Exception):
    pass


class RingMismatchError(Exception):
    pass


class RingStructureError(Exception):
    pass


class IdealUndefinedError(Exception):
    pass


class ConstructorError(Exception):
    pass


class UnknownClassError(Exception):
    pass


class RingFormatError(Exception):
    pass


class ExpressionParseError(Exception):
    """
    raised when a manifold or form-class expression cannot be parsed.
    `position` is the 0-based character offset the parser had reached.
    """
    def __init__(self, message: str, source: str, position: int):
        self.message = message
        self.source = source
        self.position = position
        super(ExpressionParseError, self).__init__("{0} at position {1}: {2}".format(message, position, source))
