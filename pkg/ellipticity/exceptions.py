class InvalidSystemError(Exception):
    """
    raised when a dual or annihilator system fails one of its defining products.
    `pair` names the failing (left, right) indices, or None when the failure is not a single product
    """
    def __init__(self, message: str, pair=None):
        self.pair = pair
        super(InvalidSystemError, self).__init__(message)


class InvalidCertificateError(Exception):
    pass


class InvalidWitnessError(Exception):
    pass


class WitnessShapeError(Exception):
    pass


class PreconditionError(Exception):
    """
    raised when a query fails a hypothesis of the pipeline. `report` is the structured preconditions report
    """
    def __init__(self, message: str, report: dict):
        self.report = report
        super(PreconditionError, self).__init__(message)


class InclusionError(Exception):
    pass


class ConfigurationError(Exception):
    pass


class PresentationMissingError(Exception):
    pass
