class C45Error(Exception):
    """Base class for errors raised by this package."""


class DataError(C45Error, ValueError):
    """Malformed input data or a dataset that violates a precondition."""


class ModelError(C45Error, ValueError):
    """Malformed or incompatible serialized model."""
