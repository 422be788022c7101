"""Exception types raised across the package."""


class SingularMatrixError(ValueError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class NotInSubfieldError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


class InadmissibleTargetError(ValueError):
    """Requested hull dimension is outside what the construction reaches."""


class NoConstructionError(ValueError):
    pass


class SelfDualBasisError(ValueError):
    """No self-dual basis exists for this extension."""


class SearchBudgetError(RuntimeError):
    pass


class FormatError(ValueError):
    """Malformed JSON input; ``field`` names the offending key."""

    def __init__(self, field: str, msg: str):
        super().__init__(f"{field}: {msg}")
        self.field = field
