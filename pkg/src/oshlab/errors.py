"""Exception hierarchy.  Every domain error derives from :class:`OshError`."""


class OshError(ValueError):
    pass


class EmptySet(OshError):
    pass


class MalformedEncoding(OshError):
    pass


class InvalidElement(OshError):
    pass


class InvalidParams(OshError):
    pass


class GroundTooLarge(OshError):
    def __init__(self, ground, cap):
        super().__init__(f"ground size {ground} exceeds cap {cap}")
        self.ground = ground
        self.cap = cap


class WitnessNotNormalized(OshError):
    pass


class ShapeMismatch(OshError):
    pass


class BoundViolated(OshError):
    pass


class CriterionFails(OshError):
    def __init__(self, target, ell, total):
        super().__init__(f"criterion fails: sum = {total} is not < {ell}")
        self.target = target
        self.ell = ell
        self.total = total


class FamilyFormatError(OshError):
    pass


class ParseError(FamilyFormatError):
    def __init__(self, msg, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)
        self.line = line
        self.column = column


class ElementOutOfRange(FamilyFormatError):
    pass


class DuplicateSet(FamilyFormatError):
    pass


class NotStrictlyIncreasing(FamilyFormatError):
    pass
