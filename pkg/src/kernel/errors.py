class KernelError(Exception):
    """Base error carrying a stable code and an optional witness."""

    code = "E000"

    def __init__(self, message: str | None = None, witness=None) -> None:
        self.message = message or "kernel error"
        self.witness = witness
        super().__init__(self.message)

    def as_dict(self) -> dict:
        out = {"code": self.code, "error": type(self).__name__, "message": self.message}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


class PoleAtSpecialization(KernelError):
    code = "E101"


class InvalidCartan(KernelError):
    code = "E201"


class InvalidLattice(KernelError):
    code = "E202"


class InvalidPhi(KernelError):
    code = "E203"


class NotReduced(KernelError):
    code = "E204"


class DegreeTooLarge(KernelError):
    code = "E301"


class ConventionFailure(KernelError):
    code = "E302"


class PresentationMismatch(KernelError):
    code = "E303"


class NotInForm(KernelError):
    code = "E304"


class UnsupportedExponent(KernelError):
    code = "E305"


class AxiomFailure(KernelError):
    code = "E401"


class NoConsistentConvention(KernelError):
    code = "E402"


class CrossRelationFailure(KernelError):
    code = "E403"


class DualityFailure(KernelError):
    code = "E404"


class WindowTooSmall(KernelError):
    code = "E501"


class AmbiguousCharacters(KernelError):
    code = "E502"


class CongruenceFailure(KernelError):
    code = "E503"


class RelationFailure(KernelError):
    code = "E504"


class LimitFailure(KernelError):
    code = "E601"


class NotDivisible(KernelError):
    code = "E602"


class PropertyFailure(KernelError):
    code = "E603"


class ExprSyntaxError(KernelError):
    code = "E701"

    def __init__(self, message: str, position: tuple[int, int] | None = None) -> None:
        self.position = position
        super().__init__(message)

    def as_dict(self) -> dict:
        out = super().as_dict()
        if self.position is not None:
            out["position"] = list(self.position)
        return out


class ExprIndexError(ExprSyntaxError):
    code = "E702"
