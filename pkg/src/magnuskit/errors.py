"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` used by the CLI and
the JSON reports.
"""


class MagnusError(Exception):
    code = "error"

    def __init__(self, message="", **detail):
        super().__init__(message or self.code)
        self.detail = detail


class NotDivisible(MagnusError):
    code = "not_divisible"


class ZeroDivisor(MagnusError, ZeroDivisionError):
    code = "zero_divisor"


class ZeroPolynomial(MagnusError, ValueError):
    code = "zero_polynomial"


class NotHomogeneous(MagnusError, ValueError):
    code = "not_homogeneous"


class NotAVertex(MagnusError, ValueError):
    code = "not_a_vertex"


class AnchorOutOfRange(MagnusError, ValueError):
    code = "anchor_out_of_range"


class NonIntegralRootPower(MagnusError, ValueError):
    code = "non_integral_root_power"


class ZeroLeading(MagnusError, ValueError):
    code = "zero_leading"


class NotCommuting(MagnusError):
    code = "not_commuting"


class NotProportional(MagnusError):
    code = "not_proportional"


class NonConstantJacobian(MagnusError):
    code = "non_constant_jacobian"


class ResidualNotProportional(MagnusError):
    code = "residual_not_proportional"


class FractionalExponentResidual(MagnusError):
    code = "fractional_exponent_residual"


class OddVertex(MagnusError, ValueError):
    code = "odd_vertex"


class NonSquareLeading(MagnusError, ValueError):
    code = "non_square_leading"


class PreconditionViolated(MagnusError):
    code = "precondition_violated"


class MembershipFailed(MagnusError):
    code = "membership_failed"


class VanishingViolated(MagnusError):
    code = "vanishing_violated"


class HypothesisFailed(MagnusError):
    code = "hypothesis_failed"


class SweepViolation(MagnusError):
    code = "sweep_violation"


class PolySyntaxError(MagnusError, ValueError):
    code = "syntax_error"

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}", position=position)
        self.position = position


class NegativeExponent(PolySyntaxError):
    code = "negative_exponent"
