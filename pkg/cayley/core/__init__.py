# cayley/core/__init__.py
from .scalar import HALF, I, INV_SQRT2, ONE, SQRT2, ZERO, Scalar, ScalarError, as_scalar, sqrt_real
from .common import ETA, SIGNATURES, SignatureError, check_signature
from .exterior import (
    Endomorphism,
    Form,
    FormError,
    MetricError,
    NumericMetric,
    SymBilinear,
    Vector,
    e,
    evaluate,
    hodge,
    interior,
    lie_act,
    metric_dual,
    pullback,
    wedge,
)

__all__ = [
    "HALF", "I", "INV_SQRT2", "ONE", "SQRT2", "ZERO", "Scalar", "ScalarError", "as_scalar", "sqrt_real",
    "ETA", "SIGNATURES", "SignatureError", "check_signature",
    "Endomorphism", "Form", "FormError", "MetricError", "NumericMetric", "SymBilinear", "Vector",
    "e", "evaluate", "hodge", "interior", "lie_act", "metric_dual", "pullback", "wedge",
]
