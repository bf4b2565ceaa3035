# cayley/__init__.py
"""
Exact-arithmetic kernel for Cayley 4-forms in eight dimensions.

Scalars live in Q(√2, i); forms, spinors and metrics are exact, and numpy is
used only where a metric has to be recovered or normalised numerically.
"""
from .clifford import Spinor, bilinear_k, gamma
from .core import Form, Scalar, SymBilinear, Vector
from .families import CayleyForm, build_family, recover_metric, verify_metric_compat
from .urbantke import FormTriple, urbantke_metric

__all__ = [
    "Spinor", "bilinear_k", "gamma",
    "Form", "Scalar", "SymBilinear", "Vector",
    "CayleyForm", "build_family", "recover_metric", "verify_metric_compat",
    "FormTriple", "urbantke_metric",
]
