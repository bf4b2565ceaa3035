# cayley/models.py
from __future__ import annotations

from fractions import Fraction
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from .clifford import Spinor
from .core.common import ambient_axes
from .core.exterior import Form, SymBilinear
from .core.scalar import Scalar


# ============================================================
# --- exact values ---
# ============================================================

def _rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _text(q: Fraction) -> str:
    return str(q)


class ScalarModel(BaseModel):
    """a + b√2 + i(c + d√2); 各成分は "p/q" か整数の文字列"""
    a: str = "0"
    b: str = "0"
    c: str = "0"
    d: str = "0"

    def to_scalar(self) -> Scalar:
        return Scalar(_rational(self.a), _rational(self.b), _rational(self.c), _rational(self.d))

    @classmethod
    def from_scalar(cls, x: Scalar) -> "ScalarModel":
        return cls(a=_text(x.a), b=_text(x.b), c=_text(x.c), d=_text(x.d))

    def quadruple(self) -> str:
        return f"[{self.a},{self.b},{self.c},{self.d}]"


class FormTerm(BaseModel):
    coeff: ScalarModel
    index: List[int] = Field(default_factory=list)


class FormDocument(BaseModel):
    dim: int
    grade: int
    terms: List[FormTerm] = Field(default_factory=list)

    def to_form(self, normalize: bool = True) -> Form:
        return Form.from_terms(
            ((t.index, t.coeff.to_scalar()) for t in self.terms),
            self.grade,
            dim=self.dim,
            normalize=normalize,
        )

    @classmethod
    def from_form(cls, form: Form) -> "FormDocument":
        if form.axes != ambient_axes(form.dim):
            # 4d triples live on e0..e3, 7d forms on e1..e7
            raise ValueError(f"form on axes {form.axes} has no file representation")
        return cls(
            dim=form.dim,
            grade=form.grade,
            terms=[FormTerm(coeff=ScalarModel.from_scalar(v), index=list(idx)) for idx, v in form.terms()],
        )


class SpinorDocument(BaseModel):
    signature: Literal["8,0", "4,4"] = "8,0"
    comps: List[ScalarModel] = Field(default_factory=list)

    def to_spinor(self) -> Spinor:
        return Spinor(self.signature, tuple(c.to_scalar() for c in self.comps))

    @classmethod
    def from_spinor(cls, psi: Spinor) -> "SpinorDocument":
        return cls(signature=psi.signature, comps=[ScalarModel.from_scalar(x) for x in psi.comps])


class MetricDocument(BaseModel):
    """Candidate metric: dim rows of dim quadruples on the ambient axes"""
    dim: int
    rows: List[List[ScalarModel]] = Field(default_factory=list)

    def to_metric(self) -> SymBilinear:
        return SymBilinear(ambient_axes(self.dim), [[x.to_scalar() for x in r] for r in self.rows])

    @classmethod
    def from_metric(cls, g: SymBilinear) -> "MetricDocument":
        return cls(dim=g.dim, rows=[[ScalarModel.from_scalar(x) for x in r] for r in g.entries])


class TripleDocument(BaseModel):
    """Three 2-forms on e0..e3 (file: three `form dim=4 grade=2` blocks)"""
    forms: List[FormDocument] = Field(default_factory=list)

    def to_forms(self, normalize: bool = True) -> Tuple[Form, Form, Form]:
        out = tuple(f.to_form(normalize) for f in self.forms)
        return out  # type: ignore[return-value]


# ============================================================
# --- suite report ---
# ============================================================

class CheckRecord(BaseModel):
    name: str
    anchor: str
    status: Literal["pass", "fail"]
    witness: Optional[str] = None
    ms: Optional[float] = None


class SuiteSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0


class SuiteReport(BaseModel):
    checks: List[CheckRecord] = Field(default_factory=list)
    summary: SuiteSummary = Field(default_factory=SuiteSummary)

    @property
    def ok(self) -> bool:
        return self.summary.failed == 0
