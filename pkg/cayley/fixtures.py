# cayley/fixtures.py
"""
`builtin:<name>` の入力。ファイルには保存せず、毎回コンストラクタから生成する。
"""
from __future__ import annotations

import logging
from typing import Callable, Dict

from .clifford import Spinor
from .core.common import ETA
from .core.exterior import SymBilinear
from .families import build_family, psi_L, psi_p_riemannian, psi_pm
from .formats import FormatError, read_document
from .models import FormDocument, MetricDocument, SpinorDocument, TripleDocument
from .octonion import metric7, phi_3form
from .urbantke import FormTriple, sigma_triple

logger = logging.getLogger("cayley.fixtures")

BUILTIN_PREFIX = "builtin:"

FORM_FIXTURES: Dict[str, Callable[[], FormDocument]] = {
    "cayley-plus": lambda: FormDocument.from_form(build_family("riemannianReal").form),
    "phi-split": lambda: FormDocument.from_form(build_family("splitReal").form),
    "phi-L": lambda: FormDocument.from_form(build_family("lorentzian").form),
    "phi-tau": lambda: FormDocument.from_form(build_family("riemannianComplexTau").form),
    "phi-theta": lambda: FormDocument.from_form(build_family("splitComplexTheta").form),
    "3form-g2": lambda: FormDocument.from_form(phi_3form("O")),
    "3form-g2-split": lambda: FormDocument.from_form(phi_3form("Osplit")),
}

SPINOR_FIXTURES: Dict[str, Callable[[], Spinor]] = {
    "psi-one": lambda: Spinor.one("8,0"),
    "psi-tau": lambda: build_family("riemannianComplexTau").seed,
    "psi-L": psi_L,
    "psi-plus": lambda: psi_pm(1),
    "psi-minus": lambda: psi_pm(-1),
    "psi-p": psi_p_riemannian,
}

TRIPLE_FIXTURES: Dict[str, Callable[[], FormTriple]] = {
    "sigma": lambda: sigma_triple("riemannian"),
    "sigma-split": lambda: sigma_triple("split"),
    "sigma-L": lambda: sigma_triple("lorentzian"),
}

METRIC_FIXTURES: Dict[str, Callable[[], SymBilinear]] = {
    "delta8": lambda: SymBilinear.delta(8),
    "eta8-split": lambda: SymBilinear.diagonal(ETA["4,4"]),
    "delta7": lambda: metric7("O"),
    "eta7-split": lambda: metric7("Osplit"),
}


def builtin_names() -> Dict[str, str]:
    out = {name: "form" for name in FORM_FIXTURES}
    out.update({name: "spinor" for name in SPINOR_FIXTURES})
    out.update({name: "triple" for name in TRIPLE_FIXTURES})
    out.update({name: "metric" for name in METRIC_FIXTURES})
    return out


def _builtin(ref: str, table: Dict[str, Callable], kind: str):
    name = ref[len(BUILTIN_PREFIX):]
    if name not in table:
        known = ", ".join(sorted(table))
        raise FormatError(f"unknown builtin {kind} {name!r} (known: {known})")
    logger.debug("builtin %s: %s", kind, name)
    return table[name]()


def load_form(ref: str, normalize: bool = False) -> FormDocument:
    if ref.startswith(BUILTIN_PREFIX):
        return _builtin(ref, FORM_FIXTURES, "form")
    return read_document(ref, "form", normalize)  # type: ignore[return-value]


def load_spinor(ref: str) -> SpinorDocument:
    if ref.startswith(BUILTIN_PREFIX):
        return SpinorDocument.from_spinor(_builtin(ref, SPINOR_FIXTURES, "spinor"))
    return read_document(ref, "spinor")  # type: ignore[return-value]


def load_triple(ref: str, normalize: bool = False) -> TripleDocument:
    if ref.startswith(BUILTIN_PREFIX):
        t = _builtin(ref, TRIPLE_FIXTURES, "triple")
        return TripleDocument(forms=[FormDocument.from_form(f) for f in t.forms])
    return read_document(ref, "triple", normalize)  # type: ignore[return-value]


def load_metric(ref: str) -> MetricDocument:
    if ref.startswith(BUILTIN_PREFIX):
        return MetricDocument.from_metric(_builtin(ref, METRIC_FIXTURES, "metric"))
    return read_document(ref, "metric")  # type: ignore[return-value]
