# cayley/formats.py
"""
行指向のテキスト形式。

    # comment
    form dim=8 grade=4
    [1,0,0,0] e0^e1^e2^e3
    [0,1,0,0] e5^e6^e7^e4

    spinor sig=4,4
    [1/2,0,0,0]
    ... (16 quadruples)

    metric dim=8
    [1,0,0,0] [0,0,0,0] ...   (one row per line)

A quadruple [a,b,c,d] is a + b√2 + i(c + d√2) with integer or p/q entries.
Triple files hold three `form dim=4 grade=2` blocks.
"""
from __future__ import annotations

import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import List, Tuple, Union

from .core.common import ambient_axes, perm_sign
from .core.exterior import MetricError
from .core.scalar import Scalar
from .models import FormDocument, FormTerm, MetricDocument, ScalarModel, SpinorDocument, TripleDocument

logger = logging.getLogger("cayley.formats")


class FormatError(RuntimeError):
    """Syntax error in a form / spinor / triple file (1-based line and column)."""

    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(f"{where}{message}")


_RATIONAL = r"-?\d+(?:/\d+)?"
_QUAD = re.compile(
    rf"\[\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*,\s*({_RATIONAL})\s*\]"
)
_BASIS = re.compile(r"e(\d+)")
_FORM_HEADER = re.compile(r"form\s+dim=(\d+)\s+grade=(\d+)\s*$")
_SPINOR_HEADER = re.compile(r"spinor\s+sig=\(?\s*(\d)\s*,\s*(\d)\s*\)?\s*$")
_METRIC_HEADER = re.compile(r"metric\s+dim=(\d+)\s*$")


# -----------------------------
# lexing
# -----------------------------

def _lines(text: str) -> List[Tuple[int, int, str]]:
    """(line number, column offset, content) with comments and blank lines dropped."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            out.append((n, len(body) - len(stripped), stripped))
    return out


def _fraction(text: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError as ex:
        raise FormatError(f"zero denominator in {text!r}", line, col) from ex


def _quadruple(body: str, line: int, col: int) -> Tuple[ScalarModel, int]:
    m = _QUAD.match(body)
    if m is None:
        raise FormatError("expected a scalar quadruple [a,b,c,d]", line, col + 1)
    for k in range(4):
        _fraction(m.group(k + 1), line, col + m.start(k + 1) + 1)
    model = ScalarModel(a=m.group(1), b=m.group(2), c=m.group(3), d=m.group(4))
    return model, m.end()


def _basis(body: str, line: int, col: int) -> List[Tuple[int, int]]:
    """'e0^e1^e2' -> [(0, col), (1, col), (2, col)]."""
    out = []
    pos = 0
    for token in body.split("^"):
        m = _BASIS.fullmatch(token.strip())
        if m is None:
            raise FormatError(f"bad basis factor {token.strip()!r}", line, col + pos + 1)
        out.append((int(m.group(1)), col + pos + 1))
        pos += len(token) + 1
    return out


# =========================
# forms
# =========================

def _form_block(lines: List[Tuple[int, int, str]], normalize: bool) -> FormDocument:
    n, off, head = lines[0]
    m = _FORM_HEADER.match(head)
    if m is None:
        raise FormatError("expected header `form dim=<n> grade=<k>`", n, off + 1)
    dim, grade = int(m.group(1)), int(m.group(2))
    try:
        axes = ambient_axes(dim)
    except ValueError as ex:
        raise FormatError(f"unsupported dimension {dim}", n, off + 1) from ex
    if grade > dim:
        raise FormatError(f"grade {grade} exceeds dim {dim}", n, off + 1)

    terms: List[FormTerm] = []
    for n, off, body in lines[1:]:
        coeff, end = _quadruple(body, n, off)
        rest = body[end:]
        basis_text = rest.strip()
        col = off + end + (len(rest) - len(rest.lstrip()))
        labels = _basis(basis_text, n, col) if basis_text else []
        if len(labels) != grade:
            raise FormatError(f"term has {len(labels)} factors, header says grade {grade}", n, col + 1)
        for label, c in labels:
            if label not in axes:
                raise FormatError(f"e{label} is not a basis label in dim {dim}", n, c)
        index = [label for label, _ in labels]
        if perm_sign(index) == 0 or index != sorted(index):
            if not normalize:
                kind = "repeated index" if perm_sign(index) == 0 else "indices not increasing"
                raise FormatError(f"{kind} in e{'^e'.join(map(str, index))}", n, labels[0][1])
            logger.info("line %d: normalizing e%s", n, "^e".join(map(str, index)))
        terms.append(FormTerm(coeff=coeff, index=index))

    raw = FormDocument(dim=dim, grade=grade, terms=terms)
    return FormDocument.from_form(raw.to_form(normalize=True))


def _split_blocks(text: str, keyword: str) -> List[List[Tuple[int, int, str]]]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty document")
    blocks: List[List[Tuple[int, int, str]]] = []
    for item in lines:
        if item[2].startswith(keyword):
            blocks.append([item])
        elif not blocks:
            raise FormatError(f"expected a `{keyword}` header first", item[0], item[1] + 1)
        else:
            blocks[-1].append(item)
    return blocks


def parse_form(text: str, normalize: bool = False) -> FormDocument:
    """Parse a single form; the result is normalized (merged, sorted, zeros dropped)."""
    blocks = _split_blocks(text, "form")
    if len(blocks) != 1:
        raise FormatError(f"expected one form block, got {len(blocks)}", blocks[1][0][0], 1)
    return _form_block(blocks[0], normalize)


def serialize_form(doc: FormDocument) -> str:
    lines = [f"form dim={doc.dim} grade={doc.grade}"]
    for t in doc.terms:
        basis = "^".join(f"e{k}" for k in t.index)
        lines.append(f"{t.coeff.quadruple()} {basis}".rstrip())
    return "\n".join(lines) + "\n"


def normalize_form_text(text: str) -> str:
    return serialize_form(parse_form(text, normalize=True))


# =========================
# spinors
# =========================

def parse_spinor(text: str) -> SpinorDocument:
    blocks = _split_blocks(text, "spinor")
    if len(blocks) != 1:
        raise FormatError(f"expected one spinor block, got {len(blocks)}")
    block = blocks[0]
    n, off, head = block[0]
    m = _SPINOR_HEADER.match(head)
    if m is None:
        raise FormatError("expected header `spinor sig=<8,0|4,4>`", n, off + 1)
    sig = f"{m.group(1)},{m.group(2)}"
    if sig not in ("8,0", "4,4"):
        raise FormatError(f"unsupported signature {sig}", n, off + m.start(1) + 1)
    comps = []
    for n, off, body in block[1:]:
        coeff, end = _quadruple(body, n, off)
        if body[end:].strip():
            raise FormatError("trailing text after quadruple", n, off + end + 1)
        comps.append(coeff)
    if len(comps) != 16:
        last = block[-1][0]
        raise FormatError(f"spinor needs 16 quadruples, got {len(comps)}", last, 1)
    return SpinorDocument(signature=sig, comps=comps)  # type: ignore[arg-type]


def serialize_spinor(doc: SpinorDocument) -> str:
    lines = [f"spinor sig={doc.signature}"] + [c.quadruple() for c in doc.comps]
    return "\n".join(lines) + "\n"


# =========================
# metrics
# =========================

def parse_metric(text: str) -> MetricDocument:
    blocks = _split_blocks(text, "metric")
    if len(blocks) != 1:
        raise FormatError(f"expected one metric block, got {len(blocks)}")
    block = blocks[0]
    n, off, head = block[0]
    m = _METRIC_HEADER.match(head)
    if m is None:
        raise FormatError("expected header `metric dim=<n>`", n, off + 1)
    dim = int(m.group(1))
    try:
        ambient_axes(dim)
    except ValueError as ex:
        raise FormatError(f"unsupported dimension {dim}", n, off + 1) from ex
    rows = []
    for n, off, body in block[1:]:
        row, pos = [], 0
        while body[pos:].strip():
            skip = len(body[pos:]) - len(body[pos:].lstrip())
            coeff, end = _quadruple(body[pos + skip:], n, off + pos + skip)
            row.append(coeff)
            pos += skip + end
        if len(row) != dim:
            raise FormatError(f"metric row has {len(row)} entries, expected {dim}", n, off + 1)
        rows.append(row)
    if len(rows) != dim:
        raise FormatError(f"metric needs {dim} rows, got {len(rows)}", block[-1][0], 1)
    doc = MetricDocument(dim=dim, rows=rows)
    try:
        doc.to_metric()
    except MetricError as ex:
        raise FormatError(str(ex), block[0][0], 1) from ex
    return doc


def serialize_metric(doc: MetricDocument) -> str:
    lines = [f"metric dim={doc.dim}"] + [" ".join(x.quadruple() for x in r) for r in doc.rows]
    return "\n".join(lines) + "\n"


# =========================
# triples
# =========================

def parse_triple(text: str, normalize: bool = False) -> TripleDocument:
    blocks = _split_blocks(text, "form")
    if len(blocks) != 3:
        raise FormatError(f"a triple needs three form blocks, got {len(blocks)}")
    forms = [_form_block(b, normalize) for b in blocks]
    for b, f in zip(blocks, forms):
        if f.dim != 4 or f.grade != 2:
            raise FormatError(f"triple members must be `form dim=4 grade=2`, got dim={f.dim} grade={f.grade}",
                              b[0][0], 1)
    return TripleDocument(forms=forms)


def serialize_triple(doc: TripleDocument) -> str:
    return "\n".join(serialize_form(f) for f in doc.forms)


def scalar_text(x: Scalar) -> str:
    return ScalarModel.from_scalar(x).quadruple()


Document = Union[FormDocument, SpinorDocument, TripleDocument, MetricDocument]


def read_document(path: str, kind: str, normalize: bool = False) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise FormatError(f"cannot read {path}: {ex.strerror}") from ex
    if kind == "form":
        return parse_form(text, normalize)
    if kind == "spinor":
        return parse_spinor(text)
    if kind == "triple":
        return parse_triple(text, normalize)
    if kind == "metric":
        return parse_metric(text)
    raise ValueError(f"unknown document kind {kind}")
