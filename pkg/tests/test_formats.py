from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayley.core.exterior import SymBilinear, e
from cayley.core.scalar import HALF, SQRT2
from cayley.formats import (
    FormatError,
    normalize_form_text,
    parse_form,
    parse_metric,
    parse_spinor,
    parse_triple,
    read_document,
    serialize_form,
    serialize_metric,
)
from cayley.models import MetricDocument
from cayley.suite import random_form_document


def spinor_text(first: str = "[1/2,0,0,0]", count: int = 16, header: str = "spinor sig=4,4") -> str:
    rows = [first] + ["[0,0,0,0]"] * (count - 1)
    return "\n".join([header] + rows) + "\n"


# -----------------------------
# form
# -----------------------------


def test_parse_simple_form():
    doc = parse_form("form dim=8 grade=1\n[0,1,0,0] e5\n")
    assert doc.to_form() == e(5) * SQRT2


def test_comments_and_blank_lines():
    text = "# header comment\n\nform dim=4 grade=2   # trailing\n  [1,0,0,0] e0^e1\n\n[-1/2,0,0,0] e2^e3\n"
    f = parse_form(text).to_form()
    assert f == e(0, 1, dim=4) + e(2, 3, dim=4) * -HALF


def test_duplicate_terms_are_merged():
    doc = parse_form("form dim=8 grade=2\n[1,0,0,0] e0^e1\n[1,0,0,0] e0^e1\n[0,0,0,0] e2^e3\n")
    assert len(doc.terms) == 1
    assert doc.to_form() == e(0, 1) * 2


def test_bad_quadruple_position():
    with pytest.raises(FormatError) as info:
        parse_form("form dim=8 grade=1\n[0,1,0] e5\n")
    assert (info.value.line, info.value.col) == (2, 1)


def test_bad_basis_factor_position():
    with pytest.raises(FormatError) as info:
        parse_form("form dim=8 grade=2\n[1,0,0,0] e1^x2\n")
    assert (info.value.line, info.value.col) == (2, 14)


@pytest.mark.parametrize(
    "text",
    [
        "form dim=8 grade=2\n[1,0,0,0] e1\n",
        "form dim=8 grade=1\n[1,0,0,0] e9\n",
        "form dim=7 grade=1\n[1,0,0,0] e0\n",
        "form dim=5 grade=1\n[1,0,0,0] e0\n",
        "form dim=4 grade=5\n",
        "form dim=8 grade=1\n[1/0,0,0,0] e1\n",
        "[1,0,0,0] e1\n",
        "",
    ],
)
def test_form_errors(text):
    with pytest.raises(FormatError):
        parse_form(text)


def test_unsorted_indices_need_normalize():
    text = "form dim=8 grade=2\n[1,0,0,0] e2^e1\n"
    with pytest.raises(FormatError):
        parse_form(text)
    assert parse_form(text, normalize=True).to_form() == e(1, 2) * -1
    assert normalize_form_text(text) == "form dim=8 grade=2\n[-1,0,0,0] e1^e2\n"


def test_repeated_index_needs_normalize():
    with pytest.raises(FormatError):
        parse_form("form dim=8 grade=2\n[1,0,0,0] e1^e1\n")


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_serialize_then_parse(seed):
    doc = random_form_document(np.random.default_rng(seed))
    text = serialize_form(doc)
    assert parse_form(text) == doc
    assert serialize_form(parse_form(text)) == text


# -----------------------------
# spinor
# -----------------------------


def test_parse_spinor():
    psi = parse_spinor(spinor_text()).to_spinor()
    assert psi.signature == "4,4"
    assert psi.comps[0] == Fraction(1, 2)
    assert parse_spinor(spinor_text(header="spinor sig=(8,0)")).signature == "8,0"


@pytest.mark.parametrize(
    "text",
    [
        spinor_text(count=15),
        spinor_text(header="spinor sig=2,6"),
        spinor_text(first="[1,0,0,0] e1"),
    ],
)
def test_spinor_errors(text):
    with pytest.raises(FormatError):
        parse_spinor(text)


# -----------------------------
# metric / triple
# -----------------------------


def test_parse_metric():
    text = "metric dim=4\n" + "\n".join(
        " ".join("[1,0,0,0]" if i == j else "[0,0,0,0]" for j in range(4)) for i in range(4)
    ) + "\n"
    doc = parse_metric(text)
    assert doc.to_metric() == SymBilinear.delta(4)
    assert parse_metric(serialize_metric(doc)) == doc


def test_metric_from_document():
    g = SymBilinear.diagonal([1, -1, -1, -1, -1, 1, 1, 1])
    assert parse_metric(serialize_metric(MetricDocument.from_metric(g))).to_metric() == g


@pytest.mark.parametrize(
    "text",
    [
        "metric dim=4\n[1,0,0,0] [0,0,0,0]\n",
        "metric dim=4\n" + "[1,0,0,0] [0,0,0,0] [0,0,0,0] [0,0,0,0]\n" * 3,
        # asymmetric
        "metric dim=4\n[1,0,0,0] [1,0,0,0] [0,0,0,0] [0,0,0,0]\n"
        "[0,0,0,0] [1,0,0,0] [0,0,0,0] [0,0,0,0]\n"
        "[0,0,0,0] [0,0,0,0] [1,0,0,0] [0,0,0,0]\n"
        "[0,0,0,0] [0,0,0,0] [0,0,0,0] [1,0,0,0]\n",
    ],
)
def test_metric_errors(text):
    with pytest.raises(FormatError):
        parse_metric(text)


def test_parse_triple():
    text = "".join(f"form dim=4 grade=2\n[1,0,0,0] e0^e{k}\n" for k in (1, 2, 3))
    forms = parse_triple(text).to_forms()
    assert forms[2] == e(0, 3, dim=4)


def test_triple_needs_three_2_forms():
    with pytest.raises(FormatError):
        parse_triple("form dim=4 grade=2\n[1,0,0,0] e0^e1\n")
    with pytest.raises(FormatError):
        parse_triple("form dim=4 grade=2\n" * 2 + "form dim=8 grade=2\n")


def test_read_missing_file(tmp_path):
    with pytest.raises(FormatError):
        read_document(str(tmp_path / "missing.form"), "form")


def test_read_document(tmp_path):
    path = tmp_path / "a.form"
    path.write_text("form dim=8 grade=4\n[1,0,0,0] e0^e1^e2^e3\n", encoding="utf-8")
    assert read_document(str(path), "form").to_form() == e(0, 1, 2, 3)
