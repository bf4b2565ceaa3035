# cayley/main.py
"""
コマンドラインの入口。

    python -m cayley verify-all [--json] [--filter S] [--timings]
    python -m cayley metric --in F --mode exact|numeric [--candidate F]
    python -m cayley classify --spinor F
    python -m cayley urbantke --in F --mode real|lorentzian
    python -m cayley bilinear -k K --psi F [--phi F]
    python -m cayley orbit-dim --in F

F is a file path or `builtin:<name>`. Reports go to stdout, logs to stderr
and CAYLEY_LOG_DIR/cayley.log. Exit codes: 0 pass, 1 failure, 2 usage / parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import config
from .clifford import bilinear_k, conjugate_spinor, spinor_pairing, stabilizer_dim
from .core.exterior import FormError, SymBilinear
from .families import orbit_dimension, recover_metric, verify_metric_compat
from .fixtures import load_form, load_metric, load_spinor, load_triple
from .formats import FormatError, scalar_text, serialize_form
from .models import FormDocument
from .octonion import metric_from_3form
from .spinors import annihilator, is_pure
from .suite import run_suite
from .urbantke import FormTriple, urbantke_metric

logger = logging.getLogger("cayley.cli")


# -----------------------------
# Logging setup
# -----------------------------

def setup_logging() -> None:
    # basicConfig affects root logger; keep it idempotent
    if logging.getLogger().handlers:
        return
    config.CAYLEY_LOG_DIR.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, config.CAYLEY_LOG_LEVEL, logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(config.CAYLEY_LOG_DIR / "cayley.log", encoding="utf-8"),
        ],
    )


# -----------------------------
# printing helpers
# -----------------------------

def _num(x: float) -> str:
    v = round(float(x), 9)
    return f"{0.0 if v == 0 else v:.9f}"


def _matrix_lines(m: np.ndarray) -> List[str]:
    return ["  " + " ".join(f"{_num(x):>13}" for x in row) for row in m]


def _exact_lines(g: SymBilinear) -> List[str]:
    return ["  " + " ".join(scalar_text(x) for x in row) for row in g.entries]


def _duality_text(lam: complex) -> str:
    return {1: "+1", -1: "-1", 1j: "+i", -1j: "-i"}.get(lam, str(lam))


def _emit(lines: Sequence[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


# =========================
# commands
# =========================

def cmd_verify_all(args: argparse.Namespace) -> int:
    report = run_suite(args.filter, args.timings)
    if args.json:
        rows = [r.dict(exclude_none=True) for r in report.checks]
        sys.stdout.write(json.dumps(rows, ensure_ascii=False, indent=2, sort_keys=True) + "\n")
    else:
        lines = []
        for r in report.checks:
            line = f"{r.status.upper()}  {r.name}  [{r.anchor}]"
            if r.ms is not None:
                line += f"  {r.ms:.1f} ms"
            lines.append(line)
            if r.witness is not None:
                lines.extend(f"      {w}" for w in r.witness.splitlines())
        s = report.summary
        lines.append(f"{s.passed}/{s.total} checks passed, {s.failed} failed")
        _emit(lines)
    return 0 if report.ok else 1


def cmd_metric(args: argparse.Namespace) -> int:
    doc = load_form(args.input, args.normalize)
    if (doc.dim, doc.grade) not in ((8, 4), (7, 3)):
        raise FormError(f"metric needs a 4-form on R^8 or a 3-form on R^7, got grade {doc.grade} dim {doc.dim}")
    phi = doc.to_form()

    if args.mode == "numeric":
        if doc.dim == 8:
            rec = recover_metric(phi)
            p, q = rec.metric.signature
            _emit(["metric:"] + _matrix_lines(rec.metric.matrix) + [
                f"signature: ({p},{q})",
                f"branch: {rec.branch}",
                f"iterations: {rec.iterations}",
                f"residual: {rec.residual:.3e}",
            ])
            return 0
        tm = metric_from_3form(phi)
        g = tm.metric if tm.metric is not None else tm.density
        p, q = tm.signature
        head = "metric:" if tm.metric is not None else "density (ninth root of det not exact):"
        _emit([head] + _exact_lines(g) + [f"signature: ({p},{q})", f"det density: {scalar_text(tm.density_det)}"])
        return 0

    g = load_metric(args.candidate).to_metric()
    if doc.dim == 8:
        res = verify_metric_compat(phi, g)
        lines = [f"compatible: {'yes' if res.ok else 'no'}"]
        if res.volume is not None:
            lines.append(f"volume: {scalar_text(res.volume)}")
        if res.witness:
            lines.append(f"witness: {res.witness}")
        _emit(lines)
        return 0 if res.ok else 1
    tm = metric_from_3form(phi)
    ok = tm.metric is not None and tm.metric == g
    _emit([f"compatible: {'yes' if ok else 'no'}", "metric of the 3-form:"]
          + _exact_lines(tm.metric if tm.metric is not None else tm.density))
    return 0 if ok else 1


def cmd_classify(args: argparse.Namespace) -> int:
    psi = load_spinor(args.spinor).to_spinor()
    pure = is_pure(psi)
    sub = annihilator(psi)
    stab = stabilizer_dim(psi)
    lines = [
        f"signature: {psi.signature}",
        f"parity: {psi.parity}",
        f"<psi,psi>: {scalar_text(spinor_pairing(psi, psi))}",
        f"<conj(psi),psi>: {scalar_text(spinor_pairing(conjugate_spinor(psi), psi))}",
        f"pure: {'yes' if pure else 'no'}",
        f"real index: {sub.real_index if pure else '-'}",
        f"stabiliser dim: {stab.dim}",
        f"annihilator dim: {sub.dim}",
    ]
    if sub.dim:
        lines.append("annihilator basis (covectors):")
        lines.extend("  " + " ".join(scalar_text(x) for x in row) for row in sub.covectors())
    _emit(lines)
    return 0


def cmd_urbantke(args: argparse.Namespace) -> int:
    doc = load_triple(args.input, args.normalize)
    triple = FormTriple(doc.to_forms(), args.mode)
    res = urbantke_metric(triple)
    p, q = res.signature
    _emit(["metric:"] + _matrix_lines(res.metric) + [
        f"signature: ({p},{q})",
        f"duality: {_duality_text(res.duality)}",
        f"self-duality residual: {res.residual:.3e}",
    ])
    return 0


def cmd_bilinear(args: argparse.Namespace) -> int:
    psi = load_spinor(args.psi).to_spinor()
    phi = load_spinor(args.phi).to_spinor() if args.phi else psi
    form = bilinear_k(args.k, psi, phi)
    sys.stdout.write(serialize_form(FormDocument.from_form(form)))
    return 0


def cmd_orbit_dim(args: argparse.Namespace) -> int:
    phi = load_form(args.input, args.normalize).to_form()
    dim = orbit_dimension(phi)
    n = phi.dim
    _emit([f"orbit dimension: {dim}", f"stabiliser dimension: {n * n - dim}"])
    return 0


# =========================
# parser
# =========================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayley", description="Cayley 4-form kernel and verification harness")
    sub = parser.add_subparsers(dest="command", required=True)

    normalize = argparse.ArgumentParser(add_help=False)
    normalize.add_argument("--normalize", action="store_true",
                           help="sort indices with the permutation sign instead of rejecting them")

    p = sub.add_parser("verify-all", help="run the fixed check list")
    p.add_argument("--json", action="store_true", help="emit the report as a JSON array")
    p.add_argument("--filter", default=None, help="only checks whose name contains this substring")
    p.add_argument("--timings", action="store_true", help="record wall time per check")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("metric", parents=[normalize], help="metric of a 4-form (dim 8) or 3-form (dim 7)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=("exact", "numeric"), required=True)
    p.add_argument("--candidate", default=None, help="metric file checked in exact mode")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("classify", help="purity, real index, stabiliser and annihilator of a spinor")
    p.add_argument("--spinor", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("urbantke", parents=[normalize], help="Urbantke metric of a triple of 2-forms")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=("real", "lorentzian"), required=True)
    p.set_defaults(func=cmd_urbantke)

    p = sub.add_parser("bilinear", help="B_k(psi, phi) as a form document")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--phi", default=None)
    p.set_defaults(func=cmd_bilinear)

    p = sub.add_parser("orbit-dim", parents=[normalize], help="dimension of the GL orbit of a form")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_orbit_dim)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "metric" and args.mode == "exact" and args.candidate is None:
        parser.error("metric --mode exact needs --candidate")
    setup_logging()
    logger.debug("command=%s", args.command)
    try:
        return args.func(args)
    except FormatError as ex:
        logger.error("%s: %s", args.command, ex)
        return 2
    except RuntimeError as ex:
        logger.error("%s failed: %s", args.command, ex)
        return 1
    except Exception:
        logger.exception("%s: unexpected error", args.command)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
