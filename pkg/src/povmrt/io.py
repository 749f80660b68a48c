"""JSON documents for POVMs, states and ensembles; CSV for stochastic matrices.

Matrix entries are always ``[re, im]`` pairs in row-major nested lists.
Floats go through ``json`` (shortest round-trip repr), so save/load is
lossless.
"""
from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .discrimination import Ensemble
from .errors import IoError, ParseError, PovmrtError, ValidationError
from .povm import Povm
from .stochastic import as_stochastic
from .tolerances import ToleranceProfile

FORMAT_VERSION = "1.0"


def matrix_to_json(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def matrix_from_json(data, field: str) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field {field!r}: not a numeric array ({exc})") from exc
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"field {field!r}: expected a square grid of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _document(kind: str, dim: int, **body) -> dict:
    return {"format_version": FORMAT_VERSION, "type": kind, "dim": int(dim), **body}


def povm_to_document(p: Povm, labels=None) -> dict:
    doc = _document("povm", p.dim, elements=[matrix_to_json(e) for e in p])
    if labels is not None:
        doc["labels"] = [str(x) for x in labels]
    return doc


def state_to_document(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return _document("state", rho.shape[0], matrix=matrix_to_json(rho))


def ensemble_to_document(ens: Ensemble) -> dict:
    return _document(
        "ensemble",
        ens.dim,
        priors=[float(q) for q in ens.priors],
        states=[matrix_to_json(r) for r in ens.states],
    )


def _require(doc: dict, field: str):
    if field not in doc:
        raise ParseError(f"missing field {field!r}")
    return doc[field]


def _check_header(doc, kind: str) -> int:
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    version = _require(doc, "format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"field 'format_version': unsupported version {version!r}")
    found = doc.get("type", kind)
    if found != kind:
        raise ParseError(f"field 'type': expected {kind!r}, got {found!r}")
    dim = _require(doc, "dim")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"field 'dim': expected a positive integer, got {dim!r}")
    return dim


def _check_dim(mat: np.ndarray, dim: int, field: str) -> np.ndarray:
    if mat.shape != (dim, dim):
        raise ParseError(f"field {field!r}: shape {mat.shape} does not match dim {dim}")
    return mat


def povm_from_document(doc, tol: ToleranceProfile | None = None) -> Povm:
    dim = _check_header(doc, "povm")
    elems = _require(doc, "elements")
    if not isinstance(elems, list) or not elems:
        raise ParseError("field 'elements': expected a nonempty list")
    mats = [_check_dim(matrix_from_json(e, f"elements[{i}]"), dim, f"elements[{i}]") for i, e in enumerate(elems)]
    if "labels" in doc and len(doc["labels"]) != len(mats):
        raise ParseError("field 'labels': length differs from 'elements'")
    try:
        return Povm(np.array(mats), tol=tol)
    except PovmrtError as exc:
        raise ValidationError(f"{exc.kind}: {exc}", exc) from exc


def state_from_document(doc, tol: ToleranceProfile | None = None) -> np.ndarray:
    from .monotones import check_state

    dim = _check_header(doc, "state")
    rho = _check_dim(matrix_from_json(_require(doc, "matrix"), "matrix"), dim, "matrix")
    try:
        return check_state(rho, tol)
    except PovmrtError as exc:
        raise ValidationError(f"{exc.kind}: {exc}", exc) from exc


def ensemble_from_document(doc, tol: ToleranceProfile | None = None) -> Ensemble:
    dim = _check_header(doc, "ensemble")
    priors = _require(doc, "priors")
    states = _require(doc, "states")
    if not isinstance(states, list) or not isinstance(priors, list) or len(states) != len(priors):
        raise ParseError("fields 'priors' and 'states' must be lists of equal length")
    rhos = [_check_dim(matrix_from_json(s, f"states[{i}]"), dim, f"states[{i}]") for i, s in enumerate(states)]
    try:
        return Ensemble(np.array(priors, dtype=float), np.array(rhos), tol)
    except PovmrtError as exc:
        raise ValidationError(f"{exc.kind}: {exc}", exc) from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field 'priors': {exc}") from exc


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_json(path):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def save_povm(p: Povm, path, labels=None) -> None:
    _write_text(path, dumps(povm_to_document(p, labels)))


def load_povm(path, tol: ToleranceProfile | None = None) -> Povm:
    return povm_from_document(read_json(path), tol)


def save_state(rho, path) -> None:
    _write_text(path, dumps(state_to_document(rho)))


def load_state(path, tol: ToleranceProfile | None = None) -> np.ndarray:
    return state_from_document(read_json(path), tol)


def save_ensemble(ens: Ensemble, path) -> None:
    _write_text(path, dumps(ensemble_to_document(ens)))


def load_ensemble(path, tol: ToleranceProfile | None = None) -> Ensemble:
    return ensemble_from_document(read_json(path), tol)


# -- stochastic matrices ------------------------------------------------------


def matrix_to_csv(p) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in np.asarray(p, dtype=float):
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str, source: str = "<csv>") -> np.ndarray:
    rows = []
    for lineno, row in enumerate(csv.reader(_io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            rows.append([float(c) for c in row])
        except ValueError as exc:
            raise ParseError(f"{source}: line {lineno}: {exc}") from exc
    if not rows:
        raise ParseError(f"{source}: no data")
    width = len(rows[0])
    for i, r in enumerate(rows, start=1):
        if len(r) != width:
            raise ParseError(f"{source}: row {i} has {len(r)} columns, expected {width}")
    return np.array(rows)


def save_stochastic(p, path) -> None:
    _write_text(path, matrix_to_csv(p))


def load_stochastic(path, tol: ToleranceProfile | None = None) -> np.ndarray:
    p = matrix_from_csv(_read_text(path), str(path))
    try:
        return as_stochastic(p, tol)
    except PovmrtError as exc:
        raise ValidationError(f"{exc.kind}: {exc}", exc) from exc
