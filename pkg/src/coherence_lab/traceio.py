"""State-spec parsing and trace serialization (CSV, JSON, figures)."""

from __future__ import annotations

import csv
import io
import json
import os
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidStateSpec, IoError, ParseError, TruncationError
from .scalar import CoherenceRecord
from .states import StateSpec
from .vector import CoherenceStokesRecord

SCALAR_COLUMNS = ("theta", "g_re", "g_im", "dg_re", "dg_im")
VECTOR_COLUMNS = ("theta", "n", "s_re", "s_im", "ds_prime", "ds_dprime")
WIDE_COLUMNS = ("theta",) + tuple(
    f"{name}{n}{suffix}"
    for n in range(4)
    for name, suffix in (("s", "_re"), ("s", "_im"), ("ds", "_prime"), ("ds", "_dprime"))
)
FORMATS = ("csv", "json", "svg", "png", "pdf")


def _complex(value, what):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise InvalidStateSpec(f"{what} must be a number or [re, im], got {value!r}")


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidStateSpec(f"{what} must be an integer, got {value!r}")
    return value


def _require(obj, key, kind):
    if key not in obj:
        raise InvalidStateSpec(f"{kind} spec is missing {key!r}")
    return obj[key]


def _spec_from_obj(obj, modes_default=1) -> StateSpec:
    if not isinstance(obj, dict):
        raise InvalidStateSpec(f"state spec must be a JSON object, got {type(obj).__name__}")
    modes = _int(obj.get("modes", modes_default), "modes")
    if modes == 2 and ("h" in obj or "v" in obj):
        h = _spec_from_obj(_require(obj, "h", "two-mode"))
        v = _spec_from_obj(_require(obj, "v", "two-mode"))
        return StateSpec("product", 2, h=h, v=v)
    kind = obj.get("kind")
    if kind == "number":
        return StateSpec("number", modes, n=_int(_require(obj, "n", kind), "n"))
    if kind == "coherent":
        return StateSpec("coherent", modes, alpha=_complex(_require(obj, "alpha", kind), "alpha"))
    if kind == "thermal":
        nbar = _require(obj, "nbar", kind)
        if isinstance(nbar, bool) or not isinstance(nbar, (int, float)):
            raise InvalidStateSpec(f"nbar must be a number, got {nbar!r}")
        return StateSpec("thermal", modes, nbar=float(nbar))
    if kind == "superposition":
        terms = []
        for term in _require(obj, "terms", kind):
            if not isinstance(term, dict):
                raise InvalidStateSpec(f"superposition term must be an object, got {term!r}")
            fock = _require(term, "fock", "term")
            if not isinstance(fock, list) or len(fock) != modes:
                raise InvalidStateSpec(f"fock {fock!r} must list {modes} occupation(s)")
            fock = tuple(_int(n, "occupation") for n in fock)
            if any(n < 0 for n in fock):
                raise InvalidStateSpec(f"negative occupation in {fock}")
            terms.append((_complex(_require(term, "amp", "term"), "amp"), fock))
        return StateSpec("superposition", modes, terms=tuple(terms))
    if kind == "density":
        raw = np.asarray(_require(obj, "rho", kind), dtype=float)
        if raw.ndim == 3 and raw.shape[-1] == 2:
            rho = raw[..., 0] + 1j * raw[..., 1]
        elif raw.ndim == 2:
            rho = raw.astype(complex)
        else:
            raise InvalidStateSpec("rho must be a square array of numbers or [re, im] pairs")
        return StateSpec("density", modes, rho=rho)
    raise InvalidStateSpec(f"unknown state kind {kind!r}")


def parse_state_spec(text: str, dim: Optional[int] = None) -> StateSpec:
    """Parse the JSON state-spec schema; with ``dim`` given, reject occupations ``>= dim``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed state spec: {exc.msg} at position {exc.pos}", exc.pos) from exc
    spec = _spec_from_obj(obj)
    if dim is not None:
        if spec.max_occupation() >= dim:
            raise TruncationError(f"occupation {spec.max_occupation()} does not fit dim {dim}")
        if spec.kind == "density":
            size = dim**spec.modes
            if spec.rho.shape != (size, size):
                raise InvalidStateSpec(f"rho has shape {spec.rho.shape}, expected {(size, size)}")
    return spec


def load_state_spec(arg: str, dim: Optional[int] = None) -> StateSpec:
    """``arg`` is inline JSON or a path to a JSON file."""
    if not arg.lstrip().startswith("{") and os.path.exists(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                arg = fh.read()
        except OSError as exc:
            raise IoError(f"cannot read state spec {arg}: {exc}") from exc
    return parse_state_spec(arg, dim)


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _kind(records):
    if not records:
        raise ValueError("no records to write")
    if isinstance(records[0], CoherenceRecord):
        return "scalar"
    if isinstance(records[0], CoherenceStokesRecord):
        return "vector"
    raise TypeError(f"unsupported record type {type(records[0]).__name__}")


def trace_rows(records, layout: str = "long"):
    """Header and string rows for the CSV representation of ``records``."""
    kind = _kind(records)
    if kind == "scalar":
        rows = [(r.theta, r.g.real, r.g.imag, r.dg_real, r.dg_imag) for r in records]
        return SCALAR_COLUMNS, [[_num(v) for v in row] for row in rows]
    if layout == "wide":
        rows = []
        for r in records:
            row = [_num(r.theta)]
            for n in range(4):
                row += [_num(r.S[n].real), _num(r.S[n].imag), _num(r.dS_prime[n]), _num(r.dS_dprime[n])]
            rows.append(row)
        return WIDE_COLUMNS, rows
    rows = []
    for r in records:
        for n in range(4):
            rows.append([_num(r.theta), str(n), _num(r.S[n].real), _num(r.S[n].imag),
                         _num(r.dS_prime[n]), _num(r.dS_dprime[n])])
    return VECTOR_COLUMNS, rows


def trace_csv(records, layout: str = "long") -> str:
    header, rows = trace_rows(records, layout)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _record_dict(r):
    if isinstance(r, CoherenceRecord):
        return {"theta": r.theta, "g": [r.g.real, r.g.imag], "dg_real": r.dg_real, "dg_imag": r.dg_imag}
    return {
        "theta": r.theta,
        "S": [[complex(s).real, complex(s).imag] for s in r.S],
        "dS_prime": [float(x) for x in r.dS_prime],
        "dS_dprime": [float(x) for x in r.dS_dprime],
    }


def trace_json(records) -> str:
    payload = {"type": _kind(records), "records": [_record_dict(r) for r in records]}
    return json.dumps(payload, indent=1) + "\n"


def records_from_json(text: str):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed trace: {exc.msg}", exc.pos) from exc
    out = []
    for d in payload["records"]:
        if payload["type"] == "scalar":
            out.append(CoherenceRecord(d["theta"], complex(*d["g"]), d["dg_real"], d["dg_imag"]))
        else:
            out.append(CoherenceStokesRecord(
                d["theta"],
                np.array([complex(*s) for s in d["S"]]),
                np.array(d["dS_prime"]),
                np.array(d["dS_dprime"]),
            ))
    return out


def read_trace(path: str):
    """Load records written by :func:`write_trace` in JSON format."""
    try:
        with open(path, encoding="utf-8") as fh:
            return records_from_json(fh.read())
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_trace(records: Sequence, fmt: str, path: str, layout: str = "long") -> None:
    """Write ``records`` as CSV, JSON or a rendered phase-space figure."""
    records = list(records)
    _kind(records)
    if fmt == "csv":
        _write_text(path, trace_csv(records, layout))
    elif fmt == "json":
        _write_text(path, trace_json(records))
    elif fmt in ("svg", "png", "pdf"):
        from .plotting import render_phase_space

        try:
            render_phase_space(records, path, fmt=fmt)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
