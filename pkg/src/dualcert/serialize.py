"""JSON file formats and builtin tokens.

Matrices are ``{"n": int, "entries": [[[re, im], ...], ...]}`` (row-major);
non-square matrices (Kraus operators) carry ``"shape": [rows, cols]`` instead
of ``"n"``. A bare nested list of ``[re, im]`` pairs is accepted on input.
"""
import json
import os

import numpy as np

from .bases import (
    custom_basis,
    pauli_basis,
    scaled_unit_basis,
    standard_basis,
    tensor_power,
    weyl_basis,
)
from .choi import BUILTINS, MapSpec
from .errors import DualCertError


class ParseError(DualCertError, ValueError):
    pass


def matrix_to_json(m):
    m = np.asarray(m, dtype=np.complex128)
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    if m.shape[0] == m.shape[1]:
        return {"n": int(m.shape[0]), "entries": entries}
    return {"shape": [int(m.shape[0]), int(m.shape[1])], "entries": entries}


def matrix_from_json(obj):
    entries = obj["entries"] if isinstance(obj, dict) else obj
    try:
        rows = []
        for row in entries:
            vals = []
            for z in row:
                if isinstance(z, (list, tuple)):
                    if len(z) != 2:
                        raise ParseError("complex entries must be [re, im] pairs")
                    vals.append(complex(float(z[0]), float(z[1])))
                else:
                    vals.append(complex(float(z), 0.0))
            rows.append(vals)
        m = np.array(rows, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed matrix entries: {exc}") from exc
    if m.ndim != 2:
        raise ParseError("matrix entries must be a rectangular list of rows")
    if isinstance(obj, dict) and "n" in obj and m.shape != (obj["n"], obj["n"]):
        raise ParseError(f"matrix declares n={obj['n']} but has shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix has non-finite entries")
    return m


def basis_from_json(obj):
    """Parse a basis file: ``{"n", "kind", ...}``."""
    kind = obj.get("kind")
    n = obj.get("n")
    if kind == "standard":
        basis = standard_basis(int(n))
    elif kind == "pauli":
        basis = pauli_basis(normalized=bool(obj.get("normalized", False)))
    elif kind == "pauli_tensor":
        basis = tensor_power(pauli_basis(normalized=bool(obj.get("normalized", False))), int(obj["k"]))
    elif kind == "weyl":
        basis = weyl_basis(int(n))
    elif kind == "scaled_unit":
        basis = scaled_unit_basis(matrix_from_json(obj["lambda"]))
    elif kind == "custom":
        basis = custom_basis([matrix_from_json(m) for m in obj["matrices"]], obj.get("labels"))
    else:
        raise ParseError(f"unknown basis kind {kind!r}")
    if n is not None and basis.n != int(n):
        raise ParseError(f"basis file declares n={n} but the basis lives in M_{basis.n}")
    return basis


def map_from_json(obj):
    """Parse a map file: ``{"n", "p", "kind": "kraus" | "superop" | "builtin", ...}``."""
    n, p, kind = obj.get("n"), obj.get("p"), obj.get("kind")
    if n is None or p is None:
        raise ParseError("map file needs n and p")
    if kind == "kraus":
        return MapSpec(int(n), int(p), kraus=tuple(matrix_from_json(k) for k in obj["ops"]))
    if kind == "superop":
        return MapSpec(int(n), int(p), superop=matrix_from_json(obj["mat"]))
    if kind == "builtin":
        return MapSpec(int(n), int(p), builtin=obj["name"])
    raise ParseError(f"unknown map kind {kind!r}")


def _split_token(token):
    name, _, param = token.partition(":")
    return name, param


def parse_basis_arg(arg):
    """``pauli``, ``pauli:normalized``, ``pauli_tensor:K``, ``weyl:N``, ``standard:N`` or a file."""
    name, param = _split_token(arg)
    try:
        if name == "pauli" and param in ("", "normalized"):
            return pauli_basis(normalized=param == "normalized")
        if name == "pauli_tensor" and param:
            return tensor_power(pauli_basis(), int(param))
        if name == "weyl" and param:
            return weyl_basis(int(param))
        if name == "standard" and param:
            return standard_basis(int(param))
    except ValueError as exc:
        raise ParseError(f"bad builtin basis token {arg!r}: {exc}") from exc
    if os.path.exists(arg):
        return basis_from_json(load_json(arg))
    raise ParseError(f"{arg!r} is neither a builtin basis token nor a file")


def parse_map_arg(arg, n):
    """A map file path, or a builtin name (``identity``, ``transpose``, ``trace_depolarize``)."""
    if arg in BUILTINS:
        return MapSpec(n, n, builtin=arg)
    if os.path.exists(arg):
        return map_from_json(load_json(arg))
    raise ParseError(f"{arg!r} is neither a builtin map name nor a file")


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj):
    """Canonical output: insertion key order, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _finite(x):
    return None if x is None or not np.isfinite(x) else float(x)


def verdict_to_json(verdict):
    diag = {}
    for key, val in verdict.diagnostics.items():
        diag[key] = [float(v) for v in val] if isinstance(val, (list, tuple)) else _finite(val)
    return {
        "kind": verdict.kind,
        "C": None if verdict.C is None else matrix_to_json(verdict.C),
        "diagnostics": diag,
    }


def report_to_json(report):
    return {
        "witness": matrix_to_json(report.witness),
        "min_product_pairing": report.min_product_pairing,
        "num_samples": report.num_samples,
        "seed": report.seed,
        "prng": report.prng,
        "detected_state": None if report.detected_state is None else matrix_to_json(report.detected_state),
        "detected_pairing": report.detected_pairing,
        "basis_kind_used": report.basis_kind_used,
    }
