"""JSON schemas for channels, subsystems and reports.

Wire formats (language neutral, lossless at double precision):

* complex numbers are ``[re, im]`` pairs;
* matrices are row-major nested lists of such pairs;
* channel: ``{"dim": d, "kraus": [K1, K2, ...]}`` with each ``Ki`` a
  d-list of d-lists of pairs;
* subsystem: ``{"dim": d, "dA": dA, "dB": dB, "W": [col1, col2, ...]}``
  with W stored column-major, each column a d-list of pairs.

Canonical serialization is deterministic, so serialize -> parse ->
serialize round-trips byte for byte.
"""

from __future__ import annotations

import json

import numpy as np

from .channel import KrausChannel
from .errors import DimensionMismatch
from .linalg import DEFAULT_TOL
from .subsystem import SubsystemDecomposition

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "channel_to_json",
    "channel_from_json",
    "subsystem_to_json",
    "subsystem_from_json",
    "canonical_dumps",
]


def matrix_to_json(m: np.ndarray) -> list:
    """Row-major nested lists of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    rows = [[complex(entry[0], entry[1]) for entry in row] for row in obj]
    return np.asarray(rows, dtype=complex)


def channel_to_json(ch: KrausChannel) -> dict:
    return {"dim": ch.dim, "kraus": [matrix_to_json(k) for k in ch.kraus]}


def channel_from_json(obj, require_tp: bool = True,
                      tol: float = DEFAULT_TOL) -> KrausChannel:
    kraus = [matrix_from_json(k) for k in obj["kraus"]]
    ch = KrausChannel(kraus, require_tp=require_tp, tol=tol)
    if ch.dim != int(obj["dim"]):
        raise DimensionMismatch(
            f"declared dim {obj['dim']} does not match Kraus shape {ch.dim}")
    return ch


def subsystem_to_json(dec: SubsystemDecomposition) -> dict:
    columns = [[[float(dec.w[i, j].real), float(dec.w[i, j].imag)]
                for i in range(dec.dim)] for j in range(dec.w.shape[1])]
    return {"dim": dec.dim, "dA": dec.d_a, "dB": dec.d_b, "W": columns}


def subsystem_from_json(obj, tol: float = DEFAULT_TOL) -> SubsystemDecomposition:
    dim = int(obj["dim"])
    d_a = int(obj["dA"])
    d_b = int(obj["dB"])
    w = np.zeros((dim, d_a * d_b), dtype=complex)
    for j, col in enumerate(obj["W"]):
        for i, entry in enumerate(col):
            w[i, j] = complex(entry[0], entry[1])
    return SubsystemDecomposition(dim, d_a, d_b, w, tol=tol)


def canonical_dumps(obj) -> str:
    """Deterministic JSON text: fixed separators, preserved key order."""
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)
