"""Record serialization for the command-line front end.

All complex numbers are written as two-element ``[re, im]`` arrays; real
matrices are flattened row-major.  Floats go through Python's shortest
round-trip ``repr`` (at most 17 significant digits), so every emitted value
re-parses to the exact in-memory double.
"""

from __future__ import annotations

import json

import numpy as np


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_to_complex(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def vector_pairs(v) -> list[list[float]]:
    return [complex_pair(z) for z in np.asarray(v, dtype=complex)]


def pairs_to_vector(pairs) -> np.ndarray:
    return np.array([pair_to_complex(p) for p in pairs], dtype=complex)


def matrix_pairs_row_major(m) -> list[list[float]]:
    return [complex_pair(z) for z in np.asarray(m, dtype=complex).reshape(-1)]


def row_major_pairs_to_matrix(pairs, side: int) -> np.ndarray:
    flat = pairs_to_vector(pairs)
    return flat.reshape(side, side)


def real_matrix_row_major(m) -> list[float]:
    return [float(x) for x in np.asarray(m, dtype=float).reshape(-1)]


def row_major_to_matrix(values, side: int) -> np.ndarray:
    return np.asarray(values, dtype=float).reshape(side, side)


def dump_line(obj: dict) -> str:
    return json.dumps(obj, separators=(", ", ": "), sort_keys=False)


def write_jsonl(stream, objects) -> None:
    for obj in objects:
        stream.write(dump_line(obj))
        stream.write("\n")


def read_jsonl(path: str) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out
