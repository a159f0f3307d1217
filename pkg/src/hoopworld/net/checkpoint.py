"""Versioned checkpoint format.

Byte layout (little-endian):

    magic    4 bytes  b"HWCK"
    version  u16      format version (currently 1)
    hdr_len  u32      byte length of the JSON header
    header   utf-8 JSON:
        {
          "format_version": 1,
          "kind": "<gaussian_policy|adapter_policy|critic|categorical_policy|...>",
          "arrays": [{"shape": [dims...], "dtype": "f4"|"f8"}, ...],
          "meta": { ... }               # goal dims, stats, hyperparameters
        }
    payload  concatenated little-endian float arrays, C order, header order

Policy parameters are float32 (payload "f4"); critic parameters keep float64
("f8") so value-normalization rescaling stays exact.  Payload dtype matches
the in-memory dtype, making save -> load -> forward bit-identical.  Scalar
statistics (value-normalization moments) ride in the JSON header at full
precision via repr round-trip.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b"HWCK"
FORMAT_VERSION = 1

_DTYPES = {"f4": "<f4", "f8": "<f8"}


def _tag(a: np.ndarray) -> str:
    return "f8" if a.dtype == np.float64 else "f4"


def save_arrays(path: str | Path, kind: str, arrays: list[np.ndarray], meta: dict) -> None:
    header = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "arrays": [{"shape": list(a.shape), "dtype": _tag(a)} for a in arrays],
        "meta": meta,
    }
    blob = json.dumps(header).encode("utf-8")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<H", FORMAT_VERSION))
        f.write(struct.pack("<I", len(blob)))
        f.write(blob)
        for a in arrays:
            f.write(np.ascontiguousarray(a, dtype=_DTYPES[_tag(a)]).tobytes())


def load_arrays(path: str | Path) -> tuple[str, list[np.ndarray], dict]:
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: not a checkpoint (bad magic)")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported checkpoint version {version}")
    (hdr_len,) = struct.unpack_from("<I", data, 6)
    header = json.loads(data[10 : 10 + hdr_len].decode("utf-8"))
    arrays = []
    off = 10 + hdr_len
    for spec in header["arrays"]:
        shape = spec["shape"]
        dt = _DTYPES[spec["dtype"]]
        count = int(np.prod(shape)) if shape else 1
        a = np.frombuffer(data, dtype=dt, count=count, offset=off).reshape(shape)
        arrays.append(a.copy())
        off += a.itemsize * count
    return header["kind"], arrays, header.get("meta", {})
