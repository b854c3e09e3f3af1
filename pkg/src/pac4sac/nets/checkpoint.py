"""Flat parameter checkpoints.

Layout: an 8-byte little-endian header length, a UTF-8 JSON header listing
``{name, shape, offset}`` per array (offset counted in float64 elements), then the
concatenated little-endian float64 data.
"""

import json
import struct
from pathlib import Path

import numpy as np

from pac4sac.domain import ContractError, FloatArray
from pac4sac.nets.base import Module

_HEADER_LENGTH = struct.Struct("<Q")
_DTYPE = np.dtype("<f8")


def encode_parameters(params: dict[str, FloatArray]) -> bytes:
    header: list[dict[str, object]] = []
    chunks: list[bytes] = []
    offset = 0
    for name in sorted(params):
        values = np.ascontiguousarray(params[name], dtype=_DTYPE)
        header.append({"name": name, "shape": list(values.shape), "offset": offset})
        chunks.append(values.tobytes())
        offset += values.size
    encoded = json.dumps(header, separators=(",", ":")).encode("utf-8")
    return _HEADER_LENGTH.pack(len(encoded)) + encoded + b"".join(chunks)


def decode_parameters(blob: bytes) -> dict[str, FloatArray]:
    if len(blob) < _HEADER_LENGTH.size:
        raise ContractError("checkpoint is truncated before its header")
    (length,) = _HEADER_LENGTH.unpack_from(blob)
    start = _HEADER_LENGTH.size + length
    header = json.loads(blob[_HEADER_LENGTH.size : start].decode("utf-8"))
    data = np.frombuffer(blob, dtype=_DTYPE, offset=start)
    arrays: dict[str, FloatArray] = {}
    for entry in header:
        shape = tuple(int(d) for d in entry["shape"])
        count = int(np.prod(shape, dtype=np.int64))
        offset = int(entry["offset"])
        if offset + count > data.size:
            raise ContractError(f"checkpoint data ends inside {entry['name']}")
        arrays[entry["name"]] = data[offset : offset + count].reshape(shape).astype(np.float64)
    return arrays


def save_checkpoint(path: Path, modules: dict[str, Module]) -> None:
    params = {
        f"{prefix}.{name}": array.values
        for prefix, module in modules.items()
        for name, array in module.parameters().items()
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_parameters(params))


def load_checkpoint(path: Path, modules: dict[str, Module]) -> None:
    """Restore parameters in place; names and shapes must match exactly."""
    stored = decode_parameters(path.read_bytes())
    expected = {
        f"{prefix}.{name}": array
        for prefix, module in modules.items()
        for name, array in module.parameters().items()
    }
    if stored.keys() != expected.keys():
        missing = sorted(expected.keys() - stored.keys())
        extra = sorted(stored.keys() - expected.keys())
        raise ContractError(f"checkpoint parameter names differ (missing={missing}, extra={extra})")
    for name, array in expected.items():
        if array.shape != stored[name].shape:
            raise ContractError(f"shape mismatch for {name}: {array.shape} vs {stored[name].shape}")
        array.values[...] = stored[name]
