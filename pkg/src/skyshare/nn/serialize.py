"""Named-array blob serialization: one binary file + manifest entries.

Arrays are stored little-endian float32, concatenated; the manifest lists
name, shape, byte offset, and a sha256 per array so a loader can verify
integrity before trusting the weights.
"""

import hashlib

import numpy as np


def save_arrays(path, named_arrays):
    entries = []
    offset = 0
    with open(path, "wb") as f:
        for name in sorted(named_arrays):
            arr = np.ascontiguousarray(named_arrays[name], dtype="<f4")
            raw = arr.tobytes()
            f.write(raw)
            entries.append({
                "name": name,
                "shape": list(arr.shape),
                "offset": offset,
                "nbytes": len(raw),
                "sha256": hashlib.sha256(raw).hexdigest(),
            })
            offset += len(raw)
    return entries


def load_arrays(path, entries):
    out = {}
    with open(path, "rb") as f:
        blob = f.read()
    for e in entries:
        raw = blob[e["offset"]:e["offset"] + e["nbytes"]]
        if hashlib.sha256(raw).hexdigest() != e["sha256"]:
            raise IOError(f"checksum mismatch for array {e['name']!r}")
        out[e["name"]] = np.frombuffer(raw, dtype="<f4").reshape(
            e["shape"]).copy()
    return out


def module_arrays(module, prefix):
    return {f"{prefix}/{name}": p for name, p in module.named_params()}


def load_module_arrays(module, prefix, arrays):
    for name, p in module.named_params():
        src = arrays[f"{prefix}/{name}"]
        p[...] = src.reshape(p.shape).astype(p.dtype)
