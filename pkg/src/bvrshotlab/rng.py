"""Seed derivation and seeded generator construction.

Every random draw in the package comes from a numpy Generator backed by the
counter-based Philox bit generator, keyed by a seed derived here. Derivation
hashes the master seed together with a tag path ("sim", case, replicate, ...)
so distinct stages and tasks get independent streams and no stage can perturb
another's draws.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, *tags: int | str) -> int:
    """Stable 64-bit mix of a master seed and a sequence of tags.

    Same inputs always give the same output; distinct tag sequences collide
    with probability ~2**-64 per pair (blake2b truncated to 8 bytes).
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", master & _MASK64))
    for tag in tags:
        if isinstance(tag, bool):  # bool is an int subclass; keep it distinct
            h.update(b"b" + bytes([tag]))
        elif isinstance(tag, int):
            h.update(b"i" + struct.pack("<Q", tag & _MASK64))
        elif isinstance(tag, str):
            data = tag.encode("utf-8")
            h.update(b"s" + struct.pack("<I", len(data)) + data)
        else:
            raise TypeError(f"seed tag must be int or str, got {type(tag).__name__}")
    return int.from_bytes(h.digest(), "little")


def make_generator(seed: int, *tags: int | str) -> np.random.Generator:
    """Generator on an independent Philox stream for (seed, *tags)."""
    key = derive_seed(seed, *tags) if tags else seed & _MASK64
    return np.random.Generator(np.random.Philox(key=key))
