"""Deterministic seed derivation for independent random streams.

Every stochastic step in the package (noise injection, row subsampling,
subdomain placement, perturbed initial conditions) draws from its own
`numpy` generator whose seed is derived from a master seed plus a tag
path. Derivation goes through SHA-256 so results do not depend on
Python's per-process hash randomization or on execution order.
"""

import hashlib

import numpy as np


def derive_seed(master_seed: int, *tags) -> int:
    """Derive a 64-bit stream seed from a master seed and a tag path.

    Tags may be strings, ints, or floats; floats are keyed by their
    exact bit pattern so 0.1 and 0.1000000001 derive different streams.
    """
    h = hashlib.sha256()
    h.update(str(int(master_seed)).encode())
    for tag in tags:
        if isinstance(tag, float):
            tag = tag.hex()
        h.update(b"/")
        h.update(str(tag).encode())
    return int.from_bytes(h.digest()[:8], "little")


def rng_for(master_seed: int, *tags) -> np.random.Generator:
    """Generator seeded from a derived stream seed."""
    return np.random.default_rng(derive_seed(master_seed, *tags))
