"""Counter-based random streams.

Each chunk of a Monte Carlo loop gets its own Philox stream keyed by (seed, chunk index),
so the concatenated sample set does not depend on how chunks are spread over workers.
"""

import hashlib

import numpy as np

CHUNK = 1 << 16


def stream(seed, index=0):
    key = (int(seed) & ((1 << 64) - 1)) | ((int(index) & ((1 << 64) - 1)) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_sizes(n_samples, chunk=CHUNK):
    full, rest = divmod(int(n_samples), chunk)
    sizes = [chunk] * full
    if rest:
        sizes.append(rest)
    return sizes


def derive_seed(base_seed, *tags):
    h = hashlib.sha256(repr((int(base_seed),) + tuple(float(t) if isinstance(t, float) else t
                                                        for t in tags)).encode())
    return int.from_bytes(h.digest()[:8], "little")


def map_chunks(fn, n_samples, seed, threads=1, chunk=CHUNK):
    """Apply fn(rng, size) to every chunk and return results in chunk order."""
    sizes = chunk_sizes(n_samples, chunk)
    jobs = [(i, s) for i, s in enumerate(sizes)]
    if threads is None or threads <= 1 or len(jobs) == 1:
        return [fn(stream(seed, i), s) for i, s in jobs]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda js: fn(stream(seed, js[0]), js[1]), jobs))
