"""Counter-based random streams.

Every draw is a pure function of ``(seed, stream_id, index)``, computed with
the Philox4x32-10 block cipher.  The 128-bit counter holds the 64-bit
``stream_id`` in its upper half and the 64-bit block index in its lower
half; the 64-bit seed is the cipher key.  Deriving a stream is therefore
O(1) and any set of streams can be generated in one vectorized call, in any
order, with bit-identical results.

Each Philox block yields four 32-bit words, which are consumed as two
uniforms (words 0-1 and words 2-3).  A uniform takes the top 52 bits ``m``
of its word pair and returns ``(m + 0.5) / 2**52``, which is never 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "StreamKey",
    "philox4x32",
    "uniform01",
    "standard_normal",
    "uniform_streams",
    "normal_streams",
    "substream_seed",
]

_MASK32 = np.uint64(0xFFFFFFFF)
_MASK64 = (1 << 64) - 1
_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_SHIFT32 = np.uint64(32)
_ROUNDS = 10
_UNIFORM_BITS = 52
_UNIFORM_SCALE = 2.0 ** -_UNIFORM_BITS


@dataclass(frozen=True)
class StreamKey:
    """Address of one random stream: a 64-bit seed and a 64-bit stream id."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not 0 <= int(v) <= _MASK64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v}")

    def child(self, i: int) -> "StreamKey":
        """Key of the ``i``-th sub-stream nested under this one."""
        return StreamKey(substream_seed(self.seed, self.stream_id), i)


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream_seed(seed: int, stream_id: int) -> int:
    """Seed for the family of sub-streams nested under ``(seed, stream_id)``."""
    return _splitmix64(_splitmix64(int(seed)) ^ int(stream_id))


def philox4x32(c0, c1, c2, c3, k0, k1):
    """Philox4x32-10 on uint64 arrays holding 32-bit values.

    Arguments broadcast against each other.  Returns the four output words.
    """
    c0, c1, c2, c3, k0, k1 = (np.asarray(a, dtype=np.uint64) for a in (c0, c1, c2, c3, k0, k1))
    c0, c1, c2, c3 = np.broadcast_arrays(c0, c1, c2, c3, k0, k1)[:4]
    c0, c1, c2, c3 = (a.copy() for a in (c0, c1, c2, c3))
    for r in range(_ROUNDS):
        if r:
            k0 = (k0 + _W0) & _MASK32
            k1 = (k1 + _W1) & _MASK32
        p0 = c0 * _M0
        p1 = c2 * _M1
        hi0 = p0 >> _SHIFT32
        hi1 = p1 >> _SHIFT32
        p0 &= _MASK32
        p1 &= _MASK32
        hi1 ^= c1
        hi1 ^= k0
        hi0 ^= c3
        hi0 ^= k1
        c0, c1, c2, c3 = hi1, p1, hi0, p0
    return c0, c1, c2, c3


def _split64(v):
    v = np.asarray(v, dtype=np.uint64)
    return v & _MASK32, v >> _SHIFT32


def _blocks(seeds, stream_ids, first_block: int, nblocks: int):
    """Raw Philox words for ``nblocks`` consecutive blocks of each stream.

    ``seeds`` and ``stream_ids`` are 1-D arrays (or scalars) of equal length;
    output words have shape ``(len(stream_ids), nblocks)``.
    """
    seeds = np.atleast_1d(np.asarray(seeds, dtype=np.uint64))[:, None]
    stream_ids = np.atleast_1d(np.asarray(stream_ids, dtype=np.uint64))[:, None]
    idx = np.arange(first_block, first_block + nblocks, dtype=np.uint64)[None, :]
    c0, c1 = _split64(idx)
    c2, c3 = _split64(stream_ids)
    k0, k1 = _split64(seeds)
    return philox4x32(c0, c1, c2, c3, k0, k1)


def _to_uniform(hi, lo):
    m = (hi << np.uint64(_UNIFORM_BITS - 32)) | (lo >> np.uint64(64 - _UNIFORM_BITS))
    return (m.astype(np.float64) + 0.5) * _UNIFORM_SCALE


def uniform_streams(seeds, stream_ids, size: int, offset: int = 0) -> np.ndarray:
    """Draws ``offset .. offset+size-1`` of every stream, shape ``(k, size)``.

    ``seeds`` may be a scalar shared by all streams or one seed per stream.
    """
    stream_ids = np.atleast_1d(np.asarray(stream_ids, dtype=np.uint64))
    seeds = np.broadcast_to(np.asarray(seeds, dtype=np.uint64), stream_ids.shape)
    if size == 0:
        return np.empty((stream_ids.size, 0))
    first = offset // 2
    last = (offset + size - 1) // 2
    w0, w1, w2, w3 = _blocks(seeds, stream_ids, first, last - first + 1)
    u = np.empty((stream_ids.size, 2 * (last - first + 1)))
    u[:, 0::2] = _to_uniform(w0, w1)
    u[:, 1::2] = _to_uniform(w2, w3)
    start = offset - 2 * first
    return u[:, start:start + size]


def uniform01(key: StreamKey, size: int | None = None, offset: int = 0):
    """Uniform draws in the open interval (0, 1) from stream ``key``.

    Returns a float when ``size`` is None, else an array of ``size`` draws.
    """
    n = 1 if size is None else size
    u = uniform_streams(key.seed, key.stream_id, n, offset)[0]
    return float(u[0]) if size is None else u


def normal_streams(seeds, stream_ids, size: int) -> np.ndarray:
    """First ``size`` standard normals of every stream, shape ``(k, size)``.

    Marsaglia's polar method: block ``j`` of a stream supplies the candidate
    pair ``(u_2j, u_2j+1)``; accepted pairs give two normals each, in order.
    """
    stream_ids = np.atleast_1d(np.asarray(stream_ids, dtype=np.uint64))
    seeds = np.broadcast_to(np.asarray(seeds, dtype=np.uint64), stream_ids.shape)
    k = stream_ids.size
    if size == 0:
        return np.empty((k, 0))
    pairs = (size + 1) // 2
    out = np.empty((k, 2 * pairs))
    filled = np.zeros(k, dtype=np.int64)
    todo = np.arange(k)
    block = 0
    nblocks = int(pairs / (np.pi / 4) + 4 * np.sqrt(pairs) + 8)
    while todo.size:
        w0, w1, w2, w3 = _blocks(seeds[todo], stream_ids[todo], block, nblocks)
        v1 = 2.0 * _to_uniform(w0, w1) - 1.0
        v2 = 2.0 * _to_uniform(w2, w3) - 1.0
        s = v1 * v1 + v2 * v2
        ok = s < 1.0
        f = np.sqrt(-2.0 * np.log(np.where(ok, s, 0.5)) / np.where(ok, s, 0.5))
        need = pairs - filled[todo]
        rank = np.cumsum(ok, axis=1)
        take = ok & (rank <= need[:, None])
        rows, cols = np.nonzero(take)
        dest = filled[todo][rows] + rank[rows, cols] - 1
        out[todo[rows], 2 * dest] = v1[rows, cols] * f[rows, cols]
        out[todo[rows], 2 * dest + 1] = v2[rows, cols] * f[rows, cols]
        filled[todo] += take.sum(axis=1)
        todo = todo[filled[todo] < pairs]
        block += nblocks
    return out[:, :size]


def standard_normal(key: StreamKey, size: int | None = None):
    """Standard normal draws from stream ``key`` (float if ``size`` is None)."""
    n = 1 if size is None else size
    z = normal_streams(key.seed, key.stream_id, n)[0]
    return float(z[0]) if size is None else z
