"""Counter-based random streams with cheap, collision-free substreams.

Design
------
A stream is a pair (key, counter) over splitmix64: output i of stream k
is mix64(key + i * GAMMA) where mix64 is the standard finalizer.  The
counter only increments, so any block of outputs can be produced in bulk
(see kernels.bits_block) with results identical to scalar draws.

Derivation rule (also documented in the README):

* root key for RngStream(seed, stream):
      key = mix64(seed ^ 0xD6E8FEB86659FD93), then fold the stream index;
* folding a tag t into a key:
      key' = mix64(key ^ mix64(t * 0xC2B2AE3D27D4EB4F + GAMMA));
* child(*tags) folds each tag in order into the parent's key and starts
  a fresh counter.  Deriving a child never consumes parent outputs, so a
  node's substreams are a pure function of (seed, path), independent of
  how much randomness ancestors drew.

The recursive samplers key children by (depth, side, retry index), which
gives every retry of every node its own stream.

Uniform doubles use the top 53 bits: (word >> 11) * 2**-53, in [0, 1).
"""

import math
from typing import Optional

import numpy as np

from . import kernels
from .geometry import Point, Rect

MASK = 0xFFFFFFFFFFFFFFFF
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_SEED_SALT = 0xD6E8FEB86659FD93
_TAG_MULT = 0xC2B2AE3D27D4EB4F

_INV53 = 2.0 ** -53
# Crossover between the scalar loop and the kernel block generator.  Both
# paths emit identical words, so this is purely a speed knob and may
# differ between backends.
_BULK_CUTOFF = kernels.BITS_BLOCK_MIN


def _mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * _MIX1) & MASK
    z = ((z ^ (z >> 27)) * _MIX2) & MASK
    return z ^ (z >> 31)


def _fold(key: int, tag: int) -> int:
    return _mix64(key ^ _mix64((tag * _TAG_MULT + GAMMA) & MASK))


def node_tag(depth: int, side: int, retry: int) -> int:
    """Pack a recursion coordinate (depth, side in {0, 1}, retry index)
    into one substream tag.  Injective while retry < 2**32; a sampler
    would need decades to reach that many retries of one node."""
    return ((depth << 1) | side) << 32 | retry


class RngStream:
    """One independent random source; see module docstring for derivation."""

    __slots__ = ("key", "counter")

    def __init__(self, seed: int, stream: int = 0):
        key = _mix64((seed & MASK) ^ _SEED_SALT)
        self.key = _fold(key, stream & MASK)
        self.counter = 0

    @classmethod
    def _from_key(cls, key: int) -> "RngStream":
        obj = cls.__new__(cls)
        obj.key = key
        obj.counter = 0
        return obj

    def child(self, *tags: int) -> "RngStream":
        """Derive an independent substream keyed by the tag path."""
        key = self.key
        for t in tags:
            key = _fold(key, int(t) & MASK)
        return RngStream._from_key(key)

    def next_word(self) -> int:
        """Next raw 64-bit output."""
        self.counter += 1
        return _mix64((self.key + self.counter * GAMMA) & MASK)

    def words(self, n: int) -> np.ndarray:
        """Next n raw outputs as a uint64 array; identical to n calls of
        next_word()."""
        if n < _BULK_CUTOFF:
            out = np.empty(n, dtype=np.uint64)
            for i in range(n):
                out[i] = self.next_word()
            return out
        block = kernels.bits_block(self.key, self.counter, n)
        self.counter += n
        return block

    def uniform01(self) -> float:
        return (self.next_word() >> 11) * _INV53

    def uniforms(self, n: int) -> np.ndarray:
        w = self.words(n)
        return (w >> np.uint64(11)).astype(np.float64) * _INV53

    def randint_below(self, q: int) -> int:
        """Uniform integer in [0, q), exact via rejection on raw words."""
        if q <= 0:
            raise ValueError("q must be positive")
        threshold = (2 ** 64 // q) * q
        while True:
            w = self.next_word()
            if w < threshold:
                return w % q

    def poisson(self, mean: float) -> int:
        """Poisson draw; inversion for mean <= 10, PTRS rejection above.

        Both are exact samplers (up to the 2**-53 grid of the uniforms).
        """
        if not (isinstance(mean, (int, float)) and math.isfinite(mean)) or mean < 0:
            raise ValueError(f"poisson mean must be finite and >= 0, got {mean!r}")
        if mean == 0:
            return 0
        if mean <= 10.0:
            return self._poisson_inversion(mean)
        return self._poisson_ptrs(mean)

    def _poisson_inversion(self, mean: float) -> int:
        u = self.uniform01()
        p = math.exp(-mean)
        cdf = p
        k = 0
        # cdf -> 1 well before k = 1000; the cap only guards against the
        # accumulated cdf saturating a hair below the largest uniform.
        while u >= cdf and k < 1000:
            k += 1
            p *= mean / k
            cdf += p
        return k

    def _poisson_ptrs(self, mean: float) -> int:
        # Transformed rejection with squeeze (Hormann's PTRS), valid for
        # mean >= 10.
        b = 0.931 + 2.53 * math.sqrt(mean)
        a = -0.059 + 0.02483 * b
        inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
        v_r = 0.9277 - 3.6224 / (b - 2.0)
        log_mean = math.log(mean)
        while True:
            u = self.uniform01() - 0.5
            v = self.uniform01()
            us = 0.5 - abs(u)
            k = math.floor((2.0 * a / us + b) * u + mean + 0.43)
            if us >= 0.07 and v <= v_r:
                return int(k)
            if k < 0 or (us < 0.013 and v > us):
                continue
            if v == 0.0:
                return int(k)
            lhs = math.log(v * inv_alpha / (a / (us * us) + b))
            if lhs <= k * log_mean - mean - math.lgamma(k + 1.0):
                return int(k)

    def uniform_point(self, rect: Rect) -> Point:
        """One uniform point; x coordinate drawn first."""
        x = rect.x0 + rect.width * self.uniform01()
        y = rect.y0 + rect.height * self.uniform01()
        return Point(x, y)

    def uniform_points(self, rect: Rect, n: int) -> tuple[np.ndarray, np.ndarray]:
        """n uniform points as (xs, ys); the first n uniforms are the x
        coordinates, the next n the y coordinates."""
        u = self.uniforms(2 * n)
        xs = rect.x0 + rect.width * u[:n]
        ys = rect.y0 + rect.height * u[n:]
        return xs, ys

    def __repr__(self):
        return f"RngStream(key=0x{self.key:016x}, counter={self.counter})"
