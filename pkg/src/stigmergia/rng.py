"""Portable deterministic random numbers for reproducible simulations.

The simulation needs bit-identical streams across platforms and across the
pure-Python and compiled execution paths, so we use a fixed, named generator
instead of whatever the host library ships: xoshiro256++ (Blackman & Vigna),
seeded from a single 64-bit integer expanded through splitmix64.  Both
algorithms are public domain and specified purely in terms of 64-bit
integer arithmetic.

Draw conventions (shared with the compiled kernel in ``_kernel.py``):

* ``next_uint64``   -- one raw generator step.
* ``uniform``       -- ``(next_uint64() >> 11) * 2**-53``, a double in [0, 1).
* ``randint_below`` -- unbiased integer in [0, n) by rejection sampling on
  the top of the 64-bit range; consumes one draw per attempt.
"""

from __future__ import annotations

_MASK64 = 0xFFFFFFFFFFFFFFFF

_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB

_INV_2_53 = 2.0 ** -53


def splitmix64_stream(seed: int, count: int) -> list[int]:
    """Return the first `count` splitmix64 outputs for a 64-bit seed."""
    state = seed & _MASK64
    out = []
    for _ in range(count):
        state = (state + _SM_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _SM_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _SM_MIX2) & _MASK64
        out.append(z ^ (z >> 31))
    return out


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256pp:
    """xoshiro256++ with the canonical splitmix64 seeding procedure.

    State is four 64-bit words, exposed via :meth:`state_array` so a run can
    hand the stream over to the compiled kernel and pick it back up later
    without losing determinism.
    """

    __slots__ = ("s",)

    def __init__(self, seed: int):
        s = splitmix64_stream(seed, 4)
        if s[0] == 0 and s[1] == 0 and s[2] == 0 and s[3] == 0:
            s[0] = 1  # all-zero state is the one fixed point; unreachable in practice
        self.s = s

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self.s
        result = (_rotl((s0 + s3) & _MASK64, 23) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Double in [0, 1) with 53 random mantissa bits."""
        return (self.next_uint64() >> 11) * _INV_2_53

    def randint_below(self, n: int) -> int:
        """Unbiased integer in [0, n) (rejection sampling; n >= 1)."""
        if n <= 0:
            raise ValueError("randint_below requires n >= 1")
        # Reject draws from the biased tail of the 2**64 range.
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % n

    def state_array(self):
        """Current state as a uint64 numpy array (shared with the kernel)."""
        import numpy as np

        return np.array(self.s, dtype=np.uint64)

    def set_state_array(self, arr) -> None:
        self.s = [int(x) for x in arr]
