"""Portable pseudorandom numbers: xoshiro256** seeded through SplitMix64.

Both algorithms are public domain (Blackman & Vigna). Every step is plain
64-bit integer arithmetic, so any implementation of the same recipe
reproduces these streams bit for bit:

* seed: the integer seed reduced mod 2**64 initialises a SplitMix64 state,
  whose first four outputs become the xoshiro256** state words.
* uniform: ``(next() >> 11) * 2**-53``, a double in [0, 1).
* normal: Box-Muller on two consecutive uniforms u1, u2:
  ``sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``, then the matching ``sin`` value is
  returned by the following call.
"""

import math

_MASK = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


def _splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** generator with uniform and Gaussian draws."""

    def __init__(self, seed):
        sm = int(seed) & _MASK
        s = []
        for _ in range(4):
            sm, out = _splitmix64(sm)
            s.append(out)
        self._s = s
        self._spare = None

    @classmethod
    def from_state(cls, state):
        """Generator with the four state words given directly."""
        rng = cls(0)
        rng._s = [int(w) & _MASK for w in state]
        return rng

    def next_u64(self):
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self):
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def normal(self):
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self.random()
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        theta = 2.0 * math.pi * u2
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)
