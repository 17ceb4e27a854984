"""Splittable counter-based pseudorandom generator.

All randomized constructions in this package are deterministic functions
of (parameters, seed); this keeps every witness replayable. The core is
SplitMix64, which is tiny, fast enough in pure Python at our scales, and
easy to reimplement elsewhere at the witness level.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed):
        self._state = seed & _MASK

    def next_u64(self):
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def split(self, key):
        """Independent child generator for the given integer key."""
        return SplitMix64(_mix((self._state ^ (key & _MASK)) + _GAMMA & _MASK))

    def randrange(self, n):
        """Uniform integer in [0, n), unbiased by rejection."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = _MASK - (_MASK + 1) % n
        while True:
            x = self.next_u64()
            if x <= limit:
                return x % n

    def random(self):
        return self.next_u64() / (_MASK + 1)

    def sample(self, seq, k):
        """k distinct elements of seq, by partial Fisher-Yates."""
        pool = list(seq)
        if k > len(pool):
            raise ValueError("sample size exceeds population")
        for i in range(k):
            j = i + self.randrange(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def choice(self, seq):
        return seq[self.randrange(len(seq))]
