"""
xorshift64* pseudo-random generator.

Small, fully specified and easy to port, so generated arenas are
byte-identical across platforms and implementations:

    x ^= x >> 12
    x ^= x << 25   (mod 2^64)
    x ^= x >> 27
    output = x * 0x2545F4914F6CDD1D  (mod 2^64)

A zero seed (a fixed point of the shift steps) is replaced by
0x9E3779B97F4A7C15. Seed 1 yields 0x47E4CE4B896CDD1D first.
"""

MASK64 = (1 << 64) - 1
MULTIPLIER = 0x2545F4914F6CDD1D
ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15


class XorShift64Star:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned value, got {seed}")
        self.state = seed or ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, n: int) -> int:
        """Uniform-ish draw from [0, n) by multiply-shift."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        return (self.next_u64() * n) >> 64

    def between(self, low: int, high: int) -> int:
        """Draw from the closed range [low, high]."""
        return low + self.below(high - low + 1)
