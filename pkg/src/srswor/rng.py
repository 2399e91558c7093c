"""Seeded uniform variate sources with logical draw accounting.

Every sampler in this package pulls its randomness from a source object
defined here, so a run is reproducible from a single integer seed and the
cost of a run can be read off the source's counters afterwards.

The generator is splitmix64: 64-bit state advanced by a fixed odd constant,
output produced by a two-round xor-multiply mix.  It is tiny, passes the
usual statistical batteries, and has a published reference sequence that the
test suite pins down, so any refactor that changes the stream is caught.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class ScriptExhaustedError(RuntimeError):
    """Raised when a ScriptedSource is asked for more values than it holds."""


@dataclass
class DrawStats:
    """Counters of logical draws, one field per variate family.

    A logical draw is one request made by calling code: internal rejection
    retries inside a single request do not add to these counters.
    """

    uniform_int: int = 0
    uniform_real: int = 0
    bernoulli: int = 0
    binomial: int = 0
    beta: int = 0
    beta_binomial: int = 0
    hypergeometric: int = 0

    def copy(self) -> "DrawStats":
        return DrawStats(**{f.name: getattr(self, f.name) for f in fields(self)})

    def __sub__(self, other: "DrawStats") -> "DrawStats":
        return DrawStats(
            **{f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)}
        )

    def total(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self))


class UniformSource:
    """Common interface: two uniform primitives plus draw accounting.

    draw_count counts logical uniform draws (one per next_uniform_* call).
    stats holds per-family counters; the distribution layer increments the
    non-uniform families on top of the uniform ones counted here.
    """

    def __init__(self) -> None:
        self.draw_count = 0
        self.stats = DrawStats()

    def next_uniform_real(self) -> float:
        raise NotImplementedError

    def next_uniform_int(self, m: int) -> int:
        raise NotImplementedError


class RandomSource(UniformSource):
    """Deterministic splitmix64-backed source.

    The seed is taken modulo 2**64, so any Python integer (including
    negative ones) is accepted.  words_generated counts raw 64-bit outputs,
    which can exceed draw_count because bounded-integer rejection may burn
    more than one word per logical draw.
    """

    def __init__(self, seed: int) -> None:
        super().__init__()
        self._state = seed & _MASK64
        self.seed = seed
        self.words_generated = 0

    def _next_word(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        self.words_generated += 1
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_uniform_real(self) -> float:
        """Uniform float in [0, 1), 53-bit resolution."""
        self.draw_count += 1
        self.stats.uniform_real += 1
        return (self._next_word() >> 11) * (2.0 ** -53)

    def next_uniform_int(self, m: int) -> int:
        """Uniform integer in [1, m].

        Unbiased: takes the top bit_length(m-1) bits of a word and rejects
        values >= m, never reduces modulo m.  Counts as one logical draw no
        matter how many words the rejection loop consumes.
        """
        if m < 1:
            raise ValueError(f"uniform int bound must be >= 1, got {m}")
        self.draw_count += 1
        self.stats.uniform_int += 1
        shift = 64 - (m - 1).bit_length()
        state = self._state
        words = self.words_generated
        while True:
            state = (state + _GOLDEN) & _MASK64
            words += 1
            z = ((state ^ (state >> 30)) * _MIX1) & _MASK64
            z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
            r = (z ^ (z >> 31)) >> shift
            if r < m:
                self._state = state
                self.words_generated = words
                return r + 1


class ScriptedSource(UniformSource):
    """Replays a fixed script of uniform values, for hand-traced tests.

    Integer draws must be scripted as integers already inside [1, m] for the
    bound m they will be requested with; real draws as floats in [0, 1).
    Requesting a value past the end of the script raises
    ScriptExhaustedError, so a trace that consumes more randomness than the
    test anticipated fails loudly instead of silently recycling values.
    """

    def __init__(self, script) -> None:
        super().__init__()
        self._script = list(script)
        self._pos = 0

    def _take(self):
        if self._pos >= len(self._script):
            raise ScriptExhaustedError(
                f"script of length {len(self._script)} exhausted"
            )
        value = self._script[self._pos]
        self._pos += 1
        return value

    def remaining(self) -> int:
        return len(self._script) - self._pos

    def next_uniform_real(self) -> float:
        value = self._take()
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"scripted real draw got non-numeric {value!r}")
        value = float(value)
        if not 0.0 <= value < 1.0:
            raise ValueError(f"scripted real draw {value} outside [0, 1)")
        self.draw_count += 1
        self.stats.uniform_real += 1
        return value

    def next_uniform_int(self, m: int) -> int:
        if m < 1:
            raise ValueError(f"uniform int bound must be >= 1, got {m}")
        value = self._take()
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"scripted int draw got non-integer {value!r}")
        if not 1 <= value <= m:
            raise ValueError(f"scripted int draw {value} outside [1, {m}]")
        self.draw_count += 1
        self.stats.uniform_int += 1
        return value
