"""Exact combinatorics behind every deletion-channel quantity.

Bit strings live in a single machine word as a (value, length) pair, most
significant bit first, so the bit at index 0 is the first transmitted bit.
Embedding counts and binomial coefficients are exact integers; probability
weights are binary64, with an exact rational companion whenever the
deletion probability is itself given as a Fraction.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError

MAX_BITSTRING_LENGTH = 31
MAX_BINOMIAL_N = 64

# closed-form weights switch to log-gamma evaluation above this block length
_EXACT_COMB_LIMIT = 64


@dataclass(frozen=True, order=True)
class BitString:
    """A binary string of length at most 31, packed as (value, length)."""

    value: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= MAX_BITSTRING_LENGTH:
            raise ParameterError(
                f"bit string length {self.length} outside [0, {MAX_BITSTRING_LENGTH}]")
        if not 0 <= self.value < (1 << self.length):
            raise ParameterError(
                f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_bits(cls, bits):
        """Parse a literal like '011'; the empty string is the empty label."""
        if set(bits) - {"0", "1"}:
            raise ParameterError(f"invalid bit literal {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    def bit(self, i):
        """Bit at position i, counted from the first transmitted bit."""
        if not 0 <= i < self.length:
            raise ParameterError(f"bit index {i} outside [0, {self.length})")
        return (self.value >> (self.length - 1 - i)) & 1

    def bits(self):
        return format(self.value, f"0{self.length}b") if self.length else ""

    def complement(self):
        return BitString(self.value ^ ((1 << self.length) - 1), self.length)

    def __str__(self):
        return self.bits()


EMPTY = BitString(0, 0)


@dataclass(frozen=True)
class Weight:
    """A probability with an optional exact rational form."""

    value: float
    exact: Fraction | None = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ParameterError(f"probability {self.value} outside [0, 1]")
        if self.exact is not None and abs(float(self.exact) - self.value) > 1e-15:
            raise ParameterError("exact form disagrees with float value")


def embedding_count(a, b):
    """Number of ways b occurs as a subsequence of a.

    Equivalently: how many deletion patterns of size a.length - b.length
    leave exactly b behind. Dynamic program over prefix pairs, exact
    integer arithmetic, O(a.length * b.length).
    """
    if b.length > a.length:
        raise ParameterError("b cannot be longer than a")
    m = b.length
    ways = [1] + [0] * m
    for i in range(a.length):
        bit_a = (a.value >> (a.length - 1 - i)) & 1
        for j in range(m - 1, -1, -1):
            if ((b.value >> (m - 1 - j)) & 1) == bit_a:
                ways[j + 1] += ways[j]
    return ways[m]


def binomial(n, k):
    """Exact C(n, k); zero outside 0 <= k <= n."""
    if n < 0:
        raise ParameterError("n must be non-negative")
    if n > MAX_BINOMIAL_N:
        raise ParameterError(f"n={n} beyond supported range {MAX_BINOMIAL_N}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _check_counts(L, R):
    if L < 0 or R < 0 or R > L:
        raise ParameterError(f"need 0 <= R <= L, got L={L}, R={R}")


def _endpoint_weight(L, R, d):
    # 0^0 = 1 convention at the closed-interval endpoints
    if d == 0:
        hit = R == L
    else:
        hit = R == 0
    return Weight(1.0 if hit else 0.0, Fraction(1 if hit else 0))


def binomial_weight(L, R, d):
    """Probability that exactly R of L bits survive IID deletion at rate d.

    p(L, R) = C(L, R) d^(L-R) (1-d)^R with the 0^0 = 1 convention at the
    endpoints. An exact rational form is attached when d is a Fraction.
    """
    _check_counts(L, R)
    if isinstance(d, Fraction):
        if not 0 <= d <= 1:
            raise ParameterError(f"d={d} outside [0, 1]")
        if d == 0 or d == 1:
            return _endpoint_weight(L, R, d)
        exact = math.comb(L, R) * d ** (L - R) * (1 - d) ** R
        return Weight(float(exact), exact)
    d = float(d)
    if not 0.0 <= d <= 1.0:
        raise ParameterError(f"d={d} outside [0, 1]")
    if d == 0.0 or d == 1.0:
        return _endpoint_weight(L, R, d)
    return Weight(min(_binomial_weight_value(L, R, d), 1.0))


def _binomial_weight_value(L, R, d):
    if L <= _EXACT_COMB_LIMIT:
        return math.comb(L, R) * d ** (L - R) * (1.0 - d) ** R
    log_p = (math.lgamma(L + 1) - math.lgamma(R + 1) - math.lgamma(L - R + 1)
             + (L - R) * math.log(d) + R * math.log1p(-d))
    return math.exp(log_p)


def binomial_weight_tilde(L, D, d):
    """Deleted-count form: probability that D of L bits are deleted."""
    _check_counts(L, D)
    return binomial_weight(L, L - D, d)


def pascal_weight(L, D, d):
    """Probability that a run of L kept slots precedes the (D+1)-th deletion.

    d * C(L, D) d^D (1-d)^(L-D); over L >= D these sum to one, so they
    weight the block-length distribution seen between revealed deletions.
    Degenerate rates d in {0, 1} are rejected.
    """
    _check_counts(L, D)
    if isinstance(d, Fraction):
        if not 0 < d < 1:
            raise ParameterError(f"d={d} must lie strictly inside (0, 1)")
        exact = d * math.comb(L, D) * d ** D * (1 - d) ** (L - D)
        return Weight(float(exact), exact)
    d = float(d)
    if not 0.0 < d < 1.0:
        raise ParameterError(f"d={d} must lie strictly inside (0, 1)")
    return Weight(min(d * _binomial_weight_value(L, L - D, d), 1.0))
