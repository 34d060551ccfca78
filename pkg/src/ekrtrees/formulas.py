"""Closed-form counts, exact over the integers and rationals."""

from __future__ import annotations

import math
from fractions import Fraction

from .enumeration import fib_count
from .errors import PreconditionError


def binomial(n: int, k: int) -> int:
    """C(n, k), taken to be 0 when k < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def mainstar_size(n: int, r: int) -> int:
    """Size of a leaf-centred r-star in the depth-two claw with n leaves."""
    if r < 1 or n < r:
        raise PreconditionError("need 1 <= r <= n")
    return binomial(n - 1, r - 1) * 2 ** (r - 1) + binomial(n - 1, r - 2)


def kaclaw_root_count(n: int, k: int, a: int, b: int) -> int:
    """Independent sets of n-1 disjoint (k,a)-claws containing >= b claw roots."""
    if n < 1 or k < 1 or a < 1:
        raise PreconditionError("n, k, a must be positive")
    if not 0 <= b <= n - 1:
        raise PreconditionError("need 0 <= b <= n-1")
    with_root, without_root = fib_count(a - 1) ** k, fib_count(a) ** k
    return sum(binomial(n - 1, i) * with_root ** i * without_root ** (n - 1 - i)
               for i in range(b, n))


def limit_ratio(a: int) -> Fraction:
    """Limit of root-count over leaf-count on T^{n,k,a} as k grows."""
    if a < 2:
        raise PreconditionError("need a >= 2")
    return Fraction(fib_count(a - 1) + fib_count(a - 2), 2 * fib_count(a - 2))


def ekr_star_bound(n: int, r: int) -> int:
    if r < 1 or n < r:
        raise PreconditionError("need 1 <= r <= n")
    return binomial(n - 1, r - 1)


def fraction_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
