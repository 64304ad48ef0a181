"""Integer partitions and their basic statistics.

A partition is represented as a plain tuple of weakly decreasing positive
integers; the empty tuple is the unique partition of 0.  Tuples give
structural equality, a total order and cheap hashing, which matters because
partitions are dictionary keys throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

Partition = tuple[int, ...]

_enum_cache: dict[tuple[int, int], tuple[Partition, ...]] = {}


def check_partition(parts) -> Partition:
    """Validate and canonicalize an iterable of parts into a Partition.

    Raises ValueError unless the parts are positive integers in weakly
    decreasing order.
    """
    lam = tuple(parts)
    for i, p in enumerate(lam):
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise ValueError(f"parts must be positive integers, got {lam!r}")
        if i and lam[i - 1] < p:
            raise ValueError(f"parts must be weakly decreasing, got {lam!r}")
    return lam


def parse_partition(text: str) -> Partition:
    """Parse the comma-separated text form, e.g. "3,1"; "" is the empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse partition from {text!r}") from None
    return check_partition(parts)


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)


def weight(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


def multiplicities(lam: Partition) -> dict[int, int]:
    """Map part value -> multiplicity."""
    m: dict[int, int] = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def enumerate_partitions(n: int, min_part: int = 1) -> list[Partition]:
    """All partitions of n with every part >= min_part, reverse-lexicographic.

    Returns [()] for n = 0.  The order puts (n) first and the all-min_part
    partition last, which is the canonical order used everywhere downstream.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if min_part < 1:
        raise ValueError("min_part must be positive")
    return list(_partitions_cached(n, min_part))


def _partitions_cached(n: int, min_part: int) -> tuple[Partition, ...]:
    key = (n, min_part)
    got = _enum_cache.get(key)
    if got is None:
        got = tuple(_gen_partitions(n, min_part, n))
        _enum_cache[key] = got
    return got


def _gen_partitions(n, min_part, max_part):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in _gen_partitions(n - first, min_part, first):
            yield (first,) + rest


def z_factor(mu: Partition) -> int:
    """The centralizer order prod_i i^{m_i} * m_i!."""
    z = 1
    for i, m in multiplicities(mu).items():
        z *= i**m * factorial(m)
    return z


def epsilon(mu: Partition) -> int:
    """Sign (-1)^(|mu| - l(mu))."""
    return -1 if (sum(mu) - len(mu)) % 2 else 1


def u_factor(mu: Partition) -> int:
    """Number of distinct rearrangements of mu: l(mu)! / prod_i m_i!."""
    u = factorial(len(mu))
    for m in multiplicities(mu).values():
        u //= factorial(m)
    return u


def mult_factorial(mu: Partition) -> int:
    """prod_i m_i(mu)!."""
    out = 1
    for m in multiplicities(mu).values():
        out *= factorial(m)
    return out


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    cols = [0] * lam[0]
    for p in lam:
        for j in range(p):
            cols[j] += 1
    return tuple(cols)


def power_sum_value(k: int, v: Partition) -> int:
    """p_k evaluated at the integer vector v."""
    return sum(x**k for x in v)


def format_rational(q) -> str:
    """Text form of an exact rational: "num/den", denominator omitted when 1."""
    q = Fraction(q)
    return str(q)


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
