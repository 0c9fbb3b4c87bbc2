"""Exact number theory used throughout the package.

The symbol at the prime 2 follows the mod-8 convention: an odd ``k`` has
symbol +1 exactly when ``k`` is a square modulo 8, i.e. ``k = 1 (mod 8)``.
This is deliberately *not* the Kronecker symbol.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable

from .errors import DivisibilityError, EmptySetError, NotPrimeError, ZeroError

__all__ = [
    "Sign",
    "is_prime",
    "require_prime",
    "primes_up_to",
    "factorize",
    "prime_factors",
    "legendre",
    "euler_criterion",
    "squarefree_part",
    "is_odd_square",
    "lcm_of",
    "divisors",
]


class Sign(enum.IntEnum):
    MINUS = -1
    PLUS = 1

    def __mul__(self, other):
        if isinstance(other, Sign):
            return Sign(int(self) * int(other))
        return int(self) * other

    __rmul__ = __mul__

    def __neg__(self):
        return Sign(-int(self))

    def __str__(self):
        return "+1" if self is Sign.PLUS else "-1"

    @classmethod
    def parse(cls, value) -> "Sign":
        """Accept ``1``, ``-1``, ``"+1"``, ``"-1"``, ``"+"`` or ``"-"``."""
        if isinstance(value, str):
            text = value.strip().replace("−", "-")
            if text in ("+", "-"):
                text += "1"
            try:
                value = int(text)
            except ValueError:
                raise ValueError(f"not a sign: {value!r}") from None
        if isinstance(value, bool) or value not in (1, -1):
            raise ValueError(f"not a sign: {value!r}")
        return cls(value)


# Witnesses making Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _MR_LIMIT:
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        for a in _MR_BASES:
            x = pow(a, d, n)
            if x in (1, n - 1):
                continue
            for _ in range(s - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True
    # beyond the deterministic range fall back to exact trial division
    return all(n % f for f in range(43, math.isqrt(n) + 1, 2))


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not a prime")
    return p


def primes_up_to(bound: int) -> list[int]:
    """All primes ``p <= bound`` by a plain sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division."""
    if n == 0:
        raise ZeroError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> frozenset[int]:
    return frozenset(factorize(n))


def _check_symbol_args(k: int, p: int) -> None:
    if k == 0:
        raise ZeroError("symbol undefined for k = 0")
    require_prime(p)
    if k % p == 0:
        raise DivisibilityError(f"{p} divides {k}")


def legendre(k: int, p: int) -> Sign:
    """Quadratic symbol ``(k/p)`` for a prime ``p`` not dividing ``k``.

    Odd ``p`` is handled by the reciprocity algorithm (no exponentiation),
    so :func:`euler_criterion` is an independent check of it.
    """
    _check_symbol_args(k, p)
    if p == 2:
        return Sign.PLUS if k % 8 == 1 else Sign.MINUS
    a, m, acc = k % p, p, 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                acc = -acc
        if a % 4 == 3 and m % 4 == 3:
            acc = -acc
        a, m = m % a, a
    return Sign(acc)


def euler_criterion(k: int, p: int) -> Sign:
    """The sign congruent to ``k**((p-1)/2)`` modulo an odd prime ``p``."""
    _check_symbol_args(k, p)
    if p == 2:
        raise ValueError("Euler's criterion needs an odd prime")
    r = pow(k, (p - 1) // 2, p)
    if r == 1:
        return Sign.PLUS
    assert r == p - 1, "Euler criterion residue must be +-1"
    return Sign.MINUS


def squarefree_part(k: int) -> int:
    """The squarefree ``d`` with ``k = d * t**2``, carrying the sign of ``k``."""
    if k == 0:
        raise ZeroError("squarefree part of 0 is undefined")
    d = 1
    for p, e in factorize(k).items():
        if e % 2:
            d *= p
    return d if k > 0 else -d


def is_odd_square(n: int) -> bool:
    if n <= 0 or n % 2 == 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def lcm_of(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise EmptySetError("lcm of an empty set")
    for v in values:
        if v <= 0:
            raise ValueError(f"lcm_of expects positive integers, got {v}")
    return math.lcm(*values)


def divisors(n: int) -> list[int]:
    """Positive divisors of ``|n|`` in increasing order."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)
