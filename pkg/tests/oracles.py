"""Independent reference computations used by the test-suite.

Nothing here calls the code paths it is used to check: symbols come from
enumerating squares, minimal LCMs from enumerating families outright.
"""

import math
import random
from functools import lru_cache

SMALL_PRIMES = [p for p in range(2, 1001) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@lru_cache(maxsize=None)
def squares_mod(n):
    return frozenset(x * x % n for x in range(n))


def brute_symbol(k, p):
    """Quadratic symbol by enumerating squares (mod 8 for p = 2)."""
    assert k % p
    if p == 2:
        odd_squares = {x * x % 8 for x in range(1, 8, 2)}
        return 1 if k % 8 in odd_squares else -1
    return 1 if k % p in squares_mod(p) else -1


def brute_squarefree(k):
    sign = 1 if k > 0 else -1
    n = abs(k)
    for t in range(math.isqrt(n), 0, -1):
        if n % (t * t) == 0:
            return sign * (n // (t * t))


def raw_value(base, twist, overrides, p):
    """Value of an invariant at ``p`` straight from its presentation."""
    if p in overrides:
        return overrides[p]
    return twist * brute_symbol(base, p)


def prime_divisors(n):
    return {p for p in SMALL_PRIMES if n % p == 0} if n else set()


def brute_min_lcm(base, overrides, bound=100):
    """Least LCM over every realizing family with all ``|values| <= bound``.

    Families use the exceptional set {2} + primes(m) + override primes.
    Enlarging it never lowers the LCM, since any extra prime can reuse ``m``.
    Returns None when no family within the bound realizes the invariant.
    """
    sign = 1 if base > 0 else -1
    best = _greedy_upper_bound(base, overrides, sign, bound)
    for a in range(1, bound + 1):
        if best is not None and a >= best:
            break  # the LCM is at least |m|
        m = sign * a
        if brute_squarefree(m) != base:
            continue
        primes = {2} | prime_divisors(a) | set(overrides)
        reachable = {a}
        for q in sorted(primes):
            options = _options(q, raw_value(base, 1, overrides, q), sign, bound)
            reachable = {math.lcm(l, n) for l in reachable for n in options}
            if best is not None:
                reachable = {l for l in reachable if l <= best}
            if not reachable:
                break
        if reachable:
            cand = min(reachable)
            best = cand if best is None else min(best, cand)
    return best


@lru_cache(maxsize=None)
def _options(q, want, sign, bound):
    return [
        n
        for n in range(1, bound + 1)
        if n % q and (q != 2 or (sign * n) % 4 == 1) and brute_symbol(sign * n, q) == want
    ]


def _greedy_upper_bound(base, overrides, sign, bound):
    """LCM of the family using m = base and the smallest option at each prime."""
    a = abs(base)
    if a > bound:
        return None
    total = a
    for q in {2} | prime_divisors(a) | set(overrides):
        options = _options(q, raw_value(base, 1, overrides, q), sign, bound)
        if not options:
            return None
        total = math.lcm(total, options[0])
    return total


SQUAREFREE_BASES = [d for d in range(-10, 11) if d and brute_squarefree(d) == d]


def random_presentation(rng, twist=None, max_prime=13):
    """Random (base, twist, overrides) with overrides on primes <= max_prime."""
    base = rng.choice(SQUAREFREE_BASES)
    twist = twist if twist is not None else rng.choice((1, -1))
    primes = [p for p in SMALL_PRIMES if p <= max_prime]
    overrides = {p: rng.choice((1, -1)) for p in primes if rng.random() < 0.35}
    for p in prime_divisors(base):
        overrides.setdefault(p, rng.choice((1, -1)))
    return base, twist, overrides


def corpus(n=60, seed=20240611, twist=None):
    rng = random.Random(seed)
    return [random_presentation(rng, twist) for _ in range(n)]


def poly_mul(a, b, n, m=None):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return [c % m for c in out] if m else out


def psi_generator(r, n, m=None):
    """Coefficients of (1+x)^r - 1 by the binomial theorem."""
    coeffs = [math.comb(r, j) if 1 <= j <= r else 0 for j in range(n)]
    return [c % m for c in coeffs] if m else coeffs


def psi_series(r, coeffs, n, m=None):
    """psi^r of sum c_j x^j: expand sum c_j ((1+x)^r - 1)^j term by term."""
    g = psi_generator(r, n, m)
    out = [0] * n
    power = [1] + [0] * (n - 1)
    for c in coeffs[:n]:
        out = [o + c * q for o, q in zip(out, power)]
        power = poly_mul(power, g, n, m)
    return [c % m for c in out] if m else out


def naturality_coefficient_oracle(p, k, sign, higher):
    """Coefficients of x^(p+1) on both sides, mod p^2, computed from lists."""
    n, m = p + 2, p * p
    f = [0] * n
    f[2] = k
    for j, c in higher.items():
        if j < n:
            f[j] += c
    f = [c % m for c in f]
    # left: 2*sign*p * f^((p+1)/2)
    power = [1] + [0] * (n - 1)
    for _ in range((p + 1) // 2):
        power = poly_mul(power, f, n, m)
    left = 2 * sign * p * power[p + 1] % m
    right = psi_series(p, f, n, m)[p + 1]
    return left, right
