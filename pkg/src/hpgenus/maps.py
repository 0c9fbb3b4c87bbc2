"""Maps CP^inf -> X for X in the genus of HP^inf, modelled by degree data.

A map is identified with its degree. X is presented by a construction
family: one value ``m`` used at all but finitely many primes plus values
``n_q`` at finitely many exceptional primes, with ``(n_q/q) = (X/q)``.
The minimal LCM over all presentations is ``T``; essential maps have
degrees exactly ``T`` times odd squares.

Orientation: all values in a family share one sign, the sign of the
invariant's base. For positive bases (including HP^inf itself) every value
and every degree is positive. A negative base forces ``m < 0``, and the
shared sign keeps each local component ``degree / n_q`` positive.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import NamedTuple, Optional, Union

from .arith import Sign, divisors, is_odd_square, lcm_of, legendre, prime_factors, require_prime, squarefree_part
from .errors import (
    IncompatibleFamilyError,
    InvalidFamilyError,
    NoEssentialMapError,
    NonIntegralError,
    NotRealizableError,
)
from .rector import RectorInvariant, admits_essential_map, evaluate

__all__ = [
    "ConstructionFamily",
    "LocalDegree",
    "DegreeSet",
    "TResult",
    "StandardMap",
    "realizes",
    "compute_T",
    "degree_set",
    "contains",
    "standard_map",
    "map_components",
    "glue",
    "factor_through_standard",
    "lambda_embedding_exists",
]


@dataclass(frozen=True)
class ConstructionFamily:
    cofinite_value: int
    exceptional: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        m = self.cofinite_value
        if m == 0:
            raise InvalidFamilyError("cofinite value must be nonzero")
        values = {require_prime(q): int(n) for q, n in sorted(dict(self.exceptional).items())}
        if 2 not in values:
            raise InvalidFamilyError("the prime 2 must be exceptional")
        for q, n in values.items():
            if n == 0 or (n > 0) != (m > 0):
                raise InvalidFamilyError(f"n_{q} = {n} does not share the sign of the cofinite value {m}")
            if n % q == 0:
                raise InvalidFamilyError(f"n_{q} = {n} is divisible by {q}")
        if values[2] % 4 != 1:
            raise InvalidFamilyError(f"n_2 = {values[2]} is not 1 mod 4")
        stray = prime_factors(m) - values.keys()
        if stray:
            raise InvalidFamilyError(f"primes {sorted(stray)} divide the cofinite value but are not exceptional")
        object.__setattr__(self, "exceptional", MappingProxyType(values))

    @property
    def sign(self) -> Sign:
        return Sign.PLUS if self.cofinite_value > 0 else Sign.MINUS

    def value_at(self, q: int) -> int:
        return self.exceptional.get(q, self.cofinite_value)

    def lcm(self) -> int:
        return lcm_of([abs(self.cofinite_value), *(abs(n) for n in self.exceptional.values())])

    def __hash__(self):
        return hash((self.cofinite_value, tuple(self.exceptional.items())))

    def __eq__(self, other):
        if not isinstance(other, ConstructionFamily):
            return NotImplemented
        return (self.cofinite_value, dict(self.exceptional)) == (other.cofinite_value, dict(other.exceptional))

    def __repr__(self):
        ex = ", ".join(f"{q}: {n}" for q, n in self.exceptional.items())
        return f"ConstructionFamily(m={self.cofinite_value}, exceptional={{{ex}}})"


@dataclass(frozen=True)
class LocalDegree:
    """Degree of a map into a localization; ``prime=None`` marks the cofinite block."""

    value: Fraction
    prime: Optional[int] = None

    def __post_init__(self):
        value = Fraction(self.value)
        if self.prime is not None and value.denominator % self.prime == 0:
            raise NonIntegralError(f"{value} is not a {self.prime}-local integer")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True)
class DegreeSet:
    """Degrees of essential maps: ``sign * T * (odd square)``."""

    T: int
    sign: Sign = Sign.PLUS

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("T must be a positive integer")

    def __contains__(self, n: int) -> bool:
        return contains(self, n)

    def members(self, limit: int) -> Iterator[int]:
        """Members with absolute value at most ``limit``, increasing in size."""
        for odd in itertools.count(1, 2):
            size = self.T * odd * odd
            if size > limit:
                return
            yield int(self.sign) * size

    def describe(self) -> str:
        head = "" if self.sign is Sign.PLUS else "-"
        return f"{head}{self.T} * (odd)^2"


class TResult(NamedTuple):
    T: int
    certificate: ConstructionFamily


@dataclass(frozen=True)
class StandardMap:
    degree: int
    components: Mapping[int, LocalDegree]
    cofinite: LocalDegree
    family: ConstructionFamily


def _require_essential(inv: RectorInvariant) -> Sign:
    if not admits_essential_map(inv):
        raise NoEssentialMapError(f"{inv!r} admits no essential map from CP^inf (twist is -1)")
    return Sign.PLUS if inv.base > 0 else Sign.MINUS


def realizes(family: ConstructionFamily, inv: RectorInvariant) -> bool:
    for q, n in family.exceptional.items():
        if legendre(n, q) != evaluate(inv, q):
            return False
    # off the exceptional set the family uses m; it matches iff the characters coincide
    if inv.twist is not Sign.PLUS or squarefree_part(family.cofinite_value) != inv.base:
        return False
    return all(q in family.exceptional for q in inv.overrides)


def _local_value(inv: RectorInvariant, q: int, candidates, sign: Sign) -> Optional[int]:
    want = evaluate(inv, q)
    for n in candidates:
        v = int(sign) * n
        if n % q == 0 or (q == 2 and v % 4 != 1):
            continue
        if legendre(v, q) == want:
            return v
    return None


def _family_within(inv: RectorInvariant, L: int, sign: Sign) -> Optional[ConstructionFamily]:
    """Lexicographically least realizing family whose values all divide ``L``."""
    divs = divisors(L)
    for a in divs:
        if squarefree_part(int(sign) * a) != inv.base:
            continue
        primes = {2} | prime_factors(a) | set(inv.overrides)
        chosen = {}
        for q in sorted(primes):
            v = _local_value(inv, q, divs, sign)
            if v is None:
                break
            chosen[q] = v
        else:
            return ConstructionFamily(int(sign) * a, chosen)
    return None


def compute_T(inv: RectorInvariant) -> TResult:
    """Minimal LCM over realizing families, with the least family attaining it.

    Every value of a family divides its LCM, so feasibility of a candidate
    ``L`` is a finite divisor check; candidates are scanned in increasing
    order up to a bound that is always feasible.
    """
    sign = _require_essential(inv)
    base = abs(inv.base)
    bound_values = [base]
    for q in {2} | prime_factors(base) | set(inv.overrides):
        v = _local_value(inv, q, itertools.count(1), sign)
        bound_values.append(abs(v))
    bound = lcm_of(bound_values)
    for L in range(1, bound + 1):
        family = _family_within(inv, L, sign)
        if family is not None:
            assert family.lcm() == L and realizes(family, inv)
            return TResult(L, family)
    raise AssertionError(f"no realizing family up to the feasible bound {bound}")


def degree_set(inv: RectorInvariant) -> DegreeSet:
    sign = _require_essential(inv)
    return DegreeSet(compute_T(inv).T, sign)


def contains(ds: DegreeSet, n: int) -> bool:
    step = int(ds.sign) * ds.T
    if n == 0 or n % step:
        return False
    return is_odd_square(n // step)


def map_components(family: ConstructionFamily, degree: int):
    """Local degrees ``degree / n_q`` of a map of the given global degree."""
    components = {q: LocalDegree(Fraction(degree, n), q) for q, n in family.exceptional.items()}
    return components, LocalDegree(Fraction(degree, family.cofinite_value))


def standard_map(inv: RectorInvariant) -> StandardMap:
    """The map ``i_X`` of degree ``T`` (signed by orientation) and its local pieces."""
    sign = _require_essential(inv)
    T, family = compute_T(inv)
    degree = int(sign) * T
    components, cofinite = map_components(family, degree)
    return StandardMap(degree, MappingProxyType(components), cofinite, family)


def _as_fraction(value: Union[LocalDegree, Fraction, int]) -> Fraction:
    return value.value if isinstance(value, LocalDegree) else Fraction(value)


def glue(family: ConstructionFamily, locals: Mapping[int, Union[LocalDegree, Fraction, int]], cofinite_local) -> int:
    """Degree of the map glued from local data, checking ``n_q * deg_q`` agrees everywhere."""
    if set(locals) != set(family.exceptional):
        raise InvalidFamilyError(
            f"local degrees given at {sorted(locals)} but the exceptional primes are {sorted(family.exceptional)}"
        )
    first = None
    for q in sorted(family.exceptional):
        value = _as_fraction(locals[q])
        if value.denominator % q == 0:
            raise NonIntegralError(f"local degree {value} at {q} is not {q}-local")
        D = family.exceptional[q] * value
        if first is None:
            first, target = q, D
        elif D != target:
            raise IncompatibleFamilyError(first, q, f"n_{first} * deg_{first} = {target} but n_{q} * deg_{q} = {D}")
    D = family.cofinite_value * _as_fraction(cofinite_local)
    if D != target:
        raise IncompatibleFamilyError(first, "cofinite", f"n_{first} * deg_{first} = {target} but m * deg_L = {D}")
    if D.denominator != 1:
        raise NonIntegralError(f"glued degree {D} is not an integer")
    return int(D)


def factor_through_standard(inv: RectorInvariant, f_degree: int) -> int:
    """Degree ``g`` of the self-map with ``f = g o i_X``; always an odd square."""
    ds = degree_set(inv)
    if not contains(ds, f_degree):
        raise NotRealizableError(f"{f_degree} is not a degree of an essential map (degrees are {ds.describe()})")
    g = f_degree // (int(ds.sign) * ds.T)
    assert is_odd_square(g)
    return g


def lambda_embedding_exists(inv: RectorInvariant) -> bool:
    """Whether K(X) embeds in K(CP^inf) as a sub-lambda-ring."""
    return bool(admits_essential_map(inv))
