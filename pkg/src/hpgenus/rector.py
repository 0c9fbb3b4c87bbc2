"""Finitely presented Rector invariants of spaces in the genus of HP^inf.

An invariant is stored as ``(base, twist, overrides)``. At a prime ``p`` its
value is ``overrides[p]`` when present, otherwise ``twist * legendre(base, p)``.
Instances are always held in canonical form:

* ``base`` is squarefree;
* every prime dividing ``base`` (where the default is undefined) is overridden;
* no override repeats the default value.

Two presentations take the same value at every prime exactly when their
canonical forms coincide. This relies on the classical fact that distinct
squarefree integers give quadratic characters differing at infinitely many
primes, and that no quadratic character is cofinitely ``-1``. The tests
exercise that fact by search; it is not proved here.

Only twist ``+1`` invariants are targets of essential maps from CP^inf;
twist ``-1`` exists to represent the spaces that are not.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Optional

from .arith import Sign, legendre, prime_factors, require_prime, squarefree_part
from .errors import CoverageError, NoEssentialMapError, ZeroError

__all__ = [
    "RectorInvariant",
    "GenusSpace",
    "EssentialMapDecision",
    "make_invariant",
    "HP_INFINITY",
    "evaluate",
    "equivalent",
    "has_maximal_torus",
    "admits_essential_map",
    "localization_agreement",
]


def _default_sign(base: int, twist: Sign, p: int) -> Optional[Sign]:
    if base % p == 0:
        return None
    return twist * legendre(base, p)


@dataclass(frozen=True)
class RectorInvariant:
    base: int
    twist: Sign = Sign.PLUS
    overrides: Mapping[int, Sign] = field(default_factory=dict)

    def __post_init__(self):
        if self.base == 0:
            raise ZeroError("base must be a nonzero integer")
        base = squarefree_part(self.base)
        twist = Sign.parse(self.twist)
        raw = {require_prime(p): Sign.parse(s) for p, s in dict(self.overrides).items()}
        missing = prime_factors(base) - raw.keys()
        if missing:
            raise CoverageError(missing)
        kept = {p: s for p, s in sorted(raw.items()) if _default_sign(base, twist, p) != s}
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "twist", twist)
        object.__setattr__(self, "overrides", MappingProxyType(kept))

    def __hash__(self):
        return hash((self.base, self.twist, tuple(self.overrides.items())))

    def __eq__(self, other):
        if not isinstance(other, RectorInvariant):
            return NotImplemented
        return self._key() == other._key()

    def _key(self):
        return (self.base, int(self.twist), tuple(sorted(self.overrides.items())))

    def __repr__(self):
        ov = ", ".join(f"{p}: {s}" for p, s in self.overrides.items())
        return f"RectorInvariant(base={self.base}, twist={self.twist}, overrides={{{ov}}})"

    def __call__(self, p: int) -> Sign:
        return evaluate(self, p)


def make_invariant(base: int, twist=Sign.PLUS, overrides: Optional[Mapping[int, object]] = None) -> RectorInvariant:
    """Build the canonical invariant; raises :class:`CoverageError` if undefined somewhere."""
    return RectorInvariant(base, twist, dict(overrides or {}))


HP_INFINITY = RectorInvariant(1)


@dataclass(frozen=True)
class GenusSpace:
    invariant: RectorInvariant
    label: Optional[str] = None

    def __str__(self):
        return self.label or repr(self.invariant)


def evaluate(inv: RectorInvariant, p: int) -> Sign:
    require_prime(p)
    if p in inv.overrides:
        return inv.overrides[p]
    return inv.twist * legendre(inv.base, p)


def equivalent(a: RectorInvariant, b: RectorInvariant) -> bool:
    return a._key() == b._key()


def has_maximal_torus(inv: RectorInvariant) -> bool:
    return equivalent(inv, HP_INFINITY)


@dataclass(frozen=True)
class EssentialMapDecision:
    """Outcome of the essential-map test.

    When ``exists`` is true, ``witness`` is a nonzero integer whose symbol
    agrees with the invariant at every prime outside ``exceptional``.
    """

    exists: bool
    witness: Optional[int] = None
    exceptional: frozenset = frozenset()

    def __bool__(self):
        return self.exists


def admits_essential_map(inv: RectorInvariant) -> EssentialMapDecision:
    if inv.twist is not Sign.PLUS:
        return EssentialMapDecision(False)
    exceptional = frozenset(inv.overrides) | prime_factors(2 * inv.base)
    return EssentialMapDecision(True, inv.base, exceptional)


def localization_agreement(inv: RectorInvariant) -> frozenset:
    """Finite complement of a cofinite prime set on which X and HP^inf agree.

    The prime 2 is always included; the set is not claimed to be minimal.
    """
    decision = admits_essential_map(inv)
    if not decision:
        raise NoEssentialMapError("twist is -1: the invariant agrees with no quadratic character cofinitely")
    return decision.exceptional
