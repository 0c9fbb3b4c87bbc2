"""Truncated power series models of K(CP^inf) and K(X) for X in genus(HP^inf).

``K(CP^inf) = Z[[x]]`` with ``x = b*xi``; the monomial ``x**j`` sits in
filtration ``2j``. On the X side ``K(X) = Z[[y]]`` with ``y = b**2 * u_X``
and ``y**j`` in filtration ``4j``. Working modulo filtration ``2p + 3``
on CP^inf therefore means truncating at x-degree ``p + 2``.

The generator ``u_X`` is one fixed choice; nothing here depends on it being
canonical.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Optional

from .arith import Sign, require_prime
from .errors import ConstantTermError, DivisibilityError, EvenPrimeError, MismatchError, NoSolutionError, ZeroError

__all__ = [
    "TruncatedSeries",
    "AdamsImageX",
    "CP_FILTRATION_PER_DEGREE",
    "X_FILTRATION_PER_DEGREE",
    "adams_on_CP",
    "pullback",
    "adams_on_X",
    "naturality_sides",
    "check_naturality",
    "rector_congruence_sign",
]

CP_FILTRATION_PER_DEGREE = 2
X_FILTRATION_PER_DEGREE = 4


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of ``R[x]/(x**order)`` with ``R = Z`` or ``Z/modulus``."""

    coefficients: tuple
    order: int
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("truncation order must be positive")
        if self.modulus is not None and self.modulus < 1:
            raise ValueError("modulus must be a positive integer")
        coeffs = [int(c) for c in self.coefficients[: self.order]]
        coeffs += [0] * (self.order - len(coeffs))
        if self.modulus is not None:
            coeffs = [c % self.modulus for c in coeffs]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int, modulus: Optional[int] = None) -> "TruncatedSeries":
        coeffs = [0] * order
        for j, c in terms.items():
            if j < 0:
                raise ValueError("negative exponent")
            if j < order:
                coeffs[j] += c
        return cls(tuple(coeffs), order, modulus)

    @classmethod
    def zero(cls, order: int, modulus: Optional[int] = None) -> "TruncatedSeries":
        return cls((), order, modulus)

    @classmethod
    def one(cls, order: int, modulus: Optional[int] = None) -> "TruncatedSeries":
        return cls((1,), order, modulus)

    @classmethod
    def gen(cls, order: int, modulus: Optional[int] = None) -> "TruncatedSeries":
        return cls((0, 1), order, modulus)

    def __getitem__(self, j: int) -> int:
        return self.coefficients[j] if 0 <= j < self.order else 0

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if (self.order, self.modulus) != (other.order, other.modulus):
            raise MismatchError(
                f"order/modulus mismatch: ({self.order}, {self.modulus}) vs ({other.order}, {other.modulus})"
            )

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, int) and not isinstance(other, bool):
            return TruncatedSeries((other,), self.order, self.modulus)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)), self.order, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coefficients), self.order, self.modulus)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return TruncatedSeries(tuple(other * c for c in self.coefficients), self.order, self.modulus)
        self._check(other)
        n = self.order
        out = [0] * n
        a, b = self.coefficients, other.coefficients
        for i, ai in enumerate(a):
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return TruncatedSeries(tuple(out), n, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = TruncatedSeries.one(self.order, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute ``inner`` for the variable; ``inner`` must lack a constant term."""
        self._check(inner)
        if inner[0] != 0:
            raise ConstantTermError("substituted series must have zero constant term")
        result = TruncatedSeries.zero(self.order, self.modulus)
        for c in reversed(self.coefficients):
            result = result * inner + c
        return result

    def reduce(self, modulus: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients, self.order, modulus)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients, order, self.modulus)

    def valuation(self) -> Optional[int]:
        return next((j for j, c in enumerate(self.coefficients) if c), None)

    def __bool__(self):
        return any(self.coefficients)

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        tail = f" mod x^{self.order}"
        if self.modulus is not None:
            tail += f", {self.modulus}"
        return body + tail


def adams_on_CP(r: int, s: TruncatedSeries) -> TruncatedSeries:
    """psi^r on reduced K(CP^inf): substitute ``x -> (1+x)**r - 1``."""
    if r < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    if s[0] != 0:
        raise ConstantTermError("psi^r is applied to reduced classes only")
    one = TruncatedSeries.one(s.order, s.modulus)
    x = TruncatedSeries.gen(s.order, s.modulus)
    return s.compose((one + x) ** r - one)


def pullback(k: int, higher: Mapping[int, int], order: int, modulus: Optional[int] = None) -> TruncatedSeries:
    """``f^*(y) = k x^2 + sum c_j x^j`` for a map of degree ``k``."""
    if order < 3:
        raise ValueError("pullback needs truncation order >= 3")
    bad = [j for j in higher if j < 3]
    if bad:
        raise ValueError(f"higher-term exponents must be >= 3, got {bad}")
    terms = {2: k}
    terms.update(higher)
    return TruncatedSeries.from_terms(terms, order, modulus)


@dataclass(frozen=True)
class AdamsImageX:
    """``psi^p(y)`` modulo ``p**2`` and filtration ``2p + 3``, in powers of ``y``.

    In that quotient the unknown classes ``p*w`` and ``p**2*z`` and the
    ``y**p`` term vanish, leaving ``2 * sign * p * y**((p+1)/2)``.
    """

    prime: int
    sign: Sign
    value: TruncatedSeries

    @property
    def exponent(self) -> int:
        return (self.prime + 1) // 2


def _require_odd_prime(p: int) -> int:
    require_prime(p)
    if p == 2:
        raise EvenPrimeError("no Adams-operation formula on K(X) is available at p = 2")
    return p


def adams_on_X(p: int, sign) -> AdamsImageX:
    _require_odd_prime(p)
    sign = Sign.parse(sign)
    m = p * p
    value = TruncatedSeries.from_terms({(p + 1) // 2: 2 * sign * p}, p + 2, m)
    return AdamsImageX(p, sign, value)


def _check_degree(p: int, k: int) -> None:
    if k == 0:
        raise ZeroError("degree must be nonzero")
    if k % p == 0:
        raise DivisibilityError(f"{p} divides {k}")


def naturality_sides(p: int, k: int, sign, higher: Optional[Mapping[int, int]] = None):
    """Both sides of ``f^* psi^p(y) = psi^p f^*(y)`` in ``(Z/p^2)[x]/(x^(p+2))``.

    Returns ``(left, right)``: the left side pushes ``adams_on_X(p, sign)``
    through ``y -> f^*(y)``, the right applies psi^p on CP^inf to ``f^*(y)``.
    """
    _require_odd_prime(p)
    _check_degree(p, k)
    order, m = p + 2, p * p
    image = adams_on_X(p, sign)
    f_star = pullback(k, dict(higher or {}), order, m)
    # image.value lives in y; reinterpret its coefficients over x before substituting
    left = TruncatedSeries(image.value.coefficients, order, m).compose(f_star)
    right = adams_on_CP(p, f_star)
    return left, right


def check_naturality(p: int, k: int, sign, higher: Optional[Mapping[int, int]] = None) -> bool:
    left, right = naturality_sides(p, k, sign, higher)
    return left[p + 1] == right[p + 1]


def rector_congruence_sign(p: int, k: int) -> Sign:
    """Solve ``2 s p k**((p+1)/2) = 2 p k (mod p**2)`` for ``s`` in {+1, -1}."""
    _require_odd_prime(p)
    _check_degree(p, k)
    m = p * p
    target = 2 * p * k % m
    lhs = 2 * p * pow(k, (p + 1) // 2, m) % m
    solutions = [s for s in (Sign.PLUS, Sign.MINUS) if s * lhs % m == target]
    if len(solutions) != 1:
        raise NoSolutionError(f"congruence at p={p}, k={k} has {len(solutions)} sign solutions")
    return solutions[0]
