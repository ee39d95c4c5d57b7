"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

Elements are stored canonically as their residue modulo the n-th cyclotomic
polynomial, i.e. as a vector of phi(n) rationals in the power basis
1, zeta, ..., zeta^(phi(n)-1).  Everything else (the length-n circular vector,
the a0-normalized vector for prime n) is a derived view.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import BadSubgroup, NotAUnit, NotInSubfield, OrderMismatch

Scalar = Union[int, Fraction]

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    # start from x^n - 1 and divide out Phi_d for every proper divisor d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of num by a monic den, asserting the remainder vanishes."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for k in range(dd + 1):
                num[i - dd + k] -= c * den[k]
    assert not any(num[:dd]), "division by a cyclotomic factor left a remainder"
    return quot


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(n: int, poly: list) -> list:
    """Reduce a coefficient list (exponent = index) modulo Phi_n, in place style."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    if len(poly) > n:
        folded = poly[:n]
        for k in range(n, len(poly)):
            folded[k % n] += poly[k]
        poly = folded
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            poly[i] = 0
            for k in range(deg):
                poly[i - deg + k] -= c * phi_poly[k]
    out = poly[:deg]
    out.extend([0] * (deg - len(out)))
    return out


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class CyclotomicElement:
    """An immutable element of Q(zeta_n) in canonical form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Scalar]):
        values = [_as_fraction(c) for c in coeffs]
        deg = euler_phi(n)
        if len(values) != deg:
            raise ValueError(f"expected {deg} coefficients for n={n}, got {len(values)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    # construction helpers

    @classmethod
    def from_exponents(cls, n: int, vector: Sequence[Scalar]) -> "CyclotomicElement":
        """Element sum_k vector[k] * zeta_n^k; the vector may have any length."""
        return cls(n, _reduce(n, [_as_fraction(c) for c in vector]))

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[int, Scalar]]) -> "CyclotomicElement":
        """Element sum c * zeta_n^k over (k, c) pairs; exponents may be any integer."""
        vec = [Fraction(0)] * n
        for k, c in terms:
            vec[k % n] += c
        return cls.from_exponents(n, vec)

    @classmethod
    def rational(cls, n: int, value: Scalar) -> "CyclotomicElement":
        return cls(n, [_as_fraction(value)] + [Fraction(0)] * (euler_phi(n) - 1))

    @classmethod
    def zero(cls, n: int) -> "CyclotomicElement":
        return cls.rational(n, 0)

    @classmethod
    def one(cls, n: int) -> "CyclotomicElement":
        return cls.rational(n, 1)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicElement":
        return cls.from_terms(n, [(k, 1)])

    @classmethod
    def from_a0(cls, l: int, a: Sequence[Scalar]) -> "CyclotomicElement":
        """Inverse of :meth:`a0_view`; a has length l (a[0] need not be zero)."""
        if len(a) != l:
            raise ValueError(f"a0 vector must have length {l}")
        return cls.from_exponents(l, a)

    # views

    def circular(self) -> list[Fraction]:
        """Length-n vector c with self = sum c[k] zeta^k (zero above phi(n))."""
        return list(self.coeffs) + [Fraction(0)] * (self.n - len(self.coeffs))

    def a0_view(self) -> list[Fraction]:
        """For prime n: the unique length-n representation with entry 0 at index 0."""
        if euler_phi(self.n) != self.n - 1:
            raise ValueError("the a0-normalized view exists only for prime n")
        c = self.circular()
        return [ck - c[0] for ck in c]

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other.n != self.n:
                raise OrderMismatch(f"cannot combine orders {self.n} and {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.rational(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.n, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # multiply integer numerators over a common denominator, then rescale
        da, xa = _integral(self.coeffs)
        db, xb = _integral(other.coeffs)
        prod = [0] * (len(xa) + len(xb) - 1)
        for i, a in enumerate(xa):
            if a:
                for j, b in enumerate(xb):
                    prod[i + j] += a * b
        den = da * db
        return CyclotomicElement(self.n, [Fraction(c, den) for c in _reduce(self.n, prod)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = CyclotomicElement.one(self.n)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    # Galois structure

    def galois(self, c: int) -> "CyclotomicElement":
        """Image under zeta -> zeta^c; c must be a unit mod n."""
        if gcd(c, self.n) != 1:
            raise NotAUnit(f"{c} is not a unit modulo {self.n}")
        return CyclotomicElement.from_terms(
            self.n, ((k * c, a) for k, a in enumerate(self.coeffs) if a)
        )

    def conjugate(self) -> "CyclotomicElement":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Absolute norm to Q: product of all phi(n) conjugates."""
        result = CyclotomicElement.one(self.n)
        for c in range(1, self.n + 1):
            if gcd(c, self.n) == 1:
                result = result * self.galois(c)
        return result.rational_value()

    def inverse(self) -> "CyclotomicElement":
        others = CyclotomicElement.one(self.n)
        for c in range(2, self.n + 1):
            if gcd(c, self.n) == 1:
                others = others * self.galois(c)
        total = (others * self).rational_value()
        if total == 0:
            raise ZeroDivisionError("zero has no inverse")
        return others * (1 / total)

    # presentation

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    def a0_json(self) -> dict:
        return {"n": self.n, "a": [str(c) for c in self.a0_view()]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicElement":
        if "coeffs" in data:
            return cls(int(data["n"]), [Fraction(c) for c in data["coeffs"]])
        return cls.from_a0(int(data["n"]), [Fraction(c) for c in data["a"]])

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                power = "" if k == 1 else str(k).translate(_SUPERSCRIPTS)
                body = f"{mag}ζ{power}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"CyclotomicElement(n={self.n}, {self})"


def _integral(coeffs: Sequence[Fraction]) -> tuple[int, list[int]]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


@dataclass(frozen=True)
class GaloisIndex:
    """The automorphism sigma_c of Q(zeta_n)."""

    n: int
    c: int

    def __post_init__(self):
        if gcd(self.c, self.n) != 1:
            raise NotAUnit(f"{self.c} is not a unit modulo {self.n}")


def cyclo_add(x: CyclotomicElement, y: CyclotomicElement) -> CyclotomicElement:
    return x + y


def cyclo_mul(x: CyclotomicElement, y: CyclotomicElement) -> CyclotomicElement:
    return x * y


def galois_apply(g: GaloisIndex, x: CyclotomicElement) -> CyclotomicElement:
    if g.n != x.n:
        raise OrderMismatch(f"automorphism of order {g.n} applied to element of order {x.n}")
    return x.galois(g.c)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def norm_L_over_K(x: CyclotomicElement) -> Fraction:
    """Norm from Q(zeta_l) down to Q for prime l."""
    if not _is_prime(x.n):
        raise ValueError("norm_L_over_K expects a prime order")
    return x.norm()


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {m}")
    k, power = 1, a % m
    while power != 1 % m:
        power = power * a % m
        k += 1
    return k


def norm_L_over_M(x: CyclotomicElement, beta: int, f: int) -> CyclotomicElement:
    """Relative norm to the fixed field of sigma_beta, where beta has order f mod l."""
    if multiplicative_order(beta, x.n) != f:
        raise BadSubgroup(f"{beta} does not have order {f} modulo {x.n}")
    result = CyclotomicElement.one(x.n)
    for t in range(f):
        result = result * x.galois(pow(beta, t, x.n))
    assert result.galois(beta) == result, "relative norm is not fixed by sigma_beta"
    return result


@dataclass(frozen=True)
class PeriodDecomposition:
    """x = constant + sum_i coeffs[i] * eta(i), normalized so min(coeffs) = 0."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"constant": str(self.constant), "eta": [str(c) for c in self.coeffs]}


def gaussian_period(l: int, gamma: int, e: int, i: int) -> CyclotomicElement:
    """eta(i) = sum_j zeta_l^(gamma^(e j + i)) inside Q(zeta_l)."""
    f = (l - 1) // e
    return CyclotomicElement.from_terms(l, ((pow(gamma, e * j + i, l), 1) for j in range(f)))


def period_basis_decompose(
    x: CyclotomicElement, gamma: int, e: int, f: int
) -> PeriodDecomposition:
    """Coordinates of x (fixed by sigma_beta, beta = gamma^e) in the Gaussian period basis.

    The representation is unique only up to adding t * (1; 1, ..., 1) because
    1 + sum eta(i) = 0; the minimum period coefficient is normalized to zero.
    """
    l = x.n
    if e * f != l - 1:
        raise ValueError("need e * f = l - 1")
    beta = pow(gamma, e, l)
    if x.galois(beta) != x:
        raise NotInSubfield("element is not fixed by sigma_beta")
    a = x.a0_view()
    coeffs = [a[pow(gamma, i, l)] for i in range(e)]
    for i in range(e):
        for j in range(f):
            assert a[pow(gamma, e * j + i, l)] == coeffs[i]
    shift = min(coeffs)
    return PeriodDecomposition(-shift, tuple(c - shift for c in coeffs))
