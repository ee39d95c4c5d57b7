"""Finite fields F_{p^r} with a fixed generator and dense index tables.

Elements are encoded as integers: the polynomial c_0 + c_1 x + ... + c_{r-1} x^{r-1}
(reduced modulo the field's defining polynomial) has code sum c_i p^i.
For r = 1 the defining polynomial is x itself, so codes are plain residues.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence, Union

from .errors import BadSubfield, NotAGenerator, NotPrime, TooLarge, ZeroHasNoIndex

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "CYCLOJAC_BUDGET"


def default_budget() -> int:
    """Field-size budget, overridable through the CYCLOJAC_BUDGET environment variable."""
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def prime_power_decomposition(q: int) -> Optional[tuple[int, int]]:
    """(p, r) with q = p^r, or None when q is not a prime power."""
    if q < 2:
        return None
    factors = prime_factors(q)
    if len(factors) != 1:
        return None
    p, r = factors[0], 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# polynomials over F_p as coefficient lists, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for k in range(dm + 1):
                a[i - dm + k] = (a[i - dm + k] - c * m[k]) % p
    return _trim(a[:dm])


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod_[i + j] += x * y
    return _poly_mod(prod_, m, p)


def _poly_powmod(a: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result, base = [1], _poly_mod(list(a), m, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        k >>= 1
    return result


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    r = len(poly) - 1
    if r == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**r, poly, p), x, p):
        return False
    for ell in prime_factors(r):
        h = _poly_sub(_poly_powmod(x, p ** (r // ell), poly, p), x, p)
        if len(_poly_gcd(list(poly), h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r, compared on (c_0, ..., c_{r-1})."""
    for low in product(range(p), repeat=r):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class FiniteFieldCtx:
    """F_{p^r} with modulus, generator gamma and dense exp/index tables."""

    p: int
    r: int
    modulus: tuple[int, ...]
    gamma: tuple[int, ...]
    exp_table: tuple[int, ...] = field(repr=False)
    ind_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def gamma_code(self) -> int:
        return self.code_of(self.gamma)

    def code_of(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coeffs_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def ind(self, code: int) -> int:
        if code == 0:
            raise ZeroHasNoIndex("0 has no index")
        return self.ind_table[code]

    def exp(self, k: int) -> int:
        return self.exp_table[k % (self.q - 1)]

    def add_codes(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        for _ in range(self.r):
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * scale
            scale *= p
        return out

    def neg_code(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        p, out, scale = self.p, 0, 1
        for _ in range(self.r):
            a, ca = divmod(a, p)
            out += ((-ca) % p) * scale
            scale *= p
        return out

    def add_one(self, code: int) -> int:
        c0 = code % self.p
        return code - c0 + (c0 + 1) % self.p

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp(self.ind_table[a] + self.ind_table[b])

    def element(self, value: Union[int, Sequence[int]]) -> "FFElem":
        """An element from its code (int) or its coefficient tuple."""
        code = value if isinstance(value, int) else self.code_of(value)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside F_{self.q}")
        return FFElem(self, code)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "modulus": list(self.modulus),
            "gamma": list(self.gamma),
        }


@dataclass(frozen=True)
class FFElem:
    """A field element, stored by its integer code."""

    ctx: FiniteFieldCtx = field(repr=False, compare=False)
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs_of(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FFElem):
            return other.code
        if isinstance(other, int):
            return self.ctx.code_of([other])
        raise TypeError(f"cannot combine FFElem with {type(other).__name__}")

    def __add__(self, other):
        return FFElem(self.ctx, self.ctx.add_codes(self.code, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg_code(self.code))

    def __sub__(self, other):
        return self + (-FFElem(self.ctx, self._other(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return FFElem(self.ctx, self.ctx.mul_codes(self.code, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if self.code == 0:
            if k <= 0:
                raise ZeroDivisionError("0 has no inverse")
            return self
        return FFElem(self.ctx, self.ctx.exp(self.ctx.ind(self.code) * k))

    def __truediv__(self, other):
        return self * FFElem(self.ctx, self._other(other)) ** -1

    def __bool__(self):
        return self.code != 0


def _generator_check(p: int, r: int, modulus, candidate: Sequence[int], q: int) -> bool:
    if q == 2:
        return list(_trim(list(candidate))) == [1]
    for ell in prime_factors(q - 1):
        if _poly_powmod(list(candidate), (q - 1) // ell, modulus, p) == [1]:
            return False
    return bool(_trim(list(candidate)))


def build_ctx(
    p: int,
    r: int = 1,
    gamma_hint: Union[None, int, Sequence[int]] = None,
    budget: Optional[int] = None,
) -> FiniteFieldCtx:
    """Deterministic context for F_{p^r}.

    The modulus is the lexicographically smallest monic irreducible polynomial and
    gamma is the lexicographically smallest generator unless ``gamma_hint`` is given
    (a residue when r = 1; a code or coefficient tuple otherwise).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1:
        raise ValueError("r must be positive")
    budget = default_budget() if budget is None else budget
    q = p**r
    if q > budget:
        raise TooLarge(f"{p}^{r} = {q} exceeds the budget {budget}")
    modulus = smallest_irreducible(p, r)

    def to_coeffs(code: int) -> tuple[int, ...]:
        out = []
        for _ in range(r):
            code, c = divmod(code, p)
            out.append(c)
        return tuple(out)

    if gamma_hint is None:
        for cand in product(range(p), repeat=r):
            if _generator_check(p, r, modulus, cand, q):
                gamma = tuple(cand)
                break
    else:
        if isinstance(gamma_hint, int):
            gamma = to_coeffs(gamma_hint % q) if r > 1 else (gamma_hint % p,)
        else:
            gamma = tuple(c % p for c in gamma_hint) + (0,) * (r - len(gamma_hint))
        if not _generator_check(p, r, modulus, gamma, q):
            raise NotAGenerator(f"{gamma_hint} does not generate F_{q}^x")

    # dense tables by iterated multiplication by gamma
    exp_table = [0] * (q - 1)
    ind_table = [-1] * q
    if r == 1:
        g, x = gamma[0], 1
        for k in range(q - 1):
            exp_table[k] = x
            ind_table[x] = k
            x = x * g % p
    else:
        cur = [1]
        for k in range(q - 1):
            code = sum(c * p**i for i, c in enumerate(cur))
            exp_table[k] = code
            ind_table[code] = k
            cur = _poly_mulmod(cur, gamma, modulus, p)
    assert -1 not in ind_table[1:], "gamma failed to generate the multiplicative group"
    return FiniteFieldCtx(p, r, modulus, gamma, tuple(exp_table), tuple(ind_table))


def index(x: FFElem) -> int:
    """Discrete logarithm of a nonzero element to base gamma."""
    return x.ctx.ind(x.code)


def trace_to_prime(x: FFElem) -> int:
    """Tr(x) = sum_t x^(p^t), returned as a residue mod p."""
    ctx = x.ctx
    if x.code == 0:
        return 0
    k = ctx.ind(x.code)
    total = 0
    for t in range(ctx.r):
        total = ctx.add_codes(total, ctx.exp(k * ctx.p**t))
    assert total < ctx.p, "trace left the prime field"
    return total


def in_subfield(x: FFElem, s: int) -> bool:
    """Membership in F_{p^s}: x^(p^s) = x."""
    return (x ** (x.ctx.p**s)).code == x.code if x.code else True


def norm_to_subfield(x: FFElem, s: int) -> FFElem:
    """Nr(x) = prod_t x^(p^(s t)) from F_{p^r} down to F_{p^s}, returned in the same context."""
    ctx = x.ctx
    if s < 1 or ctx.r % s:
        raise BadSubfield(f"{s} does not divide {ctx.r}")
    if x.code == 0:
        return x
    k = ctx.ind(x.code)
    total = sum(k * ctx.p ** (s * t) for t in range(ctx.r // s))
    out = FFElem(ctx, ctx.exp(total))
    assert in_subfield(out, s)
    return out
