"""Multiplicative f-ic forms on the varieties V in Q^(l-1) and the group law on W.

A point x = (x_1, ..., x_{l-1}) carries the convention x_0 = 0 and corresponds to
alpha_x = (-1)^(f-1) sum x_i zeta_l^i.  The correlation sums S_0, ..., S_e are the
coefficients of N_{L/M}(alpha_x) grouped by <beta>-orbits of exponents.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial, gcd
from typing import Callable, Optional, Sequence, Union

from . import linalg
from .cyclotomic import CyclotomicElement, multiplicative_order, norm_L_over_K
from .errors import (
    FiberMismatch,
    InternalInconsistency,
    NotAGenerator,
    NotAUnit,
    NotInvertible,
    NotPrime,
)
from .finite_field import is_prime
from .report import ClauseCheck, Report

Vector = Sequence[Union[int, Fraction]]


def smallest_primitive_root(l: int) -> int:
    for g in range(2, l):
        if multiplicative_order(g, l) == l - 1:
            return g
    return 1  # l = 2 is rejected upstream


@dataclass(frozen=True)
class VarietySpec:
    """(l, f) with l = e f + 1, a generator gamma of (Z/l)^x and beta = gamma^e."""

    l: int
    f: int
    gamma: Optional[int] = None

    def __post_init__(self):
        if self.l < 3 or not is_prime(self.l):
            raise NotPrime(f"l = {self.l} must be an odd prime")
        if self.f < 2 or (self.l - 1) % self.f:
            raise ValueError(f"f = {self.f} must be at least 2 and divide l - 1 = {self.l - 1}")
        if self.gamma is None:
            object.__setattr__(self, "gamma", smallest_primitive_root(self.l))
        object.__setattr__(self, "gamma", self.gamma % self.l)
        if gcd(self.gamma, self.l) != 1 or multiplicative_order(self.gamma, self.l) != self.l - 1:
            raise NotAGenerator(f"{self.gamma} is not a primitive root modulo {self.l}")

    @property
    def e(self) -> int:
        return (self.l - 1) // self.f

    @property
    def beta(self) -> int:
        return pow(self.gamma, self.e, self.l)

    @property
    def sign(self) -> int:
        """(-1)^(f-1)."""
        return -1 if self.f % 2 == 0 else 1

    def to_json(self) -> dict:
        return {"l": self.l, "f": self.f, "gamma": self.gamma}


def _fractions(x: Vector, spec: VarietySpec) -> tuple[Fraction, ...]:
    if isinstance(x, VarietyPoint):
        x = x.x
    values = tuple(Fraction(v) for v in x)
    if len(values) != spec.l - 1:
        raise ValueError(f"expected {spec.l - 1} coordinates, got {len(values)}")
    return values


@dataclass(frozen=True)
class VarietyPoint:
    """A vector of Q^(l-1) with cached alpha_x and correlation sums."""

    spec: VarietySpec
    x: tuple[Fraction, ...] = field(compare=True)

    def __post_init__(self):
        object.__setattr__(self, "x", _fractions(self.x, self.spec))

    def full(self) -> list[Fraction]:
        """Length-l vector with x_0 = 0 at index 0."""
        return [Fraction(0)] + list(self.x)

    @cached_property
    def alpha(self) -> CyclotomicElement:
        s = self.spec.sign
        return CyclotomicElement.from_exponents(self.spec.l, [s * c for c in self.full()])

    @cached_property
    def S(self) -> tuple[Fraction, ...]:
        return correlation_sums(self, self.spec)

    def to_json(self) -> dict:
        return {"l": self.spec.l, "f": self.spec.f, "x": [str(c) for c in self.x]}

    @classmethod
    def from_json(cls, data: dict, gamma: Optional[int] = None) -> "VarietyPoint":
        spec = VarietySpec(int(data["l"]), int(data["f"]), data.get("gamma", gamma))
        return cls(spec, tuple(Fraction(c) for c in data["x"]))


def point(x: Vector, spec: VarietySpec) -> VarietyPoint:
    if isinstance(x, VarietyPoint) and x.spec == spec:
        return x
    return VarietyPoint(spec, _fractions(x, spec))


def identity_point(spec: VarietySpec) -> VarietyPoint:
    """The neutral element (-1)^f (1, ..., 1)."""
    s = 1 if spec.f % 2 == 0 else -1
    return VarietyPoint(spec, (Fraction(s),) * (spec.l - 1))


def alpha(x: Vector, spec: VarietySpec) -> CyclotomicElement:
    return point(x, spec).alpha


def point_from_alpha(a: CyclotomicElement, spec: VarietySpec) -> VarietyPoint:
    """The unique x with alpha_x = a (a must live in Q(zeta_l))."""
    if a.n != spec.l:
        raise ValueError(f"element of Q(zeta_{a.n}) is not in Q(zeta_{spec.l})")
    view = a.a0_view()
    return VarietyPoint(spec, tuple(spec.sign * c for c in view[1:]))


# correlation sums


def _targets(spec: VarietySpec) -> list[int]:
    """Exponent classes 0, gamma, gamma^2, ..., gamma^e (mod l) for S_0 .. S_e."""
    return [0] + [pow(spec.gamma, m, spec.l) for m in range(1, spec.e + 1)]


def _norm_coefficients(x: Vector, spec: VarietySpec) -> list[Fraction]:
    """c[t] = sum over i_0 + beta i_1 + ... = t (mod l) of x_{i_0} ... x_{i_{f-1}}.

    Computed as the cyclic product of the f dilated polynomials sum x_i z^(beta^k i).
    """
    l = spec.l
    full = [Fraction(0)] + list(_fractions(x, spec))
    acc = [Fraction(0)] * l
    acc[0] = Fraction(1)
    for k in range(spec.f):
        mult = pow(spec.beta, k, l)
        dil = [Fraction(0)] * l
        for i, c in enumerate(full):
            if c:
                dil[i * mult % l] += c
        nxt = [Fraction(0)] * l
        for s, a in enumerate(acc):
            if a:
                for t, b in enumerate(dil):
                    if b:
                        nxt[(s + t) % l] += a * b
        acc = nxt
    return acc


def correlation_sums(x: Vector, spec: VarietySpec) -> tuple[Fraction, ...]:
    """(S_0, S_1, ..., S_e)."""
    c = _norm_coefficients(x, spec)
    return tuple(c[t] for t in _targets(spec))


def correlation_sums_naive(x: Vector, spec: VarietySpec) -> tuple[Fraction, ...]:
    """Reference implementation: loop over (i_0, ..., i_{f-2}); the congruence fixes i_{f-1}."""
    l, f = spec.l, spec.f
    full = [Fraction(0)] + list(_fractions(x, spec))
    last = pow(pow(spec.beta, f - 1, l), -1, l)
    out = []
    for target in _targets(spec):
        total = Fraction(0)
        for head in product(range(1, l), repeat=f - 1):
            partial = sum(pow(spec.beta, k, l) * i for k, i in enumerate(head))
            tail = (target - partial) * last % l
            if tail == 0:
                continue
            term = full[tail]
            for i in head:
                term *= full[i]
            total += term
        out.append(total)
    return tuple(out)


def correlation_monomials(spec: VarietySpec, m: int) -> dict[tuple[int, ...], int]:
    """S_m as a polynomial: sorted variable-index tuple -> integer coefficient."""
    l, f = spec.l, spec.f
    target = _targets(spec)[m]
    out: dict[tuple[int, ...], int] = {}
    for idx in product(range(1, l), repeat=f):
        if sum(pow(spec.beta, k, l) * i for k, i in enumerate(idx)) % l == target:
            key = tuple(sorted(idx))
            out[key] = out.get(key, 0) + 1
    return out


def form_h(x: Vector, spec: VarietySpec) -> Fraction:
    S = point(x, spec).S
    return S[0] - S[1]


def form_hm(x: Vector, spec: VarietySpec, m: int) -> Fraction:
    if not 1 <= m <= spec.e - 1:
        raise ValueError(f"m = {m} outside 1..{spec.e - 1}")
    S = point(x, spec).S
    return S[m] - S[m + 1]


def norm_LK(x: Vector, spec: VarietySpec) -> Fraction:
    return norm_L_over_K(point(x, spec).alpha)


def is_on_V(x: Vector, spec: VarietySpec) -> bool:
    S = point(x, spec).S
    return all(s == S[1] for s in S[2:])


def is_on_W(x: Vector, spec: VarietySpec) -> bool:
    return is_on_V(x, spec) and norm_LK(x, spec) != 0


# composition law


def _unit(d: int, l: int) -> int:
    if gcd(d, l) != 1:
        raise NotAUnit(f"{d} is not a unit modulo {l}")
    return d % l


def compose_phi(x: Vector, y: Vector, d: int, spec: Optional[VarietySpec] = None, check: bool = True) -> VarietyPoint:
    """x *_d y: z_k = (-1)^(f-1) (sum_i x_{-d^-1 i} y_{k-i} - sum_i x_{-d^-1 i} y_{-i}).

    ``spec`` may be omitted when x is a VarietyPoint.
    """
    spec = spec or x.spec
    l = spec.l
    d = _unit(d, l)
    dinv = pow(d, -1, l)
    px, py = point(x, spec), point(y, spec)
    xs, ys = px.full(), py.full()
    tw = [xs[(-dinv * i) % l] for i in range(l)]
    const = sum(tw[i] * ys[(-i) % l] for i in range(1, l))
    z = tuple(
        spec.sign * (sum(tw[i] * ys[(k - i) % l] for i in range(1, l)) - const) for k in range(1, l)
    )
    out = VarietyPoint(spec, z)
    if check and out.alpha != px.alpha.galois(-d) * py.alpha:
        raise InternalInconsistency("alpha is not multiplicative under the composition")
    return out


def op_properties_check(
    x: Vector, y: Vector, z: Vector, d1: int, d2: int, spec: VarietySpec, report: Optional[Report] = None
) -> Report:
    """Left unit, right twist, mixed associativity, swap law and the alpha homomorphism."""
    l = spec.l
    rep = report or Report("op-properties", meta={**spec.to_json(), "d1": d1, "d2": d2})
    one = identity_point(spec)
    px, py, pz = point(x, spec), point(y, spec), point(z, spec)
    d1, d2 = _unit(d1, l), _unit(d2, l)
    d1inv, d2inv = pow(d1, -1, l), pow(d2, -1, l)

    rep.add("left-unit", compose_phi(one, px, d1) == px, 1)
    right = compose_phi(px, one, d1).x
    expected = tuple(px.full()[(-d1inv * k) % l] for k in range(1, l))
    rep.add("right-twist", right == expected, 1)
    lhs = compose_phi(px, compose_phi(py, pz, d2), d1)
    rhs = compose_phi(compose_phi(px, py, (-d2inv * d1) % l), pz, d2)
    rep.add("associativity", lhs == rhs, 1)
    yx = compose_phi(py, px, d1).full()
    xy = compose_phi(px, py, d1inv).full()
    swap_ok = all(yx[k] == xy[(-d1inv * k) % l] for k in range(1, l))
    rep.add("swap", swap_ok, 1)
    hom = compose_phi(px, py, d1, check=False).alpha == px.alpha.galois(-d1) * py.alpha
    rep.add("homomorphism", hom, 1)
    return rep


# determinant and inverse


def build_Md(x: Vector, d: int, spec: VarietySpec) -> list[list[Fraction]]:
    """M_d[k][j] = (-1)^(f-1) (x_{d^-1 (k-j)} - x_{d^-1 k}), 1 <= k, j <= l-1; y M_d = x *_d y."""
    l = spec.l
    dinv = pow(_unit(d, l), -1, l)
    xs = point(x, spec).full()
    s = spec.sign
    return [
        [s * (xs[dinv * (k - j) % l] - xs[dinv * k % l]) for j in range(1, l)] for k in range(1, l)
    ]


def det_equals_norm_check(x: Vector, d: int, spec: VarietySpec) -> Report:
    det = linalg.det(build_Md(x, d, spec))
    norm = norm_LK(x, spec)
    rep = Report("det-equals-norm", meta={**spec.to_json(), "d": d, "det": det, "norm": norm})
    rep.add("det=norm", det == norm, 1, None if det == norm else (det, norm))
    return rep


def invert_point(x: Vector, d: int, spec: Optional[VarietySpec] = None) -> VarietyPoint:
    """x^(-1) = 1 adj(M_d) / N_{L/K}(alpha_x), the unique solution of x *_d y = 1."""
    spec = spec or x.spec
    px = point(x, spec)
    d = _unit(d, spec.l)
    norm = norm_L_over_K(px.alpha)
    if norm == 0:
        raise NotInvertible("N_{L/K}(alpha_x) = 0")
    adj = linalg.adjugate(build_Md(px, d, spec))
    one = identity_point(spec).x
    n = spec.l - 1
    y = VarietyPoint(spec, tuple(sum(one[k] * adj[k][j] for k in range(n)) / norm for j in range(n)))
    if compose_phi(px, y, d) != identity_point(spec):
        raise InternalInconsistency("adjugate inverse does not compose to the identity")
    if y.alpha != px.alpha.galois(-d).inverse():
        raise InternalInconsistency("alpha of the inverse is not sigma_{-d}(alpha_x)^(-1)")
    return y


def power_point(x: Vector, n: int, spec: VarietySpec) -> VarietyPoint:
    """n-th power for the (-1)-composition; negative n uses the inverse."""
    base = point(x, spec)
    if n < 0:
        base, n = invert_point(base, -1, spec), -n
    out = identity_point(spec)
    for _ in range(n):
        out = compose_phi(out, base, -1)
    return out


# sources of W points


def jacobi_point(p: int, spec: VarietySpec, budget: Optional[int] = None) -> VarietyPoint:
    """W point built from J*_p(1,1) of order l (p a prime with p = 1 mod l).

    For even f the Jacobi sum itself has N_{L/M} = p^(f/2).  For odd f the product of
    its conjugates over coset representatives of <beta> is used; its relative norm is
    N_{L/K}(J) = p^((l-1)/2).
    """
    from .cyclotomy import CycParams, jacobi_sum
    from .finite_field import build_ctx

    if (p - 1) % spec.l:
        raise ValueError(f"{p} is not 1 modulo {spec.l}")
    J = jacobi_sum(CycParams(build_ctx(p, 1, budget=budget), spec.l), 1, 1)
    if spec.f % 2 == 0:
        return point_from_alpha(J, spec)
    a = CyclotomicElement.one(spec.l)
    for i in range(spec.e):
        a = a * J.galois(pow(spec.gamma, i, spec.l))
    return point_from_alpha(a, spec)


def expected_jacobi_h(p: int, spec: VarietySpec) -> int:
    return p ** (spec.f // 2) if spec.f % 2 == 0 else p ** ((spec.l - 1) // 2)


def zeta_point(k: int, spec: VarietySpec) -> VarietyPoint:
    """alpha = zeta_l^k; N_{L/M}(zeta^k) = 1 because 1 + beta + ... + beta^(f-1) = 0 mod l."""
    return point_from_alpha(CyclotomicElement.zeta(spec.l, k), spec)


def norm_one_point(y: Vector, spec: VarietySpec) -> VarietyPoint:
    """W_1 point sigma_beta(alpha_y) / alpha_y (Hilbert 90 shape); y must be nonzero."""
    a = point(y, spec).alpha
    if not a:
        raise NotInvertible("the zero vector has no quotient")
    return point_from_alpha(a.galois(spec.beta) * a.inverse(), spec)


def small_primes_1_mod(l: int, count: int) -> list[int]:
    out, p = [], l + 1
    while len(out) < count:
        if is_prime(p):
            out.append(p)
        p += l
    return out


def sample_W_points(spec: VarietySpec, count: int, rng: random.Random, seeds: int = 3) -> list[VarietyPoint]:
    """Random W points: short products of Jacobi-sum points, their inverses, zeta points and 1."""
    base = [identity_point(spec)]
    base += [jacobi_point(p, spec) for p in small_primes_1_mod(spec.l, seeds)]
    base += [zeta_point(k, spec) for k in range(1, spec.l)]
    out = []
    while len(out) < count:
        pt = rng.choice(base)
        for _ in range(rng.randint(0, 2)):
            other = rng.choice(base)
            if rng.random() < 0.3:
                other = invert_point(other, rng.choice([d for d in range(1, spec.l)]), spec)
            pt = compose_phi(pt, other, rng.randrange(1, spec.l))
        out.append(pt)
    return out


def random_vector(spec: VarietySpec, rng: random.Random, bound: int = 5) -> VarietyPoint:
    return VarietyPoint(spec, tuple(Fraction(rng.randint(-bound, bound)) for _ in range(spec.l - 1)))


def multiplicativity_check(x: Vector, y: Vector, spec: VarietySpec, ds: Optional[Sequence[int]] = None, report: Optional[Report] = None) -> Report:
    """For each d: x *_d y lies on V and h(x *_d y) = h(x) h(y)."""
    rep = report or Report("multiplicativity", meta=spec.to_json())
    px, py = point(x, spec), point(y, spec)
    closure = ClauseCheck(rep, "closure")
    mult = ClauseCheck(rep, "h-multiplicative")
    hx, hy = form_h(px, spec), form_h(py, spec)
    for d in ds or range(1, spec.l):
        z = compose_phi(px, py, d)
        closure(is_on_V(z, spec), (d, px.to_json()["x"], py.to_json()["x"]))
        mult(form_h(z, spec) == hx * hy, (d, hx, hy, form_h(z, spec)))
    closure.close()
    mult.close()
    return rep


# fibers and the torsor action


def fiber_map_check(x: Vector, y: Vector, spec: VarietySpec, p=None, q=None) -> Report:
    """h(x *_{-1} y) = h(x) h(y) with optional declared fibers p, q."""
    px, py = point(x, spec), point(y, spec)
    hx, hy = form_h(px, spec), form_h(py, spec)
    if not (is_on_W(px, spec) and is_on_W(py, spec)):
        raise FiberMismatch("inputs must lie on W")
    if p is not None and hx != Fraction(p):
        raise FiberMismatch(f"h(x) = {hx}, expected {p}")
    if q is not None and hy != Fraction(q):
        raise FiberMismatch(f"h(y) = {hy}, expected {q}")
    z = compose_phi(px, py, -1)
    rep = Report("fiber-map", meta={**spec.to_json(), "p": hx, "q": hy, "pq": form_h(z, spec)})
    rep.add("product-on-W", is_on_W(z, spec), 1)
    rep.add("product-fiber", form_h(z, spec) == hx * hy, 1)
    return rep


def torsor_action(u: Vector, x: Vector, y: Vector, spec: VarietySpec) -> tuple[VarietyPoint, VarietyPoint]:
    """u . (x, y) = (x *_{-1} u, y *_{-1} u^(-1)) for u in W_1."""
    pu = point(u, spec)
    if not is_on_W(pu, spec) or form_h(pu, spec) != 1:
        raise FiberMismatch("u must lie on W_1")
    return compose_phi(x, pu, -1), compose_phi(y, invert_point(pu, -1, spec), -1)


def connecting_element(x: Vector, x2: Vector, spec: VarietySpec) -> VarietyPoint:
    """u = x^(-1) *_{-1} x2, so that x *_{-1} u = x2."""
    return compose_phi(invert_point(x, -1, spec), x2, -1)


def torsor_check(x: Vector, y: Vector, u: Vector, spec: VarietySpec) -> Report:
    """Action preserves the product point; the connecting element is recovered and has h = 1."""
    rep = Report("torsor", meta=spec.to_json())
    x2, y2 = torsor_action(u, x, y, spec)
    rep.add("fibers-preserved", form_h(x2, spec) == form_h(x, spec) and form_h(y2, spec) == form_h(y, spec), 1)
    rep.add("product-preserved", compose_phi(x2, y2, -1) == compose_phi(x, y, -1), 1)
    w = connecting_element(x, x2, spec)
    rep.add("connecting-element", w == point(u, spec), 1)
    rep.add("connecting-h", form_h(w, spec) == 1 and is_on_W(w, spec), 1)
    rep.add("connecting-y", compose_phi(y, invert_point(w, -1, spec), -1) == y2, 1)
    return rep


def torsion_norm_criterion(x: Vector, spec: VarietySpec) -> bool:
    """True iff N_{L/K}(alpha_x) is a root of unity in Q; False proves x is not torsion."""
    norm = norm_LK(x, spec)
    if norm == 0:
        raise NotInvertible("point lies on the boundary (norm 0)")
    return norm in (1, -1)


# derived forms and regularity


def derived_form_defect(P: Callable[[Sequence[Fraction]], Fraction], inputs: Sequence[Sequence]) -> Fraction:
    """Delta^f P(u_1, ..., u_f) = sum over nonempty I of (-1)^(f-|I|) P(sum_{i in I} u_i)."""
    f = len(inputs)
    n = len(inputs[0])
    total = Fraction(0)
    for size in range(1, f + 1):
        for subset in combinations(range(f), size):
            vec = [sum((Fraction(inputs[i][k]) for i in subset), Fraction(0)) for k in range(n)]
            total += (-1) ** (f - size) * Fraction(P(vec))
    return total


def theta(P: Callable, inputs: Sequence[Sequence]) -> Fraction:
    """Symmetric multilinear form (1/f!) Delta^f P."""
    return derived_form_defect(P, inputs) / factorial(len(inputs))


def theta_h(spec: VarietySpec, inputs: Sequence[Sequence]) -> Fraction:
    if len(inputs) != spec.f:
        raise ValueError(f"theta_h takes {spec.f} vectors")
    return theta(lambda v: form_h(v, spec), inputs)


def regularity_check(spec: VarietySpec, trials: int, seed: int = 0, bound: int = 3) -> Report:
    """Rank of [theta_h(e_i, w_2^(j), ..., w_f^(j))] over random tuples; full rank witnesses regularity."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    n = spec.l - 1
    basis = [[int(i == k) for k in range(n)] for i in range(n)]
    columns = []
    reached = None
    for t in range(trials):
        ws = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(spec.f - 1)]
        columns.append([theta_h(spec, [basis[i]] + ws) for i in range(n)])
        if linalg.rank(linalg.transpose(columns)) == n:
            reached = t + 1
            break
    rank = linalg.rank(linalg.transpose(columns))
    rep = Report("regularity", meta={**spec.to_json(), "trials": trials, "seed": seed, "rank": rank, "trials_used": reached or trials})
    rep.add("full-rank", rank == n, len(columns))
    return rep


# the quadratic forms of the f = 2 construction


def shift_sum(x: Vector, m: int, l: int) -> Fraction:
    """T_m = sum_i x_i x_{i+m} over i = 1..l-1 with x_0 = 0."""
    xs = [Fraction(0)] + [Fraction(v) for v in (x.x if isinstance(x, VarietyPoint) else x)]
    return sum(xs[i] * xs[(i + m) % l] for i in range(1, l))


def quadratic_q(x: Vector, l: int) -> Fraction:
    """q = sum x_i^2 - sum x_i x_{i+1}."""
    return shift_sum(x, 0, l) - shift_sum(x, 1, l)


def quadratic_fm(x: Vector, l: int, m: int) -> Fraction:
    """f_m = sum x_i x_{i+m} - sum x_i x_{i+m+1}; f_0 = q."""
    return shift_sum(x, m, l) - shift_sum(x, m + 1, l)


def gram_matrix(P: Callable[[Sequence[Fraction]], Fraction], n: int) -> list[list[Fraction]]:
    basis = [[Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    return [[theta(P, [basis[i], basis[j]]) for j in range(n)] for i in range(n)]


def gram_q(l: int) -> list[list[Fraction]]:
    """A_{l-1}: Gram matrix of q on Q^(l-1)."""
    return gram_matrix(lambda v: quadratic_q(v, l), l - 1)


def gram_cyclic(l: int) -> list[list[Fraction]]:
    """B_l: Gram matrix of the l-variable form with x_0 free (all indices cyclic mod l)."""

    def form(v):
        return sum(v[i] ** 2 - v[i] * v[(i + 1) % l] for i in range(l))

    return gram_matrix(form, l)


# identity tables for d-compositions of the forms (q, f_1, ...) and (h, f_1)

# Each entry maps a set of d residues to: form -> list of (coefficient, left form, right form).
IDENTITY_TABLES: dict[tuple[int, int], list[tuple[frozenset, dict[str, list[tuple[int, str, str]]]]]] = {
    (5, 2): [
        (frozenset({1, 4}), {
            "q": [(1, "q", "q"), (1, "f1", "f1")],
            "f1": [(1, "q", "f1"), (1, "f1", "q"), (1, "f1", "f1")],
        }),
        (frozenset({2, 3}), {
            "q": [(1, "q", "q"), (1, "f1", "q"), (-1, "f1", "f1")],
            "f1": [(1, "q", "f1"), (-1, "f1", "q")],
        }),
    ],
    (7, 2): [
        (frozenset({1, 6}), {
            "q": [(1, "q", "q"), (1, "f1", "f1"), (1, "f2", "f2")],
            "f1": [(1, "q", "f1"), (1, "f1", "q"), (1, "f1", "f1"), (1, "f1", "f2"), (1, "f2", "f1"), (1, "f2", "f2")],
            "f2": [(1, "q", "f2"), (1, "f2", "q"), (1, "f1", "f1"), (1, "f1", "f2"), (1, "f2", "f1")],
        }),
        (frozenset({3, 4}), {
            "q": [(1, "q", "q"), (1, "f1", "q"), (-1, "f1", "f2"), (1, "f2", "f1"), (-1, "f2", "f2")],
            "f1": [(1, "q", "f1"), (1, "f2", "q"), (-1, "f1", "f2")],
            "f2": [(1, "q", "f2"), (-1, "f1", "q"), (-1, "f2", "q"), (-1, "f1", "f1"), (1, "f1", "f2"), (1, "f2", "f2")],
        }),
        (frozenset({2, 5}), {
            "q": [(1, "q", "q"), (1, "f1", "q"), (1, "f2", "q"), (-1, "f1", "f1"), (1, "f1", "f2"), (-1, "f2", "f1")],
            "f1": [(1, "q", "f1"), (-1, "f1", "q"), (-1, "f2", "q"), (1, "f1", "f1"), (-1, "f2", "f2")],
            "f2": [(1, "q", "f2"), (1, "f1", "q"), (-1, "f2", "f1")],
        }),
    ],
    (7, 3): [
        (frozenset({1}), {
            "h": [(1, "h", "h"), (1, "f1", "h"), (2, "f1", "f1")],
            "f1": [(1, "h", "f1"), (-1, "f1", "h")],
        }),
    ],
}


def table_forms(x: Vector, spec: VarietySpec) -> dict[str, Fraction]:
    """The forms named in IDENTITY_TABLES: (q, f_m) for f = 2, (h, f_1 = h_1) otherwise."""
    if spec.f == 2:
        out = {"q": quadratic_q(x, spec.l)}
        for m in range(1, (spec.l - 1) // 2):
            out[f"f{m}"] = quadratic_fm(x, spec.l, m)
        return out
    out = {"h": form_h(x, spec)}
    for m in range(1, spec.e):
        out[f"f{m}"] = form_hm(x, spec, m)
    return out


def identity_table_check(x: Vector, y: Vector, spec: VarietySpec, report: Optional[Report] = None) -> Report:
    """Evaluate every tabulated relation form(x *_d y) = sum c form(x) form(y) at (x, y)."""
    key = (spec.l, spec.f)
    if key not in IDENTITY_TABLES:
        raise ValueError(f"no identity table for (l, f) = {key}")
    rep = report or Report("identity-table", meta=spec.to_json())
    fx, fy = table_forms(x, spec), table_forms(y, spec)
    for ds, relations in IDENTITY_TABLES[key]:
        for d in sorted(ds):
            fz = table_forms(compose_phi(x, y, d, spec), spec)
            for name, terms in relations.items():
                rhs = sum(c * fx[a] * fy[b] for c, a, b in terms)
                rep.add(f"d={d}:{name}", fz[name] == rhs, 1, None if fz[name] == rhs else (fz[name], rhs))
    return rep
