"""Cyclotomic numbers, Jacobi sums and multiplication matrices of Gaussian periods.

Everything is computed by brute force over a finite field with a fixed
generator gamma, using the character chi(gamma) = zeta_e, chi(0) = 0 and the
trivial character with value 1 at 0.

Sign parameter: the classical relations carry a factor chi(-1)^a.  For odd p
this is (-1)^(f a); for p = 2 we have -1 = 1, so the parity parameter is 0.
``CycParams.v`` holds that value and every transform uses it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .cyclotomic import CyclotomicElement
from .errors import AxiomViolation, UseCharPolyInstead
from .finite_field import FiniteFieldCtx, trace_to_prime
from .linalg import charpoly, matmul
from .report import ClauseCheck, Report

DEFAULT_PERIOD_THRESHOLD = 200

IntMatrix = tuple[tuple[int, ...], ...]


def _frozen(rows: Iterable[Iterable]) -> tuple:
    return tuple(tuple(r) for r in rows)


def _as_number(x: Fraction) -> Union[int, Fraction]:
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class CycParams:
    """A finite field F_q (q = p^s) together with an order e dividing q - 1.

    ``s`` selects the subfield F_{p^s} of ``ctx``; its generator is gamma^M with
    M = (p^r - 1)/(p^s - 1), i.e. the norm of the ambient generator.  By default
    s = r and the whole field is used.
    """

    ctx: FiniteFieldCtx
    e: int
    s: Optional[int] = None

    def __post_init__(self):
        if self.s is None:
            object.__setattr__(self, "s", self.ctx.r)
        if self.ctx.r % self.s:
            raise ValueError(f"{self.s} does not divide {self.ctx.r}")
        if self.e < 2:
            raise ValueError("e must be at least 2")
        if (self.q - 1) % self.e:
            raise ValueError(f"e = {self.e} does not divide q - 1 = {self.q - 1}")

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def q(self) -> int:
        return self.ctx.p**self.s

    @property
    def f(self) -> int:
        return (self.q - 1) // self.e

    @property
    def step(self) -> int:
        return (self.ctx.q - 1) // (self.q - 1)

    @property
    def v(self) -> int:
        """Parity parameter: chi(-1) = (-1)^v."""
        return 0 if self.p == 2 else self.f

    @property
    def gamma_code(self) -> int:
        return self.ctx.exp(self.step)

    def log(self, code: int) -> int:
        """Index of a nonzero subfield element with respect to gamma^step."""
        k, rem = divmod(self.ctx.ind(code), self.step)
        assert rem == 0, "element outside the subfield"
        return k

    def meta(self) -> dict:
        out = {"p": self.p, "r": self.s, "e": self.e, "f": self.f, "v": self.v}
        if self.s == self.ctx.r:
            out["modulus"] = list(self.ctx.modulus)
            out["gamma"] = list(self.ctx.gamma)
        else:
            out["ambient"] = self.ctx.to_json()
            out["gamma_code"] = self.gamma_code
        return out

    @cached_property
    def _counts(self) -> tuple[IntMatrix, IntMatrix]:
        """(Cyc counts, Jacobi pair counts) gathered in one pass over F_q^x."""
        e, ctx, step = self.e, self.ctx, self.step
        cyc = [[0] * e for _ in range(e)]
        pairs = [[0] * e for _ in range(e)]
        for k in range(self.q - 1):
            alpha = ctx.exp(k * step)
            i = k % e
            plus = ctx.add_one(alpha)
            if plus:
                cyc[i][self.log(plus) % e] += 1
            minus = ctx.add_one(ctx.neg_code(alpha))
            if minus:
                pairs[i][self.log(minus) % e] += 1
        return _frozen(cyc), _frozen(pairs)


@dataclass(frozen=True)
class MultMatrix:
    """C = Cyc - f D with D the indicator of row ``d_row``."""

    entries: tuple[tuple, ...]
    d_row: int

    @property
    def e(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i % self.e][j % self.e]


@dataclass(frozen=True)
class GenJacobiTable:
    """Values E(a, b) for (a, b) mod e, with parity parameter v and parameter p_value.

    Classical Jacobi tables are instances with p_value = q and v = f (or 0 when p = 2).
    """

    e: int
    v: int
    p_value: Fraction
    values: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "p_value", Fraction(self.p_value))

    def __call__(self, a: int, b: int) -> CyclotomicElement:
        return self.values[(a % self.e, b % self.e)]

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "v": self.v,
            "p_value": str(self.p_value),
            "values": [[[str(c) for c in self(a, b).coeffs] for b in range(self.e)] for a in range(self.e)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GenJacobiTable":
        e = int(data["e"])
        values = {
            (a, b): CyclotomicElement(e, [Fraction(c) for c in data["values"][a][b]])
            for a in range(e)
            for b in range(e)
        }
        return cls(e, int(data["v"]), Fraction(data["p_value"]), values)


JacobiTable = GenJacobiTable


def _zeta_sum(e: int, matrix: Sequence[Sequence], a: int, b: int) -> CyclotomicElement:
    """sum_{i,j} matrix[i][j] zeta_e^(a i + b j)."""
    vec = [Fraction(0)] * e
    for i, row in enumerate(matrix):
        for j, x in enumerate(row):
            if x:
                vec[(a * i + b * j) % e] += x
    return CyclotomicElement.from_exponents(e, vec)


def _sign(v: int, a: int) -> int:
    return -1 if (v * a) % 2 else 1


# basic objects


def cyclotomic_numbers(params: CycParams) -> IntMatrix:
    """Cyc(i, j) = #{alpha in class i with 1 + alpha in class j}, by index-table counting."""
    return params._counts[0]


def jacobi_sum(params: CycParams, a: int, b: int) -> CyclotomicElement:
    """J*(chi^a, chi^b) = sum over alpha != 0, 1 of chi^a(alpha) chi^b(1 - alpha)."""
    return _zeta_sum(params.e, params._counts[1], a, b)


def jacobi_table(params: CycParams) -> GenJacobiTable:
    e = params.e
    values = {(a, b): jacobi_sum(params, a, b) for a in range(e) for b in range(e)}
    return GenJacobiTable(e, params.v, Fraction(params.q), values)


def d_row_index(e: int, v: int) -> int:
    """Row carrying the f-correction: the class of -1, i.e. e v / 2 mod e."""
    if (e * v) % 2:
        raise ValueError("e * v must be even")
    return (e * v // 2) % e


def mult_matrix(cyc: Sequence[Sequence[int]], params: CycParams) -> MultMatrix:
    """C[i, j] = Cyc(i, j) - D_i f.

    D is the indicator of row 0 when f is even or p = 2, and of row e/2 when f is odd.
    """
    h = d_row_index(params.e, params.v)
    f = params.f
    rows = [[x - (f if i == h else 0) for x in row] for i, row in enumerate(cyc)]
    return MultMatrix(_frozen(rows), h)


def period_polynomial(C: Union[MultMatrix, Sequence[Sequence]]) -> tuple:
    """Characteristic polynomial det(X I - C), lowest degree first."""
    entries = C.entries if isinstance(C, MultMatrix) else C
    return tuple(_as_number(c) for c in charpoly(entries))


def evaluate_polynomial(poly: Sequence, x: CyclotomicElement) -> CyclotomicElement:
    acc = CyclotomicElement.zero(x.n)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def gaussian_periods_numeric(
    params: CycParams, threshold: int = DEFAULT_PERIOD_THRESHOLD
) -> list[CyclotomicElement]:
    """eta(i) = sum_j zeta_p^{Tr(gamma^(e j + i))} as exact elements of Q(zeta_p)."""
    if params.s != params.ctx.r:
        raise ValueError("Gaussian periods are computed on the full field only")
    if params.p > threshold:
        raise UseCharPolyInstead(
            f"p = {params.p} exceeds the threshold {threshold}; use period_polynomial"
        )
    ctx, e, p = params.ctx, params.e, params.p
    periods = []
    for i in range(e):
        vec = [0] * p
        for j in range(params.f):
            vec[trace_to_prime(ctx.element(ctx.exp(e * j + i)))] += 1
        periods.append(CyclotomicElement.from_exponents(p, vec))
    return periods


# transforms between cyclotomic numbers and Jacobi sums


def jacobi_from_cyc(
    cyc: Union[MultMatrix, Sequence[Sequence]], params: CycParams
) -> GenJacobiTable:
    """J(a,b) = (-1)^(v a) sum Cyc(i,j) zeta^(a i + b j).

    For a MultMatrix the offset (q - 1) delta_{0,b} is added.
    """
    e, v = params.e, params.v
    is_mult = isinstance(cyc, MultMatrix)
    entries = cyc.entries if is_mult else cyc
    values = {}
    for a in range(e):
        for b in range(e):
            val = _zeta_sum(e, entries, a, b) * _sign(v, a)
            if is_mult and b == 0:
                val = val + (params.q - 1)
            values[(a, b)] = val
    return GenJacobiTable(e, v, Fraction(params.q), values)


def _twisted_inverse_sum(E: GenJacobiTable, v: int, i: int, j: int) -> Fraction:
    """sum_{a,b} (-1)^(v a) zeta^-(a i + b j) E(a,b), which must be rational."""
    e = E.e
    vec = [Fraction(0)] * e
    for a in range(e):
        sign = _sign(v, a)
        for b in range(e):
            shift = a * i + b * j
            for k, coeff in enumerate(E(a, b).coeffs):
                if coeff:
                    vec[(k - shift) % e] += sign * coeff
    return CyclotomicElement.from_exponents(e, vec).rational_value()


def cyc_from_jacobi(J: GenJacobiTable, params: CycParams) -> IntMatrix:
    """Cyc(i,j) = e^-2 sum_{a,b} (-1)^(v a) zeta^-(a i + b j) J(a,b)."""
    e, v = params.e, params.v
    return _frozen(
        [[_as_number(_twisted_inverse_sum(J, v, i, j) / (e * e)) for j in range(e)] for i in range(e)]
    )


def matrix_from_genjacobi(E: GenJacobiTable, check: bool = True) -> tuple[tuple, ...]:
    """Transform (A): h_ij = -f delta_{i, e v/2} + e^-2 sum (-1)^(v a) zeta^-(a i + b j) E(a,b)."""
    if check:
        report = verify_genjacobi_axioms(E)
        for clause in report.clauses:
            if not clause.passed:
                raise AxiomViolation(clause.clause, clause.witness)
    e, v = E.e, E.v
    f = (E.p_value - 1) / e
    h = d_row_index(e, v)
    out = []
    for i in range(e):
        row = []
        for j in range(e):
            val = _twisted_inverse_sum(E, v, i, j) / (e * e) - (f if i == h else 0)
            row.append(_as_number(val))
        out.append(row)
    return _frozen(out)


def genjacobi_from_matrix(
    H: Union[MultMatrix, Sequence[Sequence]], p_value, v: int, e: int
) -> GenJacobiTable:
    """Transform (B): E(a,b) = (p - 1) delta_{0,b} + (-1)^(v a) sum zeta^(a i + b j) h_ij."""
    entries = H.entries if isinstance(H, MultMatrix) else H
    if len(entries) != e:
        raise ValueError(f"matrix is not {e} x {e}")
    p_value = Fraction(p_value)
    values = {}
    for a in range(e):
        for b in range(e):
            val = _zeta_sum(e, entries, a, b) * _sign(v, a)
            if b == 0:
                val = val + (p_value - 1)
            values[(a, b)] = val
    return GenJacobiTable(e, v, p_value, values)


def cyc_from_matrix(H: Sequence[Sequence], p_value, v: int, e: int) -> tuple[tuple, ...]:
    """Cyc = H + f delta_{i, e v/2}, the cyclotomic-number matrix attached to H."""
    f = (Fraction(p_value) - 1) / e
    h = d_row_index(e, v)
    return _frozen(
        [[_as_number(Fraction(x) + (f if i == h else 0)) for x in row] for i, row in enumerate(H)]
    )


# verifiers


def verify_genjacobi_axioms(E: GenJacobiTable, name: str = "genjacobi-axioms") -> Report:
    """Check the seven defining clauses of a generalized Jacobi table.

    Clauses are checked for every residue triple satisfying their divisibility
    hypotheses; each clause records its first counterexample.
    """
    e, v, p_value = E.e, E.v, E.p_value
    report = Report(name, meta={"e": e, "v": v, "p_value": str(p_value)})
    res = range(e)

    check = ClauseCheck(report, "1")
    if (v * e) % 2:
        check(False, ("v e odd", v, e))
    for a in res:
        for b in res:
            check(E(a + e, b) == E(a, b) == E(a, b + e), (a, b))
    check.close("periodicity modulo e")

    check = ClauseCheck(report, "2")
    for a in res:
        for b in res:
            check(E(a, b) == E(b, a), (a, b))
    check.close("symmetry")

    check = ClauseCheck(report, "3")
    for a in res:
        for b in res:
            check(E(a, b) == E(-a - b, b) * _sign(v, b), (a, b))
    check.close("E(a,b) = (-1)^(v b) E(-a-b, b)")

    check = ClauseCheck(report, "4")
    for a in range(1, e):
        check(E(a, 0) == -1, (a, 0))
    check.close("E(a,0) = -1 for e not dividing a")

    check = ClauseCheck(report, "5")
    for a in range(1, e):
        for b in range(1, e):
            if (a + b) % e:
                check(E(a, b) * E(-a, -b) == p_value, (a, b))
    check.close("E(a,b) E(-a,-b) = p")

    check = ClauseCheck(report, "6")
    # the four-term relation also needs e not dividing a: at a = 0 the left side is 1
    # while the right side is a product of two conjugate sums of norm p
    for a in range(1, e):
        for b in res:
            if (a + b) % e == 0:
                continue
            for c in res:
                t = a + b + c
                if (a + c) % e == 0 or t % e == 0:
                    continue
                lhs = E(a, b) * E(-a, -c)
                rhs = E(-t, b) * E(t, -c) * _sign(v, b + c)
                check(lhs == rhs, (a, b, c))
    check.close("four-term product relation")

    check = ClauseCheck(report, "7")
    for c in range(1, e):
        if gcd(c, e) != 1:
            continue
        for a in res:
            for b in res:
                check(E(a, b).galois(c) == E(c * a, c * b), (a, b, c))
    check.close("Galois equivariance")
    return report


def verify_T7(J: GenJacobiTable, params: CycParams) -> Report:
    """All seven classical Jacobi-sum properties for the table J of ``params``."""
    report = verify_genjacobi_axioms(J, name="jacobi-properties")
    report.meta.update(params.meta())
    if J.p_value != params.q or J.v != params.v or J.e != params.e:
        report.add("metadata", False, 1, (J.e, J.v, str(J.p_value)), "table does not match params")
    return report


def shift_matrix(e: int) -> list[list[int]]:
    """Circulant K = [delta_{i+1, j}]."""
    return [[int((i + 1) % e == j) for j in range(e)] for i in range(e)]


def verify_matrix_conditions(
    H: Union[MultMatrix, Sequence[Sequence]], e: int, v: int, p_value, name: str = "matrix-conditions"
) -> Report:
    """Conditions (i)-(vii) for a (generalized) multiplication matrix with parity v."""
    entries = H.entries if isinstance(H, MultMatrix) else H
    p_value = Fraction(p_value)
    f = (p_value - 1) / e
    half = d_row_index(e, v)
    report = Report(name, meta={"e": e, "v": v, "p_value": str(p_value)})

    def c(i, j):
        return entries[i % e][j % e]

    def delta(x, y):
        return int((x - y) % e == 0)

    res = range(e)
    check = ClauseCheck(report, "i")
    check(len(entries) == e and all(len(row) == e for row in entries), "shape")
    for i in res:
        for j in res:
            check(c(i + e, j) == c(i, j + e) == c(i, j), (i, j))
    check.close("periodicity modulo e")

    check = ClauseCheck(report, "ii")
    for i in res:
        for j in res:
            rhs = c(j + half, i + half) + f * (delta(0, j) - delta(i, half))
            check(c(i, j) == rhs, (i, j))
    check.close("transpose relation through the class of -1")

    check = ClauseCheck(report, "iii")
    for i in res:
        check(sum(c(i, k) for k in res) == f - p_value * delta(i, half), (i,))
    check.close("row sums")

    check = ClauseCheck(report, "iv")
    for j in res:
        check(sum(c(k, j) for k in res) == -delta(0, j), (j,))
    check.close("column sums")

    check = ClauseCheck(report, "v")
    for i in res:
        for j in res:
            check(c(i, j) == c(-i, j - i), (i, j))
    check.close("c(i,j) = c(-i, j-i)")

    check = ClauseCheck(report, "vi")
    for i in res:
        for j in res:
            for l in res:
                lhs = sum(c(i, k) * c(k - j, l - j) for k in res)
                rhs = sum(c(j, k) * c(k - i, l - i) for k in res)
                check(lhs == rhs, (i, j, l))
    check.close("quadratic relation")

    check = ClauseCheck(report, "vii")
    K = shift_matrix(e)
    Kinv = [list(col) for col in zip(*K)]
    cur_left, cur_right = [[int(i == j) for j in res] for i in res], [[int(i == j) for j in res] for i in res]
    for k in res:
        conj = matmul(matmul(cur_left, entries), cur_right)
        check(matmul(entries, conj) == matmul(conj, entries), (k,))
        cur_left = matmul(cur_left, Kinv)
        cur_right = matmul(cur_right, K)
    check.close("C commutes with its circulant conjugates")
    return report


def verify_T8(C: Union[MultMatrix, Sequence[Sequence]], params: CycParams) -> Report:
    report = verify_matrix_conditions(C, params.e, params.v, params.q, name="multiplication-matrix")
    report.meta.update(params.meta())
    return report
