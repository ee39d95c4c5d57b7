from fractions import Fraction

import pytest

from cyclojac.cyclotomic import CyclotomicElement
from cyclojac.cyclotomy import (
    CycParams,
    GenJacobiTable,
    MultMatrix,
    UseCharPolyInstead,
    cyc_from_jacobi,
    cyc_from_matrix,
    cyclotomic_numbers,
    evaluate_polynomial,
    gaussian_periods_numeric,
    genjacobi_from_matrix,
    jacobi_from_cyc,
    jacobi_sum,
    jacobi_table,
    matrix_from_genjacobi,
    mult_matrix,
    period_polynomial,
    verify_genjacobi_axioms,
    verify_T7,
    verify_T8,
)
from cyclojac.errors import AxiomViolation
from cyclojac.finite_field import build_ctx


def params(p, r, e, gamma=None):
    return CycParams(build_ctx(p, r, gamma_hint=gamma), e)


@pytest.fixture(scope="module")
def seven():
    return params(7, 1, 3, gamma=3)


def test_cyclotomic_numbers_for_seven(seven):
    assert cyclotomic_numbers(seven) == ((0, 0, 1), (0, 1, 1), (1, 1, 0))


@pytest.mark.parametrize("p,r,e", [(7, 1, 3), (13, 1, 4), (13, 1, 6), (31, 1, 5), (3, 2, 4), (2, 4, 5), (5, 2, 3)])
def test_cyclotomic_number_totals(p, r, e):
    par = params(p, r, e)
    cyc = cyclotomic_numbers(par)
    assert sum(map(sum, cyc)) == p**r - 2
    if par.f == 1:
        assert all(x in (0, 1) for row in cyc for x in row)


def test_jacobi_values_for_seven(seven):
    assert jacobi_sum(seven, 1, 0) == -1
    assert jacobi_sum(seven, 0, 0) == 5
    J = jacobi_sum(seven, 1, 1)
    assert J == CyclotomicElement.from_exponents(3, [2, 0, 3])
    assert list(J.a0_view()) == [0, -2, 1]
    assert J * J.galois(-1) == 7


def test_multiplication_matrix_for_seven(seven):
    C = mult_matrix(cyclotomic_numbers(seven), seven)
    assert C.entries == ((-2, -2, -1), (0, 1, 1), (1, 1, 0))
    assert C.d_row == 0
    assert [sum(row) for row in C.entries] == [-5, 2, 2]
    assert [sum(col) for col in zip(*C.entries)] == [-1, 0, 0]


def test_d_row_for_odd_f():
    par = params(11, 1, 2)
    assert par.f == 5 and par.v == 5
    C = mult_matrix(cyclotomic_numbers(par), par)
    assert C.d_row == 1
    assert params(2, 3, 7).v == 0


@pytest.mark.parametrize("p,e", [(7, 2), (13, 2), (13, 3), (11, 5)])
def test_periods_are_roots_of_period_polynomial(p, e):
    par = params(p, 1, e)
    C = mult_matrix(cyclotomic_numbers(par), par)
    poly = period_polynomial(C)
    etas = gaussian_periods_numeric(par)
    assert all(not evaluate_polynomial(poly, eta) for eta in etas)
    total = sum(etas[1:], etas[0])
    assert total == -1
    # eta(0) eta(i) = sum_j C[i][j] eta(j)
    for i in range(e):
        rhs = sum((etas[j] * C.entries[i][j] for j in range(1, e)), etas[0] * C.entries[i][0])
        assert etas[0] * etas[i] == rhs


def test_period_polynomial_quadratic():
    par = params(13, 1, 2)
    poly = period_polynomial(mult_matrix(cyclotomic_numbers(par), par))
    assert poly == (-3, 1, 1)


def test_periods_threshold():
    with pytest.raises(UseCharPolyInstead):
        gaussian_periods_numeric(params(211, 1, 3), threshold=200)


def test_period_polynomial_over_extension_field():
    par = params(3, 2, 4)
    etas = gaussian_periods_numeric(par)
    poly = period_polynomial(mult_matrix(cyclotomic_numbers(par), par))
    assert all(not evaluate_polynomial(poly, eta) for eta in etas)


@pytest.mark.parametrize("p,r,e", [(7, 1, 3), (13, 1, 3), (13, 1, 4), (11, 1, 5), (3, 2, 4), (2, 3, 7), (5, 2, 6)])
def test_round_trips(p, r, e):
    par = params(p, r, e)
    cyc = cyclotomic_numbers(par)
    J = jacobi_table(par)
    assert cyc_from_jacobi(J, par) == cyc
    assert jacobi_from_cyc(cyc, par).values == J.values
    C = mult_matrix(cyc, par)
    assert jacobi_from_cyc(C, par).values == J.values
    assert matrix_from_genjacobi(J) == C.entries
    assert genjacobi_from_matrix(C, par.q, par.v, e).values == J.values
    assert cyc_from_matrix(C.entries, par.q, par.v, e) == cyc


@pytest.mark.parametrize("p,r,e", [(13, 1, 3), (13, 1, 12), (2, 4, 5), (3, 3, 13), (19, 1, 6)])
def test_jacobi_properties_and_matrix_conditions(p, r, e):
    par = params(p, r, e)
    assert verify_T7(jacobi_table(par), par).passed
    assert verify_T8(mult_matrix(cyclotomic_numbers(par), par), par).passed


def test_perturbed_matrix_fails_conditions(seven):
    C = mult_matrix(cyclotomic_numbers(seven), seven)
    rows = [list(r) for r in C.entries]
    rows[1][2] += 1
    rows[2][2] -= 1
    report = verify_T8(rows, seven)
    assert not report.passed
    assert report.failures()


def test_constant_table_fails_normalization():
    units = {(a, b): CyclotomicElement.one(3) for a in range(3) for b in range(3)}
    report = verify_genjacobi_axioms(GenJacobiTable(3, 0, 7, units))
    assert not report.clause("4").passed
    assert report.clause("4").witness == (1, 0)
    with pytest.raises(AxiomViolation):
        matrix_from_genjacobi(GenJacobiTable(3, 0, 7, units))


def test_quartic_case_over_five():
    par = params(5, 1, 4)
    J = jacobi_table(par)
    assert J(1, 1) * J(-1, -1) == 5
    # a + b = 0 mod e: J(a, -a) = -chi(-1)^a
    assert params(5, 1, 2).v == 2 and jacobi_table(params(5, 1, 2))(1, 1) == -1
    assert verify_T7(J, par).passed


def test_table_json_round_trip(seven):
    J = jacobi_table(seven)
    again = GenJacobiTable.from_json(J.to_json())
    assert again.values == J.values and again.p_value == Fraction(7) and again.v == J.v


def test_subfield_params():
    big = build_ctx(5, 2)
    sub = CycParams(big, 2, s=1)
    assert sub.q == 5 and sub.f == 2
    assert verify_T7(jacobi_table(sub), sub).passed
    with pytest.raises(ValueError):
        CycParams(big, 5)
    assert isinstance(mult_matrix(cyclotomic_numbers(sub), sub), MultMatrix)
