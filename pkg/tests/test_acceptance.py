"""The ten acceptance criteria, each checked exactly (no tolerance).

Every test records a one-line PASS/FAIL verdict that is printed in the terminal summary.
"""

import pytest

from cyclojac import acceptance
from cyclojac import dickson as dk
from cyclojac.finite_field import prime_power_decomposition

SEED = 0


@pytest.fixture(scope="module")
def reports():
    cache = {}

    def get(k):
        if k not in cache:
            cache[k] = acceptance.run_all(seed=SEED, only=[k])[k]
        return cache[k]

    return get


def record(summary, k, rep):
    summary[k] = acceptance.summary_line(k, rep)
    print(summary[k])


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, reports, acceptance_summary):
    rep = reports(k)
    record(acceptance_summary, k, rep)
    assert rep.passed, [(c.clause, c.witness) for c in rep.failures()]


@pytest.mark.xfail(
    strict=True,
    reason=(
        "side condition unattainable: J*(1,1) is fixed by sigma_p, so for p != 1 (mod l) it lies "
        "in a proper subfield of Q(zeta_l); every such tuple violates the side condition "
        "(e.g. 4 * 16 = x1^2 + 27 x2^2 has no solution with x1 odd)"
    ),
)
def test_criterion_10(reports, acceptance_summary):
    rep = reports(10)
    record(acceptance_summary, 10, rep)
    assert rep.passed, [(c.clause, c.witness) for c in rep.failures()]


def test_criterion_10_apart_from_pure_jacobi_sums(reports):
    rep = reports(10)
    failing = {c.clause for c in rep.failures()}
    assert failing <= {f"l={l}:nondegenerate" for l in (3, 5, 7)}
    for l in (3, 5, 7):
        assert rep.clause(f"l={l}:nondegenerate-when-p=1(mod l)").passed
        for name in ("equations", "lifts", "routes-agree", "self-lift"):
            assert rep.clause(f"l={l}:{name}").passed
        expected = [
            p**r for p, r in acceptance.dickson_prime_powers(l, 2000) if p % l != 1
        ]
        assert rep.meta[f"degenerate(l={l})"] == expected
        for q in expected:
            p, r = prime_power_decomposition(q)
            J = dk.jacobi_from_tuple(dk.jacobi_solution(l, p, r).x, l)
            assert J.galois(p) == J


def test_no_cubic_solution_for_sixteen_meets_side_condition():
    sols = [(x1, x2) for x1 in range(-8, 9) for x2 in range(-1, 2) if x1 * x1 + 27 * x2 * x2 == 64]
    assert sols and all(x1 % 2 == 0 for x1, _ in sols)
