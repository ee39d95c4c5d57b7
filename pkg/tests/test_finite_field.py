import pytest

from cyclojac.errors import BadSubfield, NotAGenerator, NotPrime, TooLarge
from cyclojac.finite_field import (
    build_ctx,
    in_subfield,
    index,
    is_irreducible,
    is_prime,
    norm_to_subfield,
    prime_power_decomposition,
    smallest_irreducible,
    trace_to_prime,
)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power_decomposition(49) == (7, 2)
    assert prime_power_decomposition(1024) == (2, 10)
    assert prime_power_decomposition(12) is None
    assert prime_power_decomposition(1) is None


def test_generator_hint_seven():
    ctx = build_ctx(7, 1, gamma_hint=3)
    assert ctx.gamma == (3,)
    assert ctx.ind(3) == 1 and ctx.ind(2) == 2
    assert index(ctx.element(6)) == 3
    assert index(ctx.element(1)) == 0


def test_non_generator_rejected():
    with pytest.raises(NotAGenerator):
        build_ctx(7, 1, gamma_hint=4)
    with pytest.raises(NotPrime):
        build_ctx(9, 1)
    with pytest.raises(TooLarge):
        build_ctx(101, 2, budget=1000)


def test_field_of_two():
    ctx = build_ctx(2, 1)
    assert ctx.gamma == (1,)
    assert ctx.exp(0) == 1


@pytest.mark.parametrize("p,r", [(2, 3), (3, 2), (5, 2), (7, 2), (2, 4)])
def test_tables_are_bijections(p, r):
    ctx = build_ctx(p, r)
    q = p**r
    assert sorted(ctx.ind(c) for c in range(1, q)) == list(range(q - 1))
    assert all(ctx.exp(ctx.ind(c)) == c for c in range(1, q))
    g = ctx.element(ctx.gamma_code)
    assert (g ** (q - 1)).code == 1
    assert all((g**m).code != 1 for m in range(1, q - 1))
    assert is_irreducible(ctx.modulus, p)
    assert ctx.modulus == smallest_irreducible(p, r)


def test_field_arithmetic_laws():
    ctx = build_ctx(3, 3)
    els = [ctx.element(c) for c in range(27)]
    for a in els[::4]:
        for b in els[::5]:
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) * a == a * a + b * a
            if b:
                assert (a / b) * b == a


def test_trace():
    ctx = build_ctx(3, 2)
    assert trace_to_prime(ctx.element(0)) == 0
    assert trace_to_prime(ctx.element(1)) == 2 % 3
    root = ctx.element((0, 1))
    assert trace_to_prime(root) == (-ctx.modulus[1]) % 3
    ctx5 = build_ctx(5, 3)
    assert trace_to_prime(ctx5.element(1)) == 3


def test_norm_to_subfield():
    ctx = build_ctx(7, 2)
    zero, one = ctx.element(0), ctx.element(1)
    assert norm_to_subfield(zero, 1) == zero and norm_to_subfield(one, 1) == one
    g = ctx.element(ctx.gamma_code)
    assert norm_to_subfield(g, 2) == g
    n = norm_to_subfield(g, 1)
    assert n == g ** 8
    assert in_subfield(n, 1)
    # a generator of F_7^x: order 6
    assert ctx.ind(n.code) % 8 == 0 and all((n**m).code != 1 for m in range(1, 6))
    with pytest.raises(BadSubfield):
        norm_to_subfield(g, 3)


def test_context_json():
    ctx = build_ctx(5, 2)
    data = ctx.to_json()
    assert data["p"] == 5 and data["r"] == 2 and len(data["modulus"]) == 3
    assert build_ctx(5, 2, gamma_hint=data["gamma"]).gamma == ctx.gamma
