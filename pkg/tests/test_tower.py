import itertools
import random
from collections import Counter

import pytest

from gl2ext.lambda_basis import LambdaMonomial, k_degree, lambda_unit
from gl2ext.paths import PathMonomial
from gl2ext.tower import (
    TensorMonomial,
    embed,
    enumerate_weight_zero,
    ext_dim_table,
    idempotent,
    is_weight_zero_basis_element,
    random_weight_zero,
    tensor_mult,
    tensor_sort_key,
    vertex_tuples,
    weight,
    yoneda_degree,
)


def L(s, a, b, n, h):
    return LambdaMonomial(PathMonomial(s, a, b), n, h)


def T(factors, z):
    return TensorMonomial(tuple(factors), z)


def test_tensor_mult_idempotent_square():
    e = idempotent((1, 1))
    result = tensor_mult(2, e, e)
    assert result.sign == 1 and result.monomial == e


def test_tensor_mult_sign_example():
    a = T([L(1, 0, 0, 0, 0), L(1, 0, 0, 0, 1)], 0)
    b = T([L(1, 1, 0, 0, 0), L(1, 0, 0, 0, 0)], 0)
    result = tensor_mult(2, a, b)
    assert result.sign == -1
    assert result.monomial == T([L(1, 1, 0, 0, 0), L(1, 0, 0, 0, 1)], 0)


def test_tensor_mult_zero_propagates():
    a = T([L(1, 1, 0, 0, 0), L(1, 0, 0, 1, 0)], 1)
    b = T([L(3, 0, 0, 0, 0), L(1, 0, 0, 0, 0)], 0)  # first slot source mismatch
    assert tensor_mult(3, a, b) is None


def test_tensor_mult_rejects_mismatched_q():
    with pytest.raises(ValueError):
        tensor_mult(2, idempotent((1,)), idempotent((1, 1)))


def test_weight_examples():
    m = T([L(1, 1, 0, 0, 0), L(1, 0, 0, 1, 0)], 1)
    assert weight(3, m) == (0, 0, 0)
    assert weight(3, T([L(1, 1, 0, 0, 0)], 0)) == (0, -1)
    assert weight(3, idempotent((2, 3)), ) == (0, 0, 0)


def test_embed_examples():
    m = T([L(1, 1, 0, 0, 0)], 1)
    assert embed(m) == T([lambda_unit(), L(1, 1, 0, 0, 0)], 1)
    rng = random.Random(7)
    for _ in range(200):
        a = random_weight_zero(rng, 3, 2)
        assert weight(3, embed(a)) == (0,) + weight(3, a)
        b = random_weight_zero(rng, 3, 2)
        r = tensor_mult(3, a, b)
        er = tensor_mult(3, embed(a), embed(b))
        if r is None:
            assert er is None
        else:
            assert er.sign == r.sign and er.monomial == embed(r.monomial)


def test_enumerate_p2_q1():
    basis = enumerate_weight_zero(2, 1)
    assert len(basis) == 5
    assert [m.z for m in basis] == [0, 0, 1, 1, 2]
    assert basis == sorted(basis, key=tensor_sort_key)


def test_enumerate_idempotent_counts():
    for p, q in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)):
        basis = enumerate_weight_zero(p, q)
        assert sum(1 for m in basis if m.z == 0) == p**q


def test_enumerate_invalid_arguments():
    with pytest.raises(ValueError):
        enumerate_weight_zero(4, 1)
    with pytest.raises(ValueError):
        enumerate_weight_zero(2, 0)


def test_q1_matches_omega_degrees():
    from gl2ext.paths import omega_basis

    for p in (2, 3, 5):
        basis = enumerate_weight_zero(p, 1)
        assert len(basis) == len(omega_basis(p))
        assert Counter(m.z for m in basis) == Counter(
            b.degree for b in omega_basis(p)
        )


def test_yoneda_degree():
    m = T([L(1, 2, 0, 0, 0), L(1, 1, 0, 2, 0)], 3)
    assert yoneda_degree(3, m) == 3
    assert yoneda_degree(3, idempotent((2, 2))) == 0
    assert yoneda_degree(3, T([L(1, 2, 0, 0, 0), L(1, 2, 0, 0, 2)], 8)) == 8
    with pytest.raises(ValueError):
        yoneda_degree(3, T([L(1, 1, 0, 0, 0)], 0))


def test_ext_degree_equals_total_k_degree():
    for p, q in ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1)):
        for m in enumerate_weight_zero(p, q):
            assert sum(k_degree(p, f) for f in m.factors) == m.z


def test_vertex_tuples_examples():
    assert vertex_tuples(3, idempotent((2, 3))) == ((2, 3), (2, 3))
    assert vertex_tuples(3, T([L(1, 0, 0, 1, 0)], 0)) == ((1,), (2,))
    assert vertex_tuples(3, T([L(1, 1, 0, 0, 0)], 0)) == ((1,), (2,))


def test_signed_closure_exhaustive_small():
    for p, q in ((2, 1), (2, 2), (3, 1)):
        basis = enumerate_weight_zero(p, q)
        index = set(basis)
        for a, b in itertools.product(basis, repeat=2):
            r = tensor_mult(p, a, b)
            if r is not None:
                assert r.sign in (-1, 1)
                assert r.monomial in index


def test_weight_additivity_on_products():
    rng = random.Random(11)
    from gl2ext.paths import omega_basis, theta_basis

    for _ in range(2000):
        p = rng.choice((2, 3, 5))
        q = rng.randint(1, 3)

        def pick():
            n, h = rng.randint(0, 2), rng.randint(0, 2)
            pool = omega_basis(p) if n == 0 else theta_basis(p)
            return LambdaMonomial(rng.choice(pool), n, h)

        a = T([pick() for _ in range(q)], rng.randint(0, 5))
        b = T([pick() for _ in range(q)], rng.randint(0, 5))
        r = tensor_mult(p, a, b)
        if r is not None:
            wa, wb = weight(p, a), weight(p, b)
            assert tuple(x + y for x, y in zip(wa, wb)) == weight(p, r.monomial)


def test_embed_maps_basis_into_bigger_basis():
    basis = enumerate_weight_zero(2, 1)
    bigger = set(enumerate_weight_zero(2, 2))
    embedded = [embed(m) for m in basis]
    assert len(set(embedded)) == len(basis)
    assert all(m in bigger for m in embedded)


def test_random_weight_zero_is_in_basis():
    rng = random.Random(3)
    for p, q in ((2, 2), (3, 2)):
        index = set(enumerate_weight_zero(p, q))
        for _ in range(200):
            assert random_weight_zero(rng, p, q) in index


def test_is_weight_zero_basis_element():
    assert is_weight_zero_basis_element(2, idempotent((1, 2)))
    assert not is_weight_zero_basis_element(2, T([L(1, 1, 0, 0, 0)], 0))


def test_ext_dim_table_p2_q1():
    table = ext_dim_table(2, 1)
    assert sum(table.values()) == 5
    assert sum(d for (l, r, n), d in table.items() if n == 0) == 2
    assert all(l == r for (l, r, n), d in table.items() if n == 0)


def test_ext_dim_table_p3_q2_column():
    table = ext_dim_table(3, 2)
    assert sum(table.values()) == len(enumerate_weight_zero(3, 2))
    column = Counter()
    for (l, r, n), d in table.items():
        if l == (1, 1):
            column[n] += d
    assert dict(column) == {0: 1, 1: 2, 2: 3, 3: 2, 4: 2, 5: 2, 6: 1, 7: 1, 8: 1}
