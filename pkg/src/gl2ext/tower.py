"""Signed monomial tuples of the tensor tower and the weight-zero basis.

A tower element [beta_1, ..., beta_q, z] is an ordered tuple of q layer
monomials together with a power z of the outer degree-zero generator.
Products are coordinate-wise with the usual super sign attached to factors
crossing each other, graded by the homological degree of the layers (the
outer generator is homologically flat and never contributes a sign).

The weight of a tuple chains the coupling degrees: consecutive factors
must couple and z must absorb the last coupling for the weight to vanish.
Weight-zero tuples are closed under the signed product and are enumerated
here in a canonical order; their z exponent is the Yoneda degree.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import NamedTuple, Optional

from .paths import VARIANT_CORRECTED, PathMonomial, omega_basis, require_prime, theta_basis
from .lambda_basis import (
    LambdaMonomial,
    bidegree,
    is_valid,
    k_degree,
    lambda_mult,
    lambda_unit,
    sort_key,
)


class TensorMonomial(NamedTuple):
    """Ordered layer factors plus the exponent z of the outer generator."""

    factors: tuple[LambdaMonomial, ...]
    z: int


class SignedTensorMonomial(NamedTuple):
    sign: int
    monomial: TensorMonomial


def tensor_sort_key(m: TensorMonomial):
    """Canonical order: by z, then factor-wise canonical layer order."""
    return (m.z, tuple(sort_key(f) for f in m.factors))


def tensor_mult(
    p: int,
    a: TensorMonomial,
    b: TensorMonomial,
    variant: str = VARIANT_CORRECTED,
) -> Optional[SignedTensorMonomial]:
    """Coordinate-wise product with the super sign; None when any slot dies.

    The sign exponent sums k_degree(a_i) * k_degree(b_j) over pairs i > j,
    i.e. over left factors passing right factors that sit in earlier slots.
    """
    if len(a.factors) != len(b.factors):
        raise ValueError(
            f"factor counts differ: {len(a.factors)} vs {len(b.factors)}"
        )
    factors = []
    for x, y in zip(a.factors, b.factors):
        prod = lambda_mult(p, x, y, variant)
        if prod is None:
            return None
        factors.append(prod)
    exponent = 0
    kb = [k_degree(p, y) for y in b.factors]
    for i, x in enumerate(a.factors):
        ka = k_degree(p, x)
        if ka:
            exponent += ka * sum(kb[:i])
    sign = -1 if exponent % 2 else 1
    return SignedTensorMonomial(sign, TensorMonomial(tuple(factors), a.z + b.z))


def weight(
    p: int, m: TensorMonomial, variant: str = VARIANT_CORRECTED
) -> tuple[int, ...]:
    """Weight vector (e_l(b1), e_l(b2)-e_r(b1), ..., z-e_r(bq)) of length q+1."""
    degrees = [bidegree(p, f, variant) for f in m.factors]
    entries = [degrees[0].e_l]
    for prev, cur in zip(degrees, degrees[1:]):
        entries.append(cur.e_l - prev.e_r)
    entries.append(m.z - degrees[-1].e_r)
    return tuple(entries)


def embed(m: TensorMonomial) -> TensorMonomial:
    """Prepend the unit idempotent; multiplicative, sign- and weight-preserving."""
    return TensorMonomial((lambda_unit(),) + m.factors, m.z)


def coupling_bound(p: int, level: int) -> int:
    """Upper bound p*level + 2p - 2 on the coupling degree at a given level."""
    return p * level + 2 * p - 2


def enumerate_weight_zero(
    p: int, q: int, variant: str = VARIANT_CORRECTED
) -> list[TensorMonomial]:
    """The complete weight-zero basis at q factors, canonically ordered.

    Chains are built left to right: the first factor must have level 0,
    each next level equals the previous coupling degree, and z closes the
    chain.  Levels obey d(1) = 0, d(i+1) <= p*d(i) + 2p - 2, so the
    enumeration is finite without any external cutoff.
    """
    require_prime(p)
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    omega = omega_basis(p, variant)
    theta = theta_basis(p)
    out: list[TensorMonomial] = []

    def extend(factors: list[LambdaMonomial], need: int, remaining: int) -> None:
        if remaining == 0:
            out.append(TensorMonomial(tuple(factors), need))
            return
        for n in range(need + 1):
            h = need - n
            for b in omega if n == 0 else theta:
                e = LambdaMonomial(b, n, h)
                r = bidegree(p, e, variant).e_r
                assert r <= coupling_bound(p, need)
                factors.append(e)
                extend(factors, r, remaining - 1)
                factors.pop()

    extend([], 0, q)
    out.sort(key=tensor_sort_key)
    return out


def random_weight_zero(
    rng: random.Random, p: int, q: int, variant: str = VARIANT_CORRECTED
) -> TensorMonomial:
    """Sample one weight-zero tuple by random chain choices (not uniform)."""
    omega = omega_basis(p, variant)
    theta = theta_basis(p)
    factors = []
    need = 0
    for _ in range(q):
        n = rng.randint(0, need)
        h = need - n
        b = rng.choice(omega if n == 0 else theta)
        e = LambdaMonomial(b, n, h)
        factors.append(e)
        need = bidegree(p, e, variant).e_r
    return TensorMonomial(tuple(factors), need)


def is_weight_zero_basis_element(
    p: int, m: TensorMonomial, variant: str = VARIANT_CORRECTED
) -> bool:
    return all(is_valid(p, f, variant) for f in m.factors) and not any(
        weight(p, m, variant)
    )


def yoneda_degree(p: int, m: TensorMonomial, variant: str = VARIANT_CORRECTED) -> int:
    """The z exponent of a weight-zero tuple; rejects nonzero weight."""
    w = weight(p, m, variant)
    if any(w):
        raise ValueError(f"yoneda_degree requires weight zero, got weight {w}")
    return m.z


def vertex_tuples(p: int, m: TensorMonomial) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Left and right idempotent vertex tuples of a tower element.

    The right vertex of a factor is its path target, reflected through p
    when the tensor power is odd (the right action is twisted).
    """
    left = tuple(f.b.s for f in m.factors)
    right = tuple(
        f.b.target if f.n % 2 == 0 else p - f.b.target for f in m.factors
    )
    return left, right


def idempotent(vertices: tuple[int, ...]) -> TensorMonomial:
    return TensorMonomial(
        tuple(LambdaMonomial(PathMonomial(v, 0, 0), 0, 0) for v in vertices), 0
    )


def ext_dim_table(
    p: int, q: int, variant: str = VARIANT_CORRECTED
) -> dict[tuple[tuple[int, ...], tuple[int, ...], int], int]:
    """Count weight-zero elements by (left tuple, right tuple, Yoneda degree)."""
    table: Counter = Counter()
    for m in enumerate_weight_zero(p, q, variant):
        left, right = vertex_tuples(p, m)
        table[(left, right, m.z)] += 1
    return dict(table)
