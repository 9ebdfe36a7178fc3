"""Basis monomials (b, n, h) of the twisted tensor layer.

An element couples a path class b with a tensor power n of the reflected
open-strip bimodule and a power h of the central degree-raising generator.
The path part lives in the closed strip when n = 0 and in the open strip
when n > 0.  Products reflect the right factor whenever the left tensor
power is odd; the layer product itself is sign-free (signs belong to the
tensor tower on top of it).
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .paths import (
    VARIANT_CORRECTED,
    PathMonomial,
    check_variant,
    in_omega,
    in_theta,
    omega_basis,
    pi_mult,
    sigma,
    theta_basis,
)


class LambdaMonomial(NamedTuple):
    """Path class b, tensor power n, central generator power h."""

    b: PathMonomial
    n: int
    h: int


class BiDegree(NamedTuple):
    """Left (level) degree and right (coupling) degree of a layer element."""

    e_l: int
    e_r: int


def lambda_unit() -> LambdaMonomial:
    """The distinguished idempotent at vertex 1, of bidegree (0, 0)."""
    return LambdaMonomial(PathMonomial(1, 0, 0), 0, 0)


def is_valid(p: int, e: LambdaMonomial, variant: str = VARIANT_CORRECTED) -> bool:
    if e.n < 0 or e.h < 0:
        return False
    if e.n == 0:
        return in_omega(p, e.b, variant)
    return in_theta(p, e.b)


def lambda_mult(
    p: int,
    x: LambdaMonomial,
    y: LambdaMonomial,
    variant: str = VARIANT_CORRECTED,
) -> Optional[LambdaMonomial]:
    """Layer product; the right path is reflected when x.n is odd.

    Returns None (zero) when the path parts do not compose or the
    composite leaves the basis prescribed by the total tensor power.
    """
    right = y.b if x.n % 2 == 0 else sigma(p, y.b)
    path = pi_mult(x.b, right)
    if path is None:
        return None
    n = x.n + y.n
    if n == 0:
        if not in_omega(p, path, variant):
            return None
    elif not in_theta(p, path):
        return None
    return LambdaMonomial(path, n, x.h + y.h)


def bidegree(p: int, e: LambdaMonomial, variant: str = VARIANT_CORRECTED) -> BiDegree:
    """Bidegree (e_l, e_r) = (n + h, p*h + |b| + n).

    The printed variant drops the +n term of the coupling degree; it is
    inconsistent with the explicit weight-zero data and is exposed only
    for comparison runs.
    """
    e_l = e.n + e.h
    e_r = p * e.h + e.b.degree
    if check_variant(variant) == VARIANT_CORRECTED:
        e_r += e.n
    return BiDegree(e_l, e_r)


def k_degree(p: int, e: LambdaMonomial) -> int:
    """Homological degree |b| + (p-1)*h; the tensor power does not enter."""
    return e.b.degree + (p - 1) * e.h


def path_j_degree(p: int, e: LambdaMonomial) -> int:
    """Plain path-length grading p*h + |b|, kept distinct from the coupling degree."""
    return p * e.h + e.b.degree


def sort_key(e: LambdaMonomial) -> tuple[int, int, int, int, int]:
    """Canonical order: lexicographic on (n, h, s, alpha, beta)."""
    return (e.n, e.h, e.b.s, e.b.alpha, e.b.beta)


def level_elements(
    p: int, level: int, variant: str = VARIANT_CORRECTED
) -> Iterator[LambdaMonomial]:
    """All layer elements with e_l = n + h equal to ``level``, canonically ordered."""
    if level < 0:
        return
    omega = omega_basis(p, variant)
    theta = theta_basis(p)
    for n in range(level + 1):
        h = level - n
        for b in omega if n == 0 else theta:
            yield LambdaMonomial(b, n, h)
