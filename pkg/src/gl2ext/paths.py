"""Monomial combinatorics of commuting-path classes on a doubled A-type line.

A path class (s, alpha, beta) records a source vertex s together with alpha
upward and beta downward unit steps; all interleavings of the steps are
identified, so the class is determined by the triple alone.  Two finite
truncations matter downstream: the closed strip on vertices 1..p (omega,
walled above at p, killed at and below 0) and the open strip on vertices
1..p-1 (theta, killed at and below 0 and at and above p).

The zero product is represented by ``None`` throughout; it is a value, not
an error.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

VARIANT_CORRECTED = "corrected"
VARIANT_PRINTED = "printed"
VARIANTS = (VARIANT_CORRECTED, VARIANT_PRINTED)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"p must be a prime >= 2, got {p}")
    return p


def check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    return variant


class PathMonomial(NamedTuple):
    """A commuting-path class with source s, alpha up-steps, beta down-steps."""

    s: int
    alpha: int
    beta: int

    @property
    def target(self) -> int:
        return self.s + self.alpha - self.beta

    @property
    def degree(self) -> int:
        return self.alpha + self.beta


def pi_mult(a: PathMonomial, b: PathMonomial) -> Optional[PathMonomial]:
    """Concatenate path classes a then b; None when the endpoints mismatch."""
    if a.target != b.s:
        return None
    return PathMonomial(a.s, a.alpha + b.alpha, a.beta + b.beta)


def in_omega(p: int, m: PathMonomial, variant: str = VARIANT_CORRECTED) -> bool:
    """Membership in the closed-strip basis on vertices 1..p.

    The corrected rule bounds the target by p; the printed rule instead
    bounds alpha by p-1 and is kept only for comparison runs (it admits
    classes whose every representative leaves the strip, e.g. (2,1,0) at
    p=2, and fails the presentation oracle).
    """
    if m.alpha < 0 or m.beta < 0:
        return False
    if not (1 <= m.s <= p and m.beta <= m.s - 1):
        return False
    if check_variant(variant) == VARIANT_PRINTED:
        return m.alpha <= p - 1
    return m.target <= p


def in_theta(p: int, m: PathMonomial) -> bool:
    """Membership in the open-strip basis on vertices 1..p-1."""
    if m.alpha < 0 or m.beta < 0:
        return False
    return 1 <= m.s <= p - 1 and m.alpha <= p - m.s - 1 and m.beta <= m.s - 1


def sigma(p: int, m: PathMonomial) -> PathMonomial:
    """Reflection involution: source s -> p-s, up and down steps exchanged.

    Defined on every path class; callers filter membership afterwards.
    """
    return PathMonomial(p - m.s, m.beta, m.alpha)


def restricted_mult(
    p: int,
    basis: str,
    a: PathMonomial,
    b: PathMonomial,
    variant: str = VARIANT_CORRECTED,
) -> Optional[PathMonomial]:
    """Product inside the tagged basis; None when the product leaves it."""
    if basis == "omega":
        member = lambda m: in_omega(p, m, variant)
    elif basis == "theta":
        member = lambda m: in_theta(p, m)
    else:
        raise ValueError(f"basis must be 'omega' or 'theta', got {basis!r}")
    if not member(a) or not member(b):
        raise ValueError(f"restricted_mult: {a} or {b} is not in the {basis} basis")
    prod = pi_mult(a, b)
    if prod is None or not member(prod):
        return None
    return prod


def omega_basis(p: int, variant: str = VARIANT_CORRECTED) -> list[PathMonomial]:
    """All closed-strip classes, in lexicographic (s, alpha, beta) order."""
    check_variant(variant)
    out = []
    for s in range(1, p + 1):
        for beta in range(0, s):
            amax = (p - 1) if variant == VARIANT_PRINTED else (p - s + beta)
            for alpha in range(0, amax + 1):
                out.append(PathMonomial(s, alpha, beta))
    out.sort()
    return out


def theta_basis(p: int) -> list[PathMonomial]:
    """All open-strip classes, in lexicographic (s, alpha, beta) order."""
    out = []
    for s in range(1, p):
        for alpha in range(0, p - s):
            for beta in range(0, s):
                out.append(PathMonomial(s, alpha, beta))
    out.sort()
    return out


def count_by_source(basis: list[PathMonomial]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for m in basis:
        counts[m.s] = counts.get(m.s, 0) + 1
    return counts


def exact_sequence_defect(p: int, l: int, variant: str = VARIANT_CORRECTED) -> int:
    """Alternating sum of source-column sizes from the four-term splice.

    For 1 <= l <= p-1 the closed-strip columns at l, p and p-l and the
    open-strip column at p-l fit in an exact sequence, so the alternating
    sum of their dimensions vanishes.  Returns that sum (0 when the
    identity holds).
    """
    if not (1 <= l <= p - 1):
        raise ValueError(f"need 1 <= l <= p-1, got l={l}")
    om = count_by_source(omega_basis(p, variant))
    th = count_by_source(theta_basis(p))
    return om.get(l, 0) - om.get(p, 0) + om.get(p - l, 0) - th.get(p - l, 0)
