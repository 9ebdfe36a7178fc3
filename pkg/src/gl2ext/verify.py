"""Named verification checks and the fast/full suites behind ``verify``.

Each check returns a Check(name, ok, detail); the acceptance test module
and the CLI both drive these, so there is a single source of truth for
what "passing" means.  All randomness is seeded and all comparisons are
exact integer equalities.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Callable, NamedTuple, Optional

from . import oracle, series, tower
from .lambda_basis import (
    LambdaMonomial,
    bidegree,
    is_valid,
    k_degree,
    lambda_mult,
    level_elements,
    path_j_degree,
)
from .paths import (
    exact_sequence_defect,
    in_theta,
    omega_basis,
    pi_mult,
    sigma,
    theta_basis,
)


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str


BuiltinFn = Callable[..., oracle.QuiverPresentation]

# The fifteen weight-zero tuples of the reference column at vertex (1,1),
# p = 3, q = 2, in canonical order: ((s, alpha, beta, n, h) per factor, z).
REFERENCE_COLUMN = (
    (((1, 0, 0, 0, 0), (1, 0, 0, 0, 0)), 0),
    (((1, 0, 0, 0, 0), (1, 1, 0, 0, 0)), 1),
    (((1, 1, 0, 0, 0), (1, 0, 0, 1, 0)), 1),
    (((1, 0, 0, 0, 0), (1, 2, 0, 0, 0)), 2),
    (((1, 1, 0, 0, 0), (1, 1, 0, 1, 0)), 2),
    (((1, 2, 0, 0, 0), (1, 0, 0, 2, 0)), 2),
    (((1, 1, 0, 0, 0), (1, 0, 0, 0, 1)), 3),
    (((1, 2, 0, 0, 0), (1, 1, 0, 2, 0)), 3),
    (((1, 1, 0, 0, 0), (1, 1, 0, 0, 1)), 4),
    (((1, 2, 0, 0, 0), (1, 0, 0, 1, 1)), 4),
    (((1, 1, 0, 0, 0), (1, 2, 0, 0, 1)), 5),
    (((1, 2, 0, 0, 0), (1, 1, 0, 1, 1)), 5),
    (((1, 2, 0, 0, 0), (1, 0, 0, 0, 2)), 6),
    (((1, 2, 0, 0, 0), (1, 1, 0, 0, 2)), 7),
    (((1, 2, 0, 0, 0), (1, 2, 0, 0, 2)), 8),
)

YONEDA_MULTISET = (0, 1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 5, 6, 7, 8)


def _flatten(m: tower.TensorMonomial):
    return (
        tuple((f.b.s, f.b.alpha, f.b.beta, f.n, f.h) for f in m.factors),
        m.z,
    )


def check_reference_column() -> Check:
    """The weight-zero column at left vertices (1,1) equals the 15 reference tuples."""
    basis = tower.enumerate_weight_zero(3, 2)
    column = [m for m in basis if tower.vertex_tuples(3, m)[0] == (1, 1)]
    got = tuple(_flatten(m) for m in column)
    ok = got == REFERENCE_COLUMN
    return Check(
        "reference_column_reproduction",
        ok,
        f"{len(column)} tuples, exact match" if ok else f"mismatch: {got}",
    )


def check_yoneda_multiset() -> Check:
    """The same fifteen elements carry the reference degree multiset."""
    basis = tower.enumerate_weight_zero(3, 2)
    got = tuple(
        sorted(m.z for m in basis if tower.vertex_tuples(3, m)[0] == (1, 1))
    )
    ok = got == YONEDA_MULTISET
    return Check("yoneda_degree_multiset", ok, f"multiset {got}")


def check_oracle_concordance_q1(
    ps=(2, 3), builtin: BuiltinFn = oracle.builtin_presentation
) -> Check:
    """Ext totals of C(p), the q=1 series and the q=1 enumeration all agree."""
    problems = []
    for p in ps:
        ext = oracle.ext_dims(builtin("C", p), max_n=2 * p - 1)
        totals = ext.degree_totals()
        via_series = series.lambda_q_series(p, 1)
        via_enum = dict(
            Counter(m.z for m in tower.enumerate_weight_zero(p, 1))
        )
        if not all(ext.complete.values()):
            problems.append(f"p={p}: resolution incomplete")
        if totals != via_series or via_series != via_enum:
            problems.append(
                f"p={p}: ext {totals} vs series {via_series} vs enum {via_enum}"
            )
    return Check(
        "oracle_concordance_q1",
        not problems,
        "; ".join(problems) if problems else f"agree for p in {tuple(ps)}",
    )


def check_presentation_concordance(
    ps=(2, 3, 5), builtin: BuiltinFn = oracle.builtin_presentation
) -> Check:
    """Quotient dims of OMEGA(p) match the corrected counts; printed ones fail."""
    problems = []
    notes = []
    for p in ps:
        rep = oracle.quotient_basis(builtin("OMEGA", p), max_degree=2 * p)
        got = rep.dims_by_source_degree()
        want = Counter()
        for m in omega_basis(p):
            want[(str(m.s), m.degree)] += 1
        if got != dict(want):
            problems.append(f"p={p}: oracle {got} != corrected {dict(want)}")
        if p in (2, 3):
            printed = Counter()
            for m in omega_basis(p, "printed"):
                printed[(str(m.s), m.degree)] += 1
            if dict(printed) == got:
                problems.append(f"p={p}: printed variant unexpectedly matches")
            else:
                notes.append(
                    f"p={p}: printed total {sum(printed.values())} vs oracle "
                    f"{rep.total_dim()}"
                )
    return Check(
        "omega_presentation_concordance",
        not problems,
        "; ".join(problems) if problems else "; ".join(notes),
    )


def check_ses_identity(ps=(2, 3, 5, 7)) -> Check:
    """The alternating four-term count identity vanishes for all columns."""
    bad = [
        (p, l)
        for p in ps
        for l in range(1, p)
        if exact_sequence_defect(p, l) != 0
    ]
    return Check(
        "exact_sequence_identity",
        not bad,
        f"defect nonzero at {bad}" if bad else f"holds for p in {tuple(ps)}",
    )


def check_oracle_ses_identity(
    ps=(2, 3, 5, 7), builtin: BuiltinFn = oracle.builtin_presentation
) -> Check:
    """The same identity on quiver-oracle dimensions instead of counts."""
    bad = []
    for p in ps:
        om = oracle.quotient_basis(builtin("OMEGA", p), max_degree=2 * p)
        th = oracle.quotient_basis(builtin("THETA", p), max_degree=2 * p)
        om_src = Counter()
        for (s, _, _), n in om.dims.items():
            om_src[s] += n
        th_src = Counter()
        for (s, _, _), n in th.dims.items():
            th_src[s] += n
        for l in range(1, p):
            defect = (
                om_src[str(l)]
                - om_src[str(p)]
                + om_src[str(p - l)]
                - th_src[str(p - l)]
            )
            if defect:
                bad.append((p, l, defect))
    return Check(
        "oracle_exact_sequence_identity",
        not bad,
        f"defect nonzero at {bad}" if bad else f"holds for p in {tuple(ps)}",
    )


def check_series_vs_enumeration(pairs=((2, 1), (2, 2), (3, 1), (3, 2))) -> Check:
    """Operator-series dims equal weight-zero counts degree by degree."""
    problems = []
    for p, q in pairs:
        via_series = series.lambda_q_series(p, q)
        via_enum = dict(Counter(m.z for m in tower.enumerate_weight_zero(p, q)))
        if via_series != via_enum:
            problems.append(f"(p,q)=({p},{q}): {via_series} != {via_enum}")
    return Check(
        "series_matches_enumeration",
        not problems,
        "; ".join(problems) if problems else f"agree for {tuple(pairs)}",
    )


def check_y2_column(builtin: BuiltinFn = oracle.builtin_presentation) -> Check:
    """The quiver oracle reproduces the reference column at vertex (1,1).

    Off-column blocks are compared against the weight-zero model and only
    reported: deviations there trace back to the under-specified relation
    ranges of the base presentation, for which the completed builtin is
    the recorded alternative.
    """
    pres = builtin("Y2_P3")
    rep = oracle.quotient_basis(pres, max_degree=11, source="1,1")
    multiset = tuple(
        sorted(d for (_, _, d), n in rep.dims.items() for _ in range(n))
    )
    ok = multiset == YONEDA_MULTISET and rep.total_dim() == 15
    detail = f"column dim {rep.total_dim()}, multiset {multiset}"
    # reported, not asserted: full-grid comparison with the tensor model
    model = Counter()
    for (l, r, u), c in tower.ext_dim_table(3, 2).items():
        model[("%d,%d" % l, "%d,%d" % r, u)] = c
    for name in ("Y2_P3", "Y2_P3_COMPLETED"):
        quo = oracle.GradedQuotient(builtin(name), max_degree=40)
        if not quo.stabilized:
            detail += f"; {name}: did not stabilize"
            continue
        dims = quo.dims()
        mism = sum(
            1
            for key in set(model) | set(dims)
            if model.get(key, 0) != dims.get(key, 0)
        )
        detail += (
            f"; {name}: total {quo.total_dim()}, "
            f"{mism} off-column block deviations from the model"
        )
    return Check("y2_p3_column", ok, detail)


def check_calibration(builtin: BuiltinFn = oracle.builtin_presentation) -> Check:
    """Degree-1 arrows out of vertex (1,1) match the weight-zero model."""
    pres = builtin("Y2_P3")
    quiver_targets = sorted(
        a.tgt for a in pres.arrows if a.src == "1,1" and a.deg == 1
    )
    model_targets = sorted(
        "%d,%d" % tower.vertex_tuples(3, m)[1]
        for m in tower.enumerate_weight_zero(3, 2)
        if tower.vertex_tuples(3, m)[0] == (1, 1) and m.z == 1
    )
    ok = quiver_targets == model_targets
    return Check(
        "vertex_tuple_calibration",
        ok,
        f"degree-1 targets {model_targets} vs quiver {quiver_targets}",
    )


def _random_lambda(rng: random.Random, p: int, nh_max: int) -> LambdaMonomial:
    n = rng.randint(0, nh_max)
    h = rng.randint(0, nh_max)
    pool = omega_basis(p) if n == 0 else theta_basis(p)
    return LambdaMonomial(rng.choice(pool), n, h)


def _random_tensor(rng: random.Random, p: int, q: int, nh_max: int):
    return tower.TensorMonomial(
        tuple(_random_lambda(rng, p, nh_max) for _ in range(q)),
        rng.randint(0, 2 * p),
    )


def check_property_suite(
    random_rounds: int = 10_000,
    seed: int = 20240,
    ps=(2, 3, 5),
    q_max: int = 3,
    idempotent_ps=(2, 3),
) -> Check:
    """Signed closure, associativity, involution, gradings, embedding, counts."""
    rng = random.Random(seed)
    problems: list[str] = []
    checked = 0

    # reflection is an involution and respects products on the open strip
    for p in ps:
        theta = theta_basis(p)
        for a in theta:
            if sigma(p, sigma(p, a)) != a or not in_theta(p, sigma(p, a)):
                problems.append(f"sigma involution fails at p={p}, {a}")
        for a in theta:
            for b in theta:
                lhs = pi_mult(a, b)
                rhs = pi_mult(sigma(p, a), sigma(p, b))
                lhs_s = sigma(p, lhs) if lhs is not None else None
                if lhs_s != rhs:
                    problems.append(f"sigma product fails at p={p}, {a}, {b}")
                checked += 1

    # layer membership closure and grading additivity, exhaustive n, h <= 3
    for p in ps:
        pool = [
            e
            for lvl in range(0, 7)
            for e in level_elements(p, lvl)
            if e.n <= 3 and e.h <= 3
        ]
        for x in pool:
            for y in pool:
                prod = lambda_mult(p, x, y)
                checked += 1
                if prod is None:
                    continue
                if not is_valid(p, prod):
                    problems.append(f"closure fails: {x} * {y} -> {prod}")
                bx, by, bp = (bidegree(p, e) for e in (x, y, prod))
                if (bx.e_l + by.e_l, bx.e_r + by.e_r) != (bp.e_l, bp.e_r):
                    problems.append(f"bidegree not additive at {x} * {y}")
                if k_degree(p, x) + k_degree(p, y) != k_degree(p, prod):
                    problems.append(f"k-degree not additive at {x} * {y}")
                if path_j_degree(p, x) + path_j_degree(p, y) != path_j_degree(
                    p, prod
                ):
                    problems.append(f"path-j-degree not additive at {x} * {y}")
        if problems:
            break

    # exhaustive signed closure for small towers
    for p in (2, 3):
        for q in (1, 2):
            basis = tower.enumerate_weight_zero(p, q)
            index = set(basis)
            for a in basis:
                for b in basis:
                    r = tower.tensor_mult(p, a, b)
                    checked += 1
                    if r is None:
                        continue
                    if r.sign not in (-1, 1) or r.monomial not in index:
                        problems.append(f"closure fails: {a} * {b} -> {r}")
            if problems:
                break

    # randomized signed closure, weight additivity and associativity
    rounds = max(1, random_rounds // 2)
    for _ in range(rounds):
        p = rng.choice(ps)
        q = rng.randint(1, q_max)
        a = tower.random_weight_zero(rng, p, q)
        b = tower.random_weight_zero(rng, p, q)
        r = tower.tensor_mult(p, a, b)
        checked += 1
        if r is not None and not tower.is_weight_zero_basis_element(
            p, r.monomial
        ):
            problems.append(f"random closure fails: {a} * {b}")
            break
    for _ in range(rounds):
        p = rng.choice(ps)
        q = rng.randint(1, q_max)
        a, b, c = (_random_tensor(rng, p, q, 3) for _ in range(3))
        ab = tower.tensor_mult(p, a, b)
        bc = tower.tensor_mult(p, b, c)
        lval = rval = None
        if ab is not None:
            abc = tower.tensor_mult(p, ab.monomial, c)
            if abc is not None:
                lval = (ab.sign * abc.sign, abc.monomial)
        if bc is not None:
            abc = tower.tensor_mult(p, a, bc.monomial)
            if abc is not None:
                rval = (bc.sign * abc.sign, abc.monomial)
        checked += 1
        if lval != rval:
            problems.append(f"associativity fails: {a}, {b}, {c}")
            break
        if ab is not None:
            wa, wb = tower.weight(p, a), tower.weight(p, b)
            wab = tower.weight(p, ab.monomial)
            if tuple(x + y for x, y in zip(wa, wb)) != wab:
                problems.append(f"weight not additive: {a}, {b}")
                break

    # embedding: injective, multiplicative, sign preserving, weight prefixing
    for _ in range(500):
        p = rng.choice(ps)
        q = rng.randint(1, q_max)
        a = _random_tensor(rng, p, q, 3)
        b = _random_tensor(rng, p, q, 3)
        ea, eb = tower.embed(a), tower.embed(b)
        if tower.weight(p, ea) != (0,) + tower.weight(p, a):
            problems.append(f"embed weight fails at {a}")
            break
        r = tower.tensor_mult(p, a, b)
        er = tower.tensor_mult(p, ea, eb)
        if (r is None) != (er is None):
            problems.append(f"embed zero pattern fails at {a}, {b}")
            break
        if r is not None and (
            er.sign != r.sign or er.monomial != tower.embed(r.monomial)
        ):
            problems.append(f"embed multiplicativity fails at {a}, {b}")
            break
        checked += 1

    # ext-degree identity and idempotent counts on enumerated bases
    for p, q in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1)):
        basis = tower.enumerate_weight_zero(p, q)
        for m in basis:
            if sum(k_degree(p, f) for f in m.factors) != m.z:
                problems.append(f"ext-degree identity fails at p={p}, {m}")
                break
        checked += len(basis)
        if p in idempotent_ps and q <= 3:
            count = sum(1 for m in basis if m.z == 0)
            if count != p**q:
                problems.append(
                    f"idempotent count {count} != {p**q} at (p,q)=({p},{q})"
                )
        if len(basis) != len(set(tower.embed(m) for m in basis)):
            problems.append(f"embed not injective at (p,q)=({p},{q})")
        for m in basis[:200]:
            if not tower.is_weight_zero_basis_element(p, tower.embed(m)):
                problems.append(f"embed leaves the basis at {m}")
                break

    return Check(
        "property_suite",
        not problems,
        problems[0] if problems else f"{checked} property instances checked",
    )


def _corrupting_builtin(target: Optional[str]) -> BuiltinFn:
    """Builtin factory that drops one relation of the targeted presentation."""

    def factory(name: str, p: Optional[int] = None) -> oracle.QuiverPresentation:
        pres = oracle.builtin_presentation(name, p)
        if target is not None and name == target:
            arrows = [(a.name, a.src, a.tgt, a.deg) for a in pres.arrows]
            return oracle.QuiverPresentation(
                pres.name, pres.vertices, arrows, pres.relations[:-1]
            )
        return pres

    return factory


def _guarded(fn, *args, **kwargs) -> Check:
    """Convert an exception inside a check into a failing Check."""
    try:
        return fn(*args, **kwargs)
    except Exception as exc:  # noqa: BLE001 - checks must never crash the suite
        return Check(fn.__name__.removeprefix("check_"), False, f"error: {exc}")


def run_suite(suite: str = "fast", corrupt: Optional[str] = None) -> list[Check]:
    """Run the named checks of the fast or full suite, in order."""
    if suite not in ("fast", "full"):
        raise ValueError(f"suite must be 'fast' or 'full', got {suite!r}")
    builtin = _corrupting_builtin(corrupt)
    checks = [
        _guarded(check_reference_column),
        _guarded(check_yoneda_multiset),
        _guarded(check_oracle_concordance_q1, builtin=builtin),
        _guarded(check_series_vs_enumeration),
        _guarded(check_calibration, builtin=builtin),
    ]
    if suite == "fast":
        checks.append(
            _guarded(check_presentation_concordance, ps=(2, 3), builtin=builtin)
        )
        checks.append(_guarded(check_ses_identity, ps=(2, 3)))
        checks.append(
            _guarded(check_property_suite, random_rounds=2_000, ps=(2, 3), q_max=2)
        )
    else:
        checks.append(
            _guarded(check_presentation_concordance, ps=(2, 3, 5), builtin=builtin)
        )
        checks.append(_guarded(check_ses_identity, ps=(2, 3, 5, 7)))
        checks.append(
            _guarded(check_oracle_ses_identity, ps=(2, 3, 5, 7), builtin=builtin)
        )
        checks.append(_guarded(check_property_suite))
    checks.append(_guarded(check_y2_column, builtin=builtin))
    return checks
