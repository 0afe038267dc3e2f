"""Named property suites runnable from the CLI.

Each suite runs a seeded ensemble of identity checks and returns a plain
report dict (no timestamps, no environment data) so fixed inputs give
byte-identical reports. The commutative determinant suite checks the
recursive determinant against an independent cofactor-expansion oracle
written on plain degree->Fraction polynomials.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import NotInvertible
from .kgroup import (
    FLAVORS,
    c_generator,
    commutator_as_c_generator,
    cyc_log,
    exact_sequence_additivity_check,
    vaserstein_transform,
)
from .matrices import (
    SeriesMatrix,
    dieudonne_det,
    ldu_decompose,
    mat_invert,
    rearrange_inverses_check,
    whitehead_identity_check,
)
from .novikov import (
    NovikovSeries,
    nov_invert,
    nov_mul,
    orbit_counts,
    twisted_conjugacy_classes,
    w1_invariant,
)
from .randgen import (
    random_fiber_one,
    random_flavor_pair,
    random_kernel_matrix,
    random_series,
    random_unipotent_matrix,
    random_unit,
)
from .rings import (
    FiniteGroup,
    GroupAlgebra,
    IntegersMod,
    RationalField,
    RationalMatrixRing,
    TruncatedFreeAlgebra,
    cyclic_group,
    ring_axiom_check,
)
from .series import SeriesRing


# -- plain polynomial oracle (independent of the series engine) -----------------

def poly_from_series(s) -> dict:
    return {len(w): c for w, c in s.terms.items()}

def _poly_add(p, q):
    out = dict(p)
    for d, c in q.items():
        s = out.get(d, Fraction(0)) + c
        if s == 0:
            out.pop(d, None)
        else:
            out[d] = s
    return out

def _poly_scale(p, k):
    return {d: k * c for d, c in p.items()} if k else {}

def _poly_mul(p, q, order):
    out: dict = {}
    for d1, c1 in p.items():
        for d2, c2 in q.items():
            d = d1 + d2
            if d > order:
                continue
            s = out.get(d, Fraction(0)) + c1 * c2
            if s == 0:
                out.pop(d, None)
            else:
                out[d] = s
    return out

def cofactor_det(poly_rows, order) -> dict:
    """First-row cofactor expansion; entries are degree->Fraction dicts."""
    n = len(poly_rows)
    if n == 1:
        return dict(poly_rows[0][0])
    acc: dict = {}
    for j in range(n):
        entry = poly_rows[0][j]
        if not entry:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in poly_rows[1:]]
        term = _poly_mul(entry, cofactor_det(minor, order), order)
        acc = _poly_add(acc, _poly_scale(term, Fraction((-1) ** j)))
    return acc


# -- fixture rings ----------------------------------------------------------------

def _m2_with_swap() -> RationalMatrixRing:
    ring = RationalMatrixRing(2)
    ring.register_conjugation("swap", [[0, 1], [1, 0]])
    return ring

def _qc2() -> GroupAlgebra:
    return GroupAlgebra(cyclic_group(2))

def _qc4_with_inv() -> GroupAlgebra:
    ring = GroupAlgebra(cyclic_group(4))
    ring.register_group_automorphism("inv", [0, 3, 2, 1])
    return ring

def _free_yz(max_degree=2) -> TruncatedFreeAlgebra:
    return TruncatedFreeAlgebra(("y", "z"), max_degree)

def _coeff_instances():
    return [RationalField(), IntegersMod(6), _m2_with_swap(), _qc2(), _free_yz()]


# -- suites -----------------------------------------------------------------------

def _check(name, identity, trials, passed):
    return {"name": name, "identity": identity, "trials": trials,
            "passed": bool(passed)}


def _suite_ldu(seed: int, order: int, trials: int) -> list[dict]:
    rng = random.Random(seed)
    checks = []
    for coeff in (RationalField(), _m2_with_swap(), _qc2()):
        twist = {"x": "swap"} if coeff.kind == "matrix" else None
        ring = SeriesRing(coeff, ("x", "t"), twist=twist, order=order)
        ok_rec, ok_uni, ok_inv = True, True, True
        for _ in range(trials):
            n = rng.randint(2, 4)
            m = random_unipotent_matrix(ring, rng, n)
            f = ldu_decompose(m)
            if f.recompose() != m:
                ok_rec = False
            g = ldu_decompose(f.recompose())
            if (g.l, g.d1, g.d2, g.u) != (f.l, f.d1, f.d2, f.u):
                ok_uni = False
            if mat_invert(m) * m != SeriesMatrix.identity(ring, n):
                ok_inv = False
        tag = coeff.name
        checks.append(_check(f"ldu-recompose[{tag}]",
                             "L*diag(d1,d2)*U == M", trials, ok_rec))
        checks.append(_check(f"ldu-unique[{tag}]",
                             "decompose(recompose(F)) == F", trials, ok_uni))
        checks.append(_check(f"mat-inverse[{tag}]",
                             "inv(M)*M == 1", trials, ok_inv))
    return checks


def _suite_dieudonne(seed: int, order: int, trials: int) -> list[dict]:
    rng = random.Random(seed)
    ring = SeriesRing(RationalField(), ("x",), order=order)
    ok = True
    for _ in range(trials):
        n = rng.randint(1, 4)
        m = random_unipotent_matrix(ring, rng, n)
        d = dieudonne_det(m)
        oracle = cofactor_det([[poly_from_series(e) for e in row]
                               for row in m.rows], order)
        if poly_from_series(d) != oracle:
            ok = False
    return [_check("dieudonne-vs-cofactor[Q]",
                   "D(M) == cofactor_det(M) for commutative coefficients",
                   trials, ok)]


def _suite_cgroup(seed: int, order: int, trials: int) -> list[dict]:
    rng = random.Random(seed)
    checks = []
    ring = SeriesRing(_m2_with_swap(), ("x", "t"), order=order)
    ok_white, ok_rear = True, True
    for _ in range(trials):
        n, m = rng.randint(1, 3), rng.randint(1, 2)
        a = random_kernel_matrix(ring, rng, n, m)
        b = random_kernel_matrix(ring, rng, m, n)
        if not whitehead_identity_check(a, b):
            ok_white = False
        if not rearrange_inverses_check(a, b):
            ok_rear = False
    checks.append(_check("whitehead-2x2[M2(Q)]",
                         "(1,-a;0,1)(1+ab,0;0,1)(1,0;b,1) == "
                         "(1,0;b,1)(1,0;0,1+ba)(1,-a;0,1)", trials, ok_white))
    checks.append(_check("rearrange-inverses[M2(Q)]",
                         "1 - b*inv(1+ab)*a == inv(1+ba)", trials, ok_rear))
    for coeff in (RationalField(), _qc2(), _free_yz()):
        sring = SeriesRing(coeff, ("x",), order=order)
        ok_vas = True
        for _ in range(trials):
            a = random_series(sring, rng, terms=2)
            b = random_series(sring, rng, terms=2)
            c = sring.lift(coeff.random_central(rng))
            try:
                _, ok = vaserstein_transform(a, b, c)
            except NotInvertible:
                continue
            if not ok:
                ok_vas = False
        checks.append(_check(f"vaserstein[{coeff.name}]",
                             "(1+ab)inv(1+ba) == (1+ab')inv(1+b'a), "
                             "b' = b+c+bac, central c", trials, ok_vas))
    return checks


def _suite_cyclog(seed: int, order: int, trials: int) -> list[dict]:
    rng = random.Random(seed)
    checks = []
    rings = [SeriesRing(_free_yz(), ("x", "t"), order=order),
             SeriesRing(_m2_with_swap(), ("x", "t"), order=order)]
    for ring in rings:
        tag = ring.coeff.name
        for flavor in FLAVORS:
            ok = True
            for _ in range(trials):
                a, b = random_flavor_pair(ring, rng, flavor)
                if not cyc_log(c_generator(a, b, flavor)).is_zero():
                    ok = False
            checks.append(_check(f"annihilation[{tag}:{flavor}]",
                                 "cyc_log((1+ab)inv(1+ba)) == 0", trials, ok))
        ok_add = True
        for _ in range(trials):
            u = random_fiber_one(ring, rng)
            v = random_fiber_one(ring, rng)
            if cyc_log(u * v) != cyc_log(u) + cyc_log(v):
                ok_add = False
        checks.append(_check(f"additivity[{tag}]",
                             "cyc_log(u*v) == cyc_log(u)+cyc_log(v)",
                             trials, ok_add))
        ok_comm = True
        for i in range(trials):
            # beta in the fiber keeps the commutator there for noncommutative A
            alpha = random_unit(ring, rng) if i % 2 else random_fiber_one(ring, rng)
            beta = random_fiber_one(ring, rng)
            a, b = commutator_as_c_generator(alpha, beta)
            gen = (ring.one() + a * b) * (ring.one() + b * a).inverse()
            if not cyc_log(gen).is_zero():
                ok_comm = False
        checks.append(_check(f"commutator-inclusion[{tag}]",
                             "cyc_log(alpha beta inv(alpha) inv(beta)) == 0",
                             trials, ok_comm))
        ok_dm, ok_cs = True, True
        half = max(1, trials // 2)
        for _ in range(half):
            n = rng.randint(1, 3)
            m1 = random_unipotent_matrix(ring, rng, n)
            m2 = random_unipotent_matrix(ring, rng, n)
            lhs = cyc_log(dieudonne_det(m1 * m2))
            rhs = cyc_log(dieudonne_det(m1)) + cyc_log(dieudonne_det(m2))
            if lhs != rhs:
                ok_dm = False
            p, q = rng.randint(1, 3), rng.randint(1, 2)
            a = random_kernel_matrix(ring, rng, p, q)
            b = random_kernel_matrix(ring, rng, q, p)
            da = dieudonne_det(SeriesMatrix.identity(ring, p) + a * b)
            db = dieudonne_det(SeriesMatrix.identity(ring, q) + b * a)
            if cyc_log(da) != cyc_log(db):
                ok_cs = False
        checks.append(_check(f"det-multiplicative-mod-C[{tag}]",
                             "cyc_log(D(MN)) == cyc_log(D(M))+cyc_log(D(N))",
                             half, ok_dm))
        checks.append(_check(f"det-cyclic-symmetry[{tag}]",
                             "cyc_log(D(1+ab)) == cyc_log(D(1+ba))",
                             half, ok_cs))
    ok_endo = True
    for coeff in (RationalField(), _m2_with_swap()):
        for _ in range(max(1, trials // 2)):
            n, m = rng.randint(1, 2), rng.randint(1, 2)
            alpha = tuple(tuple(coeff.random_element(rng) for _ in range(n))
                          for _ in range(n))
            alpha2 = tuple(tuple(coeff.random_element(rng) for _ in range(m))
                           for _ in range(m))
            coupling = tuple(tuple(coeff.random_element(rng) for _ in range(m))
                             for _ in range(n))
            if not exact_sequence_additivity_check(coeff, alpha, alpha2,
                                                   coupling, order):
                ok_endo = False
    checks.append(_check("endo-additivity[Q,M2(Q)]",
                         "D(1-(a,c;0,a2)x) == D(1-a x)*D(1-a2 x)",
                         2 * max(1, trials // 2), ok_endo))
    return checks


def _suite_novikov(seed: int, order: int, trials: int) -> list[dict]:
    rng = random.Random(seed)
    checks = []
    q_ring = SeriesRing(RationalField(), ("z",), order=max(order, 3))
    one = q_ring.one()
    u = NovikovSeries(one - q_ring.letter("z"))
    w = w1_invariant(u)
    expect = {("1", "z" * n): Fraction(-1, n) for n in range(1, q_ring.order + 1)}
    checks.append(_check("log-coefficients[Q]",
                         "w1(1-z) == {z^n: -1/n}", 1, w.entries == expect))
    gz = _qc2_gz(order)
    inv = nov_invert(gz)
    checks.append(_check("twisted-monomial-inverse[Q[C2]]",
                         "(g z) * inv(g z) == 1", 1,
                         nov_mul(gz, inv).matches_one_on_window()
                         and inv.shift == 1))
    c2 = _qc2()
    zr = SeriesRing(c2, ("z",), order=max(order, 3))
    g = c2.basis_element(1)
    u2 = NovikovSeries(zr.one() - zr.from_terms([((0,), g)]))
    rep = orbit_counts(u2)
    expect_rep = {
        (n, c2.group.names[min(c2.group.class_of(_pow_index(c2.group, 1, n)))]):
        Fraction(-1, n) for n in range(1, zr.order + 1)}
    checks.append(_check("orbit-counts[Q[C2]]",
                         "degree-n bucket of class(g^n) == -1/n", 1,
                         rep.entries == expect_rep))
    qc4 = _qc4_with_inv()
    group = qc4.group
    perm = qc4._perms["inv"]
    ok_part = True
    for n in range(1, 4):
        classes = twisted_conjugacy_classes(group, perm, n)
        covered = sorted(g for cls in classes for g in cls)
        if covered != list(range(group.order)):
            ok_part = False
        if sum(len(c) for c in classes) != group.order:
            ok_part = False
    checks.append(_check("twisted-partition[C4:inv]",
                         "twisted conjugacy classes partition G", 3, ok_part))
    zr4 = SeriesRing(qc4, ("z",), twist={"z": "inv"}, order=max(order, 3))
    ok_mul = True
    for _ in range(trials):
        a = random_unit(zr4, rng, terms=2)
        b = random_unit(zr4, rng, terms=2)
        ua, ub = NovikovSeries(a), NovikovSeries(b)
        prod = nov_mul(ua, ub)
        if not nov_mul(prod, nov_invert(prod)).matches_one_on_window():
            ok_mul = False
    checks.append(_check("inverse-roundtrip[Q[C4]:inv-twist]",
                         "u*inv(u) == 1 on the window", trials, ok_mul))
    ok_w1add = True
    for _ in range(trials):
        u = NovikovSeries(random_fiber_one(q_ring, rng))
        v = NovikovSeries(random_fiber_one(q_ring, rng))
        if w1_invariant(nov_mul(u, v)) != w1_invariant(u) + w1_invariant(v):
            ok_w1add = False
    checks.append(_check("w1-additivity[Q]",
                         "w1(u*v) == w1(u)+w1(v)", trials, ok_w1add))
    return checks


def _pow_index(group, g: int, n: int) -> int:
    acc = group.identity
    for _ in range(n):
        acc = group.mul(acc, g)
    return acc


def _qc2_gz(order: int) -> NovikovSeries:
    c2 = _qc2()
    ring = SeriesRing(c2, ("z",), order=max(order, 2))
    g = c2.basis_element(1)
    return NovikovSeries(ring.from_terms([((0,), g)]))


def _suite_rings(seed: int, order: int, trials: int) -> list[dict]:
    checks = []
    for coeff in _coeff_instances():
        rep = ring_axiom_check(coeff, seed=seed, trials=trials)
        checks.append(_check(f"ring-axioms[{coeff.name}]",
                             "associativity, distributivity, units",
                             trials, rep["passed"]))
    return checks


_SUITES = {
    "rings": _suite_rings,
    "ldu": _suite_ldu,
    "dieudonne": _suite_dieudonne,
    "dieudonne-commutative": _suite_dieudonne,
    "cgroup": _suite_cgroup,
    "cyclog": _suite_cyclog,
    "novikov": _suite_novikov,
}

SUITE_NAMES = ("rings", "ldu", "dieudonne-commutative", "cgroup", "cyclog",
               "novikov", "all")


def selftest(suite: str, seed: int = 42, order: int = 4,
             trials: int = 10) -> dict:
    """Run one named suite (or 'all') and return its report dict."""
    if suite == "all":
        names = ["rings", "ldu", "dieudonne-commutative", "cgroup", "cyclog",
                 "novikov"]
    elif suite in _SUITES:
        names = [suite]
    else:
        raise ValueError(
            f"unknown suite {suite!r}; pick one of {', '.join(SUITE_NAMES)}")
    checks = []
    for name in names:
        fn = _SUITES[name]
        checks.extend(fn(seed, order, trials))
    return {"suite": suite, "seed": seed, "order": order,
            "checks": checks, "passed": all(c["passed"] for c in checks)}
