"""Acceptance gate: one pass/fail line per criterion, all exact."""

import math
import random

import pytest

from conftest import ACCEPTANCE_LINES
from frey13.cyclotomic import ALPHA, BETA, GAMMA, build_phi_factors, check_null_relation, phi_int, val_P13
from frey13.elimination import EXPECTED_SURVIVORS, eliminate_part2, eliminate_s1, eliminate_with_d, irreducibility_bound, s2_bound
from frey13.exactalg import IntPoly, factorize, is_prime, poly_gcd, resultant
from frey13.frey import (
    PRINTED_A4,
    PRINTED_A6,
    galois_coherence,
    instantiate,
    phi1_descended,
    phi2_descended,
    verify_printed_polynomials,
)
from frey13.localred import WeierstrassModel, exponent_at_2_table, tate
from frey13.quadfield import PRIMES, TRACE_PRIMES, primes_above, val_at
from frey13.traces import (
    PRINTED_TRACE_SETS,
    ReducedCurve,
    constrained_singletons,
    count_points,
    count_points_bruteforce,
    local_trace,
    squares_trace_set,
)
from frey13.quadfield import residue_field


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def coprime_pairs(rng, count, bound=10**4):
    out = []
    while len(out) < count:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (a, b) != (0, 0) and math.gcd(a, b) == 1:
            out.append((a, b))
    return out


def test_criterion_1_algebraic_identities():
    F = build_phi_factors()
    rel = check_null_relation(F)
    quads = {"f1": F.f1, "f2": F.f2, "f3": F.f3}
    weights = {"alpha": ALPHA, "beta": BETA, "gamma": GAMMA}
    total = sum((quads[q] * weights[w] for w, q in rel.pairing[1:]), quads[rel.pairing[0][1]] * weights[rel.pairing[0][0]])
    vals = [val_P13(e, 6) for e in (ALPHA, BETA, GAMMA)]
    v3 = val_P13(ALPHA * BETA * GAMMA, 6)
    ok = F.phi1 * F.phi2 == F.phi and F.f1 * F.f2 * F.f3 == F.phi1 and total.is_zero() and vals == [1, 1, 1] and v3 == 3
    record(1, ok, f"phi1*phi2 = phi, f1*f2*f3 = phi1, {rel.describe()}, valuations {vals}, (alpha*beta*gamma) -> {v3}")


def test_criterion_2_descent(family):
    co = galois_coherence(family)
    chk = verify_printed_polynomials(family)
    fixed = family.a4_cyc.galois(2) == family.a4_cyc and family.a6_cyc.galois(2) == family.a6_cyc
    a4_exact = all(family.a4.coeff(*k) == v for k, v in PRINTED_A4.items()) and len(family.a4.monomials()) == 5
    a6_others = all(family.a6.coeff(*k) == v for k, v in PRINTED_A6.items() if k != (0, 6))
    ok = fixed and co.ok and a4_exact and a6_others and bool(chk.b6_note)
    record(2, ok, f"sigma^2-fixed={fixed}, a4 5/5 exact={a4_exact}, a6 other slots exact={a6_others}; {chk.b6_note}")


def test_criterion_3_conductors(family):
    table = exponent_at_2_table(family, 4, 16)
    rule = all((s == 3) == ((a + b) % 4 == 0) for (a, b), s in table.items() if (a + b) % 2 == 0)
    values = set(table.values())
    rng = random.Random(3)
    pairs = [p for p in coprime_pairs(rng, 260) if (p[0] + p[1]) % 13][:200]
    at13 = {tate(WeierstrassModel.from_instance(instantiate(family, a, b)), PRIMES["L13"]).conductor_exponent for a, b in pairs}
    ok = values <= {3, 4} and 2 not in values and rule and at13 == {2} and len(pairs) == 200
    record(3, ok, f"s values {sorted(values)} over pairs mod 4 (stable mod 16), 4|a+b rule={rule}; exponent at 13 on 200 pairs: {sorted(at13)}")


def test_criterion_4_trace_sets(trace_sets):
    mismatched = [lab for lab in TRACE_PRIMES if trace_sets[lab].as_set() != PRINTED_TRACE_SETS[lab]]
    stable = all(
        trace_sets[lab].stable_moduli == ((9, 27) if PRIMES[lab].l == 3 else (PRIMES[lab].l ** 2,)) for lab in TRACE_PRIMES
    )
    ok = not mismatched and stable and len(trace_sets["L29_1"].values) == 9
    record(4, ok, f"11 sets exact (mismatches {mismatched}), lift-stable mod l^2 and mod 27 above 3: {stable}")


def test_criterion_5_constrained_traces(family):
    got = {d: {k: v.values for k, v in constrained_singletons(d).items()} for d in (3, 5, 7, 11)}
    expected = {3: {"L3_0": (-3,), "L3_1": (-1,)}, 5: {"L5": (-2,)}, 7: {"L7": (-11,)}, 11: {"L11": (-15,)}}
    sq = squares_trace_set("L5", True).values
    e11 = local_trace(family, PRIMES["L5"], 1, 1)
    ok = got == expected and sq == (-2,) and e11 != -2
    record(5, ok, f"d-constrained {got}; squares with 5 | a^2+b^2 -> {list(sq)}; a_L5(E(1,1)) = {e11}")


def test_criterion_6_s1_elimination(newforms, trace_sets):
    rep = eliminate_s1(newforms, trace_sets)
    rows = {f.name(): (f.level, f.eigenvalues) for f in rep.survivors}
    levels = sorted(f.level for f in rep.survivors)
    d_ok = all(
        eliminate_with_d(rep.survivors, d, constrained_singletons(d)).survivor_names() == ["f4"] for d in (3, 5, 7, 11)
    )
    first, second = eliminate_part2(newforms, trace_sets, squares_trace_set("L5", True).values)
    ok = rows == EXPECTED_SURVIVORS and levels == [3, 3, 3, 4] and d_ok and not second.survivors
    record(6, ok, f"survivors {sorted(rows)} equal the four listed rows, levels {levels}; every d leaves only f4: {d_ok}")


def test_criterion_7_irreducibility_bound():
    best, res = irreducibility_bound()
    record(7, best == 97, f"max prime over res(x^12-1, x^2-ax+3), |a|<=3: {best}")


def test_criterion_8_final_bound(factors, trace_sets):
    listed = s2_bound(factors, [3, -1])
    enumerated = s2_bound(factors, trace_sets["L3_0"].values)
    note = "same" if enumerated.bound == listed.bound else "DIFFERS (flagged, not a failure)"
    record(8, listed.bound == 4992539 and is_prime(listed.bound),
           f"bound at {{3,-1}}: {listed.bound}; at computed {{-3,-1}}: {enumerated.bound} ({note})")


def _thirteenth_root(l):
    for g in range(2, l):
        r = pow(g, (l - 1) // 13, l)
        if r != 1:
            return r


def test_criterion_9_property_suites(family):
    rng = random.Random(9)
    failures = []
    small_primes = [l for l in range(2, 10**4) if is_prime(l)]
    split13 = [l for l in small_primes if l % 13 == 1][:12]
    phi = phi_int()
    p1, p2 = phi1_descended(family), phi2_descended(family)

    # pairs built so that some l = 1 mod 13 divides phi(a, b)
    pairs = coprime_pairs(rng, 100)
    while len(pairs) < 200:
        l = rng.choice(split13)
        b = rng.randint(1, 10**3)
        a = (-pow(_thirteenth_root(l), rng.randint(1, 12), l) * b) % l + l * rng.randint(0, 20)
        if math.gcd(a, b) == 1:
            pairs.append((a, b))
    for a, b in pairs:
        v = phi.evaluate(a, b).c[0]
        s = a + b
        # linear factors coprime away from 13
        for l in small_primes:
            if l == 13 or v % l:
                continue
            r = _thirteenth_root(l)
            if l % 13 != 1 or sum((a + pow(r, i, l) * b) % l == 0 for i in range(1, 13)) != 1:
                failures.append(("linear factors", a, b, l))
            for L in primes_above(l):
                if min(val_at(L, p1.evaluate(a, b)), val_at(L, p2.evaluate(a, b))) != 0:
                    failures.append(("phi1/phi2", a, b, l))
        if math.gcd(s, v) not in (1, 13) or (s % 13 == 0 and v % 169 == 0):
            failures.append(("a+b and phi", a, b))
        t = a**13 + b**13
        if any(t % l == 0 and l % 13 != 1 and s % l for l in small_primes[:200]):
            failures.append(("divisors of a^13+b^13", a, b))

    for _ in range(200):
        p = IntPoly([rng.randint(-50, 50) for _ in range(rng.randint(1, 9))])
        q = IntPoly([rng.randint(-50, 50) for _ in range(rng.randint(1, 9))])
        if not p.is_zero() and not q.is_zero() and (resultant(p, q) == 0) != (poly_gcd(p, q).degree > 0):
            failures.append(("resultant/gcd", p, q))
        n = rng.randint(2, 10**9)
        f = factorize(n)
        if f.value() != n or not all(is_prime(x) for x in f.factors):
            failures.append(("factorization", n))

    counted = 0
    for l, d in ((3, 1), (5, 1), (7, 1), (5, 2), (2, 2)):
        F = residue_field(l, d)
        for _ in range(60):
            E = ReducedCurve(F, *(rng.randrange(F.q) for _ in range(5)))
            if E.is_singular():
                continue
            counted += 1
            n = count_points(E)
            if n != count_points_bruteforce(E) or (F.q + 1 - n) ** 2 > 4 * F.q:
                failures.append(("point count", E))
    ok = not failures
    record(9, ok, f"{len(pairs)} pairs through the factorisation/divisibility properties, 200 resultant and factorization checks, "
                  f"{counted} curves with matching counts; failures: {failures[:3]}")
