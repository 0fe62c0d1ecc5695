import random

import pytest

from frey13.elimination import (
    EXPECTED_SURVIVORS,
    DataError,
    NewformRecord,
    eliminate_part2,
    eliminate_s1,
    eliminate_with_d,
    irreducibility_bound,
    load_factors,
    load_newforms,
    s2_bound,
)
from frey13.exactalg import IntPoly, factorize, is_prime
from frey13.quadfield import TRACE_PRIMES
from frey13.traces import PRINTED_TRACE_SETS, constrained_singletons

SINGLETONS = {3: {"L3_0": {-3}, "L3_1": {-1}}, 5: {"L5": {-2}}, 7: {"L7": {-11}}, 11: {"L11": {-15}}}


def test_load_newforms(newforms):
    assert len(newforms) == 170
    assert sum(f.level == 3 for f in newforms) == 29
    first = newforms[0]
    assert (first.level, first.eigenvalues) == (3, (-3, -3, -3, -3, -4, -4, -9, 2, 2, -13, -18))


def test_expected_survivor_rows_present(newforms):
    rows = {(f.level, f.eigenvalues) for f in newforms}
    for level, row in EXPECTED_SURVIVORS.values():
        assert (level, row) in rows


def test_load_factors(factors):
    assert factors[0].poly == IntPoly([-3, 1]) and factors[0].multiplicity == 38 and factors[0].level == 4
    assert {e.level for e in factors} == {3, 4}
    assert max(e.poly.degree for e in factors) == 27


def test_malformed_rows_rejected(tmp_path):
    bad = tmp_path / "newforms.csv"
    bad.write_text("# header\n3, -3, -3, -3, -3, -4, -4, 100, 2, 2, -13, -18\n")
    with pytest.raises(DataError, match=":2:.*Weil"):
        load_newforms(bad)
    bad.write_text("3, 1, 2\n")
    with pytest.raises(DataError, match=":1:.*columns"):
        load_newforms(bad)
    bad.write_text("5, -3, -3, -3, -3, -4, -4, 1, 2, 2, -13, -18\n")
    with pytest.raises(DataError, match="level"):
        load_newforms(bad)
    fac = tmp_path / "p3_factors.txt"
    fac.write_text("4; 2; 1 0\n")
    with pytest.raises(DataError, match="leading"):
        load_factors(fac)
    fac.write_text("4; 2; 7\n")
    with pytest.raises(DataError, match="nonconstant"):
        load_factors(fac)
    fac.write_text("4; x; 1 1\n")
    with pytest.raises(DataError, match=":1:"):
        load_factors(fac)


def test_loaders_accept_directory(tmp_path, newforms):
    (tmp_path / "newforms.csv").write_text("4, 1, 1, 3, 3, 1, 1, -6, 3, 3, -13, -21\n")
    assert len(load_newforms(tmp_path)) == 1


def test_s1_sieve(newforms):
    rep = eliminate_s1(newforms, PRINTED_TRACE_SETS)
    assert sorted(rep.survivor_names()) == ["f1", "f2", "f3", "f4"]
    assert sorted(f.level for f in rep.survivors) == [3, 3, 3, 4]
    assert len(rep.eliminated) == len(newforms) - 4
    first = next(e for e in rep.eliminated if e.form.index == 0)
    assert (first.label, first.value) == ("L3_0", -3) or first.form.a("L5") == -9
    assert first.form.a("L5") == -9 and -9 not in PRINTED_TRACE_SETS["L5"]
    assert rep.margin == 11


def test_s1_uses_computed_sets(newforms, trace_sets):
    assert sorted(eliminate_s1(newforms, trace_sets).survivor_names()) == ["f1", "f2", "f3", "f4"]


def test_s1_independent_of_column_order(newforms):
    order = list(TRACE_PRIMES)
    base = eliminate_s1(newforms, PRINTED_TRACE_SETS)
    for seed in range(3):
        random.Random(seed).shuffle(order)
        rep = eliminate_s1(newforms, PRINTED_TRACE_SETS, order)
        assert rep.survivor_names() == base.survivor_names()


@pytest.mark.parametrize("d", [3, 5, 7, 11])
def test_d_sieve(newforms, d):
    s1 = eliminate_s1(newforms, PRINTED_TRACE_SETS)
    rep = eliminate_with_d(s1.survivors, d, SINGLETONS[d])
    assert rep.survivor_names() == ["f4"]
    assert rep.assumptions


def test_d_sieve_examples(newforms):
    byname = {f.name(): f for f in eliminate_s1(newforms, PRINTED_TRACE_SETS).survivors}
    assert not eliminate_with_d([byname["f1"]], 5, SINGLETONS[5]).survivors
    assert eliminate_with_d([byname["f4"]], 3, constrained_singletons(3)).survivor_names() == ["f4"]
    dead = eliminate_with_d([byname["f3"]], 7, SINGLETONS[7]).eliminated[0]
    assert (dead.label, dead.value) == ("L7", -5)


def test_part2(newforms):
    first, second = eliminate_part2(newforms, PRINTED_TRACE_SETS, [-2])
    assert first.survivor_names() == ["f2"]
    assert not second.survivors


def test_irreducibility_bound():
    best, res = irreducibility_bound()
    assert best == 97
    assert set(factorize(res[0]).factors) == {2, 7, 13}
    assert all(r != 0 for r in res.values())


def test_s2_bound(factors):
    rep = s2_bound(factors, [3, -1])
    assert rep.bound == 4992539 and is_prime(rep.bound)
    assert rep.argmax == (4, 18, 3)
    assert rep.dimension_tally == {3: 1215, 4: 4855}
    assert s2_bound(factors, [-3, -1]).bound == 4992539


def test_s2_bound_independent_of_order_and_multiplicity(factors):
    shuffled = list(factors)
    random.Random(1).shuffle(shuffled)
    assert s2_bound(shuffled, [3, -1]).bound == s2_bound(factors, [-1, 3]).bound


def test_s2_small_factor_contributes_nothing():
    from frey13.elimination import FactorEntry

    rep = s2_bound([FactorEntry(IntPoly([1, -3, 1]), 1, 4)], [3])
    assert rep.bound == 0


def test_s2_rejects_vanishing_nonlinear_factor():
    from frey13.elimination import FactorEntry

    with pytest.raises(ArithmeticError):
        s2_bound([FactorEntry(IntPoly([-9, 0, 1]), 1, 4)], [3])


def test_weil_validation_on_record():
    with pytest.raises(DataError):
        NewformRecord(3, (0,) * 6 + (100,) + (0,) * 4)
