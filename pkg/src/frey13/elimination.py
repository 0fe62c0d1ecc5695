"""Comparison of Frey-curve traces with the rational newform data, and the prime bounds."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .exactalg import IntPoly, factorize, poly_eval, resultant
from .quadfield import PRIMES, TRACE_PRIMES

__all__ = [
    "DataError",
    "NewformRecord",
    "FactorEntry",
    "Elimination",
    "EliminationReport",
    "BoundReport",
    "EXPECTED_SURVIVORS",
    "F4_ASSUMPTION",
    "load_newforms",
    "load_factors",
    "eliminate_s1",
    "eliminate_with_d",
    "eliminate_part2",
    "irreducibility_bound",
    "s2_bound",
    "final_bound",
]

# The four forms left by the unconstrained sieve, with their levels.
EXPECTED_SURVIVORS: dict[str, tuple[int, tuple[int, ...]]] = {
    "f1": (3, (-1, 1, 7, 3, 1, 7, 2, -7, -3, -1, 3)),
    "f2": (4, (-1, 1, 3, 7, -7, -1, 2, -3, -7, -1, 3)),
    "f3": (3, (-1, -3, -1, -5, 5, -9, -6, -3, 1, -5, 15)),
    "f4": (3, (-3, -1, 1, -3, -3, -9, -2, -7, 5, -11, -15)),
}

F4_ASSUMPTION = (
    "f4 belongs to the trivial solution (1, -1, 0); it is excluded for first-case solutions "
    "(13 does not divide a+b) by comparing inertia at the prime above 13, which is not computed here"
)


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class NewformRecord:
    level: int  # s in P2^s * P13^2
    eigenvalues: tuple[int, ...]  # in TRACE_PRIMES order
    index: int = 0  # position in the source file
    line: int = 0

    def __post_init__(self) -> None:
        if self.level not in (3, 4):
            raise DataError(f"{self._where}level must be 3 or 4, got {self.level}")
        if len(self.eigenvalues) != len(TRACE_PRIMES):
            raise DataError(f"{self._where}expected {len(TRACE_PRIMES)} eigenvalues, got {len(self.eigenvalues)}")
        for lab, a in zip(TRACE_PRIMES, self.eigenvalues):
            q = PRIMES[lab].q
            if a * a > 4 * q:
                raise DataError(f"{self._where}a_{lab} = {a} violates the Weil bound for norm {q}")

    @property
    def _where(self) -> str:
        return f"line {self.line}: " if self.line else ""

    def a(self, label: str) -> int:
        return self.eigenvalues[TRACE_PRIMES.index(label)]

    def name(self) -> str:
        for key, (lvl, row) in EXPECTED_SURVIVORS.items():
            if (lvl, row) == (self.level, self.eigenvalues):
                return key
        return f"s{self.level}#{self.index}"


@dataclass(frozen=True)
class FactorEntry:
    poly: IntPoly
    multiplicity: int
    level: int
    line: int = 0

    @property
    def _where(self) -> str:
        return f"line {self.line}: " if self.line else ""

    def __post_init__(self) -> None:
        if self.poly.degree < 1:
            raise DataError(f"{self._where}factor must be nonconstant")
        if self.multiplicity < 1:
            raise DataError(f"{self._where}multiplicity must be positive")
        if self.level not in (3, 4):
            raise DataError(f"{self._where}level must be 3 or 4")


def _read(source: str | Path | None, default: str) -> tuple[str, str]:
    if source is None:
        return resources.files("frey13.data").joinpath(default).read_text(), default
    p = Path(source)
    if p.is_dir():
        p = p / default
    return p.read_text(), str(p)


def load_newforms(source: str | Path | None = None) -> list[NewformRecord]:
    """Parse the newform table (a file or a directory holding newforms.csv)."""
    text, name = _read(source, "newforms.csv")
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals = [int(x) for x in line.split(",")]
        except ValueError as exc:
            raise DataError(f"{name}:{lineno}: non-integer field ({exc})") from None
        if len(vals) != 1 + len(TRACE_PRIMES):
            raise DataError(f"{name}:{lineno}: expected {1 + len(TRACE_PRIMES)} columns, got {len(vals)}")
        try:
            rec = NewformRecord(vals[0], tuple(vals[1:]), len(out))
        except DataError as exc:
            raise DataError(f"{name}:{lineno}: {exc}") from None
        out.append(replace(rec, line=lineno))
    return out


def load_factors(source: str | Path | None = None) -> list[FactorEntry]:
    """Parse the factor list (a file or a directory holding p3_factors.txt)."""
    text, name = _read(source, "p3_factors.txt")
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3:
            raise DataError(f"{name}:{lineno}: expected 'level; multiplicity; coefficients'")
        try:
            level, mult = int(parts[0]), int(parts[1])
            coeffs = [int(c) for c in parts[2].split()]
        except ValueError as exc:
            raise DataError(f"{name}:{lineno}: non-integer field ({exc})") from None
        if not coeffs or coeffs[-1] == 0:
            raise DataError(f"{name}:{lineno}: leading coefficient must be nonzero")
        try:
            entry = FactorEntry(IntPoly(coeffs), mult, level)
        except DataError as exc:
            raise DataError(f"{name}:{lineno}: {exc}") from None
        out.append(replace(entry, line=lineno))
    return out


# --- sieves -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Elimination:
    form: NewformRecord
    label: str  # first failing column
    value: int
    allowed: tuple[int, ...]
    margin: int  # smallest p above which this form is ruled out (best column)


@dataclass
class EliminationReport:
    survivors: list[NewformRecord]
    eliminated: list[Elimination]
    description: str
    assumptions: list[str] = field(default_factory=list)

    @property
    def margin(self) -> int:
        """Every congruence used fails for primes p above this value."""
        return max((e.margin for e in self.eliminated), default=0)

    def survivor_names(self) -> list[str]:
        return [f.name() for f in self.survivors]


def _column_margin(value: int, allowed: Iterable[int]) -> int:
    """Largest prime dividing some value - t; congruences mod larger primes all fail."""
    best = 0
    for t in allowed:
        diff = abs(value - t)
        if diff == 0:
            raise ValueError("value is allowed")
        best = max(best, factorize(diff).largest_prime() or 0)
    return best


def _sieve(
    forms: Sequence[NewformRecord], allowed: Mapping[str, Iterable[int]], order: Sequence[str], description: str
) -> EliminationReport:
    allowed = {k: frozenset(v) for k, v in allowed.items()}
    survivors, dead = [], []
    for f in forms:
        failing = [lab for lab in order if lab in allowed and f.a(lab) not in allowed[lab]]
        if not failing:
            survivors.append(f)
            continue
        lab = failing[0]
        margin = min(_column_margin(f.a(x), allowed[x]) for x in failing)
        dead.append(Elimination(f, lab, f.a(lab), tuple(sorted(allowed[lab])), margin))
    return EliminationReport(survivors, dead, description)


def _as_sets(trace_sets: Mapping[str, object]) -> dict[str, frozenset[int]]:
    out = {}
    for k, v in trace_sets.items():
        out[k] = v.as_set() if hasattr(v, "as_set") else frozenset(v)
    return out


def eliminate_s1(
    newforms: Sequence[NewformRecord], trace_sets: Mapping[str, object], order: Sequence[str] = TRACE_PRIMES
) -> EliminationReport:
    """Keep the forms whose every eigenvalue is a possible Frey trace."""
    sets = _as_sets(trace_sets)
    missing = set(TRACE_PRIMES) - set(sets)
    if missing:
        raise ValueError(f"trace sets missing for {sorted(missing)}")
    return _sieve(newforms, sets, order, "unconstrained traces")


def eliminate_with_d(
    survivors: Sequence[NewformRecord], d: int, singletons: Mapping[str, object]
) -> EliminationReport:
    """Apply the traces forced by d | a + b to the survivors of the first sieve."""
    sets = _as_sets(singletons)
    rep = _sieve(survivors, sets, [lab for lab in TRACE_PRIMES if lab in sets], f"{d} | a+b")
    if any(f.name() == "f4" for f in rep.survivors):
        rep.assumptions.append(F4_ASSUMPTION)
    return rep


def eliminate_part2(
    newforms: Sequence[NewformRecord], trace_sets: Mapping[str, object], squares_l5: Iterable[int]
) -> tuple[EliminationReport, EliminationReport]:
    """Squares variant: only level s = 4 occurs, then 5 | a^2 + b^2 pins a_L5."""
    level4 = [f for f in newforms if f.level == 4]
    first = eliminate_s1(level4, trace_sets)
    second = _sieve(first.survivors, {"L5": frozenset(squares_l5)}, ["L5"], "(a^2, b^2) with 5 | a^2+b^2")
    return first, second


# --- bounds ------------------------------------------------------------------------------


@dataclass
class BoundReport:
    bound: int
    per_value: dict[int, int]  # evaluation point -> largest prime seen
    argmax: tuple[int, int, int] | None  # (level, degree, v) attaining the bound
    evaluations: int
    dimension_tally: dict[int, int]  # level -> sum of degree * multiplicity
    linear_roots: dict[int, list[int]]  # level -> roots of the degree-one factors


def irreducibility_bound(radius: int = 3) -> tuple[int, dict[int, int]]:
    """Largest prime dividing res(x^12 - 1, x^2 - a x + 3) over |a| <= radius."""
    q1 = IntPoly([-1] + [0] * 11 + [1])
    res = {}
    best = 0
    for a in range(-radius, radius + 1):
        r = resultant(q1, IntPoly([3, -a, 1]))
        if r == 0:
            raise ArithmeticError(f"x^2 - {a}x + 3 shares a root with x^12 - 1")
        res[a] = r
        best = max(best, factorize(r).largest_prime() or 0)
    return best, res


def s2_bound(factors: Sequence[FactorEntry], values: Iterable[int]) -> BoundReport:
    """Largest prime dividing p_c(v) over the nonlinear factors p_c and evaluation points v."""
    values = sorted(set(values))
    per_value = {v: 0 for v in values}
    best, argmax, count = 0, None, 0
    cache: dict[tuple[tuple[int, ...], int], int] = {}
    for e in factors:
        if e.poly.degree < 2:
            continue
        for v in values:
            key = (e.poly.coeffs, v)
            if key not in cache:
                val = poly_eval(e.poly, v)
                if val == 0:
                    raise ArithmeticError(f"nonlinear factor on line {e.line} vanishes at {v}")
                cache[key] = factorize(val).largest_prime() or 0
            count += 1
            p = cache[key]
            per_value[v] = max(per_value[v], p)
            if p > best:
                best, argmax = p, (e.level, e.poly.degree, v)
    tally: dict[int, int] = {}
    roots: dict[int, list[int]] = {}
    for e in factors:
        tally[e.level] = tally.get(e.level, 0) + e.poly.degree * e.multiplicity
        if e.poly.degree == 1:
            c0, c1 = e.poly.coeffs
            if c0 % c1 == 0:
                roots.setdefault(e.level, []).append(-c0 // c1)
    return BoundReport(best, per_value, argmax, count, dict(sorted(tally.items())), {k: sorted(v) for k, v in sorted(roots.items())})


def final_bound(*parts: int) -> int:
    return max(parts)

