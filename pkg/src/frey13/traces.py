"""Traces of Frobenius of the residual Frey curves at the comparison primes.

For each residue pair (a, b) the Frey curve is instantiated at an integer
lift, Tate's algorithm gives a model that is minimal at L, and the points
of its reduction are counted.  The answer may in principle depend on more
than (a, b) mod l; `trace_set` re-runs the enumeration over lifts to a
higher modulus and insists on getting the same set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

import numpy as np

from .frey import FreyFamily, QuadPoly, build_family, instantiate
from .localred import WeierstrassModel, coprime_lift, tate
from .quadfield import PRIMES, QuadPrime, ResidueField, reduce

__all__ = [
    "ReducedCurve",
    "count_points",
    "count_points_bruteforce",
    "Constraint",
    "TraceSet",
    "LiftInstability",
    "local_trace",
    "trace_of",
    "trace_set",
    "all_trace_sets",
    "constrained_singletons",
    "squares_trace_set",
    "squares_mod4_residues",
    "PRINTED_TRACE_SETS",
    "SINGLETON_PRIMES",
]

# Sets of possible traces as listed for the comparison primes.
PRINTED_TRACE_SETS: dict[str, frozenset[int]] = {
    "L3_0": frozenset({-3, -1}),
    "L3_1": frozenset({-3, -1, 1}),
    "L5": frozenset({-6, -2, 2}),
    "L7": frozenset({11, -11, -1, -5}),
    "L11": frozenset({-15, 3, 5, -7, 9, -1, 15}),
    "L17_0": frozenset({1, 3, 5, 7, -3, -1}),
    "L17_1": frozenset({3, 5, 7, -7, -5, -3}),
    "L23_0": frozenset({1, 3, 5, 7, -9, -7, -5, -3}),
    "L23_1": frozenset({1, 3, 7, -9, -3, -1}),
    "L29_0": frozenset({1, 3, 5, -9, -7, -5, -3, -1}),
    "L29_1": frozenset({1, 3, 5, 9, -9, -7, -5, -3, -1}),
}

# Primes whose trace collapses to a single value when d | a + b.
SINGLETON_PRIMES: dict[int, tuple[str, ...]] = {3: ("L3_0", "L3_1"), 5: ("L5",), 7: ("L7",), 11: ("L11",)}


class LiftInstability(AssertionError):
    pass


# --- point counting ---------------------------------------------------------------


@dataclass(frozen=True)
class ReducedCurve:
    """A long Weierstrass equation over a residue field."""

    field: ResidueField
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @classmethod
    def from_model(cls, model: WeierstrassModel, L: QuadPrime) -> ReducedCurve:
        return cls(L.field, *model.reduce(L))

    @property
    def disc(self) -> int:
        F = self.field
        m, ad = F.mul, F.add
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = ad(m(a1, a1), m(4 % F.l, a2))
        b4 = ad(m(a1, a3), m(2 % F.l, a4))
        b6 = ad(m(a3, a3), m(4 % F.l, a6))
        b8 = ad(
            ad(m(m(a1, a1), a6), m(4 % F.l, m(a2, a6))),
            ad(F.neg(m(m(a1, a3), a4)), ad(m(a2, m(a3, a3)), F.neg(m(a4, a4)))),
        )
        terms = [
            F.neg(m(m(b2, b2), b8)),
            F.neg(m(8 % F.l, m(b4, m(b4, b4)))),
            F.neg(m(27 % F.l, m(b6, b6))),
            m(9 % F.l, m(b2, m(b4, b6))),
        ]
        d = 0
        for t in terms:
            d = ad(d, t)
        return d

    def is_singular(self) -> bool:
        return self.disc == 0

    def lhs_rhs(self, x: int, y: int) -> tuple[int, int]:
        F = self.field
        m, ad = F.mul, F.add
        lhs = ad(m(y, y), m(y, ad(m(self.a1, x), self.a3)))
        x2 = m(x, x)
        rhs = ad(ad(m(x2, x), m(self.a2, x2)), ad(m(self.a4, x), self.a6))
        return lhs, rhs


@lru_cache(maxsize=None)
def _square_counts(F: ResidueField) -> tuple[int, ...]:
    """Number of y with y^2 = c, indexed by c."""
    counts = [0] * F.q
    for y in F.elements():
        counts[F.mul(y, y)] += 1
    return tuple(counts)


def _weil_check(F: ResidueField, n: int) -> None:
    a = F.q + 1 - n
    if a * a > 4 * F.q:
        raise ArithmeticError(f"trace {a} over F_{F.q} violates the Weil bound")


def count_points(E: ReducedCurve) -> int:
    """#E(F_q), including the point at infinity, by enumerating x."""
    if E.is_singular():
        raise ValueError("singular curve")
    F = E.field
    m, ad = F.mul, F.add
    n = 1
    if F.l == 2:
        for x in F.elements():
            for y in F.elements():
                lhs, rhs = E.lhs_rhs(x, y)
                n += lhs == rhs
    else:
        # complete the square: (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2
        sq = _square_counts(F)
        four = 4 % F.l
        for x in F.elements():
            h = ad(m(E.a1, x), E.a3)
            x2 = m(x, x)
            rhs = ad(ad(m(x2, x), m(E.a2, x2)), ad(m(E.a4, x), E.a6))
            n += sq[ad(m(four, rhs), m(h, h))]
    _weil_check(F, n)
    return n


def count_points_bruteforce(E: ReducedCurve) -> int:
    """Independent recount: loop over y outside, x inside, test the equation directly."""
    if E.is_singular():
        raise ValueError("singular curve")
    F = E.field
    n = 1
    for y in F.elements():
        for x in F.elements():
            lhs, rhs = E.lhs_rhs(x, y)
            if lhs == rhs:
                n += 1
    _weil_check(F, n)
    return n


def trace_of(E: ReducedCurve) -> int:
    return E.field.q + 1 - count_points(E)


@lru_cache(maxsize=None)
def _short_trace(F: ResidueField, a4: int, a6: int) -> int | None:
    E = ReducedCurve(F, 0, 0, 0, a4, a6)
    return None if E.is_singular() else trace_of(E)


# --- enumeration ------------------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """Restriction on the pairs (a, b): none, d | a + b, or the squares variant."""

    d: int | None = None
    squares: bool = False
    require_5: bool = False

    def describe(self) -> str:
        parts = []
        if self.d is not None:
            parts.append(f"{self.d} | a+b")
        if self.squares:
            parts.append("(a^2, b^2)" + (" with 5 | a^2+b^2" if self.require_5 else ""))
        return ", ".join(parts) or "none"

    def frey_args(self, a: int, b: int) -> tuple[int, int]:
        return (a * a, b * b) if self.squares else (a, b)

    def condition(self) -> tuple[int, Callable[[int, int], bool]] | None:
        """(modulus, predicate) of the congruence condition, if any."""
        if self.d is not None:
            d = self.d
            return d, lambda a, b: (a + b) % d == 0
        if self.squares and self.require_5:
            return 5, lambda a, b: (a * a + b * b) % 5 == 0
        return None

    def applies_at(self, l: int) -> bool:
        """A condition modulo m coprime to l leaves every residue pair mod l^k reachable (CRT)."""
        cond = self.condition()
        return cond is not None and math.gcd(cond[0], l) != 1


@dataclass(frozen=True)
class TraceSet:
    label: str
    constraint: str
    values: tuple[int, ...]
    modulus: int  # modulus of the residue pairs enumerated for the reported set
    stable_moduli: tuple[int, ...] = ()  # higher moduli checked to give the same set

    def __post_init__(self) -> None:
        q = PRIMES[self.label].q if self.label in PRIMES else None
        if tuple(sorted(set(self.values))) != self.values:
            raise ValueError("trace set must be sorted and deduplicated")
        if q is not None and any(a * a > 4 * q for a in self.values):
            raise ArithmeticError(f"Weil bound violated in {self.label}: {self.values}")

    def as_set(self) -> frozenset[int]:
        return frozenset(self.values)


def local_trace(fam: FreyFamily, L: QuadPrime, a: int, b: int) -> int | None:
    """a_L of the Frey curve at the integer pair (a, b), or None for bad reduction."""
    model = WeierstrassModel.from_instance(instantiate(fam, a, b, require_coprime=False))
    data = tate(model, L)
    if data.reduction != "good":
        return None
    return trace_of(ReducedCurve.from_model(data.minimal_model, L))


def _residue_pairs(l: int, M: int, constraint: Constraint) -> Iterator[tuple[int, int]]:
    cond = constraint.condition() if constraint.applies_at(l) else None
    for a in range(M):
        for b in range(M):
            if a % l == 0 and b % l == 0:
                continue
            if cond is not None and not cond[1](a, b):
                continue
            yield a, b


def _exact_set(fam: FreyFamily, L: QuadPrime, M: int, constraint: Constraint) -> set[int]:
    out = set()
    for a, b in _residue_pairs(L.l, M, constraint):
        x, y = coprime_lift(a, b, M)
        t = local_trace(fam, L, *constraint.frey_args(x, y))
        if t is not None:
            out.add(t)
    return out


def _reduced_coefficients(p: QuadPoly, L: QuadPrime) -> list[tuple[int, int, int, int]]:
    """(i, j, c0, c1): the coefficient of a^i b^j reduced mod L as c0 + c1 t."""
    F = L.field
    return [(i, j, *F.split(reduce(p.coeff(i, j), L))) for i, j in p.monomials()]


def _vector_eval(coeffs: list[tuple[int, int, int, int]], a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    """Evaluate a reduced polynomial at integer arrays, returning encoded field elements."""
    c0 = np.zeros_like(a)
    c1 = np.zeros_like(a)
    for i, j, k0, k1 in coeffs:
        mono = np.ones_like(a)
        for _ in range(i):
            mono = mono * a % l
        for _ in range(j):
            mono = mono * b % l
        c0 = (c0 + k0 * mono) % l
        c1 = (c1 + k1 * mono) % l
    return c0 + l * c1


def _vector_set(fam: FreyFamily, L: QuadPrime, M: int, constraint: Constraint) -> set[int]:
    """Same enumeration as `_exact_set` for a prime where the short model is minimal.

    The short model is minimal at L when L does not divide 6, and its
    reduction is evaluated directly at every lift in [0, M)^2.
    """
    pairs = np.array(list(_residue_pairs(L.l, M, constraint)), dtype=np.int64)
    if constraint.squares:
        pairs = pairs * pairs
    a, b = pairs[:, 0], pairs[:, 1]
    a4 = _vector_eval(_reduced_coefficients(fam.a4, L), a, b, L.l)
    a6 = _vector_eval(_reduced_coefficients(fam.a6, L), a, b, L.l)
    out = set()
    for k4, k6 in set(zip(a4.tolist(), a6.tolist())):
        t = _short_trace(L.field, k4, k6)
        if t is not None:
            out.add(t)
    return out


def _label(L: QuadPrime | str) -> QuadPrime:
    return PRIMES[L] if isinstance(L, str) else L


def trace_set(
    L: QuadPrime | str,
    constraint: Constraint | None = None,
    *,
    fam: FreyFamily | None = None,
    lift_moduli: Iterable[int] | None = None,
) -> TraceSet:
    """Possible a_L over residue pairs mod l, checked against lifts to higher moduli.

    By default the check uses l^2, and also l^3 when l = 3.  A different set
    at any modulus raises `LiftInstability`.
    """
    L = _label(L)
    if L.l in (2, 13):
        raise ValueError(f"no trace set at {L.label}")
    constraint = constraint or Constraint()
    fam = fam or _family()
    l = L.l
    base = _exact_set(fam, L, l, constraint)
    moduli = tuple(lift_moduli) if lift_moduli is not None else ((l * l, l**3) if l == 3 else (l * l,))
    for M in moduli:
        if M % l:
            raise ValueError(f"lift modulus {M} is not a multiple of {l}")
        other = _exact_set(fam, L, M, constraint) if l in (2, 3) else _vector_set(fam, L, M, constraint)
        if other != base:
            raise LiftInstability(f"{L.label}: traces mod {l} give {sorted(base)}, mod {M} give {sorted(other)}")
    return TraceSet(L.label, constraint.describe(), tuple(sorted(base)), l, moduli)


@lru_cache(maxsize=1)
def _family() -> FreyFamily:
    return build_family()


def all_trace_sets(constraint: Constraint | None = None, **kw) -> dict[str, TraceSet]:
    from .quadfield import TRACE_PRIMES

    return {lab: trace_set(lab, constraint, **kw) for lab in TRACE_PRIMES}


def constrained_singletons(d: int, **kw) -> dict[str, TraceSet]:
    """Trace sets at the primes above d when d | a + b."""
    if d not in SINGLETON_PRIMES:
        raise ValueError("d must be one of 3, 5, 7, 11")
    return {lab: trace_set(lab, Constraint(d=d), **kw) for lab in SINGLETON_PRIMES[d]}


def squares_trace_set(L: QuadPrime | str, require_5_divides: bool, **kw) -> TraceSet:
    """Traces of the Frey curve at (a^2, b^2)."""
    return trace_set(L, Constraint(squares=True, require_5=require_5_divides), **kw)


def squares_mod4_residues() -> set[int]:
    """Residues of a^2 + b^2 mod 4 over pairs not both even (all coprime pairs land here)."""
    return {(a * a + b * b) % 4 for a in range(4) for b in range(4) if a % 2 or b % 2}
