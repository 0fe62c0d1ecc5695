"""Arithmetic in Z[zeta_13] and the degree-two factors of phi(x, y).

Elements are stored in the power basis 1, z, ..., z^11; products are reduced
with z^12 = -(1 + z + ... + z^11).  The Galois group is generated by
sigma: z -> z^2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

R = 13
DEG = R - 1
GENERATOR = 2  # primitive root mod 13; sigma(z) = z^2

__all__ = [
    "CycElt",
    "CycPoly",
    "IdentityError",
    "galois",
    "norm",
    "val_P13",
    "zeta",
    "ALPHA",
    "BETA",
    "GAMMA",
    "PhiFactors",
    "build_phi_factors",
    "NullRelation",
    "check_null_relation",
    "phi_int",
]


class IdentityError(AssertionError):
    """An exact polynomial identity failed."""


def _canon13(c13: list[int]) -> tuple[int, ...]:
    top = c13[DEG]
    return tuple(c - top for c in c13[:DEG])


class CycElt:
    """Element of Z[zeta_13] as 12 integer coordinates."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        if len(c) > DEG:
            # Accept longer exponent vectors (e.g. 13 slots) by folding mod z^13 - 1.
            c13 = [0] * R
            for i, v in enumerate(c):
                c13[i % R] += v
            self.c = _canon13(c13)
        else:
            self.c = tuple(c) + (0,) * (DEG - len(c))
        self._hash = None

    @classmethod
    def from_exponents(cls, terms: Mapping[int, int]) -> CycElt:
        """Build sum(coef * z^e) for exponents taken mod 13."""
        c13 = [0] * R
        for e, v in terms.items():
            c13[e % R] += v
        return cls(_canon13(c13))

    @classmethod
    def from_int(cls, n: int) -> CycElt:
        return cls((n,))

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycElt.from_int(other)
        return isinstance(other, CycElt) and self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __add__(self, other: CycElt | int) -> CycElt:
        if isinstance(other, int):
            return CycElt((self.c[0] + other,) + self.c[1:])
        return CycElt(a + b for a, b in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self) -> CycElt:
        return CycElt(-a for a in self.c)

    def __sub__(self, other: CycElt | int) -> CycElt:
        return self + (-other)

    def __rsub__(self, other: int) -> CycElt:
        return (-self) + other

    def __mul__(self, other: CycElt | int) -> CycElt:
        if isinstance(other, int):
            return CycElt(other * a for a in self.c)
        c13 = [0] * R
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        c13[(i + j) % R] += a * b
        return CycElt(_canon13(c13))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycElt:
        result = CycElt.from_int(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"CycElt({list(self.c)})"

    def __str__(self) -> str:
        parts = []
        for i, v in enumerate(self.c):
            if v:
                mono = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if i and abs(v) == 1:
                    parts.append(("-" if v < 0 else "+") + mono)
                else:
                    parts.append(f"{v:+d}" + ("" if i == 0 else "*" + mono))
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


def zeta(k: int = 1) -> CycElt:
    return CycElt.from_exponents({k: 1})


def _exponent_vector(e: CycElt) -> list[int]:
    return list(e.c) + [0]


def galois(e: CycElt, k: int) -> CycElt:
    """Apply sigma^k, where sigma(z) = z^2."""
    m = pow(GENERATOR, k % DEG, R)
    c13 = [0] * R
    for i, v in enumerate(e.c):
        if v:
            c13[(i * m) % R] += v
    return CycElt(_canon13(c13))


def conjugates(e: CycElt) -> list[CycElt]:
    return [galois(e, k) for k in range(DEG)]


def norm(e: CycElt) -> int:
    """Absolute norm: product of the twelve conjugates."""
    acc = CycElt.from_int(1)
    for k in range(DEG):
        acc = acc * galois(e, k)
    if not acc.is_rational():
        raise ArithmeticError(f"norm of {e} is not rational: {acc}")
    return acc.c[0]


def is_fixed(e: CycElt, k: int) -> bool:
    """True when ``e`` lies in the fixed field of sigma^k."""
    return galois(e, k) == e


def _nu(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_P13(e: CycElt, subfield_degree: int = DEG) -> int:
    """Valuation at the prime above 13 of the subfield of the given degree.

    13 is totally ramified in Q(zeta_13), so in a subfield F of degree d the
    valuation equals nu_13(N_{F/Q}(e)) = nu_13(N(e)) * d / 12.  The default is
    the full cyclotomic field; ``subfield_degree=6`` is the real subfield K and
    ``subfield_degree=2`` is Q(sqrt 13).
    """
    if e.is_zero():
        raise ValueError("valuation of zero")
    if DEG % subfield_degree:
        raise ValueError(f"no subfield of degree {subfield_degree}")
    if not is_fixed(e, subfield_degree):
        raise ValueError(f"{e} does not lie in the degree-{subfield_degree} subfield")
    v = _nu(abs(norm(e)), R) * subfield_degree
    if v % DEG:
        raise ArithmeticError("valuation is not integral; subfield membership check is wrong")
    return v // DEG


# --- bivariate polynomials ------------------------------------------------------


class CycPoly:
    """Polynomial in x, y with CycElt coefficients; keys are (deg_x, deg_y)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], CycElt | int] | None = None):
        clean: dict[tuple[int, int], CycElt] = {}
        for k, v in (terms or {}).items():
            if isinstance(v, int):
                v = CycElt.from_int(v)
            if not v.is_zero():
                clean[k] = v
        self.terms = clean

    @classmethod
    def linear(cls, cx: CycElt | int, cy: CycElt | int) -> CycPoly:
        return cls({(1, 0): cx, (0, 1): cy})

    @classmethod
    def const(cls, c: CycElt | int) -> CycPoly:
        return cls({(0, 0): c})

    def coeff(self, i: int, j: int) -> CycElt:
        return self.terms.get((i, j), CycElt())

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self.terms}) <= 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: CycPoly) -> CycPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return CycPoly(out)

    def __neg__(self) -> CycPoly:
        return CycPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: CycPoly) -> CycPoly:
        return self + (-other)

    def __mul__(self, other: CycPoly | CycElt | int) -> CycPoly:
        if isinstance(other, (CycElt, int)):
            return CycPoly({k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, int], CycElt] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                p = a * b
                out[k] = out[k] + p if k in out else p
        return CycPoly(out)

    def __rmul__(self, other: CycElt | int) -> CycPoly:
        return self * other

    def __pow__(self, n: int) -> CycPoly:
        result = CycPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, a: int, b: int) -> CycElt:
        acc = CycElt()
        for (i, j), c in self.terms.items():
            acc = acc + c * (a**i * b**j)
        return acc

    def map_coeffs(self, fn) -> CycPoly:
        return CycPoly({k: fn(v) for k, v in self.terms.items()})

    def galois(self, k: int) -> CycPoly:
        return self.map_coeffs(lambda c: galois(c, k))

    def first_difference(self, other: CycPoly) -> tuple[tuple[int, int], CycElt, CycElt] | None:
        for key in sorted(set(self.terms) | set(other.terms), reverse=True):
            a, b = self.coeff(*key), other.coeff(*key)
            if a != b:
                return key, a, b
        return None

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items(), reverse=True))
        return f"CycPoly({body or '0'})"


def assert_identity(lhs: CycPoly, rhs: CycPoly, label: str) -> None:
    diff = lhs.first_difference(rhs)
    if diff is not None:
        (i, j), a, b = diff
        raise IdentityError(f"{label}: coefficient of x^{i}*y^{j} differs: {a} != {b}")


def phi_int() -> CycPoly:
    """phi(x, y) = sum_{i=0}^{12} (-1)^i x^(12-i) y^i with integer coefficients."""
    return CycPoly({(DEG - i, i): (-1) ** i for i in range(R)})


def _linear_product(exponents: Iterable[int]) -> CycPoly:
    acc = CycPoly.const(1)
    for e in exponents:
        acc = acc * CycPoly.linear(1, zeta(e))
    return acc


# The triple (alpha, beta, gamma) exactly as printed.
ALPHA = CycElt.from_exponents({10: -1, 9: 1, 4: 1, 3: -1})
BETA = CycElt.from_exponents({12: 1, 9: -1, 4: -1, 1: 1})
GAMMA = CycElt.from_exponents({12: -1, 10: 1, 3: 1, 1: -1})

PHI1_EXPONENTS = (1, 12, 4, 9, 3, 10)
PHI2_EXPONENTS = (2, 5, 6, 7, 8, 11)
QUADRATIC_EXPONENTS = {"f1": (1, 12), "f2": (4, 9), "f3": (3, 10)}


class PhiFactors(NamedTuple):
    phi: CycPoly
    phi1: CycPoly
    phi2: CycPoly
    f1: CycPoly
    f2: CycPoly
    f3: CycPoly


def build_phi_factors() -> PhiFactors:
    """Build phi, phi1, phi2, f1, f2, f3 from linear forms and check the identities."""
    phi = _linear_product(range(1, R))
    assert_identity(phi, phi_int(), "prod (x + z^i y) = phi")
    phi1 = _linear_product(PHI1_EXPONENTS)
    phi2 = _linear_product(PHI2_EXPONENTS)
    assert_identity(phi1 * phi2, phi, "phi1 * phi2 = phi")
    f1, f2, f3 = (_linear_product(QUADRATIC_EXPONENTS[n]) for n in ("f1", "f2", "f3"))
    for name, f in (("f1", f1), ("f2", f2), ("f3", f3)):
        i, j = QUADRATIC_EXPONENTS[name]
        expected = CycPoly({(2, 0): 1, (1, 1): zeta(i) + zeta(j), (0, 2): 1})
        assert_identity(f, expected, f"{name} expansion")
    assert_identity(f1 * f2 * f3, phi1, "f1 * f2 * f3 = phi1")
    return PhiFactors(phi, phi1, phi2, f1, f2, f3)


@dataclass(frozen=True)
class NullRelation:
    """A verified assignment weight -> quadratic with sum(weight * quadratic) = 0."""

    pairing: tuple[tuple[str, str], ...]  # (("alpha", "f1"), ...)
    printed_pairing_holds: bool

    def quadratic_for(self, weight: str) -> str:
        return dict(self.pairing)[weight]

    def describe(self) -> str:
        return " + ".join(f"{w}*{q}" for w, q in self.pairing) + " = 0"


WEIGHTS = {"alpha": ALPHA, "beta": BETA, "gamma": GAMMA}
PRINTED_PAIRING = (("alpha", "f1"), ("beta", "f2"), ("gamma", "f3"))


def _weighted_sum(pairing, quads: Mapping[str, CycPoly]) -> CycPoly:
    acc = CycPoly()
    for w, q in pairing:
        acc = acc + quads[q] * WEIGHTS[w]
    return acc


def check_null_relation(factors: PhiFactors | None = None) -> NullRelation:
    """Find the assignment of (alpha, beta, gamma) to (f1, f2, f3) that sums to zero.

    The printed assignment is tried first, then the remaining permutations.
    """
    factors = factors or build_phi_factors()
    quads = {"f1": factors.f1, "f2": factors.f2, "f3": factors.f3}
    if _weighted_sum(PRINTED_PAIRING, quads).is_zero():
        return NullRelation(PRINTED_PAIRING, True)
    for perm in itertools.permutations(("f1", "f2", "f3")):
        pairing = tuple(zip(("alpha", "beta", "gamma"), perm))
        if _weighted_sum(pairing, quads).is_zero():
            return NullRelation(pairing, False)
    raise IdentityError("no assignment of (alpha, beta, gamma) to (f1, f2, f3) gives a null relation")


def gcd_int(*values: int) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
