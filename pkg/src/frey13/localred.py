"""Tate's algorithm at a prime of Q(sqrt 13).

Models are kept global (coefficients in the ring of integers); every prime
used here is principal, so dividing by the listed generator is exact.
Residue-field root finding is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .frey import CurveInstance, FreyFamily, instantiate
from .quadfield import PRIMES, QuadElt, QuadPrime, lift, reduce, val_at

__all__ = ["WeierstrassModel", "LocalData", "tate", "conductor_profile", "shortcut_exponent", "TateError", "exponent_at_2_table", "coprime_lift"]

INF = 10**9


class TateError(ArithmeticError):
    pass


def _q(x: QuadElt | int) -> QuadElt:
    return QuadElt.coerce(x)


@dataclass(frozen=True)
class WeierstrassModel:
    a1: QuadElt
    a2: QuadElt
    a3: QuadElt
    a4: QuadElt
    a6: QuadElt

    @classmethod
    def short(cls, a4: QuadElt | int, a6: QuadElt | int) -> WeierstrassModel:
        z = QuadElt(0, 0)
        return cls(z, z, z, _q(a4), _q(a6))

    @classmethod
    def from_ints(cls, *a: QuadElt | int) -> WeierstrassModel:
        return cls(*(_q(x) for x in a))

    @classmethod
    def from_instance(cls, inst: CurveInstance) -> WeierstrassModel:
        return cls.short(inst.a4, inst.a6)

    @property
    def ainvs(self) -> tuple[QuadElt, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> QuadElt:
        return self.a1 * self.a1 + self.a2 * 4

    @property
    def b4(self) -> QuadElt:
        return self.a1 * self.a3 + self.a4 * 2

    @property
    def b6(self) -> QuadElt:
        return self.a3 * self.a3 + self.a6 * 4

    @property
    def b8(self) -> QuadElt:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> QuadElt:
        b2 = self.b2
        return b2 * b2 - self.b4 * 24

    @property
    def c6(self) -> QuadElt:
        b2, b4, b6 = self.b2, self.b4, self.b6
        return -(b2 * b2 * b2) + b2 * b4 * 36 - b6 * 216

    @property
    def disc(self) -> QuadElt:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    def rst(self, r: QuadElt | int = 0, s: QuadElt | int = 0, t: QuadElt | int = 0) -> WeierstrassModel:
        """Substitute x -> x + r, y -> y + s x + t."""
        r, s, t = _q(r), _q(s), _q(t)
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassModel(
            a1 + s * 2,
            a2 - s * a1 + r * 3 - s * s,
            a3 + r * a1 + t * 2,
            a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2,
            a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
        )

    def scale_down(self, u: QuadElt) -> WeierstrassModel:
        """Divide a_i by u^i; raises if the result is not integral."""
        out = []
        for a, i in zip(self.ainvs, (1, 2, 3, 4, 6)):
            q = (u**i).exact_div(a)
            if q is None:
                raise TateError(f"a{i} = {a} is not divisible by ({u})^{i}")
            out.append(q)
        return WeierstrassModel(*out)

    def transform(self, u: QuadElt, r: QuadElt | int, s: QuadElt | int, t: QuadElt | int) -> WeierstrassModel:
        return self.rst(r, s, t).scale_down(u)

    def reduce(self, L: QuadPrime) -> tuple[int, ...]:
        return tuple(reduce(a, L) for a in self.ainvs)


@dataclass(frozen=True)
class LocalData:
    prime: QuadPrime
    kodaira: str
    conductor_exponent: int
    disc_valuation: int  # valuation of the minimal discriminant
    reduction: str  # good | multiplicative | additive
    minimal_model: WeierstrassModel
    split: bool | None = None  # only for multiplicative reduction
    scalings: int = 0  # how many times the input model was scaled down

    def __post_init__(self) -> None:
        f = self.conductor_exponent
        expected = {"good": f == 0, "multiplicative": f == 1, "additive": f >= 2}
        if not expected[self.reduction]:
            raise TateError(f"inconsistent local data: {self.reduction} with f = {f}")
        if self.prime.l >= 5 and self.reduction == "additive" and f != 2:
            raise TateError(f"additive reduction in residue characteristic {self.prime.l} with f = {f}")


class _Local:
    """Valuation, residue and lifting helpers at one prime."""

    def __init__(self, L: QuadPrime):
        self.L = L
        self.F = L.field
        self.p = L.l
        self.pi = L.generator

    def v(self, x: QuadElt) -> int:
        return INF if x.is_zero() else val_at(self.L, x)

    def red(self, x: QuadElt) -> int:
        return reduce(x, self.L)

    def lift(self, k: int) -> QuadElt:
        return lift(k, self.L)

    def div(self, x: QuadElt, n: int) -> QuadElt:
        q = (self.pi**n).exact_div(x)
        if q is None:
            raise TateError(f"{x} is not divisible by pi^{n} at {self.L.label}")
        return q

    def sqrt(self, k: int) -> int:
        return self.F.nth_root(k, 2)

    def root_multiplicities(self, coeffs: list[int]) -> dict[int, int]:
        """Roots in F of sum(coeffs[i] X^i) with multiplicities (synthetic division)."""
        F = self.F
        out: dict[int, int] = {}
        for r in F.roots(coeffs):
            c = list(coeffs)
            mult = 0
            while len(c) > 1:
                # divide by (X - r)
                q = [0] * (len(c) - 1)
                acc = 0
                for i in range(len(c) - 1, 0, -1):
                    acc = F.add(F.mul(acc, r), c[i])
                    q[i - 1] = acc
                rem = F.add(F.mul(acc, r), c[0])
                if rem != 0:
                    break
                mult += 1
                c = q
            out[r] = mult
        return out

    def singular_point(self, m: WeierstrassModel) -> tuple[int, int]:
        F = self.F
        a1, a2, a3, a4, a6 = (self.red(a) for a in m.ainvs)
        if self.p != 2:
            b2, b4, b6 = self.red(m.b2), self.red(m.b4), self.red(m.b6)
            # eta^2 = g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 with y = (eta - a1 x - a3)/2
            g = [b6, F.mul(2, b4), b2, F.from_int(4)]
            dg = [F.mul(2, b4), F.mul(2, b2), F.from_int(12)]
            for x in F.roots(g):
                acc = 0
                for c in reversed(dg):
                    acc = F.add(F.mul(acc, x), c)
                if acc == 0:
                    y = F.mul(F.neg(F.add(F.mul(a1, x), a3)), F.inv(F.from_int(2)))
                    return x, y
            raise TateError("no singular point on a reduction with vanishing discriminant")
        for x in F.elements():
            x2 = F.mul(x, x)
            for y in F.elements():
                # partial derivatives in characteristic 2
                if F.add(F.mul(a1, x), a3) != 0:
                    continue
                if F.add(F.add(F.mul(a1, y), x2), a4) != 0:
                    continue
                lhs = F.add(F.mul(y, y), F.mul(y, F.add(F.mul(a1, x), a3)))
                rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6))
                if lhs == rhs:
                    return x, y
        raise TateError("no singular point on a reduction with vanishing discriminant")


def tate(model: WeierstrassModel, L: QuadPrime) -> LocalData:
    """Kodaira type, conductor exponent and a minimal model at ``L``."""
    if model.disc.is_zero():
        raise TateError("singular Weierstrass model")
    loc = _Local(L)
    F, p, pi, v = loc.F, loc.p, loc.pi, loc.v
    for a in model.ainvs:
        if not a.is_zero() and v(a) < 0:  # pragma: no cover - ring elements are integral
            raise TateError("model is not integral")
    m = model
    scalings = 0
    while True:
        n = v(m.disc)
        if n == 0:
            return LocalData(L, "I0", 0, 0, "good", m, scalings=scalings)

        # move the singular point to (0, 0)
        x0, y0 = loc.singular_point(m)
        m = m.rst(loc.lift(x0), 0, loc.lift(y0))
        if not (v(m.a3) >= 1 and v(m.a4) >= 1 and v(m.a6) >= 1):
            raise TateError("singular point translation failed")

        if v(m.b2) == 0:
            roots = F.roots([F.neg(loc.red(m.a2)), loc.red(m.a1), 1])
            return LocalData(L, f"I{n}", 1, n, "multiplicative", m, split=bool(roots), scalings=scalings)
        if v(m.a6) < 2:
            return LocalData(L, "II", n, n, "additive", m, scalings=scalings)
        if v(m.b8) < 3:
            return LocalData(L, "III", n - 1, n, "additive", m, scalings=scalings)
        if v(m.b6) < 3:
            return LocalData(L, "IV", n - 2, n, "additive", m, scalings=scalings)

        # pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if p == 2:
            s = loc.lift(loc.sqrt(loc.red(m.a2)))
            t = pi * loc.lift(loc.sqrt(loc.red(loc.div(m.a6, 2))))
        else:
            h = (p + 1) // 2
            s = -m.a1 * h
            t = -m.a3 * h
        m = m.rst(0, s, t)
        if not (v(m.a1) >= 1 and v(m.a2) >= 1 and v(m.a3) >= 2 and v(m.a4) >= 2 and v(m.a6) >= 3):
            raise TateError(f"step 6 normalisation failed at {L.label}")

        cubic = [loc.red(loc.div(m.a6, 3)), loc.red(loc.div(m.a4, 2)), loc.red(loc.div(m.a2, 1)), 1]
        mults = loc.root_multiplicities(cubic)
        top = max(mults.values(), default=0)
        if top <= 1:
            return LocalData(L, "I0*", n - 4, n, "additive", m, scalings=scalings)

        if top == 2:
            x_double = next(r for r, k in mults.items() if k == 2)
            m = m.rst(pi * loc.lift(x_double), 0, 0)
            stage = 1
            while True:
                if stage % 2:
                    k = (stage + 3) // 2
                    b = loc.red(loc.div(m.a3, k))
                    c = loc.red(loc.div(m.a6, 2 * k))
                    quad = [F.neg(c), b, 1]
                    dbl = [r for r, e in loc.root_multiplicities(quad).items() if e >= 2]
                    if not dbl:
                        break
                    m = m.rst(0, 0, pi**k * loc.lift(dbl[0]))
                    if v(m.a3) < k + 1 or v(m.a6) < 2 * k + 1:
                        raise TateError("I_n* y-translation failed")
                else:
                    k = (stage + 2) // 2
                    quad = [
                        loc.red(loc.div(m.a6, 2 * k + 1)),
                        loc.red(loc.div(m.a4, k + 1)),
                        loc.red(loc.div(m.a2, 1)),
                    ]
                    dbl = [r for r, e in loc.root_multiplicities(quad).items() if e >= 2]
                    if not dbl:
                        break
                    m = m.rst(pi**k * loc.lift(dbl[0]), 0, 0)
                    if v(m.a4) < k + 2 or v(m.a6) < 2 * k + 2:
                        raise TateError("I_n* x-translation failed")
                stage += 1
            return LocalData(L, f"I{stage}*", n - 4 - stage, n, "additive", m, scalings=scalings)

        # triple root
        x_triple = next(iter(mults))
        m = m.rst(pi * loc.lift(x_triple), 0, 0)
        if not (v(m.a2) >= 2 and v(m.a4) >= 3 and v(m.a6) >= 4):
            raise TateError("triple-root translation failed")
        quad = [F.neg(loc.red(loc.div(m.a6, 4))), loc.red(loc.div(m.a3, 2)), 1]
        dbl = [r for r, e in loc.root_multiplicities(quad).items() if e >= 2]
        if not dbl:
            return LocalData(L, "IV*", n - 6, n, "additive", m, scalings=scalings)
        m = m.rst(0, 0, pi * pi * loc.lift(dbl[0]))
        if not (v(m.a3) >= 3 and v(m.a6) >= 5):
            raise TateError("IV* translation failed")
        if v(m.a4) < 4:
            return LocalData(L, "III*", n - 7, n, "additive", m, scalings=scalings)
        if v(m.a6) < 6:
            return LocalData(L, "II*", n - 8, n, "additive", m, scalings=scalings)
        m = m.scale_down(pi)
        scalings += 1


def shortcut_exponent(model: WeierstrassModel, L: QuadPrime) -> int | None:
    """Conductor exponent from valuations alone, valid in residue characteristic >= 5
    when the model is minimal (v(Delta) < 12 or v(c4) < 4).  Returns None when it does not apply."""
    if L.l < 5:
        return None
    loc = _Local(L)
    vd, vc4 = loc.v(model.disc), loc.v(model.c4)
    if vd >= 12 and vc4 >= 4:
        return None
    if vd == 0:
        return 0
    return 1 if vc4 == 0 else 2


def conductor_profile(
    inst: CurveInstance | WeierstrassModel, primes: Iterable[QuadPrime | str], *, cross_check: bool = False
) -> dict[str, int]:
    """Conductor exponent at each prime; characteristic >= 5 uses the valuation shortcut."""
    model = inst if isinstance(inst, WeierstrassModel) else WeierstrassModel.from_instance(inst)
    out = {}
    for P in primes:
        L = PRIMES[P] if isinstance(P, str) else P
        f = shortcut_exponent(model, L)
        if f is None or cross_check:
            full = tate(model, L).conductor_exponent
            if f is not None and f != full:
                raise TateError(f"shortcut gives {f} but Tate gives {full} at {L.label}")
            f = full
        out[L.label] = f
    return out


def coprime_lift(a: int, b: int, M: int) -> tuple[int, int]:
    """A coprime pair congruent to (a, b) mod M (requires (a, b, M) to generate the unit ideal)."""
    for s in range(M + 2):
        for t in range(M + 2):
            x, y = a + M * s, b + M * t
            if gcd(x, y) == 1:
                return x, y
    raise ArithmeticError(f"no coprime lift of ({a}, {b}) mod {M}")


def exponent_at_2_table(fam: FreyFamily, modulus: int = 4, check_modulus: int | None = None) -> dict[tuple[int, int], int]:
    """Conductor exponent at 2 of E0(a, b) for each pair mod ``modulus`` with a or b odd.

    With ``check_modulus`` (a multiple of ``modulus``) every lift to that modulus
    is also computed and must give the same exponent.
    """
    L2 = PRIMES["L2"]
    table: dict[tuple[int, int], int] = {}
    M = check_modulus or modulus
    if M % modulus:
        raise ValueError("check modulus must be a multiple of the base modulus")
    for a in range(M):
        for b in range(M):
            if a % 2 == 0 and b % 2 == 0:
                continue
            x, y = coprime_lift(a, b, M)
            f = tate(WeierstrassModel.from_instance(instantiate(fam, x, y)), L2).conductor_exponent
            key = (a % modulus, b % modulus)
            if table.setdefault(key, f) != f:
                raise TateError(f"exponent at 2 of ({x}, {y}) is {f}, but {table[key]} for another lift of {key}")
    return dict(sorted(table.items()))
