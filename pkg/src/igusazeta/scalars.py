"""Exact scalar arithmetic: rationals, cyclotomic rationals, and unit scalars.

Two scalar types are provided.

``CycloRational`` is an element of the m-th cyclotomic field written in the
power basis ``1, z, ..., z^(phi(m)-1)`` modulo the m-th cyclotomic polynomial,
with ``Fraction`` coefficients.  Level ``m = 1`` is a plain rational.  Values
that turn out to be rational are always renormalized down to level 1, so
structural equality of canonical forms is semantic equality within comparable
levels.

``UnitScalar`` is a number of the shape ``z^j * q^a`` for a fixed integer
``q >= 2`` and a primitive m-th root of unity ``z``.  Its magnitude is exactly
``q^a``, which makes convergence questions decidable without floating point.

Levels interact only through divisibility: a value at level ``m'`` may be
lifted into level ``m`` when ``m' | m``.  Incomparable levels are rejected;
there is no automatic join of cyclotomic fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConfigError

RationalLike = int | Fraction


def euler_phi(m: int) -> int:
    """Euler totient of a positive integer."""
    if m < 1:
        raise ValueError("totient argument must be positive")
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials with monic divisor; dense, low-first.
    num = list(num)
    deg = len(den) - 1
    out = [0] * (max(len(num) - deg, 0))
    for i in range(len(num) - 1, deg - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - deg] = c
        for j, b in enumerate(den):
            num[i - deg + j] -= c * b
    while num and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic level must be positive")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not rem, "cyclotomic division must be exact"
    return tuple(poly)


def _reduce_mod_cyclotomic(coeffs: list[Fraction], m: int) -> list[Fraction]:
    """Reduce a dense polynomial in z modulo the m-th cyclotomic polynomial."""
    phi = euler_phi(m)
    mod = cyclotomic_polynomial(m)
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        coeffs[i] = Fraction(0)
        for j in range(phi):
            coeffs[i - phi + j] -= c * mod[j]
    del coeffs[phi:]
    while len(coeffs) < phi:
        coeffs.append(Fraction(0))
    return coeffs


def _poly_ext_gcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Return (g, s) with s*a = g (mod b), g a constant gcd; dense, low-first."""

    def degree(p: list[Fraction]) -> int:
        d = len(p) - 1
        while d >= 0 and p[d] == 0:
            d -= 1
        return d

    def divmod_frac(num: list[Fraction], den: list[Fraction]):
        num = list(num)
        dd = degree(den)
        lead = den[dd]
        q = [Fraction(0)] * (max(degree(num) - dd + 1, 0))
        for i in range(degree(num), dd - 1, -1):
            if num[i] == 0:
                continue
            c = num[i] / lead
            q[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
        return q, num

    def poly_mul(p: list[Fraction], r: list[Fraction]) -> list[Fraction]:
        if degree(p) < 0 or degree(r) < 0:
            return [Fraction(0)]
        out = [Fraction(0)] * (degree(p) + degree(r) + 2)
        for i, pc in enumerate(p):
            if pc == 0:
                continue
            for j, rc in enumerate(r):
                if rc:
                    out[i + j] += pc * rc
        return out

    def poly_sub(p: list[Fraction], r: list[Fraction]) -> list[Fraction]:
        out = list(p) + [Fraction(0)] * max(0, len(r) - len(p))
        for j, rc in enumerate(r):
            out[j] -= rc
        return out

    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    while degree(r1) >= 0:
        q, rem = divmod_frac(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    return r0, s0


class CycloRational:
    """An exact element of the m-th cyclotomic field in the power basis.

    Canonical form: ``level == 1`` whenever the value is rational.  Arithmetic
    accepts ints and Fractions directly and lifts between levels only along
    divisibility.
    """

    __slots__ = ("level", "coeffs")
    __hash__ = None  # values at different levels can be equal; use == only

    def __init__(self, level: int, coeffs):
        if level < 1:
            raise ValueError("cyclotomic level must be positive")
        coeffs = [Fraction(c) for c in coeffs]
        phi = euler_phi(level)
        if len(coeffs) != phi:
            raise ValueError(f"level {level} needs {phi} coefficients, got {len(coeffs)}")
        if level > 1 and all(c == 0 for c in coeffs[1:]):
            level, coeffs = 1, [coeffs[0]]
        self.level = level
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value: RationalLike) -> "CycloRational":
        return CycloRational(1, [Fraction(value)])

    @staticmethod
    def zero() -> "CycloRational":
        return CycloRational(1, [Fraction(0)])

    @staticmethod
    def one() -> "CycloRational":
        return CycloRational(1, [Fraction(1)])

    @staticmethod
    def root_of_unity(level: int, power: int = 1) -> "CycloRational":
        """z^power at the given level."""
        power %= level
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return CycloRational(level, _reduce_mod_cyclotomic(coeffs, level))

    # -- predicates and views -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.level == 1

    def as_fraction(self) -> Fraction:
        if self.level != 1:
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def abs_bound(self) -> Fraction:
        """Upper bound for the complex absolute value (sum of |coefficients|)."""
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    # -- level handling ------------------------------------------------

    def lift(self, level: int) -> "CycloRational":
        """Rewrite at a finer level; requires self.level | level."""
        if level == self.level:
            return self
        if level % self.level != 0:
            raise ConfigError(
                f"cannot lift level {self.level} into incompatible level {level}"
            )
        step = level // self.level
        dense: list[Fraction] = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        return CycloRational(level, _reduce_mod_cyclotomic(dense, level))

    def _common(self, other: "CycloRational") -> tuple["CycloRational", "CycloRational"]:
        # precondition: both levels > 1 and distinct, so lifting cannot
        # renormalize (canonical values of level > 1 are never rational)
        if other.level % self.level == 0:
            return self.lift(other.level), other
        if self.level % other.level == 0:
            return self, other.lift(self.level)
        raise ConfigError(
            f"incomparable cyclotomic levels {self.level} and {other.level}"
        )

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(value) -> "CycloRational":
        if isinstance(value, CycloRational):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloRational.from_rational(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "CycloRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.level == other.level:
            a, b = self, other
        elif self.level == 1:
            coeffs = list(other.coeffs)
            coeffs[0] = coeffs[0] + self.coeffs[0]
            return CycloRational(other.level, coeffs)
        elif other.level == 1:
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + other.coeffs[0]
            return CycloRational(self.level, coeffs)
        else:
            a, b = self._common(other)
        return CycloRational(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycloRational":
        return CycloRational(self.level, [-c for c in self.coeffs])

    def __sub__(self, other) -> "CycloRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycloRational":
        return (-self) + other

    def __mul__(self, other) -> "CycloRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.level == 1:
            r = self.coeffs[0]
            return CycloRational(other.level, [r * c for c in other.coeffs])
        if other.level == 1:
            r = other.coeffs[0]
            return CycloRational(self.level, [r * c for c in self.coeffs])
        a, b = (self, other) if self.level == other.level else self._common(other)
        out = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    out[i + j] += x * y
        return CycloRational(a.level, _reduce_mod_cyclotomic(out, a.level))

    __rmul__ = __mul__

    def inverse(self) -> "CycloRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.level == 1:
            return CycloRational(1, [1 / self.coeffs[0]])
        g, s = _poly_ext_gcd(list(self.coeffs), [Fraction(c) for c in cyclotomic_polynomial(self.level)])
        # g is a nonzero constant because the cyclotomic polynomial is irreducible.
        const = g[0]
        inv = [c / const for c in s]
        return CycloRational(self.level, _reduce_mod_cyclotomic(inv, self.level))

    def __truediv__(self, other) -> "CycloRational":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycloRational":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CycloRational":
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloRational.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.level == other.level:
            return self.coeffs == other.coeffs
        if self.level == 1 or other.level == 1:
            return False  # canonical rationals live at level 1 only
        # comparison (not arithmetic) may join levels: lift both to the lcm
        join = self.level * other.level // math.gcd(self.level, other.level)
        return self.lift(join).coeffs == other.lift(join).coeffs

    def __repr__(self) -> str:
        return f"CycloRational({self})"

    def __str__(self) -> str:
        if self.level == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z^{i}" if i > 1 else "z")
            else:
                parts.append(f"{c}*z^{i}" if i > 1 else f"{c}*z")
        return "(" + " + ".join(parts) + ")" if parts else "0"


@dataclass(frozen=True)
class UnitScalar:
    """A scalar ``z^root * q^exp`` with ``z`` a primitive level-th root of unity.

    The pair (root, level) is stored in lowest terms, so structural equality is
    semantic equality.  Magnitude is exactly ``q^exp``.
    """

    q: int
    level: int
    root: int
    exp: int

    def __post_init__(self):
        if self.q < 2:
            raise ConfigError("q must be an integer >= 2")
        if self.level < 1:
            raise ValueError("root-of-unity level must be positive")
        root = self.root % self.level
        level = self.level
        if root == 0:
            level = 1
        else:
            g = math.gcd(root, level)
            root //= g
            level //= g
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "level", level)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def one(q: int) -> "UnitScalar":
        return UnitScalar(q, 1, 0, 0)

    @staticmethod
    def q_power(q: int, exp: int) -> "UnitScalar":
        return UnitScalar(q, 1, 0, exp)

    # -- magnitude --------------------------------------------------------

    def magnitude(self) -> Fraction:
        """|z^j q^a| = q^a, exactly."""
        if self.exp >= 0:
            return Fraction(self.q ** self.exp)
        return Fraction(1, self.q ** (-self.exp))

    def magnitude_lt_one(self) -> bool:
        return self.exp < 0

    def is_one(self) -> bool:
        return self.root == 0 and self.exp == 0

    # -- group operations ---------------------------------------------------

    def _check_q(self, other: "UnitScalar") -> None:
        if self.q != other.q:
            raise ConfigError(f"mismatched q: {self.q} vs {other.q}")

    def __mul__(self, other: "UnitScalar") -> "UnitScalar":
        self._check_q(other)
        level = self.level * other.level // math.gcd(self.level, other.level)
        root = self.root * (level // self.level) + other.root * (level // other.level)
        return UnitScalar(self.q, level, root, self.exp + other.exp)

    def inverse(self) -> "UnitScalar":
        return UnitScalar(self.q, self.level, -self.root, -self.exp)

    def __pow__(self, n: int) -> "UnitScalar":
        return UnitScalar(self.q, self.level, self.root * n, self.exp * n)

    def to_cyclo(self) -> CycloRational:
        """Exact embedding z^root * q^exp as a cyclotomic rational."""
        zeta = CycloRational.root_of_unity(self.level, self.root)
        if self.exp >= 0:
            scale = Fraction(self.q ** self.exp)
        else:
            scale = Fraction(1, self.q ** (-self.exp))
        return zeta * scale

    def __str__(self) -> str:
        return render_unit(self)


def render_unit(u: UnitScalar, level: int | None = None) -> str:
    """Canonical text form z^j*q^a with trivial pieces omitted.

    With no level argument, j refers to the scalar's own reduced level.  Pass
    the configured working level to express j relative to that level's
    primitive root (requires u.level | level).
    """
    root = u.root
    if level is not None and u.root:
        if level % u.level != 0:
            raise ConfigError(
                f"scalar at level {u.level} cannot be rendered at level {level}")
        root = u.root * (level // u.level)
    parts = []
    if root:
        parts.append(f"z^{root}")
    if u.exp:
        parts.append(f"q^{u.exp}")
    return "*".join(parts) if parts else "1"


def to_cyclo(value: CycloRational | UnitScalar | RationalLike) -> CycloRational:
    """Coerce any supported scalar to a CycloRational."""
    if isinstance(value, CycloRational):
        return value
    if isinstance(value, UnitScalar):
        return value.to_cyclo()
    return CycloRational.from_rational(value)
