"""Characters of the multiplicative group of a p-adic field.

A character is split into an unramified part |.|^e with exact rational
exponent e, and a finite-order part recorded as an opaque label j in Z/m.
Only triviality, equality, and the group law are ever needed of the finite
labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError


@dataclass(frozen=True)
class KCharacter:
    exponent: Fraction
    fin_modulus: int = 1
    fin_label: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.fin_modulus < 1:
            raise ValueError("finite-part modulus must be positive")
        label = self.fin_label % self.fin_modulus
        modulus = self.fin_modulus
        if label == 0:
            modulus = 1
        object.__setattr__(self, "fin_label", label)
        object.__setattr__(self, "fin_modulus", modulus)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def trivial() -> "KCharacter":
        return KCharacter(Fraction(0))

    @staticmethod
    def unramified(e) -> "KCharacter":
        """The character |.|^e."""
        return KCharacter(Fraction(e))

    @staticmethod
    def finite(modulus: int, label: int, e=0) -> "KCharacter":
        return KCharacter(Fraction(e), modulus, label)

    # -- predicates ------------------------------------------------------------

    def is_trivial(self) -> bool:
        return self.exponent == 0 and self.fin_label == 0

    def has_trivial_finite_part(self) -> bool:
        return self.fin_label == 0

    def is_unramified_integer(self) -> bool:
        return self.fin_label == 0 and self.exponent.denominator == 1

    # -- group law ----------------------------------------------------------------

    def __mul__(self, other: "KCharacter") -> "KCharacter":
        if self.fin_label == 0:
            mod, lab = other.fin_modulus, other.fin_label
        elif other.fin_label == 0:
            mod, lab = self.fin_modulus, self.fin_label
        elif self.fin_modulus == other.fin_modulus:
            mod, lab = self.fin_modulus, self.fin_label + other.fin_label
        else:
            raise ConfigError(
                f"finite parts live in different label groups "
                f"Z/{self.fin_modulus} and Z/{other.fin_modulus}")
        return KCharacter(self.exponent + other.exponent, mod, lab)

    def inverse(self) -> "KCharacter":
        return KCharacter(-self.exponent, self.fin_modulus, -self.fin_label)

    def __str__(self) -> str:
        fin = "triv" if self.fin_label == 0 else f"fin{self.fin_modulus}^{self.fin_label}"
        return f"{fin}:{self.exponent}"


@dataclass(frozen=True)
class CharacterPair:
    """A character of the product group, acting through both determinants."""

    chi1: KCharacter
    chi2: KCharacter

    def product(self) -> KCharacter:
        return self.chi1 * self.chi2

    def swap_inverse(self) -> "CharacterPair":
        """(chi1, chi2) -> (chi2^-1, chi1^-1), the transpose-side pair."""
        return CharacterPair(self.chi2.inverse(), self.chi1.inverse())

    def __str__(self) -> str:
        return f"({self.chi1}, {self.chi2})"


def parse_character(text: str) -> KCharacter:
    """Parse the grammar 'triv:e' or 'fin<m>^<j>:e' with e a rational."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise ConfigError(f"bad character syntax {text!r}: missing ':'")
    try:
        exponent = Fraction(tail)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad character exponent {tail!r}") from exc
    if head == "triv":
        return KCharacter(exponent)
    if head.startswith("fin"):
        body = head[3:]
        mod_s, sep2, lab_s = body.partition("^")
        if not sep2:
            raise ConfigError(f"bad finite part {head!r}: expected fin<m>^<j>")
        try:
            modulus, label = int(mod_s), int(lab_s)
        except ValueError as exc:
            raise ConfigError(f"bad finite part {head!r}") from exc
        if modulus < 1:
            raise ConfigError("finite-part modulus must be positive")
        return KCharacter(exponent, modulus, label)
    raise ConfigError(f"bad character syntax {text!r}")
