"""Residues in Z/p^M with valuation and precision semantics, and characters
of Gamma with values in 1 + qZ_p."""

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAUnit, PrimeMismatch, IwasawaError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise IwasawaError(f"p must be a prime, got {p!r}")
    return p


def vp(x: int, p: int) -> int | None:
    """Exact p-adic valuation of an integer (None for 0)."""
    x = int(x)
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class AtLeast:
    """Valuation known only to be at least ``bound`` (value is zero at precision)."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


@dataclass(frozen=True)
class PadicInt:
    """An element of Z_p known modulo p**prec."""

    p: int
    prec: int
    residue: int

    def __post_init__(self):
        if self.prec < 1:
            raise IwasawaError(f"precision must be >= 1, got {self.prec}")
        object.__setattr__(self, "residue", int(self.residue) % (self.p ** self.prec))

    @property
    def modulus(self) -> int:
        return self.p ** self.prec

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"cannot combine p={self.p} with p={other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(self.p, self.prec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, min(self.prec, other.prec), self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.prec, -self.residue)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.p, min(self.prec, other.prec), self.residue * other.residue)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.invert() ** (-e)
        return PadicInt(self.p, self.prec, pow(self.residue, e, self.modulus))

    def valuation(self):
        """Largest e < prec with p**e | residue, or ``AtLeast(prec)`` for zero."""
        if self.residue == 0:
            return AtLeast(self.prec)
        return vp(self.residue, self.p)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def invert(self):
        if not self.is_unit():
            raise NotAUnit(f"{self.residue} is not a unit mod {self.p}^{self.prec}")
        return PadicInt(self.p, self.prec, pow(self.residue, -1, self.modulus))

    def lift(self, prec: int):
        """Same canonical representative, viewed at another precision."""
        return PadicInt(self.p, prec, self.residue)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.p}^{self.prec})"


def add(x: PadicInt, y: PadicInt) -> PadicInt:
    return x + y


def mul(x: PadicInt, y: PadicInt) -> PadicInt:
    return x * y


def neg(x: PadicInt) -> PadicInt:
    return -x


def valuation(x: PadicInt):
    return x.valuation()


def invert(x: PadicInt) -> PadicInt:
    return x.invert()


def q_of(p: int) -> int:
    return 4 if p == 2 else p


@dataclass(frozen=True)
class Character:
    """A character kappa of Gamma, recorded by kappa(gamma) as an integer.

    ``gamma_value`` is an exact integer congruent to 1 mod q (q = p, or 4 when
    p = 2); ``prec`` fixes the working precision of :attr:`value`.
    """

    p: int
    prec: int
    gamma_value: int

    def __post_init__(self):
        check_prime(self.p)
        q = q_of(self.p)
        if (self.gamma_value - 1) % q != 0:
            raise IwasawaError(
                f"kappa(gamma) = {self.gamma_value} is not congruent to 1 mod {q}")

    @property
    def value(self) -> PadicInt:
        return PadicInt(self.p, self.prec, self.gamma_value)

    @property
    def is_trivial(self) -> bool:
        return self.gamma_value == 1


def char_power(kappa: Character, i: int) -> PadicInt:
    """kappa(gamma)**i mod p**prec; negative i goes through the inverse."""
    return kappa.value ** i
