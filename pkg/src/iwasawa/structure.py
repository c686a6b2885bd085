"""Characteristic polynomials of torsion Lambda-modules, twisting by a
character, and the finiteness test for Gamma_n-coinvariants."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import poly
from .errors import (
    InsufficientPrecision,
    IwasawaError,
    MuNonzero,
    NotFinite,
    NotTorsion,
    TrivialCharacter,
)
from .padic import Character, PadicInt, vp
from .series import DistinguishedPoly, LambdaElem, det_lambda, exact_resultant, weierstrass_prep


@dataclass(frozen=True)
class CharPoly:
    """p**mu times a monic polynomial in t (little-endian ``monic``).

    ``prec=None`` means exact coefficients (ints, or Fractions after a
    negative twist in exact mode); otherwise residues mod p**prec.
    """

    p: int
    mu: int
    monic: tuple = (1,)
    prec: int | None = None

    def __post_init__(self):
        if self.mu < 0:
            raise IwasawaError("mu must be >= 0")
        c = [poly.normalize_number(x) for x in poly.trim(self.monic)]
        if self.prec is not None:
            mod = self.p ** self.prec
            c = [_residue(x, mod) for x in c]
        if c[-1] != 1:
            raise IwasawaError(f"characteristic polynomial part must be monic, got {c}")
        object.__setattr__(self, "monic", tuple(c))

    @property
    def lam(self) -> int:
        return len(self.monic) - 1

    @property
    def exact(self) -> bool:
        return self.prec is None

    def coefficients(self):
        """Coefficients of p**mu * monic (reduced when a precision is set)."""
        scale = self.p ** self.mu
        out = [scale * c for c in self.monic]
        if self.prec is not None:
            out = [_residue(c, self.p ** self.prec) for c in out]
        return out


def _residue(x, mod):
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, mod) % mod


@dataclass(frozen=True)
class ElementaryModule:
    """Lambda^r + sum Lambda/p^{m_i} + sum Lambda/(P_j^{e_j})."""

    p: int
    rank: int = 0
    mu_exponents: tuple = ()
    factors: tuple = field(default=())  # ((DistinguishedPoly, e), ...)

    def __post_init__(self):
        if self.rank < 0 or any(m < 1 for m in self.mu_exponents):
            raise IwasawaError("rank must be >= 0 and every m_i >= 1")
        for P, e in self.factors:
            if e < 1 or P.p != self.p:
                raise IwasawaError("factor exponents must be >= 1 with a matching prime")


def invariants(E: ElementaryModule):
    """(Lambda-rank, mu, lambda) of an elementary module."""
    return (E.rank, sum(E.mu_exponents), sum(e * P.degree for P, e in E.factors))


def char_poly(E: ElementaryModule) -> CharPoly:
    if E.rank > 0:
        raise NotTorsion(f"module has free rank {E.rank}")
    precs = [P.prec for P, _ in E.factors if P.prec is not None]
    prec = min(precs) if precs else None
    monic = [1]
    for P, e in E.factors:
        monic = poly.pmul(monic, poly.ppow(P.coefficients(), e))
    return CharPoly(E.p, sum(E.mu_exponents), tuple(monic), prec)


def invariants_from_matrix(A):
    """(mu, lambda, CharPoly) of the cokernel of a square presentation matrix.

    The determinant is prepared and its unit factor discarded; the
    distinguished part is the characteristic polynomial up to the p-power.
    """
    d = det_lambda(A)
    w = weierstrass_prep(d)
    cp = CharPoly(d.p, w.mu, tuple(w.P.coefficients()), w.P.prec)
    return w.mu, w.lam, cp


def twist_char_poly(F: CharPoly, kappa: Character, i: int) -> CharPoly:
    """kappa(gamma)**(i*lam) * F(kappa(gamma)**(-i) * (1+t) - 1).

    Exact F is twisted over Q (kappa(gamma) is an integer, so negative i gives
    Fractions whose denominators are p-adic units); otherwise everything is
    reduced mod p**min(F.prec, kappa.prec).
    """
    if F.mu > 0:
        raise MuNonzero("twisting is only defined here for mu = 0")
    if kappa.p != F.p:
        raise IwasawaError("character and polynomial use different primes")
    lam = F.lam
    if F.exact:
        c = Fraction(kappa.gamma_value) ** i
        cinv = 1 / c
        g = poly.compose_affine(list(F.monic), cinv, cinv - 1)
        g = [poly.normalize_number(x * c ** lam) for x in g]
        return CharPoly(F.p, 0, tuple(g), None)
    prec = min(F.prec, kappa.prec)
    mod = F.p ** prec
    c = Character(kappa.p, prec, kappa.gamma_value).value ** i
    cinv = c.invert().residue
    g = poly.compose_affine([x % mod for x in F.monic], cinv, cinv - 1)
    scale = pow(c.residue, lam, mod)
    g = [(x * scale) % mod for x in g]
    g += [0] * (lam + 1 - len(g))
    return CharPoly(F.p, 0, tuple(g), prec)


class Verdict(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INCONCLUSIVE = "inconclusive"


def coinvariant_resultant(F: CharPoly, n: int, mode: str | None = None, prec: int | None = None):
    """Res(monic part of F, omega_n), exact or as a PadicInt."""
    mode = mode or ("exact" if F.exact else "precision")
    w = poly.omega_poly(n, F.p)
    if mode == "exact":
        if not F.exact:
            raise IwasawaError("exact mode needs exact coefficients")
        return exact_resultant(list(F.monic), w)
    if mode != "precision":
        raise IwasawaError(f"unknown mode {mode!r}")
    prec = prec if prec is not None else F.prec
    if prec is None:
        raise IwasawaError("precision mode needs a precision")
    mod = F.p ** prec
    f = [_residue(c, mod) for c in F.monic]
    return PadicInt(F.p, prec, exact_resultant(f, w))


def coinvariants_finite(F: CharPoly, n: int, mode: str | None = None, prec: int | None = None) -> Verdict:
    """Is X_{Gamma_n} finite for X with characteristic polynomial F?

    Only the monic part is tested; a p-power factor contributes the finite
    module (Z/p^mu)[G_n] and never changes the verdict.
    """
    r = coinvariant_resultant(F, n, mode, prec)
    if isinstance(r, PadicInt):
        return Verdict.FINITE if not r.is_zero() else Verdict.INCONCLUSIVE
    return Verdict.FINITE if r != 0 else Verdict.INFINITE


def exceptional_twists(F: CharPoly, kappa: Character, i_range, n_max: int) -> set:
    """Integers i in ``i_range`` (inclusive pair) with X(kappa^i)_{Gamma_n}
    infinite for some n <= n_max. Exact mode only."""
    if not F.exact:
        raise IwasawaError("exceptional_twists needs exact coefficients")
    if kappa.is_trivial:
        raise TrivialCharacter("kappa(gamma) = 1")
    lo, hi = i_range
    base = CharPoly(F.p, 0, F.monic, None)
    out = set()
    for i in range(lo, hi + 1):
        Fi = twist_char_poly(base, kappa, i)
        if any(coinvariants_finite(Fi, n, "exact") is Verdict.INFINITE for n in range(n_max + 1)):
            out.add(i)
    return out


def coinvariant_length(F: CharPoly, n: int, mode: str | None = None, prec: int | None = None) -> int:
    """Z_p-length of Lambda/(F, omega_n): v_p(Res(monic, omega_n)) + mu * p**n."""
    r = coinvariant_resultant(F, n, mode, prec)
    if isinstance(r, PadicInt):
        if r.is_zero():
            raise InsufficientPrecision("resultant is zero at this precision")
        v = r.valuation()
    else:
        if r == 0:
            raise NotFinite(f"coinvariants at level {n} are infinite")
        r = Fraction(r)
        v = vp(r.numerator, F.p) - vp(r.denominator, F.p)
    return v + F.mu * F.p ** n


def charpoly_from_series(f: LambdaElem) -> CharPoly:
    """Characteristic polynomial of Lambda/(f): prepared, unit dropped."""
    w = weierstrass_prep(f)
    return CharPoly(f.p, w.mu, tuple(w.P.coefficients()), w.P.prec)


__all__ = [
    "CharPoly", "ElementaryModule", "Verdict", "DistinguishedPoly", "invariants", "char_poly",
    "invariants_from_matrix", "twist_char_poly", "coinvariants_finite", "coinvariant_resultant",
    "exceptional_twists", "coinvariant_length", "charpoly_from_series",
]
