"""Truncated power series in Z_p[[T]] (the Iwasawa algebra via gamma -> 1+T),
Weierstrass preparation, omega_n, resultants and determinants over the series
ring."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _kernels as K
from . import poly
from .errors import (
    DimensionMismatch,
    InsufficientPrecision,
    IwasawaError,
    NotAUnit,
    PrimeMismatch,
    TruncationTooShort,
)
from .padic import PadicInt, check_prime, vp


class LambdaElem:
    """An element of Z_p[[T]] known modulo (p**prec, T**N).

    Coefficients are stored as canonical residues in ``self.coeffs`` (an int64
    array when p**prec fits the fast kernels, an object array otherwise).
    """

    __slots__ = ("p", "prec", "N", "coeffs")

    def __init__(self, p, prec, N, coeffs):
        if prec < 1 or N < 1:
            raise IwasawaError(f"need prec >= 1 and N >= 1, got prec={prec}, N={N}")
        self.p = p
        self.prec = prec
        self.N = N
        vals = list(coeffs)[:N]
        vals += [0] * (N - len(vals))
        self.coeffs = K.residue_array(vals, p ** prec)

    @classmethod
    def _raw(cls, p, prec, N, arr):
        obj = cls.__new__(cls)
        obj.p, obj.prec, obj.N, obj.coeffs = p, prec, N, arr
        return obj

    @classmethod
    def from_padics(cls, coeffs, N=None):
        coeffs = list(coeffs)
        p = coeffs[0].p
        if any(c.p != p for c in coeffs):
            raise PrimeMismatch("coefficients carry different primes")
        prec = min(c.prec for c in coeffs)
        return cls(p, prec, N or len(coeffs), [c.residue for c in coeffs])

    @classmethod
    def zero(cls, p, prec, N):
        return cls(p, prec, N, [])

    @classmethod
    def one(cls, p, prec, N):
        return cls(p, prec, N, [1])

    @classmethod
    def T(cls, p, prec, N):
        return cls(p, prec, N, [0, 1])

    @property
    def modulus(self):
        return self.p ** self.prec

    def coeff(self, k) -> PadicInt:
        return PadicInt(self.p, self.prec, int(self.coeffs[k]))

    def to_list(self):
        return [int(c) for c in self.coeffs]

    def at(self, prec=None, N=None):
        """Reduce to (possibly) lower precision and/or truncation."""
        prec = self.prec if prec is None else prec
        N = self.N if N is None else N
        if prec > self.prec or N > self.N:
            raise IwasawaError("at() never extends precision or truncation")
        return LambdaElem(self.p, prec, N, self.to_list()[:N])

    def _common(self, other):
        if not isinstance(other, LambdaElem):
            if isinstance(other, (int, PadicInt)):
                other = LambdaElem(self.p, self.prec, self.N, [int(other)])
            else:
                return None, None, None
        if other.p != self.p:
            raise PrimeMismatch(f"cannot combine p={self.p} with p={other.p}")
        prec = min(self.prec, other.prec)
        N = min(self.N, other.N)
        return other, prec, N

    def _arr(self, prec, N):
        mod = self.p ** prec
        if prec == self.prec and N == self.N:
            return self.coeffs
        return K.residue_array(self.coeffs[:N], mod)

    def __add__(self, other):
        other, prec, N = self._common(other)
        if other is None:
            return NotImplemented
        mod = self.p ** prec
        out = (self._arr(prec, N) + other._arr(prec, N)) % mod
        return LambdaElem._raw(self.p, prec, N, out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaElem._raw(self.p, self.prec, self.N, (-self.coeffs) % self.modulus)

    def __sub__(self, other):
        other, prec, N = self._common(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other, prec, N = self._common(other)
        if other is None:
            return NotImplemented
        mod = self.p ** prec
        out = K.conv_trunc(self._arr(prec, N), other._arr(prec, N), N, mod)
        return LambdaElem._raw(self.p, prec, N, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = LambdaElem.one(self.p, self.prec, self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LambdaElem):
            return NotImplemented
        return (self.p, self.prec, self.N) == (other.p, other.prec, other.N) and \
            self.to_list() == other.to_list()

    def __hash__(self):
        return hash((self.p, self.prec, self.N, tuple(self.to_list())))

    def is_zero(self):
        return not any(int(c) for c in self.coeffs)

    def is_unit(self):
        return int(self.coeffs[0]) % self.p != 0

    def inverse(self):
        """Multiplicative inverse mod (p**prec, T**N); Newton doubling in T."""
        if not self.is_unit():
            raise NotAUnit("constant term is not a unit")
        mod = self.modulus
        c0inv = pow(int(self.coeffs[0]), -1, mod)
        x = K.residue_array([c0inv], mod)
        n = 1
        two = K.residue_array([2], mod)
        while n < self.N:
            n = min(2 * n, self.N)
            fx = K.conv_trunc(self.coeffs[:n], x, n, mod)
            corr = (-fx) % mod
            corr[0] = (corr[0] + two[0]) % mod
            x = K.conv_trunc(x, corr, n, mod)
        return LambdaElem._raw(self.p, self.prec, self.N, x)

    def valuations(self):
        return [vp(int(c), self.p) for c in self.coeffs]

    def __repr__(self):
        terms = [f"{c}T^{k}" if k else str(c) for k, c in enumerate(self.to_list()) if c]
        body = " + ".join(terms) or "0"
        return f"LambdaElem({body} mod ({self.p}^{self.prec}, T^{self.N}))"


def series_add(f: LambdaElem, g: LambdaElem) -> LambdaElem:
    return f + g


def series_mul(f: LambdaElem, g: LambdaElem) -> LambdaElem:
    return f * g


def omega(n: int, p: int, prec: int, N: int, full: bool = False) -> LambdaElem:
    """omega_n = (1+T)**(p**n) - 1 truncated mod T**N.

    With ``full=True`` the whole polynomial must fit: p**n < N.
    """
    e = p ** n
    if full and e >= N:
        raise TruncationTooShort(f"omega_{n} has degree {e}, needs N > {e}, got N={N}")
    return LambdaElem(p, prec, N, [0] + [comb(e, k) for k in range(1, min(e, N - 1) + 1)])


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic polynomial whose lower coefficients are divisible by p.

    ``lower`` holds a_0..a_{deg-1}; the leading 1 is implicit. With ``prec``
    set the coefficients are residues mod p**prec, with ``prec=None`` they are
    exact integers.
    """

    p: int
    lower: tuple
    prec: int | None = None

    def __post_init__(self):
        lower = tuple(int(a) for a in self.lower)
        if self.prec is not None:
            lower = tuple(a % self.p ** self.prec for a in lower)
        object.__setattr__(self, "lower", lower)
        bad = [k for k, a in enumerate(lower) if a % self.p]
        if bad:
            raise IwasawaError(f"coefficient of T^{bad[0]} is not divisible by p={self.p}")

    @property
    def degree(self):
        return len(self.lower)

    def coefficients(self):
        """Full little-endian coefficient list including the leading 1."""
        return list(self.lower) + [1]

    def as_series(self, prec, N) -> LambdaElem:
        return LambdaElem(self.p, prec, N, self.coefficients())


@dataclass(frozen=True)
class WeierstrassForm:
    """f = p**mu * u * P, with P distinguished and u a unit series.

    ``P`` and ``u`` are known modulo p**(prec - mu); that is all the input
    determines, and it is enough because p**mu kills the ambiguity.
    """

    mu: int
    P: DistinguishedPoly
    u: LambdaElem
    prec: int

    @property
    def lam(self):
        return self.P.degree

    def reconstruct(self) -> LambdaElem:
        p, N = self.u.p, self.u.N
        u = LambdaElem(p, self.prec, N, self.u.to_list())
        P = LambdaElem(p, self.prec, N, self.P.coefficients())
        return (u * P) * (p ** self.mu)


def _prepare_unit_scaled(g, p, prec, N):
    """Preparation of a series whose reduction mod p is nonzero.

    ``g`` is an int residue array mod p**prec; returns (lambda, P coeffs, u coeffs).
    """
    mod = p ** prec
    lam = next((k for k in range(N) if int(g[k]) % p), None)
    if lam is None:
        raise TruncationTooShort(
            f"no unit coefficient below T^{N}; lambda is not resolvable at this truncation")
    if lam == 0:
        return 0, [1], g
    # f = P*u with v = u^-1; P = g*v has no terms above T^lam, which gives the
    # contraction v = B^-1 (1 - shift_lam(A v)) where g = A + T^lam B, A = 0 mod p.
    L = lam + 1 + (prec + 1) * lam
    A = g[:lam]
    B = K.residue_array(list(g[lam:]) + [0] * max(0, L - (N - lam)), mod)[:L]
    Binv = LambdaElem._raw(p, prec, L, B).inverse().coeffs
    v = Binv
    one = K.residue_array([1] + [0] * (L - 1), mod)
    for _ in range(prec):
        av = K.conv_trunc(A, v, L + lam, mod)
        shifted = av[lam:lam + L]
        v = K.conv_trunc(Binv, (one - shifted) % mod, L, mod)
    P = K.conv_trunc(g, v, lam + 1, mod)
    if int(P[lam]) != 1 % mod or any(int(c) % p for c in P[:lam]):
        raise AssertionError("preparation iteration did not converge")
    q, r = K.divmod_monic(g, P, mod)
    if any(int(c) for c in r):
        raise AssertionError("prepared factor does not divide the input")
    return lam, [int(c) for c in P], q


def weierstrass_prep(f: LambdaElem) -> WeierstrassForm:
    """Weierstrass preparation of the polynomial sum_{k<N} c_k T^k.

    mu is the least coefficient valuation; the rest is a p-adic contraction
    iteration run to the residual precision prec - mu, checked by exact
    division at the end.
    """
    p, M, N = f.p, f.prec, f.N
    vals = [v for v in f.valuations() if v is not None]
    if not vals:
        raise InsufficientPrecision(
            f"every coefficient is 0 mod {p}^{M}; mu is not resolvable")
    mu = min(vals)
    prec = M - mu
    scale = p ** mu
    g = K.residue_array([int(c) // scale for c in f.coeffs], p ** prec)
    lam, P, q = _prepare_unit_scaled(g, p, prec, N)
    u = LambdaElem(p, prec, N, [int(c) for c in q])
    return WeierstrassForm(mu, DistinguishedPoly(p, P[:lam], prec), u, M)


def mu_lambda(f: LambdaElem):
    w = weierstrass_prep(f)
    return w.mu, w.lam


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _as_coeff_list(F):
    """Return (coefficient list, p, prec) for the accepted polynomial inputs."""
    if isinstance(F, DistinguishedPoly):
        return F.coefficients(), F.p, F.prec
    if isinstance(F, LambdaElem):
        return F.to_list(), F.p, F.prec
    F = list(F)
    if F and isinstance(F[0], PadicInt):
        return [c.residue for c in F], F[0].p, min(c.prec for c in F)
    return F, None, None


def resultant(F, G, p=None, prec=None):
    """Res(F, G) = lc(F)**deg(G) * prod_{F(a)=0} G(a), via the Sylvester matrix.

    Inputs may be :class:`DistinguishedPoly`, :class:`LambdaElem` (read as the
    polynomial of its truncation), lists of :class:`PadicInt`, or plain lists
    of ints/Fractions. If any input carries a precision (or ``prec`` is given)
    the result is a :class:`PadicInt` mod p**prec; otherwise it is exact.
    """
    f, pf, kf = _as_coeff_list(F)
    g, pg, kg = _as_coeff_list(G)
    if pf and pg and pf != pg:
        raise PrimeMismatch(f"cannot combine p={pf} with p={pg}")
    p = p or pf or pg
    precs = [k for k in (kf, kg, prec) if k is not None]
    prec = min(precs) if precs else None
    r = exact_resultant(f, g)
    if prec is None:
        return r
    if p is None:
        raise IwasawaError("a precision needs a prime")
    r = Fraction(r)
    return PadicInt(p, prec, r.numerator * pow(r.denominator, -1, p ** prec))


def exact_resultant(f, g):
    f = poly.trim(f)
    g = poly.trim(g)
    df, dg = poly.degree(f), poly.degree(g)
    if df < 0 or dg < 0:
        return 0
    if df == 0:
        return poly.normalize_number(Fraction(f[0]) ** dg)
    if f[-1] == 1 and dg >= df:
        # Res(F, G) = Res(F, G mod F) for monic F
        _, g = poly.pdivmod(g, f)
        g = [poly.normalize_number(c) for c in g]
        if poly.degree(g) < 0:
            return 0
    return poly.bareiss_det(poly.sylvester_matrix(f, g))


# ---------------------------------------------------------------------------
# determinants over the series ring
# ---------------------------------------------------------------------------

def _check_square(A):
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise DimensionMismatch("determinant needs a non-empty square matrix")
    first = A[0][0]
    for row in A:
        for e in row:
            if (e.p, e.prec, e.N) != (first.p, first.prec, first.N):
                raise DimensionMismatch("entries must share (p, prec, N)")
    return n


def _cofactor(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = None
    for j in range(n):
        if A[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        e = A[0][0]
        return LambdaElem.zero(e.p, e.prec, e.N)
    return total


def det_lambda(A, method: str = "auto") -> LambdaElem:
    """Determinant of a square matrix of LambdaElem, mod (p**prec, T**N).

    Dimension <= 4 uses cofactor expansion with truncated products; larger
    matrices use Bareiss elimination over Z[T] on the integer lifts, which is
    exact because the determinant is a polynomial in the entries.
    """
    n = _check_square(A)
    e = A[0][0]
    if method == "cofactor" or (method == "auto" and n <= 4):
        return _cofactor(A)
    lifted = [[x.to_list() for x in row] for row in A]
    d = poly.bareiss_det_poly(lifted)
    return LambdaElem(e.p, e.prec, e.N, d[:e.N])


def parse_series(values, p, prec, N) -> LambdaElem:
    """Little-endian integer coefficients (negatives allowed) to a LambdaElem."""
    check_prime(p)
    return LambdaElem(p, prec, N, [int(v) for v in values])


__all__ = [
    "LambdaElem", "DistinguishedPoly", "WeierstrassForm", "series_add", "series_mul",
    "omega", "weierstrass_prep", "mu_lambda", "resultant", "exact_resultant",
    "det_lambda", "parse_series",
]
