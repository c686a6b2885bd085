"""Exact dense polynomials over Z or Q as little-endian coefficient lists,
plus fraction-free determinants.

Coefficients may be ``int`` or ``fractions.Fraction``; nothing here reduces
modulo a prime power. Callers that work mod p**M lift to integers, compute
exactly, and reduce at the end.
"""

from fractions import Fraction
from math import comb


def trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    if not a:
        a = [0]
    return a


def degree(a) -> int:
    """Degree of ``a``; -1 for the zero polynomial."""
    a = trim(a)
    if len(a) == 1 and a[0] == 0:
        return -1
    return len(a) - 1


def normalize_number(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def padd(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a):
    return [-c for c in a]


def psub(a, b):
    return padd(a, pneg(b))


def pscale(a, c):
    return trim([c * x for x in a])


def pmul(a, b):
    if degree(a) < 0 or degree(b) < 0:
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def ppow(a, e: int):
    out = [1]
    base = list(a)
    while e:
        if e & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        e >>= 1
    return out


def peval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdivmod(a, b):
    """Quotient and remainder of ``a`` by ``b``.

    Division by the leading coefficient of ``b`` must be exact in the
    coefficient ring, which holds for monic ``b`` over Z and for any nonzero
    ``b`` over Q.
    """
    b = trim(b)
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(trim(a))
    lc = b[-1]
    if degree(r) < db:
        return [0], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        if lc == 1:
            t = c
        elif isinstance(c, int) and isinstance(lc, int):
            if c % lc:
                raise ArithmeticError("inexact division over Z")
            t = c // lc
        else:
            t = Fraction(c) / lc
        q[k] = t
        for j in range(db + 1):
            r[k + j] -= t * b[j]
    return trim(q), trim(r[:db] if db > 0 else [0])


def compose_affine(a, scale, shift):
    """a(scale*x + shift), by Horner in the coefficient ring."""
    out = [0]
    lin = [shift, scale]
    for c in reversed(a):
        out = padd(pmul(out, lin), [c])
    return out


def omega_poly(n: int, p: int):
    """(1+T)**(p**n) - 1 with exact integer coefficients."""
    e = p ** n
    return [0] + [comb(e, k) for k in range(1, e + 1)]


def sylvester_matrix(f, g):
    f = trim(f)
    g = trim(g)
    m, n = degree(f), degree(g)
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(mat):
    """Determinant of a square matrix over Z or Q by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * piv - a[i][k] * a[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    a[i][j] = num // prev
                else:
                    a[i][j] = Fraction(num) / prev
        prev = piv
    return normalize_number(sign * a[n - 1][n - 1])


def bareiss_det_poly(mat):
    """Determinant of a square matrix whose entries are integer polynomials.

    Same elimination as :func:`bareiss_det`; every division by the previous
    pivot is an exact division in Z[T].
    """
    a = [[trim(e) for e in row] for row in mat]
    n = len(a)
    if n == 0:
        return [1]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if degree(a[k][k]) < 0:
            for r in range(k + 1, n):
                if degree(a[r][k]) >= 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return [0]
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(a[i][j], piv), pmul(a[i][k], a[k][j]))
                q, r = _exact_div_zx(num, prev)
                a[i][j] = q
        prev = piv
    return pscale(a[n - 1][n - 1], sign)


def _exact_div_zx(a, b):
    # exact division in Z[T] where b need not be monic: divide over Q then check
    q, r = pdivmod([Fraction(c) for c in a], [Fraction(c) for c in b])
    if degree(r) >= 0:
        raise ArithmeticError("non-exact Bareiss division")
    out = []
    for c in q:
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError("non-integral Bareiss quotient")
        out.append(int(c.numerator))
    return trim(out), r
