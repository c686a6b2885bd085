"""Independent brute-force computations used to cross-check the fast paths.

These deliberately avoid the resultant and preparation code: lengths come
from elimination over Z/p^B, evaluation from Horner over the integers.
"""

from itertools import permutations


def _smith_valuations(mat, p, B):
    """Valuations (capped at B) of the elementary divisors of an integer
    matrix over Z/p^B, by pivoting on an entry of least valuation."""
    mod = p ** B
    a = [[x % mod for x in row] for row in mat]
    rows, cols = len(a), len(a[0]) if a else 0
    out = []
    r0 = 0
    for _ in range(min(rows, cols)):
        best = None
        for i in range(r0, rows):
            for j in range(r0, cols):
                x = a[i][j]
                if x == 0:
                    continue
                v = 0
                while x % p == 0:
                    x //= p
                    v += 1
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        a[r0], a[i] = a[i], a[r0]
        for row in a:
            row[r0], row[j] = row[j], row[r0]
        piv = a[r0][r0]
        unit = pow(piv // p ** v, -1, mod)
        # every entry in the block has valuation >= v, so the quotients are integral
        for i2 in range(r0 + 1, rows):
            c = (a[i2][r0] // p ** v) * unit % mod
            if c:
                a[i2] = [(x - c * y) % mod for x, y in zip(a[i2], a[r0])]
        for j2 in range(r0 + 1, cols):
            c = (a[r0][j2] // p ** v) * unit % mod
            if c:
                for row in a:
                    row[j2] = (row[j2] - c * row[r0]) % mod
        out.append(v)
        r0 += 1
    out += [B] * (min(rows, cols) - len(out))
    return out


def multiplication_matrix(F, p, n):
    """Matrix of multiplication by the integer polynomial F on Z[T]/(omega_n),
    basis 1, T, ..., T^{p^n - 1}; row k is F*T^k reduced."""
    from math import comb

    d = p ** n
    w = [0] + [comb(d, k) for k in range(1, d + 1)]  # monic, degree d
    rows = []
    for k in range(d):
        cur = [0] * k + [int(c) for c in F]
        # reduce mod omega_n by long division (omega_n is monic)
        for top in range(len(cur) - 1, d - 1, -1):
            c = cur[top]
            if c:
                for j in range(d + 1):
                    cur[top - d + j] -= c * w[j]
        cur = cur[:d] + [0] * (d - len(cur[:d]))
        rows.append(cur)
    return rows


def quotient_length(F, p, n, B):
    """log_p |Lambda/(F, omega_n, p^B)| for integer F."""
    return sum(_smith_valuations(multiplication_matrix(F, p, n), p, B))


def stable_quotient_length(F, p, n, Bs=(6, 8, 10)):
    """Length stabilized over increasing B; None if it keeps growing."""
    vals = [quotient_length(F, p, n, B) for B in Bs]
    if vals[-1] == vals[-2]:
        return vals[-1]
    return None


def leibniz_det(mat, one, zero):
    """Signed sum over permutations; entries need +, *, and unary minus."""
    n = len(mat)
    total = zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i in range(n):
            term = term * mat[i][perm[i]]
        total = total + (-term if inv % 2 else term)
    return total


def horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def root_resultant_linear(a, G):
    """Res(T - a, G) = G(a)."""
    return horner(G, a)
