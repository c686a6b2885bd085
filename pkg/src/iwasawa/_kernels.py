"""Hot inner loops: truncated and cyclic convolution, monic long division.

Every kernel has a numba ``@njit`` version and a pure-numpy version. The
numba path is used when numba imports cleanly and ``IWASAWA_DISABLE_NUMBA``
is unset (or ``0``). Both paths only handle int64 residue arrays with
modulus below ``INT64_SAFE_MODULUS`` so that ``a*b + acc`` never overflows;
larger moduli go through the object-array loops at the bottom, which work on
Python ints.
"""

import os

import numpy as np

INT64_SAFE_MODULUS = 1 << 31

_disabled = os.environ.get("IWASAWA_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

BACKEND = "numba" if HAS_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# pure numpy (int64, modulus < 2**31)
# ---------------------------------------------------------------------------

def conv_trunc_numpy(a, b, n_out, mod):
    out = np.zeros(n_out, dtype=np.int64)
    nb = b.shape[0]
    for i in range(min(a.shape[0], n_out)):
        ai = a[i]
        if ai == 0:
            continue
        k = min(nb, n_out - i)
        out[i:i + k] = (out[i:i + k] + ai * b[:k]) % mod
    return out


def cyclic_conv_numpy(a, b, mod):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        out = (out + ai * np.roll(b, i)) % mod
    return out


def divmod_monic_numpy(num, den, mod):
    # den[-1] == 1
    r = num.copy() % mod
    dn = den.shape[0] - 1
    nq = r.shape[0] - dn
    if nq <= 0:
        return np.zeros(1, dtype=np.int64), r
    q = np.zeros(nq, dtype=np.int64)
    for k in range(nq - 1, -1, -1):
        c = r[k + dn]
        q[k] = c
        if c != 0:
            r[k:k + dn + 1] = (r[k:k + dn + 1] - c * den) % mod
    return q, r[:dn] if dn > 0 else np.zeros(1, dtype=np.int64)


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @numba.njit(cache=True)
    def conv_trunc_numba(a, b, n_out, mod):
        out = np.zeros(n_out, dtype=np.int64)
        na = min(a.shape[0], n_out)
        nb = b.shape[0]
        for i in range(na):
            ai = a[i]
            if ai == 0:
                continue
            lim = min(nb, n_out - i)
            for j in range(lim):
                out[i + j] = (out[i + j] + ai * b[j]) % mod
        return out

    @numba.njit(cache=True)
    def cyclic_conv_numba(a, b, mod):
        n = a.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n):
                k = i + j
                if k >= n:
                    k -= n
                out[k] = (out[k] + ai * b[j]) % mod
        return out

    @numba.njit(cache=True)
    def divmod_monic_numba(num, den, mod):
        r = num.copy()
        for i in range(r.shape[0]):
            r[i] = r[i] % mod
        dn = den.shape[0] - 1
        nq = r.shape[0] - dn
        if nq <= 0:
            return np.zeros(1, dtype=np.int64), r
        q = np.zeros(nq, dtype=np.int64)
        for k in range(nq - 1, -1, -1):
            c = r[k + dn]
            q[k] = c
            if c != 0:
                for j in range(dn + 1):
                    r[k + j] = (r[k + j] - c * den[j]) % mod
        if dn == 0:
            return q, np.zeros(1, dtype=np.int64)
        return q, r[:dn].copy()

    conv_trunc_fast = conv_trunc_numba
    cyclic_conv_fast = cyclic_conv_numba
    divmod_monic_fast = divmod_monic_numba
else:
    conv_trunc_fast = conv_trunc_numpy
    cyclic_conv_fast = cyclic_conv_numpy
    divmod_monic_fast = divmod_monic_numpy


# ---------------------------------------------------------------------------
# arbitrary precision (object arrays of Python ints)
# ---------------------------------------------------------------------------

def conv_trunc_object(a, b, n_out, mod):
    out = [0] * n_out
    for i in range(min(len(a), n_out)):
        ai = int(a[i])
        if ai == 0:
            continue
        for j in range(min(len(b), n_out - i)):
            out[i + j] += ai * int(b[j])
    return np.array([c % mod for c in out], dtype=object)


def cyclic_conv_object(a, b, mod):
    n = len(a)
    out = [0] * n
    for i in range(n):
        ai = int(a[i])
        if ai == 0:
            continue
        for j in range(n):
            out[(i + j) % n] += ai * int(b[j])
    return np.array([c % mod for c in out], dtype=object)


def divmod_monic_object(num, den, mod):
    r = [int(c) % mod for c in num]
    d = [int(c) for c in den]
    dn = len(d) - 1
    nq = len(r) - dn
    if nq <= 0:
        return np.zeros(1, dtype=object), np.array(r, dtype=object)
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        c = r[k + dn]
        q[k] = c
        if c:
            for j in range(dn + 1):
                r[k + j] = (r[k + j] - c * d[j]) % mod
    rem = r[:dn] if dn > 0 else [0]
    return np.array(q, dtype=object), np.array(rem, dtype=object)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def residue_array(values, mod):
    """Reduce ``values`` mod ``mod`` into the array type the kernels expect."""
    if mod < INT64_SAFE_MODULUS:
        return np.array([int(v) % mod for v in values], dtype=np.int64)
    return np.array([int(v) % mod for v in values], dtype=object)


def conv_trunc(a, b, n_out, mod):
    if mod < INT64_SAFE_MODULUS:
        return conv_trunc_fast(a, b, n_out, mod)
    return conv_trunc_object(a, b, n_out, mod)


def cyclic_conv(a, b, mod):
    if mod < INT64_SAFE_MODULUS:
        return cyclic_conv_fast(a, b, mod)
    return cyclic_conv_object(a, b, mod)


def divmod_monic(num, den, mod):
    if mod < INT64_SAFE_MODULUS:
        return divmod_monic_fast(num, den, mod)
    return divmod_monic_object(num, den, mod)
