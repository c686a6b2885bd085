"""Finite-level group rings (Z/p^m)[G_n], their Pontryagin duals, and the
transition maps between levels.

G_n is Z/p^n with generator gamma-bar = 1; the preimages of j under
G_{n+1} -> G_n are j + c*p^n for 0 <= c < p, so every map is index arithmetic
on coefficient vectors.

A dual element chi is stored by its values chi(delta_g) in (1/p^m)Z/Z after
multiplying by p^m, i.e. as a vector over Z/p^m. With that convention the
self-duality map phi is coordinate preserving.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .errors import IwasawaError, LevelMismatch, LevelZero, SizeLimit, TruncationTooShort
from .padic import check_prime
from .series import LambdaElem

SIZE_LIMIT = 10 ** 4


def _vec(values, length, mod):
    vals = [int(v) for v in values]
    if len(vals) != length:
        raise LevelMismatch(f"expected {length} coefficients, got {len(vals)}")
    return np.array([v % mod for v in vals], dtype=np.int64)


class _LevelVector:
    __slots__ = ("p", "n", "m", "coeffs")

    def __init__(self, p, n, m, coeffs=None):
        if n < 0 or m < 1:
            raise IwasawaError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
        if p ** m >= K.INT64_SAFE_MODULUS:
            raise SizeLimit(f"{p}^{m} exceeds the int64 residue range")
        self.p, self.n, self.m = p, n, m
        size = p ** n
        self.coeffs = np.zeros(size, dtype=np.int64) if coeffs is None else _vec(coeffs, size, p ** m)

    @classmethod
    def basis(cls, p, n, m, g):
        size = p ** n
        v = np.zeros(size, dtype=np.int64)
        v[g % size] = 1
        return cls(p, n, m, v)

    @property
    def order(self):
        return self.p ** self.n

    @property
    def modulus(self):
        return self.p ** self.m

    def level(self):
        return (self.p, self.n, self.m)

    def _check(self, other):
        if type(other) is not type(self) or other.level() != self.level():
            raise LevelMismatch(f"{self.level()} vs {getattr(other, 'level', lambda: other)()}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.p, self.n, self.m, (self.coeffs + other.coeffs) % self.modulus)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.p, self.n, self.m, (self.coeffs - other.coeffs) % self.modulus)

    def __neg__(self):
        return type(self)(self.p, self.n, self.m, (-self.coeffs) % self.modulus)

    def scale(self, c):
        return type(self)(self.p, self.n, self.m, (self.coeffs * (int(c) % self.modulus)) % self.modulus)

    def __eq__(self, other):
        return type(other) is type(self) and other.level() == self.level() and \
            bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((type(self).__name__, self.level(), self.coeffs.tobytes()))

    def to_list(self):
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, n={self.n}, m={self.m}, {self.to_list()})"


class GroupRingElem(_LevelVector):
    """Element of (Z/p^m)[G_n]; ``coeffs[j]`` is the coefficient of gamma-bar^j."""

    __slots__ = ()

    @classmethod
    def one(cls, p, n, m):
        return cls.basis(p, n, m, 0)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return GroupRingElem(self.p, self.n, self.m,
                             K.cyclic_conv(self.coeffs, other.coeffs, self.modulus))

    __rmul__ = __mul__

    def act(self, h: int):
        """Multiply by the group element gamma-bar^h."""
        return GroupRingElem(self.p, self.n, self.m, np.roll(self.coeffs, h))


class DualGroupRingElem(_LevelVector):
    """chi in Hom(Lambda_{n,m}, K/O), stored as p^m * chi(delta_g) for each g."""

    __slots__ = ()

    def act(self, h: int):
        """(h chi)(x) = chi(h^{-1} x): values are shifted forward by h."""
        return DualGroupRingElem(self.p, self.n, self.m, np.roll(self.coeffs, h))

    def pair(self, x: GroupRingElem) -> int:
        """chi(x), returned as p^m * chi(x) mod p^m."""
        if x.level() != self.level():
            raise LevelMismatch("pairing needs matching levels")
        return int(np.dot(self.coeffs, x.coeffs) % self.modulus)


def gr_add(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x + y


def gr_mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x * y


def res(x: GroupRingElem) -> GroupRingElem:
    """Restriction Lambda_{n+1,m} -> Lambda_{n,m}: sum over each fiber."""
    if x.n == 0:
        raise LevelZero("restriction needs level >= 1")
    size = x.p ** (x.n - 1)
    c = x.coeffs.reshape(x.p, size).sum(axis=0) % x.modulus
    return GroupRingElem(x.p, x.n - 1, x.m, c)


def cor(x: GroupRingElem) -> GroupRingElem:
    """Corestriction Lambda_{n,m} -> Lambda_{n+1,m}: g to the sum of its preimages."""
    return GroupRingElem(x.p, x.n + 1, x.m, np.tile(x.coeffs, x.p))


def pi_embed(x: GroupRingElem) -> GroupRingElem:
    """[p]: Lambda_{n,m} -> Lambda_{n,m+1}, coefficientwise multiplication by p."""
    return GroupRingElem(x.p, x.n, x.m + 1, x.coeffs * x.p)


def theta(x: GroupRingElem) -> GroupRingElem:
    """Lambda_{n,m+1} -> Lambda_{n,m}, coefficientwise reduction."""
    if x.m == 1:
        raise IwasawaError("theta needs m >= 2 on its source")
    return GroupRingElem(x.p, x.n, x.m - 1, x.coeffs % (x.p ** (x.m - 1)))


def kernel_norm(p, n, m) -> GroupRingElem:
    """Sum of the kernel of G_{n+1} -> G_n inside Lambda_{n+1,m}."""
    c = np.zeros(p ** (n + 1), dtype=np.int64)
    c[::p ** n] = 1
    return GroupRingElem(p, n + 1, m, c)


def phi(chi: DualGroupRingElem) -> GroupRingElem:
    """Self-duality: chi to sum_g [p^m](chi(g)) g."""
    return GroupRingElem(chi.p, chi.n, chi.m, chi.coeffs.copy())


def phi_inverse(x: GroupRingElem) -> DualGroupRingElem:
    return DualGroupRingElem(x.p, x.n, x.m, x.coeffs.copy())


# named maps between levels: name -> (source level, target level, function)
_MAPS = {
    "id": (lambda n, m: (n, m), lambda x: x),
    "res": (lambda n, m: (n - 1, m), res),
    "cor": (lambda n, m: (n + 1, m), cor),
    "pi": (lambda n, m: (n, m + 1), pi_embed),
    "theta": (lambda n, m: (n, m - 1), theta),
}

_ALIASES = {"identity": "id", "Res": "res", "Cor": "cor", "[pi]": "pi", "[π]": "pi", "θ": "theta"}


def _map_name(name):
    name = _ALIASES.get(name, name)
    if name not in _MAPS:
        raise IwasawaError(f"unknown map {name!r}; expected one of {sorted(_MAPS)}")
    return name


def source_level(name, target_n, target_m):
    """Level (n, m) of the source of ``name`` when its target is (n, m)."""
    name = _map_name(name)
    return {
        "id": (target_n, target_m),
        "res": (target_n + 1, target_m),
        "cor": (target_n - 1, target_m),
        "pi": (target_n, target_m - 1),
        "theta": (target_n, target_m + 1),
    }[name]


@lru_cache(maxsize=256)
def _map_matrix(name, p, n, m):
    """Rows are the images of the source basis vectors, source at level (n, m)."""
    _, fn = _MAPS[name]
    rows = [fn(GroupRingElem.basis(p, n, m, g)).coeffs for g in range(p ** n)]
    mat = np.array(rows, dtype=np.int64)
    mat.setflags(write=False)
    return mat


def dual_map(name: str, chi: DualGroupRingElem) -> DualGroupRingElem:
    """Precomposition chi -> chi o f for f in {id, res, cor, pi, theta}.

    ``chi`` lives on the target of f. Values are compared in Q_p/Z_p, so a
    change of exponent m rescales by the appropriate power of p.
    """
    name = _map_name(name)
    sn, sm = source_level(name, chi.n, chi.m)
    if sn < 0 or sm < 1:
        raise LevelMismatch(f"no source level for {name} into level (n={chi.n}, m={chi.m})")
    mat = _map_matrix(name, chi.p, sn, sm)
    tmod = chi.modulus
    num = (mat @ chi.coeffs) % tmod
    if chi.m >= sm:
        shift = chi.p ** (chi.m - sm)
        if np.any(num % shift):
            raise AssertionError("precomposed character does not land in the expected torsion")
        vals = num // shift
    else:
        vals = num * chi.p ** (sm - chi.m)
    return DualGroupRingElem(chi.p, sn, sm, vals % chi.p ** sm)


DIAGRAMS = ("A1-res-cor", "A1-cor-res", "A3-pi-theta")


@dataclass
class DiagramReport:
    name: str
    p: int
    n: int
    m: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def as_dict(self):
        return {"diagram": self.name, "p": self.p, "n": self.n, "m": self.m,
                "checked": self.checked, "pass": self.passed,
                "failures": self.failures[:10], "failure_count": len(self.failures)}


def _diagram_sides(name, p, n, m, phi_map):
    """(dual level, left composite, right composite) for a named diagram."""
    if name == "A1-res-cor":
        # Cor o phi_{n,m} = phi_{n+1,m} o dual(Res)
        return (n, m), (lambda chi: cor(phi_map(chi))), (lambda chi: phi_map(dual_map("res", chi)))
    if name == "A1-cor-res":
        # Res o phi_{n+1,m} = phi_{n,m} o dual(Cor)
        return (n + 1, m), (lambda chi: res(phi_map(chi))), (lambda chi: phi_map(dual_map("cor", chi)))
    if name == "A3-pi-theta":
        # theta o phi_{n,m+1} = phi_{n,m} o dual([p])
        return (n, m + 1), (lambda chi: theta(phi_map(chi))), (lambda chi: phi_map(dual_map("pi", chi)))
    raise IwasawaError(f"unknown diagram {name!r}; expected one of {DIAGRAMS}")


def check_diagram(name, p, n, m, sample_count=0, rng=None, phi_map=phi) -> DiagramReport:
    """Evaluate both composites of a diagram on the full dual basis plus
    ``sample_count`` random duals; every mismatch is recorded."""
    check_prime(p)
    (dn, dm), left, right = _diagram_sides(name, p, n, m, phi_map)
    rep = DiagramReport(name, p, n, m)
    size = p ** dn
    rng = rng if rng is not None else np.random.default_rng(0)
    inputs = [("basis", g, DualGroupRingElem.basis(p, dn, dm, g)) for g in range(size)]
    for k in range(sample_count):
        vals = rng.integers(0, p ** dm, size=size)
        inputs.append(("random", k, DualGroupRingElem(p, dn, dm, vals)))
    for kind, idx, chi in inputs:
        a, b = left(chi), right(chi)
        rep.checked += 1
        if a != b:
            rep.failures.append({"input": kind, "index": idx, "left": a.to_list(), "right": b.to_list()})
    return rep


def groupring_from_series(f: LambdaElem, n: int, m: int) -> GroupRingElem:
    """Image of the polynomial sum_{k<N} c_k T^k under T -> gamma-bar - 1 in
    (Z/p^m)[G_n]; the kernel on Lambda is (p^m, omega_n)."""
    if f.N <= f.p ** n:
        raise TruncationTooShort(f"need N > p^n = {f.p ** n}, got N={f.N}")
    if m > f.prec:
        raise IwasawaError(f"series known mod p^{f.prec}, cannot map to exponent {m}")
    p = f.p
    mod = p ** m
    acc = np.zeros(p ** n, dtype=np.int64)
    for c in reversed(f.to_list()):
        acc = (np.roll(acc, 1) - acc) % mod
        acc[0] = (acc[0] + c) % mod
    return GroupRingElem(p, n, m, acc)


def tensor_limit_invariants(r: int, torsion=()):
    """(Lambda-corank, mu, lambda) of lim_n M (x) O[G_n] for M = (K/O)^r + sum O/p^{m_i}."""
    if r < 0 or any(m < 1 for m in torsion):
        raise IwasawaError("need r >= 0 and every m_i >= 1")
    return (r, sum(torsion), 0)


def limit_growth_table(r: int, torsion, p: int, n_max: int):
    """Per-level sizes for M (x) O[G_n]: log_p of the torsion part and the
    Z_p-rank of the cofree part, each cross-checked against group rings built
    explicitly at that level."""
    check_prime(p)
    if p ** n_max > SIZE_LIMIT:
        raise SizeLimit(f"p^n_max = {p ** n_max} exceeds {SIZE_LIMIT}")
    rows = []
    for n in range(n_max + 1):
        order = p ** n
        log_size = 0
        for mi in torsion:
            ring = GroupRingElem(p, n, mi)
            # each basis vector generates a cyclic subgroup of order p^mi
            built = sum(_additive_order_log(GroupRingElem.basis(p, n, mi, g)) for g in range(order))
            if built != mi * len(ring.coeffs):
                raise AssertionError("group ring size mismatch")
            log_size += built
        rows.append({"n": n, "group_order": order, "torsion_log_p_size": log_size,
                     "expected_log_p_size": sum(torsion) * order, "cofree_rank": r * order})
    return rows


def _additive_order_log(x: _LevelVector) -> int:
    k = 0
    c = x.coeffs.copy()
    while np.any(c % x.modulus):
        c = c * x.p
        k += 1
    return k
