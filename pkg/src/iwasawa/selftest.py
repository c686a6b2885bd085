"""Aggregate invariant checks across every module, run by ``iwasawa selftest``.

Each check compares a library path against an independent computation on a
small seeded sample and reports pass/fail; nothing here raises on a failed
comparison.
"""

import random

from . import groupring as gr
from . import ledger as lg
from . import oracles
from . import poly
from .errors import InsufficientPrecision, TruncationTooShort
from .padic import Character, PadicInt
from .series import LambdaElem, det_lambda, omega, resultant, weierstrass_prep
from .structure import CharPoly, coinvariant_length, exceptional_twists, twist_char_poly


def check_padic(rng):
    for p, M in ((2, 5), (3, 4), (5, 3)):
        mod = p ** M
        for _ in range(50):
            a, b, c = (PadicInt(p, M, rng.randrange(mod)) for _ in range(3))
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a + b != b + a:
                return False, f"ring axiom failed at p={p}, M={M}"
            if a.is_unit() and (a * a.invert()).residue != 1:
                return False, f"inverse failed for {a}"
    return True, "ring axioms and inverses"


def check_prep(rng):
    for p, M, N in ((2, 4, 8), (3, 6, 8), (5, 4, 12)):
        for _ in range(40):
            f = LambdaElem(p, M, N, [rng.randrange(p ** M) for _ in range(N)])
            try:
                w = weierstrass_prep(f)
            except (InsufficientPrecision, TruncationTooShort):
                continue
            # independent reconstruction: exact integer product, then reduce
            prod = poly.pmul(w.u.to_list(), w.P.coefficients())
            rebuilt = [(p ** w.mu * c) % p ** M for c in (prod + [0] * N)[:N]]
            if rebuilt != f.to_list():
                return False, f"reconstruction failed for {f}"
            if any(a % p for a in w.P.lower):
                return False, "P not distinguished"
    return True, "reconstruction and distinguishedness"


def check_resultant(rng):
    for p in (2, 3, 5):
        for n in range(3):
            a = rng.randrange(-20, 20)
            w = poly.omega_poly(n, p)
            if resultant([-a, 1], w) != oracles.horner(w, a):
                return False, f"Res(T-{a}, omega_{n}) mismatch"
    return True, "linear resultants against evaluation"


def check_det(rng):
    p, M, N = 3, 4, 6
    for size in (2, 3):
        A = [[LambdaElem(p, M, N, [rng.randrange(p ** M) for _ in range(N)]) for _ in range(size)]
             for _ in range(size)]
        ref = oracles.leibniz_det(A, LambdaElem.one(p, M, N), LambdaElem.zero(p, M, N))
        if det_lambda(A) != ref or det_lambda(A, method="bareiss") != ref:
            return False, f"{size}x{size} determinant mismatch"
    return True, "cofactor and Bareiss against permutation expansion"


def check_twist(rng):
    p, M = 3, 8
    kappa = Character(p, M, 1 + p)
    if twist_char_poly(CharPoly(p, 0, (0, 1), M), kappa, 1).monic != ((-p) % p ** M, 1):
        return False, "twist of t by kappa is not t - p"
    for _ in range(20):
        deg = rng.randrange(1, 5)
        F = CharPoly(p, 0, tuple([rng.randrange(p ** M) for _ in range(deg)] + [1]), M)
        i, j = rng.randrange(-3, 4), rng.randrange(-3, 4)
        if twist_char_poly(twist_char_poly(F, kappa, i), kappa, j) != twist_char_poly(F, kappa, i + j):
            return False, f"twist law failed for i={i}, j={j}"
    ex = exceptional_twists(CharPoly(p, 0, (-p, 1)), kappa, (-5, 5), 3)
    if ex != {-1}:
        return False, f"exceptional set {sorted(ex)} != [-1]"
    return True, "twist group law and exceptional set"


def check_length(rng):
    p = 3
    for n in range(2):
        for _ in range(5):
            F = [rng.randrange(-9, 10) for _ in range(2)] + [1]
            brute = oracles.stable_quotient_length(F, p, n)
            try:
                fast = coinvariant_length(CharPoly(p, 0, tuple(F)), n)
            except Exception:
                fast = None
            if brute != fast:
                return False, f"length mismatch for {F}, n={n}: {fast} vs {brute}"
    return True, "coinvariant lengths against elimination"


def check_duality(rng):
    for p in (2, 3, 5):
        for n in range(3):
            for m in range(1, 4):
                for name in gr.DIAGRAMS:
                    rep = gr.check_diagram(name, p, n, m, sample_count=5)
                    if not rep.passed:
                        return False, f"{name} fails at p={p}, n={n}, m={m}"
    for p in (2, 3):
        for n in range(2):
            for _ in range(5):
                x = gr.GroupRingElem(p, n + 1, 2, [rng.randrange(p ** 2) for _ in range(p ** (n + 1))])
                y = gr.GroupRingElem(p, n, 2, [rng.randrange(p ** 2) for _ in range(p ** n)])
                if gr.res(gr.cor(y)) != y.scale(p) or gr.cor(gr.res(x)) != gr.kernel_norm(p, n, 2) * x:
                    return False, "res/cor composition"
    return True, "all diagrams on the full basis, res/cor identities"


def check_series_image(rng):
    p, m = 3, 2
    N = m * p ** 2 + 1
    for _ in range(5):
        f = LambdaElem(p, m, N, [rng.randrange(p ** m) for _ in range(N)])
        g = LambdaElem(p, m, N, [rng.randrange(p ** m) for _ in range(N)])
        for n in range(3):
            if gr.groupring_from_series(f * g, n, m) != gr.groupring_from_series(f, n, m) * gr.groupring_from_series(g, n, m):
                return False, "series image is not multiplicative"
        if gr.res(gr.groupring_from_series(f, 2, m)) != gr.groupring_from_series(f, 1, m):
            return False, "series image incompatible with res"
    if not gr.groupring_from_series(omega(1, p, m, N), 1, m) == gr.GroupRingElem(p, 1, m):
        return False, "omega_1 not in the kernel"
    return True, "group-ring image multiplicative and level compatible"


def check_ledger(rng):
    for _ in range(50):
        ids = [f"v{k}" for k in range(rng.randrange(0, 4))]
        l1 = {v: rng.randrange(6) for v in ids}
        l2 = {v: rng.randrange(6) for v in ids}
        base = rng.randrange(20)
        lam1 = base - sum(l1.values()) + 30
        lam2 = base - sum(l2.values()) + 30
        f1 = lg.FormDatum("f1", lam1, 0, l1)
        f2 = lg.FormDatum("f2", lam2, 0, l2)
        rep = lg.lambda_difference(f1, f2, ids)
        if not rep["consistent"] or rep["difference"] != lam1 - lam2:
            return False, "lambda difference identity"
        if lg.lambda_difference(f2, f1, ids)["difference"] != -rep["difference"]:
            return False, "antisymmetry"
    fd = lg.FieldDatum(1, 1)
    primes = [lg.PrimeDatum("p1", "above_p", local_degree=3), lg.PrimeDatum("s", "split", h0_rank=1)]
    rep = lg.target_corank(fd, primes)
    if rep["corank"] != 4 or rep["equals_degree"]:
        return False, "corank accounting"
    return True, "lambda identities, antisymmetry, corank"


CHECKS = [
    ("padic-core", check_padic),
    ("lambda-series/prep", check_prep),
    ("lambda-series/resultant", check_resultant),
    ("lambda-series/det", check_det),
    ("structure-invariants/twist", check_twist),
    ("structure-invariants/length", check_length),
    ("group-ring-duality/diagrams", check_duality),
    ("group-ring-duality/series", check_series_image),
    ("selmer-ledger", check_ledger),
]


def run_all(seed=0):
    out = []
    for name, fn in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not a crashed selftest
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"check": name, "pass": bool(ok), "detail": detail})
    return out
