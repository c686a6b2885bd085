import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iwasawa.errors import MuNonzero, NotFinite, NotTorsion, TrivialCharacter
from iwasawa.oracles import horner, stable_quotient_length
from iwasawa.padic import Character
from iwasawa.series import DistinguishedPoly, LambdaElem, mu_lambda
from iwasawa.structure import (
    CharPoly,
    ElementaryModule,
    Verdict,
    char_poly,
    coinvariant_length,
    coinvariants_finite,
    exceptional_twists,
    invariants,
    invariants_from_matrix,
    twist_char_poly,
)

P3 = 3


def test_invariants_examples():
    assert invariants(ElementaryModule(3, 0, (2,))) == (0, 2, 0)
    assert invariants(ElementaryModule(3, 1)) == (1, 0, 0)
    E = ElementaryModule(3, 0, (1, 1), ((DistinguishedPoly(3, (3,)), 2),))
    assert invariants(E) == (0, 2, 2)


def test_char_poly_examples():
    F = char_poly(ElementaryModule(3, 0, (2,)))
    assert (F.mu, F.monic, F.coefficients()) == (2, (1,), [9])
    assert char_poly(ElementaryModule(3, 0, (), ((DistinguishedPoly(3, (3,)), 1),))).monic == (3, 1)
    with pytest.raises(NotTorsion):
        char_poly(ElementaryModule(3, 1))


def test_char_poly_degree_and_mu(rng):
    for _ in range(50):
        ms = tuple(rng.randrange(1, 4) for _ in range(rng.randrange(3)))
        facs = tuple((DistinguishedPoly(3, tuple(3 * rng.randrange(-5, 6) for _ in range(rng.randrange(1, 4)))),
                      rng.randrange(1, 3)) for _ in range(rng.randrange(3)))
        E = ElementaryModule(3, 0, ms, facs)
        F = char_poly(E)
        _, mu, lam = invariants(E)
        assert (F.mu, F.lam) == (mu, lam)


def _L(c, M=6, N=10):
    return LambdaElem(3, M, N, c)


def test_invariants_from_matrix_examples():
    mu, lam, F = invariants_from_matrix([[_L([3, 1])]])
    assert (mu, lam) == (0, 1)
    Z = _L([0])
    mu, lam, F = invariants_from_matrix([[_L([3]), Z], [Z, _L([0, 1])]])
    assert (mu, lam) == (1, 1) and F.monic == (0, 1)


def _rand_entry(rng, max_mu=1, max_lam=2):
    mu, lam = rng.randrange(max_mu + 1), rng.randrange(max_lam + 1)
    c = [3 * rng.randrange(9) for _ in range(lam)] + [rng.choice([1, 2, 4, 5])]
    c += [rng.randrange(27) for _ in range(2)]
    return _L([3 ** mu * x for x in c])


def test_upper_triangular_sum_of_diagonals(rng):
    for _ in range(20):
        d = [_rand_entry(rng) for _ in range(3)]
        A = [[d[i] if i == j else (_rand_entry(rng) if j > i else _L([0])) for j in range(3)] for i in range(3)]
        mu, lam, _ = invariants_from_matrix(A)
        per = [mu_lambda(x) for x in d]
        assert (mu, lam) == (sum(a for a, _ in per), sum(b for _, b in per))


def test_block_diagonal_sum_of_blocks(rng):
    Z = _L([0])
    for _ in range(10):
        B1 = [[_rand_entry(rng), _rand_entry(rng)], [_rand_entry(rng), _rand_entry(rng)]]
        B2 = [[_rand_entry(rng)]]
        try:
            m1, l1, _ = invariants_from_matrix(B1)
        except Exception:
            continue
        m2, l2, _ = invariants_from_matrix(B2)
        A = [B1[0] + [Z], B1[1] + [Z], [Z, Z, B2[0][0]]]
        if l1 + l2 < 10 and m1 + m2 < 6:
            assert invariants_from_matrix(A)[:2] == (m1 + m2, l1 + l2)


KAPPA = Character(3, 8, 4)


def test_twist_examples():
    F = CharPoly(3, 0, (0, 1))
    assert twist_char_poly(F, KAPPA, 1).monic == (-3, 1)
    assert twist_char_poly(CharPoly(3, 0, (-3, 1)), KAPPA, -1).monic == (0, 1)
    G = CharPoly(3, 0, (5, 2, 1))
    assert twist_char_poly(G, KAPPA, 0) == G
    with pytest.raises(MuNonzero):
        twist_char_poly(CharPoly(3, 1, (1,)), KAPPA, 1)


def test_twist_precision_mode_matches_exact():
    F = CharPoly(3, 0, (0, 1), 8)
    assert twist_char_poly(F, KAPPA, 1).monic == ((-3) % 3 ** 8, 1)


monic_polys = st.lists(st.integers(0, 3 ** 8 - 1), min_size=0, max_size=5).map(lambda c: tuple(c) + (1,))


@settings(max_examples=100, deadline=None)
@given(monic_polys, st.integers(-4, 4), st.integers(-4, 4))
def test_twist_group_law(c, i, j):
    F = CharPoly(3, 0, c, 8)
    a = twist_char_poly(twist_char_poly(F, KAPPA, i), KAPPA, j)
    assert a == twist_char_poly(F, KAPPA, i + j)
    assert a.lam == F.lam and a.monic[-1] == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), max_size=4).map(lambda c: tuple(c) + (1,)),
       st.integers(-3, 3), st.integers(-10, 10))
def test_twist_substitution_identity(c, i, x):
    F = CharPoly(3, 0, c)
    Fi = twist_char_poly(F, KAPPA, i)
    k = Fraction(4) ** i
    t = k * (1 + x) - 1
    assert horner(list(Fi.monic), t) == k ** F.lam * horner(list(F.monic), x)


def test_finiteness_examples():
    assert coinvariants_finite(CharPoly(3, 0, (0, 1)), 0, "exact") is Verdict.INFINITE
    assert coinvariants_finite(CharPoly(3, 0, (-3, 1)), 1, "exact") is Verdict.FINITE
    assert coinvariants_finite(CharPoly(3, 0, (0, 1), 8), 0, "precision") is Verdict.INCONCLUSIVE


def test_exceptional_examples():
    assert exceptional_twists(CharPoly(3, 0, (-3, 1)), KAPPA, (-5, 5), 3) == {-1}
    assert exceptional_twists(CharPoly(3, 0, (1,)), KAPPA, (-5, 5), 3) == set()
    assert exceptional_twists(CharPoly(3, 0, (0, -3, 1)), KAPPA, (-5, 5), 3) == {0, -1}
    with pytest.raises(TrivialCharacter):
        exceptional_twists(CharPoly(3, 0, (0, 1)), Character(3, 4, 1), (-1, 1), 1)


def test_length_examples():
    assert coinvariant_length(CharPoly(3, 0, (-3, 1)), 1) == 2
    assert coinvariant_length(CharPoly(3, 0, (-3, 1)), 0) == 1
    assert coinvariant_length(CharPoly(3, 0, (1,)), 2) == 0
    assert coinvariant_length(CharPoly(3, 2, (1,)), 1) == 6
    with pytest.raises(NotFinite):
        coinvariant_length(CharPoly(3, 0, (0, 1)), 0)


@pytest.mark.parametrize("p", [2, 3])
def test_length_matches_elimination(p):
    rng = random.Random(p)
    checked = 0
    while checked < 30:
        deg = rng.randrange(1, 5)
        F = [rng.randrange(-6, 7) * (p if rng.random() < 0.6 else 1) for _ in range(deg)] + [1]
        n = rng.randrange(3 if p == 2 else 2)
        try:
            fast = coinvariant_length(CharPoly(p, 0, tuple(F)), n)
        except NotFinite:
            continue
        brute = stable_quotient_length(F, p, n, Bs=(fast + 2, fast + 4, fast + 6))
        assert brute == fast, (F, n)
        checked += 1


def test_exceptional_linear_closed_form():
    # the twisted root is kappa^i (1+a) - 1; over Q the only p-power root of unity is 1
    for a in (0, 3, 12, 15, 39, 63):
        ex = exceptional_twists(CharPoly(3, 0, (-a, 1)), KAPPA, (-6, 6), 2)
        assert ex == {i for i in range(-6, 7) if Fraction(4) ** i * (1 + a) == 1}
