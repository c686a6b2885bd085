import itertools

import numpy as np
import pytest

from iwasawa import groupring as gr
from iwasawa.errors import LevelMismatch, LevelZero, SizeLimit, TruncationTooShort
from iwasawa.groupring import DualGroupRingElem as D
from iwasawa.groupring import GroupRingElem as G
from iwasawa.series import LambdaElem, omega

CELLS = [(p, n, m) for p in (2, 3, 5) for n in range(3) for m in range(1, 4)]


def rand_elem(rng, p, n, m, cls=G):
    return cls(p, n, m, [rng.randrange(p ** m) for _ in range(p ** n)])


def test_mul_examples():
    g = G.basis(3, 2, 2, 1)
    assert g * g == G.basis(3, 2, 2, 2)
    x = G(3, 1, 2, [4, 1, 7])
    assert x * G.one(3, 1, 2) == x
    s = G(2, 1, 2, [1, 1])
    assert s * s == G(2, 1, 2, [2, 2])
    with pytest.raises(LevelMismatch):
        x * G.one(3, 2, 2)


def test_mul_matches_naive_convolution(rng):
    for p, n, m in CELLS:
        x, y = rand_elem(rng, p, n, m), rand_elem(rng, p, n, m)
        size = p ** n
        want = [0] * size
        for i in range(size):
            for j in range(size):
                want[(i + j) % size] += x.coeffs[i] * y.coeffs[j]
        assert (x * y).to_list() == [w % p ** m for w in want]


def test_res_examples():
    assert gr.res(G.basis(3, 2, 2, 7)) == G.basis(3, 1, 2, 1)
    assert gr.res(G.one(3, 2, 2)) == G.one(3, 1, 2)
    allb = G(3, 2, 2, [1] * 9)
    assert gr.res(allb) == G(3, 1, 2, [3] * 3)
    with pytest.raises(LevelZero):
        gr.res(G.one(3, 0, 2))


def test_res_is_ring_hom(rng):
    for p, n, m in CELLS:
        x, y = rand_elem(rng, p, n + 1, m), rand_elem(rng, p, n + 1, m)
        assert gr.res(x * y) == gr.res(x) * gr.res(y)
        assert gr.res(x + y) == gr.res(x) + gr.res(y)


def test_cor_not_multiplicative():
    # search all pairs at p=2, n=0 -> 1; a counterexample must exist
    found = False
    for a, b in itertools.product(range(4), repeat=2):
        x, y = G(2, 0, 2, [a]), G(2, 0, 2, [b])
        if gr.cor(x * y) != gr.cor(x) * gr.cor(y):
            found = True
            break
    assert found


def test_cor_additive_and_equivariant(rng):
    for p, n, m in CELLS:
        x, y = rand_elem(rng, p, n, m), rand_elem(rng, p, n, m)
        h = rng.randrange(p ** (n + 1))
        assert gr.cor(x + y) == gr.cor(x) + gr.cor(y)
        assert gr.cor(x.act(h)) == gr.cor(x).act(h)


def test_cor_of_identity_is_kernel_norm():
    assert gr.cor(G.one(3, 1, 2)) == G(3, 2, 2, [1, 0, 0, 1, 0, 0, 1, 0, 0])
    assert gr.kernel_norm(3, 1, 2) == gr.cor(G.one(3, 1, 2))


def test_res_cor_identities_full_basis():
    for p, n, m in CELLS:
        for g in range(p ** n):
            x = G.basis(p, n, m, g)
            assert gr.res(gr.cor(x)) == x.scale(p)
        for g in range(p ** (n + 1)):
            x = G.basis(p, n + 1, m, g)
            assert gr.cor(gr.res(x)) == gr.kernel_norm(p, n, m) * x


def test_pi_theta():
    for p, n, m in CELLS:
        for g in range(p ** n):
            x = G.basis(p, n, m, g)
            assert gr.pi_embed(x) == G.basis(p, n, m + 1, g).scale(p)
            assert gr.theta(G.basis(p, n, m + 1, g)) == x
        if m == 1:
            assert gr.theta(gr.pi_embed(G(p, n, 1, [1] * p ** n))) == G(p, n, 1)


def test_pi_embed_injective_small():
    p, n, m = 2, 1, 2
    images = {gr.pi_embed(G(p, n, m, list(v))) for v in itertools.product(range(4), repeat=2)}
    assert len(images) == 16


def test_phi_bijective_and_pairing_nondegenerate():
    for p, n, m in CELLS:
        size = p ** n
        mat = np.array([gr.phi(D.basis(p, n, m, g)).coeffs for g in range(size)])
        assert np.array_equal(mat, np.eye(size, dtype=np.int64))
        for g in range(size):
            x = G.basis(p, n, m, g)
            assert any(D.basis(p, n, m, h).pair(x) for h in range(size))
        chi = D(p, n, m, list(range(size)))
        assert gr.phi_inverse(gr.phi(chi)) == chi
    assert gr.phi(D.basis(3, 1, 2, 0)) == G.one(3, 1, 2)


def test_phi_additive_and_equivariant(rng):
    for p, n, m in CELLS:
        c1, c2 = rand_elem(rng, p, n, m, D), rand_elem(rng, p, n, m, D)
        assert gr.phi(c1 + c2) == gr.phi(c1) + gr.phi(c2)
        h = rng.randrange(p ** n)
        # (h chi)(delta_g) = chi(delta_{g - h}) evaluated directly
        hchi = D(p, n, m, [c1.pair(G.basis(p, n, m, g - h)) for g in range(p ** n)])
        assert c1.act(h) == hchi
        assert gr.phi(hchi) == gr.phi(c1).act(h)


def _chi_value(chi, x):
    """chi(x) as a Fraction in [0, 1)."""
    from fractions import Fraction
    return Fraction(chi.pair(x), chi.modulus)


def test_dual_map_examples(rng):
    chi = rand_elem(rng, 3, 1, 2, D)
    assert gr.dual_map("id", chi) == chi
    d = gr.dual_map("res", chi)
    for g in range(9):
        assert d.pair(G.basis(3, 2, 2, g)) == chi.pair(G.basis(3, 1, 2, g % 3))


def test_dual_maps_are_precomposition(rng):
    for p, n, m in CELLS:
        if n == 0:
            continue
        pairs = [("res", (n + 1, m), gr.res), ("cor", (n - 1, m), gr.cor),
                 ("pi", (n, m - 1), gr.pi_embed), ("theta", (n, m + 1), gr.theta)]
        chi = rand_elem(rng, p, n, m, D)
        for name, (sn, sm), f in pairs:
            if sm < 1:
                continue
            d = gr.dual_map(name, chi)
            assert (d.n, d.m) == (sn, sm)
            for g in range(p ** sn):
                x = G.basis(p, sn, sm, g)
                assert _chi_value(d, x) == _chi_value(chi, f(x))


@pytest.mark.parametrize("name", gr.DIAGRAMS)
def test_diagrams_commute(name):
    for p, n, m in CELLS:
        rep = gr.check_diagram(name, p, n, m, sample_count=10)
        assert rep.passed and rep.checked >= p ** n + 10


def test_diagram_fault_injection():
    def bad_phi(chi):
        out = gr.phi(chi)
        c = out.coeffs.copy()
        c[0] = -c[0]
        return G(out.p, out.n, out.m, c)

    rep = gr.check_diagram("A1-res-cor", 3, 1, 2, phi_map=bad_phi)
    assert not rep.passed and rep.as_dict()["failure_count"] > 0


def test_a3_level_zero():
    assert gr.check_diagram("A3-pi-theta", 5, 0, 1).passed


def _oracle_image(f, n, m):
    """Evaluate f at the cyclic shift matrix minus identity, mod p^m."""
    p = f.p
    size, mod = p ** n, p ** m
    S = np.roll(np.eye(size, dtype=object), 1, axis=0)
    X = (S - np.eye(size, dtype=object)) % mod
    acc = np.zeros((size, size), dtype=object)
    for c in reversed(f.to_list()):
        acc = (acc.dot(X) + c * np.eye(size, dtype=object)) % mod
    return G(p, n, m, [int(v) for v in acc[:, 0]])


def test_series_image_examples():
    p, m, N = 3, 2, 20
    for n in range(3):
        assert gr.groupring_from_series(LambdaElem(p, m, N, [1, 1]), n, m) == G.basis(p, n, m, 1)
        assert gr.groupring_from_series(omega(n, p, m, N), n, m) == G(p, n, m)
    with pytest.raises(TruncationTooShort):
        gr.groupring_from_series(LambdaElem(3, 2, 9, [1]), 2, 2)


def test_series_image_against_matrix_oracle(rng):
    for p, n, m in [(2, 2, 3), (3, 1, 2), (3, 2, 2), (5, 1, 1)]:
        N = m * p ** n + 1
        for _ in range(5):
            f = LambdaElem(p, m, N, [rng.randrange(p ** m) for _ in range(N)])
            assert gr.groupring_from_series(f, n, m) == _oracle_image(f, n, m)


def test_series_image_multiplicative(rng):
    p, n, m = 3, 2, 2
    N = m * p ** n + 1
    for _ in range(100):
        f = LambdaElem(p, m, N, [rng.randrange(p ** m) for _ in range(N)])
        g = LambdaElem(p, m, N, [rng.randrange(p ** m) for _ in range(N)])
        img = gr.groupring_from_series
        assert img(f * g, n, m) == img(f, n, m) * img(g, n, m)
        assert gr.res(img(f, n, m)) == img(f, n - 1, m)


def test_tensor_limit_invariants():
    assert gr.tensor_limit_invariants(1) == (1, 0, 0)
    assert gr.tensor_limit_invariants(0, (2,)) == (0, 2, 0)
    assert gr.tensor_limit_invariants(0) == (0, 0, 0)


def test_growth_table_examples():
    rows = gr.limit_growth_table(0, (2,), 3, 1)
    assert rows[1]["torsion_log_p_size"] == 6 and 3 ** 6 == 729
    assert rows[0]["torsion_log_p_size"] == 2
    assert gr.limit_growth_table(1, (), 2, 2)[2]["cofree_rank"] == 4
    assert gr.limit_growth_table(1, (), 2, 0)[0]["cofree_rank"] == 1
    with pytest.raises(SizeLimit):
        gr.limit_growth_table(0, (1,), 3, 9)


@pytest.mark.parametrize("p,n,m", [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (3, 1, 2)])
def test_growth_against_enumeration(p, n, m):
    # count all distinct group-ring elements explicitly
    size = p ** n
    elems = {G(p, n, m, list(v)) for v in itertools.product(range(p ** m), repeat=size)}
    rows = gr.limit_growth_table(0, (m,), p, n)
    assert len(elems) == p ** rows[n]["torsion_log_p_size"]
    assert rows[n]["torsion_log_p_size"] == rows[n]["expected_log_p_size"]


def test_growth_mu_line():
    for p in (2, 3, 5):
        rows = gr.limit_growth_table(0, (1, 2), p, 2)
        assert all(r["torsion_log_p_size"] == 3 * p ** r["n"] for r in rows)
