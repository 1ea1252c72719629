import itertools

import pytest

from cases import matrix, s3, sign_hom
from tubetwist.cohomology import (
    EquivariantCochain,
    cochain_from_function,
    constant_cochain,
    cyclic_generator,
    is_cocycle,
    product_generator,
    pullback,
    solve_coboundary,
)
from tubetwist.groupoid import (
    action_groupoid,
    centralizer_cocycle,
    centralizer_group,
    induce_Psi,
    induce_psi,
    is_equivariant_cocycle,
    monad_psi_tilde,
    normalize_psi,
    normalized_centralizer_cocycle,
)
from tubetwist.groups import cyclic_group, product_group
from tubetwist.phases import Phase


def test_groupoid_structure_s3():
    G = s3()
    Gd = action_groupoid(G)
    assert len(Gd.arrows) == 36
    assert len(Gd.composable_tuples(2)) == 6 ** 3
    for g, h in Gd.composable_tuples(2):
        gh = Gd.compose(g, h)
        assert Gd.dom(gh) == Gd.dom(h) and Gd.codom(gh) == Gd.codom(g)
    for g in Gd.arrows:
        assert Gd.is_unit(Gd.compose(g, Gd.inverse(g)))
        assert Gd.compose(Gd.inverse(g), g) == Gd.unit(Gd.dom(g))
    with pytest.raises(ValueError):
        t = G.labels.index("(12)")
        Gd.compose(Gd.arrow(0, t), Gd.arrow(0, 0))


def test_induced_value_on_z2():
    Gd = action_groupoid(cyclic_group(2))
    psi = induce_psi(cyclic_generator(2, 1), Gd)
    g = Gd.arrow(1, 1)
    assert psi(g, g) == Phase(1, 2)
    assert sum(not v.is_one() for v in psi.values.values()) == 1


def test_centralizer_cocycle_agrees_with_psi_on_loops():
    G = s3()
    w = pullback(sign_hom(), cyclic_generator(2, 1))
    Gd = action_groupoid(G)
    psi = induce_psi(w, Gd)
    for a in G:
        H, emb = centralizer_group(G, a)
        phi = centralizer_cocycle(w, a)
        assert is_cocycle(phi)
        for i, j in itertools.product(range(H.order), repeat=2):
            assert phi(i, j) == psi(Gd.arrow(emb[i], a), Gd.arrow(emb[j], a))


def test_phi123_block_cocycles():
    """Loop cocycles at a = (0,0,1) on (Z/2)^3 twisted by phi_123.

    phi_a(s, t) = exp(pi i s1 t2) exactly. The normalized phi'_a is trivial on
    inverse pairs, cohomologous to phi_a, and has commutator pairing
    phi'(s, t) / phi'(t, s) = exp(pi i (s1 t2 - s2 t1)); that pairing is a
    class invariant, which rules out phi'_a being a coboundary.
    """
    G = product_group([2, 2, 2])
    w = product_generator(G, 0, 1, 2)
    a = G.index_of((0, 0, 1))
    phi = centralizer_cocycle(w, a)
    phi_n = normalized_centralizer_cocycle(w, a)
    H = phi.group
    X = H.coords
    pairs = list(itertools.product(range(H.order), repeat=2))
    for i, j in pairs:
        assert phi(i, j) == Phase(int(X[i, 0] * X[j, 1]), 2)
        det = int(X[i, 0] * X[j, 1] - X[i, 1] * X[j, 0])
        assert phi_n(i, j) / phi_n(j, i) == Phase(det, 2)
        if j == int(H.inv[i]):
            assert phi_n(i, j).is_one()
    assert is_cocycle(phi_n)
    assert solve_coboundary(phi_n / phi) is not None
    assert solve_coboundary(phi_n) is None


def test_normalization_makes_inverse_pairs_trivial():
    for name, G, w in matrix()[::5]:
        Gd = action_groupoid(G)
        psi_n, xi = normalize_psi(induce_psi(w, Gd))
        assert is_cocycle(psi_n)
        assert psi_n.is_normalized()
        for g in Gd.arrows:
            assert psi_n(g, Gd.inverse(g)).is_one()
            assert xi[g] * xi[g] == induce_psi(w, Gd)(g, Gd.inverse(g))


def test_monad_certificate_detects_wrong_cochain():
    cert = monad_psi_tilde(pullback(sign_hom(), cyclic_generator(2, 1)))
    assert cert.holds
    G = cyclic_group(3)
    cert = monad_psi_tilde(cyclic_generator(3, 2))
    assert cert.holds and cert.xi0.degree == 1


def test_equivariant_cocycle_check():
    G = s3()
    Psi = induce_Psi(pullback(sign_hom(), cyclic_generator(2, 1)))
    assert is_equivariant_cocycle(Psi)
    bad = dict(Psi.values)
    bad[(1, 1, 0)] = bad[(1, 1, 0)] * Phase(1, 3)
    chk = is_equivariant_cocycle(EquivariantCochain(G, 2, bad))
    assert not chk.ok and len(chk.witness) == 4


def test_neutral_cocycle_induces_neutral_psi():
    G = s3()
    assert induce_psi(constant_cochain(G, 3)).is_neutral()
