"""End-to-end acceptance checks, one test per criterion."""

import time

import pytest

from cases import builtin_category, cyclic_group, matrix, s3
from tubetwist.cohomology import (
    constant_cochain,
    cyclic_generator,
    is_cocycle,
    product_generator,
    residue_identity_check,
    solve_coboundary,
)
from tubetwist.fusion import check_pentagon, check_rigidity, pointed_category, twist
from tubetwist.groupoid import (
    action_groupoid,
    induce_psi,
    monad_psi_tilde,
    normalize_psi,
    normalized_centralizer_cocycle,
)
from tubetwist.groups import product_group
from tubetwist.spectrum import center_dimension, compare_spectra, wedderburn
from tubetwist.tube import (
    build_tube,
    check_all_laws,
    check_associativity,
    coboundary_transport,
    corner_unit_check,
    verify_twist_theorem,
)


@pytest.fixture(scope="module")
def cases():
    return matrix()


def test_induced_cocycles(cases):
    """1. induced groupoid 2-cochains are cocycles for the whole matrix, exactly, < 5 s"""
    start = time.perf_counter()
    for name, G, w in cases:
        assert is_cocycle(w), name
        psi = induce_psi(w)
        assert len(psi.values) == G.order ** 3
        chk = is_cocycle(psi)
        assert chk.ok, (name, chk.witness)
    assert time.perf_counter() - start < 5.0


def test_twist_theorem_pointed(cases):
    """2. T(C^omega) equals the psi-twist of T(C) for pointed C, discrepancy exactly 0, < 10 s"""
    start = time.perf_counter()
    for name, G, w in cases:
        rep = verify_twist_theorem(pointed_category(constant_cochain(G, 3)), w)
        assert rep.passed and rep.max_discrepancy == 0.0, (name, rep)
    assert time.perf_counter() - start < 10.0


def test_twist_theorem_ising():
    """3. Ising data twisted by omega^1 on Z/2 matches the Fell-bundle twist within 1e-9, < 5 s"""
    start = time.perf_counter()
    C = builtin_category("ising")
    assert check_pentagon(C).ok and check_rigidity(C).status == "ok"
    rep = verify_twist_theorem(C, cyclic_generator(2, 1, C.grading_group))
    assert rep.passed and rep.max_discrepancy < 1e-9, rep
    assert time.perf_counter() - start < 5.0


def test_z2_cubed_example():
    """4. (Z/2)^3 with phi_123: centers 64 vs 22, block {2,2} over (0,0,1), fewer irreducibles, < 30 s"""
    start = time.perf_counter()
    G = product_group([2, 2, 2])
    T0 = build_tube(pointed_category(constant_cochain(G, 3)))
    T1 = build_tube(pointed_category(product_generator(G, 0, 1, 2)))
    assert T0.dim == 64 and T1.dim == 64
    assert center_dimension(T0, exact=True) == 64
    assert center_dimension(T1, exact=True) == 22
    rep = wedderburn(T1)
    assert rep.center_dim == 22
    assert rep.per_class["{(0,0,1)}"]["block_dims"] == [2, 2]
    assert sorted(rep.block_dims) == [1] * 8 + [2] * 14
    cmp = compare_spectra(T0, T1)
    assert cmp["fewer_irreducibles"] and cmp["center_dims"] == [64, 22]
    assert time.perf_counter() - start < 30.0


def test_cyclic_triviality():
    """5. cyclic groups n <= 6: every loop block of T(C^omega) is transported onto T(C) exactly, < 10 s"""
    start = time.perf_counter()
    for n in range(1, 7):
        G = cyclic_group(n)
        T0 = build_tube(pointed_category(constant_cochain(G, 3)))
        for k in range(n):
            w = cyclic_generator(n, k)
            Tk = build_tube(pointed_category(w))
            _, xi = normalize_psi(induce_psi(w))
            for a in range(n):
                phi = normalized_centralizer_cocycle(w, a)
                eta = solve_coboundary(phi)
                assert eta is not None, (n, k, a)
                cert = coboundary_transport(Tk, T0, a, eta, xi)
                assert cert.ok, (n, k, a, cert.witness)
    assert time.perf_counter() - start < 10.0


def test_algebra_laws(cases):
    """6. associativity, involution, trace, Gram positivity, sector orthogonality, Fell grading"""
    for name, G, w in cases:
        T = build_tube(pointed_category(w))
        for law, rep in check_all_laws(T).items():
            assert rep.ok, (name, law, rep.witness)
    for C in (builtin_category("ising"), builtin_category("fibonacci")):
        T = build_tube(C)
        rep = check_associativity(T, samples=1000, seed=7)
        assert rep.ok and rep.max_defect < 1e-9
        for law, rep in check_all_laws(T).items():
            assert rep.ok, (C.name, law, rep.witness)
    C = builtin_category("ising")
    T = build_tube(twist(C, cyclic_generator(2, 1, C.grading_group)))
    for law, rep in check_all_laws(T, samples=1000, seed=11).items():
        assert rep.ok, ("twisted Ising", law, rep.witness)


def test_corner_identity():
    """7. e_g^# e_g = e_(e, dom g) for pointed S3 (untwisted) and pointed Z/2 (twisted)"""
    rep = corner_unit_check(build_tube(pointed_category(constant_cochain(s3(), 3))))
    assert rep.ok and rep.checked == 36
    rep = corner_unit_check(build_tube(pointed_category(cyclic_generator(2, 1))))
    assert rep.ok and rep.checked == 4


def test_monad_remark(cases):
    """8. psi-tilde = psi * d(conj xi0) with xi0(s, y) = omega(s^-1, s, y), for the whole matrix"""
    for name, G, w in cases:
        cert = monad_psi_tilde(w)
        assert cert.holds, (name, cert.witness)


def test_normalization_lemma(cases):
    """9. psi(g, g^-1) = psi(g^-1, g); normalized psi' has psi'(g, g^-1) = 1 and is a cocycle"""
    for name, G, w in cases:
        Gd = action_groupoid(G)
        psi = induce_psi(w, Gd)
        for g in Gd.arrows:
            gi = Gd.inverse(g)
            assert psi(g, gi) == psi(gi, g), (name, g)
        psi_n, _ = normalize_psi(psi)
        assert all(psi_n(g, Gd.inverse(g)).is_one() for g in Gd.arrows), name
        assert is_cocycle(psi_n), name


def test_residue_identity():
    """10. residue/floor identity holds for every n <= 12"""
    assert all(residue_identity_check(n) for n in range(1, 13))
