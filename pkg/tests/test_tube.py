import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import builtin_category, s3, sign_hom
from tubetwist.cohomology import (
    GroupoidCochain,
    constant_cochain,
    cyclic_generator,
    groupoid_coboundary,
    product_generator,
    pullback,
)
from tubetwist.fusion import SkeletalCategory, pointed_category, twist
from tubetwist.groupoid import action_groupoid, induce_psi, centralizer_cocycle
from tubetwist.groups import cyclic_group, product_group
from tubetwist.phases import ONE, Phase
from tubetwist.tube import (
    InvolutionUnavailable,
    build_tube,
    check_all_laws,
    coboundary_transport,
    compare_tables,
    corner_unit_check,
    fell_blocks,
    involute,
    multiply,
    trace,
    twist_fell_bundle,
    verify_twist_theorem,
)
from tubetwist.cohomology import solve_coboundary


def pointed(G, w=None):
    return build_tube(pointed_category(w if w is not None else constant_cochain(G, 3)))


def e(T, s, g):
    """Basis vector e_(s, g) of a pointed tube algebra."""
    v = np.zeros(T.dim, dtype=complex)
    v[T.index[next(b for b in T.basis if b.s == s and b.j == g)]] = 1
    return v


def test_pointed_z2_neutral():
    T = pointed(cyclic_group(2))
    assert T.dim == 4 and T.exact
    np.testing.assert_array_equal(multiply(T, e(T, 1, 1), e(T, 1, 1)), e(T, 0, 1))
    for a, b in itertools.product(range(4), repeat=2):
        x, y = np.eye(4)[a], np.eye(4)[b]
        np.testing.assert_array_equal(multiply(T, x, y), multiply(T, y, x))
    assert trace(T, e(T, 0, 1)) == 1 and trace(T, e(T, 1, 1)) == 0


def test_pointed_z2_twisted_signs():
    T = pointed(cyclic_group(2), cyclic_generator(2, 1))
    np.testing.assert_array_equal(multiply(T, e(T, 1, 1), e(T, 1, 1)), -e(T, 0, 1))
    np.testing.assert_array_equal(involute(T, e(T, 1, 1)), -e(T, 1, 1))
    np.testing.assert_array_equal(involute(T, involute(T, e(T, 1, 1))), e(T, 1, 1))
    # the neutral algebra twisted by the induced cocycle gives the same sign
    T0 = pointed(cyclic_group(2))
    Tt = twist_fell_bundle(T0, induce_psi(cyclic_generator(2, 1), T0.groupoid))
    np.testing.assert_array_equal(multiply(Tt, e(Tt, 1, 1), e(Tt, 1, 1)), -e(Tt, 0, 1))


def test_unit_is_two_sided():
    for T in (pointed(s3()), pointed(product_group([2, 2, 2]), product_generator(product_group([2, 2, 2]), 0, 1, 2)),
              build_tube(builtin_category("ising"))):
        one = T.unit_vector()
        for i in range(T.dim):
            x = np.eye(T.dim)[i]
            np.testing.assert_allclose(multiply(T, one, x), x, atol=1e-12)
            np.testing.assert_allclose(multiply(T, x, one), x, atol=1e-12)


def test_pointed_dimensions_and_fell_blocks():
    T = pointed(s3())
    assert T.dim == 36
    blocks = fell_blocks(T)
    assert sorted(len(v) for v in blocks.values()) == [6, 12, 18]
    assert sorted(len(c) for c in blocks) == [1, 2, 3]
    for cls, idx in blocks.items():
        assert len(idx) == len(cls) * 6
    # cross-block products vanish
    where = {i: c for c, idx in blocks.items() for i in idx}
    for (i, j), terms in T.product.items():
        assert where[i] == where[j] == where[terms[0][0]]
    A = pointed(product_group([2, 2]))
    assert sorted(len(v) for v in fell_blocks(A).values()) == [4, 4, 4, 4]


def test_gram_of_pointed_s3_is_identity():
    from tubetwist.tube import _gram
    np.testing.assert_array_equal(_gram(pointed(s3())), np.eye(36))


def test_fibonacci_dimension_matches_channel_count():
    C = builtin_category("fibonacci")
    count = int(np.einsum("sju,ksu->", C.N, C.N))
    assert build_tube(C).dim == count == 7


def test_ising_laws_and_dimension():
    C = builtin_category("ising")
    T = build_tube(C)
    assert T.dim == int(np.einsum("sju,ksu->", C.N, C.N)) == 12
    for law, rep in check_all_laws(T, samples=300, seed=1).items():
        assert rep.ok, (law, rep)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_vectors_ising(seed):
    C = builtin_category("ising")
    T = build_tube(twist(C, cyclic_generator(2, 1, C.grading_group)))
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=T.dim) + 1j * rng.normal(size=T.dim) for _ in range(3))
    np.testing.assert_allclose(multiply(T, multiply(T, a, b), c), multiply(T, a, multiply(T, b, c)), atol=1e-9)
    np.testing.assert_allclose(involute(T, multiply(T, a, b)), multiply(T, involute(T, b), involute(T, a)), atol=1e-9)
    np.testing.assert_allclose(involute(T, involute(T, a)), a, atol=1e-9)
    assert abs(trace(T, multiply(T, a, b)) - trace(T, multiply(T, b, a))) < 1e-9
    assert trace(T, multiply(T, a, involute(T, a))).real > 0


def test_twist_by_neutral_and_inverse():
    G = s3()
    T = pointed(G, pullback(sign_hom(), cyclic_generator(2, 1)))
    Gd = T.groupoid
    neutral = GroupoidCochain(Gd, 2, {k: ONE for k in Gd.composable_tuples(2)})
    assert compare_tables(T, twist_fell_bundle(T, neutral)).passed
    psi = induce_psi(pullback(sign_hom(), cyclic_generator(2, 1)), Gd)
    there = twist_fell_bundle(T, psi)
    back = twist_fell_bundle(there, psi.conjugate())
    rep = compare_tables(T, back)
    assert rep.passed and rep.max_discrepancy == 0


def test_twist_rejects_non_cocycle():
    T = pointed(cyclic_group(3))
    Gd = T.groupoid
    vals = {k: ONE for k in Gd.composable_tuples(2)}
    vals[(Gd.arrow(1, 0), Gd.arrow(1, 0))] = Phase(1, 5)
    with pytest.raises(ValueError, match="not a cocycle"):
        twist_fell_bundle(T, GroupoidCochain(Gd, 2, vals))


def test_twist_theorem_examples_and_negative_control():
    Z2 = cyclic_group(2)
    assert verify_twist_theorem(pointed_category(constant_cochain(Z2, 3)), cyclic_generator(2, 1)).max_discrepancy == 0
    E = product_group([2, 2, 2])
    rep = verify_twist_theorem(pointed_category(constant_cochain(E, 3)), product_generator(E, 0, 1, 2))
    assert rep.passed and rep.max_discrepancy == 0
    # the cohomologous but different cocycle psi * d(f) does not reproduce the tables
    Gd = action_groupoid(Z2)
    f = GroupoidCochain(Gd, 1, {(g,): Phase(g, 8) for g in Gd.arrows})
    psi = induce_psi(cyclic_generator(2, 1), Gd) * groupoid_coboundary(f)
    rep = verify_twist_theorem(pointed_category(constant_cochain(Z2, 3)), cyclic_generator(2, 1), psi)
    assert not rep.passed and rep.witness is not None


def test_corner_identity():
    assert corner_unit_check(pointed(s3())).ok
    assert corner_unit_check(pointed(cyclic_group(2), cyclic_generator(2, 1))).ok
    with pytest.raises(ValueError):
        corner_unit_check(build_tube(builtin_category("ising")))


def test_transport_examples():
    Z2 = cyclic_group(2)
    w = cyclic_generator(2, 1)
    T1, T0 = pointed(Z2, w), pointed(Z2)
    eta = solve_coboundary(centralizer_cocycle(w, 1))
    assert 2 * eta(1).exponent % 1 == Phase(1, 2).exponent
    assert coboundary_transport(T1, T0, 1, eta).ok
    # a = e: the loop cocycle is trivial and the identity rescaling certifies
    phi_e = centralizer_cocycle(w, 0)
    assert phi_e.is_neutral()
    cert = coboundary_transport(T1, T0, 0, constant_cochain(phi_e.group, 1))
    assert cert.ok and all(v.is_one() for v in cert.rescaling.values())
    with pytest.raises(ValueError, match="does not match"):
        coboundary_transport(T1, T0, 1, constant_cochain(eta.group, 1))


def test_product_only_without_rigidity():
    C = builtin_category("fibonacci")
    bare = SkeletalCategory(C.simples, C.dual, C.N, C.grading_group, C.grading, dict(C.F))
    T = build_tube(bare)
    assert not T.involution_available and "unavailable" in T.note
    with pytest.raises(InvolutionUnavailable):
        involute(T, np.ones(T.dim))
    assert check_all_laws(T)["associativity"].ok
