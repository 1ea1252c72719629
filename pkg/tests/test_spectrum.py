import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cases import builtin_category, matrix, s3
from tubetwist.cohomology import (
    GroupoidCochain,
    constant_cochain,
    cyclic_generator,
    groupoid_coboundary,
)
from tubetwist.fusion import pointed_category, twist
from tubetwist.groupoid import centralizer_cocycle, centralizer_group, induce_psi
from tubetwist.groups import centralizer, conjugacy_classes, cyclic_group, product_group
from tubetwist.phases import Phase
from tubetwist.spectrum import (
    SpectrumError,
    center_dimension,
    center_dimension_exact,
    center_dimension_float,
    compare_spectra,
    wedderburn,
)
from tubetwist.tube import build_tube, twist_fell_bundle


def regular_class_count(w, a):
    """Conjugacy classes of C(a) made of phi_a-regular elements, by brute force."""
    phi = centralizer_cocycle(w, a)
    H, _ = centralizer_group(w.group, a)

    def regular(x):
        return all(phi(x, y) == phi(y, x) for y in centralizer(H, x))

    return sum(1 for c in conjugacy_classes(H) if regular(c[0]))


def oracle_center(w):
    return sum(regular_class_count(w, c[0]) for c in conjugacy_classes(w.group))


CASES = matrix()


@pytest.mark.parametrize("name,G,w", CASES, ids=[c[0] for c in CASES])
def test_center_matches_regular_class_count(name, G, w):
    T = build_tube(pointed_category(w))
    expected = oracle_center(w)
    assert center_dimension(T, exact=True) == expected
    assert center_dimension(T, exact=False) == expected


@pytest.mark.parametrize("name,G,w", [c for c in CASES if c[1].is_abelian],
                         ids=[c[0] for c in CASES if c[1].is_abelian])
def test_abelian_block_sizes(name, G, w):
    # every projective irrep of an abelian group with a fixed cocycle has the same dimension
    rep = wedderburn(build_tube(pointed_category(w)))
    expected = []
    for a in G:
        r = regular_class_count(w, a)
        d = math.isqrt(G.order // r)
        assert d * d * r == G.order
        expected += [d] * r
    assert rep.block_dims == sorted(expected)
    assert rep.commutative == all(d == 1 for d in expected)


def test_s3_untwisted_spectrum():
    rep = wedderburn(build_tube(pointed_category(constant_cochain(s3(), 3))))
    assert rep.center_dim == 8
    assert rep.block_dims == [1, 1, 2, 2, 2, 2, 3, 3]
    assert sum(d * d for d in rep.block_dims) == rep.algebra_dim == 36
    assert sorted(v["dim"] for v in rep.per_class.values()) == [6, 12, 18]


def test_z2_cubed_block_over_001():
    from tubetwist.cohomology import product_generator
    E = product_group([2, 2, 2])
    rep = wedderburn(build_tube(pointed_category(product_generator(E, 0, 1, 2))))
    assert rep.per_class["{(0,0,1)}"] == {"dim": 8, "center_dim": 2, "block_dims": [2, 2]}
    assert rep.per_class["{(0,0,0)}"]["block_dims"] == [1] * 8


@pytest.mark.parametrize("name", ["ising", "fibonacci"])
def test_modular_spectra_match_pair_fusion(name):
    # for a modular category the blocks are labelled by pairs (a, b) of simples,
    # of size the number of fusion channels of a x b
    C = builtin_category(name)
    expected = sorted(int(C.N[a, b].sum()) for a in range(C.rank) for b in range(C.rank))
    rep = wedderburn(build_tube(C))
    assert rep.block_dims == expected
    assert rep.center_dim == center_dimension(build_tube(C)) == C.rank ** 2


def test_twisted_ising_center():
    C = builtin_category("ising")
    T = build_tube(twist(C, cyclic_generator(2, 1, C.grading_group)))
    rep = wedderburn(T)
    assert sum(d * d for d in rep.block_dims) == T.dim
    assert rep.center_dim == center_dimension(T)


def test_exact_path_reports_inapplicable():
    assert center_dimension_exact(2, {(0, 0): [(0, 1.0), (1, 1.0)]}) is None
    with pytest.raises(SpectrumError):
        center_dimension(build_tube(builtin_category("fibonacci")), exact=True)


def test_float_path_on_matrix_algebra():
    # M_2 with matrix units e_ij e_jk = e_ik has a one-dimensional center
    idx = {(i, j): 2 * i + j for i in range(2) for j in range(2)}
    prod = {(idx[i, j], idx[j, k]): [(idx[i, k], 1.0)] for i in range(2) for j in range(2) for k in range(2)}
    assert center_dimension_float(4, prod) == 1
    assert center_dimension_exact(4, {k: [(v[0][0], Phase(0))] for k, v in prod.items()}) == 1


def test_compare_spectra_reports():
    E = product_group([2, 2, 2])
    from tubetwist.cohomology import product_generator
    cmp = compare_spectra(build_tube(pointed_category(constant_cochain(E, 3))),
                          build_tube(pointed_category(product_generator(E, 0, 1, 2))))
    assert cmp["center_dims"] == [64, 22]
    assert cmp["fewer_irreducibles"] and not cmp["equal_center"] and not cmp["equal_blocks"]
    assert set(cmp["deltas"]) and "{(0,0,0)}" not in cmp["deltas"]
    # a cyclic cocycle leaves the spectrum unchanged
    Z4 = cyclic_group(4)
    cmp = compare_spectra(build_tube(pointed_category(constant_cochain(Z4, 3))),
                          build_tube(pointed_category(cyclic_generator(4, 1))))
    assert cmp["equal_center"] and cmp["equal_blocks"] and cmp["deltas"] == {}


def unit_normalized(Gd, draw):
    """Random 1-cochain that is 1 on identity arrows, so delta f respects the involution."""
    return GroupoidCochain(Gd, 1, {(g,): Phase(0) if Gd.is_unit(g) else Phase(draw(st.integers(0, 11)), 12)
                                   for g in Gd.arrows})


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 5), st.data())
def test_coboundary_twist_preserves_spectrum(n, data):
    T = build_tube(pointed_category(cyclic_generator(n, data.draw(st.integers(0, n - 1)))))
    f = unit_normalized(T.groupoid, data.draw)
    T2 = twist_fell_bundle(T, groupoid_coboundary(f))
    a, b = wedderburn(T), wedderburn(T2)
    assert (a.center_dim, a.block_dims) == (b.center_dim, b.block_dims)


def test_coboundary_off_units_breaks_involution():
    T = build_tube(pointed_category(constant_cochain(cyclic_group(2), 3)))
    Gd = T.groupoid
    f = GroupoidCochain(Gd, 1, {(g,): Phase(1, 4) if Gd.is_unit(g) else Phase(0) for g in Gd.arrows})
    with pytest.raises(ValueError, match="fails a law"):
        twist_fell_bundle(T, groupoid_coboundary(f))


def test_wedderburn_is_seed_independent():
    T = build_tube(pointed_category(constant_cochain(s3(), 3)))
    dims = {tuple(wedderburn(T, seed=s).block_dims) for s in range(5)}
    assert dims == {(1, 1, 2, 2, 2, 2, 3, 3)}


def test_wedderburn_needs_involution():
    C = builtin_category("fibonacci")
    from tubetwist.fusion import SkeletalCategory
    bare = build_tube(SkeletalCategory(C.simples, C.dual, C.N, C.grading_group, C.grading, dict(C.F)))
    with pytest.raises(SpectrumError):
        wedderburn(bare)
