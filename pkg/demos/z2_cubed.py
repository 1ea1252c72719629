"""Twisting D((Z/2)^3) by the cubic cocycle merges irreducibles.

Run with ``python3 demos/z2_cubed.py``.
"""

from tubetwist import (
    build_tube,
    center_dimension,
    compare_spectra,
    normalized_centralizer_cocycle,
    pointed_category,
    product_generator,
    product_group,
    solve_coboundary,
    wedderburn,
)
from tubetwist.cohomology import constant_cochain

G = product_group([2, 2, 2])
omega = product_generator(G, 0, 1, 2)   # exp(pi i a1 b2 c3)

plain = build_tube(pointed_category(constant_cochain(G, 3)))
twisted = build_tube(pointed_category(omega))
print("dimension:", plain.dim, twisted.dim)
print("center:", center_dimension(plain), center_dimension(twisted))

# The loop cocycle over a = (0,0,1) is not a coboundary, so that block is
# no longer commutative: it splits as M_2 + M_2 instead of eight characters.
a = G.index_of((0, 0, 1))
phi = normalized_centralizer_cocycle(omega, a)
print("loop cocycle at (0,0,1) is a coboundary:", solve_coboundary(phi) is not None)

rep = wedderburn(twisted)
for name, block in sorted(rep.per_class.items()):
    print(f"  {name:10s} dim {block['dim']:2d}  blocks {block['block_dims']}")

cmp = compare_spectra(plain, twisted)
print("fewer irreducibles after twisting:", cmp["fewer_irreducibles"])
