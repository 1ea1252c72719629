"""Check that twisting the category and twisting the Fell bundle agree.

For each cocycle we build T(C^omega) directly and compare it, table entry by
table entry, with T(C) whose product and involution are rescaled by the
induced groupoid cocycle.
"""

from tubetwist import (
    cyclic_generator,
    induce_psi,
    is_cocycle,
    pointed_category,
    product_generator,
    product_group,
    pullback,
    verify_twist_theorem,
)
from tubetwist.cohomology import constant_cochain
from tubetwist.groups import cyclic_group, make_hom

Z4, Z2 = cyclic_group(4), cyclic_group(2)
E = product_group([2, 2, 2])
cases = {
    "Z/4, k=3": cyclic_generator(4, 3),
    "Z/4 pulled back from Z/2": pullback(make_hom(Z4, Z2, [x % 2 for x in Z4]), cyclic_generator(2, 1)),
    "(Z/2)^3, a1 b2 c3": product_generator(E, 0, 1, 2),
}

for name, omega in cases.items():
    psi = induce_psi(omega)
    rep = verify_twist_theorem(pointed_category(constant_cochain(omega.group, 3)), omega)
    print(f"{name:28s} psi cocycle: {bool(is_cocycle(psi))}  discrepancy: {rep.max_discrepancy}")
