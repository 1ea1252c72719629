"""Over Z/n every loop cocycle is a coboundary; the solved 1-cochain rescales
the twisted tube algebra onto the untwisted one."""

from tubetwist import (
    build_tube,
    coboundary_transport,
    cyclic_generator,
    induce_psi,
    normalize_psi,
    normalized_centralizer_cocycle,
    pointed_category,
    solve_coboundary,
)
from tubetwist.cohomology import constant_cochain
from tubetwist.groups import cyclic_group

n, k = 6, 1
omega = cyclic_generator(n, k)
plain = build_tube(pointed_category(constant_cochain(cyclic_group(n), 3)))
twisted = build_tube(pointed_category(omega))
_, xi = normalize_psi(induce_psi(omega))

for a in range(n):
    eta = solve_coboundary(normalized_centralizer_cocycle(omega, a))
    cert = coboundary_transport(twisted, plain, a, eta, xi)
    print(f"a={a}: eta(1) = {eta(1)}, transport ok: {cert.ok}")
