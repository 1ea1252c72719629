"""Ising: a non-pointed Z/2-graded category, twisted by the nontrivial cocycle."""

import numpy as np

from tubetwist import build_tube, check_rigidity, cyclic_generator, twist, verify_twist_theorem, wedderburn
from tubetwist.specs import parse_category

C = parse_category({"type": "builtin", "name": "ising"})
print("simples:", C.simples, "quantum dimensions:", np.round(C.qdim, 6))
print("rigidity:", check_rigidity(C).status)

T = build_tube(C)
rep = wedderburn(T)
print("tube algebra dimension", T.dim, "center", rep.center_dim, "blocks", rep.block_dims)

omega = cyclic_generator(2, 1, C.grading_group)
print("twist theorem discrepancy:", verify_twist_theorem(C, omega).max_discrepancy)
print("twisted blocks:", wedderburn(build_tube(twist(C, omega))).block_dims)
