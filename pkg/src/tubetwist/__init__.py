"""Tube algebras of group-graded fusion categories and their cocycle twists."""

from .cohomology import (
    GroupCochain,
    GroupoidCochain,
    coboundary,
    cyclic_generator,
    groupoid_coboundary,
    is_cocycle,
    product_generator,
    pullback,
    solve_coboundary,
)
from .fusion import SkeletalCategory, check_pentagon, check_rigidity, pointed_category, twist
from .groupoid import (
    ActionGroupoid,
    action_groupoid,
    induce_psi,
    monad_psi_tilde,
    normalize_psi,
    normalized_centralizer_cocycle,
)
from .groups import FiniteGroup, cyclic_group, make_group, product_group, table_group
from .phases import Phase
from .spectrum import center_dimension, compare_spectra, wedderburn
from .tube import (
    TubeAlgebra,
    build_tube,
    coboundary_transport,
    corner_unit_check,
    fell_blocks,
    twist_fell_bundle,
    verify_twist_theorem,
)

__all__ = [
    "ActionGroupoid", "FiniteGroup", "GroupCochain", "GroupoidCochain", "Phase", "SkeletalCategory",
    "TubeAlgebra", "action_groupoid", "build_tube", "center_dimension", "check_pentagon",
    "check_rigidity", "coboundary", "coboundary_transport", "compare_spectra", "corner_unit_check",
    "cyclic_generator", "cyclic_group", "fell_blocks", "groupoid_coboundary", "induce_psi",
    "is_cocycle", "make_group", "monad_psi_tilde", "normalize_psi", "normalized_centralizer_cocycle",
    "pointed_category", "product_generator", "product_group", "pullback", "solve_coboundary",
    "table_group", "twist", "twist_fell_bundle", "verify_twist_theorem", "wedderburn",
]
