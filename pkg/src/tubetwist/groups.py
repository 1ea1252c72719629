"""Finite groups as dense multiplication tables.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Groups built from cyclic factors also carry integer coordinates, which the
cocycle formulas on products of cyclic groups read directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce

import numpy as np

__all__ = [
    "GroupValidationError",
    "FiniteGroup",
    "GroupHom",
    "make_group",
    "cyclic_group",
    "product_group",
    "table_group",
    "conjugacy_classes",
    "centralizer",
    "subgroup",
    "make_hom",
    "identity_hom",
    "trivial_hom",
]


class GroupValidationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    inv: np.ndarray
    labels: tuple[str, ...]
    coords: np.ndarray | None = None
    moduli: tuple[int, ...] | None = None
    identity: int = field(default=0)

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        if self.moduli is not None:
            name = " x ".join(f"Z/{n}" for n in self.moduli) or "trivial"
        else:
            name = f"table group of order {self.order}"
        return f"<FiniteGroup {name}>"

    def m(self, *xs: int) -> int:
        """Product of the given elements, left to right."""
        return reduce(lambda a, b: int(self.mul[a, b]), xs, self.identity)

    def conj(self, s: int, x: int) -> int:
        """The adjoint action s x s^-1."""
        return int(self.mul[self.mul[s, x], self.inv[s]])

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.mul[y, x])
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(x) for x in self))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def index_of(self, coord) -> int:
        """Element with the given coordinate tuple (product-of-cyclic groups only)."""
        if self.coords is None:
            raise ValueError("group has no coordinates")
        idx = 0
        for a, n in zip(coord, self.moduli):
            idx = idx * n + (a % n)
        return idx

    def label(self, x: int) -> str:
        return self.labels[x]


def _validate(mul: np.ndarray) -> tuple[int, np.ndarray]:
    n = mul.shape[0]
    if mul.shape != (n, n) or n == 0:
        raise GroupValidationError("multiplication table must be a nonempty square array")
    if mul.min() < 0 or mul.max() >= n:
        raise GroupValidationError("table entries out of range")
    for row in range(n):
        if len(set(mul[row].tolist())) != n:
            raise GroupValidationError(f"row {row} is not a permutation (no cancellation)")
    ident = [e for e in range(n) if (mul[e] == np.arange(n)).all() and (mul[:, e] == np.arange(n)).all()]
    if not ident:
        raise GroupValidationError("no two-sided identity")
    e = ident[0]
    # associativity, vectorised over the last two slots
    left = mul[mul]          # left[x, y, z] = (x y) z
    right = mul[:, mul]      # right[x, y, z] = x (y z)
    bad = np.argwhere(left != right)
    if len(bad):
        x, y, z = (int(v) for v in bad[0])
        raise GroupValidationError(f"not associative at triple ({x}, {y}, {z})")
    inv = np.empty(n, dtype=np.int64)
    for x in range(n):
        ys = np.nonzero(mul[:, x] == e)[0]
        if len(ys) != 1:
            raise GroupValidationError(f"element {x} has no inverse")
        inv[x] = ys[0]
    return e, inv


def _canonicalize(mul: np.ndarray, labels, e: int):
    """Relabel so the identity is element 0."""
    n = mul.shape[0]
    if e == 0:
        return mul, list(labels)
    perm = [e] + [x for x in range(n) if x != e]
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)
    new = pos[mul[np.ix_(perm, perm)]]
    return new, [labels[p] for p in perm]


def table_group(table, labels=None) -> FiniteGroup:
    mul = np.asarray(table, dtype=np.int64)
    n = mul.shape[0]
    labels = list(labels) if labels is not None else [str(x) for x in range(n)]
    if len(labels) != n:
        raise GroupValidationError("need one label per element")
    e, _ = _validate(mul)
    mul, labels = _canonicalize(mul, labels, e)
    _, inv = _validate(mul)
    return FiniteGroup(mul=mul, inv=inv, labels=tuple(labels))


def product_group(moduli) -> FiniteGroup:
    """(Z/n_1) x ... x (Z/n_k); element index is the mixed-radix number of its coordinates.

    Instances are shared per tuple of moduli, so cochains built in separate
    calls live on the same group object.
    """
    return _product_group(tuple(int(n) for n in moduli))


@lru_cache(maxsize=None)
def _product_group(moduli: tuple[int, ...]) -> FiniteGroup:
    if any(n < 1 for n in moduli):
        raise GroupValidationError("cyclic factors must have order >= 1")
    coords = np.array(list(itertools.product(*(range(n) for n in moduli))), dtype=np.int64)
    coords = coords.reshape(-1, len(moduli))
    order = coords.shape[0]
    mod = np.array(moduli, dtype=np.int64)
    radix = np.array([math.prod(moduli[i + 1:]) for i in range(len(moduli))], dtype=np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % mod
    mul = (summed * radix).sum(axis=-1)
    inv = (((-coords) % mod) * radix).sum(axis=-1)
    if len(moduli) == 1:
        labels = tuple(str(c[0]) for c in coords)
    else:
        labels = tuple("(" + ",".join(map(str, c)) + ")" for c in coords)
    return FiniteGroup(mul=mul.reshape(order, order), inv=inv, labels=labels, coords=coords, moduli=moduli)


def cyclic_group(n: int) -> FiniteGroup:
    return product_group([n])


def make_group(spec: dict) -> FiniteGroup:
    """Build a group from its JSON description.

    ``{"type": "cyclic", "n": 4}``, ``{"type": "product", "factors": [2, 2, 2]}``
    or ``{"type": "table", "labels": [...], "table": [[...], ...]}``.
    """
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]))
    if kind == "product":
        return product_group(spec["factors"])
    if kind == "table":
        return table_group(spec["table"], spec.get("labels"))
    raise GroupValidationError(f"unknown group type {kind!r}")


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes, each sorted, ordered by least element."""
    seen = set()
    classes = []
    for x in G:
        if x in seen:
            continue
        cls = sorted({G.conj(s, x) for s in G})
        seen.update(cls)
        classes.append(cls)
    return classes


def centralizer(G: FiniteGroup, a: int) -> list[int]:
    return [g for g in G if G.mul[a, g] == G.mul[g, a]]


def subgroup(G: FiniteGroup, elements) -> tuple[FiniteGroup, list[int]]:
    """The subgroup on ``elements`` as a group in its own right.

    Returns the new group and the embedding list (new index -> index in G).
    Coordinates are inherited, so cocycle formulas still apply.
    """
    elems = sorted(set(int(x) for x in elements))
    if G.identity not in elems:
        raise GroupValidationError("subset does not contain the identity")
    pos = {x: i for i, x in enumerate(elems)}
    try:
        mul = np.array([[pos[int(G.mul[x, y])] for y in elems] for x in elems], dtype=np.int64)
    except KeyError:
        raise GroupValidationError("subset is not closed under multiplication") from None
    inv = np.array([pos[int(G.inv[x])] for x in elems], dtype=np.int64)
    coords = G.coords[elems] if G.coords is not None else None
    H = FiniteGroup(mul=mul, inv=inv, labels=tuple(G.labels[x] for x in elems),
                    coords=coords, moduli=G.moduli if coords is not None else None)
    return H, elems


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.map[x])


def make_hom(source: FiniteGroup, target: FiniteGroup, images) -> GroupHom:
    images = np.asarray(images, dtype=np.int64)
    if images.shape != (source.order,):
        raise GroupValidationError("need one image per source element")
    if images.min() < 0 or images.max() >= target.order:
        raise GroupValidationError("image out of range")
    lhs = images[source.mul]
    rhs = target.mul[images[:, None], images[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise GroupValidationError(f"not a homomorphism at ({x}, {y})")
    return GroupHom(source, target, images)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, np.zeros(source.order, dtype=np.int64))
