"""The adjoint action groupoid of a finite group and the cocycles induced on it.

Arrows are pairs ``(s, x)`` going from ``x`` to ``s x s^-1``; arrow ``(s, x)``
has index ``s * |G| + x``. Composition ``(s, x)(t, y)`` is defined when
``x = t y t^-1`` and equals ``(s t, y)``.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import NamedTuple

from .cohomology import (
    CocycleCheck,
    EquivariantCochain,
    GroupCochain,
    GroupoidCochain,
    _phase_array,
    groupoid_coboundary,
)
from .groups import FiniteGroup, centralizer, subgroup
from .phases import ONE, Phase, principal_sqrt

__all__ = [
    "ActionGroupoid",
    "action_groupoid",
    "induce_Psi",
    "induce_psi",
    "centralizer_group",
    "centralizer_cocycle",
    "normalize_psi",
    "normalized_centralizer_cocycle",
    "monad_psi_tilde",
    "MonadCertificate",
    "is_equivariant_cocycle",
]


class ActionGroupoid:
    def __init__(self, group: FiniteGroup):
        self.group = group
        self.n = group.order
        self._tuples = {}

    def __repr__(self):
        return f"<ActionGroupoid of {self.group!r}>"

    @property
    def objects(self) -> range:
        return range(self.n)

    @property
    def arrows(self) -> range:
        return range(self.n * self.n)

    def arrow(self, s: int, x: int) -> int:
        """Arrow with group part s and domain x."""
        return s * self.n + x

    def source_element(self, g: int) -> int:
        return g // self.n

    def dom(self, g: int) -> int:
        return g % self.n

    def codom(self, g: int) -> int:
        return self.group.conj(g // self.n, g % self.n)

    def act(self, s: int, x: int) -> int:
        return self.group.conj(s, x)

    def unit(self, x: int) -> int:
        return self.arrow(self.group.identity, x)

    def is_unit(self, g: int) -> bool:
        return g // self.n == self.group.identity

    def is_loop(self, g: int) -> bool:
        return self.dom(g) == self.codom(g)

    def compose(self, g: int, h: int) -> int:
        if self.dom(g) != self.codom(h):
            raise ValueError(f"arrows {g} and {h} are not composable")
        return self.arrow(int(self.group.mul[g // self.n, h // self.n]), h % self.n)

    def inverse(self, g: int) -> int:
        s = g // self.n
        return self.arrow(int(self.group.inv[s]), self.codom(g))

    def composable_tuples(self, k: int) -> list[tuple[int, ...]]:
        """All (g_1, ..., g_k) with dom g_i = codom g_{i+1}."""
        if k not in self._tuples:
            G = self.group
            out = []
            for *ss, x0 in itertools.product(range(self.n), repeat=k + 1):
                x, arrows = x0, []
                for s in ss:
                    x = G.conj(int(G.inv[s]), x)
                    arrows.append(self.arrow(s, x))
                out.append(tuple(arrows))
            self._tuples[k] = sorted(out)
        return self._tuples[k]

    def label(self, g: int) -> str:
        lab = self.group.labels
        return f"({lab[g // self.n]}, {lab[g % self.n]})"


@lru_cache(maxsize=None)
def action_groupoid(G: FiniteGroup) -> ActionGroupoid:
    """Shared groupoid instance per group, so cochains built separately can be compared."""
    return ActionGroupoid(G)


def induce_Psi(omega: GroupCochain) -> EquivariantCochain:
    """Psi[s, t](x) = w(x, s, t) conj w(s, s^-1 x s, t) w(s, t, t^-1 s^-1 x s t)."""
    G, w = omega.group, omega.values
    vals = {}
    for s, t, x in itertools.product(range(G.order), repeat=3):
        y = G.conj(int(G.inv[s]), x)
        z = G.conj(int(G.inv[t]), y)
        vals[(s, t, x)] = w[x, s, t] * w[s, y, t].conjugate() * w[s, t, z]
    return EquivariantCochain(G, 2, vals)


def induce_psi(omega: GroupCochain, groupoid: ActionGroupoid | None = None) -> GroupoidCochain:
    """Groupoid 2-cocycle psi(g1, g2) = w(codom g1, s1, s2) conj w(s1, dom g1, s2) w(s1, s2, dom g2)."""
    G, w = omega.group, omega.values
    Gd = groupoid or action_groupoid(G)
    vals = {}
    for g1, g2 in Gd.composable_tuples(2):
        s1, s2 = Gd.source_element(g1), Gd.source_element(g2)
        vals[(g1, g2)] = w[Gd.codom(g1), s1, s2] * w[s1, Gd.dom(g1), s2].conjugate() * w[s1, s2, Gd.dom(g2)]
    return GroupoidCochain(Gd, 2, vals)


@lru_cache(maxsize=None)
def centralizer_group(G: FiniteGroup, a: int) -> tuple[FiniteGroup, tuple[int, ...]]:
    H, emb = subgroup(G, centralizer(G, a))
    return H, tuple(emb)


def centralizer_cocycle(omega: GroupCochain, a: int) -> GroupCochain:
    """phi_a(s, t) = w(a, s, t) conj w(s, a, t) w(s, t, a) on the centralizer of a."""
    G, w = omega.group, omega.values
    H, emb = centralizer_group(G, a)
    arr = _phase_array((H.order, H.order))
    for i, j in itertools.product(range(H.order), repeat=2):
        s, t = emb[i], emb[j]
        arr[i, j] = w[a, s, t] * w[s, a, t].conjugate() * w[s, t, a]
    return GroupCochain(H, 2, arr)


def normalize_psi(psi: GroupoidCochain, branch=principal_sqrt) -> tuple[GroupoidCochain, dict]:
    """Cohomologous cocycle with psi'(g, g^-1) = 1.

    xi(g) = branch(psi(g, g^-1)) and psi' = psi * d(conj xi). Returns psi' and xi
    (as a dict arrow -> Phase).
    """
    Gd = psi.groupoid
    xi = {g: branch(psi.values[(g, Gd.inverse(g))]) for g in Gd.arrows}
    vals = {}
    for (g1, g2), v in psi.values.items():
        vals[(g1, g2)] = v * xi[g2].conjugate() * xi[Gd.compose(g1, g2)] * xi[g1].conjugate()
    return GroupoidCochain(Gd, 2, vals), xi


def normalized_centralizer_cocycle(omega: GroupCochain, a: int, branch=principal_sqrt) -> GroupCochain:
    """The normalized induced cocycle restricted to the loops at a."""
    G = omega.group
    Gd = action_groupoid(G)
    psi_n, _ = normalize_psi(induce_psi(omega, Gd), branch)
    H, emb = centralizer_group(G, a)
    arr = _phase_array((H.order, H.order))
    for i, j in itertools.product(range(H.order), repeat=2):
        arr[i, j] = psi_n.values[(Gd.arrow(emb[i], a), Gd.arrow(emb[j], a))]
    return GroupCochain(H, 2, arr)


class MonadCertificate(NamedTuple):
    psi_tilde: GroupoidCochain
    xi0: GroupoidCochain
    holds: bool
    witness: tuple | None


def monad_psi_tilde(omega: GroupCochain) -> MonadCertificate:
    """The alternative groupoid cocycle and a check that it is cohomologous to induce_psi.

    psi~(g1, g2) with g1 = (s, s^-1 x s), g2 = (t, (st)^-1 x st):
        w(x, s, t) conj w(t^-1, s^-1, x s t) w(s^-1, x s, t)
        conj w(t^-1 s^-1, s, t) w(t^-1, s^-1, s).
    The certificate 1-cochain is xi0(s, y) = w(s^-1, s, y); the check is
    psi~ = psi * d(conj xi0).
    """
    G, w = omega.group, omega.values
    Gd = action_groupoid(G)
    inv, mul = G.inv, G.mul
    vals = {}
    for g1, g2 in Gd.composable_tuples(2):
        s, t, x = Gd.source_element(g1), Gd.source_element(g2), Gd.codom(g1)
        si, ti = int(inv[s]), int(inv[t])
        xs = int(mul[x, s])
        xst = int(mul[xs, t])
        tisi = int(mul[ti, si])
        vals[(g1, g2)] = (w[x, s, t] * w[ti, si, xst].conjugate() * w[si, xs, t]
                          * w[tisi, s, t].conjugate() * w[ti, si, s])
    psi_t = GroupoidCochain(Gd, 2, vals)
    xi0 = GroupoidCochain(Gd, 1, {(g,): w[int(inv[Gd.source_element(g)]), Gd.source_element(g), Gd.dom(g)]
                                  for g in Gd.arrows})
    psi = induce_psi(omega, Gd)
    ratio = psi * groupoid_coboundary(xi0.conjugate()) * psi_t.conjugate()
    bad = next((k for k, v in ratio.values.items() if not v.is_one()), None)
    return MonadCertificate(psi_t, xi0, bad is None, bad)


def is_equivariant_cocycle(Psi: EquivariantCochain) -> CocycleCheck:
    """Psi[t,u](s^-1 x s) conj Psi[st,u](x) Psi[s,tu](x) conj Psi[s,t](x) == 1 everywhere."""
    G, v = Psi.group, Psi.values
    for s, t, u, x in itertools.product(range(G.order), repeat=4):
        y = G.conj(int(G.inv[s]), x)
        st, tu = int(G.mul[s, t]), int(G.mul[t, u])
        val = v[(t, u, y)] * v[(st, u, x)].conjugate() * v[(s, tu, x)] * v[(s, t, x)].conjugate()
        if not val.is_one():
            return CocycleCheck(False, (s, t, u, x))
    return CocycleCheck(True)
