"""Torus-valued cochains on finite groups and on finite groupoids.

Coefficients are the circle with trivial group action, written
multiplicatively: the coboundary of an n-cochain ``c`` is

    (dc)(x_1, ..., x_{n+1}) = c(x_2, ..., x_{n+1})
                              * prod_i c(..., x_i x_{i+1}, ...)^((-1)^i)
                              * c(x_1, ..., x_n)^((-1)^(n+1)).

Group cochains are stored densely as object arrays of :class:`Phase`.
Groupoid cochains are dictionaries over composable tuples of arrow indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .groups import FiniteGroup, GroupHom, cyclic_group
from .phases import ONE, Phase

__all__ = [
    "GroupCochain",
    "GroupoidCochain",
    "EquivariantCochain",
    "CocycleCheck",
    "constant_cochain",
    "cochain_from_function",
    "coboundary",
    "groupoid_coboundary",
    "equivariant_coboundary",
    "is_cocycle",
    "cyclic_generator",
    "product_generator",
    "pullback",
    "solve_coboundary",
    "solve_mod",
    "to_equivariant",
    "from_equivariant",
    "residue_identity_check",
]


class CocycleCheck(NamedTuple):
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _phase_array(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(ONE)
    return arr


@dataclass(eq=False)
class GroupCochain:
    group: FiniteGroup
    degree: int
    values: np.ndarray

    def __call__(self, *xs: int) -> Phase:
        return self.values[xs]

    def __mul__(self, other: GroupCochain) -> GroupCochain:
        self._check_compatible(other)
        return GroupCochain(self.group, self.degree, self.values * other.values)

    def conjugate(self) -> GroupCochain:
        out = _phase_array(self.values.shape)
        for idx, v in np.ndenumerate(self.values):
            out[idx] = v.conjugate()
        return GroupCochain(self.group, self.degree, out)

    def __truediv__(self, other: GroupCochain) -> GroupCochain:
        return self * other.conjugate()

    def __eq__(self, other):
        if not isinstance(other, GroupCochain):
            return NotImplemented
        return (self.group is other.group and self.degree == other.degree
                and bool((self.values == other.values).all()))

    __hash__ = None

    def _check_compatible(self, other):
        if self.group is not other.group or self.degree != other.degree:
            raise ValueError("cochains live on different groups or degrees")

    def items(self):
        return np.ndenumerate(self.values)

    def is_neutral(self) -> bool:
        return all(v.is_one() for _, v in self.items())

    def is_normalized(self) -> bool:
        e = self.group.identity
        return all(v.is_one() for idx, v in self.items() if e in idx)

    def denominator(self) -> int:
        return math.lcm(*(v.den for _, v in self.items())) if self.values.size else 1

    def restrict(self, H: FiniteGroup, embedding) -> GroupCochain:
        """Restriction along a subgroup embedding (new index -> old index)."""
        emb = list(embedding)
        out = _phase_array((H.order,) * self.degree)
        for idx in itertools.product(range(H.order), repeat=self.degree):
            out[idx] = self.values[tuple(emb[i] for i in idx)]
        return GroupCochain(H, self.degree, out)


def constant_cochain(G: FiniteGroup, degree: int, value: Phase = ONE) -> GroupCochain:
    arr = _phase_array((G.order,) * degree)
    if value != ONE:
        arr.fill(value)
    return GroupCochain(G, degree, arr)


def cochain_from_function(G: FiniteGroup, degree: int, fn) -> GroupCochain:
    arr = _phase_array((G.order,) * degree)
    for idx in itertools.product(range(G.order), repeat=degree):
        arr[idx] = fn(*idx)
    return GroupCochain(G, degree, arr)


def _alternating_terms(n: int):
    """Signs of the n+2 faces of the coboundary of an n-cochain."""
    return [(-1) ** i for i in range(n + 2)]


def coboundary(c: GroupCochain) -> GroupCochain:
    G, n = c.group, c.degree
    mul = G.mul
    out = _phase_array((G.order,) * (n + 1))
    vals = c.values
    for xs in itertools.product(range(G.order), repeat=n + 1):
        acc = vals[xs[1:]]
        for i in range(n):
            merged = xs[:i] + (int(mul[xs[i], xs[i + 1]]),) + xs[i + 2:]
            v = vals[merged]
            acc = acc * (v if i % 2 else v.conjugate())
        last = vals[xs[:n]]
        acc = acc * (last if n % 2 else last.conjugate())
        out[xs] = acc
    return GroupCochain(G, n + 1, out)


def is_cocycle(c) -> CocycleCheck:
    """Whether the coboundary is identically 1; on failure reports the first bad tuple."""
    if isinstance(c, GroupoidCochain):
        d = groupoid_coboundary(c)
        for key, v in d.values.items():
            if not v.is_one():
                return CocycleCheck(False, key)
        return CocycleCheck(True)
    d = coboundary(c)
    for idx, v in d.items():
        if not v.is_one():
            return CocycleCheck(False, tuple(int(i) for i in idx))
    return CocycleCheck(True)


# -- generators ---------------------------------------------------------------

def cyclic_generator(n: int, k: int, group: FiniteGroup | None = None) -> GroupCochain:
    """omega^k(a, b, c) = exp(2 pi i k floor((a+b)/n) c / n) on Z/n, canonical residues."""
    if not 0 <= k < n:
        raise ValueError(f"k must satisfy 0 <= k < n, got k={k}, n={n}")
    G = group if group is not None else cyclic_group(n)
    if G.order != n:
        raise ValueError("group order does not match n")
    return cochain_from_function(G, 3, lambda a, b, c: Phase(k * ((a + b) // n) * c, n))


def product_generator(G: FiniteGroup, *factors: int, k: int = 1) -> GroupCochain:
    """Standard 3-cocycles on a product of cyclic groups.

    Factor indices are 0-based. One index ``i`` gives the cyclic cocycle
    ``omega^k`` pulled back from factor i; two distinct indices ``i, j`` give
    phi_ij; three distinct indices ``i, j, l`` give phi_ijl.
    """
    if G.coords is None:
        raise ValueError("product generators need a group with cyclic coordinates")
    nf = len(G.moduli)
    if not 1 <= len(factors) <= 3:
        raise ValueError("give one, two or three factor indices")
    if any(not 0 <= f < nf for f in factors):
        raise ValueError(f"factor index out of range for {nf} factors")
    if len(set(factors)) != len(factors):
        raise ValueError("factor indices must be distinct")
    X, mod = G.coords, G.moduli
    if len(factors) == 1:
        (i,) = factors
        n = mod[i]
        if not 0 <= k < n:
            raise ValueError("k out of range")
        fn = lambda a, b, c: Phase(k * ((X[a, i] + X[b, i]) // n) * X[c, i], n)
    elif len(factors) == 2:
        i, j = factors
        fn = lambda a, b, c: Phase(int((X[a, i] + X[b, i]) // mod[i]) * int(X[c, j]), mod[j])
    else:
        i, j, l = factors
        g = math.gcd(mod[i], mod[j], mod[l])
        fn = lambda a, b, c: Phase(int(X[a, i]) * int(X[b, j]) * int(X[c, l]), g)
    return cochain_from_function(G, 3, lambda a, b, c: fn(a, b, c))


def pullback(h: GroupHom, c: GroupCochain) -> GroupCochain:
    if c.group is not h.target:
        raise ValueError("cochain does not live on the target of the homomorphism")
    m = [int(x) for x in h.map]
    return cochain_from_function(h.source, c.degree, lambda *xs: c.values[tuple(m[x] for x in xs)])


# -- coboundary solver ----------------------------------------------------------

def _egcd(a: int, b: int):
    if a and b % a == 0:
        # keep the pivot row/column in place when it already divides
        return a, 1, 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def solve_mod(A, b, D: int):
    """A particular solution of ``A x = b (mod D)``, or None.

    Diagonalises A with unimodular row and column operations taken mod D
    (a Smith-type reduction without the divisibility chain, which solving
    does not need). Free variables are set to 0.
    """
    A = np.array(A, dtype=np.int64) % D
    b = np.array(b, dtype=np.int64) % D
    m, n = A.shape
    V = np.eye(n, dtype=np.int64)
    t = 0
    while t < min(m, n):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        vals = sub[nz[:, 0], nz[:, 1]]
        key = np.array([math.gcd(int(v), D) for v in vals]) * D + vals
        i, j = nz[int(np.argmin(key))] + t
        A[[t, i]] = A[[i, t]]
        b[[t, i]] = b[[i, t]]
        A[:, [t, j]] = A[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]
        while True:
            for r in np.nonzero(A[t + 1:, t])[0] + t + 1:
                p, q = int(A[t, t]), int(A[r, t])
                g, x, y = _egcd(p, q)
                rt, rr = A[t].copy(), A[r].copy()
                A[t] = (x * rt + y * rr) % D
                A[r] = ((-q // g) * rt + (p // g) * rr) % D
                bt, br = int(b[t]), int(b[r])
                b[t] = (x * bt + y * br) % D
                b[r] = ((-q // g) * bt + (p // g) * br) % D
            cols = np.nonzero(A[t, t + 1:])[0] + t + 1
            if len(cols) == 0:
                break
            for cidx in cols:
                p, q = int(A[t, t]), int(A[t, cidx])
                g, x, y = _egcd(p, q)
                ct, cc = A[:, t].copy(), A[:, cidx].copy()
                A[:, t] = (x * ct + y * cc) % D
                A[:, cidx] = ((-q // g) * ct + (p // g) * cc) % D
                vt, vc = V[:, t].copy(), V[:, cidx].copy()
                V[:, t] = (x * vt + y * vc) % D
                V[:, cidx] = ((-q // g) * vt + (p // g) * vc) % D
            if not A[t + 1:, t].any():
                break
        t += 1
    y = np.zeros(n, dtype=np.int64)
    for s in range(m):
        d = int(A[s, s]) if s < min(t, n) else 0
        rhs = int(b[s])
        if d == 0:
            if rhs:
                return None
            continue
        g = math.gcd(d, D)
        if rhs % g:
            return None
        mod = D // g
        y[s] = (rhs // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
    return (V @ y) % D


def _coboundary_matrix(G: FiniteGroup, n: int):
    """Integer matrix of the exponent-level coboundary from (n-1)- to n-cochains."""
    order = G.order
    rows = list(itertools.product(range(order), repeat=n))
    cols = {idx: i for i, idx in enumerate(itertools.product(range(order), repeat=n - 1))}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, xs in enumerate(rows):
        A[r, cols[xs[1:]]] += 1
        for i in range(n - 1):
            merged = xs[:i] + (int(G.mul[xs[i], xs[i + 1]]),) + xs[i + 2:]
            A[r, cols[merged]] += (-1) ** (i + 1)
        A[r, cols[xs[:n - 1]]] += (-1) ** n
    return rows, list(cols), A


def solve_coboundary(target: GroupCochain, denominator: int | None = None) -> GroupCochain | None:
    """Find eta with d(eta) = target, or None if there is none at the searched denominator.

    The search denominator defaults to lcm(target denominators) * exp(G) and
    is doubled once before giving up.
    """
    n = target.degree
    if n < 1:
        raise ValueError("target must have degree >= 1")
    check = is_cocycle(target)
    if not check:
        raise ValueError(f"target is not a cocycle (fails at {check.witness})")
    G = target.group
    base = denominator or target.denominator() * G.exponent
    rows, cols, A = _coboundary_matrix(G, n)
    for D in (base, 2 * base):
        b = [target.values[xs].num * (D // target.values[xs].den) if D % target.values[xs].den == 0 else None
             for xs in rows]
        if any(v is None for v in b):
            continue
        x = solve_mod(A, b, D)
        if x is None:
            continue
        eta = _phase_array((G.order,) * (n - 1))
        for idx, val in zip(cols, x):
            eta[idx] = Phase(int(val), D)
        eta = GroupCochain(G, n - 1, eta)
        if coboundary(eta) != target:
            raise AssertionError("coboundary solver returned a wrong solution")
        return eta
    return None


# -- groupoid cochains ----------------------------------------------------------

@dataclass(eq=False)
class GroupoidCochain:
    """Values on composable n-tuples (g_1, ..., g_n), dom(g_i) = codom(g_{i+1}).

    Degree 0 cochains are keyed by 1-tuples of objects.
    """

    groupoid: object
    degree: int
    values: dict

    def __call__(self, *gs: int) -> Phase:
        return self.values[gs]

    def __mul__(self, other: GroupoidCochain) -> GroupoidCochain:
        if other.groupoid is not self.groupoid or other.degree != self.degree:
            raise ValueError("cochains live on different groupoids or degrees")
        return GroupoidCochain(self.groupoid, self.degree,
                               {k: v * other.values[k] for k, v in self.values.items()})

    def conjugate(self) -> GroupoidCochain:
        return GroupoidCochain(self.groupoid, self.degree, {k: v.conjugate() for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, GroupoidCochain):
            return NotImplemented
        return (self.groupoid is other.groupoid and self.degree == other.degree
                and self.values == other.values)

    __hash__ = None

    def is_neutral(self) -> bool:
        return all(v.is_one() for v in self.values.values())

    def is_normalized(self) -> bool:
        if self.degree == 0:
            return True
        G = self.groupoid
        return all(v.is_one() for k, v in self.values.items() if any(G.is_unit(g) for g in k))


def groupoid_coboundary(c: GroupoidCochain) -> GroupoidCochain:
    G, n = c.groupoid, c.degree
    vals = c.values
    out = {}
    if n == 0:
        for g in G.arrows:
            out[(g,)] = vals[(G.dom(g),)] * vals[(G.codom(g),)].conjugate()
        return GroupoidCochain(G, 1, out)
    for gs in G.composable_tuples(n + 1):
        acc = vals[gs[1:]]
        for i in range(n):
            merged = gs[:i] + (G.compose(gs[i], gs[i + 1]),) + gs[i + 2:]
            v = vals[merged]
            acc = acc * (v if i % 2 else v.conjugate())
        last = vals[gs[:n]]
        acc = acc * (last if n % 2 else last.conjugate())
        out[gs] = acc
    return GroupoidCochain(G, n + 1, out)


# -- equivariant picture ----------------------------------------------------------

@dataclass(eq=False)
class EquivariantCochain:
    """Map Gamma^n -> Map(X, T); values keyed by (g_1, ..., g_n, x)."""

    group: FiniteGroup
    degree: int
    values: dict

    def __call__(self, *args: int) -> Phase:
        return self.values[args]

    def __eq__(self, other):
        if not isinstance(other, EquivariantCochain):
            return NotImplemented
        return self.group is other.group and self.degree == other.degree and self.values == other.values

    __hash__ = None


def to_equivariant(c: GroupoidCochain) -> EquivariantCochain:
    """psi~[g_1..g_n](x_0) = psi((g_1, x_1), ..., (g_n, x_n)) with x_i = g_i^-1 . x_{i-1}."""
    G = c.groupoid
    grp = G.group
    out = {}
    for key in itertools.product(range(grp.order), repeat=c.degree + 1):
        *gammas, x = key
        if c.degree == 0:
            out[key] = c.values[(x,)]
            continue
        arrows = []
        for g in gammas:
            x = G.act(int(grp.inv[g]), x)
            arrows.append(G.arrow(g, x))
        out[key] = c.values[tuple(arrows)]
    return EquivariantCochain(grp, c.degree, out)


def from_equivariant(e: EquivariantCochain, groupoid) -> GroupoidCochain:
    G = groupoid
    out = {}
    if e.degree == 0:
        for x in G.objects:
            out[(x,)] = e.values[(x,)]
        return GroupoidCochain(G, 0, out)
    for gs in G.composable_tuples(e.degree):
        x0 = G.codom(gs[0])
        out[gs] = e.values[tuple(G.source_element(g) for g in gs) + (x0,)]
    return GroupoidCochain(G, e.degree, out)


def equivariant_coboundary(e: EquivariantCochain, act) -> EquivariantCochain:
    """Coboundary in C^*(Gamma; Map(X, T)) with (g f)(x) = f(g^-1 . x).

    ``act(g, x)`` is the action of the group on the set X = group elements.
    """
    grp, n = e.group, e.degree
    vals = e.values
    out = {}
    for key in itertools.product(range(grp.order), repeat=n + 2):
        *gs, x = key
        acc = vals[tuple(gs[1:]) + (act(int(grp.inv[gs[0]]), x),)]
        for i in range(n):
            merged = tuple(gs[:i]) + (int(grp.mul[gs[i], gs[i + 1]]),) + tuple(gs[i + 2:])
            v = vals[merged + (x,)]
            acc = acc * (v if i % 2 else v.conjugate())
        last = vals[tuple(gs[:n]) + (x,)]
        acc = acc * (last if n % 2 else last.conjugate())
        out[key] = acc
    return EquivariantCochain(grp, n + 1, out)


def residue_identity_check(n: int) -> bool:
    """r(s) + r(t) - r(s+t) == n (floor((s+t)/n) - floor(s/n) - floor(t/n)) on -2n <= s, t < 2n."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = range(-2 * n, 2 * n)
    return all(
        (s % n) + (t % n) - ((s + t) % n) == n * ((s + t) // n - s // n - t // n)
        for s in rng for t in rng
    )
