"""Center dimensions and Wedderburn block sizes of finite-dimensional *-algebras.

The number of simple summands equals the center dimension. Block sizes come
from one generic self-adjoint central element: it acts on the summand
M_d by a scalar, so its eigenvalue multiplicities in the left regular
representation are the squares d^2.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .phases import ONE, Phase
from .tube import TubeAlgebra, fell_blocks, _cx

__all__ = [
    "SpectrumError",
    "WedderburnReport",
    "center_dimension",
    "center_dimension_exact",
    "center_dimension_float",
    "wedderburn",
    "compare_spectra",
]

RANK_TOL = 1e-8
DEFAULT_SEED = 20240


class SpectrumError(RuntimeError):
    pass


@dataclass
class WedderburnReport:
    algebra_dim: int
    center_dim: int
    block_dims: list
    per_class: dict = field(default_factory=dict)
    commutative: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _restrict(T: TubeAlgebra, idx):
    """Sparse product and involution tables on a block of basis indices, reindexed."""
    pos = {i: p for p, i in enumerate(idx)}
    prod = {}
    for (i, j), terms in T.product.items():
        if i in pos and j in pos:
            prod[(pos[i], pos[j])] = [(pos[k], c) for k, c in terms]
    inv = None
    if T.involution is not None:
        inv = [[(pos[k], c) for k, c in T.involution[i]] for i in idx]
    tr = None if T.trace_values is None else [T.trace_values[i] for i in idx]
    return len(idx), prod, inv, tr


def center_dimension_exact(n: int, prod: dict) -> int | None:
    """Center dimension for monomial tables with Phase coefficients, or None if not applicable.

    Each commutator equation then reads c x_b = c' x_b' (or c x_b = 0), so the
    solution space is found by propagating phase ratios through a union-find.
    """
    for terms in prod.values():
        if len(terms) != 1 or not isinstance(terms[0][1], Phase):
            return None
    right = {}   # a -> {k: (b, c)} for e_b e_a = c e_k
    left = {}    # a -> {k: (b, c)} for e_a e_b = c e_k
    for (i, j), ((k, c),) in prod.items():
        if k in right.setdefault(j, {}) or k in left.setdefault(i, {}):
            return None
        right[j][k] = (i, c)
        left[i][k] = (j, c)

    parent = list(range(n))
    rel = [ONE] * n          # x_i = rel[i] * x_parent
    dead = [False] * n

    def find(i):
        path = []
        while parent[i] != i:
            path.append(i)
            i = parent[i]
        root, acc = i, ONE
        for p in reversed(path):
            acc = rel[p] * acc
            rel[p], parent[p] = acc, root
        return root

    def value(i):
        r = find(i)
        return r, (rel[i] if i != r else ONE)

    for a in range(n):
        ks = set(right.get(a, {})) | set(left.get(a, {}))
        for k in ks:
            lhs = right.get(a, {}).get(k)     # x_b e_b e_a contributes c x_b to e_k
            rhs = left.get(a, {}).get(k)
            if lhs is None or rhs is None:
                b, _ = lhs or rhs
                dead[find(b)] = True
                continue
            (b, c), (b2, c2) = lhs, rhs
            # c x_b = c2 x_b2
            rb, pb = value(b)
            rb2, pb2 = value(b2)
            if rb == rb2:
                if c * pb != c2 * pb2:
                    dead[rb] = True
                continue
            # x_b2 = (c / c2) x_b  ->  attach rb2 under rb
            # x_rb2 = x_b2 / pb2 = c pb / (c2 pb2) x_rb
            parent[rb2] = rb
            rel[rb2] = c * pb * (c2 * pb2).conjugate()
            if dead[rb2]:
                dead[rb] = True
    roots = {find(i) for i in range(n)}
    return sum(1 for r in roots if not dead[r])


def _structure(n, prod) -> np.ndarray:
    c = np.zeros((n, n, n), dtype=complex)
    for (i, j), terms in prod.items():
        for k, v in terms:
            c[i, j, k] += _cx(v)
    return c


def _center_basis(c: np.ndarray) -> np.ndarray:
    """Columns spanning {x : x a = a x for all basis a}."""
    n = c.shape[0]
    # (x e_a)_k = sum_b x_b c[b, a, k];  (e_a x)_k = sum_b x_b c[a, b, k]
    M = (np.transpose(c, (1, 2, 0)) - np.transpose(c, (0, 2, 1))).reshape(n * n, n)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    _, sv, vh = np.linalg.svd(M)
    scale = max(1.0, sv[0]) if sv.size else 1.0
    rank = int((sv > RANK_TOL * scale).sum())
    return vh[rank:].conj().T


def center_dimension_float(n: int, prod: dict) -> int:
    return _center_basis(_structure(n, prod)).shape[1]


def center_dimension(T: TubeAlgebra, exact: bool | None = None) -> int:
    """Dimension of the center; exact union-find path for monomial Phase tables."""
    unit = T.unit_indices()
    if not unit:
        raise SpectrumError("algebra has no unit")
    if exact is not False:
        d = center_dimension_exact(T.dim, T.product)
        if d is not None:
            return d
        if exact:
            raise SpectrumError("exact path needs monomial tables with Phase coefficients")
    return center_dimension_float(T.dim, T.product)


def _block_dims(n, prod, inv, tr, rng, reseeds=3):
    c = _structure(n, prod)
    Z = _center_basis(c)
    zdim = Z.shape[1]
    if zdim == n:
        return zdim, [1] * n
    J = np.zeros((n, n), dtype=complex)
    for i, terms in enumerate(inv):
        for k, v in terms:
            J[k, i] += _cx(v)
    trv = np.asarray(tr, dtype=float)
    # Gram form <x, y> = tau(x y^#) = y^* H x
    G = np.einsum("akm,kb,m->ab", c, J, trv)
    H = G.T
    H = (H + H.conj().T) / 2
    R = np.linalg.cholesky(H).conj().T      # H = R^* R
    Rinv = np.linalg.inv(R)
    for _ in range(reseeds + 1):
        coeffs = rng.normal(size=zdim) + 1j * rng.normal(size=zdim)
        z = Z @ coeffs
        z = z + J @ np.conj(z)               # self-adjoint central element
        L = np.einsum("i,ibk->kb", z, c)       # left multiplication by z
        A = R @ L @ Rinv
        A = (A + A.conj().T) / 2
        ev = np.sort(np.linalg.eigvalsh(A))
        spread = max(1.0, float(np.abs(ev).max()))
        clusters, start = [], 0
        for p in range(1, n + 1):
            if p == n or ev[p] - ev[p - 1] > 1e-6 * spread:
                clusters.append(p - start)
                start = p
        dims = [math.isqrt(m) for m in clusters]
        if len(clusters) == zdim and all(d * d == m for d, m in zip(dims, clusters)):
            return zdim, sorted(dims)
    raise SpectrumError("central element stayed degenerate after reseeding; use the exact center path")


def _class_name(T: TubeAlgebra, cls) -> str:
    lab = T.groupoid.group.labels
    return "{" + ", ".join(lab[x] for x in cls) + "}"


def wedderburn(T: TubeAlgebra, seed: int = DEFAULT_SEED) -> WedderburnReport:
    """Block sizes per Fell block (conjugacy class of the source degree) and in total."""
    if T.involution is None or T.trace_values is None:
        raise SpectrumError("Wedderburn analysis needs the involution and trace")
    rng = np.random.default_rng(seed)
    per_class = {}
    all_dims = []
    for cls, idx in fell_blocks(T).items():
        n, prod, inv, tr = _restrict(T, idx)
        exact_c = center_dimension_exact(n, prod)
        zdim, dims = _block_dims(n, prod, inv, tr, rng)
        if exact_c is not None and exact_c != zdim:
            raise SpectrumError(f"exact and numerical center dimensions disagree on block {cls}")
        per_class[_class_name(T, cls)] = {"dim": n, "center_dim": zdim, "block_dims": dims}
        all_dims.extend(dims)
    all_dims.sort()
    center = len(all_dims)
    if sum(d * d for d in all_dims) != T.dim:
        raise SpectrumError("block dimensions do not add up to the algebra dimension")
    return WedderburnReport(T.dim, center, all_dims, per_class, center == T.dim)


def compare_spectra(T1: TubeAlgebra, T2: TubeAlgebra, seed: int = DEFAULT_SEED) -> dict:
    """Center dimensions and block multisets of two algebras, with per-class deltas."""
    r1, r2 = wedderburn(T1, seed), wedderburn(T2, seed)
    deltas = {}
    for key in sorted(set(r1.per_class) | set(r2.per_class)):
        a = r1.per_class.get(key, {"center_dim": 0, "block_dims": []})
        b = r2.per_class.get(key, {"center_dim": 0, "block_dims": []})
        if a["center_dim"] != b["center_dim"] or a["block_dims"] != b["block_dims"]:
            deltas[key] = {"center_dim": [a["center_dim"], b["center_dim"]],
                           "block_dims": [a["block_dims"], b["block_dims"]]}
    return {
        "center_dims": [r1.center_dim, r2.center_dim],
        "equal_center": r1.center_dim == r2.center_dim,
        "equal_blocks": Counter(r1.block_dims) == Counter(r2.block_dims),
        "fewer_irreducibles": r2.center_dim < r1.center_dim,
        "deltas": deltas,
    }
