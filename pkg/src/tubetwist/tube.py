"""Tube algebras of skeletal fusion categories and their groupoid-cocycle twists.

Basis. For simples S, X_j, X_k and a channel u with u in S x X_j and
u in X_k x S, the basis vector is the morphism

    f = V^{k S}_u (V^{S j}_u)^*  in  C(S X_j, X_k S).

It is written ``(s, j, k, u)``: ``j`` is the source and ``k`` the target.
Its degree in the adjoint action groupoid of the grading group is the arrow
``(deg S, deg X_j)``.

Structure constants, obtained by composing tree morphisms with F-moves:

    (s, k, m, u1) . (t, j, k, u2)
        = sum_{U in s x t, u} F[s,t,j,u,U,u2] Finv[s,k,t,u,u2,u1] F[m,s,t,u,u1,U]
          (U, j, m, u),

    (s, j, k, u)^# = sum_{u'} rbar_s conj(r_s) Finv[k,s,s*,k,1,u]
                     Finv[s*,u,s*,u',k,j] Finv[s*,s,j,j,u,1]  (s*, k, j, u'),

extended conjugate-linearly; the trace is tau((s, j, k, u)) = d(X_j) if s is
the unit and 0 otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cohomology import GroupCochain, GroupoidCochain, is_cocycle
from .fusion import SkeletalCategory, check_rigidity
from .groupoid import ActionGroupoid, action_groupoid, induce_psi
from .groups import conjugacy_classes
from .phases import ONE, Phase

__all__ = [
    "TubeBasisElement",
    "TubeAlgebra",
    "InvolutionUnavailable",
    "LawReport",
    "TwistReport",
    "TransportCertificate",
    "build_tube",
    "multiply",
    "involute",
    "trace",
    "fell_blocks",
    "twist_fell_bundle",
    "verify_twist_theorem",
    "corner_unit_check",
    "coboundary_transport",
    "check_associativity",
    "check_involution",
    "check_trace",
    "check_gram",
    "check_sector_orthogonality",
    "check_fell_grading",
    "check_all_laws",
    "compare_tables",
]

ZERO_TOL = 1e-12


class InvolutionUnavailable(RuntimeError):
    pass


class TubeBasisElement(NamedTuple):
    s: int
    j: int      # source
    k: int      # target
    u: int      # channel


class LawReport(NamedTuple):
    ok: bool
    max_defect: float
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok


class TwistReport(NamedTuple):
    passed: bool
    max_discrepancy: float
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


# -- scalar helpers: Phase for exact data, complex otherwise -----------------------

def _nonzero(c) -> bool:
    return isinstance(c, Phase) or abs(c) > ZERO_TOL


def _cx(c) -> complex:
    return c.to_complex() if isinstance(c, Phase) else complex(c)


def _diff(a, b) -> float:
    if a is None:
        a = 0
    if b is None:
        b = 0
    if isinstance(a, Phase) and isinstance(b, Phase):
        return 0.0 if a == b else abs(a.to_complex() - b.to_complex())
    return abs(_cx(a) - _cx(b))


def _combine(terms, exact: bool) -> dict:
    """Collect (index, coeff) terms; single exact terms stay exact."""
    out: dict = {}
    for i, c in terms:
        if i in out:
            out[i] = _cx(out[i]) + _cx(c)
        else:
            out[i] = c
    return {i: c for i, c in out.items() if _nonzero(c)}


def _sparse_diff(x: dict, y: dict) -> tuple[float, int | None]:
    worst, where = 0.0, None
    for i in set(x) | set(y):
        d = _diff(x.get(i), y.get(i))
        if d > worst:
            worst, where = d, i
    return worst, where


@dataclass(eq=False)
class TubeAlgebra:
    category: SkeletalCategory | None
    basis: list
    product: dict                      # (i, j) -> list[(k, coeff)]
    involution: list | None            # i -> list[(k, coeff)], conjugate-linear
    trace_values: list | None          # i -> float
    degree: list                       # i -> arrow index in the action groupoid
    groupoid: ActionGroupoid
    exact: bool
    note: str = ""
    _right: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {b: i for i, b in enumerate(self.basis)}
        right: dict = {}
        for (i, j) in self.product:
            right.setdefault(i, []).append(j)
        self._right = {i: sorted(js) for i, js in right.items()}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"<TubeAlgebra dim={self.dim} exact={self.exact}>"

    @property
    def involution_available(self) -> bool:
        return self.involution is not None

    def partners(self, i: int) -> list[int]:
        """Basis indices j with e_i . e_j possibly nonzero."""
        return self._right.get(i, [])

    def basis_product(self, i: int, j: int) -> list:
        return self.product.get((i, j), [])

    def unit_indices(self) -> list[int]:
        C = self.category
        unit = 0 if C is None else C.unit
        return [i for i, b in enumerate(self.basis) if b.s == unit]

    def unit_vector(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.unit_indices()] = 1
        return v

    def sector(self, i: int) -> int:
        return self.basis[i].s

    def structure_tensor(self) -> np.ndarray:
        """c[i, j, k] with e_i . e_j = sum_k c[i, j, k] e_k."""
        c = np.zeros((self.dim,) * 3, dtype=complex)
        for (i, j), terms in self.product.items():
            for k, v in terms:
                c[i, j, k] += _cx(v)
        return c

    def involution_matrix(self) -> np.ndarray:
        """J with e_i^# = sum_k J[k, i] e_k; a^# = J conj(a)."""
        if self.involution is None:
            raise InvolutionUnavailable(self.note or "involution unavailable")
        J = np.zeros((self.dim, self.dim), dtype=complex)
        for i, terms in enumerate(self.involution):
            for k, v in terms:
                J[k, i] += _cx(v)
        return J

    def label(self, i: int) -> str:
        b = self.basis[i]
        if self.category is None:
            return str(tuple(b))
        sm = self.category.simples
        return f"({sm[b.s]}; {sm[b.j]} -> {sm[b.k]}; {sm[b.u]})"

    # sparse products on basis combinations

    def mul_sparse(self, x: dict, y: dict) -> dict:
        terms = []
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product.get((i, j), ()):
                    terms.append((k, a * b * c))
        return _combine(terms, self.exact)

    def inv_sparse(self, x: dict) -> dict:
        if self.involution is None:
            raise InvolutionUnavailable(self.note or "involution unavailable")
        terms = []
        for i, a in x.items():
            ac = a.conjugate()
            for k, c in self.involution[i]:
                terms.append((k, ac * c))
        return _combine(terms, self.exact)


def _basis(C: SkeletalCategory) -> list[TubeBasisElement]:
    out = []
    n = C.rank
    for s, j, k in itertools.product(range(n), repeat=3):
        for u in C.channels(s, j):
            if C.N[k, s, u]:
                out.append(TubeBasisElement(s, j, k, u))
    return out


def build_tube(C: SkeletalCategory) -> TubeAlgebra:
    basis = _basis(C)
    index = {b: i for i, b in enumerate(basis)}
    exact = C.exact
    Gd = action_groupoid(C.grading_group)
    deg = [Gd.arrow(C.grading[b.s], C.grading[b.j]) for b in basis]

    by_target: dict = {}
    for i, b in enumerate(basis):
        by_target.setdefault(b.k, []).append(i)
    product = {}
    for ix, (s, k, m, u1) in enumerate(basis):
        for iy in by_target.get(k, ()):
            t, j, _, u2 = basis[iy]
            terms = []
            for U in C.channels(s, t):
                for u in C.channels(U, j):
                    if not C.N[m, U, u]:
                        continue
                    a = C.f(s, t, j, u, U, u2)
                    b = C.finv(s, k, t, u, u2, u1)
                    c = C.f(m, s, t, u, u1, U)
                    if not (_nonzero(a) and _nonzero(b) and _nonzero(c)):
                        continue
                    terms.append((index[TubeBasisElement(U, j, m, u)], a * b * c))
            terms = _combine(terms, exact)
            if terms:
                product[(ix, iy)] = sorted(terms.items())

    rig = check_rigidity(C)
    involution, note = None, ""
    if rig.status == "ok":
        involution = []
        for s, j, k, u in basis:
            sb = C.dual[s]
            pref = C.dual_partner_coeff(s) * C.duality[s].conjugate()
            f1 = C.finv(k, s, sb, k, 0, u)
            f3 = C.finv(sb, s, j, j, u, 0)
            terms = []
            for up in C.channels(sb, k):
                if not C.N[j, sb, up]:
                    continue
                f2 = C.finv(sb, u, sb, up, k, j)
                if not (_nonzero(f1) and _nonzero(f2) and _nonzero(f3)):
                    continue
                terms.append((index[TubeBasisElement(sb, k, j, up)], pref * f1 * f2 * f3))
            involution.append(sorted(_combine(terms, exact).items()))
    else:
        note = f"involution unavailable: rigidity {rig.status}"
    trace_values = None
    if C.qdim is not None:
        trace_values = [float(C.qdim[b.j]) if b.s == C.unit else 0.0 for b in basis]
    return TubeAlgebra(C, basis, product, involution, trace_values, deg, Gd, exact, note)


# -- vector operations -----------------------------------------------------------------

def _as_vector(T: TubeAlgebra, a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.shape != (T.dim,):
        raise ValueError(f"expected a vector of length {T.dim}, got shape {a.shape}")
    return a


def multiply(T: TubeAlgebra, a, b) -> np.ndarray:
    a, b = _as_vector(T, a), _as_vector(T, b)
    out = np.zeros(T.dim, dtype=complex)
    for (i, j), terms in T.product.items():
        w = a[i] * b[j]
        if w:
            for k, c in terms:
                out[k] += w * _cx(c)
    return out


def involute(T: TubeAlgebra, a) -> np.ndarray:
    return T.involution_matrix() @ np.conj(_as_vector(T, a))


def trace(T: TubeAlgebra, a) -> complex:
    if T.trace_values is None:
        raise InvolutionUnavailable("trace needs quantum dimensions")
    return complex(np.dot(T.trace_values, _as_vector(T, a)))


def fell_blocks(T: TubeAlgebra) -> dict:
    """Basis indices grouped by the conjugacy class of the source degree.

    Keys are the classes (tuples of group elements); values are index lists.
    """
    G = T.groupoid.group
    cls_of = {}
    for cls in conjugacy_classes(G):
        for x in cls:
            cls_of[x] = tuple(cls)
    blocks: dict = {tuple(c): [] for c in conjugacy_classes(G)}
    for i, g in enumerate(T.degree):
        blocks[cls_of[T.groupoid.dom(g)]].append(i)
    return {c: idx for c, idx in blocks.items() if idx}


# -- twisting -----------------------------------------------------------------------------

def twist_fell_bundle(T: TubeAlgebra, psi: GroupoidCochain, verify: bool = True) -> TubeAlgebra:
    """a^psi b^psi = psi(deg a, deg b) (ab)^psi and (a^psi)^* = conj psi(g^-1, g) (a^*)^psi."""
    Gd = T.groupoid
    if psi.groupoid is not Gd or psi.degree != 2:
        raise ValueError("psi must be a 2-cochain on the algebra's grading groupoid")
    check = is_cocycle(psi)
    if not check:
        raise ValueError(f"psi is not a cocycle (fails at {check.witness})")
    pv = psi.values
    deg = T.degree
    product = {(i, j): [(k, c * pv[(deg[i], deg[j])]) for k, c in terms]
               for (i, j), terms in T.product.items()}
    involution = None
    if T.involution is not None:
        involution = []
        for i, terms in enumerate(T.involution):
            g = deg[i]
            f = pv[(Gd.inverse(g), g)].conjugate()
            involution.append([(k, c * f) for k, c in terms])
    exact = T.exact and all(isinstance(v, Phase) for v in pv.values())
    out = TubeAlgebra(T.category, list(T.basis), product, involution, T.trace_values, list(deg), Gd, exact,
                      note="twisted Fell bundle")
    if verify:
        for rep in (check_associativity(out), check_involution(out) if involution is not None else None):
            if rep is not None and not rep.ok:
                # a cocycle can be associative but incompatible with the involution
                raise ValueError(f"twisted algebra fails a law at {rep.witness}")
    return out


def compare_tables(A: TubeAlgebra, B: TubeAlgebra) -> TwistReport:
    """Entrywise comparison of product and involution tables on a common basis."""
    if A.basis != B.basis:
        return TwistReport(False, float("inf"), ("basis",))
    worst, witness = 0.0, None
    for key in set(A.product) | set(B.product):
        d, k = _sparse_diff(dict(A.product.get(key, ())), dict(B.product.get(key, ())))
        if d > worst:
            worst, witness = d, ("product", key[0], key[1], k)
    if (A.involution is None) != (B.involution is None):
        return TwistReport(False, float("inf"), ("involution availability",))
    if A.involution is not None:
        for i in range(A.dim):
            d, k = _sparse_diff(dict(A.involution[i]), dict(B.involution[i]))
            if d > worst:
                worst, witness = d, ("involution", i, k)
    tol = 0.0 if (A.exact and B.exact) else 1e-9
    return TwistReport(worst <= tol, worst, None if worst <= tol else witness)


def verify_twist_theorem(C: SkeletalCategory, omega: GroupCochain, psi: GroupoidCochain | None = None) -> TwistReport:
    """Compare T(C^omega) built directly with the twist of T(C) by psi (default: induced from omega)."""
    direct = build_tube(_twisted_category(C, omega))
    base = build_tube(C)
    psi = psi if psi is not None else induce_psi(omega, base.groupoid)
    twisted = twist_fell_bundle(base, psi, verify=False)
    return compare_tables(direct, twisted)


def _twisted_category(C, omega):
    from .fusion import twist
    return twist(C, omega)


# -- corner identity and coboundary transport ---------------------------------------------

def _is_pointed(T: TubeAlgebra) -> bool:
    C = T.category
    return C is not None and all(len(C.channels(a, b)) == 1 for a in range(C.rank) for b in range(C.rank))


def corner_unit_check(T: TubeAlgebra) -> LawReport:
    """e_g^# . e_g = e_(e, dom g) for every arrow g (pointed algebras)."""
    if not _is_pointed(T):
        raise ValueError("corner_unit_check needs a pointed category")
    units = {T.basis[i].j: i for i in T.unit_indices()}
    worst, witness = 0.0, None
    for i, b in enumerate(T.basis):
        lhs = T.mul_sparse(T.inv_sparse({i: ONE}), {i: ONE})
        d, _ = _sparse_diff(lhs, {units[b.j]: ONE})
        if d > worst:
            worst, witness = d, (b.s, b.j)
    tol = 0.0 if T.exact else 1e-9
    return LawReport(worst <= tol, worst, None if worst <= tol else witness, T.dim)


class TransportCertificate(NamedTuple):
    ok: bool
    a: int
    rescaling: dict          # group element s -> Phase multiplying e_(s, a)
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def coboundary_transport(twisted: TubeAlgebra, untwisted: TubeAlgebra, a: int, eta: GroupCochain,
                         xi: dict | None = None) -> TransportCertificate:
    """Certify that the loop block at ``a`` of ``twisted`` matches that of ``untwisted``.

    ``eta`` is a 1-cochain on the centralizer of ``a``. Without ``xi`` it must
    satisfy d(eta) = phi_a, the ratio of the two block product tables. With
    ``xi`` (the normalising 1-cochain of the induced cocycle, arrow -> Phase)
    eta solves the normalized cocycle phi'_a instead. Basis vectors e_(s, a)
    are rescaled by conj(eta(s) xi(s, a)); the check is exact equality of
    product and involution tables on the block.
    """
    Gd = twisted.groupoid
    H = eta.group
    G = Gd.group
    emb = _embedding(G, H, a)
    idx = {}
    for i, g in enumerate(twisted.degree):
        if Gd.dom(g) == a and Gd.codom(g) == a:
            idx[Gd.source_element(g)] = i
    if sorted(idx) != sorted(emb):
        raise ValueError("eta does not live on the centralizer of a")
    lam = {}
    for h, s in enumerate(emb):
        val = eta.values[h]
        if xi is not None:
            val = val * xi[Gd.arrow(s, a)]
        lam[s] = val.conjugate()
    # d(eta xi) must reproduce the ratio of the two tables
    for s, t in itertools.product(emb, repeat=2):
        i, j = idx[s], idx[t]
        tw, un = dict(twisted.basis_product(i, j)), dict(untwisted.basis_product(i, j))
        if set(tw) != set(un) or len(tw) != 1:
            return TransportCertificate(False, a, lam, ("support", s, t))
        (k,) = tw
        ratio = _ratio(tw[k], un[k])
        u = G.m(s, t)
        expected = lam[s].conjugate() * lam[t].conjugate() * lam[u]
        if ratio != expected:
            raise ValueError(f"d(eta) does not match the block cocycle at ({s}, {t})")
    # rescaled twisted tables versus untwisted tables
    for s, t in itertools.product(emb, repeat=2):
        i, j = idx[s], idx[t]
        (k, c), = twisted.basis_product(i, j)
        u = Gd.source_element(twisted.degree[k])
        (k2, c2), = untwisted.basis_product(i, j)
        scaled = lam[s] * lam[t] * c * lam[u].conjugate()
        if k != k2 or _diff(scaled, c2) > 0:
            return TransportCertificate(False, a, lam, ("product", s, t))
    if twisted.involution is not None:
        for s in emb:
            i = idx[s]
            (k, c), = twisted.involution[i]
            u = Gd.source_element(twisted.degree[k])
            (k2, c2), = untwisted.involution[i]
            scaled = lam[s].conjugate() * c * lam[u].conjugate()
            if k != k2 or _diff(scaled, c2) > 0:
                return TransportCertificate(False, a, lam, ("involution", s))
    return TransportCertificate(True, a, lam)


def _ratio(x, y):
    if isinstance(x, Phase) and isinstance(y, Phase):
        return x * y.conjugate()
    raise ValueError("coboundary transport needs exact (pointed) tables")


def _embedding(G, H, a):
    from .groupoid import centralizer_group
    H0, emb = centralizer_group(G, a)
    if H0 is not H:
        raise ValueError("eta must be defined on centralizer_group(G, a)")
    return list(emb)


# -- law checks ------------------------------------------------------------------------------

def _tol(T, tol):
    return 0.0 if T.exact else tol


def check_associativity(T: TubeAlgebra, samples: int | None = None, seed: int = 0, tol: float = 1e-9) -> LawReport:
    """(e_i e_j) e_k = e_i (e_j e_k); exhaustive unless ``samples`` is given."""
    n = T.dim
    if samples is None:
        # every triple where either bracketing can be nonzero
        left_of: dict = {}
        for i, l in T.product:
            left_of.setdefault(l, []).append(i)
        cand = set()
        for (i, j), terms in T.product.items():
            for l, _ in terms:
                cand.update((i, j, k) for k in T.partners(l))
        for (j, k), terms in T.product.items():
            for l, _ in terms:
                cand.update((i, j, k) for i in left_of.get(l, ()))
        triples = sorted(cand)
    else:
        rng = np.random.default_rng(seed)
        triples = (tuple(int(x) for x in rng.integers(0, n, 3)) for _ in range(samples))
    worst, witness, count = 0.0, None, 0
    for i, j, k in triples:
        count += 1
        left = T.mul_sparse(T.mul_sparse({i: ONE}, {j: ONE}), {k: ONE})
        right = T.mul_sparse({i: ONE}, T.mul_sparse({j: ONE}, {k: ONE}))
        d, _ = _sparse_diff(left, right)
        if d > worst:
            worst, witness = d, (i, j, k)
    ok = worst <= _tol(T, tol)
    return LawReport(ok, worst, None if ok else witness, count)


def check_involution(T: TubeAlgebra, tol: float = 1e-9) -> LawReport:
    """(x^#)^# = x and (e_i e_j)^# = e_j^# e_i^# on all basis elements and pairs."""
    worst, witness = 0.0, None
    for i in range(T.dim):
        d, _ = _sparse_diff(T.inv_sparse(T.inv_sparse({i: ONE})), {i: ONE})
        if d > worst:
            worst, witness = d, ("involutive", i)
    for i in range(T.dim):
        for j in range(T.dim):
            lhs = T.inv_sparse(T.mul_sparse({i: ONE}, {j: ONE}))
            rhs = T.mul_sparse(T.inv_sparse({j: ONE}), T.inv_sparse({i: ONE}))
            d, _ = _sparse_diff(lhs, rhs)
            if d > worst:
                worst, witness = d, ("antimultiplicative", i, j)
    ok = worst <= _tol(T, tol)
    return LawReport(ok, worst, None if ok else witness, T.dim * (T.dim + 1))


def _gram(T: TubeAlgebra) -> np.ndarray:
    tr = np.asarray(T.trace_values)
    c = T.structure_tensor()
    J = T.involution_matrix()
    # <e_a, e_b> = tau(e_a . e_b^#),  e_b^# = sum_k J[k, b] e_k
    prod = np.einsum("akm,kb,m->ab", c, J, tr)
    return prod


def check_trace(T: TubeAlgebra, tol: float = 1e-9) -> LawReport:
    """tau(e_i e_j) = tau(e_j e_i) for all basis pairs, and tau(1) > 0."""
    if T.trace_values is None:
        raise InvolutionUnavailable("trace needs quantum dimensions")
    tr = np.asarray(T.trace_values)
    M = np.einsum("ijk,k->ij", T.structure_tensor(), tr)
    D = np.abs(M - M.T)
    worst = float(D.max(initial=0.0))
    w = tuple(int(x) for x in np.unravel_index(int(D.argmax()), D.shape)) if D.size else None
    ok = worst <= tol and float(tr @ T.unit_vector().real) > 0
    return LawReport(ok, worst, None if ok else w, T.dim ** 2)


def check_gram(T: TubeAlgebra, tol: float = 1e-9) -> LawReport:
    """<a, b> = tau(a b^#) is Hermitian and positive definite."""
    Gm = _gram(T)
    herm = float(np.abs(Gm - Gm.conj().T).max(initial=0.0))
    eig = np.linalg.eigvalsh((Gm + Gm.conj().T) / 2)
    least = float(eig.min()) if eig.size else 1.0
    ok = herm <= tol and least > tol
    return LawReport(ok, max(herm, max(0.0, -least)), None if ok else ("least eigenvalue", least), T.dim ** 2)


def check_sector_orthogonality(T: TubeAlgebra, tol: float = 1e-9) -> LawReport:
    Gm = _gram(T)
    worst, witness = 0.0, None
    for a in range(T.dim):
        for b in range(T.dim):
            if T.basis[a].s != T.basis[b].s and abs(Gm[a, b]) > worst:
                worst, witness = abs(Gm[a, b]), (a, b)
    ok = worst <= tol
    return LawReport(ok, float(worst), None if ok else witness, T.dim ** 2)


def check_fell_grading(T: TubeAlgebra) -> LawReport:
    """Products live on composable degrees with composite degree; # inverts degrees."""
    Gd = T.groupoid
    deg = T.degree
    for (i, j), terms in T.product.items():
        g, h = deg[i], deg[j]
        if Gd.dom(g) != Gd.codom(h):
            return LawReport(False, 1.0, ("not composable", i, j))
        gh = Gd.compose(g, h)
        for k, _ in terms:
            if deg[k] != gh:
                return LawReport(False, 1.0, ("wrong degree", i, j, k))
    if T.involution is not None:
        for i, terms in enumerate(T.involution):
            for k, _ in terms:
                if deg[k] != Gd.inverse(deg[i]):
                    return LawReport(False, 1.0, ("involution degree", i, k))
    return LawReport(True, 0.0, None, len(T.product))


def check_all_laws(T: TubeAlgebra, samples: int | None = None, seed: int = 0, tol: float = 1e-9) -> dict:
    out = {
        "associativity": check_associativity(T, samples, seed, tol),
        "fell_grading": check_fell_grading(T),
    }
    if T.involution is not None:
        out["involution"] = check_involution(T, tol)
        if T.trace_values is not None:
            out["trace"] = check_trace(T, tol)
            out["gram"] = check_gram(T, tol)
            out["sector_orthogonality"] = check_sector_orthogonality(T, tol)
    return out
