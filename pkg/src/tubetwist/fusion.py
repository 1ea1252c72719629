"""Multiplicity-free skeletal fusion categories given by F-symbols.

Conventions. For each admissible quadruple (a, b, c; d) the two bases of
C(d, a b c) are

    L_u = (V^{ab}_u x 1) V^{uc}_d        (u in a x b, d in u x c)
    R_v = (1 x V^{bc}_v) V^{av}_d        (v in b x c, d in a x v)

with isometric trivalent vertices, and the associator acts by

    alpha_{a,b,c} L_u = sum_v F[a, b, c, d, u, v] R_v.

``Finv[a, b, c, d, v, u]`` is the coefficient of L_u in alpha^-1 R_v.
Duality data: R_S = r_S V^{S* S}_1; the partner coefficient for
R-bar_S = rbar_S V^{S S*}_1 is derived from the zig-zag equation.

Pointed categories keep every scalar as an exact :class:`Phase`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cohomology import GroupCochain
from .groups import FiniteGroup, GroupHom, identity_hom
from .phases import ONE, Phase

__all__ = [
    "CategoryValidationError",
    "SkeletalCategory",
    "CheckReport",
    "RigidityReport",
    "pointed_category",
    "twist",
    "check_pentagon",
    "check_grading",
    "check_rigidity",
    "check_fusion_rules",
    "validate",
    "skeletal_from_dict",
]


class CategoryValidationError(ValueError):
    pass


class CheckReport(NamedTuple):
    ok: bool
    max_defect: float
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


class RigidityReport(NamedTuple):
    status: str            # "ok", "failed" or "unavailable"
    max_defect: float
    witness: object = None

    def __bool__(self):
        return self.status != "failed"


def _conj(x):
    return x.conjugate()


def _is_zero(x) -> bool:
    return not isinstance(x, Phase) and x == 0


def _close(x, y, tol: float) -> bool:
    if isinstance(x, Phase) and isinstance(y, Phase):
        return x == y
    return abs(complex(x) - complex(y)) <= tol


def _defect(x, y) -> float:
    if isinstance(x, Phase) and isinstance(y, Phase):
        return 0.0 if x == y else abs(x.to_complex() - y.to_complex())
    return abs(complex(x) - complex(y))


@dataclass(eq=False)
class SkeletalCategory:
    simples: tuple[str, ...]
    dual: tuple[int, ...]
    N: np.ndarray                       # N[a, b, c] in {0, 1}
    grading_group: FiniteGroup
    grading: tuple[int, ...]
    F: dict                             # (a, b, c, d, u, v) -> scalar
    qdim: tuple[float, ...] | None = None
    duality: tuple | None = None        # r_S
    name: str = "category"
    blocks: dict = field(default_factory=dict, repr=False)
    Finv: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = len(self.simples)
        self.N = np.asarray(self.N, dtype=np.int64)
        if self.N.shape != (n, n, n):
            raise CategoryValidationError("fusion array must be n x n x n")
        if self.N.max(initial=0) > 1 or self.N.min(initial=0) < 0:
            raise CategoryValidationError("only multiplicity-free fusion is supported")
        self._channels = {(a, b): tuple(int(c) for c in np.nonzero(self.N[a, b])[0])
                          for a in range(n) for b in range(n)}
        self._build_blocks()

    # -- structure ---------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def unit(self) -> int:
        return 0

    @property
    def exact(self) -> bool:
        """True when all scalars are exact phases (pointed data)."""
        return (all(isinstance(v, Phase) for v in self.F.values())
                and self.duality is not None and all(isinstance(r, Phase) for r in self.duality))

    def channels(self, a: int, b: int) -> tuple[int, ...]:
        return self._channels[(a, b)]

    def index(self, label: str) -> int:
        return self.simples.index(label)

    def _build_blocks(self):
        n = self.rank
        F = self.F
        for a, b, c in itertools.product(range(n), repeat=3):
            ab = self.channels(a, b)
            bc = self.channels(b, c)
            for d in range(n):
                us = [u for u in ab if self.N[u, c, d]]
                vs = [v for v in bc if self.N[a, v, d]]
                if not us and not vs:
                    continue
                if len(us) != len(vs):
                    raise CategoryValidationError(
                        f"fusion rules are not associative at {self._lab(a, b, c, d)}")
                if len(us) == 1:
                    key = (a, b, c, d, us[0], vs[0])
                    val = F.setdefault(key, ONE)
                    inv = val.conjugate() if isinstance(val, Phase) else 1 / val
                    self.Finv[(a, b, c, d, vs[0], us[0])] = inv
                    self.blocks[(a, b, c, d)] = (tuple(us), tuple(vs))
                    continue
                missing = [(u, v) for u in us for v in vs if (a, b, c, d, u, v) not in F]
                if missing:
                    u, v = missing[0]
                    raise CategoryValidationError(
                        f"F-symbol block {self._lab(a, b, c, d)} is {len(us)}x{len(us)} and must be "
                        f"given in full; missing entry u={self.simples[u]}, v={self.simples[v]}")
                M = np.array([[complex(F[(a, b, c, d, u, v)]) for v in vs] for u in us])
                if abs(np.linalg.det(M)) < 1e-12:
                    raise CategoryValidationError(f"F-symbol block {self._lab(a, b, c, d)} is singular")
                Minv = np.linalg.inv(M)
                for i, v in enumerate(vs):
                    for j, u in enumerate(us):
                        self.Finv[(a, b, c, d, v, u)] = complex(Minv[i, j])
                self.blocks[(a, b, c, d)] = (tuple(us), tuple(vs))
        extra = [k for k in F if k[:4] not in self.blocks or k[4] not in self.blocks[k[:4]][0]
                 or k[5] not in self.blocks[k[:4]][1]]
        if extra:
            raise CategoryValidationError(f"F-symbol given for inadmissible labels {self._lab(*extra[0])}")

    def _lab(self, *idx) -> str:
        return "(" + ", ".join(self.simples[i] for i in idx) + ")"

    def f(self, a, b, c, d, u, v):
        """F-symbol, 0 for inadmissible labels."""
        return self.F.get((a, b, c, d, u, v), 0)

    def finv(self, a, b, c, d, v, u):
        return self.Finv.get((a, b, c, d, v, u), 0)

    def degree(self, a: int) -> int:
        return self.grading[a]

    def dual_coeff(self, s: int):
        return None if self.duality is None else self.duality[s]

    def dual_partner_coeff(self, s: int):
        """rbar_S fixed by the zig-zag (R^* x 1) alpha^-1 (1 x Rbar) = 1 on S*."""
        r = self.duality[s]
        sb = self.dual[s]
        fi = self.finv(sb, s, sb, sb, 0, 0)
        if isinstance(r, Phase) and isinstance(fi, Phase):
            return (r.conjugate() * fi).conjugate()
        return 1 / (complex(r).conjugate() * complex(fi))

    def __repr__(self):
        return f"<SkeletalCategory {self.name}: {', '.join(self.simples)}>"


# -- constructors -----------------------------------------------------------------

def pointed_category(omega: GroupCochain, name: str | None = None) -> SkeletalCategory:
    """Vec_G^omega: simples are group elements and F[a,b,c] = omega(a, b, c)."""
    G = omega.group
    n = G.order
    N = np.zeros((n, n, n), dtype=np.int64)
    F = {}
    for a, b in itertools.product(range(n), repeat=2):
        N[a, b, int(G.mul[a, b])] = 1
    for a, b, c in itertools.product(range(n), repeat=3):
        ab, bc = int(G.mul[a, b]), int(G.mul[b, c])
        F[(a, b, c, int(G.mul[ab, c]), ab, bc)] = omega.values[a, b, c]
    return SkeletalCategory(
        simples=tuple(G.labels), dual=tuple(int(x) for x in G.inv), N=N,
        grading_group=G, grading=tuple(range(n)), F=F,
        qdim=tuple(1.0 for _ in range(n)), duality=tuple(ONE for _ in range(n)),
        name=name or f"Vec_{G!r}^omega",
    )


def twist(C: SkeletalCategory, omega: GroupCochain) -> SkeletalCategory:
    """Rescale F[a, b, c, ...] by omega(deg a, deg b, deg c); duality coefficients r_S are kept."""
    if omega.group is not C.grading_group:
        raise ValueError("cocycle must live on the grading group of the category")
    if omega.degree != 3:
        raise ValueError("twisting needs a 3-cocycle")
    g = C.grading
    w = omega.values
    F = {k: v * w[g[k[0]], g[k[1]], g[k[2]]] for k, v in C.F.items()}
    return SkeletalCategory(
        simples=C.simples, dual=C.dual, N=C.N.copy(), grading_group=C.grading_group,
        grading=C.grading, F=F, qdim=C.qdim, duality=C.duality, name=f"{C.name}^omega",
    )


# -- checks -----------------------------------------------------------------------

def check_fusion_rules(C: SkeletalCategory) -> CheckReport:
    n, N = C.rank, C.N
    eye = np.eye(n, dtype=np.int64)
    if not ((N[0] == eye).all() and (N[:, 0, :] == eye).all()):
        return CheckReport(False, 1.0, ("unit",))
    for a in range(n):
        b = C.dual[a]
        if N[a, b, 0] != 1 or N[b, a, 0] != 1 or C.dual[b] != a:
            return CheckReport(False, 1.0, ("dual", C.simples[a]))
    lhs = np.einsum("abu,ucd->abcd", N, N)
    rhs = np.einsum("bcv,avd->abcd", N, N)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return CheckReport(False, 1.0, tuple(C.simples[i] for i in bad[0]))
    return CheckReport(True, 0.0)


def check_pentagon(C: SkeletalCategory, tol: float = 1e-9) -> CheckReport:
    """F[f,c,d,e,g,l] F[a,b,l,e,f,k] = sum_h F[a,b,c,g,f,h] F[a,h,d,e,g,k] F[b,c,d,k,h,l]."""
    n = C.rank
    worst, witness = 0.0, None
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for f in C.channels(a, b):
            for g in C.channels(f, c):
                for e in C.channels(g, d):
                    for l in C.channels(c, d):
                        for k in C.channels(b, l):
                            if not C.N[a, k, e]:
                                continue
                            lhs = C.f(f, c, d, e, g, l)
                            lhs = 0 if _is_zero(lhs) else lhs * C.f(a, b, l, e, f, k)
                            terms = []
                            for h in C.channels(b, c):
                                t = C.f(a, b, c, g, f, h)
                                if _is_zero(t):
                                    continue
                                t2 = C.f(a, h, d, e, g, k)
                                t3 = C.f(b, c, d, k, h, l)
                                if _is_zero(t2) or _is_zero(t3):
                                    continue
                                terms.append(t * t2 * t3)
                            if len(terms) == 1 and isinstance(terms[0], Phase) and isinstance(lhs, Phase):
                                rhs = terms[0]
                            else:
                                rhs = sum(complex(t) for t in terms)
                            dft = _defect(lhs if not _is_zero(lhs) else 0, rhs)
                            if dft > worst:
                                worst, witness = dft, (a, b, c, d, e, f, g, k, l)
    ok = worst <= (0.0 if C.exact else tol)
    return CheckReport(ok, worst, None if ok else tuple(C.simples[i] for i in witness))


def check_grading(C: SkeletalCategory) -> CheckReport:
    G, g = C.grading_group, C.grading
    if g[0] != G.identity:
        return CheckReport(False, 1.0, (C.simples[0],))
    for a, b in itertools.product(range(C.rank), repeat=2):
        for c in C.channels(a, b):
            if g[c] != int(G.mul[g[a], g[b]]):
                return CheckReport(False, 1.0, (C.simples[a], C.simples[b], C.simples[c]))
    return CheckReport(True, 0.0)


def check_rigidity(C: SkeletalCategory, tol: float = 1e-9) -> RigidityReport:
    """Both zig-zag equations and standardness |r_S|^2 = |rbar_S|^2 = d(S)."""
    if C.qdim is None or C.duality is None:
        return RigidityReport("unavailable", 0.0, "quantum dimensions or duality coefficients not supplied")
    worst, witness = 0.0, None
    for s in range(C.rank):
        sb = C.dual[s]
        r, rb = C.duality[s], C.dual_partner_coeff(s)
        # (Rbar^* x 1) alpha^-1 (1 x R) = 1 on S
        z1 = complex(r) * complex(rb).conjugate() * complex(C.finv(s, sb, s, s, 0, 0))
        # (R^* x 1) alpha^-1 (1 x Rbar) = 1 on S*, holds by construction of rbar
        z2 = complex(rb) * complex(r).conjugate() * complex(C.finv(sb, s, sb, sb, 0, 0))
        d = C.qdim[s]
        for val in (abs(z1 - 1), abs(z2 - 1), abs(abs(complex(r)) ** 2 - d), abs(abs(complex(rb)) ** 2 - d)):
            if val > worst:
                worst, witness = val, C.simples[s]
    ok = worst <= tol
    return RigidityReport("ok" if ok else "failed", worst, None if ok else witness)


def validate(C: SkeletalCategory, tol: float = 1e-9) -> None:
    """Raise CategoryValidationError naming the first failed law."""
    for name, rep in (("fusion rules", check_fusion_rules(C)), ("grading", check_grading(C)),
                      ("pentagon", check_pentagon(C, tol))):
        if not rep.ok:
            raise CategoryValidationError(f"{name} check failed at {rep.witness} (defect {rep.max_defect:.3g})")
    rig = check_rigidity(C, tol)
    if rig.status == "failed":
        raise CategoryValidationError(f"rigidity check failed at {rig.witness} (defect {rig.max_defect:.3g})")


# -- JSON ---------------------------------------------------------------------------

def _scalar(entry):
    if isinstance(entry, dict):
        if "phase" in entry:
            return Phase.from_str(str(entry["phase"]))
        return complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    if isinstance(entry, str):
        return Phase.from_str(entry)
    return complex(entry)


def skeletal_from_dict(spec: dict, group: FiniteGroup) -> SkeletalCategory:
    """Category from its JSON description; ``group`` is the parsed grading group.

    Keys: ``simples`` (unit first), ``dual`` (label -> label), ``fusion``
    ("a,b" -> list of labels; products with the unit are implicit),
    ``grading`` (label -> group element index or label), ``F`` (list of
    ``{"labels": [a,b,c,d,u,v], "re": .., "im": ..}`` or ``{"labels": .., "phase": "p/q"}``),
    optional ``qdim`` and ``duality_coeff`` (label -> number or {re, im}).
    """
    try:
        simples = tuple(spec["simples"])
        idx = {s: i for i, s in enumerate(simples)}
        n = len(simples)
        dual_map = spec.get("dual", {})
        dual = tuple(idx[dual_map.get(s, s)] for s in simples)
        N = np.zeros((n, n, n), dtype=np.int64)
        for a in range(n):
            N[0, a, a] = N[a, 0, a] = 1
        for key, outs in spec.get("fusion", {}).items():
            a, b = (idx[x.strip()] for x in key.split(","))
            if a == 0 or b == 0:
                continue
            for c in outs:
                N[a, b, idx[c]] = 1
        glabels = {lab: i for i, lab in enumerate(group.labels)}
        grading = []
        for s in simples:
            g = spec.get("grading", {}).get(s, 0)
            grading.append(glabels[g] if isinstance(g, str) else int(g))
        F = {}
        for entry in spec.get("F", []):
            key = tuple(idx[x] for x in entry["labels"])
            if len(key) != 6:
                raise CategoryValidationError("F entries need six labels a,b,c,d,u,v")
            F[key] = _scalar(entry)
        qdim = tuple(float(spec["qdim"][s]) for s in simples) if "qdim" in spec else None
        duality = None
        if "duality_coeff" in spec:
            duality = tuple(_scalar_real_or_complex(spec["duality_coeff"][s]) for s in simples)
    except KeyError as exc:
        raise CategoryValidationError(f"unknown or missing label/key {exc}") from None
    return SkeletalCategory(simples=simples, dual=dual, N=N, grading_group=group, grading=tuple(grading),
                            F=F, qdim=qdim, duality=duality, name=spec.get("name", "category"))


def _scalar_real_or_complex(entry):
    if isinstance(entry, (int, float)):
        return complex(entry)
    return _scalar(entry)
