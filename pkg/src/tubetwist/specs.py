"""JSON descriptions of groups, cocycles, categories and results.

Group elements inside cocycle and cochain specs are integer indices into the
group's element list (identity is 0). Scalars on the circle are written as
exponent strings ``"num/den"``; other complex numbers as ``[re, im]``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .cohomology import (
    GroupCochain,
    GroupoidCochain,
    constant_cochain,
    cochain_from_function,
    cyclic_generator,
    product_generator,
    pullback,
)
from .fusion import SkeletalCategory, pointed_category, skeletal_from_dict, validate
from .groups import FiniteGroup, conjugacy_classes, cyclic_group, make_group, make_hom
from .phases import Phase

__all__ = [
    "SpecError",
    "load_json",
    "builtin_data",
    "parse_group",
    "parse_cocycle",
    "parse_category",
    "parse_groupoid_cochain",
    "scalar_to_json",
    "cochain_to_json",
    "groupoid_cochain_to_json",
    "group_to_json",
    "tube_to_json",
]

BUILTINS = {"ising", "fibonacci", "s3"}


class SpecError(ValueError):
    """Malformed input; the message names the offending path and field."""


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise SpecError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None


def builtin_data(name: str) -> dict:
    if name not in BUILTINS:
        raise SpecError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    return json.loads(resources.files("tubetwist.data").joinpath(f"{name}.json").read_text())


def _need(spec: dict, key: str, where: str):
    if not isinstance(spec, dict):
        raise SpecError(f"{where}: expected an object")
    if key not in spec:
        raise SpecError(f"{where}: missing field '{key}'")
    return spec[key]


def parse_group(spec: dict, where: str = "group") -> FiniteGroup:
    """``cyclic``/``product``/``table`` specs, or ``{"type": "builtin", "name": "s3"}``."""
    if isinstance(spec, dict) and spec.get("type") == "builtin":
        return parse_group(builtin_data(_need(spec, "name", where)), where)
    try:
        return make_group(spec)
    except KeyError as exc:
        raise SpecError(f"{where}: missing field {exc}") from None
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from None


def _index_tuple(key: str, degree: int, order: int, where: str) -> tuple[int, ...]:
    try:
        idx = tuple(int(x) for x in key.split(","))
    except ValueError:
        raise SpecError(f"{where}: bad key {key!r}, expected comma-separated element indices") from None
    if len(idx) != degree or any(not 0 <= x < order for x in idx):
        raise SpecError(f"{where}: key {key!r} is not a {degree}-tuple of element indices")
    return idx


def _phase(value, where: str) -> Phase:
    try:
        return Phase.from_str(str(value))
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{where}: {value!r} is not an exponent 'num/den'") from None


def parse_cocycle(spec: dict, group: FiniteGroup | None = None, where: str = "cocycle") -> GroupCochain:
    """Build a cochain from its spec.

    Types: ``neutral`` {degree}, ``cyclic`` {n, k}, ``product_i`` {i, k},
    ``product_ij`` {i, j}, ``product_ijk`` {i, j, l} (0-based factor indices),
    ``pullback`` {hom: {source, target, map}, inner}, ``pointwise_product``
    {factors}, ``table`` {degree, values: {"a,b,c": "num/den"}}. A ``group``
    field inside the spec takes precedence over the group passed in.
    """
    kind = _need(spec, "type", where)
    if "group" in spec:
        group = parse_group(spec["group"], f"{where}.group")
    try:
        if kind == "cyclic":
            n, k = int(_need(spec, "n", where)), int(spec.get("k", 1))
            if group is None:
                group = cyclic_group(n)
            return cyclic_generator(n, k, group)
        if group is None:
            raise SpecError(f"{where}: no group given (add a 'group' field or pass --group)")
        if kind == "neutral":
            return constant_cochain(group, int(spec.get("degree", 3)))
        if kind in ("product_i", "product_ij", "product_ijk"):
            names = {"product_i": ("i",), "product_ij": ("i", "j"), "product_ijk": ("i", "j", "l")}[kind]
            factors = spec.get("factors") or [int(_need(spec, nm, where)) for nm in names]
            return product_generator(group, *(int(f) for f in factors), k=int(spec.get("k", 1)))
        if kind == "pullback":
            hom = _need(spec, "hom", where)
            src = parse_group(_need(hom, "source", f"{where}.hom"), f"{where}.hom.source") if "source" in hom else group
            tgt = parse_group(_need(hom, "target", f"{where}.hom"), f"{where}.hom.target")
            h = make_hom(src, tgt, _need(hom, "map", f"{where}.hom"))
            inner = parse_cocycle(_need(spec, "inner", where), tgt, f"{where}.inner")
            return pullback(h, inner)
        if kind == "pointwise_product":
            parts = [parse_cocycle(f, group, f"{where}.factors[{i}]")
                     for i, f in enumerate(_need(spec, "factors", where))]
            if not parts:
                raise SpecError(f"{where}.factors: empty list")
            out = parts[0]
            for p in parts[1:]:
                out = out * p
            return out
        if kind == "table":
            deg = int(spec.get("degree", 3))
            vals = {_index_tuple(key, deg, group.order, f"{where}.values"): _phase(v, f"{where}.values[{key}]")
                    for key, v in _need(spec, "values", where).items()}
            return cochain_from_function(group, deg, lambda *xs: vals.get(xs, Phase(0)))
    except SpecError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise SpecError(f"{where}: {exc}") from None
    raise SpecError(f"{where}: unknown cocycle type {kind!r}")


def parse_category(spec: dict, where: str = "category") -> SkeletalCategory:
    """``pointed`` {group, cocycle}, ``skeletal`` {...data...} or ``builtin`` {name}."""
    kind = _need(spec, "type", where)
    if kind == "builtin":
        name = _need(spec, "name", where)
        return parse_category({"type": "skeletal", **builtin_data(name)}, f"{where}[{name}]")
    if kind == "pointed":
        G = parse_group(_need(spec, "group", where), f"{where}.group")
        coc = spec.get("cocycle", {"type": "neutral"})
        return pointed_category(parse_cocycle(coc, G, f"{where}.cocycle"))
    if kind == "skeletal":
        G = parse_group(_need(spec, "grading_group", where), f"{where}.grading_group")
        try:
            C = skeletal_from_dict(spec, G)
            validate(C)
        except ValueError as exc:
            raise SpecError(f"{where}: {exc}") from None
        return C
    raise SpecError(f"{where}: unknown category type {kind!r}")


def parse_groupoid_cochain(spec: dict, groupoid, where: str = "psi") -> GroupoidCochain:
    """Values keyed ``"s1,x1;s2,x2"``: arrow i is (group element s_i, domain x_i).

    Every composable tuple must be present.
    """
    deg = int(spec.get("degree", 2))
    raw = _need(spec, "values", where)
    vals = {}
    n = groupoid.n
    for key, v in raw.items():
        arrows = []
        for part in key.split(";"):
            s, x = _index_tuple(part, 2, n, f"{where}.values")
            arrows.append(groupoid.arrow(s, x))
        vals[tuple(arrows)] = _phase(v, f"{where}.values[{key}]")
    expected = set(groupoid.composable_tuples(deg))
    missing = expected - set(vals)
    if missing:
        k = min(missing)
        raise SpecError(f"{where}.values: missing entry for {_arrow_key(groupoid, k)}")
    extra = set(vals) - expected
    if extra:
        raise SpecError(f"{where}.values: entry {_arrow_key(groupoid, min(extra))} is not composable")
    return GroupoidCochain(groupoid, deg, vals)


# -- output -----------------------------------------------------------------------------

def scalar_to_json(c):
    if isinstance(c, Phase):
        return str(c)
    c = complex(c)
    return [round(c.real, 15) + 0.0, round(c.imag, 15) + 0.0]


def group_to_json(G: FiniteGroup) -> dict:
    return {
        "order": G.order,
        "labels": list(G.labels),
        "abelian": G.is_abelian,
        "exponent": G.exponent,
        "conjugacy_classes": [[G.labels[x] for x in c] for c in conjugacy_classes(G)],
    }


def cochain_to_json(c: GroupCochain) -> dict:
    return {
        "type": "table",
        "degree": c.degree,
        "values": {",".join(str(int(i)) for i in idx): str(v) for idx, v in c.items() if not v.is_one()},
    }


def _arrow_key(Gd, arrows) -> str:
    return ";".join(f"{Gd.source_element(g)},{Gd.dom(g)}" for g in arrows)


def groupoid_cochain_to_json(c: GroupoidCochain) -> dict:
    Gd = c.groupoid
    return {
        "degree": c.degree,
        "values": {_arrow_key(Gd, k): str(v) for k, v in sorted(c.values.items())},
    }


def tube_to_json(T) -> dict:
    C = T.category
    names = C.simples if C is not None else None

    def lab(x):
        return names[x] if names else x

    return {
        "dim": T.dim,
        "exact": T.exact,
        "basis": [{"s": lab(b.s), "source": lab(b.j), "target": lab(b.k), "channel": lab(b.u)} for b in T.basis],
        "product": [[i, j, k, scalar_to_json(c)] for (i, j), terms in sorted(T.product.items()) for k, c in terms],
        "involution": None if T.involution is None else
        [[i, k, scalar_to_json(c)] for i, terms in enumerate(T.involution) for k, c in terms],
        "trace": T.trace_values,
        "degree": [[T.groupoid.source_element(g), T.groupoid.dom(g)] for g in T.degree],
    }
