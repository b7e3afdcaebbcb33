"""JSON payloads for complexes, chain maps and comma data.

Complex: {"p": 2, "lo": 0, "hi": 1, "dims": [1, 1], "d": {"1": [[1]]}}
Map:     {"source": <complex>, "target": <complex>, "components": {"0": [[1]]}}
Comma object:   {"F0": <complex>, "F1": <complex>, "pi": <map>}
Comma morphism: {"source": <object>, "target": <object>, "sigma0": <map>, "sigma1": <map>}

Degree keys are decimal strings and matrices are row-major.  The source
and target of a map may be omitted where the surrounding payload fixes them.
"""

from __future__ import annotations

import json

from .chain import ChainComplex, ChainMap
from .comma import CommaMorphism, CommaObject

SCHEMA_VERSION = 1


class PayloadError(ValueError):
    """Malformed or inconsistent input; the CLI maps it to exit code 2."""


def complex_to_json(X: ChainComplex) -> dict:
    return {"p": X.p, "lo": X.lo, "hi": X.hi, "dims": list(X.dims),
            "d": {str(n): X.d(n).to_list() for n in X.degrees()
                  if X.dim(n) and X.dim(n - 1) and not X.d(n).is_zero()}}


def complex_from_json(data: dict, p: int | None = None) -> ChainComplex:
    try:
        q = int(data["p"])
        lo = int(data.get("lo", 0))
        dims = [int(k) for k in data["dims"]]
        if "hi" in data and int(data["hi"]) != lo + len(dims) - 1:
            raise PayloadError("hi does not match lo and dims")
        d = {int(n): m for n, m in data.get("d", {}).items()}
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, PayloadError):
            raise
        raise PayloadError(f"malformed complex: {e}") from e
    if p is not None and q != p:
        raise PayloadError(f"inconsistent prime: {q} vs {p}")
    try:
        return ChainComplex.build(q, lo, dims, d)
    except (ValueError, AssertionError) as e:
        raise PayloadError(f"invalid complex: {e}") from e


def map_to_json(f: ChainMap, with_ends: bool = True) -> dict:
    out = {"components": {str(n): f.comp(n).to_list() for n in f.source.degrees()
                          if f.source.dim(n) and f.target.dim(n)}}
    if with_ends:
        out = {"source": complex_to_json(f.source), "target": complex_to_json(f.target), **out}
    return out


def map_from_json(data: dict, source: ChainComplex | None = None, target: ChainComplex | None = None,
                  p: int | None = None) -> ChainMap:
    try:
        S = source if source is not None else complex_from_json(data["source"], p)
        T = target if target is not None else complex_from_json(data["target"], p)
        comps = {int(n): m for n, m in data.get("components", {}).items()}
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, PayloadError):
            raise
        raise PayloadError(f"malformed map: {e}") from e
    if S.p != T.p:
        raise PayloadError("source and target live over different primes")
    try:
        return ChainMap.build(S, T, comps)
    except (ValueError, AssertionError) as e:
        raise PayloadError(f"invalid chain map: {e}") from e


def comma_object_to_json(X: CommaObject) -> dict:
    return {"F0": complex_to_json(X.F0), "F1": complex_to_json(X.F1), "pi": map_to_json(X.pi, False)}


def comma_object_from_json(data: dict, C) -> CommaObject:
    try:
        F0 = complex_from_json(data["F0"], C.p)
        F1 = complex_from_json(data["F1"], C.p)
        pi = map_from_json(data["pi"], F0, C.U(F1))
    except KeyError as e:
        raise PayloadError(f"malformed comma object: missing {e}") from e
    try:
        return C.obj(F0, F1, pi)
    except ValueError as e:
        raise PayloadError(str(e)) from e


def comma_morphism_to_json(s: CommaMorphism) -> dict:
    return {"source": comma_object_to_json(s.source), "target": comma_object_to_json(s.target),
            "sigma0": map_to_json(s.sigma0, False), "sigma1": map_to_json(s.sigma1, False)}


def comma_morphism_from_json(data: dict, C) -> CommaMorphism:
    try:
        F = comma_object_from_json(data["source"], C)
        G = comma_object_from_json(data["target"], C)
        s0 = map_from_json(data["sigma0"], F.F0, G.F0)
        s1 = map_from_json(data["sigma1"], F.F1, G.F1)
    except KeyError as e:
        raise PayloadError(f"malformed comma morphism: missing {e}") from e
    try:
        return C.mor(F, G, s0, s1)
    except ValueError as e:
        raise PayloadError(str(e)) from e


def dumps(obj) -> str:
    """Canonical text: sorted keys, fixed separators, so equal payloads are byte-identical."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PayloadError(f"malformed JSON: {e}") from e


def to_json(x) -> dict:
    if isinstance(x, CommaMorphism):
        return {"kind": "comma-morphism", **comma_morphism_to_json(x)}
    if isinstance(x, CommaObject):
        return {"kind": "comma-object", **comma_object_to_json(x)}
    if isinstance(x, ChainMap):
        return {"kind": "map", **map_to_json(x)}
    if isinstance(x, ChainComplex):
        return {"kind": "complex", **complex_to_json(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_json(data: dict, C=None):
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "complex":
        return complex_from_json(data)
    if kind == "map":
        return map_from_json(data)
    if kind in ("comma-object", "comma-morphism"):
        if C is None:
            raise PayloadError("comma payloads need an adjunction instance")
        return (comma_object_from_json if kind == "comma-object" else comma_morphism_from_json)(data, C)
    raise PayloadError(f"unknown payload kind: {kind!r}")
