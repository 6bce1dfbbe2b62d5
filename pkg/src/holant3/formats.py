"""Structured-text (JSON) formats for every external interface.

Rationals travel as "p/q" or "p" strings, never decimals; quadratic
extensions as {"base", "coeff", "radicand"} objects; signatures as
{"arity": n, "weights": [...]}. Grids list vertices, edges as
[vid, slot, vid, slot] quadruples and dangling ports; planar graphs list
per-vertex rotations as [edge index, end] pairs; embedded grids add a
rotation (slot order) per vertex. Every emitted value parses back to an
identical exact value.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import FormatError, ParseError
from .exact import QuadExt, Scalar, frac
from .grid import SignatureGrid
from .matchgates import EmbeddedGrid
from .planar import PlanarMultigraph
from .signatures import EQ3, SymSig, Tensor


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"rational expected, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {text!r}: {e}") from e


def format_rational(q: Fraction) -> str:
    q = frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar):
    if isinstance(x, QuadExt) and x.coeff != 0:
        return {"base": format_rational(x.base), "coeff": format_rational(x.coeff),
                "radicand": format_rational(x.rad)}
    return format_rational(frac(x))


def parse_scalar(obj) -> Scalar:
    if isinstance(obj, dict):
        try:
            return QuadExt(parse_rational(obj["base"]), parse_rational(obj["coeff"]),
                           parse_rational(obj["radicand"]))
        except KeyError as e:
            raise ParseError(f"quadratic extension needs base/coeff/radicand: {obj!r}") from e
    return parse_rational(obj)


def parse_signature(obj) -> SymSig:
    """Accepts '[1,2,3,4]', '1,2,3,4', or {"arity": n, "weights": [...]}."""
    if isinstance(obj, SymSig):
        return obj
    if isinstance(obj, dict):
        weights = [parse_rational(w) for w in obj.get("weights", [])]
        arity = obj.get("arity", len(weights) - 1)
        if arity != len(weights) - 1:
            raise FormatError(f"arity {arity} disagrees with {len(weights)} weights")
        return SymSig(weights)
    if isinstance(obj, (list, tuple)):
        return SymSig([parse_rational(w) for w in obj])
    if isinstance(obj, str):
        text = obj.strip()
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1]
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise ParseError(f"empty signature {obj!r}")
        return SymSig([parse_rational(p) for p in parts])
    raise ParseError(f"cannot read signature from {obj!r}")


def format_signature(s: SymSig) -> dict:
    return {"arity": s.arity, "weights": [format_scalar(v) for v in s.values]}


def format_tensor(t: Tensor) -> dict:
    return {"arity": t.arity, "entries": [format_scalar(v) for v in t.entries]}


_SIG_ALIASES = {"EQ3": EQ3, "=3": EQ3}


def _parse_vertex_sig(obj):
    if isinstance(obj, str) and obj in _SIG_ALIASES:
        return _SIG_ALIASES[obj]
    if isinstance(obj, dict) and "entries" in obj:
        entries = [parse_scalar(v) for v in obj["entries"]]
        return Tensor(obj.get("arity", len(entries).bit_length() - 1), entries)
    return parse_signature(obj)


def parse_grid(obj) -> SignatureGrid:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad grid JSON: {e}") from e
    g = SignatureGrid()
    try:
        for vspec in obj["vertices"]:
            vid = vspec["id"]
            sig = _parse_vertex_sig(vspec["sig"])
            side = vspec.get("side", "L")
            if side == "mixed":
                polarity = tuple(vspec["polarities"])
            else:
                polarity = side
            g.add_vertex(_vid(vid), sig, polarity)
        for quad in obj.get("edges", []):
            va, sa, vb, sb = quad
            g.add_edge((_vid(va), sa), (_vid(vb), sb))
        for pair in obj.get("dangling", []):
            vid, slot = pair
            g.mark_dangling((_vid(vid), slot))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad grid structure: {e}") from e
    g.validate()
    return g


def _vid(v):
    # JSON renders tuple ids as lists; fold them back to hashable tuples
    if isinstance(v, list):
        return tuple(_vid(x) for x in v)
    return v


def format_grid(g: SignatureGrid) -> dict:
    verts = []
    for vid, v in g.vertices.items():
        sides = set(v.polarities)
        if sides == {"L"}:
            side_obj = {"side": "L"}
        elif sides == {"R"}:
            side_obj = {"side": "R"}
        else:
            side_obj = {"side": "mixed", "polarities": list(v.polarities)}
        sig = v.sig
        if sig == EQ3:
            sig_obj = "EQ3"
        elif isinstance(sig, SymSig):
            sig_obj = format_signature(sig)
        elif isinstance(sig, Tensor):
            sig_obj = format_tensor(sig)
        else:
            raise FormatError(f"vertex {vid!r} carries unserializable signature {sig!r}")
        verts.append({"id": vid, "sig": sig_obj, **side_obj})
    return {
        "vertices": verts,
        "edges": [[a[0], a[1], b[0], b[1]] for a, b in g.edges],
        "dangling": [[p[0], p[1]] for p in g.dangling],
    }


def parse_planar_graph(obj) -> PlanarMultigraph:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad planar graph JSON: {e}") from e
    try:
        edges = [(e[0], e[1], parse_rational(e[2])) for e in obj["edges"]]
        vertices = [v["id"] for v in obj["vertices"]]
        rotation = {v["id"]: [tuple(end) for end in v["rotation"]] for v in obj["vertices"]}
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"bad planar graph structure: {e}") from e
    return PlanarMultigraph(vertices, edges, rotation)


def format_planar_graph(g: PlanarMultigraph) -> dict:
    return {
        "vertices": [{"id": v, "rotation": [list(end) for end in g.rotation.get(v, [])]}
                     for v in g.vertices],
        "edges": [[u, v, format_rational(w)] for u, v, w in g.edges],
    }


def parse_embedded_grid(obj) -> EmbeddedGrid:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad embedded grid JSON: {e}") from e
    grid = parse_grid(obj)
    rot_spec = obj.get("rotations")
    if rot_spec is None:
        raise ParseError("embedded grid needs a 'rotations' list of [id, [slots...]]")
    rotations = {}
    try:
        for vid, slots in rot_spec:
            rotations[_vid(vid)] = list(slots)
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad rotations: {e}") from e
    return EmbeddedGrid(grid, rotations)


def format_embedded_grid(inst: EmbeddedGrid) -> dict:
    out = format_grid(inst.grid)
    out["rotations"] = [[vid, list(slots)] for vid, slots in inst.rotations.items()]
    return out


def parse_hypergraph(obj):
    """{"ground": [...], "sets": [[a,b,c], ...]} -> list of sets."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad hypergraph JSON: {e}") from e
    try:
        sets = [list(s) for s in obj["sets"]]
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad hypergraph structure: {e}") from e
    ground = obj.get("ground")
    if ground is not None:
        listed = {x for s in sets for x in s}
        if set(ground) != listed:
            raise FormatError("ground set disagrees with set contents")
    return sets
