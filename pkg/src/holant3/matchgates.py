"""Matchgates and the holographic reduction to planar matching counts.

The Hadamard basis change turns the one-or-two cover signature
[0,1,1,0] into (1/4)[3,0,-1,0] and ternary equality into [2,0,2,0];
both are realizable as weighted planar matchgates:

* gate A: K4 on {u, t0, t1, t2} with all six weights -1, externals
  (t0, t1, t2), scalar 1/4  ->  (1/4)[3,0,-1,0]
* gate B: star u-t_i with weight 2 plus one weight-1 edge t0-t1,
  externals (t0, t1, t2), scalar 1  ->  [2,0,2,0]

Replacing every vertex of an embedded 3-regular bipartite grid by its
gate and joining external stubs along the original edges yields a
planar graph whose weighted perfect-matching count, times the gate
scalars, equals the grid's partition function exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotGenusZero, NotPlanarInstance, WrongSignatures
from .exact import Scalar, demote, frac
from .grid import SignatureGrid
from .planar import PlanarMultigraph, check_genus_zero, count_pm
from .signatures import EQ3, SymSig, Tensor

ONE_OR_TWO = SymSig([0, 1, 1, 0])


@dataclass
class Matchgate:
    """Planar gadget whose signature entries are weighted matching sums
    with externally matched vertices removed."""

    graph: PlanarMultigraph
    external: list
    scalar: Fraction = Fraction(1)


def matchgate_signature(mg: Matchgate) -> Tensor:
    """Tensor over the external ports: bit i set means external i is
    matched by its dangling edge, i.e. removed before counting."""
    k = len(mg.external)
    entries = []
    for pattern in range(1 << k):
        removed = [mg.external[i] for i in range(k) if (pattern >> i) & 1]
        entries.append(mg.scalar * count_pm(mg.graph.without_vertices(removed)))
    return Tensor(k, entries)


def crossing_gate() -> Matchgate:
    """K4 with all weights -1; signature (1/4)[3,0,-1,0]."""
    w = Fraction(-1)
    edges = [("t0", "t1", w), ("t1", "t2", w), ("t2", "t0", w),
             ("u", "t0", w), ("u", "t1", w), ("u", "t2", w)]
    rotation = {
        "u": [(3, 0), (4, 0), (5, 0)],
        "t0": [(0, 0), (3, 1), (2, 1)],
        "t1": [(1, 0), (4, 1), (0, 1)],
        "t2": [(2, 0), (5, 1), (1, 1)],
    }
    g = PlanarMultigraph(["u", "t0", "t1", "t2"], edges, rotation)
    return Matchgate(g, ["t0", "t1", "t2"], Fraction(1, 4))


def equality_gate() -> Matchgate:
    """Weighted star plus one edge; signature [2,0,2,0]."""
    edges = [("u", "t0", Fraction(2)), ("u", "t1", Fraction(2)), ("u", "t2", Fraction(2)),
             ("t0", "t1", Fraction(1))]
    rotation = {
        "u": [(0, 0), (1, 0), (2, 0)],
        "t0": [(3, 0), (0, 1)],
        "t1": [(1, 1), (3, 1)],
        "t2": [(2, 1)],
    }
    g = PlanarMultigraph(["u", "t0", "t1", "t2"], edges, rotation)
    return Matchgate(g, ["t0", "t1", "t2"], Fraction(1))


@dataclass
class EmbeddedGrid:
    """A signature grid plus a rotation system: for each vertex, its
    slots in cyclic order around the vertex."""

    grid: SignatureGrid
    rotations: dict

    def as_multigraph(self) -> PlanarMultigraph:
        edges = []
        end_of_port = {}
        for idx, (a, b) in enumerate(self.grid.edges):
            edges.append((a[0], b[0], Fraction(1)))
            end_of_port[a] = (idx, 0)
            end_of_port[b] = (idx, 1)
        rotation = {}
        for vid, v in self.grid.vertices.items():
            slots = self.rotations.get(vid)
            if slots is None or sorted(slots) != list(range(v.arity)):
                raise NotPlanarInstance(f"vertex {vid!r} lacks a full slot rotation")
            rotation[vid] = [end_of_port[(vid, s)] for s in slots]
        return PlanarMultigraph(list(self.grid.vertices), edges, rotation)

    def validate_planar(self):
        if self.grid.dangling:
            raise NotPlanarInstance("embedded instances must be closed grids")
        try:
            check_genus_zero(self.as_multigraph())
        except NotGenusZero as e:
            raise NotPlanarInstance(str(e)) from e


# gate-local rotations with the joining edge in the stub slot:
#   gate A t_k: [stub, edge to t_{k+1}, spoke, edge to t_{k-1}]
#   gate B t_0: [stub, chord t0-t1, spoke]; t_1: [stub, spoke, chord]; t_2: [stub, spoke]

def holographic_reduce(inst: EmbeddedGrid):
    """Replace [0,1,1,0] vertices by gate A and equality vertices by
    gate B; join stubs along the original edges with weight-1 edges.

    Returns (graph, scalar) with scalar * count_pm(graph) equal to the
    partition function of the input grid.
    """
    inst.validate_planar()
    grid = inst.grid
    left_ids, right_ids = [], []
    for vid, v in grid.vertices.items():
        if v.arity != 3:
            raise WrongSignatures(f"vertex {vid!r} is not ternary")
        if all(p == "L" for p in v.polarities):
            if v.sig != ONE_OR_TWO:
                raise WrongSignatures(f"left vertex {vid!r} must carry [0,1,1,0]")
            left_ids.append(vid)
        elif all(p == "R" for p in v.polarities):
            if v.sig != EQ3:
                raise WrongSignatures(f"right vertex {vid!r} must carry ternary equality")
            right_ids.append(vid)
        else:
            raise WrongSignatures(f"vertex {vid!r} mixes polarities")

    vertices = []
    edges = []
    rotation: dict = {}
    stub_slot: dict = {}   # (vid, rotation position) -> (t-vertex, index in rotation list)

    for vid in left_ids + right_ids:
        is_left = vid in set(left_ids)
        u = (vid, "u")
        ts = [(vid, k) for k in range(3)]
        vertices.append(u)
        vertices.extend(ts)
        if is_left:
            w = Fraction(-1)
            tri = []
            for k in range(3):
                tri.append(len(edges))
                edges.append((ts[k], ts[(k + 1) % 3], w))
            spokes = []
            for k in range(3):
                spokes.append(len(edges))
                edges.append((u, ts[k], w))
            rotation[u] = [(spokes[k], 0) for k in range(3)]
            for k in range(3):
                rotation[ts[k]] = [None,                       # stub
                                   (tri[k], 0),                # to t_{k+1}
                                   (spokes[k], 1),             # to u
                                   (tri[(k + 2) % 3], 1)]      # to t_{k-1}
                stub_slot[(vid, k)] = (ts[k], 0)
        else:
            spokes = []
            for k in range(3):
                spokes.append(len(edges))
                edges.append((u, ts[k], Fraction(2)))
            chord = len(edges)
            edges.append((ts[0], ts[1], Fraction(1)))
            rotation[u] = [(spokes[k], 0) for k in range(3)]
            rotation[ts[0]] = [None, (chord, 0), (spokes[0], 1)]
            rotation[ts[1]] = [None, (spokes[1], 1), (chord, 1)]
            rotation[ts[2]] = [None, (spokes[2], 1)]
            for k in range(3):
                stub_slot[(vid, k)] = (ts[k], 0)

    # join externals along the original edges; external index = position
    # of the slot in the vertex's rotation order
    pos_in_rotation = {}
    for vid, v in grid.vertices.items():
        for pos, slot in enumerate(inst.rotations[vid]):
            pos_in_rotation[(vid, slot)] = pos
    for (a, b) in grid.edges:
        pa = pos_in_rotation[a]
        pb = pos_in_rotation[b]
        ta, ia = stub_slot[(a[0], pa)]
        tb, ib = stub_slot[(b[0], pb)]
        idx = len(edges)
        edges.append((ta, tb, Fraction(1)))
        rotation[ta][ia] = (idx, 0)
        rotation[tb][ib] = (idx, 1)

    graph = PlanarMultigraph(vertices, edges, rotation)
    try:
        check_genus_zero(graph)
    except NotGenusZero as e:
        raise NotPlanarInstance(f"composed graph is not planar: {e}") from e
    scalar = Fraction(1, 4) ** len(left_ids)
    return graph, scalar


def holant_via_matchgates(inst: EmbeddedGrid) -> Scalar:
    graph, scalar = holographic_reduce(inst)
    return demote(scalar * count_pm(graph))


def solve_planar_moderate_cover(inst: EmbeddedGrid) -> Fraction:
    """Count hyperedge subsets covering every vertex once or twice on a
    planar 3-uniform 3-regular instance, in polynomial time."""
    return frac(holant_via_matchgates(inst))
