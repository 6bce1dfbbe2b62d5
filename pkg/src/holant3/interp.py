"""Interpolation and splitting machinery for straddled signatures.

Three executable reductions live here:

* degenerate_target / interpolate_holant_with_d: a grid may contain
  placeholder vertices standing for the rank-1 projector
  D = (1/(x+y)) [[y, xy], [1, x]] built from a transfer matrix's
  eigen-data. Replacing each placeholder with transfer chains of length
  s = 0..n gives Holant values that form a full-rank Vandermonde system
  in (lam^i mu^j)^s; solving it recovers the Holant of the original
  grid exactly, without ever instantiating D numerically.

* interpolate_unary: with a diagonalizable 2x2 straddled matrix M and a
  seed unary that is not a row eigenvector, the family seed . M^j spans
  enough directions to recover the Holant of a grid containing any
  target unary, again by a Vandermonde solve.

* split_reduction: a degenerate straddled binary is an outer product
  [1,y]^T [1,x]; replacing unary [1,x] occurrences by it and absorbing
  the freed [1,y] ends into fresh copies of g turns s disjoint copies
  of the instance into a single instance over {f, g} whose value is a
  known positive factor times the s-th power of the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import (
    ArityMismatch,
    CountMismatch,
    DegenerateG,
    EigenvectorSeed,
    NotDiagonalizable,
    UnderdeterminedInterpolation,
)
from .exact import Scalar, demote, scalar_is_zero, scalar_sign
from .grid import SignatureGrid, holant
from .signatures import (
    EQ3,
    JordanData,
    Mat2,
    SymSig,
    Tensor,
    jordan,
    normalize,
    straddled_from_f,
)


@dataclass(frozen=True)
class StraddledPlaceholder:
    """Marker signature for a 1L/1R straddled slot awaiting substitution.

    Port 0 is the L-side variable (matrix row), port 1 the R-side
    variable (matrix column).
    """

    label: str = "D"
    arity: int = 2


D_PLACEHOLDER = StraddledPlaceholder()


@dataclass(frozen=True)
class DegenerateTarget:
    """The projector D = (1/(x+y)) [[y, xy], [1, x]]: determinant 0,
    trace 1, image spanned by the mu-eigenvector."""

    matrix: Mat2
    jordan_data: JordanData


def degenerate_target(f: SymSig) -> DegenerateTarget:
    form, _, _ = normalize(f)
    jd = jordan(straddled_from_f(form))
    x, y = jd.x, jd.y
    s = x + y
    m = Mat2(((y / s, x * y / s), (1 / s, x / s)))
    return DegenerateTarget(m, jd)


def add_placeholder_on_edge(grid: SignatureGrid, edge_index: int) -> SignatureGrid:
    """Splice a straddled placeholder into an existing L-R edge."""
    g = grid.copy()
    a, b = g.edges.pop(edge_index)
    if g.polarity_of(a) == "L":
        lport, rport = a, b
    else:
        lport, rport = b, a
    vid = ("D", len([v for v in g.vertices if isinstance(v, tuple) and v and v[0] == "D"]))
    g.add_vertex(vid, D_PLACEHOLDER, ("L", "R"))
    g.add_edge((vid, 0), rport)   # row variable meets the R port
    g.add_edge((vid, 1), lport)   # column variable meets the L port
    g.validate()
    return g


def _placeholder_ids(grid: SignatureGrid) -> list:
    return [vid for vid, v in grid.vertices.items() if isinstance(v.sig, StraddledPlaceholder)]


def _neighbors_of_placeholder(grid: SignatureGrid, vid):
    row_partner = col_partner = None
    for a, b in grid.edges:
        for p, q in ((a, b), (b, a)):
            if p[0] == vid:
                if p[1] == 0:
                    row_partner = q
                else:
                    col_partner = q
    if row_partner is None or col_partner is None:
        raise ArityMismatch(f"placeholder {vid!r} is not fully wired")
    return row_partner, col_partner


def substitute_placeholder_matrix(grid: SignatureGrid, vid, m: Mat2) -> SignatureGrid:
    """Replace a placeholder with an explicit 2x2 tensor vertex."""
    g = grid.copy()
    v = g.vertices[vid]
    # pattern bit0 = row variable, bit1 = column variable
    tensor = Tensor(2, (m[0][0], m[1][0], m[0][1], m[1][1]))
    g.vertices[vid] = type(v)(tensor, v.polarities)
    return g


def substitute_placeholder_chain(grid: SignatureGrid, vid, f: SymSig, s: int) -> SignatureGrid:
    """Replace a placeholder with a length-s transfer chain (s = 0 wires
    the two neighbors together directly)."""
    g = grid.copy()
    row_partner, col_partner = _neighbors_of_placeholder(g, vid)
    g.edges = [e for e in g.edges if e[0][0] != vid and e[1][0] != vid]
    del g.vertices[vid]
    if s == 0:
        g.add_edge(col_partner, row_partner)
        g.validate()
        return g
    for i in range(s):
        g.add_vertex((vid, "f", i), f, "L")
        g.add_vertex((vid, "q", i), EQ3, "R")
        g.add_edge(((vid, "f", i), 1), ((vid, "q", i), 0))
        g.add_edge(((vid, "f", i), 2), ((vid, "q", i), 1))
    for i in range(s - 1):
        g.add_edge(((vid, "f", i + 1), 0), ((vid, "q", i), 2))
    g.add_edge(((vid, "f", 0), 0), row_partner)
    g.add_edge(((vid, "q", s - 1), 2), col_partner)
    g.validate()
    return g


@dataclass(frozen=True)
class StratifiedSystem:
    """The interpolation system: chain-substituted Holant values index
    the strata by how many placeholder slots take the small eigenvalue.

    holant_at_length(s) == sum_i coefficients[i] * nodes[i]^s for every
    chain length s, and the all-mu coefficient (index 0) is the Holant
    of the original grid with the projector in place.
    """

    occurrences: int
    lam: Scalar
    mu: Scalar
    nodes: tuple        # lam^i * mu^(n-i), i = number of lam-strata
    values: tuple       # Holant with chains of length s = 0..n
    coefficients: tuple | None   # solved strata; None when lam == 0

    @property
    def projector_value(self) -> Scalar:
        if self.coefficients is not None:
            return demote(self.coefficients[0])
        # lam == 0: every stratum with a lam factor dies for s >= 1
        return demote(self.values[1] / self.mu ** self.occurrences)


def stratify_holant_with_d(grid: SignatureGrid, f: SymSig, extra_lengths: int = 0,
                           max_edges: int = 24, workers: int | None = None) -> StratifiedSystem:
    """Evaluate the grid with every placeholder replaced by transfer
    chains of length s = 0..n(+extra) and solve the Vandermonde system
    over the strata. The extra lengths are not used for solving; they
    let callers check the system out of sample."""
    d_ids = _placeholder_ids(grid)
    n = len(d_ids)
    if n == 0:
        raise ArityMismatch("grid has no placeholder slots to stratify")
    jd = degenerate_target(f).jordan_data
    form, _, _ = normalize(f)

    values = []
    for s in range(n + 1 + extra_lengths):
        g_s = grid
        for vid in d_ids:
            g_s = substitute_placeholder_chain(g_s, vid, form, s)
        values.append(holant(g_s, max_edges=max_edges, workers=workers))

    lam, mu = jd.lam, jd.mu
    nodes = tuple(lam**i * mu ** (n - i) for i in range(n + 1))
    if scalar_is_zero(lam):
        return StratifiedSystem(n, lam, mu, nodes, tuple(values), None)
    from .linalg import vandermonde_solve

    coeffs = vandermonde_solve(list(nodes), values[:n + 1])
    return StratifiedSystem(n, lam, mu, nodes, tuple(values), tuple(coeffs))


def interpolate_holant_with_d(grid: SignatureGrid, f: SymSig,
                              max_edges: int = 24, workers: int | None = None) -> Scalar:
    """Holant of a grid whose placeholders stand for the projector D,
    recovered purely from placeholder-free evaluations."""
    if not _placeholder_ids(grid):
        return holant(grid, max_edges=max_edges, workers=workers)
    system = stratify_holant_with_d(grid, f, max_edges=max_edges, workers=workers)
    return system.projector_value


def _row_eigenvector(m: Mat2, eigenvalue) -> tuple:
    (m00, m01), (m10, m11) = m.rows
    v = (m10, eigenvalue - m00)
    if not (scalar_is_zero(v[0]) and scalar_is_zero(v[1])):
        return v
    v = (eigenvalue - m11, m01)
    if not (scalar_is_zero(v[0]) and scalar_is_zero(v[1])):
        return v
    return (1, 0)  # fully scalar matrix cannot occur with distinct eigenvalues


def _eigen_split(m: Mat2):
    """(lam, mu, row eigenvector of lam, row eigenvector of mu)."""
    (m00, m01), (m10, m11) = m.rows
    gap = m00 - m11
    disc = gap * gap + 4 * m01 * m10
    if scalar_is_zero(disc) or scalar_sign(disc) < 0:
        raise NotDiagonalizable("need two distinct real eigenvalues")
    if not scalar_is_zero(m10):
        jd = jordan(m)
        e_lam, e_mu = jd.row_eigenvectors()
        return jd.lam, jd.mu, e_lam, e_mu
    from .exact import sqrt_exact

    delta = sqrt_exact(disc if isinstance(disc, Fraction) else disc.to_fraction())
    tr = m.trace()
    lam = demote((tr - delta) / 2)
    mu = demote((tr + delta) / 2)
    return lam, mu, _row_eigenvector(m, lam), _row_eigenvector(m, mu)


def _decompose_row(vec, e_lam, e_mu):
    """alpha, beta with vec = alpha * e_lam + beta * e_mu."""
    from .linalg import solve_linear

    sol = solve_linear([[e_lam[0], e_mu[0]], [e_lam[1], e_mu[1]]], list(vec))
    return sol[0], sol[1]


def interpolate_unary(grid: SignatureGrid, u_vertex_ids, m: Mat2, seed: SymSig,
                      max_edges: int = 24, workers: int | None = None) -> Scalar:
    """Holant of a grid containing a target unary on the R side at the
    listed vertices, recovered from evaluations with seed . M^j there.

    The target unary is read off the grid itself; every listed vertex
    must carry the same unary signature. Raises EigenvectorSeed when the
    seed is proportional to a row eigenvector of m, and
    UnderdeterminedInterpolation when a zero eigenvalue erases the
    strata the target needs.
    """
    if seed.arity != 1:
        raise ArityMismatch("seed must be unary")
    u_vertex_ids = list(u_vertex_ids)
    n = len(u_vertex_ids)
    sigs = {grid.vertices[vid].sig for vid in u_vertex_ids}
    if len(sigs) != 1:
        raise ArityMismatch("all target vertices must carry the same unary")
    target = sigs.pop()
    if target.arity != 1:
        raise ArityMismatch("target vertices must be unary")
    if n == 0:
        return holant(grid, max_edges=max_edges, workers=workers)

    lam, mu, e_lam, e_mu = _eigen_split(m)
    alpha, beta = _decompose_row(tuple(seed.values), e_lam, e_mu)
    if scalar_is_zero(alpha) or scalar_is_zero(beta):
        raise EigenvectorSeed("seed is proportional to a row eigenvector")
    gamma, delta_c = _decompose_row(tuple(target.values), e_lam, e_mu)

    def with_unary(vec) -> SignatureGrid:
        g = grid.copy()
        for vid in u_vertex_ids:
            v = g.vertices[vid]
            g.vertices[vid] = type(v)(SymSig(vec), v.polarities)
        return g

    def row_times_power(vec, j):
        out = list(vec)
        for _ in range(j):
            out = [out[0] * m[0][0] + out[1] * m[1][0], out[0] * m[0][1] + out[1] * m[1][1]]
        return out

    values = [holant(with_unary(row_times_power(seed.values, j)),
                     max_edges=max_edges, workers=workers) for j in range(n + 1)]

    # unknowns w_k = alpha^k beta^(n-k) h_k over nodes lam^k mu^(n-k)
    if scalar_is_zero(mu):
        lam, mu = mu, lam
        alpha, beta = beta, alpha
        gamma, delta_c = delta_c, gamma
    if scalar_is_zero(lam):
        if scalar_is_zero(mu):
            raise NotDiagonalizable("both eigenvalues vanish")
        w0 = values[1] / mu**n
        if scalar_is_zero(gamma):
            return demote((delta_c / beta) ** n * w0)
        if n == 1:
            w1 = values[0] - w0
            return demote((delta_c / beta) * w0 + (gamma / alpha) * w1)
        raise UnderdeterminedInterpolation(
            "zero eigenvalue: only the all-mu stratum is recoverable")
    from .linalg import vandermonde_solve

    nodes = [lam**k * mu ** (n - k) for k in range(n + 1)]
    w = vandermonde_solve(nodes, values)
    total: Scalar = Fraction(0)
    for k in range(n + 1):
        total = total + (gamma / alpha) ** k * (delta_c / beta) ** (n - k) * w[k]
    return demote(total)


# -- split reduction ---------------------------------------------------------

def _is_point_mass_on_ones(g_sig) -> bool:
    """Is g a multiple of [0,1]^(x)n, i.e. supported on the all-ones input?"""
    if isinstance(g_sig, SymSig):
        return all(scalar_is_zero(v) for v in g_sig.values[:-1])
    return all(scalar_is_zero(v) for p, v in enumerate(g_sig.entries)
               if p != (1 << g_sig.arity) - 1)


def unary_closure_value(g_sig, y) -> Scalar:
    """Value of g with every port closed by [1, y]."""
    if isinstance(g_sig, SymSig):
        total: Scalar = Fraction(0)
        for w, v in enumerate(g_sig.values):
            total = total + comb(g_sig.arity, w) * v * y**w
        return total
    total = Fraction(0)
    for p, v in enumerate(g_sig.entries):
        total = total + v * y ** p.bit_count()
    return total


@dataclass(frozen=True)
class SplitReduction:
    grid: SignatureGrid     # single grid over {f, g} plus straddled tensors
    factor: Scalar          # positive closed-form factor
    power: int              # s: holant(grid) == factor * holant(original)^s
    plan: tuple             # (m, n, k, s, N_f, N_g, N_u, t)


def split_reduction(grid: SignatureGrid, f: SymSig, g_sig, x, y) -> SplitReduction:
    """Transform an instance over {f | g, [1,x]} into one over {f | g}
    with the unary occurrences replaced by the degenerate straddled
    tensor [[1,x],[y,xy]] and the freed [1,y] ends absorbed by fresh
    copies of g.

    Contract: holant(result.grid) == result.factor *
    holant(original)^result.power, exactly.
    """
    if _is_point_mass_on_ones(g_sig):
        raise DegenerateG("g is a multiple of the all-ones point mass")
    m_arity = f.arity
    n_arity = g_sig.arity
    unary_x = SymSig([1, x])

    f_ids, g_ids, u_ids = [], [], []
    for vid, v in grid.vertices.items():
        if v.sig == f and all(p == "L" for p in v.polarities):
            f_ids.append(vid)
        elif v.sig == g_sig:
            g_ids.append(vid)
        elif v.sig == unary_x:
            u_ids.append(vid)
        else:
            raise ArityMismatch(f"vertex {vid!r} carries an unexpected signature")
    n_f, n_g, n_u = len(f_ids), len(g_ids), len(u_ids)
    if m_arity * n_f != n_arity * n_g + n_u:
        raise CountMismatch(f"{m_arity}*{n_f} != {n_arity}*{n_g} + {n_u}")
    k = gcd(m_arity, n_arity)
    s = n_arity // k
    if n_u % k != 0:
        raise CountMismatch(f"unary count {n_u} not divisible by gcd {k}")
    t = (n_u // k)
    plan = (m_arity, n_arity, k, s, n_f, n_g, n_u, t)

    if n_u == 0:
        return SplitReduction(grid.copy(), Fraction(1), 1, plan)

    out = SignatureGrid()
    free_ends = []
    # straddled tensor: bit0 = R-side port playing [1,x], bit1 = L-side [1,y] end
    b_tensor = Tensor(2, (1, x, y, x * y))
    for copy_idx in range(s):
        for vid, v in grid.vertices.items():
            if vid in u_ids:
                out.add_vertex((copy_idx, vid), b_tensor, ("R", "L"))
                free_ends.append(((copy_idx, vid), 1))
            else:
                out.add_vertex((copy_idx, vid), v.sig, v.polarities)
        for (va, sa), (vb, sb) in grid.edges:
            out.add_edge(((copy_idx, va), sa), ((copy_idx, vb), sb))
    for block in range(t):
        out.add_vertex(("gblock", block), g_sig, "R")
    for i, end in enumerate(free_ends):
        out.add_edge(end, (("gblock", i // n_arity), i % n_arity))
    out.validate()

    factor = unary_closure_value(g_sig, y) ** t
    return SplitReduction(out, demote(factor), s, plan)
