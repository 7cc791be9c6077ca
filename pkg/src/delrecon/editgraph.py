"""Multi-trace edit graph, path-count potentials and the infiltration product.

The edit graph of t traces is a grid over pointer tuples
(0..|y1|) x ... x (0..|yt|).  There is an edge from u to v when every
coordinate grows by 0 or 1, at least one grows, and the symbols read by
the growing coordinates all agree; that common symbol labels the edge.
Paths from the origin to the far corner spell common supersequences of
the traces, and the number of length-n paths spelling sequences with a
'1' at a given position is exactly what the multi-trace posterior
needs.

Potentials store, per vertex, the exact number of paths of each length
from the origin (forward) or to the far corner (reverse), truncated at
a length cap.  All counts are Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

MAX_VERTICES = 10**8


@dataclass(frozen=True)
class EditGraph:
    """Edit graph of a tuple of traces; vertices are pointer tuples."""

    traces: tuple[str, ...]
    dims: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.traces)

    @property
    def num_vertices(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    @property
    def origin(self) -> tuple[int, ...]:
        return (0,) * self.t

    @property
    def dest(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.dims)


def build_edit_graph(traces) -> EditGraph:
    """Edit graph of the given traces; refuses grids over MAX_VERTICES."""
    traces = tuple(traces)
    if not traces:
        raise ValueError("need at least one trace")
    dims = tuple(len(y) + 1 for y in traces)
    count = 1
    for d in dims:
        count *= d
    if count > MAX_VERTICES:
        raise ValueError(f"edit graph has {count} vertices, over the {MAX_VERTICES} cap")
    return EditGraph(traces=traces, dims=dims)


def out_edges(g: EditGraph, u):
    """Yield (v, symbol) for every edge u -> v."""
    t = g.t
    for mask in range(1, 1 << t):
        sym = None
        v = list(u)
        ok = True
        for j in range(t):
            if mask & (1 << j):
                if u[j] >= g.dims[j] - 1:
                    ok = False
                    break
                c = g.traces[j][u[j]]
                if sym is None:
                    sym = c
                elif c != sym:
                    ok = False
                    break
                v[j] = u[j] + 1
        if ok:
            yield tuple(v), sym


def in_edges(g: EditGraph, v):
    """Yield (u, symbol) for every edge u -> v."""
    t = g.t
    for mask in range(1, 1 << t):
        sym = None
        u = list(v)
        ok = True
        for j in range(t):
            if mask & (1 << j):
                if v[j] == 0:
                    ok = False
                    break
                c = g.traces[j][v[j] - 1]
                if sym is None:
                    sym = c
                elif c != sym:
                    ok = False
                    break
                u[j] = v[j] - 1
        if ok:
            yield tuple(u), sym


def edge_symbol(g: EditGraph, u, v) -> str:
    """Label of the edge u -> v; raises if the pair is not an edge."""
    for w, sym in out_edges(g, u):
        if w == v:
            return sym
    raise ValueError(f"no edge from {u} to {v}")


def vertices(g: EditGraph):
    """All vertices in lexicographic order (a topological order)."""
    def rec(prefix, j):
        if j == g.t:
            yield tuple(prefix)
            return
        for c in range(g.dims[j]):
            yield from rec(prefix + [c], j + 1)

    yield from rec([], 0)


def _poly_add_shifted(dst: list, src: list, cap: int) -> None:
    # dst += lambda * src, truncated at degree cap
    for d, c in enumerate(src):
        if c and d + 1 <= cap:
            dst[d + 1] += c


def forward_potentials(g: EditGraph, n_cap: int):
    """Path-length counting polynomials from the origin, per vertex.

    Returns {vertex: coeffs} where coeffs[k] is the number of length-k
    paths from the origin, for k up to n_cap.
    """
    pot = {}
    for v in vertices(g):
        coeffs = [0] * (n_cap + 1)
        if v == g.origin:
            coeffs[0] = 1
        for u, _ in in_edges(g, v):
            _poly_add_shifted(coeffs, pot[u], n_cap)
        pot[v] = coeffs
    return pot


def reverse_potentials(g: EditGraph, n_cap: int):
    """Path-length counting polynomials to the far corner, per vertex."""
    pot = {}
    for v in reversed(list(vertices(g))):
        coeffs = [0] * (n_cap + 1)
        if v == g.dest:
            coeffs[0] = 1
        for w, _ in out_edges(g, v):
            _poly_add_shifted(coeffs, pot[w], n_cap)
        pot[v] = coeffs
    return pot


def marked_path_counts(g: EditGraph, fwd, rev, n_cap: int):
    """Counts of full paths split at a '1' edge.

    Returns M with M[j][k] = number of length-k origin-to-corner paths
    whose j-th edge (1-based) reads symbol '1', for j <= k <= n_cap.
    """
    M = [[0] * (n_cap + 1) for _ in range(n_cap + 1)]
    for u in vertices(g):
        for v, sym in out_edges(g, u):
            if sym != "1":
                continue
            fu = fwd[u]
            rv = rev[v]
            for a in range(n_cap):
                ca = fu[a]
                if ca:
                    j = a + 1
                    for d in range(n_cap - j + 1):
                        cd = rv[d]
                        if cd:
                            M[j][j + d] += ca * cd
    return M


def path_length_counts(g: EditGraph, fwd):
    """coeffs[k] = number of length-k paths from origin to far corner."""
    return fwd[g.dest]


def infiltration(f: str, g: str) -> dict[str, int]:
    """Infiltration product of two sequences as a word -> coefficient dict.

    Built by the prefix recurrence: the product of fa and gb appends a
    to (f x gb), b to (fa x g), and, when a == b, a to (f x g).  The
    coefficient of w equals the number of origin-to-corner paths of the
    two-trace edit graph spelling w.
    """
    nf, ng = len(f), len(g)
    table = [[None] * (ng + 1) for _ in range(nf + 1)]
    table[0][0] = {"": 1}
    for i in range(nf + 1):
        for j in range(ng + 1):
            if i == 0 and j == 0:
                continue
            acc: dict[str, int] = {}
            if i > 0:
                a = f[i - 1]
                for w, c in table[i - 1][j].items():
                    wa = w + a
                    acc[wa] = acc.get(wa, 0) + c
            if j > 0:
                b = g[j - 1]
                for w, c in table[i][j - 1].items():
                    wb = w + b
                    acc[wb] = acc.get(wb, 0) + c
            if i > 0 and j > 0 and f[i - 1] == g[j - 1]:
                a = f[i - 1]
                for w, c in table[i - 1][j - 1].items():
                    wa = w + a
                    acc[wa] = acc.get(wa, 0) + c
            table[i][j] = acc
    return table[nf][ng]


def _infiltration_poly(poly: dict[str, int], g: str) -> dict[str, int]:
    acc: dict[str, int] = {}
    for f, cf in poly.items():
        for w, c in infiltration(f, g).items():
            acc[w] = acc.get(w, 0) + cf * c
    return acc


def infiltration_many(seqs) -> dict[str, int]:
    """Iterated infiltration product of a list of sequences."""
    seqs = list(seqs)
    if not seqs:
        raise ValueError("need at least one sequence")
    return reduce(_infiltration_poly, seqs[1:], {seqs[0]: 1})
