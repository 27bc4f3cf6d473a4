"""Tiling system of a VH-T complex: transition matrices and derived graphs.

With the expanded directed squares indexed orbit-major (tags 1, v, h, vh at
offsets 0..3), the reflections act on indices by xor on the offset.  The
two 0-1 transition matrices encode tile adjacency:

    m1[s][t] = 1  iff  b(s) = b'(t) and s != t^h      (horizontal: s right of t)
    m2[s][t] = 1  iff  a(s) = a'(t) and s != t^v      (vertical:   s above t)

Columns index the domain, so the image of the basis tile t under the
horizontal transition operator is read off column t of m1.  The stacked
matrix (m1 - I over m2 - I) is the operator whose kernel lattice carries
the degree-2 homology; twice its rank is the boundary-algebra K_0 rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from treelat.complex_model import DirectedSquare, SquareComplex
from treelat.zlinalg import IntMatrix, smith_normal_form


def h_image_index(idx: int) -> int:
    """Index of t^h for the expanded square at idx."""
    return (idx & ~3) | ((idx & 3) ^ 2)


def v_image_index(idx: int) -> int:
    """Index of t^v for the expanded square at idx."""
    return (idx & ~3) | ((idx & 3) ^ 1)


def vh_image_index(idx: int) -> int:
    """Index of t^vh for the expanded square at idx."""
    return (idx & ~3) | ((idx & 3) ^ 3)


@dataclass(frozen=True)
class TilingSystem:
    squares: tuple[DirectedSquare, ...]
    m1: IntMatrix
    m2: IntMatrix
    n_vertices: int


@dataclass(frozen=True)
class AxisConnectivity:
    weakly_connected: bool
    strongly_connected: bool
    scc_count: int


@dataclass(frozen=True)
class EdgeGraphComponent:
    """One component of an edge graph: |C0| vertices, |C1| edges, |C+| oriented."""

    vertices: int
    edges: int
    oriented_edges: int


@dataclass(frozen=True)
class ConnectivityReport:
    horizontal: AxisConnectivity
    vertical: AxisConnectivity
    gh_b_components: tuple[EdgeGraphComponent, ...]
    gv_a_components: tuple[EdgeGraphComponent, ...]


@dataclass(frozen=True)
class K0Hypotheses:
    one_vertex: bool
    gh_strongly_connected: bool
    gv_strongly_connected: bool
    matrices_irreducible: bool
    irreducible_lattice_asserted: bool
    interpretation_supported: bool


@dataclass(frozen=True)
class K0Result:
    kernel_rank: int
    k0_rank: int
    k1_rank: int
    hypotheses: K0Hypotheses


def build_tiling(r: tuple[DirectedSquare, ...], c: SquareComplex) -> TilingSystem:
    """Transition matrices from the expanded directed squares."""
    n = len(r)
    by_b: dict = {}
    by_a: dict = {}
    for i, s in enumerate(r):
        by_b.setdefault(s.b, []).append(i)
        by_a.setdefault(s.a, []).append(i)

    m1_rows = [[0] * n for _ in range(n)]
    m2_rows = [[0] * n for _ in range(n)]
    for t_idx, t in enumerate(r):
        excluded = h_image_index(t_idx)
        for s_idx in by_b.get(t.b_prime, ()):
            if s_idx != excluded:
                m1_rows[s_idx][t_idx] = 1
        excluded = v_image_index(t_idx)
        for s_idx in by_a.get(t.a_prime, ()):
            if s_idx != excluded:
                m2_rows[s_idx][t_idx] = 1
    return TilingSystem(
        squares=tuple(r),
        m1=IntMatrix.from_rows(m1_rows, cols=n),
        m2=IntMatrix.from_rows(m2_rows, cols=n),
        n_vertices=len(c.vertices),
    )


def stacked_matrix(ts: TilingSystem) -> IntMatrix:
    """The 2n x n matrix (m1 - I) stacked over (m2 - I)."""
    n = len(ts.squares)
    eye = IntMatrix.identity(n)
    return IntMatrix.vstack(ts.m1.sub(eye), ts.m2.sub(eye))


def _successors(m: IntMatrix) -> list[list[int]]:
    # edge t -> s whenever m[s][t] = 1
    n = m.cols
    adj: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        row = m.entries[s]
        for t in range(n):
            if row[t]:
                adj[t].append(s)
    return adj


def _scc_count(adj: list[list[int]]) -> int:
    """Number of strongly connected components (iterative Tarjan)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    count = 0
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                count += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    if w == v:
                        break
    return count


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def component_count(self) -> int:
        return len({self.find(i) for i in range(len(self.parent))})


def _axis_connectivity(m: IntMatrix) -> AxisConnectivity:
    adj = _successors(m)
    n = len(adj)
    scc = _scc_count(adj)
    uf = _UnionFind(n)
    for t in range(n):
        for s in adj[t]:
            uf.union(t, s)
    weak = n == 0 or uf.component_count() == 1
    return AxisConnectivity(
        weakly_connected=weak,
        strongly_connected=n == 0 or scc == 1,
        scc_count=scc,
    )


def _edge_graph_components(
    n_vertices: int,
    endpoint_pairs: list[tuple[int, int]],
    oriented: list[bool],
) -> tuple[EdgeGraphComponent, ...]:
    uf = _UnionFind(n_vertices)
    for x, y in endpoint_pairs:
        uf.union(x, y)
    roots: dict[int, int] = {}
    order: list[int] = []
    for v in range(n_vertices):
        root = uf.find(v)
        if root not in roots:
            roots[root] = len(order)
            order.append(root)
    n_comp = len(order)
    vert_count = [0] * n_comp
    edge_count = [0] * n_comp
    plus_count = [0] * n_comp
    for v in range(n_vertices):
        vert_count[roots[uf.find(v)]] += 1
    for (x, _), is_plus in zip(endpoint_pairs, oriented):
        k = roots[uf.find(x)]
        edge_count[k] += 1
        if is_plus:
            plus_count[k] += 1
    return tuple(
        EdgeGraphComponent(vertices=vert_count[k], edges=edge_count[k], oriented_edges=plus_count[k])
        for k in range(n_comp)
    )


def connectivity(ts: TilingSystem, c: SquareComplex) -> ConnectivityReport:
    """Connectivity of the four derived graphs.

    The directed graphs on tiles (edge t -> s whenever the transition matrix
    entry [s][t] is 1) are reported with weak and strong connectivity, since
    strong connectivity is what matrix irreducibility needs.  The undirected
    edge graphs have the directed vertical (resp. horizontal) edges as
    vertices, one edge per tile joining b(t) to b'(t) (resp. a(t) to a'(t));
    for each component the orientation class keeps one tile out of each
    {t, t^h} (resp. {t, t^v}) pair, namely sigma tags (1, v) (resp. (1, h)).
    """
    horizontal = _axis_connectivity(ts.m1)
    vertical = _axis_connectivity(ts.m2)

    v_index = {ref: i for i, ref in enumerate(c.directed_v())}
    h_index = {ref: i for i, ref in enumerate(c.directed_h())}

    b_pairs = [(v_index[t.b], v_index[t.b_prime]) for t in ts.squares]
    b_plus = [t.sigma_tag in ("1", "v") for t in ts.squares]
    a_pairs = [(h_index[t.a], h_index[t.a_prime]) for t in ts.squares]
    a_plus = [t.sigma_tag in ("1", "h") for t in ts.squares]

    return ConnectivityReport(
        horizontal=horizontal,
        vertical=vertical,
        gh_b_components=_edge_graph_components(len(v_index), b_pairs, b_plus),
        gv_a_components=_edge_graph_components(len(h_index), a_pairs, a_plus),
    )


def k0_rank(ts: TilingSystem, irreducible_lattice_asserted: bool = False) -> K0Result:
    """Kernel rank of the stacked operator and the derived K-group ranks.

    The ranks are always computed; the hypothesis flags record whether the
    operator-algebra reading of them (K_0 = K_1 of the boundary crossed
    product, each of rank twice the kernel rank) is supported on this
    instance: a one-vertex complex or an asserted irreducible-lattice
    provenance, plus strong connectivity of both tile graphs.
    """
    stacked = stacked_matrix(ts)
    kernel_rank = stacked.cols - smith_normal_form(stacked).rank
    gh = _axis_connectivity(ts.m1).strongly_connected
    gv = _axis_connectivity(ts.m2).strongly_connected
    one_vertex = ts.n_vertices == 1
    irreducible = gh and gv
    hypotheses = K0Hypotheses(
        one_vertex=one_vertex,
        gh_strongly_connected=gh,
        gv_strongly_connected=gv,
        matrices_irreducible=irreducible,
        irreducible_lattice_asserted=irreducible_lattice_asserted,
        interpretation_supported=(one_vertex or irreducible_lattice_asserted) and irreducible,
    )
    return K0Result(
        kernel_rank=kernel_rank,
        k0_rank=2 * kernel_rank,
        k1_rank=2 * kernel_rank,
        hypotheses=hypotheses,
    )
