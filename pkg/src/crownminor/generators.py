"""Constructors for the named digraph families.

Crowns, reversed crowns, alternating paths, tournaments, oriented grids
(with the constructive alternating-path extraction), and the random
out-regular bipartite construction together with its exact pattern
probability.
"""

import math
from fractions import Fraction

from .digraph import Digraph, GraphError, count_alternations, topological_order
from .rng import SplitMix64


def crown(q):
    """Crown of order q: sinks v_1..v_q (ids 0..q-1) plus one source
    u_{i,j} per pair i < j (ids q.. in lexicographic pair order), with
    edges u_{i,j} -> v_i and u_{i,j} -> v_j.

    Returns (graph, principal_vertices).
    """
    if q < 1:
        raise GraphError("crown order must be positive")
    edges = []
    next_id = q
    for i in range(q):
        for j in range(i + 1, q):
            edges.append((next_id, i))
            edges.append((next_id, j))
            next_id += 1
    return Digraph(next_id, edges), tuple(range(q))


def crown_source_id(q, i, j):
    """Vertex id of u_{i,j} in crown(q), principals numbered 0..q-1."""
    if not (0 <= i < j < q):
        raise GraphError("need 0 <= i < j < q")
    return q + i * q - i * (i + 1) // 2 + (j - i - 1)


def reversed_crown(q):
    """crown(q) with every edge reversed. Returns (graph, principals)."""
    G, principals = crown(q)
    return G.reversed(), principals


def alternating_path(k, phase="odd"):
    """Orientation of a path on k+2 vertices (ids 0..k+1, standing for
    v_1..v_{k+2}) with every edge directed toward its endpoint of odd
    (or even) 1-based index."""
    if k < 1:
        raise GraphError("alternation count must be at least 1")
    if phase not in ("odd", "even"):
        raise GraphError("phase must be 'odd' or 'even'")
    want_odd = phase == "odd"
    edges = []
    for a in range(k + 1):
        b = a + 1
        # 1-based indices a+1, b+1; exactly one of them is odd.
        head_is_b = (b + 1) % 2 == (1 if want_odd else 0)
        edges.append((a, b) if head_is_b else (b, a))
    return Digraph(k + 2, edges)


def acyclic_tournament(n):
    """Transitive tournament: edge i -> j for every i < j."""
    if n < 1:
        raise GraphError("tournament order must be positive")
    return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_tournament(n, seed):
    """Uniformly random orientation of K_n, deterministic in the seed."""
    if n < 1:
        raise GraphError("tournament order must be positive")
    rng = SplitMix64(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((i, j) if rng.randrange(2) == 0 else (j, i))
    return Digraph(n, edges)


def embed_acyclic_tournament(T, n):
    """Image of the transitive tournament of order n inside tournament T,
    |T| >= 2^n, found by the max-outdegree recursion: map the first
    vertex to a vertex of highest outdegree and recurse inside its
    out-neighborhood. Returns vertex ids in transitive order, or None.
    """
    if n < 0:
        raise GraphError("order must be nonnegative")

    def rec(pool, need):
        if need == 0:
            return []
        if not pool:
            return None
        pool_set = set(pool)
        best = max(pool, key=lambda v: (sum(1 for w in T.successors(v) if w in pool_set), -v))
        succ = sorted(w for w in T.successors(best) if w in pool_set)
        rest = rec(succ, need - 1)
        if rest is None:
            return None
        return [best] + rest

    out = rec(sorted(T.vertices()), n)
    if out is None:
        return None
    for a in range(n):
        for b in range(a + 1, n):
            if not T.has_edge(out[a], out[b]):
                return None
    return out


def grid_vertex(l1, l2, i, j):
    """Dense id of grid cell (i, j), 1-based as in grid coordinates."""
    if not (1 <= i <= l1 and 1 <= j <= l2):
        raise GraphError("grid coordinate (%d, %d) out of range" % (i, j))
    return (i - 1) * l2 + (j - 1)


def grid_undirected_edges(l1, l2):
    """Canonical (sorted) list of undirected grid adjacencies as id pairs."""
    es = []
    for i in range(1, l1 + 1):
        for j in range(1, l2 + 1):
            if j < l2:
                es.append((grid_vertex(l1, l2, i, j), grid_vertex(l1, l2, i, j + 1)))
            if i < l1:
                es.append((grid_vertex(l1, l2, i, j), grid_vertex(l1, l2, i + 1, j)))
    return sorted(es)


def oriented_grid(l1, l2, seed=None, choices=None):
    """Orientation of the l1 x l2 grid (cells adjacent when coordinates
    differ by one in a single axis).

    The orientation comes either from `choices` (one bool per canonical
    undirected edge; True keeps the (low, high) direction) or uniformly
    at random from `seed`.
    """
    base = grid_undirected_edges(l1, l2)
    if (seed is None) == (choices is None):
        raise GraphError("supply exactly one of seed or choices")
    if choices is None:
        rng = SplitMix64(seed)
        choices = [rng.randrange(2) == 0 for _ in base]
    if len(choices) != len(base):
        raise GraphError("expected %d orientation choices" % len(base))
    edges = [(a, b) if keep else (b, a) for (a, b), keep in zip(base, choices)]
    return Digraph(l1 * l2, edges)


def _grid_rows_path(r, kind):
    """The two candidate spine pieces through rows (r, r+1) of a width-3
    grid: the full snake or the short hook, in grid coordinates."""
    if kind == "snake":
        return [(r, 1), (r, 2), (r, 3), (r + 1, 3), (r + 1, 2), (r + 1, 1)]
    return [(r, 1), (r, 2), (r + 1, 2), (r + 1, 3)]


def extract_grid_alternating_path(G, l=None):
    """A path of the underlying grid from cell (1,1) to row 2l (column 1
    or 3) whose orientation shows at least l alternations.

    G must be an orientation of a 2l x 3 grid. Works two rows at a time:
    if the snake through the current rows alternates, it can be extended;
    otherwise the short hook must alternate. Both candidate extensions
    are checked and the first one verified is returned.
    """
    if l is None:
        if G.n % 6 != 0 or G.n == 0:
            raise GraphError("host is not a 2l x 3 grid orientation")
        l = G.n // 6
    l1 = 2 * l
    expected = set()
    for a, b in grid_undirected_edges(l1, 3):
        expected.add((a, b))
    actual = set()
    for u, v in G.edges:
        actual.add((min(u, v), max(u, v)))
    if actual != expected or G.num_edges() != len(expected):
        raise GraphError("host is not a 2l x 3 grid orientation")

    def vid(c):
        return grid_vertex(l1, 3, c[0], c[1])

    def mirror(c):
        return (c[0], 4 - c[1])

    def build(row, flip):
        """Candidate paths for rows row..2l; `flip` mirrors columns so the
        path starts at column 1 of the (possibly mirrored) grid."""
        conv = (lambda c: vid(mirror(c))) if flip else vid
        snake = [conv(c) for c in _grid_rows_path(row, "snake")]
        hook = [conv(c) for c in _grid_rows_path(row, "hook")]
        if row + 2 > l1:
            return [snake, hook]
        out = []
        # snake ends at column 1, hook at column 3 (pre-mirror)
        for head, next_flip in ((snake, flip), (hook, not flip)):
            for tail in build(row + 2, next_flip):
                out.append(head + tail)
        return out

    for cand in build(1, False):
        if count_alternations(G, cand) >= l and cand[-1] // 3 == l1 - 1:
            return cand
    raise GraphError("no alternating spine found; host is not a grid orientation")


def random_bipartite_outregular(n, d, seed):
    """Bipartite digraph with sides A = 0..n-1 and B = n..2n-1 where every
    A-vertex gets d distinct out-neighbors drawn uniformly from B.
    Exactly d*n edges; deterministic in the seed."""
    if d < 0 or d > n:
        raise GraphError("need 0 <= d <= n")
    rng = SplitMix64(seed)
    edges = []
    for a in range(n):
        child = rng.split(a)
        for b in child.sample(range(n, 2 * n), d):
            edges.append((a, b))
    return Digraph(2 * n, edges)


def crown_pattern_probability(n, d, q):
    """Exact probability that a fixed crown pattern of order q appears on
    fixed distinct vertices in the random out-regular bipartite graph,
    together with its closed-form upper bound.

    Per chosen source the chance that both of its two targets land in its
    d out-neighbors is C(n-2, d-2)/C(n, d); the pattern needs this
    independently for all C(q, 2) sources. The bound is (2d/n)^(q(q-1)).
    Returns (exact, bound) as Fractions.
    """
    if q < 1 or n < 1 or d < 0:
        raise GraphError("need q >= 1, n >= 1, d >= 0")
    pairs = math.comb(q, 2)
    if d < 2:
        per_pair = Fraction(0)
    else:
        per_pair = Fraction(math.comb(n - 2, d - 2), math.comb(n, d))
    exact = per_pair ** pairs
    bound = Fraction(2 * d, n) ** (q * (q - 1))
    return exact, bound


def grid_contains_path(G, path):
    """Sanity helper: every consecutive pair of `path` is adjacent in the
    underlying graph of G."""
    return all(G.has_edge(a, b) or G.has_edge(b, a) for a, b in zip(path, path[1:]))


def is_crown_graph(G, principals):
    """Check that G is exactly the crown whose principal sinks are
    `principals` (in order), with sources in lexicographic pair order."""
    q = len(principals)
    H, _ = crown(q)
    if G.n != H.n or G.num_edges() != H.num_edges():
        return False
    others = [v for v in G.vertices() if v not in set(principals)]
    mapping = dict(zip(list(principals) + others, range(H.n)))
    return all((mapping[u], mapping[v]) in H.edges for (u, v) in G.edges)


def topological_order_or_raise(G):
    order = topological_order(G)
    if order is None:
        raise GraphError("graph has a directed cycle")
    return order
