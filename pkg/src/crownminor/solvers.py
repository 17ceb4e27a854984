"""Parameterized solvers for domination-type problems.

Each solver follows the scattered-set branching scheme where it applies
and falls back to exhaustive search below desk-scale thresholds, so the
answers stay exact at every size we can run. Every feasible outcome
carries a witness that passes the matching verifier.
"""

import itertools
from collections import deque
from dataclasses import dataclass

from .digraph import Digraph, GraphError, bfs_dist
from .quasiwide import compute_scattered, without_vertices


@dataclass(frozen=True)
class DominationInstance:
    """Inputs shared by the domination problems: a size budget k, a
    domination radius d, a target set W (all vertices when None), and a
    forbidden set Y."""

    graph: Digraph
    k: int
    d: int = 1
    targets: tuple = None
    forbidden: tuple = ()

    def target_set(self):
        if self.targets is None:
            return tuple(self.graph.vertices())
        return tuple(self.targets)


@dataclass(frozen=True)
class SolveOutcome:
    feasible: bool
    witness: tuple = None  # vertex tuple, or (vertex tuple, parent dict)
    exhausted: bool = False


# ---------------------------------------------------------------------------
# verifiers


def verify_dominating(G, D, d=1, W=None, deleted=()):
    """W (default: all vertices outside `deleted`) lies inside the
    d-out-neighborhood of D."""
    dead = frozenset(deleted)
    covered = set()
    for v in D:
        covered.update(bfs_dist(G, v, max_depth=d, avoid=dead))
    if W is None:
        W = [v for v in G.vertices() if v not in dead]
    return set(W) <= covered


def verify_independent(G, D):
    """No edge in either direction inside D."""
    D = list(D)
    for a, b in itertools.combinations(D, 2):
        if G.has_edge(a, b) or G.has_edge(b, a):
            return False
    return len(set(D)) == len(D)


def verify_outbranching(G, vertices, parent):
    """parent maps each vertex to its tree parent (None at the root);
    checks one root, edges present, and every vertex walking up to it."""
    vs = set(vertices)
    if set(parent) != vs or not vs:
        return False
    roots = [v for v in vs if parent[v] is None]
    if len(roots) != 1:
        return False
    for v in vs:
        p = parent[v]
        if p is None:
            continue
        if p not in vs or not G.has_edge(p, v):
            return False
    root = roots[0]
    for v in vs:
        seen = set()
        x = v
        while x is not None:
            if x in seen:
                return False
            seen.add(x)
            x = parent[x]
        if root not in seen:
            return False
    return True


def spanning_outtree(G, D, deleted=()):
    """Parent map of an out-tree spanning D inside G - deleted, rooted at
    the smallest workable root, or None."""
    D = sorted(set(D))
    dead = frozenset(deleted)
    for root in D:
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in G.successors(v):
                if w in dead or w not in set(D) or w in parent:
                    continue
                parent[w] = v
                queue.append(w)
        if len(parent) == len(D):
            return parent
    return None


# ---------------------------------------------------------------------------
# exhaustive oracle


def brute_force_solve(instance, variant):
    """Exact solver by subset enumeration, smallest size first then
    lexicographic, honoring the instance's forbidden set. Variants:
    ds (d-dominating set), ids (independent dominating set),
    dob (dominating set spanned by an out-tree), is (independent set of
    size exactly k)."""
    G = instance.graph
    k = instance.k
    d = instance.d
    W = instance.target_set()
    Y = set(instance.forbidden)
    cand = [v for v in G.vertices() if v not in Y]
    if variant == "is":
        if k == 0:
            return SolveOutcome(True, (), exhausted=True)
        for combo in itertools.combinations(cand, k):
            if verify_independent(G, combo):
                return SolveOutcome(True, tuple(combo), exhausted=True)
        return SolveOutcome(False, exhausted=True)
    for size in range(0, k + 1):
        for combo in itertools.combinations(cand, size):
            if variant == "ds":
                if verify_dominating(G, combo, d, W):
                    return SolveOutcome(True, tuple(combo), exhausted=True)
            elif variant == "ids":
                if verify_dominating(G, combo, d, W) and verify_independent(G, combo):
                    return SolveOutcome(True, tuple(combo), exhausted=True)
            elif variant == "dob":
                if not verify_dominating(G, combo, 1, W):
                    continue
                parent = spanning_outtree(G, combo)
                if parent is not None:
                    return SolveOutcome(True, (tuple(combo), parent), exhausted=True)
            else:
                raise GraphError("unknown variant %r" % variant)
    return SolveOutcome(False, exhausted=True)


# ---------------------------------------------------------------------------
# independent dominating set


def independent_dominating_set(G, k, scatter_budget=3, base_cap=10, probe_cap=12):
    """Branching solver: a verified 1-scattered set of size k+1 forces
    every dominating set to meet its deletion set, so branch on those
    vertices, removing the chosen vertex's out-neighborhood and
    forbidding its in-neighborhood. Small or scatter-less residuals are
    searched exhaustively. Exact at all sizes."""
    used_fallback = [False]

    def masked(alive):
        return without_vertices(G, set(G.vertices()) - alive)

    def exhaustive(alive, Y, k):
        cand = sorted(alive - Y)
        for size in range(0, k + 1):
            for combo in itertools.combinations(cand, size):
                if verify_independent(G, combo) and verify_dominating(
                    G, combo, 1, alive, deleted=set(G.vertices()) - alive
                ):
                    return list(combo)
        return None

    def rec(alive, Y, k):
        if k < 0:
            return None
        if len(alive) <= max(base_cap, k + 1):
            return exhaustive(alive, Y, k)
        Gm = masked(alive)
        w = compute_scattered(
            Gm, sorted(alive), d=1, m=k + 1, s_budget=scatter_budget,
            probe_cap=probe_cap,
        )
        if w is None:
            used_fallback[0] = True
            return exhaustive(alive, Y, k)
        for s in sorted(set(w.deleted) - Y):
            gone = set(bfs_dist(Gm, s, max_depth=1))
            sub = rec(alive - gone, Y | set(Gm.in_adj[s]), k - 1)
            if sub is not None:
                return [s] + sub
        return None

    got = rec(frozenset(G.vertices()), frozenset(), k)
    if got is None:
        return SolveOutcome(False, exhausted=used_fallback[0])
    D = tuple(sorted(got))
    if not (verify_independent(G, D) and verify_dominating(G, D, 1)):
        raise RuntimeError("internal: branching produced an invalid witness")
    return SolveOutcome(True, D, exhausted=used_fallback[0])


# ---------------------------------------------------------------------------
# d-dominating set with target reduction


def find_irrelevant_vertex(G, W, k, d):
    """A vertex w of W whose domination is implied by the rest: some
    other target's d-in-ball is contained in w's, so any set hitting the
    smaller ball hits w's too. Returns the smallest such w or None; the
    rule is sound for every budget k."""
    W = sorted(set(W))
    balls = {w: frozenset(bfs_dist(G, w, max_depth=d, direction="in")) for w in W}
    for w in W:
        for w2 in W:
            if w2 != w and balls[w2] <= balls[w]:
                return w
    return None


def d_dominating_set(G, k, d=1):
    """Shrink the target set by irrelevant-vertex reductions, then cover
    the residual targets exactly by grouping potential dominators by
    their trace on the targets."""
    if k < 0 or d < 1:
        raise GraphError("need k >= 0 and d >= 1")
    W = set(G.vertices())
    while len(W) > 1:
        w = find_irrelevant_vertex(G, sorted(W), k, d)
        if w is None:
            break
        W.remove(w)

    traces = {}
    for v in sorted(G.vertices()):
        tr = frozenset(bfs_dist(G, v, max_depth=d)) & W
        if tr and tr not in traces:
            traces[tr] = v

    trace_list = sorted(traces.items(), key=lambda it: traces[it[0]])

    def cover(uncovered, budget, chosen):
        if not uncovered:
            return list(chosen)
        if budget == 0:
            return None
        pivot = min(
            uncovered,
            key=lambda w: sum(1 for tr, _ in trace_list if w in tr),
        )
        for tr, v in trace_list:
            if pivot in tr:
                got = cover(uncovered - tr, budget - 1, chosen + [v])
                if got is not None:
                    return got
        return None

    got = cover(frozenset(W), k, [])
    if got is None:
        return SolveOutcome(False)
    D = tuple(sorted(got))
    if not verify_dominating(G, D, d):
        raise RuntimeError("internal: reduced cover does not dominate")
    return SolveOutcome(True, D)


# ---------------------------------------------------------------------------
# directed Steiner out-trees


def directed_steiner_outtree(G, terminals, size_budget=None, required_root=None):
    """Minimum-vertex out-tree containing all terminals, by dynamic
    programming over (vertex, terminal subset) with subtree merges at a
    shared root and single-edge extensions. Returns (vertices, parent)
    or None (also when the optimum exceeds size_budget)."""
    terms = sorted(set(terminals))
    if not terms:
        raise GraphError("need at least one terminal")
    tidx = {t: i for i, t in enumerate(terms)}
    full = (1 << len(terms)) - 1
    dist = {v: bfs_dist(G, v) for v in G.vertices()}
    parents_of = {v: _bfs_parent_map(G, v) for v in G.vertices()}

    INF = float("inf")
    cost = [[INF] * G.n for _ in range(full + 1)]
    choice = [[None] * G.n for _ in range(full + 1)]
    for t in terms:
        m = 1 << tidx[t]
        for v in G.vertices():
            dd = dist[v].get(t)
            if dd is not None:
                cost[m][v] = dd + 1
                choice[m][v] = ("leaf", t)

    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                rest = mask ^ sub
                for v in G.vertices():
                    a, b = cost[sub][v], cost[rest][v]
                    if a + b - 1 < cost[mask][v]:
                        cost[mask][v] = a + b - 1
                        choice[mask][v] = ("split", sub)
            sub = (sub - 1) & mask
        # propagate along edges until stable (unit increments)
        changed = True
        while changed:
            changed = False
            for v in G.vertices():
                for u in G.successors(v):
                    if cost[mask][u] + 1 < cost[mask][v]:
                        cost[mask][v] = cost[mask][u] + 1
                        choice[mask][v] = ("step", u)
                        changed = True

    if required_root is not None:
        roots = [required_root]
    else:
        roots = sorted(G.vertices())
    best_root, best_cost = None, INF
    for v in roots:
        if cost[full][v] < best_cost:
            best_root, best_cost = v, cost[full][v]
    if best_root is None or best_cost == INF:
        return None
    if size_budget is not None and best_cost > size_budget:
        return None

    verts = set()

    def collect(mask, v):
        verts.add(v)
        kind = choice[mask][v]
        if kind is None:
            return
        tag = kind[0]
        if tag == "leaf":
            t = kind[1]
            x = t
            while x != v:
                verts.add(x)
                x = parents_of[v][x]
        elif tag == "split":
            collect(kind[1], v)
            collect(mask ^ kind[1], v)
        else:
            collect(mask, kind[1])

    collect(full, best_root)
    parent = spanning_outtree(G, verts)
    if parent is None or not set(terms) <= verts:
        raise RuntimeError("internal: Steiner reconstruction failed")
    root = [v for v, p in parent.items() if p is None][0]
    if required_root is not None and root != required_root:
        parent = _retree(G, verts, required_root)
        if parent is None:
            raise RuntimeError("internal: Steiner root lost in reconstruction")
    return tuple(sorted(verts)), parent


def _bfs_parent_map(G, src):
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in G.successors(v):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def _retree(G, verts, root):
    verts = set(verts)
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in G.successors(v):
            if w in verts and w not in parent:
                parent[w] = v
                queue.append(w)
    return parent if len(parent) == len(verts) else None


# ---------------------------------------------------------------------------
# dominating out-branching


def dominating_outbranching_bounded(G, us, W, j, partition_cap=12):
    """Extension of the fixed vertices us by at most j new vertices so
    that together they span an out-tree and the new ones 1-dominate W.

    Enumerates partitions of W into at most j parts (canonical block
    order, candidate sets pruned during assignment), reduces each to a
    Steiner instance through one auxiliary sink per part, and translates
    the tree back. Returns (vertices, parent) over us plus the extension
    or None."""
    us = tuple(dict.fromkeys(us))
    W = sorted(set(W))
    if len(W) > partition_cap:
        raise GraphError("target set exceeds the partition cap")
    if j < 0:
        return None
    t = len(us)
    if j == 0 or (not W and not us):
        if W:
            return None
        if not us:
            # nothing fixed and nothing to dominate: one vertex suffices
            if j >= 1 and G.n >= 1:
                return (0,), {0: None}
            return None
        parent = spanning_outtree(G, us)
        if parent is None:
            return None
        return tuple(sorted(us)), parent

    dominated_by = {
        v: frozenset(bfs_dist(G, v, max_depth=1)) & set(W)
        for v in G.vertices()
        if v not in us
    }
    seen_profiles = {}

    def steiner_for(blocks):
        xsets = []
        for members in blocks:
            need = frozenset(members)
            xs = frozenset(
                v for v, dom in dominated_by.items() if need <= dom
            )
            if not xs:
                return None
            xsets.append(xs)
        if not us and len(xsets) == 1:
            # a single chooser is a one-vertex out-branching by itself
            v = min(xsets[0])
            return (v,), {v: None}
        profile = (frozenset(xsets), us)
        if profile in seen_profiles:
            return seen_profiles[profile]
        aug_edges = list(G.edges)
        aux = []
        for i, xs in enumerate(xsets):
            node = G.n + i
            aux.append(node)
            for v in xs:
                aug_edges.append((v, node))
        aug = Digraph(G.n + len(xsets), aug_edges)
        got = directed_steiner_outtree(
            aug, list(us) + aux, size_budget=t + j + len(xsets)
        )
        out = None
        if got is not None:
            verts, parent = got
            real = [v for v in verts if v < G.n]
            ext = [v for v in real if v not in us]
            if len(ext) <= j:
                tree_parent = spanning_outtree(G, real)
                if tree_parent is not None:
                    out = (tuple(sorted(real)), tree_parent)
        seen_profiles[profile] = out
        return out

    # canonical partitions of W into at most j nonempty blocks; a block's
    # candidate mask is intersected as members join and empties prune
    blocks = []

    def assign(idx):
        if idx == len(W):
            got = steiner_for([m for m, _ in blocks])
            if got is None:
                return None
            verts, parent = got
            ext = [v for v in verts if v not in us]
            covered = set()
            for v in ext:
                covered |= dominated_by.get(v, frozenset())
            if not set(W) <= covered:
                return None
            return got
        w = W[idx]
        for bi, (members, cand) in enumerate(blocks):
            new_cand = {v for v in cand if w in dominated_by[v]}
            if not new_cand:
                continue
            members.append(w)
            blocks[bi] = (members, new_cand)
            got = assign(idx + 1)
            if got is not None:
                return got
            members.pop()
            blocks[bi] = (members, cand)
        if len(blocks) < j:
            cand = {v for v in dominated_by if w in dominated_by[v]}
            if cand:
                blocks.append(([w], cand))
                got = assign(idx + 1)
                if got is not None:
                    return got
                blocks.pop()
        return None

    if not W:
        return steiner_for([])
    return assign(0)


def dominating_outbranching(G, k, scatter_budget=3, w_cap=8):
    """Does some set of at most k vertices span an out-tree and dominate
    every vertex? Branches on the deletion set of a scattered witness
    (any solution must meet it), shrinking the target set by the chosen
    vertex's closed out-neighborhood; small target sets go through the
    partition + Steiner route. Exact at all sizes via exhaustive
    fallback."""
    used_fallback = [False]

    def exhaustive(W, us, j):
        cand = [v for v in G.vertices() if v not in us]
        for size in range(0, j + 1):
            for combo in itertools.combinations(cand, size):
                D = tuple(sorted(set(us) | set(combo)))
                if not D:
                    continue
                covered = set()
                for v in combo:
                    covered.update(bfs_dist(G, v, max_depth=1))
                if not set(W) <= covered:
                    continue
                parent = spanning_outtree(G, D)
                if parent is not None:
                    return D, parent
        return None

    def rec(W, us, j):
        t = len(us)
        if len(W) <= max(w_cap, t + j):
            return dominating_outbranching_bounded(
                G, us, W, j, partition_cap=max(w_cap, t + j)
            )
        if j == 0:
            return None
        scat = compute_scattered(G, sorted(W), d=1, m=t + j + 1, s_budget=scatter_budget)
        if scat is None:
            used_fallback[0] = True
            return exhaustive(W, us, j)
        for nxt in sorted(set(scat.deleted) - set(us)):
            rest = set(W) - set(bfs_dist(G, nxt, max_depth=1))
            got = rec(rest, us + (nxt,), j - 1)
            if got is not None:
                return got
        return None

    if G.n == 0:
        return SolveOutcome(False)
    got = rec(set(G.vertices()), (), k)
    if got is None:
        return SolveOutcome(False, exhausted=used_fallback[0])
    D, parent = got
    if not (
        verify_outbranching(G, D, parent)
        and verify_dominating(G, D, 1)
        and len(D) <= k
    ):
        raise RuntimeError("internal: out-branching witness invalid")
    return SolveOutcome(True, (D, parent), exhausted=used_fallback[0])


# ---------------------------------------------------------------------------
# independent set


def independent_set(G, k, d=1, scatter_budget=3, probe_cap=12):
    """Independent set of size exactly k (distance-d version: no member
    within distance d of another). A d-scattered set with its deletion
    set disjoint from it is independent once re-checked in the full
    graph; otherwise exhaustive search."""
    if k == 0:
        return SolveOutcome(True, ())
    if k > G.n:
        return SolveOutcome(False)

    def pairwise_ok(D):
        for u in D:
            ball = bfs_dist(G, u, max_depth=d)
            if any(w != u and w in ball for w in D):
                return False
        return True

    if k <= min(G.n, probe_cap):
        w = compute_scattered(
            G, sorted(G.vertices()), d=d, m=k, s_budget=scatter_budget,
            probe_cap=probe_cap,
        )
        if w is not None and pairwise_ok(w.members):
            return SolveOutcome(True, tuple(w.members))
    for combo in itertools.combinations(sorted(G.vertices()), k):
        if pairwise_ok(combo):
            return SolveOutcome(True, tuple(combo), exhausted=True)
    return SolveOutcome(False, exhausted=True)
