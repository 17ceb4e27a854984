"""Directed-minor models, their verification, and minor search.

Covers: model verification, disjoint paths in DAGs via the lazy product
construction, minor checking on DAG hosts, shallow depth-r checking,
exhaustive checking on arbitrary small hosts, butterfly minors,
topological minors, greatest reduced average density (grad), and the
undirected brute-force oracles used for cross-validation.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .digraph import (
    Digraph,
    GraphError,
    bfs_dist,
    find_cycle,
    is_directed_bipartite,
    topological_order,
)

SUPER = -1  # virtual super-source used by the product construction


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class DirectedModel:
    """Witness that `pattern` has a directed model in `host`.

    branch maps each pattern vertex to a host vertex set; edge_image maps
    each pattern edge to a host edge; source/sink give the per-branch
    designated vertices (entries may be omitted, in which case the
    verifier checks existence). depth, when not None, bounds the length
    of every connecting path inside a branch set.
    """

    host: Digraph
    pattern: Digraph
    branch: dict
    edge_image: dict
    source: dict
    sink: dict
    depth: object = None

    def branch_of(self, v):
        return frozenset(self.branch[v])


def _dist_within(G, allowed, src):
    allowed = set(allowed)
    if src not in allowed:
        return {}
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in G.successors(v):
            if w in allowed and w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def _within(dist_map, target, limit):
    """Reachable, and within the length limit when one is set."""
    d = dist_map.get(target)
    return d is not None and (limit is None or d <= limit)


def verify_model(model):
    """Check every model condition; returns (ok, list of violations)."""
    H, G = model.pattern, model.host
    bad = []
    limit = model.depth
    if limit is not None and limit < 0:
        return False, ["negative depth"]

    branches = {}
    for v in H.vertices():
        bset = frozenset(model.branch.get(v, ()))
        if not bset:
            bad.append("branch %d empty or missing" % v)
        if any(not (0 <= x < G.n) for x in bset):
            bad.append("branch %d contains foreign vertices" % v)
        branches[v] = bset
    if bad:
        return False, bad

    for u, v in itertools.combinations(sorted(branches), 2):
        if branches[u] & branches[v]:
            bad.append("branches %d and %d overlap" % (u, v))

    for e in sorted(H.edges):
        img = model.edge_image.get(e)
        if img is None:
            bad.append("edge image missing for %s" % (e,))
            continue
        x, y = img
        if not G.has_edge(x, y):
            bad.append("image %s of %s is not a host edge" % (img, e))
            continue
        if x not in branches[e[0]]:
            bad.append("image of %s does not start in branch %d" % (e, e[0]))
        if y not in branches[e[1]]:
            bad.append("image of %s does not end in branch %d" % (e, e[1]))
    if bad:
        return False, bad

    for v in sorted(H.vertices()):
        bset = branches[v]
        ends = set()
        for e in H.edges:
            img = model.edge_image[e]
            if e[1] == v:
                ends.update(img)
        in_set = sorted(bset & ends)
        starts = set()
        for e in H.edges:
            img = model.edge_image[e]
            if e[0] == v:
                starts.update(img)
        out_set = sorted(bset & starts)

        dists = {a: _dist_within(G, bset, a) for a in bset}
        for a in in_set:
            for b in out_set:
                if not _within(dists[a], b, limit):
                    bad.append("branch %d: no path %s -> %s within depth" % (v, a, b))

        s = model.source.get(v)
        if s is not None:
            if s not in bset:
                bad.append("source of %d outside branch" % v)
            elif not all(_within(dists[s], b, limit) for b in out_set):
                bad.append("source of %d misses part of out set" % v)
        else:
            if not any(
                all(_within(dists[c], b, limit) for b in out_set) for c in bset
            ):
                bad.append("branch %d has no valid source" % v)

        t = model.sink.get(v)
        if t is not None:
            if t not in bset:
                bad.append("sink of %d outside branch" % v)
            elif not all(_within(dists[a], t, limit) for a in in_set):
                bad.append("sink of %d not reached from part of in set" % v)
        else:
            if not any(
                all(_within(dists[a], c, limit) for a in in_set) for c in bset
            ):
                bad.append("branch %d has no valid sink" % v)

    return not bad, bad


def identity_model(G, depth=None):
    """The model of G inside itself via singleton branches."""
    return DirectedModel(
        host=G,
        pattern=G,
        branch={v: frozenset([v]) for v in G.vertices()},
        edge_image={e: e for e in G.edges},
        source={v: v for v in G.vertices()},
        sink={v: v for v in G.vertices()},
        depth=depth,
    )


# ---------------------------------------------------------------------------
# disjoint paths in DAGs


class IntervalPartition:
    """Breakpoints 0 = z_0 < z_1 < ... < z_l = k splitting the 1-based
    request indices into intervals (z_{i-1}, z_i]."""

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints):
        bp = tuple(breakpoints)
        if not bp or bp[0] != 0:
            raise GraphError("breakpoints must start at 0")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise GraphError("breakpoints must be strictly increasing")
        self.breakpoints = bp

    @classmethod
    def from_sizes(cls, sizes):
        bp = [0]
        for s in sizes:
            if s <= 0:
                raise GraphError("interval sizes must be positive")
            bp.append(bp[-1] + s)
        return cls(bp)

    @property
    def k(self):
        return self.breakpoints[-1]

    def groups(self):
        """0-based coordinate indices per interval."""
        return [
            list(range(a, b))
            for a, b in zip(self.breakpoints, self.breakpoints[1:])
        ]


def _reach_sets(G, order):
    reach = {v: {v} for v in G.vertices()}
    for v in reversed(order):
        for w in G.successors(v):
            reach[v] |= reach[w]
    return reach


def dag_disjoint_paths(G, pairs, partition, max_len=None):
    """Paths P_i from s_i to t_i such that requests in different intervals
    of `partition` get fully vertex-disjoint paths (requests within one
    interval may share freely). With max_len set, every path must have at
    most max_len edges. Returns a list of vertex lists, or None.

    Search runs over the implicit product graph whose nodes are k-tuples
    of positions: a step introduces one new host vertex, later in the
    topological order than every current position, and advances any
    subset of the coordinates of a single interval onto it. A virtual
    super-source with an edge to every s_i serves as the common start.
    """
    order = topological_order(G)
    if order is None:
        raise GraphError("host must be acyclic")
    k = len(pairs)
    if partition.k != k:
        raise GraphError("partition covers %d requests, got %d" % (partition.k, k))
    if k == 0:
        return []
    for s, t in pairs:
        G.check_vertex(s)
        G.check_vertex(t)

    f = {v: i for i, v in enumerate(order)}
    f[SUPER] = -1
    if max_len is None:
        reach = _reach_sets(G, order)
        dist = None
    else:
        dist = {v: bfs_dist(G, v) for v in G.vertices()}
        reach = None

    def remaining_ok(pos, w, i, steps):
        t = pairs[i][1]
        if max_len is None:
            return t in reach[w]
        return dist[w].get(t, float("inf")) <= max_len - steps

    # quick infeasibility
    for i, (s, t) in enumerate(pairs):
        if not remaining_ok(None, s, i, 0):
            return None

    groups = partition.groups()
    targets = tuple(t for _, t in pairs)
    start_pos = (SUPER,) * k
    # lengths join the state only when a bound is active; otherwise they
    # would split equivalent positions and bloat the search
    start_len = (-1,) * k if max_len is not None else ()
    start = (start_pos, start_len)
    goal_pos = targets

    parent = {start: None}
    queue = deque([start])
    found = None
    while queue:
        state = queue.popleft()
        pos, lens = state
        if pos == goal_pos:
            found = state
            break
        frontier = max(f[p] for p in pos)
        # candidate new vertices: successors of current positions
        cands = set()
        for i, p in enumerate(pos):
            if p == targets[i] and p != SUPER:
                continue
            nxt = (pairs[i][0],) if p == SUPER else G.successors(p)
            for w in nxt:
                if f[w] > frontier:
                    cands.add(w)
        for w in sorted(cands):
            for group in groups:
                elig = []
                for i in group:
                    p = pos[i]
                    if p == targets[i] and p != SUPER:
                        continue
                    if p == SUPER:
                        if w != pairs[i][0]:
                            continue
                    elif not G.has_edge(p, w):
                        continue
                    if max_len is not None:
                        steps = lens[i] + 1
                        if steps > max_len or not remaining_ok(pos, w, i, steps):
                            continue
                    elif not remaining_ok(pos, w, i, 0):
                        continue
                    elig.append(i)
                if not elig:
                    continue
                for mask in range(1, 1 << len(elig)):
                    moved = [elig[j] for j in range(len(elig)) if mask >> j & 1]
                    npos = list(pos)
                    for i in moved:
                        npos[i] = w
                    if max_len is not None:
                        nlen = list(lens)
                        for i in moved:
                            nlen[i] += 1
                        nstate = (tuple(npos), tuple(nlen))
                    else:
                        nstate = (tuple(npos), ())
                    if nstate in parent:
                        continue
                    parent[nstate] = (state, w, tuple(moved))
                    queue.append(nstate)
    if found is None:
        return None

    paths = [[] for _ in range(k)]
    state = found
    while parent[state] is not None:
        prev, w, moved = parent[state]
        for i in moved:
            paths[i].append(w)
        state = prev
    for p in paths:
        p.reverse()
    return paths


def dag_disjoint_paths_bounded(G, pairs, partition, r):
    """dag_disjoint_paths with every path length capped at r edges."""
    if r < 0:
        raise GraphError("length bound must be nonnegative")
    return dag_disjoint_paths(G, pairs, partition, max_len=r)


# ---------------------------------------------------------------------------
# guess enumeration shared by the minor checkers


def digraph_automorphisms(G):
    """All automorphisms of G as mapping tuples (brute force; patterns
    are tiny)."""
    n = G.n
    profile = [(G.in_degree(v), G.out_degree(v)) for v in range(n)]
    out = []

    def extend(mapping):
        i = len(mapping)
        if i == n:
            out.append(tuple(mapping))
            return
        for cand in range(n):
            if cand in mapping or profile[cand] != profile[i]:
                continue
            ok = True
            for j in range(i):
                if G.has_edge(i, j) != G.has_edge(cand, mapping[j]):
                    ok = False
                    break
                if G.has_edge(j, i) != G.has_edge(mapping[j], cand):
                    ok = False
                    break
            if ok:
                mapping.append(cand)
                extend(mapping)
                mapping.pop()

    extend([])
    return out


def _bounded_reach(G, depth):
    if depth is None:
        order = topological_order(G)
        if order is not None:
            return _reach_sets(G, order)
        return {v: set(bfs_dist(G, v)) for v in G.vertices()}
    return {v: set(bfs_dist(G, v, max_depth=depth)) for v in G.vertices()}


def _enumerate_guesses(H, G, depth=None):
    """Yield (edge_image, source, sink, known) quadruples.

    Enumerates host edges for every pattern edge in lexicographic order
    with symmetry pruning over the pattern's automorphisms, then the
    extra source/sink vertices required by branches whose in or out set
    does not already determine them.
    """
    edge_order = sorted(H.edges)
    host_edges = sorted(G.edges)
    reach = _bounded_reach(G, depth)
    autos = [a for a in digraph_automorphisms(H) if a != tuple(range(H.n))]

    in_edges = {v: sorted(e for e in H.edges if e[1] == v) for v in H.vertices()}
    out_edges = {v: sorted(e for e in H.edges if e[0] == v) for v in H.vertices()}

    co_source_cache = {}
    co_sink_cache = {}

    def co_source(x1, x2):
        """Some host vertex reaches both within depth: necessary for two
        out-tails of one branch (the branch source must cover both)."""
        key = (x1, x2) if x1 <= x2 else (x2, x1)
        got = co_source_cache.get(key)
        if got is None:
            got = any(x1 in reach[s] and x2 in reach[s] for s in range(G.n))
            co_source_cache[key] = got
        return got

    def co_sink(y1, y2):
        """Both heads reach a common vertex within depth: necessary for
        two in-heads of one branch (the branch sink)."""
        key = (y1, y2) if y1 <= y2 else (y2, y1)
        got = co_sink_cache.get(key)
        if got is None:
            got = bool(reach[y1] & reach[y2])
            co_sink_cache[key] = got
        return got

    def canonical(image):
        mine = tuple(image[e] for e in edge_order)
        for a in autos:
            other = tuple(image[(a[e[0]], a[e[1]])] for e in edge_order)
            if other < mine:
                return False
        return True

    image = {}

    def feasible_partial(v):
        ins, outs = set(), set()
        for e in in_edges[v]:
            img = image.get(e)
            if img:
                ins.add(img[1])
        for e in out_edges[v]:
            img = image.get(e)
            if img:
                outs.add(img[0])
        if not all(b in reach[a] for a in ins for b in outs):
            return False
        if not all(co_source(x1, x2) for x1 in outs for x2 in outs if x1 < x2):
            return False
        return all(co_sink(y1, y2) for y1 in ins for y2 in ins if y1 < y2)

    def assign(idx, owner, known):
        if idx == len(edge_order):
            if not canonical(image):
                return
            yield from guess_ends(owner, known)
            return
        e = edge_order[idx]
        u, v = e
        for he in host_edges:
            x, y = he
            if owner.get(x, u) != u or owner.get(y, v) != v:
                continue
            image[e] = he
            touched = []
            for host_v, pat_v in ((x, u), (y, v)):
                if host_v not in owner:
                    owner[host_v] = pat_v
                    known[pat_v].add(host_v)
                    touched.append((host_v, pat_v))
            if feasible_partial(u) and feasible_partial(v):
                yield from assign(idx + 1, owner, known)
            del image[e]
            for host_v, pat_v in touched:
                del owner[host_v]
                known[pat_v].discard(host_v)

    def guess_ends(owner, known):
        need = []
        fixed_source = {}
        fixed_sink = {}
        for v in sorted(H.vertices()):
            ins = sorted({image[e][1] for e in in_edges[v]})
            outs = sorted({image[e][0] for e in out_edges[v]})
            if ins:
                fixed_source[v] = ins[0]
            elif len(outs) == 1:
                fixed_source[v] = outs[0]
            elif outs:
                need.append(("source", v, outs))
            else:
                need.append(("free", v, None))
            if outs:
                fixed_sink[v] = outs[0]
            elif len(ins) == 1:
                fixed_sink[v] = ins[0]
            elif ins:
                need.append(("sink", v, ins))

        def fill(j, extra):
            if j == len(need):
                source = dict(fixed_source)
                sink = dict(fixed_sink)
                for (kind, v, _), host_v in zip(need, extra):
                    if kind in ("source", "free"):
                        source[v] = host_v
                    if kind in ("sink", "free"):
                        sink[v] = host_v
                for v in H.vertices():
                    source.setdefault(v, sink.get(v))
                    sink.setdefault(v, source.get(v))
                kn = {v: frozenset(known[v]) | {source[v], sink[v]} for v in H.vertices()}
                yield dict(image), source, sink, kn
                return
            kind, v, anchors = need[j]
            for cand in range(G.n):
                if owner.get(cand, v) != v:
                    continue
                if cand in extra:
                    continue
                if kind == "source" and not all(b in reach[cand] for b in anchors):
                    continue
                if kind == "sink" and not all(cand in reach[a] for a in anchors):
                    continue
                claimed = cand not in owner
                if claimed:
                    owner[cand] = v
                extra.append(cand)
                yield from fill(j + 1, extra)
                extra.pop()
                if claimed:
                    del owner[cand]

        yield from fill(0, [])

    yield from assign(0, {}, {v: set() for v in H.vertices()})


def _branch_requests(H, image, source, sink):
    """Connection requests per pattern vertex: (vertex, from, to) triples
    whose paths, found inside the branch, complete the model."""
    reqs = []
    for v in sorted(H.vertices()):
        ins = sorted({image[e][1] for e in H.edges if e[1] == v})
        outs = sorted({image[e][0] for e in H.edges if e[0] == v})
        if ins and outs:
            reqs.extend((v, a, b) for a in ins for b in outs)
            t = sink[v]
            if t not in outs:
                reqs.extend((v, a, t) for a in ins)
        elif ins:
            t = sink[v]
            reqs.extend((v, a, t) for a in ins)
        elif outs:
            s = source[v]
            reqs.extend((v, s, b) for b in outs)
        else:
            s = source[v]
            reqs.append((v, s, s))
    return reqs


def _assemble(H, G, image, source, sink, request_paths, depth):
    branch = {v: set() for v in H.vertices()}
    for (v, _, _), path in request_paths:
        branch[v].update(path)
    for v in H.vertices():
        branch[v].add(source[v])
        branch[v].add(sink[v])
    model = DirectedModel(
        host=G,
        pattern=H,
        branch={v: frozenset(b) for v, b in branch.items()},
        edge_image=dict(image),
        source=dict(source),
        sink=dict(sink),
        depth=depth,
    )
    ok, bad = verify_model(model)
    if not ok:
        raise RuntimeError("internal: assembled model failed verification: %s" % bad)
    return model


def dag_minor_check(H, G):
    """Directed-minor test on an acyclic host: guess edge images and the
    needed source/sink vertices, then complete the branch sets with the
    disjoint-paths search using one interval per pattern vertex. Returns
    a verified model or None."""
    if topological_order(G) is None:
        raise GraphError("host must be acyclic")
    if find_cycle(H) is not None:
        return None  # a minor of a DAG is itself acyclic
    return _dag_guess_loop(H, G, depth=None)


def _dag_guess_loop(H, G, depth):
    for image, source, sink, _known in _enumerate_guesses(H, G, depth):
        reqs = _branch_requests(H, image, source, sink)
        sizes = []
        for v in sorted(H.vertices()):
            cnt = sum(1 for r in reqs if r[0] == v)
            if cnt:
                sizes.append(cnt)
        part = IntervalPartition.from_sizes(sizes)
        pairs = [(a, b) for (_, a, b) in reqs]
        paths = dag_disjoint_paths(G, pairs, part, max_len=depth)
        if paths is None:
            continue
        return _assemble(H, G, image, source, sink, list(zip(reqs, paths)), depth)
    return None


def shallow_minor_check(H, G, r):
    """Depth-r minor test: edge-image guessing plus a search for the
    length-bounded connecting paths; on acyclic hosts the bounded
    disjoint-paths routine does the completion."""
    if r < 0:
        raise GraphError("depth must be nonnegative")
    if topological_order(G) is not None:
        if find_cycle(H) is not None:
            return None
        return _dag_guess_loop(H, G, depth=r)
    for image, source, sink, known in _enumerate_guesses(H, G, r):
        owner = {}
        conflict = False
        for v, vs in known.items():
            for x in vs:
                if owner.setdefault(x, v) != v:
                    conflict = True
            if conflict:
                break
        if conflict:
            continue
        reqs = _branch_requests(H, image, source, sink)
        assigned = _assign_request_paths(G, reqs, owner, r)
        if assigned is None:
            continue
        return _assemble(H, G, image, source, sink, assigned, r)
    return None


def _assign_request_paths(G, reqs, owner, r):
    """Backtracking completion for general hosts: pick a directed path of
    length <= r per request, vertices free or already of the same branch."""
    out = []

    def paths_from(a, b, v):
        """Simple a->b paths, length <= r, usable by branch v."""
        found = []

        def dfs(cur, path):
            if cur == b:
                found.append(list(path))
                # a path may continue through b only as its endpoint
            if len(path) - 1 == r:
                return
            for w in G.successors(cur):
                if w in path:
                    continue
                if owner.get(w, v) != v:
                    continue
                path.append(w)
                dfs(w, path)
                path.pop()

        if owner.get(a, v) == v and owner.get(b, v) == v:
            dfs(a, [a])
        return found

    def rec(idx):
        if idx == len(reqs):
            return True
        v, a, b = reqs[idx]
        for path in paths_from(a, b, v):
            claimed = []
            for x in path:
                if x not in owner:
                    owner[x] = v
                    claimed.append(x)
            out.append(((v, a, b), path))
            if rec(idx + 1):
                return True
            out.pop()
            for x in claimed:
                del owner[x]
        return False

    if rec(0):
        return out
    return None


# ---------------------------------------------------------------------------
# exhaustive checking on arbitrary hosts


def _complete_model_on_branches(H, G, blocks, depth):
    """Given fixed disjoint branch sets (pattern vertex -> vertex set),
    search the edge-image choices completing a valid model. Returns a
    model or None. Exact: in/out sets only grow along the assignment, and
    every condition is monotone against that growth."""
    limit = depth
    dists = {}
    for v, bset in blocks.items():
        dists[v] = {a: _dist_within(G, bset, a) for a in bset}

    edge_order = sorted(H.edges)
    cands = []
    for (u, v) in edge_order:
        cs = [
            (x, y)
            for (x, y) in sorted(G.edges)
            if x in blocks[u] and y in blocks[v]
        ]
        if not cs:
            return None
        cands.append(cs)

    ins = {v: set() for v in H.vertices()}
    outs = {v: set() for v in H.vertices()}
    image = {}

    def branch_ok(v):
        return all(
            _within(dists[v][a], b, limit) for a in ins[v] for b in outs[v]
        )

    def ends_ok():
        source, sink = {}, {}
        for v in sorted(H.vertices()):
            bset = sorted(blocks[v])
            s = None
            if ins[v]:
                s = min(ins[v])
            else:
                for c in bset:
                    if all(_within(dists[v][c], b, limit) for b in outs[v]):
                        s = c
                        break
            if s is None:
                return None
            t = None
            if outs[v]:
                t = min(outs[v])
            else:
                for c in bset:
                    if all(_within(dists[v][a], c, limit) for a in ins[v]):
                        t = c
                        break
            if t is None:
                return None
            source[v], sink[v] = s, t
        return source, sink

    def rec(idx):
        if idx == len(edge_order):
            ends = ends_ok()
            if ends is None:
                return None
            source, sink = ends
            model = DirectedModel(
                host=G,
                pattern=H,
                branch={v: frozenset(b) for v, b in blocks.items()},
                edge_image=dict(image),
                source=source,
                sink=sink,
                depth=depth,
            )
            ok, bad = verify_model(model)
            if not ok:
                raise RuntimeError("internal: completion failed verification: %s" % bad)
            return model
        u, v = edge_order[idx]
        for (x, y) in cands[idx]:
            added_out = x not in outs[u]
            added_in = y not in ins[v]
            image[(u, v)] = (x, y)
            outs[u].add(x)
            ins[v].add(y)
            if branch_ok(u) and branch_ok(v):
                got = rec(idx + 1)
                if got is not None:
                    return got
            del image[(u, v)]
            if added_out:
                outs[u].discard(x)
            if added_in:
                ins[v].discard(y)
        return None

    return rec(0)


def general_minor_check(H, G, depth=None):
    """Sound-and-complete directed-minor test by exhaustive backtracking
    over branch-set assignments; intended for hosts of a dozen vertices
    or fewer. Every positive answer is a verified model."""
    hvs = sorted(H.vertices(), key=lambda v: (-(H.in_degree(v) + H.out_degree(v)), v))
    if H.n == 0:
        return DirectedModel(G, H, {}, {}, {}, {}, depth)
    if H.n > G.n:
        return None

    blocks = {}

    def rec(idx, free):
        if idx == len(hvs):
            return _complete_model_on_branches(H, G, blocks, depth)
        v = hvs[idx]
        budget = len(free) - (len(hvs) - idx - 1)
        for size in range(1, budget + 1):
            for sub in itertools.combinations(free, size):
                sset = set(sub)
                ok = True
                for u in hvs[:idx]:
                    if H.has_edge(u, v) and not _edge_between(G, blocks[u], sset):
                        ok = False
                        break
                    if H.has_edge(v, u) and not _edge_between(G, sset, blocks[u]):
                        ok = False
                        break
                if not ok:
                    continue
                blocks[v] = sset
                got = rec(idx + 1, [x for x in free if x not in sset])
                if got is not None:
                    return got
                del blocks[v]
        return None

    return rec(0, sorted(G.vertices()))


def _edge_between(G, A, B):
    return any(G.has_edge(x, y) for x in A for y in B)


def subgraph_check(H, G):
    """Injective map of V(H) into V(G) preserving edges (not induced), or
    None. Exhaustive backtracking with degree pruning."""
    hvs = sorted(H.vertices(), key=lambda v: (-(H.in_degree(v) + H.out_degree(v)), v))
    mapping = {}
    used = set()

    def rec(idx):
        if idx == len(hvs):
            return dict(mapping)
        v = hvs[idx]
        for cand in G.vertices():
            if cand in used:
                continue
            if G.out_degree(cand) < H.out_degree(v) or G.in_degree(cand) < H.in_degree(v):
                continue
            ok = True
            for u in hvs[:idx]:
                if H.has_edge(u, v) and not G.has_edge(mapping[u], cand):
                    ok = False
                    break
                if H.has_edge(v, u) and not G.has_edge(cand, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = cand
                used.add(cand)
                got = rec(idx + 1)
                if got is not None:
                    return got
                del mapping[v]
                used.discard(cand)
        return None

    return rec(0)


# ---------------------------------------------------------------------------
# butterfly minors


def butterfly_contract(G, e):
    """Contract edge e = (u, v), legal only when u has outdegree 1 or v
    has indegree 1. The merged vertex keeps the smaller id; ids above the
    larger one shift down by one."""
    u, v = e
    if not G.has_edge(u, v):
        raise GraphError("(%s, %s) is not an edge" % (u, v))
    if G.out_degree(u) != 1 and G.in_degree(v) != 1:
        raise GraphError(
            "cannot contract (%s, %s): outdeg(u)=%d, indeg(v)=%d"
            % (u, v, G.out_degree(u), G.in_degree(v))
        )
    keep, drop = min(u, v), max(u, v)

    def relabel(x):
        x = keep if x in (u, v) else x
        return x if x < drop else x - 1

    es = set()
    for (a, b) in G.edges:
        na, nb = relabel(a), relabel(b)
        if na != nb:
            es.add((na, nb))
    return Digraph(G.n - 1, sorted(es))


def legal_butterfly_contractions(G):
    return sorted(
        e for e in G.edges if G.out_degree(e[0]) == 1 or G.in_degree(e[1]) == 1
    )


def digraph_isomorphic(A, B):
    """Exact isomorphism test by backtracking with degree-profile pruning."""
    if A.n != B.n or A.num_edges() != B.num_edges():
        return False
    prof_a = [(A.in_degree(v), A.out_degree(v)) for v in A.vertices()]
    prof_b = [(B.in_degree(v), B.out_degree(v)) for v in B.vertices()]
    if sorted(prof_a) != sorted(prof_b):
        return False
    order = sorted(A.vertices(), key=lambda v: (prof_a[v], v))
    mapping = {}
    used = set()

    def rec(idx):
        if idx == A.n:
            return True
        v = order[idx]
        for cand in B.vertices():
            if cand in used or prof_b[cand] != prof_a[v]:
                continue
            ok = True
            for u in order[:idx]:
                if A.has_edge(u, v) != B.has_edge(mapping[u], cand):
                    ok = False
                    break
                if A.has_edge(v, u) != B.has_edge(cand, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = cand
                used.add(cand)
                if rec(idx + 1):
                    return True
                del mapping[v]
                used.discard(cand)
        return False

    return rec(0)


def _iso_invariant(G):
    degs = tuple(sorted((G.in_degree(v), G.out_degree(v)) for v in G.vertices()))
    sig = tuple(
        sorted(
            (G.out_degree(u), G.in_degree(u), G.out_degree(v), G.in_degree(v))
            for (u, v) in G.edges
        )
    )
    return (G.n, G.num_edges(), degs, sig)


def is_butterfly_minor(H, G):
    """Exhaustive test for H obtainable from G by vertex/edge deletions
    and butterfly contractions, with memoization on isomorphism classes
    of intermediate graphs. Desk scale."""
    hn, hm = H.n, H.num_edges()
    seen = {}

    def visit(X):
        key = _iso_invariant(X)
        bucket = seen.setdefault(key, [])
        for Y in bucket:
            if digraph_isomorphic(X, Y):
                return True
        bucket.append(X)
        return False

    def search(X):
        if X.n < hn or X.num_edges() < hm:
            return False
        if visit(X):
            return False
        if X.n == hn and X.num_edges() == hm:
            return digraph_isomorphic(X, H)
        if X.n > hn:
            for v in X.vertices():
                keep = [x for x in X.vertices() if x != v]
                sub, _ = X.induced(keep)
                if search(sub):
                    return True
            for e in legal_butterfly_contractions(X):
                if search(butterfly_contract(X, e)):
                    return True
        if X.num_edges() > hm:
            for e in sorted(X.edges):
                if search(Digraph(X.n, X.edges - {e})):
                    return True
        return False

    return search(G)


def bipartite_minor_equiv_check(H, G):
    """For directed-bipartite patterns the minor relation and the
    butterfly relation coincide, and branch sets may be taken to be in-
    or out-branchings. Runs both checks, raises on disagreement, and
    returns (found, model-with-branching-branches-or-None)."""
    if is_directed_bipartite(H) is None:
        raise GraphError("pattern must be directed bipartite")
    model = general_minor_check(H, G)
    bfly = is_butterfly_minor(H, G)
    if (model is not None) != bfly:
        raise RuntimeError(
            "directed-minor and butterfly-minor checks disagree on a bipartite pattern"
        )
    if model is None:
        return False, None
    return True, normalize_bipartite_model(model)


def normalize_bipartite_model(model):
    """Shrink every branch to the tree of its designated vertex: an
    out-branching from the source on the source side, an in-branching
    into the sink on the sink side."""
    H, G = model.pattern, model.host
    new_branch = {}
    for v in H.vertices():
        bset = set(model.branch[v])
        outs = {model.edge_image[e][0] for e in H.edges if e[0] == v}
        ins = {model.edge_image[e][1] for e in H.edges if e[1] == v}
        if outs:
            root = model.source[v]
            dist = _dist_within(G, bset, root)
            keep = set()
            anchors = set(outs) | {root}
            # ancestors along BFS parents toward each anchor
            parent = _bfs_parents(G, bset, root)
            for a in anchors:
                x = a
                while x is not None:
                    keep.add(x)
                    x = parent.get(x)
            new_branch[v] = frozenset(keep)
        elif ins:
            root = model.sink[v]
            parent = _bfs_parents(G.reversed(), bset, root)
            keep = set()
            anchors = set(ins) | {root}
            for a in anchors:
                x = a
                while x is not None:
                    keep.add(x)
                    x = parent.get(x)
            new_branch[v] = frozenset(keep)
        else:
            new_branch[v] = frozenset([model.source[v]])
    slim = DirectedModel(
        host=G,
        pattern=H,
        branch=new_branch,
        edge_image=dict(model.edge_image),
        source=dict(model.source),
        sink=dict(model.sink),
        depth=model.depth,
    )
    ok, bad = verify_model(slim)
    if not ok:
        raise RuntimeError("internal: branching normalization broke the model: %s" % bad)
    return slim


def _bfs_parents(G, allowed, root):
    allowed = set(allowed)
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in G.successors(v):
            if w in allowed and w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def is_branching_model(model):
    """True iff every branch with out-edges is spanned by an out-tree
    from its source, and every branch with in-edges by an in-tree into
    its sink."""
    H, G = model.pattern, model.host
    for v in H.vertices():
        bset = set(model.branch[v])
        has_out = any(e[0] == v for e in H.edges)
        has_in = any(e[1] == v for e in H.edges)
        if has_out:
            if set(_dist_within(G, bset, model.source[v])) != bset:
                return False
        elif has_in:
            rev = G.reversed()
            if set(_dist_within(rev, bset, model.sink[v])) != bset:
                return False
    return True


# ---------------------------------------------------------------------------
# topological minors


@dataclass(frozen=True)
class SubdivisionWitness:
    host: Digraph
    pattern: Digraph
    placement: dict  # pattern vertex -> host vertex
    paths: dict  # pattern edge -> host vertex list


def topological_minor_check(H, G):
    """Search for a subdivision of H inside G: an injective placement of
    the pattern vertices plus internally disjoint directed paths, one per
    pattern edge. Desk-scale backtracking; returns a witness or None."""
    hvs = sorted(H.vertices(), key=lambda v: (-(H.in_degree(v) + H.out_degree(v)), v))
    edge_order = sorted(H.edges)

    def paths_between(a, b, blocked):
        found = []

        def dfs(cur, path):
            if cur == b:
                found.append(list(path))
                return
            for w in G.successors(cur):
                if w in path or (w in blocked and w != b):
                    continue
                path.append(w)
                dfs(w, path)
                path.pop()

        dfs(a, [a])
        return found

    placement = {}
    used = set()

    def place(idx):
        if idx == len(hvs):
            return route(0, set(placement.values()), {})
        v = hvs[idx]
        for cand in G.vertices():
            if cand in used:
                continue
            if G.out_degree(cand) < H.out_degree(v) or G.in_degree(cand) < H.in_degree(v):
                continue
            placement[v] = cand
            used.add(cand)
            got = place(idx + 1)
            if got is not None:
                return got
            del placement[v]
            used.discard(cand)
        return None

    def route(idx, blocked, chosen):
        if idx == len(edge_order):
            return SubdivisionWitness(G, H, dict(placement), dict(chosen))
        u, v = edge_order[idx]
        a, b = placement[u], placement[v]
        for path in paths_between(a, b, blocked):
            inner = path[1:-1]
            if any(x in blocked for x in inner):
                continue
            chosen[(u, v)] = path
            got = route(idx + 1, blocked | set(inner), chosen)
            if got is not None:
                return got
            del chosen[(u, v)]
        return None

    return place(0)


def subdivision_to_model(w):
    """Convert a subdivision witness into a directed model: internal path
    vertices join the branch of the head endpoint, the image of a pattern
    edge is the first edge of its path."""
    H, G = w.pattern, w.host
    branch = {v: {w.placement[v]} for v in H.vertices()}
    image = {}
    for e, path in w.paths.items():
        image[e] = (path[0], path[1])
        branch[e[1]].update(path[1:-1])
        branch[e[1]].add(path[-1])
    model = DirectedModel(
        host=G,
        pattern=H,
        branch={v: frozenset(b) for v, b in branch.items()},
        edge_image=image,
        source={v: w.placement[v] for v in H.vertices()},
        sink={v: w.placement[v] for v in H.vertices()},
        depth=None,
    )
    ok, bad = verify_model(model)
    if not ok:
        raise RuntimeError("internal: subdivision conversion failed: %s" % bad)
    return model


# ---------------------------------------------------------------------------
# grad


def grad(G, r):
    """Greatest density |E(H)|/|V(H)| over depth-r minors H of G, by
    exhaustive search over branch-set families. Exponential; intended for
    hosts of about ten vertices or fewer."""
    if r < 0:
        raise GraphError("depth must be nonnegative")
    best = Fraction(0)
    n = G.n
    blocks = []

    def assign(v):
        nonlocal best
        if v == n:
            if blocks:
                got = _max_edges_over_blocks(G, blocks, r, best)
                if got is not None:
                    best = max(best, got)
            return
        # leave v out of every branch
        assign(v + 1)
        for b in blocks:
            b.add(v)
            assign(v + 1)
            b.discard(v)
        blocks.append({v})
        assign(v + 1)
        blocks.pop()

    assign(0)
    return best


def _max_edges_over_blocks(G, blocks, r, floor):
    """Largest pattern edge count realizable on the given branch family
    at depth r; None when not even the edgeless pattern fits."""
    p = len(blocks)
    dists = [{a: _dist_within(G, b, a) for a in b} for b in blocks]
    pair_cands = []
    for i in range(p):
        for j in range(p):
            if i == j:
                continue
            cs = [
                (x, y)
                for x in sorted(blocks[i])
                for y in sorted(blocks[j])
                if G.has_edge(x, y)
            ]
            if cs:
                pair_cands.append((i, j, cs))
    ins = [set() for _ in range(p)]
    outs = [set() for _ in range(p)]
    best_cnt = -1

    def block_ok(i):
        return all(dists[i][a].get(b, float("inf")) <= r for a in ins[i] for b in outs[i])

    def ends_exist():
        for i in range(p):
            if not ins[i]:
                if not any(
                    all(dists[i][c].get(b, float("inf")) <= r for b in outs[i])
                    for c in blocks[i]
                ):
                    return False
            if not outs[i]:
                if not any(
                    all(dists[i][a].get(c, float("inf")) <= r for a in ins[i])
                    for c in blocks[i]
                ):
                    return False
        return True

    def rec(idx, cnt):
        nonlocal best_cnt
        if cnt + (len(pair_cands) - idx) <= best_cnt:
            return
        if idx == len(pair_cands):
            if ends_exist():
                best_cnt = max(best_cnt, cnt)
            return
        i, j, cs = pair_cands[idx]
        for (x, y) in cs:
            added_out = x not in outs[i]
            added_in = y not in ins[j]
            outs[i].add(x)
            ins[j].add(y)
            if block_ok(i) and block_ok(j):
                rec(idx + 1, cnt + 1)
            if added_out:
                outs[i].discard(x)
            if added_in:
                ins[j].discard(y)
        rec(idx + 1, cnt)

    rec(0, 0)
    if best_cnt < 0:
        return None
    return Fraction(best_cnt, p)


# ---------------------------------------------------------------------------
# undirected oracles


def undirected_minor_check(H, G):
    """Brute-force undirected minor test: assign each pattern vertex a
    connected branch of host vertices, disjoint across the pattern, with
    every pattern edge realized between its branches."""
    h, n = H.n, G.n
    if h == 0:
        return True
    if h > n:
        return False

    def connected(block):
        block = set(block)
        start = min(block)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in G.neighbors(v):
                if w in block and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen == block

    order = sorted(
        H.vertices(), key=lambda v: (-len(H.neighbors(v)), v)
    )
    blocks = {}

    def rec(idx, free):
        if idx == h:
            return True
        v = order[idx]
        budget = len(free) - (h - idx - 1)
        for size in range(1, budget + 1):
            for sub in itertools.combinations(free, size):
                if not connected(sub):
                    continue
                ok = True
                for u in order[:idx]:
                    if H.has_edge(u, v) and not any(
                        G.has_edge(x, y) for x in blocks[u] for y in sub
                    ):
                        ok = False
                        break
                if not ok:
                    continue
                blocks[v] = sub
                if rec(idx + 1, [x for x in free if x not in set(sub)]):
                    return True
                del blocks[v]
        return False

    return rec(0, sorted(G.vertices()))
