"""Scattered sets and the crown-or-scattered dichotomy.

Given a digraph with an r-scattered set, the dichotomy either exhibits a
crown of order q as a depth-r minor or produces an (r+1)-scattered set
after deleting few vertices. The extraction pipeline mirrors the
underlying combinatorics: a label-avoiding clique step, a crown
extractor for one level class, a trichotomy over level classes, and a
peeling loop on top.

The guaranteed thresholds for these constructions are astronomically
large, so everything here runs in best-effort mode: pools are consumed
until exhausted, every candidate witness is verified from scratch, and
an explicit BudgetExhausted signals that the pools ran out. No wrong
witness is ever returned.
"""

import itertools
import math
from dataclasses import dataclass

from .digraph import Digraph, GraphError, bfs_dist
from .generators import crown
from .minors import DirectedModel, verify_model


class BudgetExhausted(RuntimeError):
    """Desk-scale pools ran out below the guaranteed thresholds."""


# ---------------------------------------------------------------------------
# scattered sets


def is_scattered(G, U, d, deleted=()):
    """True iff no vertex of G - deleted has two distinct members of U in
    its d-out-neighborhood (computed in G - deleted)."""
    if d < 0:
        raise GraphError("radius must be nonnegative")
    U = list(U)
    if len(set(U)) != len(U):
        raise GraphError("scattered candidates must be distinct")
    dead = frozenset(deleted)
    members = set(U)
    if members & dead:
        return False
    for v in G.vertices():
        if v in dead:
            continue
        ball = bfs_dist(G, v, max_depth=d, avoid=dead)
        hits = 0
        for u in ball:
            if u in members:
                hits += 1
                if hits >= 2:
                    return False
    return True


@dataclass(frozen=True)
class ScatteredWitness:
    """U is radius-scattered in graph - deleted."""

    graph: Digraph
    deleted: tuple
    members: tuple
    radius: int

    def verify(self):
        return is_scattered(self.graph, self.members, self.radius, self.deleted)


def compute_scattered(G, W, d, m, s_budget, probe_cap=14):
    """Search for S (|S| <= s_budget) and U in W (|U| = m) with U
    d-scattered in G - S, via the common-ancestor construction: for a
    candidate U' the set C of vertices that d-in-dominate two members is
    deleted, which scatters the survivors.

    Subsets are tried by increasing size then lexicographically, over the
    first probe_cap elements of W. Returns a verified witness or None.
    """
    W = sorted(set(W))
    if m > len(W):
        raise GraphError("need |W| >= m")
    if m <= 0:
        raise GraphError("target size must be positive")
    probe = W[:probe_cap]
    balls = {u: frozenset(bfs_dist(G, u, max_depth=d, direction="in")) for u in probe}
    for size in range(m, len(probe) + 1):
        for U in itertools.combinations(probe, size):
            C = set()
            for u, u2 in itertools.combinations(U, 2):
                C |= balls[u] & balls[u2]
            rest = [u for u in U if u not in C]
            if len(rest) >= m and len(C) <= s_budget:
                w = ScatteredWitness(G, tuple(sorted(C)), tuple(rest[:m]), d)
                if not w.verify():
                    raise RuntimeError("internal: common-ancestor deletion failed to scatter")
                return w
    return None


# ---------------------------------------------------------------------------
# bound functions (exact integers; they explode quickly and are used as
# reference values only -- the extractors never evaluate them)


def ramsey_upper(n):
    """Upper bound on the least m forcing a monochromatic K_n in any
    2-coloring of K_m (central binomial bound)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return 1
    return math.comb(2 * n - 2, n - 1)


def clique_threshold(n):
    """Pool size guaranteeing the label-avoiding clique extraction:
    f(1) = 1, f(n+1) = 1 + R(2 f(n))."""
    if n < 1:
        raise ValueError("need n >= 1")
    f = 1
    for _ in range(n - 1):
        f = 1 + ramsey_upper(2 * f)
    return f


def uniform_level_threshold(q, n):
    """Pool size guaranteeing the one-level crown extraction:
    g(q, n) = (2n)^(2 f(q))."""
    return (2 * n) ** (2 * clique_threshold(q))


def trichotomy_threshold(r, p, q, n):
    """Pool size guaranteeing the three-way outcome:
    (r+3)^(p + (r+2) g(q, n))."""
    return (r + 3) ** (p + (r + 2) * uniform_level_threshold(q, n))


def dichotomy_threshold_steps(r, p, q, t):
    """Iterated trichotomy threshold: step 0 is q, each further step
    feeds the previous value in as the degree bound."""
    val = q
    for _ in range(t):
        val = trichotomy_threshold(r, p, q, val)
    return val


def dichotomy_threshold(r, p, q):
    return dichotomy_threshold_steps(r, p, q, math.comb(q, 2))


def wideness_threshold(r, m, exclusion_order):
    """Required set size N(r, m) for the iterated dichotomy, given the
    excluded crown order per depth as a callable."""
    val = m
    for i in range(r - 1, -1, -1):
        val = dichotomy_threshold(r, val, exclusion_order(i))
    return val


def deletion_budget(r, exclusion_order):
    """Total deletions s(r) across the iterated dichotomy."""
    return sum(math.comb(exclusion_order(i), 2) for i in range(r))


_BOUNDS = {
    "ramsey": ramsey_upper,
    "clique": clique_threshold,
    "uniform-level": uniform_level_threshold,
    "trichotomy": trichotomy_threshold,
    "dichotomy-steps": dichotomy_threshold_steps,
    "dichotomy": dichotomy_threshold,
    "wideness": wideness_threshold,
    "deletions": deletion_budget,
}


def bounds_eval(which, *args):
    """Evaluate one of the named bound functions by key. The values are
    exact integers and explode quickly; keep the arguments tiny."""
    try:
        fn = _BOUNDS[which]
    except KeyError:
        raise ValueError("unknown bound %r (have %s)" % (which, sorted(_BOUNDS))) from None
    return fn(*args)


# ---------------------------------------------------------------------------
# controlled bipartite graphs


class ControlledBipartite:
    """Bipartite digraph (A to B) enriched with control data.

    base maps a vertex to the B-vertex it sits close to (or None); level
    orders vertices by that closeness (r+1 meaning no base); eta labels
    every edge (a, b) with the walk tail that realizes it, listed along
    the walk and ending at b. base and level must be defined for every
    A-vertex, every B-vertex and every vertex appearing in a label.

    Labels are opaque hashables. When built over a ground digraph, labels
    are ground vertex ids, and one id may appear on both sides (the two
    roles stay distinct; edges are always read as A-side to B-side).
    """

    def __init__(self, a_nodes, b_nodes, edges, base, level, eta, r, ground=None):
        self.a_nodes = tuple(sorted(a_nodes))
        self.b_nodes = tuple(sorted(b_nodes))
        self.edges = frozenset(edges)
        self.base = dict(base)
        self.level = dict(level)
        self.eta = {e: tuple(val) for e, val in eta.items()}
        self.r = r
        self.ground = ground
        self._succ = {a: [] for a in self.a_nodes}
        self._pred = {b: [] for b in self.b_nodes}
        for (a, b) in sorted(self.edges):
            self._succ[a].append(b)
            self._pred[b].append(a)

    def a_successors(self, a):
        return tuple(self._succ[a])

    def b_predecessors(self, b):
        return tuple(self._pred[b])

    def out_degree(self, a):
        return len(self._succ[a])

    def max_out_degree(self):
        return max((len(s) for s in self._succ.values()), default=0)

    def check(self, constructed=False):
        """Structural invariants; returns (ok, violations).

        Always: edges within A x B, levels in range, every edge label a
        chain of vertices based at the edge's endpoint with strictly
        increasing levels, and label levels below the tail's own level on
        base edges. With constructed=True additionally: the tail's level
        equals its least label length, and base is empty exactly at
        level r+1.
        """
        bad = []
        aset, bset = set(self.a_nodes), set(self.b_nodes)
        for (a, b) in self.edges:
            if a not in aset or b not in bset:
                bad.append("edge (%s, %s) leaves the bipartition" % (a, b))
        referenced = set(self.a_nodes) | set(self.b_nodes)
        for tail in self.eta.values():
            referenced.update(tail)
        for x in referenced:
            if x not in self.level:
                bad.append("no level for %s" % (x,))
            elif not (0 <= self.level[x] <= self.r + 1):
                bad.append("level of %s out of range" % (x,))
            if x not in self.base:
                bad.append("no base entry for %s" % (x,))
        if bad:
            return False, bad
        for e in sorted(self.edges, key=repr):
            a, b = e
            tail = self.eta.get(e)
            if tail is None:
                bad.append("edge %s has no label" % (e,))
                continue
            lvls = [self.level[x] for x in tail]
            if sorted(lvls) != sorted(set(lvls)) or lvls != sorted(lvls, reverse=True):
                bad.append("label of %s not a strictly ordered chain" % (e,))
            for x in tail:
                if self.base[x] != b:
                    bad.append("label vertex %s of %s not based at %s" % (x, e, b))
            if self.base[a] == b and tail:
                if max(lvls) >= self.level[a]:
                    bad.append("base edge %s carries a label at or above its level" % (e,))
        if constructed:
            for a in self.a_nodes:
                lens = [len(self.eta[(a, b)]) for b in self._succ[a]]
                if lens and min(lens) != self.level[a]:
                    bad.append("level of %s is not its least label length" % (a,))
                if (self.base[a] is None) != (self.level[a] == self.r + 1):
                    bad.append("base/level mismatch at %s" % (a,))
        return not bad, bad

    def one_scattered(self, members):
        """No A-vertex sees two of `members` among its successors."""
        members = set(members)
        for a in self.a_nodes:
            if sum(1 for b in self._succ[a] if b in members) >= 2:
                return False
        return True

    def restrict(self, a_keep, b_keep, zero_base_outside=False):
        """Induced sub-structure; optionally clears bases that left the
        B-side (levels and labels are kept as they are)."""
        a_keep = set(a_keep)
        b_keep = set(b_keep)
        edges = {(a, b) for (a, b) in self.edges if a in a_keep and b in b_keep}
        base = dict(self.base)
        if zero_base_outside:
            for a in a_keep:
                if base.get(a) is not None and base[a] not in b_keep:
                    base[a] = None
        eta = {e: self.eta[e] for e in edges}
        return ControlledBipartite(
            sorted(a_keep), sorted(b_keep), edges, base, self.level, eta, self.r, self.ground
        )


@dataclass(frozen=True)
class ControlledCrown:
    """Crown of the given order inside a controlled bipartite graph:
    principals are the B-side sinks, connectors[k] covers the k-th pair
    of principals (pairs in lexicographic order)."""

    order: int
    principals: tuple
    connectors: tuple

    def pair_of(self, k):
        q = self.order
        i = 0
        while k >= q - 1 - i:
            k -= q - 1 - i
            i += 1
        return i, i + 1 + k

    def crown_edges(self):
        for k, a in enumerate(self.connectors):
            i, j = self.pair_of(k)
            yield (a, self.principals[i])
            yield (a, self.principals[j])


def verify_controlled_crown(cb, cc):
    """Full check: correct shape, all crown edges present, and no edge
    label meeting the crown anywhere except at the edge's own endpoint."""
    q = cc.order
    if len(cc.principals) != q or len(cc.connectors) != math.comb(q, 2):
        return False
    body = set(cc.principals) | set(cc.connectors)
    if len(body) != q + math.comb(q, 2):
        return False  # duplicate labels or a connector colliding with a principal
    for (a, b) in cc.crown_edges():
        if (a, b) not in cb.edges:
            return False
        if (set(cb.eta[(a, b)]) - {b}) & body:
            return False
    return True


def cc2_condition(cb, cc):
    """Sufficient criterion: no connector is based inside the principal
    set. Implies the full label condition for A-side collisions."""
    pr = set(cc.principals)
    return all(cb.base.get(a) not in pr for a in cc.connectors)


# ---------------------------------------------------------------------------
# label-avoiding clique extraction


def label_avoiding_clique(vertices, gamma, n):
    """A set H of n vertices of the complete graph on `vertices` such
    that no internal edge's label lies in H.

    gamma maps frozenset pairs to a single vertex or None, with
    gamma(e) disjoint from e. Recursion: pick the first vertex v, split
    the remaining edges by whether their label is exactly v, take an
    exact maximum clique in either color class; the v-colored case
    yields the answer directly, the other case strips label partners
    greedily and recurses. Raises BudgetExhausted when pools run dry.
    """
    verts = sorted(vertices)
    if n < 1:
        raise GraphError("clique target must be positive")

    def g(u, w):
        got = gamma.get(frozenset((u, w)))
        if got is not None and got in (u, w):
            raise GraphError("edge label must avoid its endpoints")
        return got

    def rec(pool, need):
        if need == 1:
            if not pool:
                raise BudgetExhausted("clique pool empty")
            return [pool[0]]
        if len(pool) < need:
            raise BudgetExhausted("clique pool smaller than target")
        v = pool[0]
        rest = pool[1:]
        same = _max_clique(rest, lambda x, y: g(x, y) == v)
        if len(same) >= need:
            return sorted(same)[:need]
        other = _max_clique(rest, lambda x, y: g(x, y) != v)
        kept = []
        kept_set = set()
        avail = list(other)
        while avail:
            pick = None
            for u in avail:
                partner = g(v, u)
                if partner not in kept_set:
                    pick = u
                    break
            if pick is None:
                break
            kept.append(pick)
            kept_set.add(pick)
            avail.remove(pick)
            partner = g(v, pick)
            if partner in avail:
                avail.remove(partner)
        inner = rec(kept, need - 1)
        return [v] + inner

    out = rec(verts, n)
    for u, w in itertools.combinations(out, 2):
        if g(u, w) in out:
            raise RuntimeError("internal: clique extraction returned a labeled pair")
    return sorted(out)


def _max_clique(pool, adj):
    """Exact maximum clique by branch and bound; pools stay tiny."""
    best = []

    def extend(cur, cand):
        nonlocal best
        if len(cur) + len(cand) <= len(best):
            return
        if not cand:
            if len(cur) > len(best):
                best = list(cur)
            return
        x = cand[0]
        extend(cur + [x], [y for y in cand[1:] if adj(x, y)])
        extend(cur, cand[1:])

    extend([], sorted(pool))
    return best


# ---------------------------------------------------------------------------
# crown extraction at a single level


def uniform_level_crown(cb, q):
    """Controlled crown of order q in a controlled bipartite graph whose
    A-side sits on one level.

    Rounds pick a pivot and classify its connections to the remaining
    pool as red (connector based elsewhere) or yellow (based at an
    endpoint), keeping the larger class; each used connector's successors
    leave the pool, which keeps connectors distinct. The surviving
    monochrome pivot set then feeds the label-avoiding clique step: red
    labels are connector bases, yellow labels chase the one same-level
    label vertex of the non-base edge to the pivot it serves.
    """
    if q < 1:
        raise GraphError("crown order must be positive")
    lvls = {cb.level[a] for a in cb.a_nodes}
    if len(lvls) > 1:
        raise GraphError("expected a single A-side level")
    if q == 1:
        if not cb.b_nodes:
            raise BudgetExhausted("no principals available")
        return ControlledCrown(1, (cb.b_nodes[0],), ())
    c = next(iter(lvls)) if lvls else None

    try:
        round_limit = 2 * clique_threshold(q) if q <= 4 else None
    except (OverflowError, MemoryError):  # pragma: no cover
        round_limit = None

    recorded = {}  # frozenset pair of pivots -> connector
    used = set()
    pool = list(cb.b_nodes)
    red, yellow = [], []
    rounds = 0
    while pool and (round_limit is None or rounds < round_limit):
        rounds += 1
        v = pool.pop(0)
        d_red, d_yellow = [], []
        for u in list(pool):
            if u not in pool:
                continue
            conn = None
            for a in cb.b_predecessors(v):
                if a in used:
                    continue
                if u in cb.a_successors(a):
                    conn = a
                    break
            if conn is None:
                continue  # this pair cannot be connected; leave u for later rounds
            used.add(conn)
            recorded[frozenset((v, u))] = conn
            b_conn = cb.base.get(conn)
            bucket = d_yellow if b_conn in (v, u) else d_red
            bucket.append(u)
            for w in cb.a_successors(conn):
                if w in pool:
                    pool.remove(w)
        if len(d_red) >= len(d_yellow):
            pool = d_red
            red.append(v)
        else:
            pool = d_yellow
            yellow.append(v)

    attempts = [("red", red), ("yellow", yellow)]
    if len(yellow) > len(red):
        attempts.reverse()
    last_err = None
    for kind, group in attempts:
        if len(group) < q:
            last_err = BudgetExhausted("%s pivot pool too small" % kind)
            continue
        try:
            gamma = _pivot_labels(cb, group, recorded, kind, c)
            body = label_avoiding_clique(group, gamma, q)
            cc = _assemble_crown(recorded, body, q)
            if not verify_controlled_crown(cb, cc):
                raise BudgetExhausted("extracted crown failed the label check")
            return cc
        except BudgetExhausted as err:
            last_err = err
    raise last_err if last_err else BudgetExhausted("no pivot pool formed")


def _pivot_labels(cb, group, recorded, kind, c):
    """Edge labels for the clique step over a monochrome pivot group."""
    connector_pair = {a: p for p, a in recorded.items()}
    gamma = {}
    for u, w in itertools.combinations(sorted(group), 2):
        key = frozenset((u, w))
        conn = recorded.get(key)
        if conn is None:
            raise BudgetExhausted("pivot pair (%s, %s) has no recorded connector" % (u, w))
        if kind == "red":
            gamma[key] = cb.base.get(conn)
            continue
        bs = cb.base.get(conn)
        if bs == u:
            far = w
        elif bs == w:
            far = u
        else:
            raise BudgetExhausted("yellow connector lost its base")
        z = None
        for x in cb.eta[(conn, far)]:
            if cb.level.get(x) == c:
                z = x
                break
        label = None
        if z is not None and z in connector_pair:
            zp = connector_pair[z]
            if far in zp:
                partner = next(iter(zp - {far}))
                if partner != bs:
                    label = partner
        gamma[key] = label
    return gamma


def _assemble_crown(recorded, body, q):
    body = sorted(body)
    connectors = []
    for i, j in itertools.combinations(range(q), 2):
        conn = recorded.get(frozenset((body[i], body[j])))
        if conn is None:
            raise BudgetExhausted("crown pair lost its connector")
        connectors.append(conn)
    return ControlledCrown(q, tuple(body), tuple(connectors))


# ---------------------------------------------------------------------------
# trichotomy over level classes


@dataclass(frozen=True)
class HighDegreeVertex:
    vertex: object
    successors: tuple


@dataclass(frozen=True)
class BipartiteScattered:
    """members are 1-scattered in the structure minus the deleted
    A-vertices."""

    deleted: tuple
    members: tuple


def bipartite_trichotomy(cb, p, q, n=None):
    """One of: an A-vertex with n+1 successors, a 1-scattered B-set of
    size p, or a controlled crown of order q.

    The loop classifies pivots: if enough of the pool avoids all of a
    pivot's predecessors' successor sets, the pivot joins the scattered
    set; otherwise the pool narrows to one level class and the pivot
    joins that class's bucket. Big buckets go to the one-level crown
    extractor.
    """
    if p < 1 or q < 1:
        raise GraphError("need p, q >= 1")
    if n is None:
        n = cb.max_out_degree()
    for a in cb.a_nodes:
        if cb.out_degree(a) >= n + 1:
            return HighDegreeVertex(a, tuple(cb.a_successors(a)[: n + 1]))

    try:
        bucket_goal = uniform_level_threshold(q, max(n, 1)) if q <= 3 else None
    except (OverflowError, MemoryError):  # pragma: no cover
        bucket_goal = None

    pool = list(cb.b_nodes)
    scattered = []
    buckets = {j: [] for j in range(cb.r + 2)}
    bucketed = set()

    def crown_from_bucket(j):
        a_keep = [a for a in cb.a_nodes if cb.level[a] == j]
        sub = cb.restrict(a_keep, buckets[j])
        return uniform_level_crown(sub, q)

    while True:
        if len(scattered) == p:
            if not cb.one_scattered(scattered):
                raise RuntimeError("internal: scattered invariant broke")
            return BipartiteScattered((), tuple(sorted(scattered)))
        if bucket_goal is not None:
            for j in range(cb.r + 2):
                if len(buckets[j]) >= bucket_goal:
                    return crown_from_bucket(j)
        fresh = [v for v in pool if v not in bucketed]
        if not fresh:
            break
        v = fresh[0]
        by_level = {j: set() for j in range(cb.r + 2)}
        for a in cb.b_predecessors(v):
            j = cb.level[a]
            for w in cb.a_successors(a):
                if w in pool:
                    by_level[j].add(w)
        covered = set().union(*by_level.values()) if by_level else set()
        rest = [w for w in pool if w not in covered]
        share = len(pool) / (cb.r + 3)
        if len(rest) >= share:
            scattered.append(v)
            pool = [w for w in rest if w != v]
        else:
            t = min(j for j in range(cb.r + 2) if len(by_level[j]) >= share)
            buckets[t].append(v)
            bucketed.add(v)
            pool = sorted(by_level[t])

    # pools exhausted below the guaranteed sizes: try the buckets anyway
    order = sorted(range(cb.r + 2), key=lambda j: (-len(buckets[j]), j))
    last_err = None
    for j in order:
        if len(buckets[j]) < q:
            continue
        try:
            return crown_from_bucket(j)
        except BudgetExhausted as err:
            last_err = err
    # the share-based loop confines itself to one pivot's reach class;
    # greedily top the scattered set up from the whole B-side instead
    for b in cb.b_nodes:
        if len(scattered) == p:
            break
        if b in scattered:
            continue
        if cb.one_scattered(scattered + [b]):
            scattered.append(b)
    if len(scattered) == p:
        if not cb.one_scattered(scattered):
            raise RuntimeError("internal: scattered invariant broke")
        return BipartiteScattered((), tuple(sorted(scattered)))
    if last_err is not None:
        raise last_err
    raise BudgetExhausted(
        "trichotomy stalled: %d scattered of %d, largest bucket %d"
        % (len(scattered), p, max((len(b) for b in buckets.values()), default=0))
    )


# ---------------------------------------------------------------------------
# peeling: scattered set or crown in a controlled bipartite graph


def scattered_or_crown(cb, p, q, peel_threshold=None):
    """Either a BipartiteScattered (deleting at most C(q,2) A-vertices)
    or a ControlledCrown of order q.

    Peels greedily: while some unused A-vertex covers more than the
    threshold of the current pool, keep it and shrink the pool to its
    successors minus its base. Completing C(q,2) rounds leaves a pool
    every kept vertex covers fully, which is a crown; otherwise the
    trichotomy runs on the residual structure with bases cleared outside
    the pool.
    """
    if q < 1 or p < 1:
        raise GraphError("need p, q >= 1")
    thresh = peel_threshold if peel_threshold is not None else q
    if thresh < q:
        raise GraphError("peel threshold below crown order")
    rounds = math.comb(q, 2)
    kept = []
    pool = list(cb.b_nodes)
    while len(kept) < rounds:
        best = None
        for a in cb.a_nodes:
            if a in kept:
                continue
            cover = sum(1 for b in cb.a_successors(a) if b in pool)
            if cover > thresh and (best is None or (-cover, repr(a)) < best[0]):
                best = ((-cover, repr(a)), a)
        if best is None:
            break
        a = best[1]
        kept.append(a)
        keep = set(cb.a_successors(a)) & set(pool)
        keep.discard(cb.base.get(a))
        pool = sorted(keep)

    if len(kept) == rounds:
        if len(pool) < q:
            raise BudgetExhausted("peeled pool thinner than the crown order")
        cc = ControlledCrown(q, tuple(pool[:q]), tuple(kept))
        if not cc2_condition(cb, cc) or not verify_controlled_crown(cb, cc):
            raise BudgetExhausted("peeled crown failed verification")
        return cc

    sub = cb.restrict(
        [a for a in cb.a_nodes if a not in kept], pool, zero_base_outside=True
    )
    residual_degree = sub.max_out_degree()
    res = bipartite_trichotomy(sub, p, q, n=residual_degree)
    if isinstance(res, HighDegreeVertex):
        raise RuntimeError("internal: residual degree bound was violated")
    if isinstance(res, BipartiteScattered):
        members = res.members
        deleted = tuple(kept)
        full = BipartiteScattered(deleted, members)
        # scatteredness must survive in the whole structure minus deletions
        check = cb.restrict([a for a in cb.a_nodes if a not in kept], cb.b_nodes)
        if not check.one_scattered(members):
            raise RuntimeError("internal: scattered set not scattered after deletion")
        return full
    if not verify_controlled_crown(cb, res):
        raise BudgetExhausted("residual crown failed verification in the full structure")
    return res


# ---------------------------------------------------------------------------
# the dichotomy on digraphs


def build_controlled_bipartite(G, I, r):
    """The control structure over ground digraph G for an r-scattered
    set I: B is I; every vertex reaching two members within r+1 steps
    joins A; each such reach fixes one shortest path, recorded as the
    edge label; bases point at the unique member within r steps."""
    if not is_scattered(G, I, r):
        raise GraphError("input set is not r-scattered")
    I = sorted(set(I))
    iset = set(I)
    dist = {v: bfs_dist(G, v, max_depth=r + 1) for v in G.vertices()}

    def base_of(w):
        hits = [u for u in I if dist[w].get(u, r + 2) <= r]
        if len(hits) > 1:
            raise RuntimeError("internal: in-balls of the scattered set overlap")
        return hits[0] if hits else None

    a_nodes = []
    edges = set()
    eta = {}
    seen = set()
    for v in sorted(G.vertices()):
        reach = [u for u in I if u in dist[v]]
        if len(reach) < 2:
            continue
        a_nodes.append(v)
        parents = _min_parent_bfs(G, v, r + 1)
        for u in reach:
            path = [u]
            while path[-1] != v:
                path.append(parents[path[-1]])
            path.reverse()  # v ... u
            edges.add((v, u))
            eta[(v, u)] = tuple(path[1:])
            seen.update(path[1:])
    seen.update(a_nodes)
    seen.update(I)
    base = {}
    level = {}
    for w in seen:
        b = base_of(w)
        base[w] = b
        level[w] = dist[w][b] if b is not None else r + 1
    return ControlledBipartite(a_nodes, I, edges, base, level, eta, r, ground=G)


def _min_parent_bfs(G, src, max_depth):
    """BFS parents with the smallest-id parent at the first discovery."""
    from collections import deque

    parent = {src: None}
    depth = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if depth[v] >= max_depth:
            continue
        for w in G.successors(v):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                queue.append(w)
    return parent


def crown_to_model(G, cb, cc, r):
    """Depth-r model of the crown pattern in the ground digraph:
    connector branches are singletons; a principal's branch is the union
    of the labels on its crown edges (walks back to the principal)."""
    q = cc.order
    pattern, _ = crown(q)
    branch = {}
    image = {}
    source = {}
    sink = {}
    for i, b in enumerate(cc.principals):
        verts = {b}
        for k, a in enumerate(cc.connectors):
            pi, pj = cc.pair_of(k)
            if cc.principals[pi] == b or cc.principals[pj] == b:
                verts.update(cb.eta[(a, b)])
        branch[i] = frozenset(verts)
        source[i] = b
        sink[i] = b
    for k, a in enumerate(cc.connectors):
        pid = q + k
        branch[pid] = frozenset([a])
        source[pid] = a
        sink[pid] = a
        pi, pj = cc.pair_of(k)
        for prin_idx in (pi, pj):
            b = cc.principals[prin_idx]
            tail = cb.eta[(a, b)]
            if not tail:
                raise BudgetExhausted("crown edge degenerates to its own principal")
            image[(pid, prin_idx)] = (a, tail[0])
    model = DirectedModel(
        host=G,
        pattern=pattern,
        branch=branch,
        edge_image=image,
        source=source,
        sink=sink,
        depth=r,
    )
    ok, bad = verify_model(model)
    if not ok:
        raise BudgetExhausted("crown model failed verification: %s" % "; ".join(bad))
    return model


def dichotomy_step(G, I, r, p, q):
    """Either a depth-r crown model of order q in G, or an (r+1)-scattered
    subset of I of size p after deleting at most C(q,2) vertices. Both
    outcomes are verified before being returned."""
    cb = build_controlled_bipartite(G, I, r)
    res = scattered_or_crown(cb, p, q)
    if isinstance(res, BipartiteScattered):
        S = tuple(sorted(res.deleted))
        U = tuple(sorted(res.members))
        w = ScatteredWitness(G, S, U, r + 1)
        if not w.verify():
            raise RuntimeError("internal: scattered outcome failed on the ground graph")
        if len(S) > math.comb(q, 2):
            raise RuntimeError("internal: deletion set exceeded its bound")
        return w
    return crown_to_model(G, cb, res, r)


def without_vertices(G, S):
    """Same vertex ids, all edges meeting S removed (S becomes isolated)."""
    S = set(S)
    return Digraph(G.n, [e for e in G.edges if e[0] not in S and e[1] not in S])


def iterate_dichotomy(G, W, target_r, m, q_schedule, budget=None, slack=2):
    """Iterate the dichotomy from radius 0 up to target_r: accumulate
    deletions while the scattered outcome repeats, stop at the first
    crown. Returns a ScatteredWitness at radius target_r or a crown
    DirectedModel. q_schedule may be an int or a callable of the round.

    Early rounds ask for `slack` extra members per remaining round (the
    guaranteed thresholds shrink the set round over round), backing off
    toward m when the pools cannot support the surplus.
    """
    if isinstance(q_schedule, int):
        fixed = q_schedule
        q_of = lambda i: fixed
    else:
        q_of = q_schedule
    W = sorted(set(W))
    if len(W) < m:
        raise GraphError("need |W| >= m")
    deleted = set()
    members = list(W)
    for i in range(target_r):
        Gi = without_vertices(G, deleted)
        p_hi = min(len(members), m + slack * (target_r - 1 - i))
        res = None
        for p_try in range(p_hi, m - 1, -1):
            try:
                res = dichotomy_step(Gi, members, i, p_try, q_of(i))
                break
            except BudgetExhausted:
                if p_try == m:
                    raise
        if isinstance(res, DirectedModel):
            lifted = DirectedModel(
                host=G,
                pattern=res.pattern,
                branch=res.branch,
                edge_image=res.edge_image,
                source=res.source,
                sink=res.sink,
                depth=res.depth,
            )
            ok, bad = verify_model(lifted)
            if not ok:
                raise RuntimeError("internal: crown did not lift to the full graph: %s" % bad)
            return lifted
        deleted.update(res.deleted)
        members = list(res.members)
        if budget is not None and len(deleted) > budget:
            raise BudgetExhausted("deletion budget exceeded")
    w = ScatteredWitness(G, tuple(sorted(deleted)), tuple(sorted(members[:m])), target_r)
    if not w.verify():
        raise RuntimeError("internal: iterated witness failed verification")
    return w


def find_scatter_contradiction(G, r, q, model, witness):
    """Cross-validation: a verified depth-r crown model whose principal
    roots include two members of a claimed (2r+1)-scattered set, with
    branches avoiding the deleted set, yields a vertex reaching both
    members within 2r+1 steps. Returns (vertex, path1, path2) or None."""
    if witness.radius != 2 * r + 1:
        raise GraphError("witness radius must be 2r+1")
    S = set(witness.deleted)
    U = set(witness.members)
    q_pat = q
    principal_hits = {}
    for v in range(q_pat):
        bset = set(model.branch[v])
        if bset & S:
            continue
        hits = sorted(bset & U)
        if hits:
            principal_hits[v] = hits[0]
    if len(principal_hits) < 2:
        return None
    for k in range(math.comb(q_pat, 2)):
        pid = q_pat + k
        cbranch = set(model.branch[pid])
        if cbranch & S:
            continue
        cc = ControlledCrown(q_pat, tuple(range(q_pat)), tuple(range(math.comb(q_pat, 2))))
        i, j = cc.pair_of(k)
        if i not in principal_hits or j not in principal_hits:
            continue
        root = model.source.get(pid)
        if root is None:
            root = min(cbranch)
        paths = []
        ok = True
        for prin in (i, j):
            img = model.edge_image[(pid, prin)]
            seg1 = _path_inside(G, cbranch, root, img[0])
            seg2 = _path_inside(G, set(model.branch[prin]), img[1], principal_hits[prin])
            if seg1 is None or seg2 is None:
                ok = False
                break
            full = seg1 + seg2
            if len(full) - 1 > 2 * r + 1 or set(full) & S:
                ok = False
                break
            paths.append(full)
        if ok:
            return root, paths[0], paths[1]
    return None


def _path_inside(G, allowed, src, dst):
    from collections import deque

    if src not in allowed or dst not in allowed:
        return None
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in G.successors(v):
            if w in allowed and w not in parent:
                parent[w] = v
                queue.append(w)
    return None
