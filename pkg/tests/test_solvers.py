import itertools
import random

from crownminor.digraph import Digraph, bidirect, underlying_undirected
from crownminor.generators import acyclic_tournament, crown, reversed_crown
from crownminor.solvers import (
    DominationInstance,
    brute_force_solve,
    d_dominating_set,
    directed_steiner_outtree,
    dominating_outbranching,
    dominating_outbranching_bounded,
    find_irrelevant_vertex,
    independent_dominating_set,
    independent_set,
    spanning_outtree,
    verify_dominating,
    verify_independent,
    verify_outbranching,
)

from oracles import dominates, independent, oracle_solve, oracle_steiner, random_digraph


def dipath(n):
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def bidirected_star(leaves):
    es = []
    for i in range(1, leaves + 1):
        es.append((0, i))
        es.append((i, 0))
    return Digraph(leaves + 1, es)


# --- verifiers ---------------------------------------------------------------


def test_verify_dominating_basics():
    G = random_digraph(random.Random(1), 6, 0.3)
    assert verify_dominating(G, list(G.vertices()), 1)
    S3, _ = crown(3)
    assert verify_dominating(S3, (3, 4, 5), 1)
    assert not verify_dominating(S3, (0, 1, 2), 1)


def test_verify_independent_on_crown_sources():
    S3, _ = crown(3)
    assert verify_independent(S3, (3, 4, 5))
    assert not verify_independent(S3, (0, 3))


def test_verify_outbranching():
    G = dipath(4)
    assert verify_outbranching(G, (0, 1, 2, 3), {0: None, 1: 0, 2: 1, 3: 2})
    assert verify_outbranching(G, (2,), {2: None})
    assert not verify_outbranching(G, (0, 1), {0: None, 1: None})
    assert not verify_outbranching(G, (0, 2), {0: None, 2: 0})


def test_spanning_outtree():
    S3, _ = crown(3)
    assert spanning_outtree(S3, (3, 0, 1)) is not None
    assert spanning_outtree(S3, (0, 1)) is None


# --- brute force oracle -------------------------------------------------------


def test_brute_crown_min_dominating():
    S3, _ = crown(3)
    got = brute_force_solve(DominationInstance(S3, 3), "ds")
    assert got.feasible and got.witness == (3, 4, 5)
    assert not brute_force_solve(DominationInstance(S3, 2), "ds").feasible


def test_brute_path_distance_two():
    G = dipath(5)
    got = brute_force_solve(DominationInstance(G, 2, d=2), "ds")
    assert got.feasible and got.witness == (0, 2)
    assert not brute_force_solve(DominationInstance(G, 1, d=2), "ds").feasible


def test_brute_empty_graph():
    G = Digraph(0, [])
    assert brute_force_solve(DominationInstance(G, 0), "ds").feasible


def test_brute_honors_forbidden_set():
    G = bidirected_star(3)
    inst = DominationInstance(G, 1, forbidden=(0,))
    assert not brute_force_solve(inst, "ds").feasible


# --- independent dominating set -------------------------------------------------


def test_ids_on_crown():
    S3, _ = crown(3)
    got = independent_dominating_set(S3, 3)
    assert got.feasible and got.witness == (3, 4, 5)
    assert not independent_dominating_set(S3, 2).feasible


def test_ids_single_vertex():
    G = Digraph(1, [])
    assert independent_dominating_set(G, 1).feasible


def test_ids_agrees_with_oracle():
    rng = random.Random(9090)
    for _ in range(40):
        G = random_digraph(rng, rng.randint(2, 11), rng.uniform(0.1, 0.4))
        k = rng.randint(0, 4)
        got = independent_dominating_set(G, k)
        want, _ = oracle_solve(G, "ids", k)
        assert got.feasible == want
        if got.feasible:
            assert independent(G, got.witness) and dominates(G, got.witness, 1, G.vertices())


def test_ids_branching_path_used_on_larger_graphs():
    # bigger than the exhaustive base so the scattered branching engages
    rng = random.Random(11)
    for _ in range(8):
        G = random_digraph(rng, 14, 0.12)
        k = 4
        got = independent_dominating_set(G, k, base_cap=6)
        want, _ = oracle_solve(G, "ids", k)
        assert got.feasible == want


# --- irrelevant targets ---------------------------------------------------------


def test_twin_targets_are_irrelevant():
    # mutually adjacent targets with the same external in-ball: either
    # one's domination forces the other's
    G = Digraph(4, [(0, 2), (0, 3), (2, 3), (3, 2)])
    w = find_irrelevant_vertex(G, (2, 3), k=2, d=1)
    assert w == 2


def test_separate_sinks_are_not_irrelevant():
    # each sink dominates only itself, so neither is implied by the other
    G = Digraph(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    assert find_irrelevant_vertex(G, (2, 3), k=2, d=1) is None


def test_nested_in_balls():
    G = Digraph(4, [(0, 2), (0, 3), (1, 3)])
    # ball(2) = {0, 2} is not nested in ball(3) = {0, 1, 3}; no containment
    assert find_irrelevant_vertex(G, (2, 3), 2, 1) is None
    G2 = Digraph(4, [(0, 2), (0, 3), (2, 3)])
    # ball(3) = {0, 2, 3} contains ball(2) = {0, 2}: 3 is irrelevant
    assert find_irrelevant_vertex(G2, (2, 3), 2, 1) == 3


def test_irrelevant_vertex_contract_by_bruteforce():
    rng = random.Random(77)
    for _ in range(25):
        G = random_digraph(rng, rng.randint(3, 8), 0.3)
        k = rng.randint(1, 3)
        d = rng.randint(1, 2)
        W = sorted(v for v in G.vertices() if rng.random() < 0.7)
        if not W:
            continue
        w = find_irrelevant_vertex(G, W, k, d)
        if w is None:
            continue
        Wrest = [x for x in W if x != w]
        for size in range(0, k + 1):
            for X in itertools.combinations(sorted(G.vertices()), size):
                assert dominates(G, X, d, W) == dominates(G, X, d, Wrest)


def test_reversed_crown_principals_have_no_irrelevant_vertex():
    S4r, principals = reversed_crown(4)
    assert find_irrelevant_vertex(S4r, principals, 2, 1) is None


# --- d-dominating set ------------------------------------------------------------


def test_dds_universal_source():
    T = acyclic_tournament(5)
    got = d_dominating_set(T, 1, 1)
    assert got.feasible and got.witness == (0,)


def test_dds_path_examples():
    G = dipath(5)
    assert d_dominating_set(G, 2, 2).feasible
    assert not d_dominating_set(G, 1, 2).feasible


def test_dds_crown4_needs_all_sources():
    S4, _ = crown(4)
    assert d_dominating_set(S4, 6, 1).feasible
    assert not d_dominating_set(S4, 5, 1).feasible


def test_dds_agrees_with_oracle():
    rng = random.Random(31415)
    for _ in range(40):
        G = random_digraph(rng, rng.randint(2, 11), rng.uniform(0.1, 0.4))
        k = rng.randint(0, 4)
        d = rng.randint(1, 3)
        got = d_dominating_set(G, k, d)
        want, _ = oracle_solve(G, "ds", k, d)
        assert got.feasible == want
        if got.feasible:
            assert dominates(G, got.witness, d, G.vertices())


# --- Steiner out-trees -------------------------------------------------------------


def test_steiner_star():
    G = Digraph(4, [(0, 1), (0, 2), (0, 3)])
    got = directed_steiner_outtree(G, (1, 2, 3))
    assert got is not None
    verts, parent = got
    assert verts == (0, 1, 2, 3)
    assert verify_outbranching(G, verts, parent)


def test_steiner_path_endpoints():
    G = dipath(5)
    verts, parent = directed_steiner_outtree(G, (0, 4))
    assert verts == (0, 1, 2, 3, 4)
    assert verify_outbranching(G, verts, parent)


def test_steiner_disconnected_terminals():
    G = Digraph(4, [(0, 1), (2, 3)])
    assert directed_steiner_outtree(G, (1, 3)) is None


def test_steiner_budget():
    G = dipath(5)
    assert directed_steiner_outtree(G, (0, 4), size_budget=4) is None
    assert directed_steiner_outtree(G, (0, 4), size_budget=5) is not None


def test_steiner_required_root():
    G = Digraph(4, [(0, 1), (1, 2), (0, 3)])
    got = directed_steiner_outtree(G, (2,), required_root=0)
    assert got is not None and got[0] == (0, 1, 2)
    assert directed_steiner_outtree(G, (0,), required_root=2) is None


def test_steiner_matches_exhaustive_minimum():
    rng = random.Random(2718)
    for _ in range(30):
        G = random_digraph(rng, rng.randint(3, 8), 0.3)
        tcount = rng.randint(1, 3)
        terms = sorted(rng.sample(range(G.n), tcount))
        got = directed_steiner_outtree(G, terms)
        want = oracle_steiner(G, terms)
        if want is None:
            assert got is None
        else:
            assert got is not None and len(got[0]) == want


# --- dominating out-branching --------------------------------------------------------


def test_dob_bidirected_star():
    G = bidirected_star(4)
    got = dominating_outbranching(G, 1)
    assert got.feasible
    D, parent = got.witness
    assert D == (0,)


def test_dob_crown_infeasible():
    S3, _ = crown(3)
    for k in range(0, 7):
        assert not dominating_outbranching(S3, k).feasible


def test_dob_directed_path():
    G = dipath(5)
    assert dominating_outbranching(G, 4).feasible
    assert not dominating_outbranching(G, 3).feasible


def test_dob_bounded_direct():
    G = bidirected_star(3)
    got = dominating_outbranching_bounded(G, (), tuple(range(1, 4)), 1)
    assert got is not None
    D, parent = got
    assert D == (0,)
    S3, _ = crown(3)
    assert dominating_outbranching_bounded(S3, (), (3, 4, 5), 3) is None


def test_dob_agrees_with_oracle():
    rng = random.Random(646)
    for _ in range(30):
        G = random_digraph(rng, rng.randint(2, 10), rng.uniform(0.15, 0.4))
        k = rng.randint(0, 4)
        got = dominating_outbranching(G, k)
        want, _ = oracle_solve(G, "dob", k)
        assert got.feasible == want
        if got.feasible:
            D, parent = got.witness
            assert len(D) <= k
            assert verify_outbranching(G, D, parent)
            assert dominates(G, D, 1, G.vertices())


# --- independent set --------------------------------------------------------------


def test_is_crown_sources():
    S4, _ = crown(4)
    got = independent_set(S4, 6)
    assert got.feasible and len(got.witness) == 6
    assert verify_independent(S4, got.witness)


def test_is_bidirected_clique():
    K4 = bidirect(underlying_undirected(acyclic_tournament(4)))
    assert independent_set(K4, 1).feasible
    assert not independent_set(K4, 2).feasible


def test_is_agrees_with_oracle():
    rng = random.Random(8888)
    for _ in range(40):
        G = random_digraph(rng, rng.randint(1, 12), rng.uniform(0.1, 0.5))
        k = rng.randint(0, 4)
        got = independent_set(G, k)
        want, _ = oracle_solve(G, "is", k)
        assert got.feasible == want
        if got.feasible and k:
            assert verify_independent(G, got.witness)


def test_is_distance_two():
    G = dipath(5)
    got = independent_set(G, 2, d=2)
    assert got.feasible
    u, w = sorted(got.witness)
    assert w - u > 2
    assert not independent_set(G, 3, d=2).feasible


# --- shared properties ---------------------------------------------------------------


def test_solvers_monotone_in_k():
    rng = random.Random(133)
    for _ in range(15):
        G = random_digraph(rng, rng.randint(3, 9), 0.3)
        for solver in (
            lambda k: d_dominating_set(G, k, 1),
            lambda k: independent_dominating_set(G, k),
            lambda k: dominating_outbranching(G, k),
        ):
            feas = [solver(k).feasible for k in range(0, 5)]
            assert all(b or not a for a, b in zip(feas, feas[1:]))


def test_scattered_branching_is_sound():
    # whenever a verified 1-scattered witness of size k+1 exists, no
    # dominating set of size <= k avoids its deletion set
    from crownminor.quasiwide import compute_scattered

    rng = random.Random(515)
    for _ in range(20):
        G = random_digraph(rng, rng.randint(4, 9), 0.25)
        k = rng.randint(1, 3)
        if G.n < k + 1:
            continue
        w = compute_scattered(G, sorted(G.vertices()), 1, k + 1, s_budget=3)
        if w is None:
            continue
        S = set(w.deleted)
        for size in range(0, k + 1):
            for D in itertools.combinations(sorted(G.vertices()), size):
                if dominates(G, D, 1, G.vertices()):
                    assert set(D) & S, (G, w, D)
