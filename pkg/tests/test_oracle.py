import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_feasible, brute_min_multiset, brute_min_sigma, random_int_lists
from seqweight.errors import BudgetExceeded, InvalidGraphError
from seqweight.generators import complete, cycle, path, petersen, random_nice, star
from seqweight.graph import EdgeOrdering, Graph, disjoint_union
from seqweight.oracle import (
    IRREGULAR, PREFIX, PROPER, compute_MG, conjecture_checks, far_events, feasible_for_ordering,
    independence_check, list_falsification, min_k_multiset, min_k_sigma, min_k_sigma_star, min_k_sum,
    openness, ordering_profiles, complement_events,
)
from seqweight.weighting import ListAssignment, induced_colouring, is_proper

INTERLEAVED = (0, 2, 4, 1, 3)  # e1 < e3 < e5 < e2 < e4


def test_c5_natural_order_feasible_with_table1_pattern():
    r = feasible_for_ordering(cycle(5), None, 2)
    w = r.witness.edge_weight
    assert r.feasible and w[0] == w[2] == w[4] != w[1] == w[3]


def test_c5_interleaved_order_infeasible():
    r = feasible_for_ordering(cycle(5), INTERLEAVED, 2)
    assert r.feasible is False
    assert not brute_feasible(cycle(5), INTERLEAVED, 2)


def test_k1_weights_infeasible_with_equal_degree_neighbours():
    assert feasible_for_ordering(cycle(4), None, 1).feasible is False
    assert feasible_for_ordering(star(3), None, 1).feasible is True


def test_budget_gives_unknown():
    r = feasible_for_ordering(cycle(9), None, 1, budget=3)
    assert r.feasible is False or r.feasible is None
    r = feasible_for_ordering(complete(6), None, 3, IRREGULAR, budget=5)
    assert r.feasible is None


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 7), st.floats(0.2, 0.9), st.integers(0, 10**6), st.integers(1, 3),
       st.sampled_from([PROPER, PREFIX, IRREGULAR]), st.randoms(use_true_random=False))
def test_feasibility_matches_brute_force(n, p, seed, k, criterion, rnd):
    G = random_nice(n, p, seed=seed)
    if G.m > 9:
        return
    perm = list(range(G.m))
    rnd.shuffle(perm)
    assert feasible_for_ordering(G, perm, k, criterion).feasible == brute_feasible(G, perm, k, criterion)


def test_feasibility_with_lists_and_total_mode():
    G = cycle(5)
    L = ListAssignment(((1, 2),) * 5)
    assert feasible_for_ordering(G, None, L).feasible
    r = feasible_for_ordering(G, INTERLEAVED, 2, mode="total")
    assert r.feasible and is_proper(induced_colouring(G, INTERLEAVED, r.witness, "total"), G)


@pytest.mark.parametrize("n,sigma,multiset", [(3, 2, 3), (4, 2, 2), (5, 3, 3)])
def test_cycle_values(n, sigma, multiset):
    assert min_k_sigma(cycle(n)).value == sigma
    assert min_k_multiset(cycle(n)).value == multiset


def test_c5_sigma_star_and_counterexample():
    assert min_k_sigma_star(cycle(5)).value == 2
    r = min_k_sigma(cycle(5))
    assert r.below["k"] == 2
    bad = r.below["counterexample_ordering"]
    assert not brute_feasible(cycle(5), bad, 2)


def test_c3_sigma_star():
    assert min_k_sigma_star(cycle(3)).value == 2


def test_k2_irregular_unknown():
    r = min_k_sigma_star(Graph(2, ((0, 1),)), IRREGULAR, max_k=5)
    assert r.value is None and "no k" in r.reason


def test_c5_sum():
    assert min_k_sum(cycle(5)).value == 3
    assert brute_min_multiset(cycle(5), 4, agg=sum) == 3


@pytest.mark.parametrize("seed", range(12))
def test_min_k_against_brute_force(seed):
    rng = random.Random(seed)
    G = random_nice(rng.randint(3, 6), 0.5, seed=seed)
    if not 1 <= G.m <= 6:
        return
    assert min_k_sigma(G, max_k=5).value == brute_min_sigma(G, 5)
    assert min_k_sigma_star(G, max_k=5).value == brute_min_sigma(G, 5, every=False)
    assert min_k_multiset(G, 5).value == brute_min_multiset(G, 5)
    s = min_k_sigma_star(G, IRREGULAR, max_k=5).value
    assert s == brute_min_sigma(G, 5, "irregular", every=False)


def test_profiles_are_distinct_and_exhaustive():
    G = complete(4)
    profiles = ordering_profiles(G)
    keys = {o.local_orders(G) for o in profiles}
    assert len(keys) == len(profiles)
    every = {EdgeOrdering(p).local_orders(G) for p in itertools.permutations(range(G.m))}
    assert keys == every


def test_sigma_witness_and_monotonicity():
    G = random_nice(6, 0.5, seed=3)
    r = min_k_sigma_star(G)
    v = r.value
    assert r.witness is not None
    for k in (v, v + 1):
        L = ListAssignment.fixed(G, k)
        assert feasible_for_ordering(G, r.witness_ordering, L).feasible
    if v > 1:
        assert not any(feasible_for_ordering(G, o, v - 1).feasible for o in ordering_profiles(G))


def test_large_graph_sampled_orderings_upper_bound_only():
    G = petersen()
    r = min_k_sigma_star(G, samples=20)
    assert not r.exact and r.value is None and r.upper_bound == 2
    assert min_k_sigma(G).value is None


def test_parallel_jobs_same_answer():
    G = cycle(6)
    a, b = min_k_sigma(G, jobs=1), min_k_sigma(G, jobs=2)
    assert a.value == b.value and a.below == b.below
    c, d = min_k_sigma_star(G, IRREGULAR, jobs=1), min_k_sigma_star(G, IRREGULAR, jobs=2)
    assert c.value == d.value and c.witness == d.witness


def test_compute_mg():
    assert compute_MG(cycle(5)) == (3, {2: (5, 3)})
    assert compute_MG(star(3))[0] == 3
    G = Graph(9, tuple((i, (i + 1) % 9) for i in range(9)))
    assert compute_MG(G)[0] == 3
    assert compute_MG(complete(5))[0] == 2
    assert compute_MG(Graph(1, ()))[0] == 1


def test_list_falsification():
    res = list_falsification(cycle(5), 2, quantifier="fixed", ordering=INTERLEAVED, universe=[1, 2], trials=5)
    assert res.counterexample is not None and res.lower_bound == 3
    res = list_falsification(cycle(4), 2, quantifier="some", trials=20, seed=1)
    assert res.counterexample is None and res.lower_bound is None


def test_conjecture_checks_small():
    out = conjecture_checks(cycle(5))
    assert out["edge_sigma_at_most_3"] and out["edge_sigma_at_most_4"]
    assert out["total_sigma_at_most_2"] and out["total_sigma_at_most_3"]
    assert out["irregular_sigma_equals_MG"] is not None
    assert conjecture_checks(Graph(2, ((0, 1),)))["edge_sigma_at_most_3"] is None


# ---------------------------------------------------------------- independence

def test_independence_empty_k():
    r = independence_check(cycle(5), (0, 1), [])
    assert r.p_cond == r.p_uncond and r.equal


def test_independence_petersen_far_events():
    P = petersen()
    for u, v in [(0, 1), (1, 2), (5, 7)]:
        r = independence_check(P, (u, v), far_events(P, u, v))
        assert r.open and r.equal


def test_independence_unequal_degrees_trivial():
    G = Graph(4, ((0, 1), (1, 2), (2, 3), (1, 3)))
    r = independence_check(G, (0, 1), [(2, 3)])
    assert r.trivial and r.p_uncond == 0 and r.equal


def test_independence_probabilities_by_hand():
    # C4, uv = (0,1): c(0) = (w0, w3), c(1) = (w0, w1) -> P = 1/2 at k=2
    r = independence_check(cycle(4), (0, 1), [])
    assert r.p_uncond == Fraction(1, 2)


def test_dependence_detected_when_not_open():
    # on C5 with K = {A_12}: uv=(0,1) shares edge 1 with the event
    r = independence_check(cycle(5), (0, 1), [(1, 2)])
    assert r.subset_checks and r.mutually_independent == r.equal


def test_literal_open_fails_where_positions_differ():
    P = petersen()
    # edge 1-2 is second at vertex 1 and first at vertex 2
    is_open, strict = openness(P, None, (1, 2), far_events(P, 1, 2))
    assert is_open and not strict


def test_complement_events_can_break_independence():
    P = petersen()
    r = independence_check(P, (1, 2), complement_events(P, 1, 2))
    assert not r.open and r.equal is False


def test_independence_errors():
    with pytest.raises(InvalidGraphError):
        independence_check(cycle(5), (0, 2), [])
    with pytest.raises(InvalidGraphError):
        independence_check(cycle(5), (0, 1), [(0, 1)])
    with pytest.raises(BudgetExceeded):
        independence_check(petersen(), (0, 1), [], budget=1000)


def test_subset_definition_small_k():
    P = petersen()
    K = far_events(P, 0, 1)[:3]
    r = independence_check(P, (0, 1), K)
    assert len(r.subset_checks) == 7 and r.mutually_independent


def test_chain_on_small_unions():
    G = disjoint_union(path(3), cycle(3))
    a, b, c = min_k_sigma_star(G).value, min_k_sigma(G).value, min_k_multiset(G).value
    assert a <= b <= c
    assert min_k_sigma_star(G, IRREGULAR).value >= compute_MG(G)[0]
    assert random_int_lists(random.Random(0), 1, 2)
