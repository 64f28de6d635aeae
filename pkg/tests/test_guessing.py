import itertools
import math
import random

import pytest

from guesslab.coding import count_fixed_points, interaction_graph, min_net
from guesslab.digraph import Digraph, add_loops, reduce_vertex, symmetrized
from guesslab.errors import PreconditionError, ResourceBoundError
from guesslab.guessing import (
    guessing_number,
    h_loops,
    is_routing_solvable,
    is_solvable,
    loopfull_witness,
    routing_witness,
    strict_guessing_number,
)
from guesslab.constructions import unit_witness
from guesslab.params import feedback_number

from conftest import complete_graph, random_digraph, undirected_cycle


def brute_force_max_fix(g, q):
    """Independent oracle: enumerate every f with G(f) inside g."""
    n = g.n
    states = list(itertools.product(range(q), repeat=n))
    sups = [g.in_neighbors(v) for v in range(n)]
    per_vertex = []
    for v in range(n):
        rows = q ** len(sups[v])
        per_vertex.append(list(itertools.product(range(q), repeat=rows)))
    best = 0
    for tables in itertools.product(*per_vertex):
        cnt = 0
        for x in states:
            ok = True
            for v in range(n):
                r = 0
                for s in sups[v]:
                    r = r * q + x[s]
                if tables[v][r] != x[v]:
                    ok = False
                    break
            if ok:
                cnt += 1
        best = max(best, cnt)
    return best


def test_guessing_k3():
    rep = guessing_number(complete_graph(3), 2)
    assert rep.max_fix == 4
    assert rep.value == pytest.approx(2.0)
    assert count_fixed_points(rep.witness) == 4
    assert interaction_graph(rep.witness).arcs <= complete_graph(3).arcs


def test_guessing_acyclic():
    g = Digraph.of(4, [(0, 1), (1, 2), (0, 3)])
    assert guessing_number(g, 2).max_fix == 1
    assert guessing_number(g, 3).max_fix == 1


def test_guessing_c5_matches_brute_force():
    # the exact conflict-graph oracle and plain function enumeration agree
    # on 5 (not 4): the pentagon supports a 5-element consistent family
    c5 = undirected_cycle(5)
    rep = guessing_number(c5, 2)
    assert rep.max_fix == brute_force_max_fix(c5, 2) == 5
    assert count_fixed_points(rep.witness) == 5


def test_guessing_matches_brute_force_small():
    rng = random.Random(12)
    for _ in range(15):
        g = random_digraph(rng, 3, p=0.4, loops=True)
        assert guessing_number(g, 2).max_fix == brute_force_max_fix(g, 2)


def test_guessing_state_cap():
    with pytest.raises(ResourceBoundError):
        guessing_number(Digraph.of(13, []), 2)


def test_witness_reverifies():
    rng = random.Random(42)
    for _ in range(40):
        g = random_digraph(rng, rng.randint(1, 5), p=0.35, loops=True)
        q = rng.choice([2, 3])
        if q**g.n > 4096:
            continue
        rep = guessing_number(g, q)
        assert count_fixed_points(rep.witness) == rep.max_fix
        assert interaction_graph(rep.witness).arcs <= g.arcs


def test_strict_loopfull_formula_examples():
    k3 = complete_graph(3)
    t3 = Digraph.of(3, [(0, 1), (0, 2), (1, 2)])
    assert h_loops(k3, 2).max_fix == 7
    assert h_loops(t3, 2).max_fix == 6
    assert h_loops(Digraph.of(4, []), 3).max_fix == 81
    with pytest.raises(PreconditionError):
        h_loops(Digraph.of(1, [(0, 0)]), 2)


def test_strict_single_loop():
    rep = strict_guessing_number(Digraph.of(1, [(0, 0)]), 2)
    assert rep.max_fix == 2


def test_strict_loopfull_2cycle():
    rep = strict_guessing_number(add_loops(Digraph.of(2, [(0, 1), (1, 0)])), 2)
    assert rep.max_fix == 3
    assert rep.kind == "h-loops-formula"
    assert count_fixed_points(rep.witness) == 3


def test_strict_star_reduction():
    # loopless star: g = 1, and reducing the centre gives the loop-full
    # clique with strict count q^{n-1} - 1
    for n, q in ((4, 2), (4, 3)):
        star = symmetrized(Digraph.of(n, [(i, n - 1) for i in range(n - 1)]))
        assert guessing_number(star, q).max_fix == q
        reduced, _ = reduce_vertex(star, n - 1)
        rep = strict_guessing_number(reduced, q)
        assert rep.max_fix == q ** (n - 1) - 1


def test_loopfull_witness_random():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 7)
        q = rng.choice([2, 3, 4])
        g = random_digraph(rng, n, p=0.3)
        rep = h_loops(g, q)
        w = loopfull_witness(g, q)
        assert count_fixed_points(w) == rep.max_fix
        assert interaction_graph(w) == add_loops(g)


def test_strict_exhaustive_agrees_with_formula_n3_q2():
    pairs = [(u, v) for u in range(3) for v in range(3) if u != v]
    for r in range(len(pairs) + 1):
        for arcs in itertools.combinations(pairs, r):
            g = Digraph.of(3, arcs)
            closed = add_loops(g)
            brute = strict_guessing_number(closed, 2, cross_check=False)
            assert brute.max_fix == h_loops(g, 2).max_fix


def test_loopfull_lower_bound_corollary():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(1, 8)
        g = random_digraph(rng, n, p=0.3)
        for q in (2, 3, 5):
            got = h_loops(g, q).max_fix
            bound = n * math.log(q - 1, q) + math.log(1 + n / (q - 1), q)
            assert math.log(got, q) >= bound - 1e-12


def test_guessing_monotone_under_reduction():
    rng = random.Random(88)
    done = 0
    while done < 200:
        g = random_digraph(rng, rng.randint(2, 5), p=0.35, loops=True)
        v = rng.randrange(g.n)
        reduced, _ = reduce_vertex(g, v)
        a = guessing_number(g, 2).max_fix
        b = guessing_number(reduced, 2).max_fix
        assert a <= b
        done += 1


def test_unit_witness_gives_strict_lower_bound():
    rng = random.Random(3)
    done = 0
    while done < 60:
        g = random_digraph(rng, rng.randint(2, 6), p=0.35)
        if g.is_acyclic():
            continue
        q = rng.choice([2, 3])
        w = unit_witness(g, q)
        assert interaction_graph(w) == g
        assert count_fixed_points(w) >= q
        done += 1


def test_cycle_implies_strict_value_at_least_q():
    # h never exceeds g, and once g reaches q so does h
    rng = random.Random(31)
    done = 0
    while done < 25:
        g = random_digraph(rng, rng.randint(1, 3), p=0.5, loops=True)
        rep_g = guessing_number(g, 2)
        rep_h = strict_guessing_number(g, 2)
        assert rep_h.max_fix <= rep_g.max_fix
        if rep_g.max_fix >= 2:
            assert rep_h.max_fix >= 2
        done += 1


def test_solvability_predicates():
    k3 = complete_graph(3)
    assert is_solvable(k3, 2)
    assert not is_routing_solvable(k3)
    c4 = undirected_cycle(4)
    assert is_routing_solvable(c4)
    assert count_fixed_points(routing_witness(c4, 3)) == 9
    assert not is_routing_solvable(undirected_cycle(5))


def test_aracena_and_robert_bounds():
    rng = random.Random(19)
    for _ in range(200):
        n = rng.randint(1, 5)
        q = rng.choice([2, 3])
        g = random_digraph(rng, n, p=0.35, loops=True)
        f = min_net(g, q)
        assert count_fixed_points(f) <= q ** feedback_number(g)
        if g.is_acyclic():
            assert count_fixed_points(f) == 1
