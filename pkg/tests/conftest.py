import itertools
import random

import pytest

from guesslab.coding import CodingFunction
from guesslab.digraph import Digraph, symmetrized


def complete_graph(n):
    return Digraph.of(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def undirected_cycle(n):
    return symmetrized(Digraph.of(n, [(i, (i + 1) % n) for i in range(n)]))


def directed_cycle(n):
    return Digraph.of(n, [(i, (i + 1) % n) for i in range(n)])


def random_digraph(rng, n, p=0.3, loops=False):
    arcs = {
        (u, v)
        for u in range(n)
        for v in range(n)
        if (loops or u != v) and rng.random() < p
    }
    return Digraph.of(n, arcs)


def random_coding_function(rng, n, q, max_indeg=3):
    sups = []
    tabs = []
    for v in range(n):
        d = rng.randint(0, min(n, max_indeg))
        sup = tuple(sorted(rng.sample(range(n), d)))
        tab = tuple(rng.randrange(q) for _ in range(q**d))
        sups.append(sup)
        tabs.append(tab)
    return CodingFunction(n, q, tuple(sups), tuple(tabs))


def random_acyclic_subset(rng, g, max_size=3):
    cand = [
        s
        for r in range(1, max_size + 1)
        for s in itertools.combinations(range(g.n), r)
        if g.is_acyclic_within(s)
    ]
    return rng.choice(cand) if cand else None


@pytest.fixture
def rng():
    return random.Random(0x5EED)


@pytest.fixture
def fig1_function():
    # f1 = x3 & (x2 | x4), f2 = x1 | x4, f3 = x2, f4 = x3 (1-based labels)
    return CodingFunction.from_state_functions(
        4,
        2,
        [
            lambda x: x[2] & (x[1] | x[3]),
            lambda x: x[0] | x[3],
            lambda x: x[1],
            lambda x: x[2],
        ],
    )
