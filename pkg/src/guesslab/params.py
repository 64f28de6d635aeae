"""Exact combinatorial parameters of small digraphs.

Everything here is exact branch-and-bound or exhaustive search; the size
caps are arguments with the documented defaults, so a caller can raise
them deliberately for a one-off fixture.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _kernels
from ._bitset import bits, max_clique, max_independent_set, maximal_cliques_containing
from .errors import PreconditionError, ResourceBoundError

ALPHA_LIMIT = 16
CYCLE_LIMIT = 12
PARTITION_LIMIT = 12
IDS_LIMIT = 20
MODEL_LIMIT = 7


@dataclass(frozen=True)
class GraphParams:
    """k: min feedback vertex set, alpha: max acyclic set, c: max disjoint
    cycles, mu: max matching, cp: min clique partition, isolated count."""

    k: int
    alpha: int
    c: int
    mu: int
    cp: int
    isolated: int


def _check(n, limit, what):
    if limit is not None and n > limit:
        raise ResourceBoundError(f"{what} capped at n <= {limit}, got n = {n}")


def _find_short_cycle(in_masks, out_masks, mask):
    """A shortest directed cycle inside mask, as a vertex tuple, or None."""
    best = None
    for s in bits(mask):
        if out_masks[s] >> s & 1:
            return (s,)
        # BFS from s back to s
        dist = {s: 0}
        parent = {}
        frontier = [s]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for w in bits(out_masks[u] & mask):
                    if w == s:
                        found = u
                        break
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                if found is not None:
                    break
            frontier = nxt
        if found is not None:
            cyc = [found]
            while cyc[-1] != s:
                cyc.append(parent[cyc[-1]])
            cyc.reverse()
            if best is None or len(cyc) < len(best):
                best = tuple(cyc)
                if len(best) <= 2:
                    return best
    return best


def max_acyclic_set(g, limit=ALPHA_LIMIT):
    """A maximum acyclic vertex set, as a frozenset."""
    _check(g.n, limit, "max acyclic set")
    loopless = [v for v in range(g.n) if not g.has_loop(v)]
    universe = 0
    for v in loopless:
        universe |= 1 << v
    if g.is_undirected():
        adj = [0] * g.n
        for u, v in g.arcs:
            if u != v:
                adj[u] |= 1 << v
        sol = max_independent_set(adj, g.n, universe)
        return frozenset(bits(sol))

    in_masks = g.in_masks()
    out_masks = g.out_masks()
    best = 0
    seen = set()

    def greedy_packing(mask):
        cnt = 0
        while True:
            cyc = _find_short_cycle(in_masks, out_masks, mask)
            if cyc is None:
                return cnt
            for v in cyc:
                mask &= ~(1 << v)
            cnt += 1

    def rec(mask):
        nonlocal best
        if mask.bit_count() <= best.bit_count() or mask in seen:
            return
        seen.add(mask)
        cyc = _find_short_cycle(in_masks, out_masks, mask)
        if cyc is None:
            best = mask
            return
        # every vertex-disjoint cycle forces at least one exclusion
        rest = mask
        for v in cyc:
            rest &= ~(1 << v)
        if mask.bit_count() - 1 - greedy_packing(rest) <= best.bit_count():
            return
        for v in cyc:
            rec(mask & ~(1 << v))

    rec(universe)
    return frozenset(bits(best))


def acyclic_number(g, limit=ALPHA_LIMIT):
    return len(max_acyclic_set(g, limit))


def feedback_number(g, limit=ALPHA_LIMIT):
    """k(G), the minimum feedback vertex set size."""
    return g.n - acyclic_number(g, limit)


def all_max_acyclic_sets(g, limit=CYCLE_LIMIT, alpha=None):
    """Every maximum acyclic set; the minimum feedback vertex sets are the
    complements."""
    _check(g.n, limit, "max acyclic set enumeration")
    if alpha is None:
        alpha = acyclic_number(g, limit=max(limit or 0, g.n))
    out = []
    for combo in itertools.combinations(range(g.n), alpha):
        if g.is_acyclic_within(combo):
            out.append(frozenset(combo))
    return out


def min_feedback_vertex_sets(g, limit=CYCLE_LIMIT):
    everything = frozenset(range(g.n))
    return [everything - s for s in all_max_acyclic_sets(g, limit)]


def _minimal_cycles_through(out_masks, in_masks, mask, v):
    """Directed cycles through v inside mask with no shorter v-cycle inside
    their vertex set.  Forward chords and interior arcs back to v are
    pruned, which preserves at least one optimal packing."""
    cycles = []
    if out_masks[v] >> v & 1:
        return [(v,)]

    def walk(path, path_mask):
        last = path[-1]
        for w in bits(out_masks[last] & mask & ~path_mask):
            # no arc from an earlier path vertex into w (forward chord)
            if any(out_masks[p] >> w & 1 for p in path[:-1]):
                continue
            if out_masks[w] >> v & 1:
                cycles.append(tuple(path) + (w,))
                continue
            walk(path + [w], path_mask | (1 << w))

    if out_masks[v] & in_masks[v] & mask & ~(1 << v):
        for w in bits(out_masks[v] & in_masks[v] & mask & ~(1 << v)):
            cycles.append((v, w))
    for w in bits(out_masks[v] & mask & ~(1 << v)):
        if in_masks[v] >> w & 1:
            continue  # already recorded as a 2-cycle
        walk([v, w], (1 << v) | (1 << w))
    return cycles


def max_disjoint_cycles(g, limit=CYCLE_LIMIT):
    """(count, cycles): a maximum family of vertex-disjoint directed cycles."""
    _check(g.n, limit, "disjoint cycle packing")
    in_masks = g.in_masks()
    out_masks = g.out_masks()
    memo = {}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        short = _find_short_cycle(in_masks, out_masks, mask)
        if short is None:
            memo[mask] = (0, ())
            return memo[mask]
        v = min(short)
        best = rec(mask & ~(1 << v))
        for cyc in _minimal_cycles_through(out_masks, in_masks, mask, v):
            used = 0
            for w in cyc:
                used |= 1 << w
            cnt, rest = rec(mask & ~used)
            if cnt + 1 > best[0]:
                best = (cnt + 1, (cyc,) + rest)
        memo[mask] = best
        return best

    return rec((1 << g.n) - 1)


def max_matching(g, limit=None):
    """Maximum matching size over the symmetric (undirected) edges."""
    _check(g.n, limit, "matching")
    adj = [0] * g.n
    for u, v in g.symmetric_edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    memo = {}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        u = None
        for x in bits(mask):
            if adj[x] & mask:
                u = x
                break
        if u is None:
            return 0
        best = rec(mask & ~(1 << u))
        for w in bits(adj[u] & mask):
            best = max(best, 1 + rec(mask & ~(1 << u) & ~(1 << w)))
        memo[mask] = best
        return best

    return rec((1 << g.n) - 1)


def _sym_adj(g):
    adj = [0] * g.n
    for u, v in g.arcs:
        if u != v and (v, u) in g.arcs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def min_clique_partition(g, limit=PARTITION_LIMIT):
    """Minimum number of cliques (bidirectional complete sets) covering V.

    Exhaustive partition search: branch over the maximal cliques containing
    the lowest uncovered vertex, pruned by |uncovered| / omega.
    """
    _check(g.n, limit, "clique partition")
    if g.n == 0:
        return 0
    adj = _sym_adj(g)
    full = (1 << g.n) - 1

    omega = max_clique(adj, g.n).bit_count()
    omega = max(omega, 1)

    # greedy upper bound
    best = 0
    mask = full
    while mask:
        v = (mask & -mask).bit_length() - 1
        c = 1 << v
        cand = adj[v] & mask
        while cand:
            w = (cand & -cand).bit_length() - 1
            c |= 1 << w
            cand &= adj[w] & mask
        mask &= ~c
        best += 1

    def rec(mask, used):
        nonlocal best
        if mask == 0:
            if used < best:
                best = used
            return
        if used + -(-mask.bit_count() // omega) >= best:
            return
        v = (mask & -mask).bit_length() - 1
        cliques = maximal_cliques_containing(adj, 1 << v, mask)
        cliques.sort(key=lambda c: -c.bit_count())
        for c in cliques:
            rec(mask & ~c, used + 1)

    rec(full, 0)
    return best


def isolated_count(g):
    return len(g.isolated_vertices())


def graph_params(g, alpha_limit=ALPHA_LIMIT, cycle_limit=CYCLE_LIMIT, partition_limit=PARTITION_LIMIT):
    """All exact parameters in one record."""
    alpha = acyclic_number(g, alpha_limit)
    c, _ = max_disjoint_cycles(g, cycle_limit)
    return GraphParams(
        k=g.n - alpha,
        alpha=alpha,
        c=c,
        mu=max_matching(g),
        cp=min_clique_partition(g, partition_limit),
        isolated=isolated_count(g),
    )


def is_vertex_full(g, alpha_limit=ALPHA_LIMIT, partition_limit=PARTITION_LIMIT):
    """cp(G) == alpha(G)."""
    return min_clique_partition(g, partition_limit) == acyclic_number(g, alpha_limit)


def is_edge_full(g, limit=PARTITION_LIMIT):
    """Can alpha(G) cliques cover every arc?  Implies undirected."""
    _check(g.n, limit, "edge cover by cliques")
    if not g.is_undirected() or not g.is_loopless():
        return False
    alpha = acyclic_number(g, limit=max(ALPHA_LIMIT, g.n))
    edges = g.symmetric_edges()
    if not edges:
        return True
    adj = _sym_adj(g)
    edge_index = {e: i for i, e in enumerate(edges)}
    all_edges = (1 << len(edges)) - 1

    def covered_by(clique):
        m = 0
        vs = list(bits(clique))
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                m |= 1 << edge_index[(u, v)]
        return m

    def rec(uncovered, used):
        if uncovered == 0:
            return True
        if used >= alpha:
            return False
        e = (uncovered & -uncovered).bit_length() - 1
        u, v = edges[e]
        seed = (1 << u) | (1 << v)
        for c in maximal_cliques_containing(adj, seed, (1 << g.n) - 1):
            if rec(uncovered & ~covered_by(c), used + 1):
                return True
        return False

    return rec(all_edges, 0)


def in_dominating_counts(g, limit=IDS_LIMIT):
    """counts[k] = number of in-dominating sets of size k.  Loopless only."""
    _check(g.n, limit, "in-dominating set counting")
    if not g.is_loopless():
        raise PreconditionError("in-dominating sets are defined for loopless graphs")
    in_masks = g.in_masks()
    need = [1 if g.in_degree(v) > 0 else 0 for v in range(g.n)]
    return tuple(int(x) for x in _kernels.ids_size_counts(in_masks, need, g.n))


def count_in_dominating_sets(g, k, limit=IDS_LIMIT):
    counts = in_dominating_counts(g, limit)
    if not (0 <= k <= g.n):
        return 0
    return counts[k]


def min_intersection_model(g, budget, limit=MODEL_LIMIT):
    """An intersection model over a ground set of size `budget`, or None.

    Vertices get subsets X_v with u ~ v iff X_u and X_v intersect.
    Backtracking with interchangeable fresh elements used in prefix order.
    """
    _check(g.n, limit, "intersection model search")
    if not g.is_undirected() or not g.is_loopless():
        raise PreconditionError("intersection models need an undirected loopless graph")
    if budget < 0:
        return None
    adj = _sym_adj(g)
    n = g.n
    sets = [0] * n

    def candidates(used):
        for t in range(0, budget - used + 1):
            block = ((1 << t) - 1) << used
            for sub in range(1 << used):
                yield sub | block, used + t

    def consistent(v, mask):
        for u in range(v):
            if (adj[v] >> u & 1) != (1 if sets[u] & mask else 0):
                return False
        return True

    def rec(v, used):
        if v == n:
            return True
        for mask, new_used in candidates(used):
            if consistent(v, mask):
                sets[v] = mask
                if rec(v + 1, new_used):
                    return True
        sets[v] = 0
        return False

    if rec(0, 0):
        return tuple(frozenset(bits(m)) for m in sets)
    return None


def intersection_number(g, limit=MODEL_LIMIT):
    """Smallest ground-set size admitting an intersection model."""
    upper = len(g.symmetric_edges())
    for budget in range(upper + 1):
        if min_intersection_model(g, budget, limit) is not None:
            return budget
    return upper
