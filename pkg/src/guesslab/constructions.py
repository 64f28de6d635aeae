"""Generators for the named graphs and the explicit constructions.

Every generator is deterministic; the verification of each output
(fixed-point counts, interaction graphs, parameters) lives in the tests
next to the oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .coding import CodingFunction
from .digraph import (
    Digraph,
    count_paths_through,
    is_compatible,
    symmetrized,
    topological_order,
)
from .errors import PreconditionError, ResourceBoundError, SearchFailedError
from .linear import LinearCodingFunction, is_prime
from .params import acyclic_number


@dataclass(frozen=True)
class NamedGraph:
    name: str
    params: tuple
    graph: Digraph


def _complete(n):
    return Digraph.of(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def _tournament(n):
    return Digraph.of(n, [(u, v) for u in range(n) for v in range(n) if u < v])


def _in_star(n):
    return Digraph.of(n, [(i, n - 1) for i in range(n - 1)])


def _out_star(n):
    return Digraph.of(n, [(n - 1, i) for i in range(n - 1)])


def _star(n):
    return symmetrized(_in_star(n))


def _cycle(n):
    if n == 1:
        return Digraph.of(1, [(0, 0)])
    return Digraph.of(n, [(i, (i + 1) % n) for i in range(n)])


def _biclique(a, b):
    arcs = set()
    for u in range(a):
        for v in range(a, a + b):
            arcs.add((u, v))
            arcs.add((v, u))
    return Digraph.of(a + b, arcs)


def grotzsch_graph():
    """Outer 5-cycle, inner 5 vertices matched to the outer neighbourhoods,
    hub joined to the inner ring.  Triangle-free with chromatic number 4."""
    arcs = set()

    def edge(u, v):
        arcs.add((u, v))
        arcs.add((v, u))

    for i in range(5):
        edge(i, (i + 1) % 5)
    for i in range(5):
        edge(5 + i, (i + 1) % 5)
        edge(5 + i, (i + 4) % 5)
    for i in range(5):
        edge(10, 5 + i)
    return Digraph.of(11, arcs)


def clebsch_graph():
    """Folded 5-cube on the 4-bit vectors: adjacent iff the difference has
    weight 1 or 4."""
    arcs = set()
    for u in range(16):
        for v in range(16):
            if u != v and bin(u ^ v).count("1") in (1, 4):
                arcs.add((u, v))
    return Digraph.of(16, arcs)


def fig1_graph():
    return Digraph.of(4, [(0, 1), (1, 0), (2, 0), (3, 0), (3, 1), (1, 2), (2, 3)])


def fig6_graph():
    arcs = [
        (0, 1),
        (0, 2), (2, 0),
        (0, 3), (3, 0),
        (4, 0),
        (1, 4),
        (2, 3), (3, 2),
        (2, 4), (4, 2),
        (3, 4), (4, 3),
    ]
    return Digraph.of(5, arcs)


def fig5_graph():
    """The merged graph of the non-strictly-solvable two-unicast instance."""
    return Digraph.of(4, [(0, 2), (2, 0), (1, 3), (3, 1), (0, 3)])


def gk_family(k, variant="maximal"):
    """The non-linearly-solvable family on I = {i_1..i_{k-1}}, J = {j_1..j_k}.

    Vertices: i_a -> a-1, j_b -> k-1 + b-1.  The maximal variant carries
    every optional arc (the published picture for k = 3); the minimal one
    keeps only the forced arcs.
    """
    if k < 2:
        raise PreconditionError("the family needs k >= 2")
    if variant not in ("maximal", "minimal"):
        raise ValueError(f"unknown variant {variant!r}")

    def i_(a):
        return a - 1

    def j_(b):
        return k - 1 + b - 1

    arcs = set()
    if variant == "maximal":
        for a in range(1, k):
            for b in range(a + 1, k):
                arcs.add((i_(a), i_(b)))
        for a in range(1, k):
            for b in range(a + 1, k):
                arcs.add((j_(a), j_(b)))
        for a in range(1, k):
            arcs.add((j_(a), j_(k)))
    else:
        arcs.add((j_(1), j_(k)))
    arcs.add((j_(k), j_(1)))

    def edge(u, v):
        arcs.add((u, v))
        arcs.add((v, u))

    edge(i_(1), j_(1))
    for a in range(1, k):
        for b in range(2, k):
            edge(i_(a), j_(b))
    for c in range(2, k):
        edge(i_(c), j_(k))
    return Digraph.of(2 * k - 1, arcs)


_FAMILIES = {
    "K": lambda *p: _complete(*p) if len(p) == 1 else _biclique(*p),
    "E": lambda n: Digraph.of(n, []),
    "T": _tournament,
    "iS": _in_star,
    "oS": _out_star,
    "S": _star,
    "C": _cycle,
    "grotzsch": grotzsch_graph,
    "clebsch": clebsch_graph,
    "fig1": fig1_graph,
    "fig5": fig5_graph,
    "fig6": fig6_graph,
    "gk": gk_family,
}


def named(name, *params):
    """Named generator lookup: K/E/T/iS/oS/S/C families with a size, K with
    two sizes for bicliques, gk with k (and variant), plus the fixed graphs."""
    if name not in _FAMILIES:
        raise PreconditionError(f"unknown graph family {name!r}")
    graph = _FAMILIES[name](*params)
    return NamedGraph(name, tuple(params), graph)


# ---------------------------------------------------------------------------
# linear constructions
# ---------------------------------------------------------------------------

def clique_solution(n, q):
    """f_i = -sum_{j != i} x_j mod q on the clique; q**(n-1) fixed points."""
    if n < 1 or q < 2:
        raise PreconditionError("need n >= 1 and q >= 2")
    rows = tuple(
        tuple(0 if u == i else (q - 1) for u in range(n)) for i in range(n)
    )
    return LinearCodingFunction(n, q, rows)


def _shortest_cycle(g):
    best = None
    for s in range(g.n):
        if g.has_loop(s):
            return (s,)
        parent = {s: None}
        frontier = [s]
        cyc = None
        while frontier and cyc is None:
            nxt = []
            for u in frontier:
                for w in g.out_neighbors(u):
                    if w == s:
                        path = [u]
                        while path[-1] != s:
                            path.append(parent[path[-1]])
                        path.reverse()
                        cyc = tuple(path)
                        break
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
                if cyc is not None:
                    break
            frontier = nxt
        if cyc is not None and (best is None or len(cyc) < len(best)):
            best = cyc
        if best is not None and len(best) <= 2:
            break
    return best


def unit_witness(g, q):
    """A coding function with interaction graph exactly g and at least q
    fixed points: follow a chordless cycle, take min everywhere else."""
    cycle = _shortest_cycle(g)
    if cycle is None:
        raise PreconditionError("the graph has no cycle")
    on_cycle = {v: cycle[i - 1] for i, v in enumerate(cycle)}
    sups = []
    tabs = []
    for v in range(g.n):
        sup = g.in_neighbors(v)
        sups.append(sup)
        tab = []
        for assign in itertools.product(range(q), repeat=len(sup)):
            env = dict(zip(sup, assign))
            if v in on_cycle:
                prev = env[on_cycle[v]]
                val = prev if all(env[j] >= prev for j in sup) else (prev + 1) % q
            else:
                val = min(env.values()) if env else q - 1
            tab.append(val)
        tabs.append(tuple(tab))
    return CodingFunction(g.n, q, tuple(sups), tuple(tabs))


def _next_prime(x):
    p = max(2, x + 1)
    while not is_prime(p):
        p += 1
    return p


def sls_construction(g, designated):
    """Strict linear solution from a strongly compatible maximum acyclic set.

    Picks the smallest prime above every through-path count, weights the
    arcs into the feedback part by N(j, v)/N(v, v), and leaves plain sums
    on the acyclic part; reducing the set yields the identity.
    """
    sub = frozenset(designated)
    if not g.is_loopless():
        raise PreconditionError("loops are not allowed here")
    if not sub:
        if g.arcs:
            raise PreconditionError("an empty set is only valid for an arcless graph")
        return LinearCodingFunction(g.n, 2, tuple(tuple(0 for _ in range(g.n)) for _ in range(g.n)))
    topological_order(g, sub)
    if len(sub) != acyclic_number(g, limit=max(16, g.n)):
        raise PreconditionError("the set is not a maximum acyclic set")
    if not is_compatible(g, sub, "strong"):
        raise PreconditionError("the set is not strongly compatible")
    outside = [v for v in range(g.n) if v not in sub]
    counts = {}
    for u in outside:
        for v in outside:
            counts[(u, v)] = count_paths_through(g, sub, u, v)
    for v in outside:
        if counts[(v, v)] == 0:
            raise PreconditionError(
                "every feedback vertex needs a cycle through the set"
            )
    q = _next_prime(max(counts.values(), default=0))
    rows = [[0] * g.n for _ in range(g.n)]
    for i in sorted(sub):
        for u in g.in_neighbors(i):
            rows[i][u] = 1
    for v in outside:
        inv = pow(counts[(v, v)], -1, q)
        for u in g.in_neighbors(v):
            if u in sub:
                rows[v][u] = inv
            else:
                rows[v][u] = (-counts[(u, v)] * inv) % q
    return LinearCodingFunction(g.n, q, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Embedding:
    graph: Digraph
    designated: tuple
    extended: bool


def embed_in_sls(d):
    """Extend d to a graph with a strongly compatible maximum acyclic set.

    Acyclic inputs come back unchanged with the whole vertex set designated.
    Otherwise every arc gets n+1 parallel length-2 paths and every vertex a
    2-cycle gadget through a fresh vertex, which makes the added set both
    strongly compatible and maximum.
    """
    if not d.is_loopless():
        raise PreconditionError("loops are not allowed here")
    if d.is_acyclic():
        return Embedding(d, tuple(range(d.n)), False)
    arcs = set(d.arcs)
    added = []
    nxt = d.n
    for (u, v) in d.arcs_sorted():
        for _ in range(d.n + 1):
            arcs.add((u, nxt))
            arcs.add((nxt, v))
            added.append(nxt)
            nxt += 1
    for v in range(d.n):
        arcs.add((v, nxt))
        arcs.add((nxt, v))
        added.append(nxt)
        nxt += 1
    return Embedding(Digraph.of(nxt, arcs), tuple(added), True)


def _det_mod(mat, q):
    m = [row[:] for row in mat]
    k = len(m)
    det = 1
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c] % q), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = (det * m[c][c]) % q
        inv = pow(m[c][c], -1, q)
        for r in range(c + 1, k):
            f = (m[r][c] * inv) % q
            if f:
                for j in range(c, k):
                    m[r][j] = (m[r][j] - f * m[c][j]) % q
    return det % q


def _inverse_mod(mat, q):
    k = len(mat)
    det = _det_mod(mat, q)
    if det == 0:
        return None
    aug = [list(row) + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(mat)]
    for c in range(k):
        piv = next(r for r in range(c, k) if aug[r][c] % q)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, q)
        aug[c] = [(x * inv) % q for x in aug[c]]
        for r in range(k):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % q for x, y in zip(aug[r], aug[c])]
    return [row[k:] for row in aug]


def kkk_solution(k, chunk=1 << 14):
    """Strict linear solution of K_{k,k} over the smallest prime >= 3k^2.

    Lexicographic scan over zero-free matrices; the first invertible one
    with a zero-free inverse wins.
    """
    if k < 1:
        raise PreconditionError("need k >= 1")
    if k > 4:
        raise ResourceBoundError("matrix search capped at k <= 4")
    q = 3 * k * k
    while not is_prime(q):
        q += 1
    base = q - 1
    total = base ** (k * k)
    found = None
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        codes = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((codes.shape[0], k * k), dtype=np.int64)
        c = codes.copy()
        for pos in range(k * k - 1, -1, -1):
            digits[:, pos] = c % base + 1
            c //= base
        mats = digits.reshape(-1, k, k)
        good = _batch_zero_free_invertible(mats, q, k)
        if good.size:
            idx = int(good[0])
            m = [[int(x) for x in row] for row in mats[idx]]
            found = m
            break
    if found is None:
        raise SearchFailedError("no zero-free matrix with zero-free inverse found")
    minv = _inverse_mod(found, q)
    n = 2 * k
    rows = [[0] * n for _ in range(n)]
    for j in range(k):
        for i in range(k):
            rows[k + j][i] = found[i][j] % q
            rows[i][k + j] = minv[j][i] % q
    return LinearCodingFunction(n, q, tuple(tuple(r) for r in rows))


def _batch_dets(mats, q, k):
    m = mats % q
    if k == 1:
        return m[:, 0, 0] % q
    if k == 2:
        return (m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]) % q
    if k == 3:
        a, b, c = m[:, 0, 0], m[:, 0, 1], m[:, 0, 2]
        d, e, f = m[:, 1, 0], m[:, 1, 1], m[:, 1, 2]
        g_, h, i = m[:, 2, 0], m[:, 2, 1], m[:, 2, 2]
        return (a * (e * i - f * h) - b * (d * i - f * g_) + c * (d * h - e * g_)) % q
    # k == 4: expand along the first row
    total = np.zeros(m.shape[0], dtype=np.int64)
    for c in range(4):
        cols = [x for x in range(4) if x != c]
        minor = m[:, 1:, :][:, :, cols]
        term = m[:, 0, c] * _batch_dets(minor, q, 3)
        total = (total + ((-1) ** c) * term) % q
    return total % q


def _batch_zero_free_invertible(mats, q, k):
    """Indices of matrices with nonzero determinant and all cofactors
    nonzero (zero-free inverse); entries are already zero-free."""
    ok = _batch_dets(mats, q, k) != 0
    if k > 1:
        for i in range(k):
            for j in range(k):
                rows = [x for x in range(k) if x != i]
                cols = [x for x in range(k) if x != j]
                minor = mats[:, rows, :][:, :, cols]
                ok &= _batch_dets(minor, q, k - 1) != 0
    return np.nonzero(ok)[0]


# ---------------------------------------------------------------------------
# graph and coding-function reduction targets
# ---------------------------------------------------------------------------

def dh_graph_construction(d, h):
    """A graph G with G[J] = h whose set reduction recovers d.

    One subdivision vertex per arc of d missing from h; returns (G, I)."""
    if h.n != d.n or not h.arcs <= d.arcs:
        raise PreconditionError("h must be a spanning subgraph of d")
    missing = sorted(d.arcs - h.arcs)
    arcs = set(h.arcs)
    added = []
    nxt = d.n
    for (u, v) in missing:
        arcs.add((u, nxt))
        arcs.add((nxt, v))
        added.append(nxt)
        nxt += 1
    return Digraph.of(nxt, arcs), tuple(added)


def reduction_target_fn(d, h, q):
    """A coding function whose interaction graph restricted to J is d and
    whose I-reduction has interaction graph exactly h.

    Subdivision variables shift the unwanted inputs by x_u + q - 1 - x_e,
    everything feeds a min clamped at q - 1.  Returns (f, I)."""
    if h.n != d.n:
        raise PreconditionError("d and h must share the vertex set")
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    n0 = d.n
    i_d = sorted(d.arcs - h.arcs)
    i_h = sorted(h.arcs - d.arcs)
    sub_id = {}
    nxt = n0
    for e in i_d + i_h:
        sub_id[e] = nxt
        nxt += 1
    sups = []
    tabs = []
    for j in range(n0):
        in_d = set(d.in_neighbors(j))
        in_h = set(h.in_neighbors(j))
        shifted = sorted(in_d - in_h)
        plain = sorted(in_d & in_h)
        carried = sorted(sub_id[(w, j)] for w in (in_h - in_d))
        shift_vars = [sub_id[(u, j)] for u in shifted]
        sup = tuple(sorted(set(shifted) | set(plain) | set(carried) | set(shift_vars)))

        def value(env, shifted=shifted, plain=plain, carried=carried):
            vals = [q - 1]
            for u in shifted:
                vals.append(env[u] + q - 1 - env[sub_id[(u, j)]])
            vals.extend(env[u] for u in plain)
            vals.extend(env[e] for e in carried)
            return min(vals)

        tab = [
            value(dict(zip(sup, assign))) % q
            for assign in itertools.product(range(q), repeat=len(sup))
        ]
        sups.append(sup)
        tabs.append(tuple(tab))
    for e in i_d + i_h:
        u = e[0]
        sups.append((u,))
        tabs.append(tuple(range(q)))
    f = CodingFunction(nxt, q, tuple(sups), tuple(tabs))
    return f, tuple(range(n0, nxt))


def vanish_reduction_fn(g, v, h, q):
    """A function with interaction graph exactly g whose v-reduction's
    interaction graph is exactly h, for a universal loop-free vertex v.

    h lives on the compacted labels of g minus v."""
    g.check_vertex(v)
    others = [u for u in range(g.n) if u != v]
    if set(g.in_neighbors(v)) != set(others) or set(g.out_neighbors(v)) != set(others):
        raise PreconditionError("v must be universal")
    if any(g.in_degree(u) < 2 for u in range(g.n)):
        raise PreconditionError("minimum in-degree must be at least 2")
    if h.n != g.n - 1:
        raise PreconditionError("h must span g minus v")
    compact = {u: i for i, u in enumerate(others)}
    induced = {
        (compact[a], compact[b]) for a, b in g.arcs if a != v and b != v
    }
    if not h.arcs <= frozenset(induced):
        raise PreconditionError("h must be a spanning subgraph of g minus v")
    if q < 2:
        raise ValueError("alphabet size must be at least 2")

    def y(val):
        return min(val, 1)

    sups = []
    tabs = []
    for u in range(g.n):
        sup = g.in_neighbors(u)
        if u == v:
            def value(env):
                return 1 if any(y(env[i]) for i in sup) else 0
        else:
            pool = set(sup) - {v}
            p = {a for a in pool if (compact[a], compact[u]) in h.arcs}
            qq = pool - p

            def value(env, p=p, qq=qq):
                conj = all(y(env[x]) for x in p)
                disj = y(env[v]) == 1 or any(y(env[x]) == 0 for x in qq)
                return 1 if (conj and disj) else 0

        tab = [
            value(dict(zip(sup, assign)))
            for assign in itertools.product(range(q), repeat=len(sup))
        ]
        sups.append(sup)
        tabs.append(tuple(tab))
    return CodingFunction(g.n, q, tuple(sups), tuple(tabs))
