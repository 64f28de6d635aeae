"""Linear coding functions over Z_q and exact linear guessing numbers.

Strict-mode coefficient matrices carry units of Z_q on every arc of the
target graph and zeros elsewhere; subgraph freedom in g_L mode is
expressed by allowing zero.  Relaxed mode (arbitrary nonzero entries)
exists for exploration only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coding import CodingFunction, state_limit
from .digraph import Digraph, topological_order
from .errors import PreconditionError, ResourceBoundError
from .params import acyclic_number, all_max_acyclic_sets
from .digraph import is_compatible

NOT_LINEARLY_SOLVABLE = "not-linearly-solvable"
NOT_STRICTLY_LINEARLY_SOLVABLE = "not-strictly-linearly-solvable"
INCONCLUSIVE = "inconclusive"

SEARCH_CAP = 1 << 26
PROVER_ARC_CAP = 22


def is_prime(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def units(q):
    return tuple(a for a in range(1, q) if math.gcd(a, q) == 1)


@dataclass(frozen=True)
class LinearCodingFunction:
    """f_i(x) = sum_u rows[i][u] * x_u mod q."""

    n: int
    q: int
    rows: tuple

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("modulus must be at least 2")
        rows = tuple(tuple(int(a) % self.q for a in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError("coefficient matrix must be n x n")

    def support_graph(self):
        arcs = {
            (u, i)
            for i in range(self.n)
            for u in range(self.n)
            if self.rows[i][u] != 0
        }
        return Digraph.of(self.n, arcs)

    def coefficients_unit(self):
        us = set(units(self.q))
        return all(a == 0 or a in us for r in self.rows for a in r)

    def to_coding_function(self):
        sups = []
        tabs = []
        for i in range(self.n):
            sup = tuple(u for u in range(self.n) if self.rows[i][u] != 0)
            tab = [
                sum(c * x for c, x in zip((self.rows[i][u] for u in sup), assign)) % self.q
                for assign in itertools.product(range(self.q), repeat=len(sup))
            ]
            sups.append(sup)
            tabs.append(tuple(tab))
        return CodingFunction(self.n, self.q, tuple(sups), tuple(tabs))


@dataclass(frozen=True)
class LinearReport:
    graph: Digraph
    q: int
    mode: str
    max_fix: int
    dim: int | None
    witness: LinearCodingFunction | None

    @property
    def value(self):
        return math.log(self.max_fix, self.q) if self.max_fix > 0 else float("-inf")


def count_fixed_linear(f, limit=None):
    """(count, dim): solutions of (A - I) x = 0 mod q.

    Prime q gives q**(n - rank) with the dimension; composite q falls back
    to exact state enumeration under the state cap.
    """
    n, q = f.n, f.q
    if n == 0:
        return 1, 0
    if is_prime(q):
        m = np.zeros((1, n, n), dtype=np.int64)
        for i in range(n):
            for u in range(n):
                m[0, i, u] = f.rows[i][u]
            m[0, i, i] = (m[0, i, i] - 1) % q
        rank = int(_kernels.modular_ranks(m, q)[0])
        return q ** (n - rank), n - rank
    cap = state_limit(limit)
    if q**n > cap:
        raise ResourceBoundError("composite-modulus counting needs q**n under the cap")
    count = 0
    for x in itertools.product(range(q), repeat=n):
        if all(sum(f.rows[i][u] * x[u] for u in range(n)) % q == x[i] for i in range(n)):
            count += 1
    return count, None


def dim_fix(f, limit=None):
    return count_fixed_linear(f, limit)


def _scatter_matrices(codes, arcs, allowed, n, q):
    """Matrices (A - I) mod q for a batch of mixed-radix coefficient codes."""
    base = len(allowed)
    B = codes.shape[0]
    mats = np.zeros((B, n, n), dtype=np.int64)
    digits = codes.copy()
    vals = np.asarray(allowed, dtype=np.int64)
    for pos in range(len(arcs) - 1, -1, -1):
        u, i = arcs[pos]
        mats[:, i, u] = vals[digits % base]
        digits //= base
    for i in range(n):
        mats[:, i, i] = (mats[:, i, i] - 1) % q
    return mats


def linear_guessing(g, q, mode="g", relaxed=False, search_cap=SEARCH_CAP, chunk=1 << 15):
    """Exact max fixed-point count over coefficient matrices on g.

    mode "g": each arc carries 0 or a unit (interaction graph inside g);
    mode "h": units only (interaction graph exactly g).  The witness is
    the lexicographically first maximiser over the sorted arc list.
    """
    if mode not in ("g", "h"):
        raise ValueError(f"unknown mode {mode!r}")
    arcs = g.arcs_sorted()
    pool = tuple(range(1, q)) if relaxed else units(q)
    allowed = ((0,) + pool) if mode == "g" else pool
    base = len(allowed)
    total = base ** len(arcs)
    if total > search_cap:
        raise ResourceBoundError(f"{base}**{len(arcs)} coefficient matrices exceed the cap")
    prime = is_prime(q)
    if not prime:
        return _linear_guessing_slow(g, q, mode, arcs, allowed, total)
    best_count = -1
    best_code = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        mats = _scatter_matrices(codes, arcs, allowed, g.n, q)
        ranks = _kernels.modular_ranks(mats, q)
        counts = q ** (g.n - ranks)
        idx = int(np.argmax(counts))
        if int(counts[idx]) > best_count:
            best_count = int(counts[idx])
            best_code = start + idx
    witness = _decode_witness(best_code, arcs, allowed, g.n, q)
    dim = int(round(math.log(best_count, q))) if best_count > 1 else 0
    return LinearReport(g, q, mode, best_count, dim, witness)


def _decode_witness(code, arcs, allowed, n, q):
    rows = [[0] * n for _ in range(n)]
    base = len(allowed)
    for pos in range(len(arcs) - 1, -1, -1):
        u, i = arcs[pos]
        rows[i][u] = allowed[code % base]
        code //= base
    return LinearCodingFunction(n, q, tuple(tuple(r) for r in rows))


def _linear_guessing_slow(g, q, mode, arcs, allowed, total):
    best_count = -1
    best = None
    for code in range(total):
        f = _decode_witness(code, arcs, allowed, g.n, q)
        count, _ = count_fixed_linear(f)
        if count > best_count:
            best_count = count
            best = f
    return LinearReport(g, q, mode, best_count, None, best)


def linear_reduce(f, vertices):
    """Symbolic I-reduction of a linear coding function.

    Substitutes each eliminated row into the others; I must be acyclic in
    the support graph.  Returns (reduced function, old-to-new map).
    """
    sub = frozenset(vertices)
    graph = f.support_graph()
    topological_order(graph, sub)  # validates acyclicity
    n, q = f.n, f.q
    rows = [list(r) for r in f.rows]
    remaining = [v for v in range(n) if v not in sub]
    for v in sorted(sub):
        if rows[v][v] % q != 0:
            raise PreconditionError(f"vertex {v} acquired a loop during elimination")
        coeffs = rows[v]
        for i in range(n):
            if i == v:
                continue
            c = rows[i][v]
            if c:
                for u in range(n):
                    rows[i][u] = (rows[i][u] + c * coeffs[u]) % q
                rows[i][v] = 0
        rows[v] = [0] * n
    m = {v: i for i, v in enumerate(remaining)}
    out_rows = tuple(
        tuple(rows[v][u] for u in remaining) for v in remaining
    )
    return LinearCodingFunction(len(remaining), q, out_rows), m


@dataclass(frozen=True)
class Certificate:
    verdict: str
    witness: frozenset | None = None


def weak_compat_certificate(g, limit=12):
    """Search every maximum acyclic set for a weak-compatibility violation.

    A violating set proves h_L(G, q) < k(G) for every q; otherwise the
    check is inconclusive.
    """
    if g.n > limit:
        raise ResourceBoundError(f"certificate search capped at n <= {limit}")
    alpha = acyclic_number(g, limit=max(16, g.n))
    if alpha == 0:
        return Certificate(INCONCLUSIVE)
    for s in all_max_acyclic_sets(g, limit=g.n, alpha=alpha):
        if not is_compatible(g, s, "weak"):
            return Certificate(NOT_STRICTLY_LINEARLY_SOLVABLE, s)
    return Certificate(INCONCLUSIVE)


def _passes_weak_condition(h, alpha):
    """Do all maximum acyclic sets of h satisfy weak compatibility?"""
    if alpha == 0:
        return True
    for combo in itertools.combinations(range(h.n), alpha):
        if h.is_acyclic_within(combo) and not is_compatible(h, combo, "weak"):
            return False
    return True


def prove_not_linearly_solvable(g, arc_cap=PROVER_ARC_CAP):
    """Sound, incomplete non-solvability prover.

    G is linearly solvable iff some spanning subgraph H with k(H) = k(G)
    is strictly linearly solvable; strict solvability forces every maximum
    acyclic set of H to be weakly compatible.  If every such H violates
    that necessary condition, no alphabet can solve G linearly.
    """
    arcs = g.arcs_sorted()
    if len(arcs) > arc_cap:
        raise ResourceBoundError(f"spanning-subgraph search capped at {arc_cap} arcs")
    alpha = acyclic_number(g, limit=max(16, g.n))
    bigger = list(itertools.combinations(range(g.n), alpha + 1)) if alpha < g.n else []
    arcs_within = []
    for combo in bigger:
        inside = frozenset(combo)
        arcs_within.append(
            [j for j, (u, v) in enumerate(arcs) if u in inside and v in inside]
        )
    subsets_of_arc = [[] for _ in arcs]
    for si, within in enumerate(arcs_within):
        for j in within:
            subsets_of_arc[j].append(si)

    def _subset_acyclic(si, kept_arcs):
        combo = bigger[si]
        pos = {v: i for i, v in enumerate(combo)}
        indeg = [0] * len(combo)
        outs = [[] for _ in combo]
        for j in arcs_within[si]:
            if kept_arcs >> j & 1:
                u, v = arcs[j]
                if u == v:
                    return False
                outs[pos[u]].append(pos[v])
                indeg[pos[v]] += 1
        ready = [i for i, d in enumerate(indeg) if d == 0]
        done = 0
        while ready:
            x = ready.pop()
            done += 1
            for y in outs[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
        return done == len(combo)

    def k_drops(kept_child, removed_j):
        # removing arcs is monotone, so only subsets touching the removed
        # arc can have turned acyclic
        for si in subsets_of_arc[removed_j]:
            if _subset_acyclic(si, kept_child):
                return True
        return False

    full = (1 << len(arcs)) - 1
    found_pass = False

    def visit(kept, start):
        nonlocal found_pass
        if found_pass:
            return
        h = Digraph.of(g.n, [arcs[j] for j in range(len(arcs)) if kept >> j & 1])
        if _passes_weak_condition(h, alpha):
            found_pass = True
            return
        for j in range(start, len(arcs)):
            child = kept & ~(1 << j)
            if not k_drops(child, j):
                visit(child, j + 1)
            if found_pass:
                return

    visit(full, 0)
    return Certificate(INCONCLUSIVE if found_pass else NOT_LINEARLY_SOLVABLE)
