"""Exact guessing numbers and the loop-full closed form.

Counts of fixed points are the source of truth everywhere; log_q values
are derived for presentation only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._bitset import bits, max_independent_set
from .coding import CodingFunction
from .digraph import Digraph, add_loops, strip_loops
from .errors import PreconditionError, ResourceBoundError
from .params import acyclic_number, in_dominating_counts, max_disjoint_cycles

STATE_CAP = 4096


@dataclass(frozen=True)
class GuessingReport:
    """Result of a guessing-number computation.

    kind is "g" (interaction graph contained in G), "h" (equal to G), or
    "h-loops-formula" (strict value of a loop-full graph via the
    in-dominating-set sum).  max_fix is the exact count.
    """

    graph: Digraph
    q: int
    kind: str
    max_fix: int
    witness: CodingFunction | None = None
    method: str = ""

    @property
    def value(self):
        return math.log(self.max_fix, self.q) if self.max_fix > 0 else float("-inf")


def _state_digits(n, q):
    total = q**n
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = np.arange(total, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % q


def _conflict_adjacency(g, q):
    """Bitset adjacency of the conflict graph over all q**n states.

    States x, y conflict iff some vertex sees the same in-projection but a
    different own value; independent sets are exactly the consistent
    fixed-point sets.
    """
    n = g.n
    total = q**n
    digs = _state_digits(n, q)
    conflict = np.zeros((total, total), dtype=bool)
    for v in range(n):
        sup = list(g.in_neighbors(v))
        if sup:
            w = q ** np.arange(len(sup) - 1, -1, -1, dtype=np.int64)
            proj = digs[:, sup] @ w
        else:
            proj = np.zeros(total, dtype=np.int64)
        same_proj = proj[:, None] == proj[None, :]
        diff_val = digs[:, v][:, None] != digs[:, v][None, :]
        conflict |= same_proj & diff_val
    adj = []
    for i in range(total):
        row = np.packbits(conflict[i], bitorder="little").tobytes()
        adj.append(int.from_bytes(row, "little"))
    return adj


def _witness_from_states(g, q, chosen_codes):
    n = g.n
    weights = [q ** (n - 1 - v) for v in range(n)]
    states = [tuple((c // w) % q for w in weights) for c in chosen_codes]
    sups = []
    tabs = []
    for v in range(n):
        sup = g.in_neighbors(v)
        table = [0] * (q ** len(sup))
        for x in states:
            r = 0
            for s in sup:
                r = r * q + x[s]
            table[r] = x[v]
        sups.append(sup)
        tabs.append(tuple(table))
    return CodingFunction(n, q, tuple(sups), tuple(tabs))


def guessing_number(g, q, state_cap=STATE_CAP):
    """Exact max |Fix(f)| over coding functions with G(f) inside g.

    Computed as a maximum independent set of the conflict graph over all
    q**n states; the witness extends the chosen partial tables by zero.
    """
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if q**g.n > state_cap:
        raise ResourceBoundError(f"conflict graph needs {q}**{g.n} <= {state_cap} states")
    if g.n == 0:
        return GuessingReport(g, q, "g", 1, CodingFunction(0, q, (), ()), "conflict-graph")
    adj = _conflict_adjacency(g, q)
    sol = max_independent_set(adj, q**g.n)
    chosen = sorted(bits(sol))
    witness = _witness_from_states(g, q, chosen)
    return GuessingReport(g, q, "g", len(chosen), witness, "conflict-graph")


# ---------------------------------------------------------------------------
# strict guessing
# ---------------------------------------------------------------------------

def _essential_local_tables(q, d, cap):
    """All tables on d inputs that depend essentially on every input."""
    total = q ** (q**d)
    if total > cap:
        raise ResourceBoundError(
            f"enumerating {q}**({q}**{d}) local tables exceeds the cap {cap}"
        )
    rows = q**d
    out = []
    for flat in itertools.product(range(q), repeat=rows):
        ok = True
        for p in range(d):
            stride = q ** (d - 1 - p)
            block = stride * q
            seen_change = False
            for base in range(0, rows, block):
                for off in range(stride):
                    vals = {flat[base + off + a * stride] for a in range(q)}
                    if len(vals) > 1:
                        seen_change = True
                        break
                if seen_change:
                    break
            if not seen_change:
                ok = False
                break
        if ok:
            out.append(flat)
    return out


def _fix_mask_int(g, q, v, table):
    """Bitmask over state codes where table would fix vertex v."""
    n = g.n
    sup = g.in_neighbors(v)
    mask = 0
    weights = [q ** (n - 1 - u) for u in range(n)]
    for code in range(q**n):
        x = [(code // w) % q for w in weights]
        r = 0
        for s in sup:
            r = r * q + x[s]
        if table[r] == x[v]:
            mask |= 1 << code
    return mask


def strict_guessing_number(g, q, table_cap=1 << 20, combo_cap=1 << 22, cross_check=None):
    """Exact max |Fix(f)| over f whose interaction graph equals g.

    Loop-full graphs take the closed-form route (in-dominating-set sum)
    with the explicit witness; everything else is exhaustive enumeration
    of per-vertex essential tables, with deduplicated fixed-state masks.
    """
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    loop_full = g.n > 0 and all(g.has_loop(v) for v in range(g.n))
    if loop_full:
        core = strip_loops(g)
        count = _ids_fixed_count(core, q)
        witness = loopfull_witness(core, q)
        report = GuessingReport(g, q, "h-loops-formula", count, witness, "ids-sum")
        do_cross = cross_check
        if do_cross is None:
            do_cross = q ** (q ** max((g.in_degree(v) for v in range(g.n)), default=0)) <= 4096
        if do_cross:
            try:
                brute = _strict_exhaustive(g, q, table_cap, combo_cap)
            except ResourceBoundError:
                brute = None
            if brute is not None and brute[0] != count:
                raise AssertionError(
                    f"loop-full formula {count} disagrees with enumeration {brute[0]}"
                )
        return report
    best, tables = _strict_exhaustive(g, q, table_cap, combo_cap)
    witness = CodingFunction(
        g.n, q, tuple(g.in_neighbors(v) for v in range(g.n)), tuple(tables)
    )
    return GuessingReport(g, q, "h", best, witness, "exhaustive")


def _strict_exhaustive(g, q, table_cap, combo_cap):
    if g.n == 0:
        return 1, ()
    per_vertex = []
    for v in range(g.n):
        d = g.in_degree(v)
        tables = _essential_local_tables(q, d, table_cap)
        masks = {}
        for t in tables:
            m = _fix_mask_int(g, q, v, t)
            if m not in masks:
                masks[m] = t
        per_vertex.append(masks)
    # distinct partial masks can never outnumber the subsets of the state
    # space, so bound the stage-by-stage work, not the raw product
    states = q**g.n
    state_cap_sets = 1 << states if states <= 30 else None
    prev = 1
    work = 0
    for masks in per_vertex:
        work += prev * len(masks)
        prev *= len(masks)
        if state_cap_sets is not None:
            prev = min(prev, state_cap_sets)
        if work > combo_cap:
            raise ResourceBoundError("strict enumeration exceeds the combination cap")
    partial = {(1 << (q**g.n)) - 1: ()}
    for masks in per_vertex:
        nxt = {}
        for acc, chosen in partial.items():
            for m, t in masks.items():
                key = acc & m
                if key not in nxt:
                    nxt[key] = chosen + (t,)
        partial = nxt
    best_mask = max(partial, key=lambda m: m.bit_count())
    return best_mask.bit_count(), partial[best_mask]


# ---------------------------------------------------------------------------
# loop-full closed form
# ---------------------------------------------------------------------------

def _ids_fixed_count(g_loopless, q):
    counts = in_dominating_counts(g_loopless)
    return sum((q - 1) ** k * counts[k] for k in range(len(counts)))


def h_loops(g_loopless, q, limit=20):
    """Strict guessing count of the loop-full closure of a loopless graph,
    via sum_k (q-1)^k I_k."""
    if not g_loopless.is_loopless():
        raise PreconditionError("h_loops expects the loopless core")
    counts = in_dominating_counts(g_loopless, limit)
    total = sum((q - 1) ** k * counts[k] for k in range(len(counts)))
    return GuessingReport(
        add_loops(g_loopless), q, "h-loops-formula", total, None, "ids-sum"
    )


def loopfull_witness(g_loopless, q, limit=20):
    """The coding function on the loop-full closure whose fixed points are
    exactly the states with in-dominating nonzero support."""
    if not g_loopless.is_loopless():
        raise PreconditionError("loopfull_witness expects the loopless core")
    if g_loopless.n > limit:
        raise ResourceBoundError(f"witness capped at n <= {limit}")
    n = g_loopless.n
    sups = []
    tabs = []
    for v in range(n):
        ins = g_loopless.in_neighbors(v)
        sup = tuple(sorted(set(ins) | {v}))
        if not ins:
            sups.append((v,))
            tabs.append(tuple(range(q)))
            continue
        tab = []
        for assign in itertools.product(range(q), repeat=len(sup)):
            env = dict(zip(sup, assign))
            bump = 1 if all(env[u] == 0 for u in sup) else 0
            tab.append((env[v] + bump) % q)
        sups.append(sup)
        tabs.append(tuple(tab))
    return CodingFunction(n, q, tuple(sups), tuple(tabs))


# ---------------------------------------------------------------------------
# solvability
# ---------------------------------------------------------------------------

def is_solvable(g, q, state_cap=STATE_CAP):
    """g(G, q) reaches the feedback bound q**k(G)."""
    report = guessing_number(g, q, state_cap)
    return report.max_fix == q ** (g.n - acyclic_number(g, limit=max(16, g.n)))


def is_routing_solvable(g, cycle_limit=None):
    """c(G) == k(G)."""
    from .params import CYCLE_LIMIT

    limit = cycle_limit if cycle_limit is not None else max(CYCLE_LIMIT, g.n)
    c, _ = max_disjoint_cycles(g, limit)
    return c == g.n - acyclic_number(g, limit=max(16, g.n))


def routing_witness(g, q, cycle_limit=None):
    """Routing function along a maximum disjoint cycle family.

    Cycle vertices copy their predecessor, everything else is constant 0;
    the fixed points are the states constant on each cycle and 0 elsewhere.
    """
    from .params import CYCLE_LIMIT

    limit = cycle_limit if cycle_limit is not None else max(CYCLE_LIMIT, g.n)
    _, cycles = max_disjoint_cycles(g, limit)
    pred = {}
    for cyc in cycles:
        for i, v in enumerate(cyc):
            pred[v] = cyc[i - 1]
    sups = []
    tabs = []
    for v in range(g.n):
        if v in pred:
            sups.append((pred[v],))
            tabs.append(tuple(range(q)))
        else:
            sups.append(())
            tabs.append((0,))
    return CodingFunction(g.n, q, tuple(sups), tuple(tabs))
