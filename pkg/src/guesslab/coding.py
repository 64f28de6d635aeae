"""Coding functions f: [q]^n -> [q]^n as explicit per-vertex tables.

Each vertex v owns a sorted support tuple and a value table of length
q**len(support).  Rows are indexed big-endian in support order, i.e. the
row for assignment (a_0, ..., a_{d-1}) to (s_0, ..., s_{d-1}) is
sum a_k * q**(d-1-k), matching itertools.product enumeration.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .digraph import Digraph, topological_order
from .errors import NotAcyclicError, ResourceBoundError, VertexRangeError

DEFAULT_STATE_LIMIT = 1 << 24


def state_limit(explicit=None):
    if explicit is not None:
        return explicit
    env = os.environ.get("GUESSLAB_MAX_STATES")
    return int(env) if env else DEFAULT_STATE_LIMIT


def _row_index(q, support, x):
    r = 0
    for s in support:
        r = r * q + x[s]
    return r


@dataclass(frozen=True)
class CodingFunction:
    n: int
    q: int
    supports: tuple
    tables: tuple

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        if len(self.supports) != self.n or len(self.tables) != self.n:
            raise ValueError("need one support and one table per vertex")
        sups = tuple(tuple(int(u) for u in s) for s in self.supports)
        tabs = tuple(tuple(int(t) for t in tab) for tab in self.tables)
        object.__setattr__(self, "supports", sups)
        object.__setattr__(self, "tables", tabs)
        for v in range(self.n):
            s = sups[v]
            if list(s) != sorted(set(s)):
                raise ValueError(f"support of vertex {v} must be sorted and distinct")
            for u in s:
                if not (0 <= u < self.n):
                    raise VertexRangeError(f"support entry {u} out of range")
            if len(tabs[v]) != self.q ** len(s):
                raise ValueError(f"table of vertex {v} has wrong length")
            for val in tabs[v]:
                if not (0 <= val < self.q):
                    raise ValueError(f"table value {val} outside alphabet")

    @classmethod
    def from_state_functions(cls, n, q, fns, limit=None):
        """Build from callables over full states; supports become essential."""
        if q**n > state_limit(limit):
            raise ResourceBoundError("state space too large to tabulate")
        full = tuple(range(n))
        tables = []
        for v in range(n):
            tab = [int(fns[v](x)) % q for x in itertools.product(range(q), repeat=n)]
            tables.append(tuple(tab))
        raw = cls(n, q, tuple(full for _ in range(n)), tuple(tables))
        return raw.canonicalize()

    # -- evaluation ---------------------------------------------------------

    def local_value(self, v, x):
        return self.tables[v][_row_index(self.q, self.supports[v], x)]

    def evaluate(self, x):
        return tuple(self.local_value(v, x) for v in range(self.n))

    # -- essential supports -------------------------------------------------

    def _essential_positions(self, v):
        sup = self.supports[v]
        tab = self.tables[v]
        d = len(sup)
        q = self.q
        ess = []
        for p in range(d):
            stride = q ** (d - 1 - p)
            block = stride * q
            found = False
            for base in range(0, len(tab), block):
                for off in range(stride):
                    vals = {tab[base + off + a * stride] for a in range(q)}
                    if len(vals) > 1:
                        found = True
                        break
                if found:
                    break
            if found:
                ess.append(p)
        return ess

    def essential_inputs(self, v):
        sup = self.supports[v]
        return tuple(sup[p] for p in self._essential_positions(v))

    def canonicalize(self):
        """Shrink every declared support to the essential one."""
        new_sups = []
        new_tabs = []
        q = self.q
        for v in range(self.n):
            sup = self.supports[v]
            keep = self._essential_positions(v)
            if len(keep) == len(sup):
                new_sups.append(sup)
                new_tabs.append(self.tables[v])
                continue
            new_sup = tuple(sup[p] for p in keep)
            tab = []
            for assign in itertools.product(range(q), repeat=len(new_sup)):
                full = [0] * len(sup)
                for slot, p in enumerate(keep):
                    full[p] = assign[slot]
                r = 0
                for a in full:
                    r = r * q + a
                tab.append(self.tables[v][r])
            new_sups.append(new_sup)
            new_tabs.append(tuple(tab))
        return CodingFunction(self.n, q, tuple(new_sups), tuple(new_tabs))


def interaction_graph(f):
    """Arc (u, v) iff f_v depends essentially on x_u."""
    arcs = set()
    for v in range(f.n):
        for u in f.essential_inputs(v):
            arcs.add((u, v))
    return Digraph.of(f.n, arcs)


def _compact_map(n, removed):
    keep = [v for v in range(n) if v not in removed]
    return {v: i for i, v in enumerate(keep)}


def _build_local(f, inputs, value_fn):
    """Tabulate value_fn over assignments to `inputs` (original labels)."""
    q = f.q
    tab = []
    for assign in itertools.product(range(q), repeat=len(inputs)):
        env = dict(zip(inputs, assign))
        tab.append(value_fn(env) % q)
    return tuple(tab)


def _eval_local(q, inputs, table, env):
    r = 0
    for s in inputs:
        r = r * q + env[s]
    return table[r]


def reduce_vertex(f, v):
    """v-reduction: substitute f_v for x_v everywhere, drop v.

    Returns (reduced function, old-to-new map); if v is looped in G(f) the
    function comes back unchanged with the identity map.
    """
    if not (0 <= v < f.n):
        raise VertexRangeError(f"vertex {v} out of range")
    f = f.canonicalize()
    if v in f.supports[v]:
        return f, {u: u for u in range(f.n)}
    m = _compact_map(f.n, {v})
    fv_sup = f.supports[v]
    fv_tab = f.tables[v]
    new_sups = []
    new_tabs = []
    for i in range(f.n):
        if i == v:
            continue
        si = f.supports[i]
        if v in si:
            raw = sorted((set(si) | set(fv_sup)) - {v})
        else:
            raw = list(si)

        def value(env, si=si, i=i):
            if v in si:
                env = dict(env)
                env[v] = _eval_local(f.q, fv_sup, fv_tab, env)
            return _eval_local(f.q, si, f.tables[i], env)

        tab = _build_local(f, raw, value)
        new_sups.append(tuple(m[u] for u in raw))
        new_tabs.append(tab)
    out = CodingFunction(f.n - 1, f.q, tuple(new_sups), tuple(new_tabs))
    return out.canonicalize(), m


def reduce_sequence(f, seq):
    """Fold reduce_vertex over original labels."""
    cur = f
    total = {v: v for v in range(f.n)}
    for v in seq:
        if v not in total:
            raise VertexRangeError(f"vertex {v} no longer present")
        cur, step = reduce_vertex(cur, total[v])
        total = {orig: step[lab] for orig, lab in total.items() if lab in step}
    return cur, total


@dataclass(frozen=True)
class Local:
    """A single local map keyed by original vertex labels."""

    inputs: tuple
    table: tuple


def cumulative(f, vertices):
    """Cumulative coding function on an acyclic set I of G(f).

    Returns {i: Local} with inputs drawn from V minus I, tightened to the
    essential ones, built by the triangular recursion in topological order.
    """
    f = f.canonicalize()
    sub = frozenset(vertices)
    graph = interaction_graph(f)
    order = topological_order(graph, sub)  # raises NotAcyclicError
    cum = {}
    for i in order:
        si = f.supports[i]
        raw = set()
        for u in si:
            if u in cum:
                raw |= set(cum[u].inputs)
            elif u in sub:
                raise NotAcyclicError("support not topologically sorted")
            else:
                raw.add(u)
        raw = sorted(raw)

        def value(env, si=si, i=i):
            env = dict(env)
            for u in si:
                if u in cum:
                    env[u] = _eval_local(f.q, cum[u].inputs, cum[u].table, env)
            return _eval_local(f.q, si, f.tables[i], env)

        tab = _build_local(f, raw, value)
        cum[i] = _tighten_local(f.q, tuple(raw), tab)
    return cum


def _tighten_local(q, inputs, table):
    d = len(inputs)
    ess = []
    for p in range(d):
        stride = q ** (d - 1 - p)
        block = stride * q
        keep = False
        for base in range(0, len(table), block):
            for off in range(stride):
                if len({table[base + off + a * stride] for a in range(q)}) > 1:
                    keep = True
                    break
            if keep:
                break
        if keep:
            ess.append(p)
    if len(ess) == d:
        return Local(inputs, tuple(table))
    new_inputs = tuple(inputs[p] for p in ess)
    tab = []
    for assign in itertools.product(range(q), repeat=len(new_inputs)):
        full = [0] * d
        for slot, p in enumerate(ess):
            full[p] = assign[slot]
        r = 0
        for a in full:
            r = r * q + a
        tab.append(table[r])
    return Local(new_inputs, tuple(tab))


def reduce_set(f, vertices):
    """I-reduction via the cumulative function; equals any fold order."""
    sub = frozenset(vertices)
    f = f.canonicalize()
    cum = cumulative(f, sub)
    m = _compact_map(f.n, sub)
    new_sups = []
    new_tabs = []
    for i in range(f.n):
        if i in sub:
            continue
        si = f.supports[i]
        raw = set()
        for u in si:
            if u in sub:
                raw |= set(cum[u].inputs)
            else:
                raw.add(u)
        raw = sorted(raw)

        def value(env, si=si, i=i):
            env = dict(env)
            for u in si:
                if u in sub:
                    env[u] = _eval_local(f.q, cum[u].inputs, cum[u].table, env)
            return _eval_local(f.q, si, f.tables[i], env)

        tab = _build_local(f, raw, value)
        new_sups.append(tuple(m[u] for u in raw))
        new_tabs.append(tab)
    out = CodingFunction(f.n - len(sub), f.q, tuple(new_sups), tuple(new_tabs))
    return out.canonicalize(), m


def fixed_points(f, limit=None):
    """All states with f(x) = x, lexicographically sorted tuples."""
    cap = state_limit(limit)
    if f.q**f.n > cap:
        raise ResourceBoundError(f"state space {f.q}**{f.n} exceeds cap {cap}")
    if f.n == 0:
        return ((),)
    mask = _kernels.fixed_point_mask(f.n, f.q, f.supports, f.tables)
    codes = np.nonzero(mask)[0]
    out = []
    weights = [f.q ** (f.n - 1 - v) for v in range(f.n)]
    for c in codes:
        c = int(c)
        out.append(tuple((c // w) % f.q for w in weights))
    return tuple(out)


def count_fixed_points(f, limit=None):
    cap = state_limit(limit)
    if f.q**f.n > cap:
        raise ResourceBoundError(f"state space {f.q}**{f.n} exceeds cap {cap}")
    if f.n == 0:
        return 1
    mask = _kernels.fixed_point_mask(f.n, f.q, f.supports, f.tables)
    return int(mask.sum())


def min_net(g, q):
    """f_i(x) = min of the in-neighbour values, with min(empty) = q - 1."""
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    sups = []
    tabs = []
    for v in range(g.n):
        sup = g.in_neighbors(v)
        sups.append(sup)
        tab = [
            min(assign) if assign else q - 1
            for assign in itertools.product(range(q), repeat=len(sup))
        ]
        tabs.append(tuple(tab))
    return CodingFunction(g.n, q, tuple(sups), tuple(tabs))


def is_nondecreasing(f):
    """Monotone in every coordinate over every table row."""
    q = f.q
    for v in range(f.n):
        tab = f.tables[v]
        d = len(f.supports[v])
        for p in range(d):
            stride = q ** (d - 1 - p)
            block = stride * q
            for base in range(0, len(tab), block):
                for off in range(stride):
                    prev = tab[base + off]
                    for a in range(1, q):
                        cur = tab[base + off + a * stride]
                        if cur < prev:
                            return False
                        prev = cur
    return True


def mindim(f, limit=12):
    """Minimum dimension over all reduced forms of f."""
    if f.n > limit:
        raise ResourceBoundError(f"mindim search capped at n <= {limit}")
    fix = count_fixed_points(f)
    floor = 0
    while f.q**floor < fix:
        floor += 1
    start = f.canonicalize()
    best = start.n
    seen = set()

    def visit(h):
        nonlocal best
        if best == floor:
            return
        key = (h.n, h.supports, h.tables)
        if key in seen:
            return
        seen.add(key)
        loop_free = [v for v in range(h.n) if v not in h.supports[v]]
        if not loop_free:
            best = min(best, h.n)
            return
        for v in loop_free:
            visit(reduce_vertex(h, v)[0])

    visit(start)
    return best
