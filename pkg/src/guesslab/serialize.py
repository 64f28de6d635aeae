"""Serialization: a small DOT subset and JSON, with canonical emission.

Canonical output is byte-stable: vertices ascending, arcs lexicographic,
fixed key order for JSON.  parse(emit(x)) == x for every value.
"""

from __future__ import annotations

import json
import re
import warnings

from .coding import CodingFunction
from .digraph import Digraph
from .errors import ParseError
from .unicast import UnicastInstance


class SerializeWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# DOT subset: digraph [name] { statements }, statements are `v;` or `u -> v;`
# ---------------------------------------------------------------------------

def emit_dot(g):
    lines = ["digraph {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.arcs_sorted():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"->|[{};]|\[[^\]]*\]|[A-Za-z_][A-Za-z_0-9]*|\d+")


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - text.rfind("\n", 0, pos)
    return line, col


def _tokenize_dot(text):
    pos = 0
    tokens = []
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = _position(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        line, col = _position(text, pos)
        tokens.append((m.group(0), line, col))
        pos = m.end()
    return tokens


def parse_dot(text):
    tokens = _tokenize_dot(text)
    if not tokens or tokens[0][0] != "digraph":
        t = tokens[0] if tokens else (None, 1, 1)
        raise ParseError("expected 'digraph'", t[1], t[2])
    i = 1
    if i < len(tokens) and tokens[i][0] not in "{":
        tok = tokens[i][0]
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            i += 1  # optional graph name
    if i >= len(tokens) or tokens[i][0] != "{":
        t = tokens[min(i, len(tokens) - 1)]
        raise ParseError("expected '{'", t[1], t[2])
    i += 1
    arcs = []
    seen = set()
    max_vertex = -1
    while i < len(tokens) and tokens[i][0] != "}":
        tok, ln, cl = tokens[i]
        if tok.startswith("["):
            warnings.warn("attribute list ignored", SerializeWarning, stacklevel=2)
            i += 1
            continue
        if not tok.isdigit():
            raise ParseError(f"expected a vertex id, got {tok!r}", ln, cl)
        u = int(tok)
        max_vertex = max(max_vertex, u)
        i += 1
        if i < len(tokens) and tokens[i][0] == "->":
            i += 1
            if i >= len(tokens) or not tokens[i][0].isdigit():
                t = tokens[min(i, len(tokens) - 1)]
                raise ParseError("expected a vertex id after '->'", t[1], t[2])
            v = int(tokens[i][0])
            max_vertex = max(max_vertex, v)
            i += 1
            while i < len(tokens) and tokens[i][0].startswith("["):
                warnings.warn("attribute list ignored", SerializeWarning, stacklevel=2)
                i += 1
            if (u, v) in seen:
                warnings.warn(f"duplicate arc ({u}, {v}) dropped", SerializeWarning, stacklevel=2)
            else:
                seen.add((u, v))
                arcs.append((u, v))
        if i < len(tokens) and tokens[i][0] == ";":
            i += 1
        else:
            t = tokens[min(i, len(tokens) - 1)]
            raise ParseError("expected ';'", t[1], t[2])
    if i >= len(tokens) or tokens[i][0] != "}":
        t = tokens[-1]
        raise ParseError("expected '}'", t[1], t[2])
    return Digraph.of(max_vertex + 1, arcs)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def emit_json(obj):
    if isinstance(obj, Digraph):
        payload = {"n": obj.n, "arcs": [list(a) for a in obj.arcs_sorted()]}
    elif isinstance(obj, CodingFunction):
        payload = {
            "n": obj.n,
            "q": obj.q,
            "support": [list(s) for s in obj.supports],
            "tables": [list(t) for t in obj.tables],
        }
    elif isinstance(obj, UnicastInstance):
        payload = {
            "pairs": [list(p) for p in obj.pairs],
            "intermediates": sorted(obj.intermediates),
            "arcs": sorted(list(a) for a in obj.arcs),
            "q": obj.q,
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(payload)


def _from_json_payload(data):
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        if "pairs" in data:
            return UnicastInstance(
                pairs=tuple(tuple(p) for p in data["pairs"]),
                intermediates=tuple(data.get("intermediates", ())),
                arcs=frozenset(tuple(a) for a in data.get("arcs", ())),
                q=int(data.get("q", 2)),
            )
        if "support" in data or "tables" in data:
            return CodingFunction(
                n=int(data["n"]),
                q=int(data["q"]),
                supports=tuple(tuple(s) for s in data["support"]),
                tables=tuple(tuple(t) for t in data["tables"]),
            )
        if "n" in data:
            arcs = [tuple(a) for a in data.get("arcs", ())]
            dedup = set()
            clean = []
            for a in arcs:
                if a in dedup:
                    warnings.warn(f"duplicate arc {a} dropped", SerializeWarning, stacklevel=3)
                else:
                    dedup.add(a)
                    clean.append(a)
            return Digraph.of(int(data["n"]), clean)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed JSON payload: {exc}") from exc
    raise ParseError("JSON object matches no known schema")


def parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return _from_json_payload(data)


def parse(text):
    """Sniff DOT vs JSON and return a Digraph, CodingFunction or instance."""
    head = text.lstrip()
    if head.startswith("digraph"):
        return parse_dot(text)
    if head.startswith("{"):
        return parse_json(text)
    raise ParseError("input is neither DOT ('digraph ...') nor JSON ('{...}')", 1, 1)


def emit(obj, fmt="dot"):
    if fmt == "dot":
        if not isinstance(obj, Digraph):
            raise TypeError("only digraphs have a DOT form")
        return emit_dot(obj)
    if fmt == "json":
        return emit_json(obj)
    raise ValueError(f"unknown format {fmt!r}")
