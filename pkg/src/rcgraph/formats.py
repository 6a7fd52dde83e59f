"""Edge-list parsing and DOT/JSON emission.

The edge-list document is a header line ``n m`` followed by exactly m lines
``u v`` with 0-based vertex ids; colored documents carry a third 1-based
color token on every line (a partially colored document is an error).
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InputError
from .graph import Graph, make_graph
from .verify import EdgeColoring

SCHEMA_VERSION = 1

DOT_PALETTE = ("red", "blue", "green", "orange", "purple",
               "brown", "cyan", "magenta", "gold", "gray")


def parse_edge_list(text: str) -> tuple[Graph, EdgeColoring | None]:
    """Parse a document; returns the graph and the coloring when present."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("line 1: empty document")
    head = lines[0].split()
    if len(head) != 2:
        raise InputError("line 1: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise InputError("line 1: header must hold two integers") from exc
    if len(lines) - 1 != m:
        raise InputError(
            f"line {len(lines)}: header promises {m} edges, document has {len(lines) - 1}"
        )
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    colored: bool | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if len(parts) not in (2, 3):
            raise InputError(f"line {lineno}: expected 'u v' or 'u v c'")
        this_colored = len(parts) == 3
        if colored is None:
            colored = this_colored
        elif colored != this_colored:
            raise InputError(f"line {lineno}: document mixes colored and uncolored lines")
        try:
            u, v = int(parts[0]), int(parts[1])
            if this_colored:
                c = int(parts[2])
        except ValueError as exc:
            raise InputError(f"line {lineno}: tokens must be integers") from exc
        edges.append((u, v))
        if this_colored:
            if c < 1:
                raise InputError(f"line {lineno}: colors are 1-based, got {c}")
            colors.append(c)
    try:
        g = make_graph(n, edges)
    except InputError as exc:
        raise InputError(f"edge section: {exc}") from exc
    if not colored:
        return g, None
    assignment = {e: c for e, c in zip(edges, colors)}
    return g, EdgeColoring.from_map(g, assignment)


def emit_edge_list(g: Graph, coloring: EdgeColoring | None = None) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edges:
        if coloring is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {coloring.color_of(u, v)}")
    return "\n".join(lines) + "\n"


def emit_dot(g: Graph, coloring: EdgeColoring | None = None) -> str:
    """DOT text with one attribute color per color id (fixed palette, cycled)."""
    if coloring is not None and coloring.graph != g:
        raise InputError("coloring is not bound to this graph")
    out = ["graph G {"]
    for v in range(g.n):
        out.append(f"  {v};")
    for u, v in g.edges:
        if coloring is None:
            out.append(f"  {u} -- {v};")
        else:
            c = coloring.color_of(u, v)
            name = DOT_PALETTE[(c - 1) % len(DOT_PALETTE)]
            out.append(f'  {u} -- {v} [color="{name}", label="{c}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def build_report(command: str, graph: Graph | None, result: Any,
                 trace: list | None = None, timing: float | None = None,
                 seed: int | None = None) -> dict:
    """The versioned JSON report document shared by all subcommands."""
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": None if graph is None else {"n": graph.n, "m": graph.m},
        "result": result,
        "trace": trace or [],
        "timing_s": None if timing is None else round(timing, 6),
        "seed": seed,
    }
    return doc


def emit_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
