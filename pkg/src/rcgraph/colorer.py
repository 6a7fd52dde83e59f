"""Constructive colorings for dense graphs: 2, 3, or 4 colors by induction.

Each routine reproduces an inductive argument as an executable procedure:
pick a minimum-degree vertex w, match every non-neighbor of w to a common
neighbor, delete all but a few matched edges, recurse on the smaller graph,
then extend the recursive coloring across the deleted edges and the star at
w.  The three-color and four-color routines add the case analysis those
arguments need (pendant vertices, vertex-pair removal, and the repairs for
the ways the reduced graph can disconnect).

Nothing here is trusted: every result is re-verified by the independent
checker before it is returned, and a failed verification raises
:class:`ProofGap` carrying the branch tag, the first unconnected pair and
the reduction trace.  Graphs up to ``BASE_CAP`` vertices are solved by the
exact oracle instead of the case analysis, which also absorbs the base cases
of the inductions.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from math import comb

from .errors import CapReachedError, PreconditionNotMet, ProofGap, StructuralError
from .exact import rc_exact
from .graph import (Edge, Graph, _bits, _norm_edge, complement_neighborhood,
                    components, delete_edges, delete_vertex, induced,
                    is_complete, is_connected, k_step_neighborhood,
                    min_degree_vertex)
from .verify import EdgeColoring, first_failing_pair, is_rainbow_connected

BASE_CAP = 6


class CaseTag(str, Enum):
    BASE = "Base"
    PENDANT_DELTA1 = "PendantDelta1"
    TWO_COLOR_INDUCTION = "TwoColorInduction"
    THREE_COLOR_INDUCTION = "ThreeColorInduction"
    THREE_COLOR_DISCONNECTED_REPAIR = "ThreeColorDisconnectedRepair"
    FOUR_CASE1 = "FourCase1"
    FOUR_CASE2 = "FourCase2"
    FOUR_CASE3_P1 = "FourCase3-p1"
    FOUR_CASE3_P2 = "FourCase3-p2"
    FOUR_CASE3_PBIG = "FourCase3-pBig"
    FALLBACK_EXACT = "FallbackExact"


@dataclass(frozen=True)
class ReductionStep:
    """One level of the induction, recorded for audit.

    ``w`` is the pivot vertex (the deleted minimum-degree vertex, or the
    pendant, or None for pair-removal steps), ``t`` the slack in
    ``deg(w) = n - 2 - t``, ``complement_list`` the non-neighbors of w,
    ``matched`` the (common-neighbor, non-neighbor) pairs, and ``deleted``
    the matched edges removed before recursing.  ``relabel`` maps the ids of
    this level's graph to the ids of the reduced graph the recursion ran on,
    so colorings can be pulled back level by level.
    """

    case: CaseTag
    w: int | None = None
    t: int | None = None
    complement_list: tuple[int, ...] = ()
    matched: tuple[tuple[int, int], ...] = ()
    deleted: tuple[Edge, ...] = ()
    relabel: dict[int, int] | None = field(default=None, compare=False)
    note: str = ""

    def validate(self, g: Graph) -> None:
        if self.w is None or self.t is None:
            return
        if g.degree(self.w) != g.n - 2 - self.t:
            raise StructuralError(
                f"step records t={self.t} but deg({self.w})={g.degree(self.w)}"
            )
        nbrs_w = g.adj[self.w]
        for u, v in self.matched:
            if not (nbrs_w >> u & 1):
                raise StructuralError(f"matched vertex {u} is not adjacent to pivot")
            if not g.has_edge(u, v):
                raise StructuralError(f"matched pair ({u}, {v}) is not an edge")
            if g.has_edge(self.w, v) or v == self.w:
                raise StructuralError(f"{v} is not in the pivot's complement neighborhood")


@dataclass(frozen=True)
class ColoringResult:
    """A verified coloring together with the reduction trace that produced it."""

    coloring: EdgeColoring
    colors_used: int
    trace: tuple[ReductionStep, ...]
    verified: bool

    def to_dict(self) -> dict:
        return {
            "colors_used": self.colors_used,
            "k": self.coloring.k,
            "verified": self.verified,
            "coloring": [[u, v, c] for (u, v), c in self.coloring.as_map().items()],
            "trace": [
                {
                    "case": s.case.value,
                    "w": s.w,
                    "t": s.t,
                    "deleted": [list(e) for e in s.deleted],
                    "note": s.note,
                }
                for s in self.trace
            ],
        }


def reduce_min_degree(g: Graph, keep: int) -> ReductionStep:
    """Deterministic reduction data for the minimum-degree pivot.

    The pivot is the smallest-id vertex of minimum degree; its non-neighbors
    are listed ascending and each is matched to its smallest-id common
    neighbor with the pivot.  All matched edges except the last ``keep`` are
    marked for deletion.  Raises :class:`StructuralError` when some
    non-neighbor shares no neighbor with the pivot, which signals an
    out-of-regime caller.
    """
    w, deg = min_degree_vertex(g)
    t = g.n - 2 - deg
    comp = sorted(complement_neighborhood(g, w))
    matched: list[tuple[int, int]] = []
    for v in comp:
        common = g.adj[v] & g.adj[w]
        if not common:
            raise StructuralError(
                f"non-neighbor {v} of pivot {w} has no common neighbor with it"
            )
        matched.append(((common & -common).bit_length() - 1, v))
    cut = max(0, len(matched) - keep) if keep >= 0 else len(matched)
    deleted = tuple(_norm_edge(u, v) for u, v in matched[:cut])
    return ReductionStep(
        case=CaseTag.TWO_COLOR_INDUCTION, w=w, t=t,
        complement_list=tuple(comp), matched=tuple(matched), deleted=deleted,
    )


def fallback_exact(g: Graph, k: int, base_cap: int = BASE_CAP,
                   tag: CaseTag = CaseTag.BASE, note: str = "") -> ColoringResult:
    """Solve a small instance by the exact oracle, capped at ``k`` colors."""
    if g.n > base_cap:
        raise PreconditionNotMet(
            f"exact fallback is limited to {base_cap} vertices, got {g.n}"
        )
    try:
        cert = rc_exact(g, k_max=k)
    except CapReachedError as exc:
        raise ProofGap(
            f"exact search found no {k}-coloring for an in-regime graph",
            tag=tag.value,
        ) from exc
    coloring = cert.witness.rebind(k)
    step = ReductionStep(
        case=tag, note=note or f"exact search, value={cert.value}",
    )
    return _finish(g, coloring, (step,), tag)


# ---------------------------------------------------------------------------
# shared machinery


def _finish(g: Graph, coloring: EdgeColoring, trace, tag: CaseTag) -> ColoringResult:
    """Re-verify a constructed coloring; gaps become first-class errors."""
    if not is_rainbow_connected(g, coloring):
        raise ProofGap(
            "constructed coloring failed verification",
            tag=tag.value,
            failing_pair=first_failing_pair(g, coloring),
            trace=trace,
        )
    return ColoringResult(coloring, len(set(coloring.colors)), tuple(trace), True)


def _assemble(g: Graph, colors: dict[Edge, int], k: int) -> EdgeColoring:
    missing = [e for e in g.edges if e not in colors]
    if missing:
        raise AssertionError(f"internal: edges left uncolored: {missing[:3]}")
    return EdgeColoring.from_map(g, colors, k)


def _invert(relabel: dict[int, int]) -> dict[int, int]:
    return {new: old for old, new in relabel.items()}


def _pull_back(sub: EdgeColoring, relabel: dict[int, int]) -> dict[Edge, int]:
    """Express a child coloring on the parent's vertex ids."""
    inv = _invert(relabel)
    return {
        _norm_edge(inv[a], inv[b]): c for (a, b), c in sub.as_map().items()
    }


def _delete_two(g: Graph, a: int, b: int) -> tuple[Graph, dict[int, int]]:
    hi, lo = (a, b) if a > b else (b, a)
    g1, m1 = delete_vertex(g, hi)
    g2, m2 = delete_vertex(g1, m1[lo])
    return g2, {old: m2[m1[old]] for old in m1 if m1[old] != m1[lo]}


def _perm_sending(values: list[int], targets: list[int], palette: int) -> dict[int, int]:
    """A palette permutation sending each value to the matching target slot.

    ``values`` may repeat; repeated values must map consistently.  Remaining
    colors fill the remaining slots in ascending order.
    """
    perm: dict[int, int] = {}
    used_targets: set[int] = set()
    for val, tgt in zip(values, targets):
        if val in perm:
            continue
        if tgt in used_targets:
            tgt = min(x for x in range(1, palette + 1) if x not in used_targets)
        perm[val] = tgt
        used_targets.add(tgt)
    rest_vals = [c for c in range(1, palette + 1) if c not in perm]
    rest_tgts = [c for c in range(1, palette + 1) if c not in used_targets]
    perm.update(zip(rest_vals, rest_tgts))
    return perm


def _apply_perm(colors: dict[Edge, int], perm: dict[int, int]) -> dict[Edge, int]:
    return {e: perm.get(c, c) for e, c in colors.items()}


def _star_edges(g: Graph, v: int) -> list[Edge]:
    return [_norm_edge(v, u) for u in _bits(g.adj[v])]


def _constant_result(g: Graph, k: int) -> ColoringResult:
    coloring = EdgeColoring(g, (1,) * g.m, k)
    step = ReductionStep(case=CaseTag.BASE, note="complete graph, one color")
    return _finish(g, coloring, (step,), CaseTag.BASE)


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionNotMet("graph must be connected")


def _recurse(fn, g: Graph, cap: int, context: str):
    """Run a sub-coloring whose precondition the calling argument guarantees."""
    try:
        return fn(g, base_cap=cap)
    except PreconditionNotMet as exc:
        raise ProofGap(
            f"recursion precondition failed in {context}: {exc}", tag=context
        ) from exc


# ---------------------------------------------------------------------------
# two colors


def color_rc2(g: Graph, base_cap: int = BASE_CAP) -> ColoringResult:
    """A verified coloring with at most two colors for graphs with more than
    ``C(n-1, 2)`` edges (one color when complete).

    Induction: remove a minimum-degree vertex w, delete all matched edges but
    the last, two-color the rest, then give the deleted edges the retained
    edge's color and the star at w the other color.
    """
    _require_connected(g)
    if g.n < 3:
        raise PreconditionNotMet(f"need at least 3 vertices, got {g.n}")
    if g.m < comb(g.n - 1, 2) + 1:
        raise PreconditionNotMet(
            f"need at least {comb(g.n - 1, 2) + 1} edges at n={g.n}, got {g.m}"
        )
    try:
        return _rc2(g, base_cap)
    except ProofGap:
        if g.n <= base_cap:
            return fallback_exact(g, 2, base_cap, tag=CaseTag.FALLBACK_EXACT,
                                  note="recovered after proof gap")
        raise


def _rc2(g: Graph, cap: int) -> ColoringResult:
    if is_complete(g):
        return _constant_result(g, 2)
    if g.n <= cap:
        return fallback_exact(g, 2, cap)
    step = dataclasses.replace(reduce_min_degree(g, keep=1),
                               case=CaseTag.TWO_COLOR_INDUCTION)
    w = step.w
    h, phi = delete_vertex(g, w)
    hp = delete_edges(h, [(phi[u], phi[v]) for u, v in step.deleted])
    step = dataclasses.replace(step, relabel=phi)
    sub = _recurse(color_rc2, hp, cap, "two-color induction")
    colors = _pull_back(sub.coloring, phi)
    ur, vr = step.matched[-1]
    anchor = colors[_norm_edge(ur, vr)]
    other = 1 if anchor == 2 else 2
    for e in step.deleted:
        colors[e] = anchor
    for e in _star_edges(g, w):
        colors[e] = other
    coloring = _assemble(g, colors, 2)
    return _finish(g, coloring, (step,) + sub.trace, CaseTag.TWO_COLOR_INDUCTION)


# ---------------------------------------------------------------------------
# three colors


def color_rc3(g: Graph, base_cap: int = BASE_CAP) -> ColoringResult:
    """A verified coloring with at most three colors for graphs with at least
    ``C(n-2, 2) + 2`` edges."""
    _require_connected(g)
    if g.n < 4:
        raise PreconditionNotMet(f"need at least 4 vertices, got {g.n}")
    if g.m < comb(g.n - 2, 2) + 2:
        raise PreconditionNotMet(
            f"need at least {comb(g.n - 2, 2) + 2} edges at n={g.n}, got {g.m}"
        )
    try:
        return _rc3(g, base_cap)
    except ProofGap:
        if g.n <= base_cap:
            return fallback_exact(g, 3, base_cap, tag=CaseTag.FALLBACK_EXACT,
                                  note="recovered after proof gap")
        raise


def _rc3(g: Graph, cap: int) -> ColoringResult:
    n = g.n
    if is_complete(g):
        return _constant_result(g, 3)
    if n <= cap:
        return fallback_exact(g, 3, cap)
    if g.m >= comb(n - 1, 2) + 1:
        sub = _rc2(g, cap)
        return ColoringResult(sub.coloring.rebind(3), sub.colors_used,
                              sub.trace, sub.verified)
    w, deg = min_degree_vertex(g)
    if deg == 1:
        return _rc3_pendant(g, w, cap)
    pair = _disjoint_pair(g)
    if pair is not None:
        return _rc3_disjoint_pair(g, pair, cap)
    return _rc3_reduction(g, cap)


def _rc3_pendant(g: Graph, w: int, cap: int) -> ColoringResult:
    h, phi = delete_vertex(g, w)
    step = ReductionStep(case=CaseTag.PENDANT_DELTA1, w=w, t=None,
                         relabel=phi, note="pendant vertex, new color on its edge")
    sub = _recurse(color_rc2, h, cap, "pendant reduction")
    colors = _pull_back(sub.coloring, phi)
    for e in _star_edges(g, w):
        colors[e] = 3
    return _finish(g, _assemble(g, colors, 3), (step,) + sub.trace,
                   CaseTag.PENDANT_DELTA1)


def _disjoint_pair(g: Graph) -> tuple[int, int] | None:
    """Lexicographically first non-adjacent pair with disjoint neighborhoods."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                continue
            if not (g.adj[u] & g.adj[v]):
                return (u, v)
    return None


def _rc3_disjoint_pair(g: Graph, pair: tuple[int, int], cap: int) -> ColoringResult:
    w1, w2 = pair
    h, relabel = _delete_two(g, w1, w2)
    step = ReductionStep(
        case=CaseTag.THREE_COLOR_INDUCTION, w=None, relabel=relabel,
        note=f"removed non-adjacent pair {pair} with disjoint neighborhoods",
    )
    if not is_connected(h):
        raise ProofGap("pair removal disconnected the graph", tag="disjoint-pair",
                       trace=(step,))
    sub = _recurse(color_rc2, h, cap, "disjoint-pair reduction")
    colors = _pull_back(sub.coloring, relabel)
    connector = _path_connector(g, w1, w2)
    if connector is None:
        raise ProofGap("no length-3 connector between the removed pair",
                       tag="disjoint-pair", trace=(step,))
    u1, u2 = connector
    perm = _perm_sending([colors[_norm_edge(u1, u2)]], [1], 2)
    colors = _apply_perm(colors, perm)
    for v in (w1, w2):
        for e in _star_edges(g, v):
            colors[e] = 3
    colors[_norm_edge(w1, u1)] = 2
    colors[_norm_edge(w2, u2)] = 3
    return _finish(g, _assemble(g, colors, 3), (step,) + sub.trace,
                   CaseTag.THREE_COLOR_INDUCTION)


def _path_connector(g: Graph, w1: int, w2: int) -> tuple[int, int] | None:
    """Smallest (u1, u2) with w1-u1-u2-w2 a path avoiding w1, w2."""
    banned = (1 << w1) | (1 << w2)
    for u1 in _bits(g.adj[w1] & ~banned):
        inner = g.adj[u1] & g.adj[w2] & ~banned & ~(1 << u1)
        for u2 in _bits(inner):
            return (u1, u2)
    return None


def _rc3_reduction(g: Graph, cap: int) -> ColoringResult:
    n = g.n
    step = dataclasses.replace(reduce_min_degree(g, keep=2),
                               case=CaseTag.THREE_COLOR_INDUCTION)
    if not 1 <= step.t <= n - 4:
        raise ProofGap(f"slack t={step.t} outside the three-color regime",
                       tag="three-color-reduction", trace=(step,))
    w = step.w
    h, phi = delete_vertex(g, w)
    hp = delete_edges(h, [(phi[u], phi[v]) for u, v in step.deleted])
    step = dataclasses.replace(step, relabel=phi)
    if is_connected(hp):
        sub = _recurse(color_rc3, hp, cap, "three-color induction")
        colors = _pull_back(sub.coloring, phi)
        retained = [colors[_norm_edge(u, v)] for u, v in step.matched[-2:]]
        colors = _apply_perm(colors, _perm_sending(retained, [1, 2], 3))
        for e in step.deleted:
            colors[e] = 1
        for e in _star_edges(g, w):
            colors[e] = 3
        return _finish(g, _assemble(g, colors, 3), (step,) + sub.trace,
                       CaseTag.THREE_COLOR_INDUCTION)
    return _rc3_disconnected(g, step, hp, phi, cap)


def _rc3_disconnected(g: Graph, step: ReductionStep, hp: Graph,
                      phi: dict[int, int], cap: int) -> ColoringResult:
    """Repair for the reduction isolating one vertex of the pivot's star."""
    comps = components(hp)
    sizes = sorted(len(c) for c in comps)
    if len(comps) != 2 or sizes[0] != 1:
        raise ProofGap(
            f"reduced graph split into sizes {sizes}, expected one singleton",
            tag="claim-3-violated", trace=(step,),
        )
    inv = _invert(phi)
    iso = next(c for c in comps if len(c) == 1)
    v_orig = inv[next(iter(iso))]
    w = step.w
    if not g.has_edge(w, v_orig):
        raise ProofGap("isolated vertex is not adjacent to the pivot",
                       tag="claim-3-violated", trace=(step,))
    big = next(c for c in comps if len(c) > 1)
    h2, psi = induced(hp, big)
    step = dataclasses.replace(
        step, case=CaseTag.THREE_COLOR_DISCONNECTED_REPAIR,
        note=f"reduction isolated {v_orig}; routing through it",
    )
    sub = _recurse(color_rc2, h2, cap, "disconnected repair")
    inv2 = _invert(psi)
    colors: dict[Edge, int] = {}
    for (a, b), c in sub.coloring.as_map().items():
        colors[_norm_edge(inv[inv2[a]], inv[inv2[b]])] = c
    partners = [v for u, v in step.matched if u == v_orig]
    for u, v in step.deleted:
        colors[_norm_edge(u, v)] = 3 if v_orig in (u, v) else 2
    for z in partners:
        colors[_norm_edge(v_orig, z)] = 3
    for e in _star_edges(g, w):
        colors[e] = 3
    colors[_norm_edge(w, v_orig)] = 1
    return _finish(g, _assemble(g, colors, 3), (step,) + sub.trace,
                   CaseTag.THREE_COLOR_DISCONNECTED_REPAIR)


# ---------------------------------------------------------------------------
# four colors


def color_rc4(g: Graph, base_cap: int = BASE_CAP) -> ColoringResult:
    """A verified coloring with at most four colors for graphs with at least
    ``C(n-3, 2) + 3`` edges."""
    _require_connected(g)
    if g.n < 5:
        raise PreconditionNotMet(f"need at least 5 vertices, got {g.n}")
    if g.m < comb(g.n - 3, 2) + 3:
        raise PreconditionNotMet(
            f"need at least {comb(g.n - 3, 2) + 3} edges at n={g.n}, got {g.m}"
        )
    try:
        return _rc4(g, base_cap)
    except ProofGap:
        if g.n <= base_cap:
            return fallback_exact(g, 4, base_cap, tag=CaseTag.FALLBACK_EXACT,
                                  note="recovered after proof gap")
        raise


def _rc4(g: Graph, cap: int) -> ColoringResult:
    n = g.n
    if is_complete(g):
        return _constant_result(g, 4)
    if n <= cap:
        return fallback_exact(g, 4, cap)
    if g.m >= comb(n - 2, 2) + 2:
        sub = _rc3(g, cap)
        return ColoringResult(sub.coloring.rebind(4), sub.colors_used,
                              sub.trace, sub.verified)
    w, deg = min_degree_vertex(g)
    if deg == 1:
        return _rc4_pendant(g, w, cap)
    pair = _case1_pair(g)
    if pair is not None:
        return _rc4_case1(g, pair, cap)
    if _all_pairs_share_neighbor(g):
        return _rc4_case2(g, cap)
    if _all_pairs_degree_sum(g, n - 2):
        return _rc4_case3(g, cap)
    # The three dispositions are not exhaustive: a non-adjacent pair with
    # disjoint neighborhoods and degree sum below n-2 fits none of them.
    # Such a pair always exists here, and removing it frees enough edges
    # for the same pair-removal machinery.
    pair = _low_degree_pair(g)
    if pair is None:
        raise ProofGap("no branch of the case analysis applies",
                       tag="case-analysis-incomplete")
    return _rc4_case1(g, pair, cap, outside_trichotomy=True)


def _rc4_pendant(g: Graph, w: int, cap: int) -> ColoringResult:
    h, phi = delete_vertex(g, w)
    step = ReductionStep(case=CaseTag.PENDANT_DELTA1, w=w, relabel=phi,
                         note="pendant vertex, new color on its edge")
    sub = _recurse(color_rc3, h, cap, "pendant reduction")
    colors = _pull_back(sub.coloring, phi)
    for e in _star_edges(g, w):
        colors[e] = 4
    return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                   CaseTag.PENDANT_DELTA1)


def _case1_pair(g: Graph) -> tuple[int, int] | None:
    bound = g.n - 3
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                continue
            if (g.adj[u] & g.adj[v]) and g.degree(u) + g.degree(v) <= bound:
                return (u, v)
    return None


def _all_pairs_share_neighbor(g: Graph) -> bool:
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                continue
            if not (g.adj[u] & g.adj[v]):
                return False
    return True


def _all_pairs_degree_sum(g: Graph, bound: int) -> bool:
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                continue
            if g.degree(u) + g.degree(v) < bound:
                return False
    return True


def _low_degree_pair(g: Graph) -> tuple[int, int] | None:
    """First non-adjacent pair with degree sum at most n - 3 (any neighborhoods)."""
    bound = g.n - 3
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] >> v & 1:
                continue
            if g.degree(u) + g.degree(v) <= bound:
                return (u, v)
    return None


def _rc4_case1(g: Graph, pair: tuple[int, int], cap: int,
               outside_trichotomy: bool = False) -> ColoringResult:
    """Pair removal: 3-color G minus the pair, then re-attach both vertices.

    The recipes are tried in order and each result is verified before it is
    accepted: the length-2 connector extension (rainbow connector first, then
    the recolored monochrome connector), the common-neighbor star, the
    shortest-path middle-edge star, and finally every connector under every
    recoloring pattern.  The first verified coloring wins; the trace records
    which recipe it was.
    """
    w1, w2 = pair
    h, relabel = _delete_two(g, w1, w2)
    why = "outside the stated trichotomy" if outside_trichotomy else "sharing a neighbor"
    step = ReductionStep(
        case=CaseTag.FOUR_CASE1, relabel=relabel,
        note=f"removed low-degree non-adjacent pair {pair} {why}",
    )
    if not is_connected(h):
        return _rc4_case1_disconnected(g, pair, h, relabel, step, cap)
    sub = _recurse(color_rc3, h, cap, "case-1 reduction")
    base = _pull_back(sub.coloring, relabel)
    last_failure = None
    for attempt, (recipe, colors) in enumerate(_pair_recipes(g, base, w1, w2)):
        coloring = _assemble(g, colors, 4)
        if is_rainbow_connected(g, coloring):
            note = step.note + "; " + recipe
            if attempt:
                note += f" (after {attempt} failed recipes)"
            noted = dataclasses.replace(step, note=note)
            return ColoringResult(coloring, len(set(coloring.colors)),
                                  (noted,) + sub.trace, True)
        last_failure = coloring
    raise ProofGap(
        "every pair re-attachment recipe failed verification",
        tag=CaseTag.FOUR_CASE1.value,
        failing_pair=first_failing_pair(g, last_failure) if last_failure else None,
        trace=(step,) + sub.trace,
    )


def _connectors(g: Graph, w1: int, w2: int):
    """All x-y-z paths with x adjacent to w1 and z to w2, in lex order."""
    banned = (1 << w1) | (1 << w2)
    for x in _bits(g.adj[w1] & ~banned):
        for y in _bits(g.adj[x] & ~banned & ~(1 << x)):
            for z in _bits(g.adj[y] & g.adj[w2] & ~banned & ~(1 << x) & ~(1 << y)):
                yield (x, y, z)


def _pair_recipes(g: Graph, base: dict[Edge, int], w1: int, w2: int):
    """Candidate extensions of an inner 3-coloring across a removed pair."""
    conns = list(_connectors(g, w1, w2))
    rainbow = next((c for c in conns
                    if base[_norm_edge(c[0], c[1])] != base[_norm_edge(c[1], c[2])]),
                   None)
    if rainbow is not None:
        yield "rainbow connector", _connector_colors(g, base, w1, w2, rainbow)
    if conns:
        yield ("monochrome connector recolored",
               _recolor_colors(g, base, w1, w2, conns[0], recolor_second=True))
    common = g.adj[w1] & g.adj[w2]
    if common:
        s = (common & -common).bit_length() - 1
        yield f"common-neighbor star via {s}", _star_colors(g, base, w1, w2, s)
    mid = _middle_edge(g, w1, w2)
    if mid is not None:
        yield f"middle-edge star via {mid}", _middle_colors(g, base, w1, w2, mid)
    for conn in conns:
        if base[_norm_edge(conn[0], conn[1])] != base[_norm_edge(conn[1], conn[2])]:
            yield f"connector sweep {conn}", _connector_colors(g, base, w1, w2, conn)
        else:
            yield (f"connector sweep {conn} (recolor far)",
                   _recolor_colors(g, base, w1, w2, conn, recolor_second=True))
            yield (f"connector sweep {conn} (recolor near)",
                   _recolor_colors(g, base, w1, w2, conn, recolor_second=False))


def _connector_colors(g, base, w1, w2, conn):
    x, y, z = conn
    colors = _apply_perm(base, _perm_sending(
        [base[_norm_edge(x, y)], base[_norm_edge(y, z)]], [1, 2], 3))
    for v in (w1, w2):
        for e in _star_edges(g, v):
            colors[e] = 4
    colors[_norm_edge(w1, x)] = 3
    colors[_norm_edge(w2, z)] = 4
    return colors


def _recolor_colors(g, base, w1, w2, conn, recolor_second: bool):
    x, y, z = conn
    near, far = _norm_edge(x, y), _norm_edge(y, z)
    keep, fresh = (near, far) if recolor_second else (far, near)
    colors = _apply_perm(base, _perm_sending([base[keep]], [1], 3))
    colors[fresh] = 4
    for v in (w1, w2):
        for e in _star_edges(g, v):
            colors[e] = 4
    colors[_norm_edge(w1, x)] = 2
    colors[_norm_edge(w2, z)] = 3
    return colors


def _star_colors(g, base, w1, w2, s):
    colors = dict(base)
    for v in (w1, w2):
        for e in _star_edges(g, v):
            colors[e] = 4
    colors[_norm_edge(w1, s)] = 3
    return colors


def _middle_edge(g: Graph, w1: int, w2: int):
    """Smallest (x, m) with w1-x-m-w2 a path; the inner edge of a distance-3 link."""
    banned = (1 << w1) | (1 << w2)
    for x in _bits(g.adj[w1] & ~banned):
        inner = g.adj[x] & g.adj[w2] & ~banned & ~(1 << x)
        if inner:
            return (x, (inner & -inner).bit_length() - 1)
    return None


def _middle_colors(g, base, w1, w2, mid):
    x, m = mid
    colors = _apply_perm(base, _perm_sending([base[_norm_edge(x, m)]], [1], 3))
    for v in (w1, w2):
        for e in _star_edges(g, v):
            colors[e] = 4
    colors[_norm_edge(w1, x)] = 3
    return colors


def _rc4_case1_disconnected(g: Graph, pair, h: Graph, relabel, step, cap) -> ColoringResult:
    """Pair removal isolated a degree-2 vertex; route both its edges afresh."""
    w1, w2 = pair
    comps = components(h)
    sizes = sorted(len(c) for c in comps)
    if len(comps) != 2 or sizes[0] != 1:
        raise ProofGap(
            f"pair removal split the graph into sizes {sizes}",
            tag="claim-3-violated", trace=(step,),
        )
    inv = _invert(relabel)
    v_orig = inv[next(iter(next(c for c in comps if len(c) == 1)))]
    if set(_bits(g.adj[v_orig])) != {w1, w2}:
        raise ProofGap("isolated vertex not adjacent to exactly the removed pair",
                       tag="claim-3-violated", trace=(step,))
    big = next(c for c in comps if len(c) > 1)
    h2, psi = induced(h, big)
    step = dataclasses.replace(
        step, note=step.note + f"; removal isolated {v_orig}, star repair",
    )
    sub = _recurse(color_rc2, h2, cap, "case-1 disconnected repair")
    inv2 = _invert(psi)
    colors: dict[Edge, int] = {}
    for (a, b), c in sub.coloring.as_map().items():
        colors[_norm_edge(inv[inv2[a]], inv[inv2[b]])] = c
    for e in _star_edges(g, w1):
        colors[e] = 4
    for e in _star_edges(g, w2):
        colors[e] = 3
    colors[_norm_edge(v_orig, w1)] = 3
    colors[_norm_edge(v_orig, w2)] = 4
    return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                   CaseTag.FOUR_CASE1)


def _rc4_case2(g: Graph, cap: int) -> ColoringResult:
    n = g.n
    step = dataclasses.replace(reduce_min_degree(g, keep=3), case=CaseTag.FOUR_CASE2)
    if not 2 <= step.t <= n - 4:
        raise ProofGap(f"slack t={step.t} outside the four-color regime",
                       tag="four-case-2", trace=(step,))
    w = step.w
    h, phi = delete_vertex(g, w)
    hp = delete_edges(h, [(phi[u], phi[v]) for u, v in step.deleted])
    step = dataclasses.replace(step, relabel=phi)
    if is_connected(hp):
        sub = _recurse(color_rc4, hp, cap, "four-color induction")
        colors = _pull_back(sub.coloring, phi)
        retained = [colors[_norm_edge(u, v)] for u, v in step.matched[-3:]]
        colors = _apply_perm(colors, _perm_sending(retained, [1, 2, 3], 4))
        for e in step.deleted:
            colors[e] = 1
        for e in _star_edges(g, w):
            colors[e] = 4
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE2)
    return _rc4_case2_disconnected(g, step, hp, phi, cap)


def _rc4_case2_disconnected(g: Graph, step: ReductionStep, hp: Graph,
                            phi: dict[int, int], cap: int) -> ColoringResult:
    comps = components(hp)
    inv = _invert(phi)
    w = step.w
    if len(comps) == 3:
        sizes = sorted(len(c) for c in comps)
        if sizes[:2] != [1, 1]:
            raise ProofGap(f"three components of sizes {sizes}, expected two singletons",
                           tag="four-case-2", trace=(step,))
        singles = sorted(inv[next(iter(c))] for c in comps if len(c) == 1)
        s1, s2 = singles
        if not (g.has_edge(w, s1) and g.has_edge(w, s2)):
            raise ProofGap("isolated vertices not adjacent to the pivot",
                           tag="four-case-2", trace=(step,))
        big = next(c for c in comps if len(c) > 1)
        h3, psi = induced(hp, big)
        step = dataclasses.replace(step, note="reduction isolated two star vertices")
        sub = _recurse(color_rc2, h3, cap, "case-2 three-component repair")
        inv2 = _invert(psi)
        colors: dict[Edge, int] = {}
        for (a, b), c in sub.coloring.as_map().items():
            colors[_norm_edge(inv[inv2[a]], inv[inv2[b]])] = c
        for u, v in step.deleted:
            colors[_norm_edge(u, v)] = 1
        for s in (s1, s2):
            for e in _star_edges(g, s):
                colors[e] = 3
        for e in _star_edges(g, w):
            colors[e] = 4
        colors[_norm_edge(w, s1)] = 1
        colors[_norm_edge(w, s2)] = 2
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE2)
    if len(comps) == 2:
        sizes = sorted(len(c) for c in comps)
        if sizes[0] == 1:
            s = inv[next(iter(next(c for c in comps if len(c) == 1)))]
            if not g.has_edge(w, s):
                raise ProofGap("isolated vertex not adjacent to the pivot",
                               tag="four-case-2", trace=(step,))
            big = next(c for c in comps if len(c) > 1)
            h2, psi = induced(hp, big)
            step = dataclasses.replace(step, note=f"reduction isolated star vertex {s}")
            sub = _recurse(color_rc3, h2, cap, "case-2 singleton repair")
            inv2 = _invert(psi)
            colors = {}
            for (a, b), c in sub.coloring.as_map().items():
                colors[_norm_edge(inv[inv2[a]], inv[inv2[b]])] = c
            for u, v in step.deleted:
                colors[_norm_edge(u, v)] = 2
            for e in _star_edges(g, s):
                colors[e] = 4
            for e in _star_edges(g, w):
                colors[e] = 4
            colors[_norm_edge(w, s)] = 1
            return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                           CaseTag.FOUR_CASE2)
        # two components, both with at least two vertices
        by_size = sorted(comps, key=lambda c: (len(c), min(c)))
        small, large = by_size
        h1, psi1 = induced(hp, small)
        h2, psi2 = induced(hp, large)
        step = dataclasses.replace(step, note="reduction split the star into two sides")
        sub1 = _recurse(color_rc2, h1, cap, "case-2 two-component repair")
        sub2 = _recurse(color_rc2, h2, cap, "case-2 two-component repair")
        colors = {}
        for sub, psi in ((sub1, psi1), (sub2, psi2)):
            inv2 = _invert(psi)
            for (a, b), c in sub.coloring.as_map().items():
                colors[_norm_edge(inv[inv2[a]], inv[inv2[b]])] = c
        side1 = {inv[v] for v in small}
        for u, v in step.deleted:
            e = _norm_edge(u, v)
            in1 = (u in side1) + (v in side1)
            if in1 == 2 or in1 == 0:
                colors[e] = 1
            else:
                nw = u if g.has_edge(w, u) else v
                colors[e] = 4 if nw not in side1 else 3
        for x in _bits(g.adj[w]):
            colors[_norm_edge(w, x)] = 4 if x in side1 else 3
        return _finish(g, _assemble(g, colors, 4), (step,) + sub1.trace + sub2.trace,
                       CaseTag.FOUR_CASE2)
    raise ProofGap(f"reduction split the graph into {len(comps)} components",
                   tag="four-case-2", trace=(step,))


def _rc4_case3(g: Graph, cap: int) -> ColoringResult:
    w, deg = min_degree_vertex(g)
    layer1 = k_step_neighborhood(g, [w], 1)
    layer2 = k_step_neighborhood(g, [w], 2)
    layer3 = k_step_neighborhood(g, [w], 3)
    layer4 = k_step_neighborhood(g, [w], 4)
    if layer4:
        raise ProofGap("pivot sees vertices at distance 4 in the diameter-3 case",
                       tag="four-case-3")
    if not layer3:
        return _rc4_case2(g, cap)
    for u in sorted(layer3):
        expected = (layer2 | layer3) - {u}
        if set(_bits(g.adj[u])) != expected:
            raise ProofGap(
                f"distance-3 vertex {u} is not adjacent to the full outer block",
                tag="four-case-3",
            )
    p = len(layer2)
    if p == 1:
        return _rc4_case3_p1(g, w, sorted(layer1), next(iter(layer2)),
                             sorted(layer3), cap)
    if p == 2:
        return _rc4_case3_p2(g, w, sorted(layer1), sorted(layer2),
                             sorted(layer3), cap)
    return _rc4_case3_pbig(g, w, sorted(layer1), sorted(layer2),
                           sorted(layer3), cap)


def _p1_table(g: Graph, w: int, us: list[int], v1: int, outer: list[int]) -> dict[Edge, int]:
    """Block coloring by star indices: thirds of the pivot star get colors
    1..3 (then 4), the cut vertex's edges cycle 1,2,3 (then 3), the outer
    clique takes 4."""
    colors: dict[Edge, int] = {}
    for i, u in enumerate(us, start=1):
        colors[_norm_edge(w, u)] = (i + 2) // 3 if i <= 9 else 4
        if g.has_edge(v1, u):
            colors[_norm_edge(v1, u)] = (i % 3 or 3) if i <= 9 else 3
    for i, a in enumerate(us):
        for b in us[i + 1:]:
            if g.has_edge(a, b):
                colors[_norm_edge(a, b)] = 4
    block = [v1] + outer
    for i, a in enumerate(block):
        for b in block[i + 1:]:
            if g.has_edge(a, b):
                colors[_norm_edge(a, b)] = 4
    return colors


def _p1_repair(g: Graph, w: int, us: list[int], v1: int, outer: list[int]) -> dict[Edge, int]:
    """Sound variant: non-neighborhood inside the cut vertex's star is a
    matching (degree forcing), so two colors on that star separate it."""
    colors: dict[Edge, int] = {}
    attached = [u for u in us if g.has_edge(v1, u)]
    for u in us:
        colors[_norm_edge(w, u)] = 1
    for i, a in enumerate(us):
        for b in us[i + 1:]:
            if g.has_edge(a, b):
                colors[_norm_edge(a, b)] = 1
    for a in attached:
        colors[_norm_edge(v1, a)] = 2
    for i, a in enumerate(attached):
        for b in attached[i + 1:]:
            if not g.has_edge(a, b):
                colors[_norm_edge(v1, a)] = 2
                colors[_norm_edge(v1, b)] = 3
    block = [v1] + outer
    for i, a in enumerate(block):
        for b in block[i + 1:]:
            if g.has_edge(a, b):
                colors[_norm_edge(a, b)] = 4
    return colors


def _rc4_case3_p1(g: Graph, w: int, us: list[int], v1: int,
                  outer: list[int], cap: int) -> ColoringResult:
    step = ReductionStep(
        case=CaseTag.FOUR_CASE3_P1, w=w, t=g.n - 2 - g.degree(w),
        complement_list=tuple(sorted([v1] + outer)),
        note=f"cut vertex {v1} separates the pivot block from a clique",
    )
    colors = _p1_table(g, w, us, v1, outer)
    coloring = _assemble(g, colors, 4)
    if is_rainbow_connected(g, coloring):
        return ColoringResult(coloring, len(set(coloring.colors)), (step,), True)
    step = dataclasses.replace(
        step, note=step.note + "; index-table coloring failed, matched-star repair",
    )
    colors = _p1_repair(g, w, us, v1, outer)
    return _finish(g, _assemble(g, colors, 4), (step,), CaseTag.FOUR_CASE3_P1)


def _rc4_case3_p2(g: Graph, w: int, us: list[int], mids: list[int],
                  outer: list[int], cap: int) -> ColoringResult:
    v1, v2 = mids
    inner_set = [w] + us + mids
    step = ReductionStep(
        case=CaseTag.FOUR_CASE3_P2, w=w, t=g.n - 2 - g.degree(w),
        complement_list=tuple(sorted(mids + outer)),
        note="two middle vertices; inner block colored separately",
    )
    if len(inner_set) >= 6:
        h1, psi = induced(g, inner_set)
        if h1.m < comb(h1.n - 2, 2) + 2:
            raise ProofGap(
                f"inner block too sparse for three colors: {h1.m} edges on {h1.n}",
                tag="four-case-3-p2", trace=(step,),
            )
        sub = _recurse(color_rc3, h1, cap, "case-3 inner block")
        inv = _invert(psi)
        colors = {}
        for (a, b), c in sub.coloring.as_map().items():
            colors[_norm_edge(inv[a], inv[b])] = c + 1
        block = mids + outer
        for i, a in enumerate(block):
            for b in block[i + 1:]:
                if g.has_edge(a, b):
                    colors[_norm_edge(a, b)] = 1
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE3_P2)
    # five inner vertices: the pivot has exactly two neighbors
    alpha, beta = us
    u1 = min(_bits(g.adj[v1] & g.adj[w]))
    rest = g.adj[v2] & g.adj[w] & ~(1 << u1)
    u2 = min(_bits(rest)) if rest else min(_bits(g.adj[v2] & g.adj[w]))
    colors = {}
    for e in g.edges:
        colors[e] = 1
    colors[_norm_edge(w, u1)] = 4
    colors[_norm_edge(w, alpha if u1 != alpha else beta)] = 3
    colors[_norm_edge(u1, v1)] = 2
    colors[_norm_edge(u2, v2)] = 1
    step = dataclasses.replace(step, note=step.note + "; five-vertex inner block, direct table")
    return _finish(g, _assemble(g, colors, 4), (step,), CaseTag.FOUR_CASE3_P2)


def _rc4_case3_pbig(g: Graph, w: int, us: list[int], mids: list[int],
                    outer: list[int], cap: int) -> ColoringResult:
    n = g.n
    matched = []
    for v in mids:
        common = g.adj[v] & g.adj[w]
        if not common:
            raise ProofGap(f"middle vertex {v} shares no neighbor with the pivot",
                           tag="four-case-3-pbig")
        matched.append(((common & -common).bit_length() - 1, v))
    v1 = mids[0]
    del_matched = [_norm_edge(u, v) for u, v in matched[3:]]
    del_mid = [_norm_edge(v1, u) for u in outer]
    for e in del_mid:
        if not g.has_edge(*e):
            raise ProofGap(f"expected edge {e} from the first middle vertex missing",
                           tag="four-case-3-pbig")
    step = ReductionStep(
        case=CaseTag.FOUR_CASE3_PBIG, w=w, t=n - 2 - g.degree(w),
        complement_list=tuple(sorted(mids + outer)), matched=tuple(matched),
        deleted=tuple(del_matched + del_mid),
    )
    h, phi = delete_vertex(g, w)
    hp = delete_edges(h, [(phi[a], phi[b]) for a, b in step.deleted])
    step = dataclasses.replace(step, relabel=phi)
    inv = _invert(phi)
    if is_connected(hp):
        sub = _recurse(color_rc4, hp, cap, "case-3 reduction")
        colors = _pull_back(sub.coloring, phi)
        retained = [colors[_norm_edge(u, v)] for u, v in matched[:3]]
        colors = _apply_perm(colors, _perm_sending(retained, [1, 2, 3], 4))
        for e in _star_edges(g, w):
            colors[e] = 4
        for e in del_mid:
            colors[e] = 2
        for e in del_matched:
            colors[e] = 3
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE3_PBIG)
    return _rc4_case3_pbig_disconnected(g, step, hp, phi, inv, v1,
                                        del_mid, del_matched, cap)


def _rc4_case3_pbig_disconnected(g: Graph, step: ReductionStep, hp: Graph, phi,
                                 inv, v1: int, del_mid: list[Edge],
                                 del_matched: list[Edge], cap: int) -> ColoringResult:
    w = step.w
    comps = components(hp)
    sizes = sorted(len(c) for c in comps)
    us_mask = g.adj[w]

    def pull(sub, psi):
        inv2 = _invert(psi)
        return {
            _norm_edge(inv[inv2[a]], inv[inv2[b]]): c
            for (a, b), c in sub.coloring.as_map().items()
        }

    if len(comps) == 3 and sizes[:2] == [1, 1]:
        singles = sorted(inv[next(iter(c))] for c in comps if len(c) == 1)
        s1, s2 = singles
        if not all(us_mask >> s & 1 for s in singles):
            raise ProofGap("isolated vertices not in the pivot star",
                           tag="four-case-3-pbig", trace=(step,))
        big = next(c for c in comps if len(c) > 1)
        h1, psi = induced(hp, big)
        sub = _recurse(color_rc2, h1, cap, "case-3 three-component repair")
        colors = pull(sub, psi)
        for e in del_matched:
            colors[e] = 1
        for u in _bits(us_mask):
            if g.has_edge(u, v1):
                colors[_norm_edge(u, v1)] = 1
        for e in del_mid:
            colors[e] = 2
        for e in _star_edges(g, s1):
            colors[e] = 3
        for e in _star_edges(g, s2):
            colors[e] = 4
        for e in _star_edges(g, w):
            colors[e] = 4
        colors[_norm_edge(w, s1)] = 3
        colors[_norm_edge(w, s2)] = 3
        step = dataclasses.replace(step, note="two pivot-star vertices isolated")
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE3_PBIG)
    if len(comps) == 2 and sizes[0] == 1:
        s = inv[next(iter(next(c for c in comps if len(c) == 1)))]
        if not us_mask >> s & 1:
            raise ProofGap("isolated vertex not in the pivot star",
                           tag="four-case-3-pbig", trace=(step,))
        big = next(c for c in comps if len(c) > 1)
        h2, psi = induced(hp, big)
        sub = _recurse(color_rc3, h2, cap, "case-3 singleton repair")
        colors = pull(sub, psi)
        for e in del_matched:
            colors[e] = 1
        for u in _bits(us_mask & ~(1 << s)):
            if g.has_edge(u, v1):
                colors[_norm_edge(u, v1)] = 1
        for e in del_mid:
            colors[e] = 2
        for e in _star_edges(g, s):
            colors[e] = 2
        for e in _star_edges(g, w):
            colors[e] = 4
        colors[_norm_edge(w, s)] = 3
        step = dataclasses.replace(step, note=f"pivot-star vertex {s} isolated")
        return _finish(g, _assemble(g, colors, 4), (step,) + sub.trace,
                       CaseTag.FOUR_CASE3_PBIG)
    if len(comps) == 2:
        # the side holding the outer clique takes color 4 at the pivot
        with_outer = next((c for c in comps
                           if any(phi[o] in c for o in _outer_orig(step, g))), None)
        if with_outer is None:
            raise ProofGap("could not locate the outer clique's component",
                           tag="four-case-3-pbig", trace=(step,))
        other = next(c for c in comps if c is not with_outer)
        h1, psi1 = induced(hp, other)
        h2, psi2 = induced(hp, with_outer)
        sub1 = _recurse(color_rc2, h1, cap, "case-3 two-component repair")
        sub2 = _recurse(color_rc2, h2, cap, "case-3 two-component repair")
        colors = pull(sub1, psi1)
        colors.update(pull(sub2, psi2))
        side1 = {inv[v] for v in other}
        for e in del_matched:
            colors[e] = 3
        for e in del_mid:
            colors[e] = 4
        for x in _bits(us_mask):
            colors[_norm_edge(w, x)] = 3 if x in side1 else 4
        step = dataclasses.replace(step, note="reduction split into two sides")
        return _finish(g, _assemble(g, colors, 4),
                       (step,) + sub1.trace + sub2.trace, CaseTag.FOUR_CASE3_PBIG)
    raise ProofGap(f"reduction split the graph into sizes {sizes}",
                   tag="four-case-3-pbig", trace=(step,))


def _outer_orig(step: ReductionStep, g: Graph) -> list[int]:
    """Original ids of the distance-3 block (complement list minus middles)."""
    mids = {v for _, v in step.matched}
    return [v for v in step.complement_list if v not in mids]
