"""Exact rainbow connection numbers by canonical brute force.

The search ascends from a structural lower bound, trying each color count k
over the restricted-growth colorings of the edge sequence (one representative
per color-relabeling class).  Dense graphs sit near their diameter, so the
ascent usually stops immediately; the certificate records how much work the
enumeration did and why the value is optimal.

Results for small graphs are memoized per labeled graph, which the inductive
colorers lean on heavily when sweeping millions of instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from ._kernels.rgs import restricted_growth_strings, stirling2
from .errors import BudgetExceededError, CapReachedError, DisconnectedError, InputError
from .graph import Graph, diameter, is_connected, is_tree
from .verify import EdgeColoring, is_rainbow_connected, search_csr

DEFAULT_BUDGET = 10**8

OPT_LOWER_BOUND = "lower-bound-met"
OPT_EXHAUSTION = "exhaustion-at-value-minus-1"


@dataclass(frozen=True)
class RcCertificate:
    """Exact value with a witness coloring and the evidence for optimality."""

    value: int
    witness: EdgeColoring
    optimality: str
    colorings_examined: int
    expansions: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "optimality": self.optimality,
            "colorings_examined": self.colorings_examined,
            "expansions": self.expansions,
            "witness": {
                "k": self.witness.k,
                "colors": list(self.witness.colors),
                "edges": [list(e) for e in self.witness.graph.edges],
            },
        }


def rc_lower_bound(g: Graph) -> int:
    """max(diameter, 1); for trees the exact value m, since every tree edge
    lies on the unique path of some vertex pair together with any other edge."""
    if not is_connected(g):
        raise DisconnectedError("lower bound needs a connected graph")
    if g.n <= 1:
        return 1
    if is_tree(g):
        return g.m
    return max(diameter(g), 1)


def enumerate_colorings(m: int, k: int):
    """Stream of canonical (restricted-growth, all-k-colors) assignments."""
    if m < 1:
        raise InputError(f"need at least one edge, got m={m}")
    if k < 1:
        raise InputError(f"need at least one color, got k={k}")
    return restricted_growth_strings(m, k)


_solved: dict[tuple[int, tuple], RcCertificate] = {}
_proven_floor: dict[tuple[int, tuple], int] = {}


def clear_cache() -> None:
    _solved.clear()
    _proven_floor.clear()


def _estimated_work(m: int, k: int, n: int) -> int:
    return stirling2(m, k) * max(1, (n - 1)) * (1 << k)


def rc_exact(g: Graph, k_max: int | None = None, budget: int = DEFAULT_BUDGET) -> RcCertificate:
    """Smallest k (up to ``k_max``) admitting a rainbow-connected k-coloring.

    Raises :class:`CapReachedError` when every k up to the cap is exhausted,
    and :class:`BudgetExceededError` (with the bounds proven so far) when the
    work budget runs out first.  The work unit is one search-state expansion.
    """
    if not is_connected(g):
        raise DisconnectedError("rainbow connection number needs a connected graph")
    if g.m < 1:
        raise InputError("graph needs at least one edge")
    cap = g.m if k_max is None else min(k_max, g.m)
    key = (g.n, g.edges)
    cert = _solved.get(key)
    if cert is not None:
        if cert.value <= cap:
            return cert
        raise CapReachedError(
            f"no rainbow-connected coloring with at most {cap} colors", cap
        )
    lower = rc_lower_bound(g)
    start = max(lower, _proven_floor.get(key, 1))
    if start > cap:
        raise CapReachedError(
            f"lower bound {start} already exceeds the cap {cap}", cap
        )
    if _estimated_work(g.m, start, g.n) > budget:
        raise BudgetExceededError(
            f"estimated enumeration at k={start} exceeds budget {budget}",
            lower_bound=start, upper_bound=g.m,
        )
    indptr, nbrs, eidx = search_csr(g)
    examined = 0
    expansions = 0
    for k in range(start, cap + 1):
        status, colors, exa, exp = _kernels.find_canonical_coloring(
            indptr, nbrs, eidx, g.m, k, budget - expansions
        )
        examined += int(exa)
        expansions += int(exp)
        if status == 1:
            witness = EdgeColoring(g, tuple(int(c) for c in colors), k)
            if not is_rainbow_connected(g, witness):
                raise AssertionError("search returned a non-rainbow witness")
            opt = OPT_LOWER_BOUND if k == lower else OPT_EXHAUSTION
            cert = RcCertificate(k, witness, opt, examined, expansions)
            _solved[key] = cert
            return cert
        if status == -1:
            raise BudgetExceededError(
                f"budget {budget} exhausted during k={k}",
                lower_bound=k, upper_bound=g.m, examined=examined,
            )
        _proven_floor[key] = k + 1
    raise CapReachedError(
        f"no rainbow-connected coloring with at most {cap} colors",
        cap, examined=examined,
    )


def rc_exceeds(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True when rc(G) is provably larger than ``k``."""
    if rc_lower_bound(g) > k:
        return True
    try:
        rc_exact(g, k_max=k, budget=budget)
        return False
    except CapReachedError:
        return True
