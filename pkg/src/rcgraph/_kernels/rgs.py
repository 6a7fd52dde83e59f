"""Restricted-growth enumeration of surjective edge colorings.

A length-m sequence over ``1..k`` is in restricted-growth form when the first
occurrence of color ``c+1`` comes after the first occurrence of ``c``.  Each
k-color partition of the edge positions appears exactly once, so the stream
has Stirling-number S(m, k) entries instead of the k! times larger set of all
surjective colorings.  Order is lexicographic; the compiled search kernels
must enumerate in exactly this order.
"""

from __future__ import annotations

from typing import Iterator


def restricted_growth_strings(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield, in lexicographic order, every restricted-growth string of
    length ``m`` over ``1..k`` that uses all ``k`` colors."""
    if m < 1 or k < 1 or k > m:
        return
    a = [0] * m

    def rec(i: int, pmax: int) -> Iterator[tuple[int, ...]]:
        if m - i < k - pmax:
            return
        if i == m:
            yield tuple(a)
            return
        for c in range(1, min(pmax + 1, k) + 1):
            a[i] = c
            yield from rec(i + 1, max(pmax, c))

    yield from rec(0, 0)


def first_rgs(m: int, k: int) -> list[int] | None:
    """Lexicographically smallest restricted-growth string using all k colors."""
    if m < 1 or k < 1 or k > m:
        return None
    return [1] * (m - k + 1) + list(range(2, k + 1))


def next_rgs(a: list[int], k: int) -> bool:
    """Advance ``a`` in place to its lexicographic successor; False at the end.

    Mirrors the generator above; kept in step with the compiled version.
    """
    m = len(a)
    pmax = [0] * m
    run = 0
    for i, c in enumerate(a):
        run = max(run, c)
        pmax[i] = run
    for i in range(m - 1, 0, -1):
        room = m - 1 - i
        lo = a[i] + 1
        if pmax[i - 1] >= k - room:
            cand = lo
        else:
            cand = max(lo, k - room)
        if cand <= min(pmax[i - 1] + 1, k):
            a[i] = cand
            used = max(pmax[i - 1], cand)
            deficit = k - used
            for j in range(i + 1, m - deficit):
                a[j] = 1
            val = used
            for j in range(m - deficit, m):
                val += 1
                a[j] = val
            return True
    return False


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind S(m, k)."""
    if k < 0 or k > m:
        return 0
    if m == 0:
        return 1 if k == 0 else 0
    row = [1] + [0] * k
    for _ in range(m):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = row[j - 1] + j * row[j]
        row = new
        row[0] = 0
    return row[k]
