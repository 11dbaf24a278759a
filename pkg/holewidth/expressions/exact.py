"""Exact clique-width of very small graphs by exhaustive search.

A state is a vertex subset S with a partition of S into label classes such
that the labelled graph built so far is exactly G[S]. Joins are applied as
soon as two classes are completely adjacent, which loses nothing: a later
join between enlarged classes would add the same edges. A class must be a
module with respect to the vertices outside S, since it can never be split.
"""

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Set, Tuple

from ..core.graph import Graph, complement, iter_bits

logger = logging.getLogger(__name__)

MAX_EXACT_VERTICES = 7

Partition = FrozenSet[int]


def _complete(g: Graph, a: int, b: int) -> bool:
    return all(g.rows[v] & b == b for v in iter_bits(a))


def _has_edges(g: Graph, a: int, b: int) -> bool:
    return any(g.rows[v] & b for v in iter_bits(a))


def _is_module(g: Graph, outside: int, cls: int) -> bool:
    for w in iter_bits(outside):
        hit = g.rows[w] & cls
        if hit and hit != cls:
            return False
    return True


def _merges(p1: List[int], p2: List[int]) -> Iterator[List[Tuple[int, int]]]:
    """Every partial matching between the classes of p1 and p2, as (mask1, mask2) pairs."""
    for size in range(min(len(p1), len(p2)) + 1):
        for left in itertools.combinations(range(len(p1)), size):
            for right in itertools.permutations(range(len(p2)), size):
                yield [(p1[i], p2[j]) for i, j in zip(left, right)]


def _relabel_closure(g: Graph, outside: int, partition: Partition) -> Set[Partition]:
    found = {partition}
    frontier = [partition]
    while frontier:
        current = sorted(frontier.pop())
        for a, b in itertools.combinations(current, 2):
            merged = a | b
            if not _is_module(g, outside, merged):
                continue
            nxt = frozenset(c for c in current if c not in (a, b)) | {merged}
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    return found


def has_width_at_most(g: Graph, k: int) -> bool:
    """Whether some k-expression defines g."""
    if g.n == 0:
        return True
    if g.n > MAX_EXACT_VERTICES:
        raise ValueError(f"exhaustive width search is limited to {MAX_EXACT_VERTICES} vertices")
    full = g.full_mask()
    states: Dict[int, Set[Partition]] = {}
    for v in range(g.n):
        states[1 << v] = {frozenset({1 << v})}
    for size in range(2, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            s = sum(1 << v for v in combo)
            outside = full & ~s
            low = s & -s
            found: Set[Partition] = set()
            rest = s & ~low
            sub = rest
            while True:
                s1 = low | sub
                s2 = s & ~s1
                if s2:
                    for p1 in states.get(s1, ()):
                        for p2 in states.get(s2, ()):
                            found |= _unions(g, outside, s1, s2, sorted(p1), sorted(p2), k)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            if found:
                closed: Set[Partition] = set()
                for partition in found:
                    closed |= _relabel_closure(g, outside, partition)
                states[s] = closed
    return bool(states.get(full))


def _unions(
    g: Graph, outside: int, s1: int, s2: int, p1: List[int], p2: List[int], k: int
) -> Set[Partition]:
    results: Set[Partition] = set()
    for matching in _merges(p1, p2):
        merged_left = {a for a, _ in matching}
        merged_right = {b for _, b in matching}
        classes = [a | b for a, b in matching]
        classes += [a for a in p1 if a not in merged_left]
        classes += [b for b in p2 if b not in merged_right]
        if len(classes) > k:
            continue
        if any(_has_edges(g, a, b) for a, b in matching):
            continue
        if not all(_is_module(g, outside, c) for c in classes):
            continue
        ok = True
        for a, b in itertools.combinations(classes, 2):
            crossing = _has_edges(g, a & s1, b & s2) or _has_edges(g, a & s2, b & s1)
            if crossing and not _complete(g, a, b):
                ok = False
                break
        if ok:
            results.add(frozenset(classes))
    return results


def min_width(g: Graph, limit: int = 4) -> int:
    """Clique-width of g, searched up to limit labels."""
    for k in range(1, limit + 1):
        if has_width_at_most(g, k):
            logger.debug("width %d found for %d-vertex graph", k, g.n)
            return k
    raise ValueError(f"clique-width exceeds {limit}")


def complement_width_pair(g: Graph, limit: int = 4) -> Tuple[int, int]:
    """(cwd(g), cwd(complement of g)) for the complement inequality check."""
    return min_width(g, limit), min_width(complement(g), limit)
