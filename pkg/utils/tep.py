import heapq
import math
from typing import Optional

import numpy as np

from .gf2 import BitVector

'''
Lazy enumeration of binary patterns in non-decreasing soft weight.

Patterns are index sets over positions sorted by increasing reliability. Each
popped set spawns at most two children: extend (append the next index) and
slide (move the largest index one step up). Every non-empty set has exactly one
parent, so the frontier never holds duplicates.

Ties in soft weight are broken lexicographically in the original position
order, 0 before 1 at the first differing index. The frontier key carries the
pattern as an integer with position 0 as the most significant bit, which
orders numerically the same way.

A slide between two reliabilities closer than the rounding of the largest
sum can leave the rounded weight unchanged while moving to a later original
index, so the child would sort before its parent. When the input has such a
pair the sorter drains each weight class into a buffer and emits it by lex.
'''

MAX_KTH_LENGTH = 24


def _has_rounding_ties(rel: list[float], order: list[int]) -> bool:
    """True if some slide can keep the rounded weight while decreasing the lex key."""
    total = math.fsum(rel)
    if total == 0.0:
        return False
    spacing = math.ulp(2.0 * total)
    for a, b in zip(order, order[1:]):
        if b > a and 0.0 < rel[b] - rel[a] <= spacing:
            return True
    return False


class TepSorter:
    def __init__(self, reliabilities):
        rel = np.asarray(reliabilities, dtype=np.float64).reshape(-1)
        if np.any(rel < 0) or not np.all(np.isfinite(rel)):
            raise ValueError("Reliabilities must be finite and non-negative")
        self.n = int(rel.size)
        self._rel = [float(x) for x in rel]
        # Equal reliabilities go by descending original index, so a slide between
        # them moves to a smaller index and the child is lexicographically later.
        self._order = sorted(range(self.n), key=lambda i: (self._rel[i], -i))
        self._bit = [1 << (self.n - 1 - p) for p in range(self.n)]
        self._heap = [(0.0, 0, ())]
        self._buffered = _has_rounding_ties(self._rel, self._order)
        self._ready = []
        self.frontier_ops = 1
        self.emitted_count = 0

    def _push(self, node: tuple, lex: int):
        gamma = math.fsum(self._rel[self._order[j]] for j in node)
        heapq.heappush(self._heap, (gamma, lex, node))
        self.frontier_ops += 1

    def _pop(self) -> tuple:
        gamma, lex, node = heapq.heappop(self._heap)
        self.frontier_ops += 1

        last = node[-1] if node else -1
        nxt = last + 1
        if nxt < self.n:
            added = self._bit[self._order[nxt]]
            self._push(node + (nxt,), lex + added)
            if node:
                removed = self._bit[self._order[last]]
                self._push(node[:-1] + (nxt,), lex - removed + added)
        return gamma, lex, node

    def _fill_weight_class(self):
        # Descendants never weigh less than their ancestors, so once the heap
        # top is heavier the whole class has been discovered.
        gamma = self._heap[0][0]
        while self._heap and self._heap[0][0] == gamma:
            heapq.heappush(self._ready, self._pop())

    def next_support(self) -> Optional[tuple[float, tuple]]:
        """(soft weight, ascending original positions) of the next pattern, or None once exhausted."""
        if self._buffered:
            if not self._ready and self._heap:
                self._fill_weight_class()
            if not self._ready:
                return None
            gamma, _, node = heapq.heappop(self._ready)
        else:
            if not self._heap:
                return None
            gamma, _, node = self._pop()

        self.emitted_count += 1
        return gamma, tuple(sorted(self._order[j] for j in node))

    def __iter__(self):
        return self

    def __next__(self) -> BitVector:
        item = self.next_support()
        if item is None:
            raise StopIteration
        return BitVector.from_support(self.n, item[1])


def new_sorter(reliabilities) -> TepSorter:
    return TepSorter(reliabilities)


def kth_pattern(reliabilities, k: int) -> BitVector:
    """The (k+1)-th emission of a fresh sorter."""
    sorter = TepSorter(reliabilities)
    if sorter.n > MAX_KTH_LENGTH:
        raise ValueError(f"kth_pattern supports at most {MAX_KTH_LENGTH} positions, got {sorter.n}")
    if not 0 <= k < 2 ** sorter.n:
        raise ValueError(f"k must lie in [0, 2^{sorter.n}), got {k}")
    for _ in range(k):
        sorter.next_support()
    return next(sorter)
