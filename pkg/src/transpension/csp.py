"""Backtracking search for assignments under functional constraints.

Every constraint has the shape ``x[j] = m[x[i]]`` where ``m`` is a tuple.  Both
natural transformations between presheaves and cells of an end are solutions of
such a system, so one engine serves presheaf homs, right lifts and iso search.
"""
from __future__ import annotations

import sys

from .caps import get_caps
from .errors import LimitExceeded


class FunctionalCSP:
    def __init__(self, domains, edges, order=None, allowed=None, groups=None):
        self.n = len(domains)
        self.domains = domains
        self.edges = edges
        self.order = list(range(self.n)) if order is None else list(order)
        self.allowed = allowed
        self.groups = groups
        self.value = [None] * self.n
        self.trail = []
        self.used = {}
        self.nodes = 0

    def _assign(self, i, v):
        queue = [(i, v)]
        value = self.value
        groups = self.groups
        while queue:
            i, v = queue.pop()
            cur = value[i]
            if cur is not None:
                if cur != v:
                    return False
                continue
            if self.allowed is not None and self.allowed[i] is not None and v not in self.allowed[i]:
                return False
            if groups is not None and groups[i] is not None:
                key = (groups[i], v)
                if key in self.used:
                    return False
                self.used[key] = i
            value[i] = v
            self.trail.append(i)
            for j, m in self.edges[i]:
                queue.append((j, m[v]))
        return True

    def _undo(self, mark):
        value = self.value
        groups = self.groups
        while len(self.trail) > mark:
            i = self.trail.pop()
            if groups is not None and groups[i] is not None:
                del self.used[(groups[i], value[i])]
            value[i] = None

    def _candidates(self, i):
        if self.allowed is not None and self.allowed[i] is not None:
            return sorted(self.allowed[i])
        return range(self.domains[i])

    def solutions(self, limit=None):
        caps = get_caps()
        limit = caps.solutions if limit is None else limit
        if any(d == 0 for d in self.domains):
            return
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * self.n + 1000))
        count = 0
        try:
            for sol in self._search(0, caps.search_nodes):
                count += 1
                if count > limit:
                    raise LimitExceeded(f"more than {limit} solutions")
                yield sol
        finally:
            sys.setrecursionlimit(old)

    def _search(self, pos, node_cap):
        order = self.order
        while pos < len(order) and self.value[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            yield tuple(self.value)
            return
        i = order[pos]
        for v in self._candidates(i):
            self.nodes += 1
            if self.nodes > node_cap:
                raise LimitExceeded(f"search exceeded {node_cap} nodes")
            mark = len(self.trail)
            if self._assign(i, v):
                yield from self._search(pos + 1, node_cap)
            self._undo(mark)

    def first(self):
        for sol in self.solutions():
            return sol
        return None
