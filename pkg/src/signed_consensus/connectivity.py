"""Strongly connected components, roots, leaders/followers and weak components.

Connectivity only looks at the nonzero pattern of the weight matrix; edge
signs never matter here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import GraphError, SignedDigraph


@dataclass(frozen=True)
class ConnectivityReport:
    sccs: tuple[tuple[int, ...], ...]
    # edges (u, v) between SCC ids; SCC ids are topologically ordered
    condensation: tuple[tuple[int, int], ...]
    roots: tuple[int, ...]
    is_quasi_strongly_connected: bool
    leaders: tuple[int, ...]
    followers: tuple[int, ...]
    weak_components: tuple[tuple[int, ...], ...]
    source_sccs: tuple[int, ...]
    # weak components with more than one source SCC, i.e. no spanning tree
    components_without_spanning_tree: tuple[int, ...]

    def scc_of(self) -> list[int]:
        out = [0] * sum(len(c) for c in self.sccs)
        for k, comp in enumerate(self.sccs):
            for v in comp:
                out[v] = k
        return out

    def to_json(self) -> dict:
        one = lambda s: [v + 1 for v in s]  # noqa: E731
        return {
            "sccs": [one(c) for c in self.sccs],
            "condensation": [list(e) for e in self.condensation],
            "roots": one(self.roots),
            "is_quasi_strongly_connected": self.is_quasi_strongly_connected,
            "leaders": one(self.leaders),
            "followers": one(self.followers),
            "weak_components": [one(c) for c in self.weak_components],
            "components_without_spanning_tree": list(self.components_without_spanning_tree),
        }


def _tarjan(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; returns SCCs in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for k in range(pos, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def _successors(g: SignedDigraph) -> list[list[int]]:
    return [g.out_neighbors(j) for j in range(g.n)]


def analyze_connectivity(g: SignedDigraph) -> ConnectivityReport:
    n = g.n
    succ = _successors(g)
    raw = _tarjan(n, succ)
    raw.reverse()  # topological order: sources first
    # stable ids: topological order, ties broken by smallest member
    comp_of = [0] * n
    for k, comp in enumerate(raw):
        for v in comp:
            comp_of[v] = k
    indeg = [0] * len(raw)
    cond_edges = set()
    for u in range(n):
        for v in succ[u]:
            a, b = comp_of[u], comp_of[v]
            if a != b and (a, b) not in cond_edges:
                cond_edges.add((a, b))
                indeg[b] += 1
    order = _kahn(len(raw), cond_edges, key=lambda k: raw[k][0])
    renum = {old: new for new, old in enumerate(order)}
    sccs = tuple(tuple(raw[k]) for k in order)
    condensation = tuple(sorted((renum[a], renum[b]) for a, b in cond_edges))
    sources = tuple(k for k in range(len(sccs)) if indeg[order[k]] == 0)

    leaders = tuple(sorted(v for k in sources for v in sccs[k]))
    leader_set = set(leaders)
    followers = tuple(v for v in range(n) if v not in leader_set)

    weak = weak_components(g)
    src_count = [0] * len(weak)
    comp_index = {v: c for c, comp in enumerate(weak) for v in comp}
    for k in sources:
        src_count[comp_index[sccs[k][0]]] += 1
    lacking = tuple(c for c, cnt in enumerate(src_count) if cnt > 1)

    qsc = len(weak) == 1 and len(sources) == 1
    roots = sccs[sources[0]] if qsc else ()
    return ConnectivityReport(
        sccs=sccs, condensation=condensation, roots=tuple(roots),
        is_quasi_strongly_connected=qsc, leaders=leaders, followers=followers,
        weak_components=weak, source_sccs=sources,
        components_without_spanning_tree=lacking,
    )


def _kahn(count: int, edges: set[tuple[int, int]], key) -> list[int]:
    import heapq

    indeg = [0] * count
    out: list[list[int]] = [[] for _ in range(count)]
    for a, b in edges:
        out[a].append(b)
        indeg[b] += 1
    heap = [(key(k), k) for k in range(count) if indeg[k] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, k = heapq.heappop(heap)
        order.append(k)
        for b in out[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (key(b), b))
    return order


def weak_components(g: SignedDigraph) -> tuple[tuple[int, ...], ...]:
    """Connected components of the undirected support, ascending by smallest member."""
    n = g.n
    support = (g.weights != 0) | (g.weights.T != 0)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in support[v].nonzero()[0]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(int(w))
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def ancestor_closure(g: SignedDigraph, i: int) -> tuple[int, ...]:
    """All nodes with a directed path to ``i``, plus ``i`` itself (sorted, 0-based)."""
    if not 0 <= i < g.n:
        raise GraphError(f"node index {i} out of range for n={g.n}")
    seen = {i}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        for u in g.in_neighbors(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return tuple(sorted(seen))


def descendants(g: SignedDigraph, i: int) -> set[int]:
    seen = {i}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        for w in g.out_neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen
