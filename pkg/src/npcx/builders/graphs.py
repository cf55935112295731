"""Small named graphs used as link targets."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .. import errors


@dataclass(frozen=True)
class Graph:
    nodes: tuple
    edges: tuple  # pairs in a fixed order

    @classmethod
    def create(cls, nodes, edges) -> "Graph":
        nodes = tuple(nodes)
        known = set(nodes)
        out = []
        seen = set()
        for u, v in edges:
            if u not in known or v not in known:
                raise errors.DanglingReference(f"edge ({u}, {v}) uses an unknown node")
            if u == v:
                raise errors.InvalidInput("loops are not allowed in a link graph")
            key = frozenset((u, v))
            if key in seen:
                raise errors.InvalidInput(f"repeated edge ({u}, {v})")
            seen.add(key)
            out.append((u, v))
        return cls(nodes, tuple(out))

    def neighbours(self) -> dict:
        nb = {v: set() for v in self.nodes}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def degree(self, v) -> int:
        return sum(v in e for e in self.edges)


def complete_graph(n: int) -> Graph:
    return Graph.create(range(n), combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    left = list(range(m))
    right = list(range(m, m + n))
    return Graph.create(left + right, [(a, b) for a in left for b in right])


def cycle_graph(n: int) -> Graph:
    return Graph.create(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.create(range(n), [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.create(range(10), outer + spokes + inner)


def heawood_graph() -> Graph:
    """Point-line incidence graph of the Fano plane."""
    lines = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]
    edges = [(p, 7 + j) for j, line in enumerate(lines) for p in line]
    return Graph.create(range(14), sorted(edges))


NAMED = {
    "K4": lambda: complete_graph(4),
    "K33": lambda: complete_bipartite(3, 3),
    "K23": lambda: complete_bipartite(2, 3),
    "K22": lambda: complete_bipartite(2, 2),
    "C4": lambda: cycle_graph(4),
    "C6": lambda: cycle_graph(6),
    "petersen": petersen_graph,
    "heawood": heawood_graph,
}


def named_graph(name: str) -> Graph:
    key = name.strip()
    for candidate in (key, key.upper(), key.lower()):
        if candidate in NAMED:
            return NAMED[candidate]()
    if key[:1].upper() == "K" and "," in key:
        m, n = key[1:].split(",")
        return complete_bipartite(int(m), int(n))
    raise errors.InvalidInput(f"unknown graph name {name!r}; known: {', '.join(NAMED)}")
