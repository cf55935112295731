"""Finite permutation groups, coset enumeration, and Coxeter systems.

Permutations are tuples ``g`` on ``range(n)`` acting on the left, so
``(g * h)[i] == g[h[i]]``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import errors

Perm = tuple

DEFAULT_ORDER_BUDGET = 10**6
DEFAULT_ORBIT_BUDGET = 10**5
INF = None  # m_ij = infinity


# -- permutations ------------------------------------------------------------


def compose(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]], base: int = 0) -> Perm:
    """Build a permutation of degree ``n`` from cycles (``base=1`` for 1-indexed)."""
    p = list(range(n))
    for cyc in cycles:
        cyc = [c - base for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return tuple(p)


def perm_order(g: Perm) -> int:
    e = identity(len(g))
    k, x = 1, g
    while x != e:
        x = compose(g, x)
        k += 1
    return k


class FiniteGroup:
    """Permutation group given by generators; the element list is cached."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise errors.InvalidInput(f"{g} is not a permutation of degree {degree}")
            gens.append(g)
        self.generators = tuple(gens)
        self._elements: list | None = None

    def __repr__(self):
        return f"FiniteGroup(degree={self.degree}, generators={list(self.generators)})"

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def elements(self, budget: int = DEFAULT_ORDER_BUDGET) -> list[Perm]:
        """All elements in breadth-first order from the identity."""
        if self._elements is not None:
            return self._elements
        seen = {self.identity}
        order = [self.identity]
        queue = deque(order)
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    if len(order) > budget:
                        raise errors.OrderBudgetExceeded(
                            f"group has more than {budget} elements")
                    queue.append(y)
        self._elements = order
        return order

    def contains(self, g: Perm) -> bool:
        return tuple(g) in set(self.elements())

    def order(self) -> int:
        return len(self.elements())


def group_order(G: FiniteGroup, budget: int = DEFAULT_ORDER_BUDGET) -> int:
    return len(G.elements(budget))


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Direct product acting on the disjoint union of the supports."""
    n = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            p = list(range(n))
            for i, x in enumerate(g):
                p[offset + i] = offset + x
            gens.append(tuple(p))
        offset += G.degree
    return FiniteGroup(n, gens)


def cyclic_group(q: int) -> FiniteGroup:
    if q == 1:
        return FiniteGroup(1, [])
    return FiniteGroup(q, [tuple((i + 1) % q for i in range(q))])


def subgroup_elements(G: FiniteGroup, H_gens: Iterable[Sequence[int]]) -> list[Perm]:
    pool = set(G.elements())
    gens = [tuple(h) for h in H_gens]
    for h in gens:
        if h not in pool:
            raise errors.NotASubgroupElement(f"{h} is not an element of the group")
    return FiniteGroup(G.degree, gens).elements()


def left_cosets(G: FiniteGroup, H_gens: Iterable[Sequence[int]]) -> list[list[Perm]]:
    """Partition of G into cosets ``gH``; each coset sorted, cosets ordered by first element."""
    H = subgroup_elements(G, H_gens)
    assigned: set = set()
    cosets = []
    for g in sorted(G.elements()):
        if g in assigned:
            continue
        coset = sorted(compose(g, h) for h in H)
        assigned.update(coset)
        cosets.append(coset)
    return cosets


@dataclass(frozen=True)
class Homomorphism:
    """A map between permutation groups defined on the source generators."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple
    table: Mapping = field(compare=False, repr=False)

    def __call__(self, g: Perm) -> Perm:
        return self.table[tuple(g)]

    def image(self) -> list[Perm]:
        return sorted(set(self.table.values()))


def make_homomorphism(source: FiniteGroup, target: FiniteGroup,
                      images: Sequence[Sequence[int]], injective: bool = True) -> Homomorphism:
    """Extend generator images to a homomorphism, checking well-definedness.

    The map is built by breadth-first search over the source Cayley graph; any
    element reached twice with different images means the assignment does not
    respect the relations.  With ``injective`` set, the image order must equal
    the source order.
    """
    images = tuple(tuple(int(x) for x in g) for g in images)
    if len(images) != len(source.generators):
        raise errors.NotAHomomorphism("one image per source generator is required")
    pool = set(target.elements())
    for g in images:
        if g not in pool:
            raise errors.NotAHomomorphism(f"{g} is not an element of the target group")
    table = {source.identity: target.identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        fx = table[x]
        for g, img in zip(source.generators, images):
            y = compose(x, g)
            fy = compose(fx, img)
            if y in table:
                if table[y] != fy:
                    raise errors.NotAHomomorphism("generator images violate a relation")
            else:
                table[y] = fy
                queue.append(y)
    hom = Homomorphism(source, target, images, table)
    if injective and len(set(table.values())) != len(table):
        raise errors.NotAHomomorphism("map is not injective")
    return hom


# -- presentations and coset enumeration ------------------------------------


def _invert_letter(x: str) -> str:
    return x.lower() if x.isupper() else x.upper()


def free_reduce(word: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for x in word:
        if out and out[-1] == _invert_letter(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[str]) -> tuple[str, ...]:
    return tuple(_invert_letter(x) for x in reversed(word))


@dataclass(frozen=True)
class Presentation:
    """Generators are lower-case names; the upper-case letter is the inverse."""

    generators: tuple[str, ...]
    relators: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        for g in self.generators:
            if not (g.isalpha() and g.islower()):
                raise errors.InvalidInput(f"generator name {g!r} must be lower-case letters")
        allowed = set(self.generators) | {g.upper() for g in self.generators}
        rels = []
        for r in self.relators:
            for x in r:
                if x not in allowed:
                    raise errors.InvalidInput(f"unknown letter {x!r} in relator")
            r = free_reduce(r)
            # cyclic reduction keeps the relator's conjugacy class
            while len(r) > 1 and r[0] == _invert_letter(r[-1]):
                r = r[1:-1]
            if not r:
                raise errors.InvalidInput("relator reduces to the empty word")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def __str__(self):
        rels = ", ".join(" ".join(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def parse_word(text: str, generators: Sequence[str] | None = None) -> tuple[str, ...]:
    """Parse ``"a b B"``, ``"abB"``, ``"a^2 b^-1"`` or ``"(ab)^3"`` style words."""
    text = text.strip()
    if not text or text == "1":
        return ()
    multi = generators is not None and any(len(g) > 1 for g in generators)
    return free_reduce(_parse_seq(text.replace("*", " "), multi))


def _parse_seq(text: str, multi: bool) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            depth, j = 1, i + 1
            while depth:
                if j >= len(text):
                    raise errors.InvalidInput("unbalanced parentheses in word")
                depth += {"(": 1, ")": -1}.get(text[j], 0)
                j += 1
            piece = _parse_seq(text[i + 1:j - 1], multi)
            i = j
        elif ch.isalpha():
            j = i + 1
            if multi:
                while j < len(text) and text[j].isalpha():
                    j += 1
            piece = [text[i:j]]
            i = j
        else:
            raise errors.InvalidInput(f"unexpected character {ch!r} in word")
        m = re.match(r"\^(-?\d+)", text[i:])
        if m:
            n = int(m.group(1))
            i += m.end()
            piece = piece * n if n >= 0 else list(invert_word(piece)) * (-n)
        out.extend(piece)
    return out


def parse_presentation(text: str) -> Presentation:
    """Parse ``<a, b | b a a B B A, ...>``."""
    m = re.fullmatch(r"\s*<(.*)\|(.*)>\s*", text, flags=re.S)
    if not m:
        raise errors.InvalidInput(f"cannot parse presentation {text!r}")
    gens = tuple(g.strip() for g in m.group(1).split(",") if g.strip())
    rel_text = m.group(2).strip()
    rels = [parse_word(r, gens) for r in rel_text.split(",")] if rel_text else []
    return Presentation(gens, tuple(r for r in rels))


@dataclass(frozen=True)
class CosetTable:
    index: int
    columns: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def act(self, coset: int, word: Sequence[str]) -> int:
        col = {x: i for i, x in enumerate(self.columns)}
        for x in word:
            coset = self.rows[coset][col[x]]
        return coset


@dataclass(frozen=True)
class Inconclusive:
    budget: int

    def __str__(self):
        return f"inconclusive: coset budget {self.budget} exhausted"


class _Enumerator:
    """HLT enumeration with coincidence processing and compaction."""

    def __init__(self, P: Presentation, H: Sequence[Sequence[str]], budget: int):
        self.cols = []
        for g in P.generators:
            self.cols.extend([g, g.upper()])
        self.col = {x: i for i, x in enumerate(self.cols)}
        self.inv = [i ^ 1 for i in range(len(self.cols))]
        self.relators = [[self.col[x] for x in r] for r in P.relators]
        self.subgroup = [[self.col[x] for x in free_reduce(w)] for w in H]
        self.budget = budget
        self.table: list[list[int | None]] = [[None] * len(self.cols)]
        self.parent = [0]
        self.defined = 1

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def new_coset(self) -> int:
        if self.defined >= self.budget:
            raise _OutOfBudget
        self.defined += 1
        self.table.append([None] * len(self.cols))
        self.parent.append(len(self.parent))
        return len(self.table) - 1

    def define(self, c: int, x: int) -> int:
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][self.inv[x]] = c
        return d

    def _merge(self, k: int, l: int, queue: list):
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x, f in enumerate(self.table[e]):
                if f is None:
                    continue
                ix = self.inv[x]
                self.table[f][ix] = None
                e1, f1 = self.find(e), self.find(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][ix] is not None:
                    self._merge(e1, self.table[f1][ix], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][ix] = e1

    def scan_and_fill(self, c: int, word: list[int]):
        n = len(word)
        while True:
            c = self.find(c)
            f, i = c, 0
            while i < n and self.table[f][word[i]] is not None:
                f = self.find(self.table[f][word[i]])
                i += 1
            if i == n:
                if f != c:
                    self.coincidence(f, c)
                return
            b, j = c, n - 1
            while j >= i and self.table[b][self.inv[word[j]]] is not None:
                b = self.find(self.table[b][self.inv[word[j]]])
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][self.inv[word[i]]] = f
                return
            self.define(f, word[i])

    def run(self):
        for w in self.subgroup:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.alive(c):
                for r in self.relators:
                    if not self.alive(c):
                        break
                    self.scan_and_fill(c, r)
                if self.alive(c):
                    for x in range(len(self.cols)):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1

    def compact(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        # renumber in breadth-first order from coset 0 for a standard table
        order = [0]
        pos = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            for x in range(len(self.cols)):
                d = self.find(self.table[c][x])
                if d not in pos:
                    pos[d] = len(order)
                    order.append(d)
            k += 1
        assert len(order) == len(live)
        rows = tuple(tuple(pos[self.find(self.table[c][x])] for x in range(len(self.cols)))
                     for c in order)
        return CosetTable(len(order), tuple(self.cols), rows)


class _OutOfBudget(Exception):
    pass


def todd_coxeter(P: Presentation, H: Sequence[Sequence[str]] = (),
                 budget: int = DEFAULT_ORBIT_BUDGET) -> CosetTable | Inconclusive:
    """Index of the subgroup generated by the words ``H``, with a coset table.

    ``budget`` bounds the total number of cosets ever defined.
    """
    if budget < 1:
        raise errors.InvalidInput("budget must be at least 1")
    allowed = set(P.generators) | {g.upper() for g in P.generators}
    for w in H:
        for x in w:
            if x not in allowed:
                raise errors.InvalidInput(f"unknown letter {x!r} in subgroup word")
    E = _Enumerator(P, H, budget)
    try:
        E.run()
    except _OutOfBudget:
        return Inconclusive(budget)
    return E.compact()


# -- Coxeter systems ---------------------------------------------------------


class CoxeterSystem:
    """Coxeter matrix over an index set; ``None`` (or ``"inf"``) stands for infinity."""

    def __init__(self, labels: Sequence, matrix: Sequence[Sequence]):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise errors.InvalidInput("Coxeter matrix must be square over the index set")
        m = [[_parse_m(x) for x in row] for row in matrix]
        for i in range(n):
            if m[i][i] != 1:
                raise errors.InvalidInput("Coxeter matrix diagonal must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise errors.InvalidInput("Coxeter matrix must be symmetric")
                if i != j and m[i][j] is not INF and m[i][j] < 2:
                    raise errors.InvalidInput("off-diagonal Coxeter entries must be >= 2")
        self.m = tuple(tuple(row) for row in m)
        self.index = {s: i for i, s in enumerate(self.labels)}
        self._nf_cache: dict = {}

    @classmethod
    def from_graph(cls, nodes: Sequence, edges: Iterable, k: int) -> "CoxeterSystem":
        """``m = k`` on edges of the graph, infinity elsewhere."""
        nodes = list(nodes)
        idx = {v: i for i, v in enumerate(nodes)}
        m = [[1 if i == j else INF for j in range(len(nodes))] for i in range(len(nodes))]
        for u, v in edges:
            m[idx[u]][idx[v]] = m[idx[v]][idx[u]] = k
        return cls(nodes, m)

    def __repr__(self):
        return f"CoxeterSystem({list(self.labels)}, {[list(r) for r in self.m]})"

    @property
    def rank(self) -> int:
        return len(self.labels)

    def order(self, s, t):
        return self.m[self.index[s]][self.index[t]]

    def is_right_angled(self) -> bool:
        return all(x in (1, 2, INF) for row in self.m for x in row)

    def matrix_json(self) -> list[list]:
        return [["inf" if x is INF else x for x in row] for row in self.m]


def _parse_m(x):
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(x, float) and x == float("inf"):
        return INF
    return int(x)


def _braid_moves(W: CoxeterSystem, w: tuple) -> Iterable[tuple]:
    n = len(w)
    for i in range(n - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = W.m[s][t]
        if m is INF or i + m > n:
            continue
        seg = w[i:i + m]
        if all(seg[j] == (s if j % 2 == 0 else t) for j in range(m)):
            alt = tuple(t if j % 2 == 0 else s for j in range(m))
            yield w[:i] + alt + w[i + m:]


def _normal_form_idx(W: CoxeterSystem, w: tuple, budget: int) -> tuple:
    while True:
        seen = {w}
        queue = deque([w])
        shrunk = None
        while queue:
            x = queue.popleft()
            for i in range(len(x) - 1):
                if x[i] == x[i + 1]:
                    shrunk = x[:i] + x[i + 2:]
                    break
            if shrunk is not None:
                break
            for y in _braid_moves(W, x):
                if y not in seen:
                    seen.add(y)
                    if len(seen) > budget:
                        raise errors.OrbitBudgetExceeded(
                            f"braid orbit exceeds {budget} words")
                    queue.append(y)
        if shrunk is None:
            return min(seen)
        w = shrunk


def coxeter_normal_form(W: CoxeterSystem, word: Sequence, budget: int = DEFAULT_ORBIT_BUDGET
                        ) -> tuple:
    """Shortlex-least reduced word (ordered by the index set) for the element."""
    try:
        w = tuple(W.index[s] for s in word)
    except KeyError as exc:
        raise errors.InvalidInput(f"letter {exc.args[0]!r} is not a Coxeter generator") from None
    if w not in W._nf_cache:
        W._nf_cache[w] = _normal_form_idx(W, w, budget)
    return tuple(W.labels[i] for i in W._nf_cache[w])


@dataclass(frozen=True)
class CoxeterBall:
    elements: tuple[tuple, ...]  # normal forms, ordered by length then shortlex
    edges: tuple[tuple[int, int, object], ...]  # (i, j, s) with element_j = element_i * s, i < j

    def counts_by_length(self) -> list[int]:
        out: list[int] = []
        for w in self.elements:
            while len(out) <= len(w):
                out.append(0)
            out[len(w)] += 1
        return out


def coxeter_ball(W: CoxeterSystem, r: int, budget: int = DEFAULT_ORBIT_BUDGET) -> CoxeterBall:
    if r < 0:
        raise errors.InvalidInput("radius must be non-negative")
    level = [()]
    found = {(): 0}
    order = [()]
    for _ in range(r):
        nxt = []
        for w in level:
            for s in range(W.rank):
                nf = _normal_form_idx(W, w + (s,), budget)
                if len(nf) == len(w) + 1 and nf not in found:
                    found[nf] = -1
                    nxt.append(nf)
        nxt.sort()
        for w in nxt:
            found[w] = len(order)
            order.append(w)
        level = nxt
    edges = set()
    for i, w in enumerate(order):
        for s in range(W.rank):
            nf = _normal_form_idx(W, w + (s,), budget)
            j = found.get(nf)
            if j is not None and i < j:
                edges.add((i, j, s))
    labelled = tuple(tuple(W.labels[x] for x in w) for w in order)
    return CoxeterBall(labelled, tuple((i, j, W.labels[s]) for i, j, s in sorted(edges)))


def spherical_pairs(W: CoxeterSystem) -> list[tuple]:
    out = [(s,) for s in W.labels]
    for i, j in combinations(range(W.rank), 2):
        if W.m[i][j] is not INF:
            out.append((W.labels[i], W.labels[j]))
    return out
