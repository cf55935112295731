"""Bruhat-Tits objects from homothety classes of Z_p-lattices.

A lattice in ``Q_p^n`` is stored by integer generators (columns).  When the
lattice lies between ``p^N Z_p^n`` and ``Z_p^n`` it is determined by its
integer points, a sublattice of ``Z^n`` of p-power index, so everything
reduces to exact integer Hermite normal forms.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .. import errors
from ..complex import Arc, LinkGraph, PolygonalComplex

MAX_PRIME = 13
MAX_TREE_RADIUS = 6
SL3_PRIMES = (2, 3, 5)

Matrix = tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def valuation(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _columns(M) -> list[list[int]]:
    rows = [list(map(int, r)) for r in M]
    return [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]


def hermite_form(cols: list[list[int]], n: int) -> list[list[int]]:
    """Column Hermite normal form of a full-rank integer lattice.

    Result is upper triangular (column ``j`` is zero below row ``j``) with
    positive diagonal and entries of row ``i`` right of the diagonal reduced
    into ``[0, d_i)``.  Returned as a list of columns.
    """
    work = [list(c) for c in cols if any(c)]
    basis: list[list[int] | None] = [None] * n
    for i in reversed(range(n)):
        live = [c for c in work if c[i]]
        rest = [c for c in work if not c[i]]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[i]))
            pivot = live[0]
            nxt = [pivot]
            for c in live[1:]:
                q = c[i] // pivot[i]
                c = [a - q * b for a, b in zip(c, pivot)]
                (nxt if c[i] else rest).append(c)
            live = nxt
        if not live:
            raise errors.InvalidInput("lattice generators do not span a full-rank lattice")
        pivot = live[0]
        if pivot[i] < 0:
            pivot = [-a for a in pivot]
        basis[i] = pivot
        work = rest
    for j in range(n):
        for i in reversed(range(j)):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return basis  # type: ignore[return-value]


def _contains(basis: list[list[int]], x: list[int]) -> bool:
    """Membership of an integer vector in the lattice of an upper-triangular basis."""
    x = list(x)
    for i in reversed(range(len(basis))):
        d = basis[i][i]
        if x[i] % d:
            return False
        q = x[i] // d
        if q:
            x = [a - q * b for a, b in zip(x, basis[i])]
    return True


@dataclass(frozen=True, order=True)
class PadicLatticeClass:
    """Canonical representative of a homothety class of lattices.

    The matrix is the column Hermite form of the integer points of the unique
    representative contained in ``Z_p^n`` but not in ``p Z_p^n``; its
    diagonal entries are ``p^{a_j}``.
    """

    p: int
    matrix: Matrix
    N: int = field(default=0, compare=False)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def columns(self) -> list[list[int]]:
        return _columns(self.matrix)

    def exponents(self) -> tuple[int, ...]:
        return tuple(valuation(self.matrix[j][j], self.p) for j in range(self.n))

    def elementary_divisors(self) -> tuple[int, ...]:
        """Exponents ``e_1 <= ... <= e_n`` of the Smith form."""
        M, p, n = self.matrix, self.p, self.n
        out, prev = [], 0
        for size in range(1, n + 1):
            best = None
            for rows in combinations(range(n), size):
                for cols in combinations(range(n), size):
                    v = valuation(_det([[M[r][c] for c in cols] for r in rows]), p)
                    if v is not None and (best is None or v < best):
                        best = v
            out.append(best - prev)
            prev = best
        return tuple(out)

    def profile(self) -> tuple[int, ...]:
        return tuple(self.p ** e for e in self.elementary_divisors())

    def contains(self, other: "PadicLatticeClass", shift: int = 0) -> bool:
        """Whether ``p^shift`` times ``other``'s representative lies in this one."""
        basis = self.columns()
        scale = self.p ** shift
        return all(_contains(basis, [scale * a for a in c]) for c in other.columns())

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "profile": list(self.profile())}


def _det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n))


def canonical_class(p: int, generators, N: int) -> PadicLatticeClass:
    """Canonical class of the Z_p-lattice spanned by integer ``generators`` (columns).

    ``generators`` is a matrix given row by row.  ``N`` is the working
    precision: the lattice must contain ``p^(N-1) Z_p^n`` once scaled into
    ``Z_p^n``, otherwise :class:`PrecisionExceeded` is raised.
    """
    rows = [list(map(int, r)) for r in generators]
    n = len(rows)
    cols = _columns(rows)
    big = p ** N
    cols += [[big if i == j else 0 for i in range(n)] for j in range(n)]
    basis = hermite_form(cols, n)
    shift = min(valuation(x, p) for c in basis for x in c if x)
    if shift >= N:
        raise errors.PrecisionExceeded(f"lattice lies inside p^{N} Z_p^n")
    if shift:
        scale = p ** shift
        basis = [[x // scale for x in c] for c in basis]
    top = p ** (N - 1 - shift)
    for j in range(n):
        unit = [top if i == j else 0 for i in range(n)]
        if not _contains(basis, unit):
            raise errors.PrecisionExceeded(
                f"lattice is not determined modulo p^{N}; raise the precision")
    matrix = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
    return PadicLatticeClass(p, matrix, N)


def standard_class(p: int, n: int, N: int) -> PadicLatticeClass:
    return canonical_class(p, [[int(i == j) for j in range(n)] for i in range(n)], N)


def incident(A: PadicLatticeClass, B: PadicLatticeClass) -> bool:
    """Distinct classes with representatives ``pA ⊂ B' ⊂ A``.

    For canonical representatives only ``B' = B`` or ``B' = pB`` can work.
    """
    if A == B:
        return False
    for t in (0, 1):
        if A.contains(B, t) and B.contains(A, 1 - t):
            return True
    return False


def _projective_subspaces(p: int, n: int, dim: int) -> list[list[tuple[int, ...]]]:
    """Bases in reduced echelon form of the ``dim``-dimensional subspaces of F_p^n."""
    out = []
    for pivots in combinations(range(n), dim):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n)
                if c not in pivots]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            out.append([tuple(r) for r in rows])
    return out


def neighbours(L: PadicLatticeClass, N: int) -> list[PadicLatticeClass]:
    """Classes ``L'`` with ``pL ⊂ L' ⊊ L``, one for each proper nonzero subspace of L/pL."""
    p, n = L.p, L.n
    cols = L.columns()
    out = set()
    for dim in range(1, n):
        for U in _projective_subspaces(p, n, dim):
            gens = [[p * x for x in c] for c in cols]
            for u in U:
                gens.append([sum(u[j] * cols[j][i] for j in range(n)) for i in range(n)])
            rows = [[g[i] for g in gens] for i in range(n)]
            out.add(canonical_class(p, rows, N))
    return sorted(out)


@dataclass(frozen=True)
class LatticeBall:
    """A ball in the building as a 1-complex, with the class of every vertex."""

    complex: PolygonalComplex
    classes: tuple[PadicLatticeClass, ...]
    depth: tuple[int, ...]

    def level_counts(self) -> list[int]:
        out = [0] * (max(self.depth) + 1)
        for d in self.depth:
            out[d] += 1
        return out

    def annotations(self) -> dict:
        return {"classes": {str(v): c.to_json() for v, c in enumerate(self.classes)},
                "depth": {str(v): d for v, d in enumerate(self.depth)}}


def _check_prime(p: int):
    if not is_prime(p):
        raise errors.InvalidInput(f"{p} is not prime")


def sl2_tree_ball(p: int, r: int) -> LatticeBall:
    """Ball of radius ``r`` around the standard class in the tree of SL(2, Q_p)."""
    _check_prime(p)
    if p > MAX_PRIME:
        raise errors.UnsupportedPrime(f"primes above {MAX_PRIME} are not supported")
    if not 0 <= r <= MAX_TREE_RADIUS:
        raise errors.InvalidInput(f"radius must be between 0 and {MAX_TREE_RADIUS}")
    N = 2 * r + 2
    root = standard_class(p, 2, N)
    index = {root: 0}
    classes, depth = [root], [0]
    edges = {}
    queue = deque([root])
    while queue:
        L = queue.popleft()
        i = index[L]
        if depth[i] == r:
            continue
        for M in neighbours(L, N):
            if M not in index:
                index[M] = len(classes)
                classes.append(M)
                depth.append(depth[i] + 1)
                queue.append(M)
            j = index[M]
            if i < j:
                edges[len(edges)] = (i, j)
    boundary = frozenset(v for v, d in enumerate(depth) if d == r)
    X = PolygonalComplex(tuple(range(len(classes))), edges, {}, boundary)
    return LatticeBall(X, tuple(classes), tuple(depth))


def sl3_vertex_link(p: int) -> LinkGraph:
    """Link of the standard vertex in the building of SL(3, Q_p).

    Nodes are the adjacent classes, arcs join incident pairs (the chambers
    through the base vertex) and carry the equilateral angle π/3.
    """
    _check_prime(p)
    if p not in SL3_PRIMES:
        raise errors.UnsupportedPrime(f"the SL(3) link is supported for p in {SL3_PRIMES}")
    N = 4
    base = standard_class(p, 3, N)
    nodes = sorted(neighbours(base, N), key=lambda c: (c.profile(), c.matrix))
    arcs = []
    for a, b in combinations(nodes, 2):
        if incident(a, b):
            arcs.append(Arc((a, b), Fraction(1, 3), len(arcs)))
    return LinkGraph(tuple(nodes), tuple(arcs), base)
