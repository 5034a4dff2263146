"""Confusion graph for one duplication of arbitrary length, at desk scale.

Two words are adjacent when some k has them sharing a k-duplication
descendant. Neighbourhoods are computed by duplicating ``x`` every possible
way and then undoing every possible duplication of the result; the counting
bound n(n-k+1)-1 is therefore checked, never assumed.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .alphabet import ComplementMap, Word, ceil_log
from .dup_channel import ball
from .errors import BudgetExceeded, PreconditionError
from .rcd_root import RootParams, is_root, iter_roots

ALL = "all"
ROOTS = "roots"
DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class GraphSpec:
    q: int
    n: int
    vertices: object = ALL  # ALL, ROOTS, or an explicit collection of words
    cmap: ComplementMap = field(default=None)  # type: ignore[assignment]
    m: Optional[int] = None
    k_max: Optional[int] = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if isinstance(self.vertices, str):
            if self.vertices not in (ALL, ROOTS):
                raise PreconditionError(f"unknown vertex selector {self.vertices!r}")
        else:
            words = frozenset(tuple(w) for w in self.vertices)
            if not words:
                raise PreconditionError("vertex set is empty")
            object.__setattr__(self, "vertices", words)
        if self.cmap is None:
            object.__setattr__(self, "cmap", ComplementMap.paired(self.q))
        if self.m is None:
            object.__setattr__(self, "m", max(ceil_log(self.q, self.n) + 1, 2))
        if self.k_max is None:
            object.__setattr__(self, "k_max", self.n)
        if self.k_max > self.n:
            raise PreconditionError("k_max cannot exceed n")

    @property
    def mode(self) -> str:
        return self.vertices if isinstance(self.vertices, str) else "explicit"

    def contains(self, w: Word) -> bool:
        if self.vertices == ALL:
            return True
        if self.vertices == ROOTS:
            return is_root(w, self.m, self.cmap)
        return w in self.vertices

    def vertex_list(self) -> list[Word]:
        if isinstance(self.vertices, str) and self.q**self.n > self.budget:
            raise BudgetExceeded(f"q^n = {self.q ** self.n} exceeds budget {self.budget}")
        if self.vertices == ALL:
            return list(itertools.product(range(self.q), repeat=self.n))
        if self.vertices == ROOTS:
            return list(iter_roots(RootParams(self.q, self.n, self.m, self.cmap)))
        return sorted(self.vertices)


def neighborhood(x: Word, k: int, spec: GraphSpec) -> set[Word]:
    """N_k(x; V): vertices other than x sharing a k-duplication descendant."""
    x = tuple(x)
    n = len(x)
    table = spec.cmap.table
    out: set[Word] = set()
    for end in range(k, n + 1):
        y = x[:end] + tuple(table[a] for a in reversed(x[end - k:end])) + x[end:]
        # every z with y in its k-ball: drop a block that is the RC of its left neighbour
        for j in range(0, n - k + 1):
            if all(y[j + k + s] == table[y[j + k - 1 - s]] for s in range(k)):
                z = y[: j + k] + y[j + 2 * k:]
                if z != x and spec.contains(z):
                    out.add(z)
    return out


def neighborhoods(x: Word, spec: GraphSpec) -> dict[int, set[Word]]:
    return {k: neighborhood(x, k, spec) for k in range(1, spec.k_max + 1)}


def degree(x: Word, spec: GraphSpec) -> int:
    nb = set()
    for s in neighborhoods(x, spec).values():
        nb |= s
    return len(nb)


def lemma6_bound(n: int, k: int) -> int:
    return n * (n - k + 1) - 1


def gv_quotient(q: int, n: int) -> float:
    """(q-1) q^(n-1) / (3 n^2 ceil(log_q n)) from the root-restricted degree bound."""
    return (q - 1) * q ** (n - 1) / (3 * n * n * ceil_log(q, n))


@dataclass
class GreedyReport:
    n: int
    q: int
    mode: str
    per_k_max_neighborhood: dict[int, int]
    max_degree: int
    alon_bound: float
    code_size: int
    redundancy: float
    vertex_count: int = 0
    gv_quotient: float = 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "mode": self.mode,
            "per_k_max_neighborhood": {str(k): v for k, v in self.per_k_max_neighborhood.items()},
            "max_degree": self.max_degree,
            "alon_bound": self.alon_bound,
            "code_size": self.code_size,
            "redundancy": self.redundancy,
            "vertex_count": self.vertex_count,
            "gv_quotient": self.gv_quotient,
        }


def build_graph(spec: GraphSpec) -> tuple[list[Word], dict[Word, set[Word]], dict[int, int]]:
    vertices = spec.vertex_list()
    adj: dict[Word, set[Word]] = {}
    per_k = {k: 0 for k in range(1, spec.k_max + 1)}
    entries = 0
    for x in vertices:
        nbs = neighborhoods(x, spec)
        union: set[Word] = set()
        for k, s in nbs.items():
            per_k[k] = max(per_k[k], len(s))
            union |= s
        entries += len(union)
        if entries > spec.budget:
            raise BudgetExceeded(f"adjacency exceeds {spec.budget} entries")
        adj[x] = union
    return vertices, adj, per_k


def greedy_code(spec: GraphSpec) -> tuple[list[Word], GreedyReport]:
    """Min-degree greedy independent set.

    Repeatedly takes a vertex of smallest degree in the remaining graph
    (ties broken lexicographically) and deletes it with its neighbours. This
    rule guarantees at least sum 1/(d(v)+1) vertices.
    """
    vertices, adj, per_k = build_graph(spec)
    alive = set(vertices)
    deg = {v: len(adj[v]) for v in vertices}
    heap = [(deg[v], v) for v in vertices]
    heapq.heapify(heap)
    code: list[Word] = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue
        code.append(v)
        removed = {v} | (adj[v] & alive)
        alive -= removed
        touched = set()
        for u in removed:
            for w in adj[u]:
                if w in alive:
                    deg[w] -= 1
                    touched.add(w)
        for w in touched:
            heapq.heappush(heap, (deg[w], w))
    max_degree = max((len(adj[v]) for v in vertices), default=0)
    alon = sum(1.0 / (len(adj[v]) + 1) for v in vertices)
    size = len(code)
    report = GreedyReport(
        n=spec.n,
        q=spec.q,
        mode=spec.mode,
        per_k_max_neighborhood=per_k,
        max_degree=max_degree,
        alon_bound=alon,
        code_size=size,
        redundancy=spec.n - math.log(size, spec.q) if size else float("inf"),
        vertex_count=len(vertices),
        gv_quotient=gv_quotient(spec.q, spec.n),
    )
    return sorted(code), report


def balls_disjoint(code: Iterable[Word], k: int, cmap: ComplementMap) -> bool:
    """Check pairwise disjointness of the single k-duplication balls."""
    owner: dict[Word, Word] = {}
    for c in code:
        for y in ball(c, k, 1, cmap):
            if owner.setdefault(y, c) != c:
                return False
    return True
