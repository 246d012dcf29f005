"""Edge shifts: subshifts of finite type presented by nonnegative integer
adjacency matrices on a finite directed multigraph.

Edges are the alphabet.  All values are immutable after construction and every
operation is a pure function, so the module is safe for concurrent use.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .budgets import Budget, check, default_budget
from .errors import (EmptyShiftError, IterationCapError, ParseError,
                     ReducibleShiftError)

# Symbols for small alphabets stay single characters so words print compactly.
_CHARS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

Word = tuple  # tuple of edge symbols (strings)


def _edge_symbols(count: int) -> list:
    if count <= len(_CHARS):
        return [_CHARS[i] for i in range(count)]
    return [f"e{i}" for i in range(count)]


@dataclass(frozen=True)
class Edge:
    symbol: str
    tail: int
    head: int


class EdgeShift:
    """An essential directed multigraph presenting an SFT.

    ``states`` are identifier strings; ``adjacency[i][j]`` counts parallel
    edges from state i to state j.  The edge alphabet is derived from the
    adjacency in (tail, head, parallel-index) order.

    ``parent``/``parent_paths`` are set when this shift presents a power or a
    class restriction of another shift: each edge symbol then maps back to a
    path (a word) of the parent shift.
    """

    def __init__(self, states: Sequence[str], adjacency: Sequence[Sequence[int]],
                 normalization_log: Sequence[str] = (),
                 parent: Optional["EdgeShift"] = None,
                 parent_paths: Optional[dict] = None):
        states = tuple(str(s) for s in states)
        n = len(states)
        if len(adjacency) != n or any(len(row) != n for row in adjacency):
            raise ParseError("adjacency matrix is not square of size |states|")
        for row in adjacency:
            for a in row:
                if not isinstance(a, int) or a < 0:
                    raise ParseError(f"adjacency entries must be nonnegative integers, got {a!r}")
        if n == 0:
            raise EmptyShiftError("empty graph")
        self.states = states
        self.adjacency = tuple(tuple(int(a) for a in row) for row in adjacency)
        self.normalization_log = tuple(normalization_log)
        self.parent = parent
        self.parent_paths = dict(parent_paths) if parent_paths else None

        symbols = _edge_symbols(sum(a for row in self.adjacency for a in row))
        edges = []
        k = 0
        for i in range(n):
            for j in range(n):
                for _ in range(self.adjacency[i][j]):
                    edges.append(Edge(symbols[k], i, j))
                    k += 1
        self.edges = tuple(edges)
        self.alphabet = tuple(e.symbol for e in edges)
        self._by_symbol = {e.symbol: e for e in edges}
        self.out_edges = tuple(tuple(e.symbol for e in edges if e.tail == i) for i in range(n))
        self.in_edges = tuple(tuple(e.symbol for e in edges if e.head == i) for i in range(n))
        for i in range(n):
            if not self.out_edges[i] or not self.in_edges[i]:
                raise ParseError(f"state {states[i]!r} is not essential; normalize first")

    # -- basic accessors -------------------------------------------------

    @property
    def n_states(self) -> int:
        return len(self.states)

    def tail(self, symbol: str) -> int:
        return self._by_symbol[symbol].tail

    def head(self, symbol: str) -> int:
        return self._by_symbol[symbol].head

    def follows(self, a: str, b: str) -> bool:
        """True when edge b may follow edge a (head of a = tail of b)."""
        return self._by_symbol[a].head == self._by_symbol[b].tail

    def is_admissible(self, word: Word) -> bool:
        return all(self.follows(a, b) for a, b in zip(word, word[1:])) and \
            all(w in self._by_symbol for w in word)

    def matrix_hash(self) -> str:
        doc = {"states": list(self.states), "adjacency": [list(r) for r in self.adjacency]}
        blob = json.dumps(doc, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "states": list(self.states),
            "adjacency": [list(r) for r in self.adjacency],
            "alphabet": list(self.alphabet),
            "normalization_log": list(self.normalization_log),
            "matrix_hash": self.matrix_hash(),
        }

    def __repr__(self) -> str:
        return f"EdgeShift(states={self.states!r}, adjacency={self.adjacency!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeShift) and self.states == other.states \
            and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.states, self.adjacency))


# -- construction and parsing -------------------------------------------


def _essential_part(states: Sequence[str], adjacency: Sequence[Sequence[int]]):
    """Iteratively drop states without outgoing or incoming edges."""
    states = list(states)
    adj = [list(row) for row in adjacency]
    removed = []
    changed = True
    while changed and states:
        changed = False
        n = len(states)
        keep = []
        for i in range(n):
            if sum(adj[i]) == 0 or sum(adj[j][i] for j in range(n)) == 0:
                removed.append(states[i])
                changed = True
            else:
                keep.append(i)
        if changed:
            states = [states[i] for i in keep]
            adj = [[adj[i][j] for j in keep] for i in keep]
    return states, adj, removed


def make_edge_shift(states: Sequence[str], adjacency: Sequence[Sequence[int]]) -> EdgeShift:
    """Normalize to the essential subgraph and build the shift."""
    for row in adjacency:
        for a in row:
            if not isinstance(a, int):
                raise ParseError(f"adjacency entries must be integers, got {a!r}")
            if a < 0:
                raise ParseError(f"negative adjacency entry {a}")
    if len(adjacency) != len(states) or any(len(r) != len(states) for r in adjacency):
        raise ParseError("adjacency matrix is not square of size |states|")
    kept, adj, removed = _essential_part(states, adjacency)
    if not kept:
        raise EmptyShiftError("graph is empty after removing non-essential states")
    log = tuple(f"removed non-essential state {s}" for s in removed)
    return EdgeShift(kept, adj, normalization_log=log)


def parse_edge_shift(text: str) -> EdgeShift:
    """Parse matrix text: rows split on "/" or newlines, entries on spaces."""
    text = text.strip()
    if not text:
        raise ParseError("empty input")
    if text.lstrip().startswith("{"):
        return edge_shift_from_document(json.loads(text))
    rows = [r for chunk in text.split("/") for r in chunk.splitlines()]
    rows = [r.strip() for r in rows if r.strip()]
    matrix = []
    for r in rows:
        try:
            matrix.append([int(x) for x in r.split()])
        except ValueError as exc:
            raise ParseError(f"non-integer entry in row {r!r}") from exc
    widths = {len(r) for r in matrix}
    if len(widths) != 1 or widths != {len(matrix)}:
        raise ParseError("matrix is not square")
    states = [str(i) for i in range(len(matrix))]
    return make_edge_shift(states, matrix)


def edge_shift_from_document(doc: dict) -> EdgeShift:
    try:
        states = doc["states"]
        adjacency = doc["adjacency"]
    except (KeyError, TypeError) as exc:
        raise ParseError("document must contain 'states' and 'adjacency'") from exc
    return make_edge_shift([str(s) for s in states], adjacency)


def full_shift(k: int) -> EdgeShift:
    """The full shift on k symbols: one state, k self-loops."""
    return make_edge_shift(["0"], [[k]])


# -- integer matrix helpers (exact) ---------------------------------------


def mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_pow(a, n: int):
    size = len(a)
    result = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    base = [list(r) for r in a]
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


# -- connectivity, period, mixing -----------------------------------------


def _bool_adjacency(sft: EdgeShift):
    return [[a > 0 for a in row] for row in sft.adjacency]


def _reachable(adj_bool, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, has in enumerate(adj_bool[u]):
            if has and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def strongly_connected_components(sft: EdgeShift) -> list:
    """SCCs as sorted lists of state indices, in ascending order of minimum."""
    n = sft.n_states
    fwd = _bool_adjacency(sft)
    rev = [[fwd[j][i] for j in range(n)] for i in range(n)]
    remaining = set(range(n))
    comps = []
    while remaining:
        s = min(remaining)
        comp = _reachable(fwd, s) & _reachable(rev, s) & remaining
        comps.append(sorted(comp))
        remaining -= comp
    return sorted(comps)


def is_irreducible(sft: EdgeShift) -> bool:
    """True iff the underlying digraph is strongly connected."""
    fwd = _bool_adjacency(sft)
    n = sft.n_states
    if len(_reachable(fwd, 0)) != n:
        return False
    rev = [[fwd[j][i] for j in range(n)] for i in range(n)]
    return len(_reachable(rev, 0)) == n


def bfs_levels(sft: EdgeShift, start: int = 0) -> list:
    levels = [-1] * sft.n_states
    levels[start] = 0
    queue = [start]
    adj = _bool_adjacency(sft)
    while queue:
        nxt = []
        for u in queue:
            for v, has in enumerate(adj[u]):
                if has and levels[v] < 0:
                    levels[v] = levels[u] + 1
                    nxt.append(v)
        queue = nxt
    return levels


def period(sft: EdgeShift) -> int:
    """gcd of all cycle lengths; computed from BFS level differences."""
    if not is_irreducible(sft):
        raise ReducibleShiftError("period requires an irreducible edge shift")
    levels = bfs_levels(sft, 0)
    g = 0
    for u in range(sft.n_states):
        for v in range(sft.n_states):
            if sft.adjacency[u][v]:
                g = math.gcd(g, levels[u] + 1 - levels[v])
    return abs(g) if g else 1


def period_by_cycles(sft: EdgeShift) -> int:
    """Test oracle: gcd of the lengths of all simple cycles (exhaustive DFS)."""
    if not is_irreducible(sft):
        raise ReducibleShiftError("period requires an irreducible edge shift")
    n = sft.n_states
    adj = _bool_adjacency(sft)
    g = 0
    for root in range(n):
        # simple paths from root using states >= root only (canonical cycles)
        stack = [(root, [root])]
        while stack:
            u, path = stack.pop()
            for v, has in enumerate(adj[u]):
                if not has or v < root:
                    continue
                if v == root:
                    g = math.gcd(g, len(path))
                elif v not in path:
                    stack.append((v, path + [v]))
    return g if g else 1


def is_mixing(sft: EdgeShift) -> bool:
    return is_irreducible(sft) and period(sft) == 1


# -- entropy ---------------------------------------------------------------


@dataclass(frozen=True)
class EntropyResult:
    log_value: float
    perron_value: float
    iterations: int

    def to_document(self) -> dict:
        return {"schema_version": 1, "entropy": self.log_value,
                "perron_eigenvalue": self.perron_value, "iterations": self.iterations}


def _perron_irreducible(matrix, tol: float, cap: int):
    """Perron value of an irreducible nonnegative matrix via power iteration
    on A + I with Collatz-Wielandt bounds (certified enclosure)."""
    n = len(matrix)
    if n == 1:
        return float(matrix[0][0]), 1
    shifted = [[float(matrix[i][j]) + (1.0 if i == j else 0.0) for j in range(n)]
               for i in range(n)]
    v = [1.0] * n
    for it in range(1, cap + 1):
        w = [sum(shifted[i][j] * v[j] for j in range(n)) for i in range(n)]
        ratios = [w[i] / v[i] for i in range(n)]
        lo, hi = min(ratios), max(ratios)
        if hi - lo <= tol * lo:
            return (lo + hi) / 2.0 - 1.0, it
        norm = max(w)
        v = [x / norm for x in w]
    raise IterationCapError(f"power iteration did not converge in {cap} steps")


def entropy(sft: EdgeShift, tol: float = 1e-12, iteration_cap: int = 200_000) -> EntropyResult:
    """log of the Perron eigenvalue of the adjacency matrix.

    For reducible shifts the value is the maximum over strongly connected
    components (the spectral radius of the full matrix).
    """
    comps = strongly_connected_components(sft)
    best = 0.0
    its = 0
    for comp in comps:
        sub = [[sft.adjacency[i][j] for j in comp] for i in comp]
        if len(comp) == 1 and sub[0][0] == 0:
            continue
        lam, it = _perron_irreducible(sub, tol, iteration_cap)
        its += it
        best = max(best, lam)
    if best <= 0.0:
        raise ReducibleShiftError("no cycles; entropy undefined")
    return EntropyResult(math.log(best), best, its)


def charpoly_coefficients(matrix) -> list:
    """Exact characteristic polynomial coefficients (Faddeev-LeVerrier),
    returned as [c_0, ..., c_n] with p(x) = sum c_k x^k, c_n = 1."""
    from fractions import Fraction
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    coeffs = [Fraction(1)]  # leading coefficient of x^n
    for k in range(1, n + 1):
        # M_k = A*M_{k-1} + c_{n-k+1} I
        if k == 1:
            m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        else:
            am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
            for i in range(n):
                am[i][i] += coeffs[-1]
            m = am
        trace = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs.append(-trace / k)
    return [c for c in reversed(coeffs)]


def perron_root_by_charpoly(matrix, tol: float = 1e-13) -> float:
    """Independent oracle: largest real root of the characteristic polynomial,
    located by downward scan plus bisection."""
    coeffs = charpoly_coefficients(matrix)

    def p(x: float) -> float:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + float(c)
        return acc

    hi = max(sum(row) for row in matrix) + 1.0
    x = hi
    step = 1.0 / 64.0
    while x > -step and p(x) > 0:
        x -= step
    lo, hi = x, x + step
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if p(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    return (lo + hi) / 2.0


# -- power shifts ----------------------------------------------------------


def power_shift(sft: EdgeShift, n: int, include_paths: bool = True,
                budget: Optional[Budget] = None) -> EdgeShift:
    """Present (X, sigma^n): same states, edges are the length-n paths.

    When ``include_paths`` is set, each new edge carries the parent path it
    encodes, so points of the power shift map back to points of the original.
    """
    if n < 1:
        raise ParseError("power must be >= 1")
    budget = budget or default_budget()
    an = mat_pow([list(r) for r in sft.adjacency], n)
    total = sum(sum(r) for r in an)
    check(total, budget.path_count, "power shift path count")
    if not include_paths:
        return EdgeShift(sft.states, an, parent=sft, parent_paths=None)

    # enumerate length-n paths grouped by (tail, head), lexicographic in symbols
    paths_by_pair: dict = {}
    for start in range(sft.n_states):
        frontier = [((), start)]
        for _ in range(n):
            nxt = []
            for word, at in frontier:
                for sym in sft.out_edges[at]:
                    nxt.append((word + (sym,), sft.head(sym)))
            frontier = nxt
        for word, end in frontier:
            paths_by_pair.setdefault((start, end), []).append(word)
    for key in paths_by_pair:
        paths_by_pair[key].sort()
        assert len(paths_by_pair[key]) == an[key[0]][key[1]]

    result = EdgeShift(sft.states, an, parent=sft, parent_paths={})
    # assign parent paths following the canonical edge enumeration order
    mapping = {}
    counters = {key: 0 for key in paths_by_pair}
    for e in result.edges:
        key = (e.tail, e.head)
        mapping[e.symbol] = paths_by_pair[key][counters[key]]
        counters[key] += 1
    result.parent_paths = mapping
    return result


# -- language enumeration ---------------------------------------------------


@dataclass(frozen=True)
class LanguageTable:
    """Complete sorted enumeration of admissible words up to max_length."""
    max_length: int
    by_length: dict = field(repr=False)

    def words(self, length: int) -> tuple:
        return self.by_length[length]

    def count(self, length: int) -> int:
        return len(self.by_length[length])


def word_count(sft: EdgeShift, length: int) -> int:
    """Exact count of admissible words: sum of entries of A^length."""
    an = mat_pow([list(r) for r in sft.adjacency], length)
    return sum(sum(r) for r in an)


def words_of_length(sft: EdgeShift, length: int,
                    budget: Optional[Budget] = None) -> tuple:
    """All admissible words of the given length, lexicographically sorted."""
    if length < 0:
        raise ParseError("length must be >= 0")
    if length == 0:
        return ((),)
    budget = budget or default_budget()
    check(word_count(sft, length), budget.word_count, "word count")
    frontier = [((sym,), sft.head(sym)) for sym in sft.alphabet]
    for _ in range(length - 1):
        nxt = []
        for word, at in frontier:
            for sym in sft.out_edges[at]:
                nxt.append((word + (sym,), sft.head(sym)))
        frontier = nxt
    return tuple(sorted(w for w, _ in frontier))


def words(sft: EdgeShift, max_length: int, budget: Optional[Budget] = None) -> LanguageTable:
    if max_length < 1:
        raise ParseError("max_length must be >= 1")
    table = {l: words_of_length(sft, l, budget) for l in range(1, max_length + 1)}
    return LanguageTable(max_length, table)


def state_words(sft: EdgeShift, length: int) -> tuple:
    """Words in the vertex labeling: admissible state sequences of the given
    length (length-1 words are single states).  Useful for 0/1 matrices
    ingested as vertex shifts."""
    if length < 1:
        raise ParseError("length must be >= 1")
    seqs = {(sft.states[i],) for i in range(sft.n_states)}
    if length == 1:
        return tuple(sorted(seqs))
    out = set()
    for w in words_of_length(sft, length - 1):
        seq = (sft.states[sft.tail(w[0])],) + tuple(sft.states[sft.head(s)] for s in w)
        out.add(seq)
    return tuple(sorted(out))


def word_to_str(word: Word) -> str:
    """Render a word; single-character alphabets join directly."""
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)
