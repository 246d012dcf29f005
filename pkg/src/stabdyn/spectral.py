"""Rational eigenvalues, cyclic partitions, Smale decompositions and the
transitive/eigenvalue factorization of shift powers, for irreducible edge
shifts.

For an irreducible SFT the rational eigenvalue set equals the set of divisors
of the period, and cyclic almost-partitions coincide with genuine cyclic
partitions; the number-theoretic formulas below all carry a graph-level
cross-check (``verify=True``) through strong connectivity of power shifts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import (NoPowerDecompositionError, NoSuchEigenvalueError,
                     ReducibleShiftError, VerificationError)
from .sft import (EdgeShift, bfs_levels, is_irreducible, is_mixing, period,
                  power_shift)


def divisors(n: int) -> tuple:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def rational_eigs(sft: EdgeShift) -> frozenset:
    """Eig(sigma): q >= 1 such that e^{2 pi i / q} is an eigenvalue.

    For an irreducible edge shift this is exactly the divisor set of the
    period.
    """
    return frozenset(divisors(period(sft)))


@dataclass(frozen=True)
class CyclicPartition:
    """Ordered state classes realizing the partition (T^k X_m : 0 <= k < m).

    Class k holds the states at BFS level congruent to k mod m from the base
    state (the lowest identifier), so the base state always lies in class 0.
    X_m is the union of cylinders over edges leaving class-0 states.
    """
    size: int
    classes: tuple  # tuple of frozenset of state indices
    matrix_hash: str
    base_class_index: int = 0

    def class_of_state(self, state: int) -> int:
        for k, cls in enumerate(self.classes):
            if state in cls:
                return k
        raise ValueError(f"state {state} not in any class")

    def to_document(self, sft: EdgeShift) -> dict:
        return {
            "schema_version": 1,
            "size": self.size,
            "classes": [sorted(sft.states[i] for i in cls) for cls in self.classes],
            "base_class_index": self.base_class_index,
            "matrix_hash": self.matrix_hash,
        }


def cyclic_partition(sft: EdgeShift, m: int) -> CyclicPartition:
    """The canonical size-m cyclic partition (BFS levels mod m)."""
    p = period(sft)
    if m < 1 or p % m != 0:
        raise NoSuchEigenvalueError(f"{m} is not a rational eigenvalue (period {p})")
    levels = bfs_levels(sft, 0)
    classes = tuple(frozenset(v for v in range(sft.n_states) if levels[v] % m == k)
                    for k in range(m))
    part = CyclicPartition(m, classes, sft.matrix_hash())
    _validate_partition(sft, part)
    return part


def _validate_partition(sft: EdgeShift, part: CyclicPartition) -> None:
    seen = set()
    for cls in part.classes:
        if seen & cls:
            raise VerificationError("partition classes overlap")
        seen |= cls
    if seen != set(range(sft.n_states)):
        raise VerificationError("partition classes do not cover the states")
    m = part.size
    lookup = {v: k for k, cls in enumerate(part.classes) for v in cls}
    for e in sft.edges:
        if lookup[e.head] != (lookup[e.tail] + 1) % m:
            raise VerificationError("edge does not advance the class by one")
    if 0 not in part.classes[0]:
        raise VerificationError("base state missing from class 0")


def coarsen_partition(part: CyclicPartition, p: int) -> CyclicPartition:
    """Merge a size-m partition into the size-p one (p | m): output class k is
    the union of input classes k, k+p, k+2p, ..."""
    m = part.size
    if p < 1 or m % p != 0:
        raise NoSuchEigenvalueError(f"{p} does not divide partition size {m}")
    classes = tuple(frozenset().union(*(part.classes[j] for j in range(k, m, p)))
                    for k in range(p))
    return CyclicPartition(p, classes, part.matrix_hash)


def exhaustive_partition_search(sft: EdgeShift, m: int) -> Optional[tuple]:
    """Test oracle: search all class assignments (base state fixed in class 0)
    for a size-m cyclic state partition.  Returns the classes or None."""
    if not is_irreducible(sft):
        raise ReducibleShiftError("partition search requires irreducibility")
    n = sft.n_states
    if m == 1:
        return (frozenset(range(n)),)
    edges = [(e.tail, e.head) for e in sft.edges]
    for assign_rest in itertools.product(range(m), repeat=n - 1):
        assign = (0,) + assign_rest
        if len(set(assign)) != m:
            continue
        if all((assign[u] + 1) % m == assign[v] for u, v in edges):
            return tuple(frozenset(v for v in range(n) if assign[v] == k)
                         for k in range(m))
    return None


# -- Smale decomposition ----------------------------------------------------


@dataclass(frozen=True)
class SmaleDecomposition:
    """Splitting into period-many cyclically permuted clopen pieces, each
    mixing for the corresponding shift power."""
    period: int
    component_shift: EdgeShift
    partition: CyclicPartition
    path_dictionary: dict  # component edge symbol -> parent path (word)

    def to_document(self, sft: EdgeShift) -> dict:
        return {
            "schema_version": 1,
            "period": self.period,
            "component": self.component_shift.to_document(),
            "partition": self.partition.to_document(sft),
            "path_dictionary": {sym: list(w) for sym, w in sorted(self.path_dictionary.items())},
            "matrix_hash": sft.matrix_hash(),
        }


def class_restriction(sft: EdgeShift, part: CyclicPartition, power: int) -> EdgeShift:
    """Edge shift presenting (X_0, sigma^power restricted), where X_0 is the
    class-0 piece of ``part``.  Requires part.size | power so length-``power``
    paths from class 0 return to class 0."""
    if power % part.size != 0:
        raise NoSuchEigenvalueError("power must be a multiple of the partition size")
    class0 = sorted(part.classes[0])
    index_of = {s: i for i, s in enumerate(class0)}
    paths_by_pair: dict = {}
    for start in class0:
        frontier = [((), start)]
        for _ in range(power):
            nxt = []
            for word, at in frontier:
                for sym in sft.out_edges[at]:
                    nxt.append((word + (sym,), sft.head(sym)))
            frontier = nxt
        for word, end in frontier:
            if end not in index_of:
                raise VerificationError("length-power path escaped class 0")
            paths_by_pair.setdefault((index_of[start], index_of[end]), []).append(word)
    k = len(class0)
    adjacency = [[len(paths_by_pair.get((i, j), [])) for j in range(k)] for i in range(k)]
    for key in paths_by_pair:
        paths_by_pair[key].sort()
    result = EdgeShift([sft.states[s] for s in class0], adjacency,
                       parent=sft, parent_paths={})
    mapping = {}
    counters = {key: 0 for key in paths_by_pair}
    for e in result.edges:
        key = (e.tail, e.head)
        mapping[e.symbol] = paths_by_pair[key][counters[key]]
        counters[key] += 1
    result.parent_paths = mapping
    return result


def smale(sft: EdgeShift) -> SmaleDecomposition:
    """m = period; the component presents (X_m, sigma^m restricted) and is
    mixing."""
    m = period(sft)
    part = cyclic_partition(sft, m)
    component = class_restriction(sft, part, m)
    if not is_mixing(component):
        raise VerificationError("Smale component is not mixing")
    return SmaleDecomposition(m, component, part, dict(component.parent_paths))


# -- transitivity of powers and the k*l factorization ------------------------


def is_power_transitive(sft: EdgeShift, n: int, verify: bool = False) -> bool:
    """True iff sigma^n acts transitively, i.e. gcd(n, period) = 1.

    With ``verify`` the answer is cross-checked against strong connectivity of
    the n-th power shift.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    answer = math.gcd(n, period(sft)) == 1
    if verify:
        graph = is_irreducible(power_shift(sft, n, include_paths=False))
        if graph != answer:
            raise VerificationError(
                f"transitivity formula ({answer}) disagrees with connectivity ({graph})")
    return answer


@dataclass(frozen=True)
class PowerDecomposition:
    """n = k * l with sigma^k transitive and l a rational eigenvalue."""
    n: int
    k: int
    l: int

    def to_document(self) -> dict:
        return {"schema_version": 1, "n": self.n, "transitive_part": self.k,
                "eigenvalue_part": self.l}


def decompose_power(sft: EdgeShift, n: int) -> PowerDecomposition:
    """Factor n = k * l with l = gcd(n, period) and k = n / l.

    Such a factorization (with gcd(k, period) = 1) exists iff no prime divides
    n more often than it divides the period; otherwise
    NoPowerDecompositionError is raised (e.g. period 2, n = 4: the candidates
    4 = 4*1 = 2*2 both have even transitive part).
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    p = period(sft)
    l = math.gcd(n, p)
    k = n // l
    if math.gcd(k, p) != 1:
        raise NoPowerDecompositionError(
            f"n={n} admits no factorization k*l with l | period={p} and gcd(k, period)=1")
    return PowerDecomposition(n, k, l)


def power_decompositions_by_search(sft: EdgeShift, n: int) -> list:
    """Test oracle: all factorizations n = k*l with l | period and
    gcd(k, period) = 1, found exhaustively."""
    p = period(sft)
    found = []
    for l in divisors(n):
        k = n // l
        if p % l == 0 and math.gcd(k, p) == 1:
            found.append((k, l))
    return found


def restricted_transitivity(sft: EdgeShift, m: int, n: int, verify: bool = False) -> bool:
    """True iff sigma^{n m} acts transitively on the class-0 piece X_m, i.e.
    gcd(n, k/m) = 1 for every eigenvalue k that is a multiple of m
    (equivalently gcd(n, period/m) = 1)."""
    p = period(sft)
    if m < 1 or p % m != 0:
        raise NoSuchEigenvalueError(f"{m} is not a rational eigenvalue (period {p})")
    if n < 1:
        raise ValueError("power must be >= 1")
    answer = all(math.gcd(n, k // m) == 1 for k in divisors(p) if k % m == 0)
    assert answer == (math.gcd(n, p // m) == 1)
    if verify:
        part = cyclic_partition(sft, m)
        restriction = class_restriction(sft, part, n * m)
        graph = is_irreducible(restriction)
        if graph != answer:
            raise VerificationError(
                f"restricted transitivity formula ({answer}) disagrees with graph ({graph})")
    return answer
