"""Finite groups as explicit multiplication tables, plus permutation helpers,
subgroup machinery and exact isomorphism testing.

Tables are kept below a hard order budget; beyond it operations refuse rather
than degrade to probabilistic methods.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .budgets import Budget, check, default_budget
from .errors import ParseError, StabdynError

# -- permutations (tuples of images) -----------------------------------------


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def compose_perm(s: tuple, t: tuple) -> tuple:
    """(s t)(x) = s(t(x))."""
    return tuple(s[t[i]] for i in range(len(s)))


def invert_perm(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def all_perms(n: int) -> list:
    return sorted(itertools.permutations(range(n)))


def perm_orbits(s: tuple) -> list:
    """Orbits (cycles) of a permutation, each listed from its lowest element."""
    seen = set()
    orbits = []
    for i in range(len(s)):
        if i in seen:
            continue
        orbit = [i]
        j = s[i]
        while j != i:
            orbit.append(j)
            j = s[j]
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def is_transitive_perm_set(perms: Iterable[tuple], n: int) -> bool:
    """True when the group generated by the given permutations has one orbit."""
    perms = list(perms)
    if not perms:
        return n <= 1
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in perms:
            y = s[x]
            if y not in reach:
                reach.add(y)
                frontier.append(y)
    return len(reach) == n


def transposition(n: int, i: int, j: int) -> tuple:
    img = list(range(n))
    img[i], img[j] = img[j], img[i]
    return tuple(img)


def perm_sign(s: tuple) -> int:
    sign = 1
    for orbit in perm_orbits(s):
        if len(orbit) % 2 == 0:
            sign = -sign
    return sign


# -- finite groups -------------------------------------------------------------


class FiniteGroup:
    """A group given by its multiplication table over element indices."""

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                 generators: Optional[Sequence[int]] = None, check_axioms: bool = True):
        self.order = len(table)
        self.table = tuple(tuple(row) for row in table)
        self.names = tuple(names) if names else tuple(str(i) for i in range(self.order))
        all_elems = tuple(range(self.order))
        identity = None
        for e in range(self.order):
            if self.table[e] == all_elems and all(self.table[x][e] == x for x in all_elems):
                identity = e
                break
        if identity is None:
            raise ParseError("table has no identity element")
        self.identity = identity
        inv = []
        for x in range(self.order):
            try:
                y = self.table[x].index(identity)
            except ValueError as exc:
                raise ParseError(f"element {x} has no inverse") from exc
            if self.table[y][x] != identity:
                raise ParseError(f"element {x} has no two-sided inverse")
            inv.append(y)
        self.inverses = tuple(inv)
        if generators is None:
            generators = self._find_generators()
        self.generators = tuple(generators)
        if check_axioms:
            self._check_associativity()
        if self.closure(self.generators) != set(range(self.order)):
            raise ParseError("declared generators do not generate the group")

    # construction helpers

    def _check_associativity(self) -> None:
        n = self.order
        if n <= 64:
            triples = itertools.product(range(n), repeat=3)
        else:
            import random
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(2000))
        for a, b, c in triples:
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise ParseError(f"table is not associative at ({a},{b},{c})")

    def _find_generators(self) -> list:
        gens: list = []
        have = {self.identity}
        # prefer high-order elements: they close fast
        by_order = sorted(range(self.order), key=lambda x: -self.element_order(x))
        for x in by_order:
            if x in have:
                continue
            gens.append(x)
            have = self.closure(gens)
            if len(have) == self.order:
                break
        return gens

    # basic operations

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, a: int, by: int) -> int:
        return self.mul(self.mul(by, a), self.inv(by))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def closure(self, seed: Iterable[int]) -> set:
        """Subgroup generated by ``seed`` (BFS over right products; a finite
        sub-semigroup of a group is a subgroup)."""
        gens = sorted(set(seed))
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                z = self.table[x][g]
                if z not in elems:
                    elems.add(z)
                    frontier.append(z)
        return elems

    # structure

    def center(self) -> frozenset:
        return frozenset(
            x for x in range(self.order)
            if all(self.mul(x, y) == self.mul(y, x) for y in range(self.order)))

    def centralizer(self, subset: Iterable[int]) -> frozenset:
        subset = list(subset)
        return frozenset(
            g for g in range(self.order)
            if all(self.mul(g, k) == self.mul(k, g) for k in subset))

    def conjugacy_classes(self) -> list:
        seen = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = {self.conj(x, g) for g in range(self.order)}
            seen |= cls
            classes.append(frozenset(cls))
        return sorted(classes, key=lambda c: (len(c), sorted(c)))

    def derived_subgroup(self) -> frozenset:
        """Normal closure of the commutators of generator pairs."""
        gens = self.generators or (self.identity,)
        comms = {self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
                 for a in gens for b in gens}
        elems = self.closure(comms)
        frontier = list(elems)
        while frontier:
            x = frontier.pop()
            for g in gens:
                z = self.conj(x, g)
                if z not in elems:
                    new = self.closure(list(elems) + [z])
                    frontier.extend(new - elems)
                    elems = new
        return frozenset(elems)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    def subgroups(self) -> list:
        """All subgroups, as frozensets of element indices (order <= ~50)."""
        singles = {frozenset(self.closure([x])) for x in range(self.order)}
        found = set(singles)
        frontier = list(singles)
        while frontier:
            sub = frontier.pop()
            for x in range(self.order):
                if x in sub:
                    continue
                bigger = frozenset(self.closure(list(sub) + [x]))
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, subset: frozenset) -> bool:
        return all(self.conj(x, g) in subset for x in subset for g in range(self.order))

    def normal_subgroups(self) -> list:
        """Exhaustive: unions of conjugacy classes that are subgroups."""
        classes = self.conjugacy_classes()
        id_class = next(c for c in classes if self.identity in c)
        others = [c for c in classes if c is not id_class]
        result = []
        for mask in range(1 << len(others)):
            members = set(id_class)
            for bit, cls in enumerate(others):
                if mask >> bit & 1:
                    members |= cls
            if self.order % len(members) != 0:
                continue
            ok = all(self.mul(a, b) in members for a in members for b in members)
            if ok:
                result.append(frozenset(members))
        return sorted(set(result), key=lambda s: (len(s), sorted(s)))

    def subgroup_table(self, subset: Iterable[int]) -> "FiniteGroup":
        elems = sorted(set(subset))
        index = {x: i for i, x in enumerate(elems)}
        table = [[index[self.mul(a, b)] for b in elems] for a in elems]
        return FiniteGroup(table, names=[self.names[x] for x in elems], check_axioms=False)

    def quotient_table(self, normal: frozenset) -> "FiniteGroup":
        cosets = []
        seen = set()
        for x in range(self.order):
            if x in seen:
                continue
            coset = frozenset(self.mul(x, n) for n in normal)
            seen |= coset
            cosets.append(coset)
        cosets.sort(key=lambda c: min(c))
        index = {c: i for i, c in enumerate(cosets)}
        rep = [min(c) for c in cosets]
        lookup = {x: i for i, c in enumerate(cosets) for x in c}
        table = [[lookup[self.mul(rep[i], rep[j])] for j in range(len(cosets))]
                 for i in range(len(cosets))]
        names = ["{" + self.names[rep[i]] + "}" for i in range(len(cosets))]
        return FiniteGroup(table, names=names, check_axioms=False)

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "order": self.order,
            "table": [list(r) for r in self.table],
            "generators": list(self.generators),
            "names": list(self.names),
        }

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


# -- constructors ---------------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], names=["e"])


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, names=[str(i) for i in range(n)], generators=[1 % n])


_SYM_CACHE: dict = {}


def symmetric_group(n: int, budget: Optional[Budget] = None) -> FiniteGroup:
    budget = budget or default_budget()
    if n in _SYM_CACHE:
        return _SYM_CACHE[n]
    perms = all_perms(n)
    check(len(perms), budget.group_order, "symmetric group order")
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose_perm(p, q)] for q in perms] for p in perms]
    names = [perm_name(p) for p in perms]
    gens = [index[transposition(n, i, i + 1)] for i in range(n - 1)] or [0]
    group = FiniteGroup(table, names=names, generators=gens, check_axioms=False)
    _SYM_CACHE[n] = group
    return group


def perm_name(p: tuple) -> str:
    cycles = [o for o in perm_orbits(p) if len(o) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in o) + ")" for o in cycles)


def from_permutations(gens: Sequence[tuple]) -> FiniteGroup:
    """The permutation group generated by the given tuples."""
    n = len(gens[0])
    elems = {identity_perm(n)}
    frontier = [identity_perm(n)]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = compose_perm(p, g)
            if q not in elems:
                elems.add(q)
                frontier.append(q)
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    table = [[index[compose_perm(p, q)] for q in ordered] for p in ordered]
    return FiniteGroup(table, names=[perm_name(p) for p in ordered],
                       generators=[index[g] for g in gens], check_axioms=False)


def dihedral_square() -> FiniteGroup:
    """Symmetries of the square as permutations of its corners."""
    rot = (1, 2, 3, 0)
    flip = (3, 2, 1, 0)
    return from_permutations([rot, flip])


def quaternion_group() -> FiniteGroup:
    """Q8 as unit quaternions 1, -1, i, -i, j, -j, k, -k."""
    # encode q = (sign, axis) with axis in {1, i, j, k}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mul_axis = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def decode(name):
        return (-1 if name.startswith("-") else 1, name.lstrip("-"))

    def encode(sign, axis):
        return ("-" if sign < 0 else "") + axis

    index = {n: i for i, n in enumerate(names)}
    table = []
    for a in names:
        row = []
        for b in names:
            sa, xa = decode(a)
            sb, xb = decode(b)
            s, x = mul_axis[(xa, xb)]
            row.append(index[encode(sa * sb * s, x)])
        table.append(row)
    return FiniteGroup(table, names=names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    names = [f"({g.names[a]},{h.names[b]})" for (a, b) in pairs]
    return FiniteGroup(table, names=names, check_axioms=False)


def klein_group() -> FiniteGroup:
    return direct_product(cyclic_group(2), cyclic_group(2))


# -- alternating subgroup and the Klein normal subgroup of Sym(4) ------------------


def alternating_subset(sym: FiniteGroup, n: int) -> frozenset:
    """Indices of even permutations inside symmetric_group(n)."""
    perms = all_perms(n)
    return frozenset(i for i, p in enumerate(perms) if perm_sign(p) == 1)


def klein_subset_sym4(sym4: FiniteGroup) -> frozenset:
    perms = all_perms(4)
    target = {identity_perm(4), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)}
    return frozenset(i for i, p in enumerate(perms) if p in target)


# -- exact isomorphism search --------------------------------------------------------


def _invariant_signature(g: FiniteGroup):
    orders = sorted(g.element_order(x) for x in range(g.order))
    classes = sorted((len(c), sorted(g.element_order(x) for x in c)[0])
                     for c in g.conjugacy_classes())
    return (g.order, orders, classes, len(g.center()), len(g.derived_subgroup()),
            g.is_abelian())


def _element_signature(g: FiniteGroup, x: int, class_size: dict):
    return (g.element_order(x), class_size[x])


def is_isomorphic(g: FiniteGroup, h: FiniteGroup,
                  budget: Optional[Budget] = None) -> Optional[dict]:
    """Exact isomorphism search: backtracking over generator images with
    invariant pruning.  Returns an explicit index bijection or None.

    The first (lexicographically least over generator-image indices) map
    found is reported, so the result is deterministic.
    """
    budget = budget or default_budget()
    check(g.order, budget.group_order, "isomorphism search order")
    if g.order != h.order:
        return None
    if _invariant_signature(g) != _invariant_signature(h):
        return None

    gens = list(g.generators)
    # express every element of g as a word in the generators (BFS tree)
    parent = {g.identity: None}
    order_seen = [g.identity]
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, gen in enumerate(gens):
                y = g.mul(x, gen)
                if y not in parent:
                    parent[y] = (x, gi)
                    order_seen.append(y)
                    nxt.append(y)
        frontier = nxt
    if len(parent) != g.order:
        raise StabdynError("generators do not generate (internal)")

    class_size_h = {x: len(c) for c in h.conjugacy_classes() for x in c}
    class_size_g = {x: len(c) for c in g.conjugacy_classes() for x in c}
    candidates = []
    for gen in gens:
        sig = _element_signature(g, gen, class_size_g)
        candidates.append([y for y in range(h.order)
                           if _element_signature(h, y, class_size_h) == sig])

    def try_images(images) -> Optional[dict]:
        phi = {g.identity: h.identity}
        for x in order_seen[1:]:
            px, gi = parent[x]
            phi[x] = h.mul(phi[px], images[gi])
        if len(set(phi.values())) != g.order:
            return None
        for a in range(g.order):
            fa = phi[a]
            row_g = g.table[a]
            for b in range(g.order):
                if phi[row_g[b]] != h.mul(fa, phi[b]):
                    return None
        return phi

    for images in itertools.product(*candidates):
        sub = h.closure(images)
        if len(sub) != h.order:
            continue
        phi = try_images(images)
        if phi is not None:
            return phi
    return None
