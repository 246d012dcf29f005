"""Exact arithmetic in G wr Sym(n) for finite G.

Conventions, pinned by the formula property tests:
  * permutation products compose right to left: (s t)(x) = s(t(x));
  * the coordinate action is g_s[i] = g[s^{-1}(i)];
  * a composite action subscript applies left factor first:
    g_{s t} here means (g_s)_t.

With these, the multiplication (g,s)(h,t) = (g_{t^{-1}} h, s t) is associative
and the closed forms for inverse, conjugation and commutator agree with their
definitional expansions on every element pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .budgets import Budget, check, default_budget
from .errors import AmbientMismatchError, BudgetExceededError
from .groups import (FiniteGroup, all_perms, alternating_subset, compose_perm,
                     identity_perm, invert_perm, klein_subset_sym4, perm_name,
                     perm_orbits, symmetric_group)


@dataclass(frozen=True)
class WreathContext:
    """Ambient data for wreath elements: the base group and the arity."""
    base: FiniteGroup
    n: int

    @property
    def order(self) -> int:
        fact = 1
        for k in range(2, self.n + 1):
            fact *= k
        return self.base.order ** self.n * fact

    def identity(self) -> "WreathElement":
        return WreathElement(self, (self.base.identity,) * self.n, identity_perm(self.n))

    def element(self, g_vec: Sequence[int], sigma: Sequence[int]) -> "WreathElement":
        return WreathElement(self, tuple(g_vec), tuple(sigma))

    def elements(self) -> list:
        """All elements in canonical (vector-major, permutation-minor) order."""
        vecs = itertools.product(range(self.base.order), repeat=self.n)
        perms = all_perms(self.n)
        return [WreathElement(self, v, s) for v in vecs for s in perms]


@dataclass(frozen=True)
class WreathElement:
    """(g-vector, permutation) in G^n x Sym(n)."""
    context: WreathContext
    g_vec: tuple
    sigma: tuple

    def __post_init__(self):
        if len(self.g_vec) != self.context.n or len(self.sigma) != self.context.n:
            raise AmbientMismatchError("component length differs from ambient arity")

    def to_document(self) -> dict:
        return {"g": list(self.g_vec), "sigma": list(self.sigma)}

    def name(self) -> str:
        base = self.context.base
        parts = ",".join(base.names[x] for x in self.g_vec)
        return f"(({parts}),{perm_name(self.sigma)})"


def _same_ambient(a: WreathElement, b: WreathElement) -> WreathContext:
    if a.context != b.context:
        raise AmbientMismatchError("wreath elements from different ambients")
    return a.context


def act(sigma: tuple, g_vec: tuple) -> tuple:
    """The coordinate action: (g_sigma)[i] = g[sigma^{-1}(i)]."""
    inv = invert_perm(sigma)
    return tuple(g_vec[inv[i]] for i in range(len(g_vec)))


def wr_mul(a: WreathElement, b: WreathElement) -> WreathElement:
    """(g,s)(h,t) = (g_{t^{-1}} h, s t): base[i] = g[t(i)] * h[i]."""
    ctx = _same_ambient(a, b)
    mul = ctx.base.mul
    t = b.sigma
    base = tuple(mul(a.g_vec[t[i]], b.g_vec[i]) for i in range(ctx.n))
    return WreathElement(ctx, base, compose_perm(a.sigma, b.sigma))


def wr_inv(a: WreathElement) -> WreathElement:
    """(g,s)^{-1} = (g^{-1}_s, s^{-1})."""
    ctx = a.context
    ginv = tuple(ctx.base.inv(x) for x in a.g_vec)
    return WreathElement(ctx, act(a.sigma, ginv), invert_perm(a.sigma))


def wr_conj(x: WreathElement, by: WreathElement) -> WreathElement:
    """(h,t)^{(g,s)} = (g_{t^{-1} s} h_s g^{-1}_s, s t s^{-1})."""
    ctx = _same_ambient(x, by)
    mul = ctx.base.mul
    h, t = x.g_vec, x.sigma
    g, s = by.g_vec, by.sigma
    a = act(s, act(invert_perm(t), g))
    b = act(s, h)
    c = act(s, tuple(ctx.base.inv(v) for v in g))
    base = tuple(mul(mul(a[i], b[i]), c[i]) for i in range(ctx.n))
    perm = compose_perm(compose_perm(s, t), invert_perm(s))
    return WreathElement(ctx, base, perm)


def wr_comm(x: WreathElement, y: WreathElement) -> WreathElement:
    """[(g,s),(h,t)] = (g_{t^{-1} s t} h_{s t} g^{-1}_{s t} h^{-1}_t,
    s t s^{-1} t^{-1})."""
    ctx = _same_ambient(x, y)
    mul = ctx.base.mul
    g, s = x.g_vec, x.sigma
    h, t = y.g_vec, y.sigma
    ginv = tuple(ctx.base.inv(v) for v in g)
    hinv = tuple(ctx.base.inv(v) for v in h)
    a = act(t, act(s, act(invert_perm(t), g)))
    b = act(t, act(s, h))
    c = act(t, act(s, ginv))
    d = act(t, hinv)
    base = tuple(mul(mul(mul(a[i], b[i]), c[i]), d[i]) for i in range(ctx.n))
    perm = compose_perm(compose_perm(compose_perm(s, t), invert_perm(s)), invert_perm(t))
    return WreathElement(ctx, base, perm)


def wr_conj_definitional(x: WreathElement, by: WreathElement) -> WreathElement:
    return wr_mul(wr_mul(by, x), wr_inv(by))


def wr_comm_definitional(x: WreathElement, y: WreathElement) -> WreathElement:
    return wr_mul(wr_mul(wr_mul(x, y), wr_inv(x)), wr_inv(y))


# -- imprimitive permutation representation (independent oracle) ---------------


def imprimitive_action(a: WreathElement):
    """The left action on pairs (block, base element):
    (i, x) -> (sigma(i), g[i] * x).  A faithful permutation representation;
    composing these maps must match wr_mul."""
    ctx = a.context

    def apply(point):
        i, x = point
        return (a.sigma[i], ctx.base.mul(a.g_vec[i], x))

    return apply


def imprimitive_permutation(a: WreathElement) -> tuple:
    """The action as a permutation of n * |G| points (block-major)."""
    ctx = a.context
    q = ctx.base.order
    apply = imprimitive_action(a)
    images = [0] * (ctx.n * q)
    for i in range(ctx.n):
        for x in range(q):
            j, y = apply((i, x))
            images[i * q + x] = j * q + y
    return tuple(images)


# -- cycle products and constructive base conjugacy -----------------------------


def cycle_product(context: WreathContext, g_vec: Sequence[int], sigma: tuple, j: int) -> int:
    """c_sigma(g, j): ordered product of g-coordinates backwards along the
    sigma-orbit of j: g[s^{-|p|+1}(j)] ... g[s^{-1}(j)] g[j]."""
    inv = invert_perm(sigma)
    chain = [j]
    at = inv[j]
    while at != j:
        chain.append(at)
        at = inv[at]
    acc = context.base.identity
    for idx in reversed(chain):
        acc = context.base.mul(acc, g_vec[idx])
    return acc


def orbit_anchors(sigma: tuple) -> dict:
    """Lowest index of each sigma-orbit, keyed by frozenset(orbit)."""
    return {frozenset(orbit): min(orbit) for orbit in perm_orbits(sigma)}


def _descending_cycle_product(context: WreathContext, g_vec: Sequence[int],
                              sigma: tuple, j: int) -> int:
    """g[s^{|p|-1}(j)] ... g[s(j)] g[j]: the orientation matched to wr_conj.

    For abelian bases this coincides with cycle_product; the two orientations
    differ only on nonabelian bases with orbits of length >= 3.
    """
    chain = [j]
    at = sigma[j]
    while at != j:
        chain.append(at)
        at = sigma[at]
    acc = context.base.identity
    for idx in reversed(chain):
        acc = context.base.mul(acc, g_vec[idx])
    return acc


def conjugate_in_base(context: WreathContext, g_vec: Sequence[int], h_vec: Sequence[int],
                      sigma: tuple, anchors: Optional[dict] = None) -> Optional[tuple]:
    """If the cycle products of g and h agree at every orbit anchor, build
    k in G^n with (k,1)(g,sigma)(k,1)^{-1} = (h,sigma) by the recursion
    k[s^{l+1}(j)] = h[s^l(j)] k[s^l(j)] g[s^l(j)]^{-1} anchored at k[j] = 1;
    otherwise return None.  The witness is verified before it is returned."""
    base = context.base
    anchors = anchors or orbit_anchors(sigma)
    for orbit in perm_orbits(sigma):
        j = anchors[frozenset(orbit)]
        if _descending_cycle_product(context, g_vec, sigma, j) != \
                _descending_cycle_product(context, h_vec, sigma, j):
            return None
    k = [base.identity] * context.n
    for orbit in perm_orbits(sigma):
        j = anchors[frozenset(orbit)]
        k[j] = base.identity
        at = j
        for _ in range(len(orbit) - 1):
            nxt = sigma[at]
            k[nxt] = base.mul(base.mul(h_vec[at], k[at]), base.inv(g_vec[at]))
            at = nxt
    witness = tuple(k)
    conj = wr_conj(context.element(g_vec, sigma),
                   context.element(witness, identity_perm(context.n)))
    if conj != context.element(tuple(h_vec), sigma):
        return None
    return witness


# -- materialized wreath groups ---------------------------------------------------


def wreath_group(base: FiniteGroup, n: int, budget: Optional[Budget] = None) -> FiniteGroup:
    """G wr Sym(n) as an explicit multiplication table.

    Generators: the base group's generators in coordinate 0, plus the Coxeter
    transpositions.
    """
    budget = budget or default_budget()
    ctx = WreathContext(base, n)
    check(ctx.order, budget.group_order, "wreath group order")
    elems = ctx.elements()
    index = {(e.g_vec, e.sigma): i for i, e in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            c = wr_mul(a, b)
            row.append(index[(c.g_vec, c.sigma)])
        table.append(row)
    names = [e.name() for e in elems]
    gens = []
    for g in base.generators:
        vec = tuple(g if i == 0 else base.identity for i in range(n))
        gens.append(index[(vec, identity_perm(n))])
    idvec = (base.identity,) * n
    for i in range(n - 1):
        img = list(range(n))
        img[i], img[i + 1] = img[i + 1], img[i]
        gens.append(index[(idvec, tuple(img))])
    if not gens:
        gens = [index[(idvec, identity_perm(n))]]
    return FiniteGroup(table, names=names, generators=gens, check_axioms=False)


# -- normal subgroups of Sym(m) ------------------------------------------------------


def normal_subgroups_sym(m: int, budget: Optional[Budget] = None) -> list:
    """Exhaustively computed list of normal subgroups of Sym(m), sorted by
    size.  Raises if the result disagrees with the known classification
    ({1}, A_m, Sym(m), plus the Klein subgroup V exactly at m = 4)."""
    budget = budget or default_budget()
    if m > budget.sym_normal_m:
        raise BudgetExceededError(f"normal subgroup sweep for Sym({m}) over budget")
    sym = symmetric_group(m)
    found = sym.normal_subgroups()
    expected = {frozenset({sym.identity}), alternating_subset(sym, m),
                frozenset(range(sym.order))}
    if m == 4:
        expected.add(klein_subset_sym4(sym))
    if set(found) != expected:
        raise AssertionError(
            f"normal subgroups of Sym({m}) do not match the classification")
    return found
