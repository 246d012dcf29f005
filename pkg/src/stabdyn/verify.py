"""Structural verification reports: the split exact sequence behind the
wreath decomposition of power-shift automorphism groups, quotient
isomorphisms, wreath rigidity sweeps, eigenvalue comparison, and entropy
ratios.

Automorphisms of sigma^{nm} are enumerated over the power-shift presentation,
where they are ordinary sliding block codes; the section rho and the base
embedding psi are built explicitly as phase word maps and converted to codes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .budgets import Budget
from .codes import (AutomorphismSet, SlidingBlockCode, WordMap, compose,
                    enumerate_automorphisms, language, partition_action,
                    shift_code)
from .errors import (NoSuchEigenvalueError, StabdynError, VerificationError,
                     ZeroEntropyError)
from .groups import (FiniteGroup, all_perms, compose_perm, cyclic_group,
                     direct_product, identity_perm, invert_perm, is_isomorphic)
from .sft import EdgeShift, entropy, period, power_shift
from .spectral import (CyclicPartition, class_restriction, cyclic_partition,
                       is_power_transitive, rational_eigs, smale)
from .wreath import wreath_group


# -- presentation geometry -----------------------------------------------------


@dataclass
class SplitInstance:
    """Shared geometry for one (shift, n, m) split-sequence verification."""
    base: EdgeShift
    n: int
    m: int
    stride: int                  # N = n*m: sigma^N is the acting power
    part: CyclicPartition
    power: EdgeShift             # Y: presentation of (X, sigma^N)
    component: EdgeShift         # Z: presentation of (X_m, sigma^N restricted)
    block_of_path: dict
    component_block_of_path: dict

    @staticmethod
    def build(base: EdgeShift, n: int, m: int) -> "SplitInstance":
        p = period(base)
        if m < 1 or p % m != 0:
            raise NoSuchEigenvalueError(f"{m} is not a rational eigenvalue (period {p})")
        if not is_power_transitive(base, n):
            raise StabdynError(f"sigma^{n} is not transitive (period {p})")
        stride = n * m
        part = cyclic_partition(base, m)
        power = power_shift(base, stride)
        component = class_restriction(base, part, stride)
        return SplitInstance(
            base, n, m, stride, part, power, component,
            {path: sym for sym, path in power.parent_paths.items()},
            {path: sym for sym, path in component.parent_paths.items()})

    # path plumbing

    def power_word_to_path(self, word) -> tuple:
        out = []
        for sym in word:
            out.extend(self.power.parent_paths[sym])
        return tuple(out)

    def component_word_to_path(self, word) -> tuple:
        out = []
        for sym in word:
            out.extend(self.component.parent_paths[sym])
        return tuple(out)

    def path_to_power_word(self, path) -> tuple:
        k = self.stride
        return tuple(self.block_of_path[tuple(path[i:i + k])]
                     for i in range(0, len(path), k))

    def path_to_component_word(self, path) -> tuple:
        k = self.stride
        return tuple(self.component_block_of_path[tuple(path[i:i + k])]
                     for i in range(0, len(path), k))

    def class_of_power_symbol(self, sym: str) -> int:
        return self.part.class_of_state(self.power.tail(sym))

    # -- the section rho -------------------------------------------------

    def rho(self, sigma: tuple) -> SlidingBlockCode:
        """rho(sigma): T^i x -> T^{sigma(i)} x for x in the class-0 piece,
        realized as a radius-1 code over the power presentation."""
        if len(sigma) != self.m:
            raise StabdynError("permutation size differs from the partition size")
        stride = self.stride

        def fn(word):
            path = self.power_word_to_path(word)
            c = self.class_of_power_symbol(word[0])
            delta = sigma[c] - c
            out = []
            for j in range(1, len(word) - 1):
                out.append(self.block_of_path[path[j * stride + delta:
                                                   (j + 1) * stride + delta]])
            return tuple(out)

        return WordMap(self.power, self.power, 1, 1, fn).to_code()

    def rho_point_map_on_base(self, sigma: tuple) -> WordMap:
        """The same map as a word map over the base presentation (used to show
        it does not commute with sigma itself unless sigma is trivial)."""
        loss = max(1, self.m - 1)

        def fn(word):
            c = self.part.class_of_state(self.base.tail(word[0]))
            delta = sigma[c] - c
            return tuple(word[j + delta] for j in range(loss, len(word) - loss))

        return WordMap(self.base, self.base, loss, loss, fn)

    # -- the base embedding psi -------------------------------------------

    def psi(self, components: Sequence[SlidingBlockCode]) -> SlidingBlockCode:
        """psi(g_0..g_{m-1}): T^i x -> T^i g_i(x) for x in the class-0 piece,
        assembled as a code over the power presentation."""
        if len(components) != self.m:
            raise StabdynError("need one component automorphism per class")
        if self.m == 1:
            # the sequence degenerates: the component presentation equals the
            # power presentation and psi is the identity embedding
            return components[0]
        rho_rad = max(c.radius for c in components)
        stride = self.stride

        def fn(word):
            L = len(word)
            path = self.power_word_to_path(word)
            c = self.class_of_power_symbol(word[0])
            code = components[c]
            pad = code.radius
            # x = T^{-c} y: x[i] = y[i - c]; x-blocks 1..L-1 are available
            # (blocks 0..L-1 when c = 0)
            x_path = path[stride - c:] if c > 0 else path
            x_word = self.path_to_component_word(
                x_path[: (len(x_path) // stride) * stride])
            u_blocks = code.apply(x_word)
            first_u_block = (1 if c > 0 else 0) + pad
            u_path = []
            for b in u_blocks:
                u_path.extend(self.component.parent_paths[b])
            # z = T^c u: z-block J covers u-positions [J*stride+c, (J+1)*stride+c)
            out = []
            for j in range(1 + rho_rad, L - rho_rad - 1):
                start = j * stride + c - first_u_block * stride
                out.append(self.block_of_path[tuple(u_path[start:start + stride])])
            return tuple(out)

        return WordMap(self.power, self.power, 1 + rho_rad, 1 + rho_rad, fn).to_code()

    def restrict_to_component(self, code: SlidingBlockCode, i: int) -> SlidingBlockCode:
        """g_i(x) = T^{-i} g(T^i x) on the class-0 piece, as a code over the
        component presentation.  Requires pi(code) to fix class i."""
        if self.m == 1:
            return code
        stride = self.stride
        R = code.radius

        def fn(word):
            L = len(word)
            path = self.component_word_to_path(word)
            # y = T^i x: y[j] = x[j + i]; y-blocks 0..L-2 available (uniformly)
            y_path = path[i:]
            usable = ((len(y_path)) // stride) * stride
            y_word = self.path_to_power_word(y_path[:usable])
            w_blocks = code.apply(y_word)  # y-blocks R..(L-2-R) when i>0
            w_path = []
            for b in w_blocks:
                w_path.extend(self.power.parent_paths[b])
            first_w_block = R
            out = []
            for j in range(R + 1, L - R - 1):
                start = j * stride - i - first_w_block * stride
                out.append(self.component_block_of_path[
                    tuple(w_path[start:start + stride])])
            return tuple(out)

        return WordMap(self.component, self.component, R + 1, R + 1, fn).to_code()


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_document(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class WreathDecompositionReport:
    matrix_hash: str
    n: int
    m: int
    radius: int
    inv_radius: int
    effective_radius: int
    automorphism_count: int
    kernel_size: int
    image_size: int
    checks: list
    pi_table: dict
    rho_table: dict
    psi_table: dict
    notes: list = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "matrix_hash": self.matrix_hash,
            "n": self.n,
            "m": self.m,
            "radius": self.radius,
            "inv_radius": self.inv_radius,
            "effective_radius": self.effective_radius,
            "automorphism_count": self.automorphism_count,
            "kernel_size": self.kernel_size,
            "image_size": self.image_size,
            "passes": self.passes,
            "checks": [c.to_document() for c in self.checks],
            "pi_table": {str(k): list(v) for k, v in sorted(self.pi_table.items())},
            "rho_table": {str(k): v for k, v in sorted(self.rho_table.items())},
            "psi_table": {str(k): v for k, v in sorted(self.psi_table.items())},
            "notes": list(self.notes),
        }


def _effective_radius(shift: EdgeShift, requested: int, key_cap: int = 32) -> int:
    r = requested
    while r > 0 and len(language(shift, 2 * r + 1)) > key_cap:
        r -= 1
    return r


def verify_split_sequence(sft: EdgeShift, n: int, m: int, radius: int,
                          inv_radius: Optional[int] = None,
                          max_tuples: int = 48, max_pairs: int = 200,
                          max_kernel: int = 24,
                          budget: Optional[Budget] = None) -> WreathDecompositionReport:
    """Verify the split exact sequence
    1 -> Aut(s^{nm} on X_m)^m -> Aut(s^{nm}) -> Sym(m) -> 1 on the enumerated
    radius-bounded stage: pi.rho = id, ker pi = im psi, the conjugation
    relation rho(s)^{-1} psi(g) rho(s) = psi(g o s), and homomorphism laws."""
    inst = SplitInstance.build(sft, n, m)
    notes = []
    r_eff = _effective_radius(inst.power, radius)
    if r_eff != radius:
        notes.append(f"enumeration radius reduced from {radius} to {r_eff} "
                     f"(power-presentation language size)")
    if inv_radius is None:
        inv_radius = 2 * radius
    inv_eff = max(2 * r_eff, r_eff)
    autos = enumerate_automorphisms(inst.power, 1, r_eff, inv_eff, budget)
    checks: list = []

    # pi on the enumerated stage
    pi_of: dict = {}
    pi_fail = None
    for idx, code in enumerate(autos.elements):
        try:
            pi_of[idx] = partition_action(code, inst.part)
        except StabdynError as exc:
            pi_fail = f"element {idx}: {exc}"
            break
    checks.append(CheckResult("pi_defined_on_stage", pi_fail is None, pi_fail or ""))

    kernel = [idx for idx, p in pi_of.items() if p == identity_perm(m)]
    image = sorted(set(pi_of.values()))

    # pi is a homomorphism (budgeted pairs)
    pairs = list(itertools.product(range(len(autos.elements)), repeat=2))
    if len(pairs) > max_pairs:
        stepped = max(1, len(pairs) // max_pairs)
        pairs = pairs[::stepped][:max_pairs]
    hom_fail = None
    for i, j in pairs:
        left = partition_action(
            compose(autos.elements[i], autos.elements[j]).canonical(), inst.part)
        right = compose_perm(pi_of[i], pi_of[j])
        if left != right:
            hom_fail = f"pi(f.g) != pi(f).pi(g) at pair ({i},{j})"
            break
    checks.append(CheckResult("pi_homomorphism", hom_fail is None, hom_fail or "",))

    # rho: section of pi
    rho_of = {sigma: inst.rho(sigma) for sigma in all_perms(m)}
    fail = None
    for sigma, code in rho_of.items():
        if partition_action(code, inst.part) != sigma:
            fail = f"pi(rho({sigma})) != {sigma}"
            break
    checks.append(CheckResult("pi_rho_identity", fail is None, fail or ""))

    fail = None
    for sigma in all_perms(m):
        inv = rho_of[invert_perm(sigma)]
        if not compose(rho_of[sigma], inv).is_identity():
            fail = f"rho({sigma}) has no inverse rho({invert_perm(sigma)})"
            break
        for tau in all_perms(m):
            if compose(rho_of[sigma], rho_of[tau]) != rho_of[compose_perm(sigma, tau)]:
                fail = f"rho not multiplicative at ({sigma},{tau})"
                break
        if fail:
            break
    checks.append(CheckResult("rho_homomorphism", fail is None, fail or ""))

    # component stage and psi tuples
    r_comp = _effective_radius(inst.component, max(radius, 1))
    comp_autos = enumerate_automorphisms(inst.component, 1, r_comp,
                                         2 * r_comp, budget)
    tuples = list(itertools.islice(
        itertools.product(range(len(comp_autos.elements)), repeat=m), max_tuples))

    psi_of: dict = {}

    def psi_by_indices(tup):
        if tup not in psi_of:
            psi_of[tup] = inst.psi([comp_autos.elements[i] for i in tup])
        return psi_of[tup]

    # psi lands in the kernel and is injective (restrict recovers the tuple)
    fail = None
    for tup in tuples:
        code = psi_by_indices(tup)
        if partition_action(code, inst.part) != identity_perm(m):
            fail = f"pi(psi{tup}) != id"
            break
        inv_tuple = tuple(comp_autos.inverses[i].canonical() for i in tup)
        inv_code = inst.psi(list(inv_tuple))
        if not compose(code, inv_code).is_identity():
            fail = f"psi{tup} not inverted by the componentwise inverses"
            break
        recovered = tuple(inst.restrict_to_component(code, i).canonical()
                          for i in range(m))
        expected = tuple(comp_autos.elements[i].canonical() for i in tup)
        if recovered != expected:
            fail = f"restriction does not recover the tuple {tup}"
            break
    checks.append(CheckResult("psi_injective_into_kernel", fail is None, fail or ""))

    # psi is a homomorphism (componentwise composition; budgeted pairs)
    fail = None
    tuple_pairs = list(itertools.islice(
        itertools.product(tuples, repeat=2), max_pairs))
    for ta, tb in tuple_pairs:
        composed = tuple(
            compose(comp_autos.elements[ta[i]], comp_autos.elements[tb[i]]).canonical()
            for i in range(m))
        left = compose(psi_by_indices(ta), psi_by_indices(tb))
        right = inst.psi(list(composed))
        if left != right:
            fail = f"psi(t.t') != psi(t).psi(t') at {(ta, tb)}"
            break
    checks.append(CheckResult("psi_homomorphism", fail is None, fail or ""))

    # every kernel element of the enumerated stage is a psi image
    fail = None
    kernel_checked = kernel[:max_kernel]
    for idx in kernel_checked:
        code = autos.elements[idx]
        parts = [inst.restrict_to_component(code, i) for i in range(m)]
        rebuilt = inst.psi(parts)
        if rebuilt != code:
            fail = f"kernel element {idx} is not psi of its restrictions"
            break
    detail = "" if fail is None else fail
    if fail is None and len(kernel) > len(kernel_checked):
        detail = f"checked {len(kernel_checked)} of {len(kernel)} kernel elements"
    checks.append(CheckResult("kernel_equals_image", fail is None, detail))

    # the conjugation relation rho(s)^{-1} psi(g) rho(s) = psi(g o s)
    fail = None
    for sigma in all_perms(m):
        rho_s = rho_of[sigma]
        rho_s_inv = rho_of[invert_perm(sigma)]
        for tup in tuples[:max(1, max_tuples // max(1, math.factorial(m)))]:
            conjugated = compose(rho_s_inv, compose(psi_by_indices(tup), rho_s))
            permuted = tuple(tup[sigma[i]] for i in range(m))
            if conjugated != psi_by_indices(permuted):
                fail = f"conjugation relation fails at sigma={sigma}, tuple={tup}"
                break
        if fail:
            break
    checks.append(CheckResult("conjugation_relation", fail is None, fail or ""))

    # exactness at the order level on the enumerated stage
    ok = len(autos.elements) == len(kernel) * len(image)
    checks.append(CheckResult(
        "order_exactness", ok,
        f"|A|={len(autos.elements)}, |ker|={len(kernel)}, |im|={len(image)}"))

    rotations = {tuple((k + j) % m for k in range(m)) for j in range(m)}
    if set(image) <= rotations and m > 2:
        notes.append("pi image of the enumerated stage contains rotations "
                     "only; the non-rotation branch of the class action was "
                     "not exercised at this radius")

    pi_table = {idx: pi_of.get(idx, ()) for idx in range(len(autos.elements))}
    rho_table = {sigma: code.to_document() for sigma, code in rho_of.items()}
    psi_table = {tup: code.to_document() for tup, code in psi_of.items()}
    return WreathDecompositionReport(
        matrix_hash=sft.matrix_hash(), n=n, m=m, radius=radius,
        inv_radius=inv_radius, effective_radius=r_eff,
        automorphism_count=len(autos.elements), kernel_size=len(kernel),
        image_size=len(image), checks=checks, pi_table=pi_table,
        rho_table=rho_table, psi_table=psi_table, notes=notes)


# -- quotient isomorphisms -----------------------------------------------------------


@dataclass
class QuotientReport:
    matrix_hash: str
    m: int
    radius: int
    status: str                  # "pass", "fail", or "inconclusive"
    lhs_mod_shift_order: Optional[int]
    lhs_mod_power_order: Optional[int]
    rhs_order: Optional[int]
    item_i_isomorphic: Optional[bool]
    item_ii_isomorphic: Optional[bool]
    detail: str = ""

    @property
    def passes(self) -> bool:
        return self.status != "fail"

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "matrix_hash": self.matrix_hash,
            "m": self.m,
            "radius": self.radius,
            "status": self.status,
            "lhs_mod_shift_order": self.lhs_mod_shift_order,
            "lhs_mod_power_order": self.lhs_mod_power_order,
            "rhs_order": self.rhs_order,
            "item_i_isomorphic": self.item_i_isomorphic,
            "item_ii_isomorphic": self.item_ii_isomorphic,
            "detail": self.detail,
        }


def _shift_cosets(autos: AutomorphismSet, step: int, scan: int):
    """Partition the enumerated stage into cosets of the shift powers
    {sigma^{j*step}}; returns (coset list, member->coset index) or None when
    the stage is not closed under the reductions."""
    sft = autos.shift
    elements = list(autos.elements)
    keys = {code.canonical_key(): i for i, code in enumerate(elements)}
    assignment = [None] * len(elements)
    cosets: list = []
    for i, code in enumerate(elements):
        if assignment[i] is not None:
            continue
        members = []
        for j in range(-scan, scan + 1):
            if j % step != 0:
                continue
            shifted = compose(shift_code(sft, j), code).canonical_key()
            if shifted in keys:
                members.append(keys[shifted])
        members = sorted(set(members) | {i})
        idx = len(cosets)
        cosets.append(members)
        for k in members:
            if assignment[k] is not None and assignment[k] != idx:
                return None
            assignment[k] = idx
    return cosets, assignment


def _quotient_group(autos: AutomorphismSet, step: int):
    """The quotient of the enumerated stage by the shift subgroup {s^{j*step}}
    as a finite group table, or None when composition leaves the stage."""
    sft = autos.shift
    r, R = autos.radius, autos.inv_radius
    scan = 2 * r + R + step
    packed = _shift_cosets(autos, step, scan)
    if packed is None:
        return None
    cosets, assignment = packed
    reps = [autos.elements[members[0]] for members in cosets]
    keys = {code.canonical_key(): i for i, code in enumerate(autos.elements)}
    table = []
    for a in reps:
        row = []
        for b in reps:
            product = compose(a, b)
            target = None
            for j in range(-scan, scan + 1):
                if j % step != 0:
                    continue
                reduced = compose(shift_code(sft, j), product).canonical_key()
                if reduced in keys:
                    target = assignment[keys[reduced]]
                    break
            if target is None:
                return None
            row.append(target)
        table.append(row)
    try:
        return FiniteGroup(table, check_axioms=True)
    except StabdynError:
        return None


def verify_quotient_isos(sft: EdgeShift, m: int, radius: int,
                         inv_radius: Optional[int] = None,
                         budget: Optional[Budget] = None) -> QuotientReport:
    """Check, on radius-bounded stages, that
    (ii) Aut(T)/<T> ~ Aut(T^m on X_m)/<T^m on X_m> and
    (i)  Aut(T)/<T^m> ~ (that group) x Z/mZ,
    where m is the period and X_m the mixing Smale piece."""
    p = period(sft)
    if m != p:
        raise NoSuchEigenvalueError(f"quotient comparison needs m = period = {p}")
    if inv_radius is None:
        inv_radius = 2 * radius
    dec = smale(sft)
    lhs = enumerate_automorphisms(sft, 1, radius, inv_radius, budget)
    r_comp = _effective_radius(dec.component_shift, max(radius, 1))
    rhs = enumerate_automorphisms(dec.component_shift, 1, r_comp, 2 * r_comp, budget)

    lhs_mod_shift = _quotient_group(lhs, 1)
    lhs_mod_power = _quotient_group(lhs, m)
    rhs_mod_shift = _quotient_group(rhs, 1)
    if lhs_mod_shift is None or lhs_mod_power is None or rhs_mod_shift is None:
        return QuotientReport(sft.matrix_hash(), m, radius, "inconclusive",
                              None, None, None, None, None,
                              "quotient not closed at this radius")
    item_ii = is_isomorphic(lhs_mod_shift, rhs_mod_shift) is not None
    product = direct_product(rhs_mod_shift, cyclic_group(m))
    item_i = is_isomorphic(lhs_mod_power, product) is not None
    status = "pass" if (item_i and item_ii) else "fail"
    return QuotientReport(sft.matrix_hash(), m, radius, status,
                          lhs_mod_shift.order, lhs_mod_power.order,
                          rhs_mod_shift.order, item_i, item_ii)


# -- wreath rigidity ------------------------------------------------------------------


@dataclass
class RigidityReport:
    base_g: str
    n: int
    base_h: str
    m: int
    order_g: int
    order_h: int
    isomorphic: Optional[bool]
    verdict: str                 # "consistent" or "THEOREM-VIOLATION"
    detail: str = ""

    @property
    def passes(self) -> bool:
        return self.verdict == "consistent"

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "wreath_g": {"base": self.base_g, "n": self.n, "order": self.order_g},
            "wreath_h": {"base": self.base_h, "m": self.m, "order": self.order_h},
            "isomorphic": self.isomorphic,
            "verdict": self.verdict,
            "detail": self.detail,
        }


def check_wreath_rigidity(base_g: FiniteGroup, n: int, base_h: FiniteGroup, m: int,
                          name_g: str = "G", name_h: str = "H",
                          budget: Optional[Budget] = None) -> RigidityReport:
    """Materialize G wr Sym(n) and H wr Sym(m) and search for an isomorphism.
    A found isomorphism with n != m, or n = m >= 4 with non-isomorphic bases,
    contradicts wreath rigidity and is flagged THEOREM-VIOLATION."""
    wg = wreath_group(base_g, n, budget)
    wh = wreath_group(base_h, m, budget)
    if wg.order != wh.order:
        return RigidityReport(name_g, n, name_h, m, wg.order, wh.order, None,
                              "consistent", "orders differ; no isomorphism possible")
    phi = is_isomorphic(wg, wh, budget)
    iso = phi is not None
    if iso and n != m and n >= 2 and m >= 2:
        return RigidityReport(name_g, n, name_h, m, wg.order, wh.order, True,
                              "THEOREM-VIOLATION",
                              "isomorphic wreath products with different arities")
    if iso and n == m and n >= 4:
        if is_isomorphic(base_g, base_h, budget) is None:
            return RigidityReport(name_g, n, name_h, m, wg.order, wh.order, True,
                                  "THEOREM-VIOLATION",
                                  "isomorphic wreaths, arity >= 4, bases differ")
    return RigidityReport(name_g, n, name_h, m, wg.order, wh.order, iso,
                          "consistent",
                          "no isomorphism found" if not iso else "isomorphic")


# -- eigenvalue comparison ---------------------------------------------------------------


def compare_rational_eigs(x: EdgeShift, y: EdgeShift) -> dict:
    """The SFT shadow of eigenvalue recovery: report both rational eigenvalue
    sets, their equality, and the top wreath sizes (the periods) that wreath
    rigidity forces to agree under an isomorphism of stabilized groups."""
    ex, ey = sorted(rational_eigs(x)), sorted(rational_eigs(y))
    return {
        "schema_version": 1,
        "eigs_x": ex,
        "eigs_y": ey,
        "equal": ex == ey,
        "period_x": max(ex),
        "period_y": max(ey),
        "note": "equal periods force equal divisor sets; rigidity of "
                "base wr Sym(period) pins the period",
    }


# -- entropy ratio --------------------------------------------------------------------------


@dataclass
class EntropyRatioReport:
    entropy_x: float
    entropy_y: float
    ratio: float
    best_numerator: int
    best_denominator: int
    residual: float
    verdict: str                 # "rational-within-tolerance" or "inconclusive"
    exact_integer_relation: Optional[bool]

    @property
    def best(self) -> Fraction:
        return Fraction(self.best_numerator, self.best_denominator)

    def to_document(self) -> dict:
        return {
            "schema_version": 1,
            "entropy_x": self.entropy_x,
            "entropy_y": self.entropy_y,
            "ratio": self.ratio,
            "best_rational": [self.best_numerator, self.best_denominator],
            "residual": self.residual,
            "verdict": self.verdict,
            "exact_integer_relation": self.exact_integer_relation,
        }


def _convergents(x: float, max_denominator: int):
    frac = Fraction(x).limit_denominator(max_denominator)
    yield frac
    # also scan small denominators directly for robustness near ties
    for q in range(1, max_denominator + 1):
        yield Fraction(round(x * q), q)


def entropy_ratio(x: EdgeShift, y: EdgeShift, max_denominator: int = 50,
                  tol: float = 1e-9) -> EntropyRatioReport:
    """Best rational approximation of h(x)/h(y) with bounded denominator.

    Entropies are cross-checked through the Smale pieces (component entropy
    must equal period * entropy).  The verdict is never a claim of
    irrationality: it is "rational-within-tolerance" or "inconclusive".  When
    both Perron values are integers the relation lambda_x^q = lambda_y^p is
    additionally confirmed exactly.
    """
    if tol < 1e-12:
        raise StabdynError("tolerance below numeric resolution")
    hx = entropy(x).log_value
    hy = entropy(y).log_value
    if hx <= 0.0 or hy <= 0.0:
        raise ZeroEntropyError("entropy ratio needs positive entropies")
    for shift, h in ((x, hx), (y, hy)):
        dec = smale(shift)
        comp_h = entropy(dec.component_shift).log_value
        if abs(comp_h - dec.period * h) > 1e-9:
            raise VerificationError("Smale component entropy mismatch")
    ratio = hx / hy
    best = None
    for frac in _convergents(ratio, max_denominator):
        if frac.denominator > max_denominator or frac.denominator == 0:
            continue
        err = abs(ratio - float(frac))
        if best is None or err < best[0]:
            best = (err, frac)
    err, frac = best
    verdict = "rational-within-tolerance" if err <= tol else "inconclusive"
    exact = None
    lam_x = entropy(x).perron_value
    lam_y = entropy(y).perron_value
    if abs(lam_x - round(lam_x)) < 1e-9 and abs(lam_y - round(lam_y)) < 1e-9 \
            and verdict == "rational-within-tolerance" and frac.numerator > 0:
        exact = (round(lam_x) ** frac.denominator == round(lam_y) ** frac.numerator)
        if not exact:
            verdict = "inconclusive"
    return EntropyRatioReport(hx, hy, ratio, frac.numerator, frac.denominator,
                              err, verdict, exact)
