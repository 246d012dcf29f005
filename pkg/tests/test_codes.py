"""Sliding block codes: evaluation, composition, canonical forms, inverses,
automorphism enumeration, partition actions."""

from __future__ import annotations

import itertools

import pytest

from stabdyn.errors import (ImageSplitsClassesError, ShiftMismatchError,
                            WordError)
from stabdyn.codes import (AutomorphismSet, SlidingBlockCode, WordMap,
                           apply_code, commutes_with_power, compose,
                           enumerate_automorphisms, find_inverse,
                           identity_code, language, partition_action,
                           rotation_index, shift_code, symbol_map_code,
                           word_map_commutes_with_power, word_map_from_code)
from stabdyn.sft import full_shift, power_shift
from stabdyn.spectral import cyclic_partition

from conftest import (cycle_graph, doubled_cycle_period2,
                      doubled_cycle_period3, doubled_loop_period2, golden_mean)


def flip_code(sft):
    return symbol_map_code(sft, {"0": "1", "1": "0"})


def word(s: str):
    return tuple(s)


# -- evaluation -----------------------------------------------------------------

def test_apply_identity():
    code = identity_code(full_shift(2))
    assert apply_code(code, word("010")) == word("010")


def test_apply_flip():
    code = flip_code(full_shift(2))
    assert apply_code(code, word("0110")) == word("1001")


def test_apply_shift_by_one():
    # the true shift drops the left flank: windows (011),(110) -> (1,0)
    code = shift_code(full_shift(2), 1)
    assert apply_code(code, word("0110")) == word("10")
    # while the radius-1 rule selecting the window center is the identity
    # (its apply trims to the middle)
    padded_id = SlidingBlockCode(full_shift(2), full_shift(2), 1,
                                 {w: w[1] for w in language(full_shift(2), 3)})
    assert apply_code(padded_id, word("0110")) == word("11")
    assert padded_id.canonical() == identity_code(full_shift(2))


def test_apply_rejects_short_or_bad_words():
    code = shift_code(full_shift(2), 1)
    with pytest.raises(WordError):
        code.apply(word("01"))
    gm = golden_mean()
    with pytest.raises(WordError):
        apply_code(identity_code(gm), ("1", "1"))  # edge 1 (0->1) cannot repeat


# -- composition and canonical forms ------------------------------------------------

def test_compose_identity_neutral():
    f = flip_code(full_shift(2))
    ident = identity_code(full_shift(2))
    assert compose(ident, f) == f
    assert compose(f, ident) == f


def test_compose_flip_flip_is_identity():
    f = flip_code(full_shift(2))
    assert compose(f, f).canonical() == identity_code(full_shift(2))


def test_compose_shift_shift_is_shift_two():
    s = shift_code(full_shift(2), 1)
    ss = compose(s, s)
    assert ss.radius == 2
    assert ss.canonical_radius == 2
    assert ss == shift_code(full_shift(2), 2)


def test_compose_shift_with_inverse_cancels():
    s = shift_code(full_shift(2), 1)
    si = shift_code(full_shift(2), -1)
    assert compose(s, si).is_identity()
    assert compose(si, s).is_identity()


def test_compose_rejects_mismatched_shifts():
    with pytest.raises(ShiftMismatchError):
        compose(identity_code(full_shift(2)), identity_code(full_shift(3)))


def test_canonical_equality_is_chl_closure():
    # codes acting equally on every (2 max(r) + 1)-word have equal canonical form
    sft = full_shift(2)
    f = flip_code(sft)
    padded = SlidingBlockCode(sft, sft, 2, {w: {"0": "1", "1": "0"}[w[2]]
                                            for w in language(sft, 5)})
    assert padded.canonical_radius == 0
    assert padded == f


# -- commutation ------------------------------------------------------------------

def test_codes_commute_with_all_powers():
    for code in [flip_code(full_shift(2)), shift_code(full_shift(2), 1),
                 identity_code(golden_mean())]:
        for n in range(1, 5):
            assert commutes_with_power(code, n)


def test_word_map_commutation_detects_phase_maps():
    # a word reversal is not shift-commuting
    sft = full_shift(2)
    rev = WordMap(sft, sft, 1, 1, lambda w: tuple(reversed(w[1:-1])))
    assert not word_map_commutes_with_power(rev, 1, 6)
    # genuine codes, viewed as word maps, commute
    wm = word_map_from_code(shift_code(sft, 1))
    assert word_map_commutes_with_power(wm, 1, 6)
    assert word_map_commutes_with_power(wm, 3, 8)


def test_word_map_to_code_roundtrip():
    sft = golden_mean()
    s = shift_code(sft, 1)
    assert word_map_from_code(s).to_code() == s


# -- inverses ---------------------------------------------------------------------

def test_find_inverse_involution():
    f = flip_code(full_shift(2))
    assert find_inverse(f, 0) == f


def test_find_inverse_shift():
    s = shift_code(full_shift(2), 1)
    inv = find_inverse(s, 2)
    assert inv == shift_code(full_shift(2), -1)


def test_find_inverse_rejects_constant():
    sft = full_shift(2)
    const = SlidingBlockCode(sft, sft, 0, {("0",): "0", ("1",): "0"})
    assert find_inverse(const, 2) is None


def test_find_inverse_rejects_xor():
    # x_i -> x_i + x_{i+1} mod 2 is onto but two-to-one; no diamonds exist,
    # so only center recovery can reject it
    sft = full_shift(2)
    rule = {w: str((int(w[1]) + int(w[2])) % 2) for w in language(sft, 3)}
    xor = SlidingBlockCode(sft, sft, 1, rule)
    for R in range(0, 4):
        assert find_inverse(xor, R) is None


# -- enumeration ---------------------------------------------------------------------

def test_enumerate_full_two_radius0():
    autos = enumerate_automorphisms(full_shift(2), 1, 0, 0)
    assert len(autos) == 2
    assert identity_code(full_shift(2)) in autos.elements
    assert flip_code(full_shift(2)) in autos.elements


def test_enumerate_full_two_power_two_radius0():
    # radius-0 rules cannot distinguish the shift from its square
    autos = enumerate_automorphisms(full_shift(2), 2, 0, 0)
    assert len(autos) == 2


def test_enumerate_golden_mean_radius0():
    autos = enumerate_automorphisms(golden_mean(), 1, 0, 0)
    assert len(autos) == 1
    assert autos.elements[0].is_identity()


def test_enumerate_full_three_radius0():
    # all six symbol bijections are automorphisms of the full 3-shift
    autos = enumerate_automorphisms(full_shift(3), 1, 0, 0)
    assert len(autos) == 6


def test_enumerate_full_two_radius1_is_reversible_eca_census():
    # the reversible elementary CA: shifts and complement compositions
    autos = enumerate_automorphisms(full_shift(2), 1, 1)
    assert len(autos) == 6
    expected = set()
    f2 = full_shift(2)
    for k in (-1, 0, 1):
        expected.add(shift_code(f2, k))
        expected.add(compose(flip_code(f2), shift_code(f2, k)).canonical())
    assert set(autos.elements) == expected


def test_enumerate_golden_mean_radius1_shifts_only():
    autos = enumerate_automorphisms(golden_mean(), 1, 1)
    gm = golden_mean()
    assert set(autos.elements) == {shift_code(gm, -1), identity_code(gm),
                                   shift_code(gm, 1)}


def test_enumerate_doubled_cycle_radius0_side_swaps():
    autos = enumerate_automorphisms(doubled_cycle_period2(), 1, 0, 0)
    assert len(autos) == 8


def test_enumerate_power_presentation_components():
    # sigma^2 automorphisms of the period-2 doubled-loop graph, enumerated on
    # the power presentation: two full-2 components, radius 1 each
    y = power_shift(doubled_loop_period2(), 2)
    autos = enumerate_automorphisms(y, 1, 1)
    assert len(autos) == 72  # 2 component permutations x 6 x 6


def test_enumerated_sets_satisfy_group_laws():
    cases = [
        (full_shift(2), 1, 1), (full_shift(2), 6, 1),
        (full_shift(3), 1, 0),
        (golden_mean(), 1, 1),
        (doubled_loop_period2(), 1, 1),
        (cycle_graph(2), 1, 2), (cycle_graph(3), 2, 2),
        (doubled_cycle_period3(), 1, 1),
    ]
    for sft, n, r in cases:
        autos = enumerate_automorphisms(sft, n, r)
        ident = identity_code(sft)
        assert ident in autos.elements
        for code, inv in zip(autos.elements, autos.inverses):
            assert compose(code, inv).is_identity()
            assert compose(inv, code).is_identity()
            assert commutes_with_power(code, n)
        # closure under compose-then-canonicalize: composites are certified
        # automorphisms, and they appear in the set whenever their canonical
        # radius fits the truncation
        for f, fi in zip(autos.elements, autos.inverses):
            for g, gi in zip(autos.elements, autos.inverses):
                h = compose(f, g)
                hi = compose(gi, fi)
                assert compose(h, hi).is_identity()
                if h.canonical_radius <= r:
                    assert h.canonical() in autos.elements, (sft.states, n, r)


def test_enumerated_codes_preserve_admissibility():
    for sft, r in [(full_shift(2), 1), (golden_mean(), 1),
                   (doubled_cycle_period3(), 1)]:
        autos = enumerate_automorphisms(sft, 1, r)
        for code in autos.elements:
            for length in range(2 * r + 1, 2 * r + 6):
                for w in language(sft, length):
                    assert sft.is_admissible(code.apply(w))


def test_enumeration_is_deterministic():
    a = enumerate_automorphisms(full_shift(2), 1, 1)
    b = enumerate_automorphisms(full_shift(2), 1, 1)
    assert [c.canonical_key() for c in a.elements] == \
        [c.canonical_key() for c in b.elements]


def test_automorphism_set_document():
    autos = enumerate_automorphisms(full_shift(2), 1, 0, 0)
    doc = autos.to_document()
    assert doc["count"] == 2 and doc["schema_version"] == 1


# -- partition action -----------------------------------------------------------------

def test_partition_action_identity():
    sft = cycle_graph(3)
    part = cyclic_partition(sft, 3)
    assert partition_action(identity_code(sft), part) == (0, 1, 2)


def test_partition_action_shift_is_rotation():
    sft = cycle_graph(3)
    part = cyclic_partition(sft, 3)
    assert partition_action(shift_code(sft, 1), part) == (1, 2, 0)


def test_partition_action_class_swap():
    sft = doubled_cycle_period2()
    part = cyclic_partition(sft, 2)
    swap = None
    for code in enumerate_automorphisms(sft, 1, 0, 0).elements:
        if partition_action(code, part) == (1, 0):
            swap = code
            break
    assert swap is not None


def test_partition_action_homomorphism():
    sft = doubled_cycle_period2()
    part = cyclic_partition(sft, 2)
    autos = enumerate_automorphisms(sft, 1, 0, 0)
    for f in autos.elements:
        pf = partition_action(f, part)
        for g in autos.elements:
            pg = partition_action(g, part)
            composite = partition_action(compose(f, g).canonical(), part)
            assert composite == tuple(pf[pg[k]] for k in range(2))


def test_partition_action_splitting_is_an_error():
    sft = cycle_graph(4)
    part = cyclic_partition(sft, 2)
    # a deliberately broken rule: one class-0 window keeps its class, the
    # other moves; partition_action must refuse
    rule = {("0",): "0", ("1",): "1", ("2",): "1", ("3",): "3"}
    broken = SlidingBlockCode(sft, sft, 0, rule, validate=False)
    with pytest.raises(ImageSplitsClassesError):
        partition_action(broken, part)


def test_rotation_index_examples():
    sft = cycle_graph(3)
    part = cyclic_partition(sft, 3)
    assert rotation_index(identity_code(sft), part) == 0
    assert rotation_index(shift_code(sft, 1), part) == 1
    assert rotation_index(shift_code(sft, 5), part) == 2  # 5 mod 3


def test_rotation_index_rejects_non_rotation():
    sft = doubled_cycle_period2()
    part = cyclic_partition(sft, 2)
    # rotations and transpositions coincide at size 2, so build a size-4 case
    sft4 = cycle_graph(4)
    part4 = cyclic_partition(sft4, 4)
    # handcraft a class map that is a non-rotation permutation: swap classes
    # 1 and 3, fix 0 and 2
    rule = {("0",): "0", ("1",): "3", ("2",): "2", ("3",): "1"}
    broken = SlidingBlockCode(sft4, sft4, 0, rule, validate=False)
    with pytest.raises(ImageSplitsClassesError):
        rotation_index(broken, part4)


def test_partition_action_on_power_presentation():
    # component-swapping sigma^2-automorphisms act as the transposition on the
    # size-2 partition of the base shift
    base = doubled_loop_period2()
    part = cyclic_partition(base, 2)
    y = power_shift(base, 2)
    autos = enumerate_automorphisms(y, 1, 1)
    actions = {partition_action(code, part) for code in autos.elements}
    assert actions == {(0, 1), (1, 0)}
