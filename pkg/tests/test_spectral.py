"""Eigenvalues, cyclic partitions, Smale decomposition, power factorization."""

from __future__ import annotations

import math

import pytest

from stabdyn.errors import (NoPowerDecompositionError, NoSuchEigenvalueError)
from stabdyn.sft import entropy, full_shift, is_mixing
from stabdyn.spectral import (class_restriction, coarsen_partition,
                              cyclic_partition, decompose_power, divisors,
                              exhaustive_partition_search, is_power_transitive,
                              power_decompositions_by_search, rational_eigs,
                              restricted_transitivity, smale)

from conftest import cycle_graph, doubled_loop_period2, golden_mean


# -- rational eigenvalues -----------------------------------------------------

def test_rational_eigs_examples():
    assert rational_eigs(full_shift(2)) == {1}
    assert rational_eigs(cycle_graph(6)) == {1, 2, 3, 6}
    assert rational_eigs(cycle_graph(2)) == {1, 2}


def test_eigs_match_exhaustive_partition_search(graph_catalog):
    # Both directions: m in Eig  <=>  a size-m cyclic state partition exists.
    for name, sft, p in graph_catalog:
        eigs = rational_eigs(sft)
        assert eigs == set(divisors(p)), name
        for m in range(1, 7):
            found = exhaustive_partition_search(sft, m)
            assert (found is not None) == (m in eigs), (name, m)


def test_eigs_lattice_laws(graph_catalog):
    for name, sft, _ in graph_catalog:
        eigs = rational_eigs(sft)
        for p in eigs:
            for q in eigs:
                assert math.lcm(p, q) in eigs, name
            for r in divisors(p):
                assert r in eigs, name


# -- cyclic partitions ---------------------------------------------------------

def test_cyclic_partition_two_cycle():
    part = cyclic_partition(cycle_graph(2), 2)
    assert part.classes == (frozenset({0}), frozenset({1}))


def test_cyclic_partition_size_one_is_everything(graph_catalog):
    for name, sft, _ in graph_catalog:
        part = cyclic_partition(sft, 1)
        assert part.classes == (frozenset(range(sft.n_states)),)


def test_cyclic_partition_rejects_non_eigenvalue():
    with pytest.raises(NoSuchEigenvalueError):
        cyclic_partition(golden_mean(), 2)


def test_coarsen_partition_matches_direct():
    sft = cycle_graph(6)
    fine = cyclic_partition(sft, 6)
    assert coarsen_partition(fine, 3).classes == cyclic_partition(sft, 3).classes
    assert coarsen_partition(fine, 6).classes == fine.classes
    with pytest.raises(NoSuchEigenvalueError):
        coarsen_partition(fine, 4)


def test_coarsen_partition_all_divisor_pairs(graph_catalog):
    for name, sft, p in graph_catalog:
        for m in divisors(p):
            fine = cyclic_partition(sft, m)
            for q in divisors(m):
                assert coarsen_partition(fine, q).classes == \
                    cyclic_partition(sft, q).classes, (name, m, q)


# -- Smale decomposition ---------------------------------------------------------

def test_smale_full_two_shift():
    dec = smale(full_shift(2))
    assert dec.period == 1
    assert dec.component_shift.adjacency == ((2,),)


def test_smale_two_cycle():
    dec = smale(cycle_graph(2))
    assert dec.period == 2
    assert dec.component_shift.n_states == 1
    assert dec.component_shift.adjacency == ((1,),)
    assert entropy(dec.component_shift).log_value == 0.0


def test_smale_doubled_loop():
    dec = smale(doubled_loop_period2())
    assert dec.period == 2
    assert dec.component_shift.adjacency == ((2,),)


def test_smale_component_is_mixing_and_entropy_scales(graph_catalog):
    for name, sft, p in graph_catalog:
        dec = smale(sft)
        assert dec.period == p, name
        assert is_mixing(dec.component_shift), name
        assert abs(entropy(dec.component_shift).log_value
                   - p * entropy(sft).log_value) < 1e-9, name


def test_smale_path_dictionary_consistent(graph_catalog):
    for name, sft, p in graph_catalog:
        dec = smale(sft)
        comp = dec.component_shift
        for sym, path in dec.path_dictionary.items():
            assert len(path) == p
            assert sft.is_admissible(path)
            assert comp.states[comp.tail(sym)] == sft.states[sft.tail(path[0])]
            assert comp.states[comp.head(sym)] == sft.states[sft.head(path[-1])]


# -- transitivity of powers --------------------------------------------------------

def test_power_transitivity_examples():
    assert not is_power_transitive(cycle_graph(2), 2, verify=True)
    assert is_power_transitive(cycle_graph(2), 3, verify=True)
    for n in range(1, 7):
        assert is_power_transitive(full_shift(2), n, verify=True)


def test_power_transitivity_matches_connectivity(graph_catalog):
    for name, sft, p in graph_catalog:
        for n in range(1, 13):
            assert is_power_transitive(sft, n, verify=True) == (math.gcd(n, p) == 1), \
                (name, n)


# -- power factorization -------------------------------------------------------------

def test_decompose_power_examples():
    d = decompose_power(cycle_graph(2), 6)
    assert (d.k, d.l) == (3, 2)
    d = decompose_power(full_shift(2), 5)
    assert (d.k, d.l) == (5, 1)
    d = decompose_power(cycle_graph(4), 4)
    assert (d.k, d.l) == (1, 4)


def test_decompose_power_unique_when_it_exists(graph_catalog):
    for name, sft, p in graph_catalog:
        for n in range(1, 13):
            candidates = power_decompositions_by_search(sft, n)
            # direct criterion: no prime divides n more often than the period
            ok = True
            for q in range(2, n + 1):
                if n % q == 0 and _is_prime(q) and p % q == 0:
                    if _val(n, q) > _val(p, q):
                        ok = False
            if ok:
                assert len(candidates) == 1, (name, n)
                d = decompose_power(sft, n)
                assert candidates[0] == (d.k, d.l)
                assert d.k * d.l == n and p % d.l == 0 and math.gcd(d.k, p) == 1
            else:
                assert candidates == [], (name, n)
                with pytest.raises(NoPowerDecompositionError):
                    decompose_power(sft, n)


def _is_prime(q: int) -> bool:
    return q > 1 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def _val(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def test_decompose_power_impossible_case():
    # period 2, n = 4: both factorizations have even transitive part
    assert power_decompositions_by_search(cycle_graph(2), 4) == []
    with pytest.raises(NoPowerDecompositionError):
        decompose_power(cycle_graph(2), 4)


# -- restricted transitivity -----------------------------------------------------------

def test_restricted_transitivity_examples():
    assert restricted_transitivity(cycle_graph(2), 2, 1, verify=True)
    assert not restricted_transitivity(cycle_graph(4), 2, 2, verify=True)
    for name_p in [2, 3, 5]:
        sft = cycle_graph(name_p)
        for n in range(1, 5):
            assert restricted_transitivity(sft, name_p, n, verify=True)


def test_restricted_transitivity_graph_crosscheck(graph_catalog):
    for name, sft, p in graph_catalog:
        for m in divisors(p):
            for n in range(1, 7):
                formula = restricted_transitivity(sft, m, n, verify=True)
                assert formula == (math.gcd(n, p // m) == 1), (name, m, n)


def test_restriction_induction_law(graph_catalog):
    # p in Eig(sigma^q on X_q)  <=>  p*q in Eig(sigma)
    for name, sft, per in graph_catalog:
        eigs = rational_eigs(sft)
        for q in divisors(per):
            part = cyclic_partition(sft, q)
            restriction = class_restriction(sft, part, q)
            induced = rational_eigs(restriction)
            assert induced == {p for p in range(1, per + 1) if p * q in eigs}, (name, q)


def test_m_sets_nested_under_restriction(graph_catalog):
    # transitive powers of the base system stay transitive on class restrictions
    for name, sft, per in graph_catalog:
        for q in divisors(per):
            part = cyclic_partition(sft, q)
            restriction = class_restriction(sft, part, q)
            for n in range(1, 13):
                if is_power_transitive(sft, n):
                    assert is_power_transitive(restriction, n), (name, q, n)
