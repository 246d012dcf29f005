"""Edge-shift core: parsing, language, period, entropy, power shifts."""

from __future__ import annotations

import math

import pytest

from stabdyn.errors import EmptyShiftError, ParseError, ReducibleShiftError
from stabdyn.sft import (EdgeShift, entropy, full_shift, is_irreducible,
                         is_mixing, make_edge_shift, mat_pow, parse_edge_shift,
                         period, period_by_cycles, perron_root_by_charpoly,
                         power_shift, state_words, strongly_connected_components,
                         word_count, words, words_of_length)

from conftest import (cycle_graph, doubled_cycle_period3, golden_mean)

GOLDEN = (1 + math.sqrt(5)) / 2


# -- parsing ---------------------------------------------------------------

def test_parse_full_two_shift():
    sft = parse_edge_shift("2")
    assert sft.n_states == 1
    assert len(sft.alphabet) == 2
    assert sft.adjacency == ((2,),)


def test_parse_golden_mean_and_word_count_oracle():
    sft = parse_edge_shift("1 1 / 1 0")
    assert sft.n_states == 2
    # validated by word count p_X(2) = 3 in the vertex labeling
    assert len(state_words(sft, 2)) == 3


def test_parse_degenerate_graph_is_empty():
    with pytest.raises(EmptyShiftError):
        parse_edge_shift("0 1 / 0 0")


def test_parse_rejects_bad_matrices():
    with pytest.raises(ParseError):
        parse_edge_shift("1 2 / 3")
    with pytest.raises(ParseError):
        parse_edge_shift("1 -1 / 1 1")
    with pytest.raises(ParseError):
        parse_edge_shift("x y / 1 1")


def test_parse_structured_document():
    sft = parse_edge_shift('{"states": ["a", "b"], "adjacency": [[1, 1], [1, 0]]}')
    assert sft.states == ("a", "b")


def test_normalization_log_records_removals():
    sft = make_edge_shift(["0", "1", "2"], [[1, 1, 0], [1, 0, 0], [0, 1, 0]])
    # state 2 has no incoming edge: removed
    assert sft.n_states == 2
    assert any("2" in entry for entry in sft.normalization_log)


# -- irreducibility, period, mixing -----------------------------------------

def test_irreducibility_examples(graph_catalog):
    assert is_irreducible(full_shift(2))
    assert is_irreducible(cycle_graph(2))
    two_loops = EdgeShift(["0", "1"], [[1, 0], [0, 1]])
    assert not is_irreducible(two_loops)
    for _, sft, _ in graph_catalog:
        assert is_irreducible(sft)


def test_period_examples():
    assert period(full_shift(2)) == 1
    assert period(cycle_graph(2)) == 2
    assert period(doubled_cycle_period3()) == 3


def test_period_matches_cycle_enumeration_oracle(graph_catalog):
    for name, sft, expected in graph_catalog:
        assert period(sft) == expected, name
        assert period_by_cycles(sft) == expected, name


def test_period_rejects_reducible():
    two_loops = EdgeShift(["0", "1"], [[1, 0], [0, 1]])
    with pytest.raises(ReducibleShiftError):
        period(two_loops)


def test_is_mixing_examples():
    assert is_mixing(full_shift(2))
    assert not is_mixing(cycle_graph(2))
    assert is_mixing(golden_mean())  # cycles of lengths 1 and 2


# -- language ----------------------------------------------------------------

def test_words_full_two_shift():
    table = words(full_shift(2), 2)
    assert table.words(2) == (("0", "0"), ("0", "1"), ("1", "0"), ("1", "1"))


def test_words_golden_mean_vertex_labeling():
    # p_X(3) = 5 = F(5) in the vertex labeling (Fibonacci complexity)
    assert len(state_words(golden_mean(), 3)) == 5
    for n in range(1, 8):
        fib = [1, 1]
        while len(fib) < n + 3:
            fib.append(fib[-1] + fib[-2])
        assert len(state_words(golden_mean(), n)) == fib[n + 1]


def test_words_three_cycle():
    assert len(words_of_length(cycle_graph(3), 4)) == 3


def test_word_count_matches_matrix_power(graph_catalog):
    for name, sft, _ in graph_catalog:
        for length in range(1, 11):
            expected = word_count(sft, length)
            if expected > 5000:
                continue
            assert len(words_of_length(sft, length)) == expected, (name, length)


def test_language_is_composable(graph_catalog):
    for name, sft, _ in graph_catalog:
        table = words(sft, 5)
        for length in range(1, 5):
            shorter = set(table.words(length))
            for w in table.words(length + 1):
                assert w[:-1] in shorter and w[1:] in shorter, name


# -- entropy ------------------------------------------------------------------

def test_entropy_full_shifts_exact():
    for k in range(1, 17):
        result = entropy(full_shift(k))
        assert abs(result.log_value - math.log(k)) < 1e-12
        assert abs(result.perron_value - k) < 1e-12


def test_entropy_golden_mean_against_charpoly_oracle():
    sft = golden_mean()
    result = entropy(sft)
    assert abs(result.perron_value - GOLDEN) < 1e-12
    assert abs(result.log_value - math.log(GOLDEN)) < 1e-9
    oracle = perron_root_by_charpoly([list(r) for r in sft.adjacency])
    assert abs(result.perron_value - oracle) < 1e-9


def test_entropy_three_cycle_is_zero():
    assert entropy(cycle_graph(3)).log_value == 0.0


def test_entropy_charpoly_crosscheck(graph_catalog):
    for name, sft, _ in graph_catalog:
        if sft.n_states > 6:
            continue
        lam = entropy(sft).perron_value
        oracle = perron_root_by_charpoly([list(r) for r in sft.adjacency])
        assert abs(lam - oracle) < 1e-8, name


# -- power shifts --------------------------------------------------------------

def test_power_shift_full_two_cubed():
    p = power_shift(full_shift(2), 3)
    assert p.n_states == 1
    assert len(p.alphabet) == 8
    assert sorted(p.parent_paths.values()) == sorted(
        [(a, b, c) for a in "01" for b in "01" for c in "01"])


def test_power_shift_two_cycle_squared():
    p = power_shift(cycle_graph(2), 2)
    assert p.adjacency == ((1, 0), (0, 1))
    assert not is_irreducible(p)
    assert len(strongly_connected_components(p)) == 2


def test_power_shift_golden_mean_squared():
    p = power_shift(golden_mean(), 2)
    assert p.adjacency == ((2, 1), (1, 1))


def test_power_shift_paths_are_admissible_parent_words():
    sft = doubled_cycle_period3()
    p = power_shift(sft, 3)
    for sym, path in p.parent_paths.items():
        assert len(path) == 3
        assert sft.is_admissible(path)
        assert sft.tail(path[0]) == p.tail(sym)
        assert sft.head(path[-1]) == p.head(sym)


def test_power_shift_rejects_zero():
    with pytest.raises(ParseError):
        power_shift(full_shift(2), 0)


def test_entropy_of_power_scales(graph_catalog):
    for name, sft, _ in graph_catalog:
        h = entropy(sft).log_value
        for n in range(1, 7):
            p = power_shift(sft, n, include_paths=False)
            assert abs(entropy(p).log_value - n * h) < 1e-9, (name, n)


def test_period_of_power_components(graph_catalog):
    # period of each strongly connected component of the n-th power shift
    # equals period / gcd(n, period)
    for name, sft, p in graph_catalog:
        for n in range(1, 13):
            expected = p // math.gcd(n, p)
            ps = power_shift(sft, n, include_paths=False)
            for comp in strongly_connected_components(ps):
                sub = [[ps.adjacency[i][j] for j in comp] for i in comp]
                restricted = make_edge_shift([str(i) for i in comp], sub)
                assert period(restricted) == expected, (name, n)


def test_entropy_iteration_cap_is_enforced():
    from stabdyn.errors import IterationCapError
    with pytest.raises(IterationCapError):
        entropy(golden_mean(), iteration_cap=2)
