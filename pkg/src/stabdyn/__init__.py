"""stabdyn: exact computation for subshifts of finite type and the wreath
algebra of their stabilized symmetry groups.

Everything is pure Python over exact integers (floats appear only in the
certified Perron-value iteration); all values are immutable after
construction and every operation is a pure function, so the library is safe
to use from concurrent threads of control.
"""

__version__ = "0.1.0"

from .budgets import Budget, default_budget
from .codes import (AutomorphismSet, SlidingBlockCode, apply_code, compose,
                    commutes_with_power, enumerate_automorphisms, find_inverse,
                    identity_code, partition_action, rotation_index,
                    shift_code)
from .groups import FiniteGroup, cyclic_group, is_isomorphic, symmetric_group
from .seqs import (check_example1_residues, check_example2_markers,
                   example1_word, example2_word, sturmian_prefix)
from .sft import (EdgeShift, EntropyResult, LanguageTable, entropy, full_shift,
                  is_irreducible, is_mixing, make_edge_shift, parse_edge_shift,
                  period, power_shift, words)
from .spectral import (CyclicPartition, PowerDecomposition, SmaleDecomposition,
                       coarsen_partition, cyclic_partition, decompose_power,
                       is_power_transitive, rational_eigs,
                       restricted_transitivity, smale)
from .verify import (check_wreath_rigidity, compare_rational_eigs,
                     entropy_ratio, verify_quotient_isos, verify_split_sequence)
from .wreath import (WreathContext, WreathElement, conjugate_in_base,
                     cycle_product, normal_subgroups_sym, wr_comm, wr_conj,
                     wr_inv, wr_mul, wreath_group)
