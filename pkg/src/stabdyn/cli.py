"""Command-line entry point.

Every subcommand emits one structured JSON document (schema_version 1) on
stdout; a run manifest (subcommand, flags, input hashes, version, wall time)
goes to --manifest or stderr.  Identical inputs and version produce
byte-identical stdout; manifests differ only in wall time.

Exit codes: 0 pass/inconclusive, 1 usage/parse/budget error,
2 theorem-violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .codes import enumerate_automorphisms
from .errors import StabdynError
from .groups import (FiniteGroup, cyclic_group, direct_product, dihedral_square,
                     klein_group, quaternion_group, symmetric_group,
                     trivial_group)
from .seqs import (check_example1_residues, check_example2_markers,
                   example1_word, example2_word)
from .sft import entropy, is_irreducible, parse_edge_shift, period
from .spectral import cyclic_partition, rational_eigs, smale
from .verify import (check_wreath_rigidity, compare_rational_eigs,
                     entropy_ratio, verify_quotient_isos, verify_split_sequence)
from .wreath import (WreathContext, wr_comm, wr_conj, wr_inv, wr_mul)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

SCHEMA_BY_COMMAND = {
    "analyze": "analyze", "eigs": "eigs", "partition": "partition",
    "autos": "autos", "verify-wreath": "verify_wreath",
    "quotients": "quotients", "wreath-calc": "wreath_calc",
    "rigidity": "rigidity", "compare-eigs": "compare_eigs",
    "entropy-ratio": "entropy_ratio", "example1": "example",
    "example2": "example", "sweep": "sweep",
}


def schema_for(command: str) -> dict:
    """The shipped JSON schema for a subcommand's stdout document."""
    from importlib import resources
    name = SCHEMA_BY_COMMAND[command]
    path = resources.files("stabdyn").joinpath(f"schemas/{name}.json")
    return json.loads(path.read_text(encoding="utf-8"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _read_source(arg: str) -> tuple:
    """(text, origin): file contents when arg names a file, else inline."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as handle:
            return handle.read(), arg
    return arg, "<inline>"


def _load_shift(arg: str) -> tuple:
    text, origin = _read_source(arg)
    return parse_edge_shift(text), text, origin


GROUP_SHORTHANDS = {
    "trivial": trivial_group,
    "klein": klein_group,
    "v4": klein_group,
    "d4": dihedral_square,
    "q8": quaternion_group,
}


def load_group(spec: str) -> tuple:
    """Group from a shorthand ("cyclic:9", "sym:3", "klein", "z3xz3", ...) or
    a JSON table document file."""
    lowered = spec.lower()
    if lowered in GROUP_SHORTHANDS:
        return GROUP_SHORTHANDS[lowered](), spec
    if lowered.startswith("cyclic:"):
        return cyclic_group(int(lowered.split(":", 1)[1])), spec
    if lowered.startswith("sym:"):
        return symmetric_group(int(lowered.split(":", 1)[1])), spec
    if lowered == "z3xz3":
        return direct_product(cyclic_group(3), cyclic_group(3)), spec
    if lowered == "z4xz2":
        return direct_product(cyclic_group(4), cyclic_group(2)), spec
    if lowered == "z2xz2xz2":
        return direct_product(klein_group(), cyclic_group(2)), spec
    text, origin = _read_source(spec)
    doc = json.loads(text)
    return FiniteGroup(doc["table"], names=doc.get("names"),
                       generators=doc.get("generators")), origin


def _hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _emit(args, doc, plain: str = None) -> None:
    if getattr(args, "quiet", False):
        return
    if plain is not None and not getattr(args, "json", False):
        sys.stdout.write(plain + "\n")
        return
    sys.stdout.write(_dumps(doc))


def _manifest(args, started: float, input_hashes: dict) -> None:
    manifest = {
        "schema_version": 1,
        "subcommand": args.command,
        "flags": {k: v for k, v in sorted(vars(args).items())
                  if k not in {"command", "func"} and not k.startswith("_")
                  and not callable(v)},
        "input_hashes": input_hashes,
        "library_version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
        "result_path": "-",
    }
    text = json.dumps(manifest, sort_keys=True, default=str) + "\n"
    path = getattr(args, "manifest", None)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stderr.write(text)


# -- subcommand implementations ----------------------------------------------------


def cmd_analyze(args) -> int:
    sft, text, _ = _load_shift(args.input)
    doc = {
        "schema_version": 1,
        "matrix_hash": sft.matrix_hash(),
        "states": list(sft.states),
        "normalization_log": list(sft.normalization_log),
        "irreducible": is_irreducible(sft),
    }
    if doc["irreducible"]:
        p = period(sft)
        ent = entropy(sft)
        dec = smale(sft)
        doc.update({
            "period": p,
            "rational_eigenvalues": sorted(rational_eigs(sft)),
            "entropy": ent.log_value,
            "perron_eigenvalue": ent.perron_value,
            "power_iterations": ent.iterations,
            "mixing": p == 1,
            "smale": {
                "period": dec.period,
                "component_states": list(dec.component_shift.states),
                "component_adjacency": [list(r) for r in dec.component_shift.adjacency],
                "component_entropy": entropy(dec.component_shift).log_value,
            },
        })
        if getattr(args, "verify", False):
            doc["verified"] = _dual_path_checks(sft, p, ent, dec)
    args._hashes = {"input": _hash(text)}
    _emit(args, doc)
    return EXIT_OK


def _dual_path_checks(sft, p, ent, dec) -> bool:
    """Runtime cross-checks: independent oracles must agree with the fast
    paths (raises VerificationError on a mismatch)."""
    from .errors import VerificationError
    from .sft import is_mixing, period_by_cycles, perron_root_by_charpoly
    from .spectral import exhaustive_partition_search, divisors
    if period_by_cycles(sft) != p:
        raise VerificationError("cycle-enumeration period disagrees with BFS period")
    if sft.n_states <= 6:
        lam = perron_root_by_charpoly([list(r) for r in sft.adjacency])
        if abs(lam - ent.perron_value) > 1e-8:
            raise VerificationError("characteristic-polynomial Perron root disagrees")
        for m in range(1, 7):
            if (exhaustive_partition_search(sft, m) is not None) != (p % m == 0):
                raise VerificationError(f"partition search disagrees at m={m}")
    if not is_mixing(dec.component_shift):
        raise VerificationError("Smale component is not mixing")
    return True


def cmd_eigs(args) -> int:
    sft, text, _ = _load_shift(args.input)
    doc = {
        "schema_version": 1,
        "matrix_hash": sft.matrix_hash(),
        "period": period(sft),
        "rational_eigenvalues": sorted(rational_eigs(sft)),
    }
    args._hashes = {"input": _hash(text)}
    _emit(args, doc)
    return EXIT_OK


def cmd_partition(args) -> int:
    sft, text, _ = _load_shift(args.input)
    part = cyclic_partition(sft, args.m)
    args._hashes = {"input": _hash(text)}
    _emit(args, part.to_document(sft))
    return EXIT_OK


def cmd_autos(args) -> int:
    sft, text, _ = _load_shift(args.input)
    autos = enumerate_automorphisms(sft, args.power, args.radius, args.inv_radius)
    args._hashes = {"input": _hash(text)}
    _emit(args, autos.to_document())
    return EXIT_OK


def cmd_verify_wreath(args) -> int:
    sft, text, _ = _load_shift(args.input)
    report = verify_split_sequence(sft, args.n, args.m, args.radius,
                                   args.inv_radius)
    args._hashes = {"input": _hash(text)}
    _emit(args, report.to_document())
    return EXIT_OK if report.passes else EXIT_VIOLATION


def cmd_quotients(args) -> int:
    sft, text, _ = _load_shift(args.input)
    report = verify_quotient_isos(sft, args.m, args.radius, args.inv_radius)
    args._hashes = {"input": _hash(text)}
    _emit(args, report.to_document())
    return EXIT_OK if report.passes else EXIT_VIOLATION


def cmd_wreath_calc(args) -> int:
    text, _ = _read_source(args.expr)
    doc = json.loads(text)
    base_spec = doc.get("base", {"cyclic": 2})
    if "cyclic" in base_spec:
        base = cyclic_group(int(base_spec["cyclic"]))
    else:
        base = FiniteGroup(base_spec["table"], names=base_spec.get("names"))
    ctx = WreathContext(base, int(doc["n"]))
    bindings = {
        name: ctx.element(tuple(val["g"]), tuple(val["sigma"]))
        for name, val in doc.get("bindings", {}).items()
    }

    def evaluate(node):
        if isinstance(node, str):
            return bindings[node]
        op, *rest = node
        operands = [evaluate(x) for x in rest]
        if op == "mul":
            acc = operands[0]
            for other in operands[1:]:
                acc = wr_mul(acc, other)
            return acc
        if op == "inv":
            return wr_inv(operands[0])
        if op == "conj":
            return wr_conj(operands[0], operands[1])
        if op == "comm":
            return wr_comm(operands[0], operands[1])
        raise StabdynError(f"unknown operation {op!r}")

    result = evaluate(doc["expr"])
    args._hashes = {"expr": _hash(text)}
    _emit(args, {"schema_version": 1, "result": result.to_document(),
                 "name": result.name()})
    return EXIT_OK


def cmd_rigidity(args) -> int:
    group_g, name_g = load_group(args.group_g)
    group_h, name_h = load_group(args.group_h)
    report = check_wreath_rigidity(group_g, args.n, group_h, args.m,
                                   name_g, name_h)
    args._hashes = {"group_g": _hash(name_g), "group_h": _hash(name_h)}
    _emit(args, report.to_document())
    return EXIT_OK if report.passes else EXIT_VIOLATION


def cmd_compare_eigs(args) -> int:
    x, tx, _ = _load_shift(args.input_x)
    y, ty, _ = _load_shift(args.input_y)
    doc = compare_rational_eigs(x, y)
    args._hashes = {"input_x": _hash(tx), "input_y": _hash(ty)}
    _emit(args, doc)
    return EXIT_OK


def cmd_entropy_ratio(args) -> int:
    x, tx, _ = _load_shift(args.input_x)
    y, ty, _ = _load_shift(args.input_y)
    report = entropy_ratio(x, y, args.max_den, args.tol)
    args._hashes = {"input_x": _hash(tx), "input_y": _hash(ty)}
    _emit(args, report.to_document())
    return EXIT_OK


def cmd_example1(args) -> int:
    word = example1_word(args.level)
    doc = {"schema_version": 1, "scheme": "example1", "level": args.level,
           "length": len(word), "word": word}
    if args.check_n:
        report = check_example1_residues(args.check_n, args.depth)
        doc["residue_check"] = report.to_document()
        args._hashes = {}
        _emit(args, doc)
        return EXIT_OK if report.passes else EXIT_VIOLATION
    args._hashes = {}
    _emit(args, doc, plain=word)
    return EXIT_OK


def cmd_example2(args) -> int:
    word = example2_word(args.level)
    doc = {"schema_version": 1, "scheme": "example2", "level": args.level,
           "length": len(word), "word": word,
           "note": "recursion pinned by the length law len(A_n) = 3^(n+1)"}
    if args.check_n:
        report = check_example2_markers(args.check_n, args.depth)
        doc["residue_check"] = report.to_document()
        args._hashes = {}
        _emit(args, doc)
        return EXIT_OK if report.passes else EXIT_VIOLATION
    args._hashes = {}
    _emit(args, doc, plain=word)
    return EXIT_OK


SWEEP_SHIFTS = {
    "full2": "2",
    "golden": "1 1 / 1 0",
    "cycle2": "0 1 / 1 0",
    "cycle3": "0 1 0 / 0 0 1 / 1 0 0",
    "doubled_loop_p2": "0 2 / 1 0",
    "doubled_cycle_p3": "0 2 0 / 0 0 1 / 1 0 0",
}

SWEEP_SPLIT_INSTANCES = [
    ("full2", 1, 1), ("golden", 2, 1), ("golden", 3, 1),
    ("cycle2", 1, 2), ("cycle2", 3, 2), ("doubled_loop_p2", 1, 2),
    ("cycle3", 1, 3), ("cycle3", 2, 3), ("doubled_cycle_p3", 1, 3),
]


def rigidity_sweep_pairs(order_cap: int = 2000):
    """All base pairs of order <= 9 with equal wreath order <= order_cap and
    different arities n != m in {2, 3, 4}."""
    import math
    catalog = [
        ("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)), ("Z4", cyclic_group(4)),
        ("V4", klein_group()), ("Z5", cyclic_group(5)), ("Z6", cyclic_group(6)),
        ("S3", symmetric_group(3)), ("Z7", cyclic_group(7)), ("Z8", cyclic_group(8)),
        ("Z4xZ2", direct_product(cyclic_group(4), cyclic_group(2))),
        ("Z2xZ2xZ2", direct_product(klein_group(), cyclic_group(2))),
        ("D4", dihedral_square()), ("Q8", quaternion_group()),
        ("Z9", cyclic_group(9)),
        ("Z3xZ3", direct_product(cyclic_group(3), cyclic_group(3))),
    ]
    entries = []
    for name, group in catalog:
        for n in (2, 3, 4):
            order = group.order ** n * math.factorial(n)
            if order <= order_cap:
                entries.append((order, name, group, n))
    pairs = []
    for i, (oa, na, ga, n) in enumerate(entries):
        for ob, nb, gb, m in entries[i:]:
            if oa == ob and n != m:
                pairs.append((na, ga, n, nb, gb, m))
    return pairs


def cmd_sweep(args) -> int:
    results = []
    worst = EXIT_OK
    for key, n, m in sorted(SWEEP_SPLIT_INSTANCES):
        sft = parse_edge_shift(SWEEP_SHIFTS[key])
        report = verify_split_sequence(sft, n, m, args.radius)
        results.append({"instance": f"split:{key}:n{n}:m{m}",
                        "passes": report.passes,
                        "automorphisms": report.automorphism_count})
        if not report.passes:
            worst = EXIT_VIOLATION
    for name_g, g, n, name_h, h, m in rigidity_sweep_pairs():
        report = check_wreath_rigidity(g, n, h, m, name_g, name_h)
        results.append({"instance": f"rigidity:{name_g}wr{n}:{name_h}wr{m}",
                        "passes": report.passes,
                        "isomorphic": report.isomorphic})
        if not report.passes:
            worst = EXIT_VIOLATION
    results.sort(key=lambda r: r["instance"])
    doc = {"schema_version": 1, "instances": results,
           "all_pass": worst == EXIT_OK}
    args._hashes = {}
    _emit(args, doc)
    return worst


# -- parser -------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="stabdyn", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="always emit the JSON document")
        p.add_argument("--quiet", action="store_true",
                       help="suppress stdout (exit code only)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed recorded in the manifest (reserved for "
                            "sampled sweeps)")
        p.add_argument("--manifest", help="write the run manifest to this path")

    p = sub.add_parser("analyze", help="period, eigenvalues, entropy, Smale piece")
    p.add_argument("input")
    p.add_argument("--verify", action="store_true",
                   help="run the dual-path oracles (cycle enumeration, "
                        "characteristic polynomial, partition search)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("eigs", help="rational eigenvalue set")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("partition", help="canonical cyclic partition")
    p.add_argument("input")
    p.add_argument("-m", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("autos", help="radius-bounded automorphism stage")
    p.add_argument("input")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--radius", type=int, default=0)
    p.add_argument("--inv-radius", dest="inv_radius", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_autos)

    p = sub.add_parser("verify-wreath", help="split exact sequence report")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--inv-radius", dest="inv_radius", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify_wreath)

    p = sub.add_parser("quotients", help="shift-quotient isomorphism report")
    p.add_argument("input")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--inv-radius", dest="inv_radius", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser("wreath-calc", help="evaluate a wreath expression document")
    p.add_argument("expr")
    common(p)
    p.set_defaults(func=cmd_wreath_calc)

    p = sub.add_parser("rigidity", help="wreath rigidity check for one pair")
    p.add_argument("--group-g", dest="group_g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group-h", dest="group_h", required=True)
    p.add_argument("--m", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("compare-eigs", help="eigenvalue set comparison")
    p.add_argument("input_x")
    p.add_argument("input_y")
    common(p)
    p.set_defaults(func=cmd_compare_eigs)

    p = sub.add_parser("entropy-ratio", help="rationality of the entropy ratio")
    p.add_argument("input_x")
    p.add_argument("input_y")
    p.add_argument("--max-den", dest="max_den", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_entropy_ratio)

    for name, fn in (("example1", cmd_example1), ("example2", cmd_example2)):
        p = sub.add_parser(name, help=f"{name} generator and residue checks")
        p.add_argument("--level", type=int, required=True)
        p.add_argument("--check-n", dest="check_n", type=int, default=None)
        p.add_argument("--depth", type=int, default=None)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep", help="run the verification instance matrix")
    p.add_argument("--radius", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    args._hashes = {}
    try:
        code = args.func(args)
    except StabdynError as exc:
        sys.stderr.write(f"stabdyn: error: {exc}\n")
        return EXIT_USAGE
    except (json.JSONDecodeError, OSError, KeyError, ValueError) as exc:
        sys.stderr.write(f"stabdyn: error: {exc}\n")
        return EXIT_USAGE
    _manifest(args, started, args._hashes)
    return code


if __name__ == "__main__":
    sys.exit(main())
