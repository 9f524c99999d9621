"""Command-line front end: census, verification, and SRG decisions.

Exit codes: 0 success (an SRG verdict of "no" is still success), 1 a
verification check failed, 2 usage error, 3 enumeration budget exceeded.
JSON output is deterministic: identical flags (including --seed) produce
byte-identical documents regardless of --threads.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys

from .census import (
    CensusRecord,
    derangements_formula,
    intersection_count_formula,
    intersection_count_oracle,
    rank1_intersection_formula,
    rank2_case_decomposition_oracle,
    rank2_case_formulas,
    rank2_intersection_formula,
)
from .errors import BudgetExceededError, DEFAULT_BUDGET
from .fields import FieldSpec, factor_prime_power, make_field, poly_text
from .graph import (
    common_neighbors_bruteforce,
    common_neighbors_by_rank,
    explicit_graph_build,
    srg_decide,
)
from .matrices import (
    canonical_rank_matrix,
    enumerate_matrices,
    index_to_matrix,
    matrix_space_size,
    parse_matrix,
    singular_shift_criterion,
)

BUDGET_ENV_VAR = "UNICAYLEY_BUDGET"

CHECK_NAMES = (
    "rank1-singularity",
    "rank1-count",
    "rank2-count",
    "recurrence",
    "rank-reduction",
    "all",
)

RANK_REDUCTION_SAMPLES = 50


class UsageError(Exception):
    """Bad flag combination or unparsable value; maps to exit code 2."""


def parse_field(text: str, *, max_order: int) -> FieldSpec:
    """Parse a field designation: '5' or '2^3'; bare orders may be prime powers."""
    t = text.strip()
    try:
        if "^" in t:
            p_text, k_text = t.split("^", 1)
            p, k = int(p_text), int(k_text)
        else:
            q = int(t)
            pk = factor_prime_power(q)
            if pk is None:
                raise UsageError(f"field order {q} is not a prime power")
            p, k = pk
    except ValueError:
        raise UsageError(f"cannot parse field designation {text!r}") from None
    try:
        return make_field(p, k, max_order=max_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _resolve_budget(args) -> int:
    if args.budget is not None:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV_VAR}={env!r} is not an integer") from None
        if value <= 0:
            raise UsageError(f"{BUDGET_ENV_VAR} must be positive")
        return value
    return DEFAULT_BUDGET


def _resolve_threads(args) -> int:
    t = args.threads
    if t == "auto":
        return os.cpu_count() or 1
    try:
        value = int(t)
    except ValueError:
        raise UsageError(f"--threads takes an integer or 'auto', got {t!r}") from None
    if value < 1:
        raise UsageError("--threads must be >= 1")
    return value


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


# --- census -------------------------------------------------------------------


def _census_records(args, n, field, budget, threads):
    """Build (records, agrees_by_rank, pair_info) for the census command."""
    q = field.q
    method = args.method
    records: list[CensusRecord] = []
    agrees: dict[int, bool] = {}
    pair_info = None

    if args.matrix_a is not None or args.matrix_b is not None:
        if args.matrix_a is None or args.matrix_b is None:
            raise UsageError("pair queries need both --matrix-a and --matrix-b")
        if args.rank is not None:
            raise UsageError("--rank conflicts with a pair query; the rank is derived")
        try:
            a = parse_matrix(args.matrix_a, field)
            b = parse_matrix(args.matrix_b, field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if a.n != n or b.n != n:
            raise UsageError(f"matrix literals must be {n}x{n}")
        r = (a - b).rank()
        pair_info = {"matrix_a": a.to_literal(), "matrix_b": b.to_literal(), "rank": r}
        counts = {}
        if method in ("formula", "both"):
            try:
                counts["formula"] = intersection_count_formula(r, n, q)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        if method in ("oracle", "both"):
            counts["oracle"] = common_neighbors_bruteforce(
                a, b, budget=budget, threads=threads
            )
        for m in ("formula", "oracle"):
            if m in counts:
                records.append(CensusRecord(n, q, r, m, counts[m]))
        if method == "both":
            agrees[r] = counts["formula"] == counts["oracle"]
        return records, agrees, pair_info

    if args.rank is None or args.rank == "all":
        ranks = list(range(n + 1))
    else:
        try:
            r = int(args.rank)
        except ValueError:
            raise UsageError(f"--rank takes an integer or 'all', got {args.rank!r}") from None
        if not 0 <= r <= n:
            raise UsageError(f"--rank must lie in [0, {n}], got {r}")
        ranks = [r]

    for r in ranks:
        counts = {}
        if method in ("formula", "both"):
            try:
                counts["formula"] = intersection_count_formula(r, n, q)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        if method in ("oracle", "both"):
            counts["oracle"] = intersection_count_oracle(
                r, n, field, budget=budget, threads=threads
            )
        for m in ("formula", "oracle"):
            if m in counts:
                records.append(CensusRecord(n, q, r, m, counts[m]))
        if method == "both":
            agrees[r] = counts["formula"] == counts["oracle"]
    return records, agrees, pair_info


def _cmd_census(args) -> int:
    budget = _resolve_budget(args)
    threads = _resolve_threads(args)
    field = parse_field(args.field, max_order=budget)
    n = args.n
    records, agrees, pair_info = _census_records(args, n, field, budget, threads)

    if args.output == "json":
        doc = {
            "command": "census",
            "n": n,
            "q": field.q,
            "records": [rec.to_json_dict() for rec in records],
        }
        if args.method == "both":
            doc["agrees"] = {str(r): agrees[r] for r in sorted(agrees)}
        if pair_info is not None:
            doc["pair"] = pair_info
        _print_json(doc)
    elif args.output == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "q", "rank", "method", "count", "agrees"])
        for rec in records:
            flag = ""
            if rec.rank in agrees:
                flag = "true" if agrees[rec.rank] else "false"
            writer.writerow([rec.n, rec.q, rec.rank, rec.method, rec.count, flag])
    else:
        if pair_info is not None:
            print(
                f"pair {pair_info['matrix_a']} vs {pair_info['matrix_b']}: "
                f"rank {pair_info['rank']}"
            )
        for rec in records:
            print(f"n={rec.n} q={rec.q} rank={rec.rank} {rec.method}: {rec.count}")
        for r in sorted(agrees):
            print(f"rank {r}: {'agree' if agrees[r] else 'DISAGREE'}")
    return 0


# --- verify -------------------------------------------------------------------


def _check_rank1_singularity(n, field, seed, budget, threads):
    e11 = canonical_rank_matrix(n, 1, field)
    mismatches = 0
    first = None
    total = 0
    for a in enumerate_matrices(n, field, budget=budget):
        lhs = a.is_invertible() and not (a + e11).is_invertible()
        rhs = singular_shift_criterion(a)
        if lhs != rhs:
            mismatches += 1
            if first is None:
                first = a.to_literal()
        total += 1
    if mismatches:
        return False, (
            f"{mismatches} of {total} matrices split the equivalence; "
            f"first witness {first}"
        )
    return True, f"equivalence holds for all {total} matrices"


def _check_rank1_count(n, field, seed, budget, threads):
    lhs = rank1_intersection_formula(n, field.q)
    rhs = intersection_count_oracle(1, n, field, budget=budget, threads=threads)
    return lhs == rhs, f"formula {lhs} vs oracle {rhs}"


def _check_rank2_count(n, field, seed, budget, threads):
    if n < 2:
        raise UsageError("the rank-2 count needs n >= 2")
    lhs = rank2_intersection_formula(n, field.q)
    rhs = intersection_count_oracle(2, n, field, budget=budget, threads=threads)
    if lhs != rhs:
        return False, f"formula {lhs} vs oracle {rhs}"
    if n < 3:
        return True, f"formula {lhs} == oracle {rhs}"
    cases = rank2_case_decomposition_oracle(n, field, budget=budget, threads=threads)
    expected = rank2_case_formulas(n, field.q)
    if cases != expected or sum(cases) != rhs:
        return False, (
            f"case split oracle {cases} vs formulas {expected}, total {rhs}"
        )
    return True, f"formula {lhs} == oracle {rhs}; case split {cases} matches"


def _check_recurrence(n, field, seed, budget, threads):
    q = field.q
    for i in range(1, max(n, 1) + 1):
        lhs = derangements_formula(i, q)
        rhs = (
            derangements_formula(i - 1, q) * (q ** i - 1) * q ** (i - 1)
            + (-1) ** i * q ** (i * (i - 1) // 2)
        )
        if lhs != rhs:
            return False, f"step {i}: {lhs} vs {rhs}"
    return True, f"recurrence steps 1..{max(n, 1)} hold"


def _check_rank_reduction(n, field, seed, budget, threads):
    size = matrix_space_size(n, field)
    rng = random.Random(seed)
    for trial in range(RANK_REDUCTION_SAMPLES):
        i = rng.randrange(size)
        j = rng.randrange(size - 1)
        if j >= i:
            j += 1
        a = index_to_matrix(i, n, field)
        b = index_to_matrix(j, n, field)
        brute = common_neighbors_bruteforce(a, b, budget=budget, threads=threads)
        reduced = common_neighbors_by_rank(a, b, budget=budget, threads=threads)
        if brute != reduced:
            return False, (
                f"trial {trial}: pair ({a.to_literal()}, {b.to_literal()}) "
                f"brute {brute} vs rank-class {reduced}"
            )
    return True, f"{RANK_REDUCTION_SAMPLES} sampled pairs agree"


_CHECKS = {
    "rank1-singularity": _check_rank1_singularity,
    "rank1-count": _check_rank1_count,
    "rank2-count": _check_rank2_count,
    "recurrence": _check_recurrence,
    "rank-reduction": _check_rank_reduction,
}


def _cmd_verify(args) -> int:
    budget = _resolve_budget(args)
    threads = _resolve_threads(args)
    field = parse_field(args.field, max_order=budget)
    n = args.n
    if args.check == "all":
        names = [name for name in _CHECKS if name != "rank2-count" or n >= 2]
    else:
        names = [args.check]
    results = []
    for name in names:
        passed, detail = _CHECKS[name](n, field, args.seed, budget, threads)
        results.append({"check": name, "pass": passed, "detail": detail})
    all_pass = all(r["pass"] for r in results)

    if args.output == "json":
        _print_json(
            {
                "command": "verify",
                "n": n,
                "q": field.q,
                "seed": args.seed,
                "checks": results,
                "all_pass": all_pass,
            }
        )
    else:
        for r in results:
            print(f"{'PASS' if r['pass'] else 'FAIL'} {r['check']} "
                  f"(n={n}, q={field.q}): {r['detail']}")
    return 0 if all_pass else 1


# --- srg and graph-build --------------------------------------------------------


def _cmd_srg(args) -> int:
    budget = _resolve_budget(args)
    threads = _resolve_threads(args)
    field = parse_field(args.field, max_order=budget)
    report = srg_decide(args.n, field, budget=budget, threads=threads)
    if args.output == "json":
        _print_json(report.to_json_dict())
    else:
        print(f"Cay(M_{report.n}(GF({report.q})), invertible differences): "
              f"order {report.order}, degree {report.degree}")
        print(f"lambda (adjacent pairs): {report.lam}")
        for r in sorted(report.mu_by_rank):
            print(f"mu for difference rank {r}: {report.mu_by_rank[r]}")
        print(f"strongly regular: {'yes' if report.is_srg else 'no'}")
        if report.parameters:
            print(f"parameters (v, k, lambda, mu): {report.parameters}")
        if report.witness:
            (r1, r2), (c1, c2) = report.witness.rank_pair, report.witness.counts
            print(f"witness: rank {r1} count {c1} != rank {r2} count {c2}")
        if report.note:
            print(f"note: {report.note}")
    return 0


def _cmd_graph_build(args) -> int:
    budget = _resolve_budget(args)
    field = parse_field(args.field, max_order=budget)
    g = explicit_graph_build(args.n, field, budget=budget)
    result = g.pairwise_srg_test()
    if args.output == "json":
        _print_json(
            {
                "command": "graph-build",
                "n": args.n,
                "q": field.q,
                "order": g.order,
                "edges": g.edge_count(),
                "pairwise_srg": {
                    "is_srg": result.is_srg,
                    "degree": result.degree,
                    "lambda": result.lam,
                    "mu": result.mu,
                    "note": result.note,
                },
            }
        )
    else:
        print(f"built graph on {g.order} vertices with {g.edge_count()} edges")
        print(f"degree: {result.degree}, lambda: {result.lam}, mu: {result.mu}")
        print(f"pairwise strongly regular: {'yes' if result.is_srg else 'no'}")
        if result.note:
            print(f"note: {result.note}")
    return 0


def _cmd_field_info(args) -> int:
    budget = _resolve_budget(args)
    field = parse_field(args.field, max_order=budget)
    if args.output == "json":
        _print_json(
            {
                "command": "field-info",
                "p": field.p,
                "k": field.k,
                "q": field.q,
                "modulus": list(field.modulus) if field.modulus else None,
                "modulus_text": poly_text(field.modulus) if field.modulus else None,
            }
        )
    else:
        if field.k == 1:
            print(f"GF({field.q}): prime field")
        else:
            print(f"GF({field.q}) = GF({field.p}^{field.k}), "
                  f"modulus {poly_text(field.modulus)}")
    return 0


# --- parser and entry point -----------------------------------------------------


def _add_common(sub, *, with_n=True, with_threads=True, with_seed=False):
    sub.add_argument("--field", required=True,
                     help="field designation: a prime power like 4, or p^k like 2^2")
    if with_n:
        sub.add_argument("--n", type=int, required=True, help="matrix side length")
    sub.add_argument("--budget", type=int, default=None,
                     help=f"max enumeration size (default {DEFAULT_BUDGET}, "
                          f"or ${BUDGET_ENV_VAR})")
    if with_threads:
        sub.add_argument("--threads", default="auto",
                         help="worker count for oracle scans, or 'auto'")
    if with_seed:
        sub.add_argument("--seed", type=int, default=0,
                         help="seed for sampled checks")
    sub.add_argument("--output", choices=("json", "csv", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unicayley",
        description="Exact census and strong-regularity decisions for the "
                    "unitary Cayley graph of n x n matrices over GF(q).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("field-info", help="show a field's construction")
    _add_common(p, with_n=False, with_threads=False)
    p.set_defaults(func=_cmd_field_info)

    p = subs.add_parser("census", help="closed-form and oracle counts by rank")
    _add_common(p)
    p.add_argument("--rank", default=None,
                   help="shift rank in [0, n], or 'all' (the default)")
    p.add_argument("--method", choices=("formula", "oracle", "both"), default="both")
    p.add_argument("--matrix-a", default=None,
                   help="matrix literal like '1,0;0,1' for a pairwise query")
    p.add_argument("--matrix-b", default=None,
                   help="second matrix literal of the pairwise query")
    p.set_defaults(func=_cmd_census)

    p = subs.add_parser("verify", help="run a named verification suite")
    _add_common(p, with_seed=True)
    p.add_argument("--check", choices=CHECK_NAMES, required=True)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("srg", help="decide strong regularity at (n, q)")
    _add_common(p)
    p.set_defaults(func=_cmd_srg)

    p = subs.add_parser("graph-build", help="materialize a tiny graph and "
                                            "re-check strong regularity pairwise")
    _add_common(p, with_threads=False)
    p.set_defaults(func=_cmd_graph_build)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.output == "csv" and args.command != "census":
        print("error: --output csv is only available for census", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
