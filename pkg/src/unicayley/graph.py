"""The unitary Cayley graph of M_n(GF(q)) and its strong-regularity decision.

Vertices are all n x n matrices; two are adjacent when their difference is
invertible.  The graph is vertex-transitive and the number of common
neighbors of two distinct vertices depends only on rank(A - B), which is
what makes the strong-regularity decision tractable: instead of scanning all
vertex pairs it suffices to compare the per-rank counts.

explicit_graph_build materializes the adjacency relation for tiny spaces and
re-derives the verdict from scratch, pair by pair, as an independent check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .census import gl_order, intersection_count_oracle, srg_parameters_n2
from .errors import BudgetExceededError, DEFAULT_BUDGET, check_budget
from .fields import FieldSpec
from .matrices import Matrix, _det_flat, _iter_flat, matrix_space_size, scan_space

# explicit_graph_build stores one bit per vertex pair; 2^16 vertices is the
# 512 MB point and the hard cap.
HARD_VERTEX_CAP = 1 << 16


def adjacent(a: Matrix, b: Matrix) -> bool:
    """True iff a - b is invertible; symmetric, never true on the diagonal."""
    a._same_space(b)
    return (a - b).is_invertible()


def common_neighbors_bruteforce(
    a: Matrix, b: Matrix, *, budget: int | None = None, threads: int = 1
) -> int:
    """Count vertices adjacent to both a and b by scanning the whole space."""
    a._same_space(b)
    n = a.n
    field = a.field
    sub = field.sub_table
    af = a.entries
    bf = b.entries
    if sub is not None:
        def classify(flat):
            da = [sub[x][y] for x, y in zip(flat, af)]
            if _det_flat(da, n, field) == 0:
                return -1
            db = [sub[x][y] for x, y in zip(flat, bf)]
            return 0 if _det_flat(db, n, field) != 0 else -1
    else:
        fsub = field.sub

        def classify(flat):
            da = [fsub(x, y) for x, y in zip(flat, af)]
            if _det_flat(da, n, field) == 0:
                return -1
            db = [fsub(x, y) for x, y in zip(flat, bf)]
            return 0 if _det_flat(db, n, field) != 0 else -1

    return scan_space(
        n, field, classify, 1,
        budget=budget, threads=threads,
        what=f"common-neighbor scan over M_{n}({field!r})",
    )[0]


def common_neighbors_by_rank(
    a: Matrix, b: Matrix, *, budget: int | None = None, threads: int = 1
) -> int:
    """Common-neighbor count via the rank-class reduction.

    Computes r = rank(a - b) and returns the shifted-intersection count for
    the canonical representative diag(I_r, 0); equals the brute-force count
    for every distinct pair.
    """
    a._same_space(b)
    if a == b:
        raise ValueError("common_neighbors_by_rank needs two distinct vertices")
    r = (a - b).rank()
    return intersection_count_oracle(r, a.n, a.field, budget=budget, threads=threads)


def _degree_of_index(idx: int, n: int, field: FieldSpec) -> int:
    v = []
    q = field.q
    for _ in range(n * n):
        idx, d = divmod(idx, q)
        v.append(d)
    sub = field.sub_table
    count = 0
    if sub is not None:
        for flat in _iter_flat(n, field):
            diff = [sub[x][y] for x, y in zip(flat, v)]
            if _det_flat(diff, n, field) != 0:
                count += 1
    else:
        fsub = field.sub
        for flat in _iter_flat(n, field):
            diff = [fsub(x, y) for x, y in zip(flat, v)]
            if _det_flat(diff, n, field) != 0:
                count += 1
    return count


def regularity_check(
    n: int,
    field: FieldSpec,
    mode: str = "single_vertex",
    *,
    seed: int | None = None,
    samples: int = 32,
    budget: int | None = None,
) -> tuple[int, bool]:
    """Measure vertex degrees; returns (degree, uniform).

    Modes: "single_vertex" scans one vertex (translation by -A is an
    adjacency-preserving bijection, so one vertex decides regularity),
    "sampled" scans seeded random vertices, "exhaustive" scans all of them.
    """
    size = matrix_space_size(n, field)
    if mode == "single_vertex":
        check_budget(size, budget, "single-vertex degree scan")
        return _degree_of_index(0, n, field), True
    if mode == "sampled":
        check_budget(size * samples, budget, "sampled degree scan")
        rng = random.Random(seed)
        degrees = {
            _degree_of_index(rng.randrange(size), n, field) for _ in range(samples)
        }
        return max(degrees), len(degrees) == 1
    if mode == "exhaustive":
        check_budget(size * size, budget, "exhaustive pairwise degree scan")
        degrees = {_degree_of_index(i, n, field) for i in range(size)}
        return max(degrees), len(degrees) == 1
    raise ValueError(f"unknown regularity mode {mode!r}")


@dataclass(frozen=True)
class SrgWitness:
    """Two rank classes whose common-neighbor counts disagree."""

    rank_pair: tuple[int, int]
    counts: tuple[int, int]


@dataclass(frozen=True)
class SrgReport:
    """Verdict of the strong-regularity decision for one (n, q)."""

    n: int
    q: int
    order: int
    degree: int
    lam: int
    mu_by_rank: dict[int, int]
    is_srg: bool
    parameters: tuple[int, int, int, int] | None
    witness: SrgWitness | None
    note: str | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "n": self.n,
            "q": self.q,
            "order": self.order,
            "degree": self.degree,
            "lambda": self.lam,
            "mu_by_rank": {str(r): self.mu_by_rank[r] for r in sorted(self.mu_by_rank)},
            "is_srg": self.is_srg,
            "parameters": list(self.parameters) if self.parameters else None,
            "witness": (
                {
                    "rank_pair": list(self.witness.rank_pair),
                    "counts": list(self.witness.counts),
                }
                if self.witness
                else None
            ),
        }
        if self.note is not None:
            doc["note"] = self.note
        return doc


def srg_decide(
    n: int, field: FieldSpec, *, budget: int | None = None, threads: int = 1
) -> SrgReport:
    """Decide strong regularity of the unitary Cayley graph of M_n(GF(q)).

    All counts come from enumeration oracles over canonical rank
    representatives: lambda from the full-rank shift, mu per rank class
    r = 1..n-1 from diag(I_r, 0) against the zero vertex.  For n = 2 the
    oracle-measured parameters are checked against the closed-form tuple; a
    mismatch raises RuntimeError.  Complete graphs (n = 1) are reported as
    not strongly regular by convention.
    """
    q = field.q
    order = matrix_space_size(n, field)
    degree = gl_order(n, q)
    scanned = intersection_count_oracle(0, n, field, budget=budget, threads=threads)
    if scanned != degree:
        raise RuntimeError(
            f"degree scan {scanned} disagrees with closed form {degree}"
        )
    lam = intersection_count_oracle(n, n, field, budget=budget, threads=threads)
    if n == 1:
        return SrgReport(
            n=n, q=q, order=order, degree=degree, lam=lam,
            mu_by_rank={}, is_srg=False, parameters=None, witness=None,
            note="complete graph: every pair is adjacent, so the "
                 "non-adjacent condition is vacuous and the graph is "
                 "excluded by convention",
        )
    mu_by_rank = {
        r: intersection_count_oracle(r, n, field, budget=budget, threads=threads)
        for r in range(1, n)
    }
    is_srg = len(set(mu_by_rank.values())) == 1
    parameters = None
    witness = None
    if is_srg:
        parameters = (order, degree, lam, mu_by_rank[1])
        if n == 2 and parameters != srg_parameters_n2(q):
            raise RuntimeError(
                f"measured parameters {parameters} disagree with the "
                f"closed-form tuple {srg_parameters_n2(q)}"
            )
    else:
        r1, r2 = 1, 2
        if mu_by_rank[r1] == mu_by_rank[r2]:
            ranks = sorted(mu_by_rank)
            r1, r2 = next(
                (a, b)
                for i, a in enumerate(ranks)
                for b in ranks[i + 1:]
                if mu_by_rank[a] != mu_by_rank[b]
            )
        witness = SrgWitness((r1, r2), (mu_by_rank[r1], mu_by_rank[r2]))
    return SrgReport(
        n=n, q=q, order=order, degree=degree, lam=lam,
        mu_by_rank=mu_by_rank, is_srg=is_srg,
        parameters=parameters, witness=witness,
    )


@dataclass(frozen=True)
class PairwiseSrgResult:
    """From-scratch verdict obtained by examining every vertex pair."""

    order: int
    degree: int | None
    lam: int | None
    mu: int | None
    is_srg: bool
    note: str | None = None


class CayleyGraph:
    """Materialized adjacency relation, one bit set per vertex."""

    def __init__(self, n: int, field: FieldSpec, adjacency: list[int]):
        self.n = n
        self.field = field
        self.order = len(adjacency)
        self.adjacency = adjacency

    def is_edge(self, i: int, j: int) -> bool:
        return (self.adjacency[i] >> j) & 1 == 1

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def edge_count(self) -> int:
        return sum(bits.bit_count() for bits in self.adjacency) // 2

    def common_neighbor_count(self, i: int, j: int) -> int:
        return (self.adjacency[i] & self.adjacency[j]).bit_count()

    def pairwise_srg_test(self) -> PairwiseSrgResult:
        """Check the strong-regularity conditions on every vertex pair."""
        degrees = {self.degree(i) for i in range(self.order)}
        if len(degrees) != 1:
            return PairwiseSrgResult(
                self.order, None, None, None, False, note="not regular"
            )
        degree = degrees.pop()
        lam_vals: set[int] = set()
        mu_vals: set[int] = set()
        adj = self.adjacency
        for i in range(self.order):
            bits = adj[i]
            for j in range(i + 1, self.order):
                c = (bits & adj[j]).bit_count()
                if (bits >> j) & 1:
                    lam_vals.add(c)
                else:
                    mu_vals.add(c)
        if not mu_vals:
            return PairwiseSrgResult(
                self.order, degree, lam_vals.pop() if len(lam_vals) == 1 else None,
                None, False, note="complete graph: no non-adjacent pairs",
            )
        if len(lam_vals) != 1 or len(mu_vals) != 1:
            return PairwiseSrgResult(
                self.order, degree, None, None, False,
                note="common-neighbor counts vary within a class",
            )
        return PairwiseSrgResult(
            self.order, degree, lam_vals.pop(), mu_vals.pop(), True
        )


def explicit_graph_build(
    n: int, field: FieldSpec, *, budget: int | None = None
) -> CayleyGraph:
    """Materialize the full adjacency relation for a tiny matrix space.

    Neighbors of A are exactly A + U over invertible U, so the build walks
    the invertible set once per vertex.  Refuses spaces above the vertex cap.
    """
    order = matrix_space_size(n, field)
    cap = min(DEFAULT_BUDGET if budget is None else budget, HARD_VERTEX_CAP)
    if order > cap:
        raise BudgetExceededError(order, cap, what="explicit graph build (vertices)")
    q = field.q
    m = n * n
    units = [
        flat for flat in _iter_flat(n, field) if _det_flat(flat, n, field) != 0
    ]
    add = field.add_table
    fadd = field.add if add is None else None
    adjacency = []
    for vflat in _iter_flat(n, field):
        bits = 0
        for u in units:
            idx = 0
            if add is not None:
                for j in range(m - 1, -1, -1):
                    idx = idx * q + add[vflat[j]][u[j]]
            else:
                for j in range(m - 1, -1, -1):
                    idx = idx * q + fadd(vflat[j], u[j])
            bits |= 1 << idx
        adjacency.append(bits)
    return CayleyGraph(n, field, adjacency)
