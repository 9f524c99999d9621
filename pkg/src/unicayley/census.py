"""Closed-form matrix counts over GF(q) and brute-force oracles for each.

Every count is exact (arbitrary-precision integers throughout).  The central
family is the "shifted intersection" count: the number of invertible n x n
matrices M such that M - diag(I_r, 0) is also invertible.  Closed forms
exist for r = 0 (the general linear group order), r = 1, r = 2, and r = n
(linear derangements); the oracle covers every rank by full enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec, factor_prime_power
from .matrices import _det_flat, scan_space


def _check_nq(n: int, q: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"matrix side must be a positive integer, got {n!r}")
    if not isinstance(q, int) or factor_prime_power(q) is None:
        raise ValueError(f"field order must be a prime power >= 2, got {q!r}")


def gl_order(n: int, q: int) -> int:
    """Number of invertible n x n matrices over GF(q)."""
    _check_nq(n, q)
    out = 1
    qn = q ** n
    for k in range(1, n + 1):
        out *= qn - q ** (k - 1)
    return out


def derangements_formula(n: int, q: int) -> int:
    """Count of invertible matrices with neither 0 nor 1 as an eigenvalue.

    Evaluates the recurrence
        e_n = e_{n-1} * (q^n - 1) * q^{n-1} + (-1)^n * q^{n(n-1)/2}
    with base case e_0 = 1, which the enumeration oracle confirms (e_1 must
    equal q - 2, the number of scalars distinct from 0 and 1).
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"matrix side must be a nonnegative integer, got {n!r}")
    e = 1
    for i in range(1, n + 1):
        e = e * (q ** i - 1) * q ** (i - 1) + (-1) ** i * q ** (i * (i - 1) // 2)
    return e


def rank1_intersection_formula(n: int, q: int) -> int:
    """Closed form for invertible M with M - E_11 invertible.

    (q^n - q^{n-1} - 1) * prod_{k=1}^{n-1} (q^n - q^k); the product is empty
    at n = 1, where the count degenerates to q - 2.
    """
    _check_nq(n, q)
    qn = q ** n
    out = qn - q ** (n - 1) - 1
    for k in range(1, n):
        out *= qn - q ** k
    return out


def rank2_intersection_formula(n: int, q: int) -> int:
    """Closed form for invertible M with M - diag(1,1,0,...,0) invertible.

    Defined for n >= 2; at n = 2 the shift is the identity and the count
    collapses to the derangement count e_2.
    """
    _check_nq(n, q)
    if n < 2:
        raise ValueError(f"rank-2 shift needs n >= 2, got {n}")
    head = (
        q ** (2 * n) - q ** (2 * n - 1) - q ** (2 * n - 2) + q ** (2 * n - 3)
        + q ** (n - 1) - q ** (n + 1) + q
    )
    for k in range(2, n):
        head *= q ** n - q ** k
    return head


def rank2_case_formulas(n: int, q: int) -> tuple[int, int, int]:
    """Per-case closed forms behind the rank-2 count, for n >= 3.

    The rank-2 total splits by the rank of a distinguished leading 2 x 2
    block: case 1 collects rank 2, case 2 rank 0, case 3 rank 1.
    """
    _check_nq(n, q)
    if n < 3:
        raise ValueError(f"case split needs n >= 3, got {n}")
    tail = 1
    for k in range(2, n):
        tail *= q ** n - q ** k
    e2 = derangements_formula(2, q)
    case1 = e2 * q ** (2 * n - 4) * tail
    case2 = (q ** (n - 2) - 1) * (q ** (n - 2) - q) * tail
    case3 = (
        ((q * q - 1) * (q * q - q) - e2 - 1)
        * q ** (n - 2) * (q ** (n - 2) - 1) * tail
    )
    return case1, case2, case3


def intersection_count_formula(r: int, n: int, q: int) -> int:
    """Closed-form shifted-intersection count for the ranks that have one.

    Supported ranks are 0, 1, 2 and n; for 3 <= r <= n - 1 no closed form is
    available and ValueError is raised.
    """
    _check_nq(n, q)
    if not 0 <= r <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {r}")
    if r == 0:
        return gl_order(n, q)
    if r == n:
        return derangements_formula(n, q)
    if r == 1:
        return rank1_intersection_formula(n, q)
    if r == 2:
        return rank2_intersection_formula(n, q)
    raise ValueError(
        f"no closed form for rank {r} at n = {n}; use the enumeration oracle"
    )


def srg_parameters_n2(q: int) -> tuple[int, int, int, int]:
    """Strong-regularity parameter tuple (v, k, lambda, mu) for 2 x 2 matrices."""
    _check_nq(2, q)
    v = q ** 4
    k = q ** 4 - q ** 3 - q ** 2 + q
    lam = q ** 4 - 2 * q ** 3 - q ** 2 + 3 * q
    mu = q ** 4 - 2 * q ** 3 + q
    return v, k, lam, mu


# --- enumeration oracles --------------------------------------------------------


def derangements_oracle(
    n: int, field: FieldSpec, *, budget: int | None = None, threads: int = 1
) -> int:
    """Count linear derangements by scanning all of M_n."""
    return intersection_count_oracle(n, n, field, budget=budget, threads=threads)


def intersection_count_oracle(
    r: int,
    n: int,
    field: FieldSpec,
    *,
    budget: int | None = None,
    threads: int = 1,
) -> int:
    """Count invertible M with M - diag(I_r, 0) invertible, by full enumeration.

    For r = 0 this degenerates to the invertible-matrix count; for r = n it is
    the linear-derangement count.
    """
    if not 0 <= r <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {r}")
    dec = [field.sub(e, 1) for e in range(field.q)]
    diag = [i * (n + 1) for i in range(r)]

    def classify(flat):
        if _det_flat(flat, n, field) == 0:
            return -1
        shifted = list(flat)
        for pos in diag:
            shifted[pos] = dec[shifted[pos]]
        return 0 if _det_flat(shifted, n, field) != 0 else -1

    return scan_space(
        n, field, classify, 1,
        budget=budget, threads=threads,
        what=f"rank-{r} intersection oracle over M_{n}({field!r})",
    )[0]


def rank2_case_decomposition_oracle(
    n: int,
    field: FieldSpec,
    *,
    budget: int | None = None,
    threads: int = 1,
) -> tuple[int, int, int]:
    """Case totals (rank 2, rank 0, rank 1) behind the rank-2 count, n >= 3.

    Counts invertible B whose leading 2 x 2 block B1 keeps B1 + I_2
    invertible, classified by the rank of B1.  This set is equinumerous with
    the rank-2 shifted intersection (invert each member, then translate), and
    the case split matches rank2_case_formulas; classifying the intersection
    set by its own leading block does not, because inversion scrambles
    leading-block ranks.
    """
    if n < 3:
        raise ValueError(f"case split needs n >= 3, got {n}")
    f = field
    inc = [f.add(e, 1) for e in range(f.q)]

    def classify(flat):
        if _det_flat(flat, n, f) == 0:
            return -1
        b00, b01 = flat[0], flat[1]
        b10, b11 = flat[n], flat[n + 1]
        shifted2 = (inc[b00], b01, b10, inc[b11])
        if _det_flat(shifted2, 2, f) == 0:
            return -1
        if _det_flat((b00, b01, b10, b11), 2, f) != 0:
            return 0
        if b00 == b01 == b10 == b11 == 0:
            return 1
        return 2

    cases = scan_space(
        n, field, classify, 3,
        budget=budget, threads=threads,
        what=f"rank-2 case decomposition over M_{n}({field!r})",
    )
    return cases[0], cases[1], cases[2]


@dataclass(frozen=True)
class CensusRecord:
    """One exact count keyed by (n, q, rank) and the method that produced it."""

    n: int
    q: int
    rank: int
    method: str  # "formula" or "oracle"
    count: int

    def to_json_dict(self) -> dict:
        # count travels as a decimal string so consumers with fixed-width
        # integers cannot silently truncate it
        return {
            "n": self.n,
            "q": self.q,
            "rank": self.rank,
            "method": self.method,
            "count": str(self.count),
        }
