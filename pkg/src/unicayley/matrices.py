"""Exact dense n x n matrices over a FieldSpec.

Covers ring arithmetic, rank, determinant, inverse, the two-sided rank
factorization P*A*Q = diag(I_r, 0), the linear-derangement predicate, and
canonical enumeration of the full matrix space by integer index (entry (0,0)
is the least significant base-q digit).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from .errors import check_budget
from .fields import FieldSpec


class Matrix:
    """Immutable square matrix with row-major integer-coded entries."""

    __slots__ = ("n", "entries", "field")

    def __init__(self, n: int, entries, field: FieldSpec):
        if n < 1:
            raise ValueError(f"matrix side must be positive, got {n}")
        entries = tuple(entries)
        if len(entries) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(entries)}")
        q = field.q
        for e in entries:
            if not isinstance(e, int) or not 0 <= e < q:
                raise ValueError(f"{e!r} is not an element code of {field!r}")
        self.n = n
        self.entries = entries
        self.field = field

    @classmethod
    def _wrap(cls, n: int, entries: tuple, field: FieldSpec) -> "Matrix":
        # Trusted constructor for arithmetic results and enumeration output.
        m = object.__new__(cls)
        m.n = n
        m.entries = entries
        m.field = field
        return m

    def _same_space(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.n + j]

    def row(self, i: int) -> tuple:
        n = self.n
        return self.entries[i * n:(i + 1) * n]

    def column(self, j: int) -> tuple:
        n = self.n
        return tuple(self.entries[i * n + j] for i in range(n))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_space(other)
        f = self.field
        return Matrix._wrap(
            self.n,
            tuple(f.add(a, b) for a, b in zip(self.entries, other.entries)),
            f,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_space(other)
        f = self.field
        return Matrix._wrap(
            self.n,
            tuple(f.sub(a, b) for a, b in zip(self.entries, other.entries)),
            f,
        )

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._wrap(self.n, tuple(f.neg(a) for a in self.entries), f)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_space(other)
        n = self.n
        f = self.field
        a = self.entries
        b = other.entries
        out = [0] * (n * n)
        for i in range(n):
            base = i * n
            for j in range(n):
                acc = 0
                for t in range(n):
                    acc = f.add(acc, f.mul(a[base + t], b[t * n + j]))
                out[base + j] = acc
        return Matrix._wrap(n, tuple(out), f)

    def scalar_mul(self, c: int) -> "Matrix":
        f = self.field
        f._check(c)
        return Matrix._wrap(self.n, tuple(f.mul(c, a) for a in self.entries), f)

    def determinant(self) -> int:
        return _det_flat(self.entries, self.n, self.field)

    def rank(self) -> int:
        n = self.n
        rows = [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]
        return _rank_rows(rows, self.field)

    def is_invertible(self) -> bool:
        return _det_flat(self.entries, self.n, self.field) != 0

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse; raises SingularMatrixError on rank < n."""
        from .errors import SingularMatrixError

        n = self.n
        f = self.field
        sub, mul, inv = f.sub, f.mul, f.inv
        aug = [
            list(self.entries[i * n:(i + 1) * n])
            + [1 if j == i else 0 for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError(f"matrix of rank < {n} has no inverse")
            if piv != col:
                aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            if pv != 1:
                ipv = inv(pv)
                aug[col] = [mul(ipv, x) for x in aug[col]]
            prow = aug[col]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    c = aug[r][col]
                    aug[r] = [sub(x, mul(c, y)) for x, y in zip(aug[r], prow)]
        flat = tuple(aug[i][n + j] for i in range(n) for j in range(n))
        return Matrix._wrap(n, flat, f)

    def is_linear_derangement(self) -> bool:
        """True iff the matrix and its shift by -I are both invertible."""
        if not self.is_invertible():
            return False
        return (self - identity_matrix(self.n, self.field)).is_invertible()

    def index(self) -> int:
        """Position of this matrix in the canonical enumeration of its space."""
        code = 0
        q = self.field.q
        for e in reversed(self.entries):
            code = code * q + e
        return code

    def to_literal(self) -> str:
        n = self.n
        return ";".join(
            ",".join(str(e) for e in self.entries[i * n:(i + 1) * n])
            for i in range(n)
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n, self.entries, self.field))

    def __repr__(self):
        return f"Matrix({self.to_literal()!r}, {self.field!r})"


# --- constructors -------------------------------------------------------------


def zero_matrix(n: int, field: FieldSpec) -> Matrix:
    return Matrix._wrap(n, (0,) * (n * n), field)


def identity_matrix(n: int, field: FieldSpec) -> Matrix:
    return canonical_rank_matrix(n, n, field)


def canonical_rank_matrix(n: int, r: int, field: FieldSpec) -> Matrix:
    """diag(I_r, 0): the canonical representative of rank r."""
    if not 0 <= r <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {r}")
    flat = [0] * (n * n)
    for i in range(r):
        flat[i * (n + 1)] = 1
    return Matrix._wrap(n, tuple(flat), field)


def matrix_from_rows(rows, field: FieldSpec) -> Matrix:
    rows = [list(r) for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("rows must form a square matrix")
    return Matrix(n, [e for r in rows for e in r], field)


def parse_matrix(text: str, field: FieldSpec) -> Matrix:
    """Parse a literal like '1,0;0,1' (rows split by ';', entries by ',')."""
    try:
        rows = [
            [int(tok) for tok in row.split(",")]
            for row in text.strip().split(";")
        ]
    except ValueError:
        raise ValueError(f"malformed matrix literal {text!r}") from None
    return matrix_from_rows(rows, field)


# --- elimination kernels ------------------------------------------------------


def _det_flat(e, n: int, field: FieldSpec) -> int:
    """Determinant of a flat row-major entry sequence."""
    if n == 1:
        return e[0]
    mt = field.mul_table
    if mt is not None:
        st = field.sub_table
        if n == 2:
            return st[mt[e[0]][e[3]]][mt[e[1]][e[2]]]
        if n == 3:
            a, b, c, d, x, f, g, h, i = e
            m1 = st[mt[x][i]][mt[f][h]]
            m2 = st[mt[d][i]][mt[f][g]]
            m3 = st[mt[d][h]][mt[x][g]]
            return field.add_table[st[mt[a][m1]][mt[b][m2]]][mt[c][m3]]
    elif n == 2:
        return field.sub(field.mul(e[0], e[3]), field.mul(e[1], e[2]))
    rows = [list(e[r * n:(r + 1) * n]) for r in range(n)]
    sub, mul, inv, neg = field.sub, field.mul, field.inv, field.neg
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = neg(det)
        pv = rows[col][col]
        det = mul(det, pv)
        ipv = inv(pv)
        prow = rows[col]
        for r in range(col + 1, n):
            lead = rows[r][col]
            if lead != 0:
                c = mul(lead, ipv)
                rr = rows[r]
                for j in range(col, n):
                    rr[j] = sub(rr[j], mul(c, prow[j]))
    return det


def _rank_rows(rows: list[list[int]], field: FieldSpec) -> int:
    """Row rank of a rectangular list-of-rows; mutates its argument."""
    if not rows:
        return 0
    m = len(rows)
    width = len(rows[0])
    sub, mul, inv = field.sub, field.mul, field.inv
    rank = 0
    for col in range(width):
        # Pivot: first nonzero entry scanning top to bottom in this column.
        piv = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        ipv = inv(prow[col])
        for r in range(rank + 1, m):
            lead = rows[r][col]
            if lead != 0:
                c = mul(lead, ipv)
                rr = rows[r]
                for j in range(col, width):
                    rr[j] = sub(rr[j], mul(c, prow[j]))
        rank += 1
        if rank == m:
            break
    return rank


@dataclass(frozen=True)
class RankFactorization:
    """Witness (P, Q, rank) with P * A * Q = diag(I_rank, 0), P and Q invertible."""

    P: Matrix
    Q: Matrix
    rank: int


def rank_factorize(a: Matrix) -> RankFactorization:
    """Two-sided Gauss-Jordan reduction of a to diag(I_r, 0).

    Row operations accumulate into P, column operations into Q.  Any witness
    satisfying the product identity is acceptable; this one is deterministic
    but not canonical.
    """
    n = a.n
    f = a.field
    sub, mul, inv = f.sub, f.mul, f.inv
    b = [list(a.entries[i * n:(i + 1) * n]) for i in range(n)]
    pmat = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    qmat = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    rank = 0
    for t in range(n):
        pivot = None
        for j in range(t, n):
            for i in range(t, n):
                if b[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            b[t], b[pi] = b[pi], b[t]
            pmat[t], pmat[pi] = pmat[pi], pmat[t]
        if pj != t:
            for row in b:
                row[t], row[pj] = row[pj], row[t]
            for row in qmat:
                row[t], row[pj] = row[pj], row[t]
        pv = b[t][t]
        if pv != 1:
            ipv = inv(pv)
            b[t] = [mul(ipv, x) for x in b[t]]
            pmat[t] = [mul(ipv, x) for x in pmat[t]]
        prow = b[t]
        for i in range(n):
            if i != t and b[i][t] != 0:
                c = b[i][t]
                b[i] = [sub(x, mul(c, y)) for x, y in zip(b[i], prow)]
                pmat[i] = [sub(x, mul(c, y)) for x, y in zip(pmat[i], pmat[t])]
        for j in range(t + 1, n):
            c = b[t][j]
            if c != 0:
                for row in b:
                    row[j] = sub(row[j], mul(c, row[t]))
                for row in qmat:
                    row[j] = sub(row[j], mul(c, row[t]))
        rank += 1
    p = Matrix._wrap(n, tuple(x for row in pmat for x in row), f)
    q = Matrix._wrap(n, tuple(x for row in qmat for x in row), f)
    return RankFactorization(p, q, rank)


def singular_shift_criterion(a: Matrix) -> bool:
    """Determinant-and-span test equivalent to "A invertible, A + E_11 singular".

    With columns a_1..a_n of A and v_1 = (1, 0, ..., 0)^T, this holds iff
    det(v_1, a_2, ..., a_n) != 0 and a_1 + v_1 lies in span(a_2, ..., a_n).
    Span membership is decided by comparing ranks with and without the
    augmenting column.
    """
    n = a.n
    f = a.field
    flat = list(a.entries)
    for i in range(n):
        flat[i * n] = 1 if i == 0 else 0
    if _det_flat(flat, n, f) == 0:
        return False
    first_col = a.column(0)
    target = [f.add(first_col[i], 1 if i == 0 else 0) for i in range(n)]
    base = [[a.entry(i, j) for j in range(1, n)] for i in range(n)]
    base_rank = _rank_rows([row[:] for row in base], f)
    augmented = [row + [target[i]] for i, row in enumerate(base)]
    return base_rank == _rank_rows(augmented, f)


# --- canonical enumeration ----------------------------------------------------


def matrix_space_size(n: int, field: FieldSpec) -> int:
    return field.q ** (n * n)


def index_to_matrix(i: int, n: int, field: FieldSpec) -> Matrix:
    size = matrix_space_size(n, field)
    if not 0 <= i < size:
        raise ValueError(f"index {i} outside [0, {size})")
    q = field.q
    flat = []
    for _ in range(n * n):
        i, d = divmod(i, q)
        flat.append(d)
    return Matrix._wrap(n, tuple(flat), field)


def matrix_to_index(a: Matrix) -> int:
    return a.index()


def _iter_flat(n: int, field: FieldSpec, start: int = 0, stop: int | None = None):
    """Yield flat entry tuples in ascending index order over [start, stop)."""
    size = matrix_space_size(n, field)
    stop = size if stop is None else stop
    if not 0 <= start <= stop <= size:
        raise ValueError(f"bad enumeration range [{start}, {stop}) for size {size}")
    q = field.q
    m = n * n
    if start == 0 and stop == size:
        # itertools.product counts with its leftmost slot most significant;
        # reversing each tuple restores the row-major digit convention.
        for t in product(range(q), repeat=m):
            yield t[::-1]
        return
    digits = []
    i = start
    for _ in range(m):
        i, d = divmod(i, q)
        digits.append(d)
    top = q - 1
    for _ in range(stop - start):
        yield tuple(digits)
        pos = 0
        while pos < m and digits[pos] == top:
            digits[pos] = 0
            pos += 1
        if pos < m:
            digits[pos] += 1


def enumerate_matrices(
    n: int,
    field: FieldSpec,
    start: int = 0,
    stop: int | None = None,
    *,
    budget: int | None = None,
):
    """Iterate every matrix of the space exactly once, in ascending index order.

    Supports sub-range iteration over [start, stop) so independent workers can
    partition the space.  Budget and range problems raise eagerly, before the
    first matrix is produced.
    """
    size = matrix_space_size(n, field)
    check_budget(size, budget, f"enumeration of {size} matrices")
    stop = size if stop is None else stop
    if not 0 <= start <= stop <= size:
        raise ValueError(f"bad enumeration range [{start}, {stop}) for size {size}")
    return (Matrix._wrap(n, flat, field) for flat in _iter_flat(n, field, start, stop))


def _tally_range(n, field, classify, bins, lo, hi):
    out = [0] * bins
    for flat in _iter_flat(n, field, lo, hi):
        b = classify(flat)
        if b >= 0:
            out[b] += 1
    return out


def scan_space(
    n: int,
    field: FieldSpec,
    classify,
    bins: int,
    *,
    budget: int | None = None,
    threads: int = 1,
    what: str = "matrix-space scan",
) -> list[int]:
    """Tally classify(flat_entries) over the whole matrix space.

    classify returns a bin in [0, bins) or -1 to skip the matrix.  The space
    is split into contiguous index ranges whose tallies merge by addition, so
    the result does not depend on the thread count.
    """
    size = matrix_space_size(n, field)
    check_budget(size, budget, what)
    if threads <= 1 or size < 4 * threads:
        return _tally_range(n, field, classify, bins, 0, size)
    step = -(-size // threads)
    ranges = [(lo, min(lo + step, size)) for lo in range(0, size, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(
            pool.map(lambda r: _tally_range(n, field, classify, bins, r[0], r[1]), ranges)
        )
    totals = [0] * bins
    for part in partials:
        for i, v in enumerate(part):
            totals[i] += v
    return totals
