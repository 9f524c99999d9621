"""Exact arithmetic in GF(p^k) on integer-coded elements.

An element is an integer code in [0, q): the base-p digits of the code are
the coefficients of the representing polynomial, constant term in the least
significant digit.  Prime fields (k = 1) are integers mod p; extension
fields reduce polynomials modulo a fixed monic irreducible modulus chosen
deterministically, so repeated constructions of the same field agree.

Fields of order up to TABLE_LIMIT carry full operation tables; the
enumeration oracles elsewhere in the package index into them directly.
"""

from __future__ import annotations

from itertools import product

from .errors import DEFAULT_BUDGET, BudgetExceededError

# Above this order, arithmetic falls back to on-the-fly computation instead
# of precomputed q x q tables.
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k and p prime, or None if q is no prime power."""
    if q < 2:
        return None
    p = 0
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    if p == 0:
        return (q, 1)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


# --- polynomials over GF(p), ascending coefficient lists ---------------------


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m, padded to deg(m) coefficients."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    rem = a[:dm]
    rem.extend([0] * (dm - len(rem)))
    return rem


def is_irreducible(poly: list[int], p: int) -> bool:
    """Test irreducibility of a monic polynomial over GF(p) by trial division.

    Args:
        poly: ascending coefficients; the leading coefficient must be 1.
        p: prime characteristic.

    Returns:
        True iff poly has no monic factor of degree 1..deg(poly)//2.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if len(poly) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if any(not 0 <= c < p for c in poly):
        raise ValueError(f"coefficients must lie in [0, {p})")
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_rem(poly, divisor, p)):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # Candidates ordered by coefficients from x^{k-1} down to the constant
    # term, so the first hit is the lexicographically smallest modulus.
    for high_to_low in product(range(p), repeat=k):
        coeffs = list(reversed(high_to_low)) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")


def poly_text(coeffs: tuple[int, ...] | list[int]) -> str:
    """Human-readable form of an ascending coefficient list, e.g. 'x^2 + x + 1'."""
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
        else:
            x = "x" if d == 1 else f"x^{d}"
            terms.append(x if c == 1 else f"{c}{x}")
    return " + ".join(terms) if terms else "0"


# --- the field itself ---------------------------------------------------------


class FieldSpec:
    """A finite field GF(p^k) operating on integer element codes in [0, q).

    Immutable after construction; all operations are pure, so instances are
    safe to share across threads.  When q <= TABLE_LIMIT the instance carries
    add/sub/mul/neg/inv lookup tables, which hot loops may index directly.
    """

    __slots__ = (
        "p", "k", "q", "modulus",
        "add_table", "sub_table", "mul_table", "neg_table", "inv_table",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if k == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
        else:
            if modulus is None:
                raise ValueError(f"GF({p}^{k}) requires a degree-{k} modulus")
            modulus = tuple(modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not is_irreducible(list(modulus), p):
                raise ValueError("modulus must be irreducible")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        if self.q <= TABLE_LIMIT:
            self._build_tables()
        else:
            self.add_table = None
            self.sub_table = None
            self.mul_table = None
            self.neg_table = None
            self.inv_table = None

    # raw operations used for table construction and as the large-field path

    def _digits(self, a: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.k):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def _encode(self, digits: list[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _add_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def _sub_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x - y) % self.p for x, y in zip(da, db)])

    def _neg_raw(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(self._digits(a), self._digits(b), self.p)
        return self._encode(_poly_rem(prod, list(self.modulus), self.p))

    def _pow_raw(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def _inv_raw(self, a: int) -> int:
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._pow_raw(a, self.q - 2)

    def _build_tables(self) -> None:
        q = self.q
        rng = range(q)
        self.add_table = [[self._add_raw(a, b) for b in rng] for a in rng]
        self.sub_table = [[self._sub_raw(a, b) for b in rng] for a in rng]
        self.mul_table = [[self._mul_raw(a, b) for b in rng] for a in rng]
        self.neg_table = [self._neg_raw(a) for a in rng]
        self.inv_table = [0] + [self._inv_raw(a) for a in range(1, q)]

    # public checked operations

    def _check(self, a: int) -> None:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element code of {self!r}")

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.add_table[a][b] if self.add_table is not None else self._add_raw(a, b)

    def sub(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.sub_table[a][b] if self.sub_table is not None else self._sub_raw(a, b)

    def neg(self, a: int) -> int:
        self._check(a)
        return self.neg_table[a] if self.neg_table is not None else self._neg_raw(a)

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.mul_table[a][b] if self.mul_table is not None else self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no multiplicative inverse in {self!r}")
        return self.inv_table[a] if self.inv_table is not None else self._inv_raw(a)

    def elements(self):
        """All element codes in ascending order, starting at 0."""
        return iter(range(self.q))

    @property
    def designation(self) -> str:
        """The field as CLI text: '3' for GF(3), '2^2' for GF(4)."""
        return str(self.q) if self.k == 1 else f"{self.p}^{self.k}"

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


def make_field(p: int, k: int = 1, *, max_order: int = DEFAULT_BUDGET) -> FieldSpec:
    """Construct GF(p^k) with the deterministic choice of modulus.

    For k > 1 the modulus is the lexicographically smallest monic irreducible
    polynomial of degree k over GF(p), comparing coefficients from the
    highest degree down.

    Raises:
        ValueError: p is not prime, or k < 1.
        BudgetExceededError: p^k exceeds max_order.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic must be a prime integer, got {p!r}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"extension degree must be a positive integer, got {k!r}")
    q = p ** k
    if q > max_order:
        raise BudgetExceededError(q, max_order, what=f"construction of GF({p}^{k})")
    modulus = _smallest_irreducible(p, k) if k > 1 else None
    return FieldSpec(p, k, modulus)
