"""Exact linear algebra over prime fields.

Matrices are immutable and indexed 1-based (``A[i, j]`` is the entry in row
``i``, column ``j``), so that ``A[i, j]`` reads like the coefficient of the
``j``-th vertex-dual class in the ``i``-th basis vector.  Over F_2 the row
reductions run on bit-packed rows.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import limits
from .errors import GuardError, ParseError, SingularMatrixError

__all__ = [
    "PrimeField",
    "PrimeFieldMatrix",
    "Permutation",
    "signed_permutations",
    "det_gaussian",
    "det_leibniz",
    "rank",
    "rref",
    "nullspace",
    "is_invertible",
    "inverse",
    "minor2_is_singular",
    "enumerate_invertible",
    "invertible_row_codes",
    "gl_order",
    "random_invertible",
    "parse_matrix",
    "format_matrix",
]

MAX_PRIME = 2**31 - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 2

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"modulus must be an integer in [2, 2^31-1], got {self.p!r}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def reduce(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def elements(self) -> range:
        return range(self.p)


class PrimeFieldMatrix:
    """Dense matrix over F_p with 1-based accessors."""

    __slots__ = ("_p", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], p: int = 2):
        PrimeField(p)
        self._p = p
        self._rows = tuple(tuple(int(x) % p for x in row) for row in rows)
        if self._rows and len({len(r) for r in self._rows}) != 1:
            raise ValueError("ragged matrix rows")
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def identity(cls, n: int, p: int = 2) -> "PrimeFieldMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, p: int = 2) -> "PrimeFieldMatrix":
        return cls([[0] * n_cols for _ in range(n_rows)], p)

    @classmethod
    def from_codes(cls, codes: Sequence[int], n: int) -> "PrimeFieldMatrix":
        """F_2 matrix from packed rows; bit ``n - j`` of a code is column ``j``."""
        return cls([[(c >> (n - j)) & 1 for j in range(1, n + 1)] for c in codes], 2)

    # -- shape and access ---------------------------------------------
    @property
    def p(self) -> int:
        return self._p

    @property
    def field(self) -> PrimeField:
        return PrimeField(self._p)

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    @property
    def n_cols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """All rows as 0-based tuples (raw storage)."""
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        self._check_row(i)
        return self._rows[i - 1]

    def column(self, j: int) -> tuple[int, ...]:
        self._check_col(j)
        return tuple(r[j - 1] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        self._check_row(i)
        self._check_col(j)
        return self._rows[i - 1][j - 1]

    def _check_row(self, i: int) -> None:
        if not 1 <= i <= self.n_rows:
            raise IndexError(f"row index {i} outside 1..{self.n_rows}")

    def _check_col(self, j: int) -> None:
        if not 1 <= j <= self.n_cols:
            raise IndexError(f"column index {j} outside 1..{self.n_cols}")

    def codes(self) -> tuple[int, ...]:
        """Bit-packed rows (F_2 only); column 1 is the most significant bit."""
        if self._p != 2:
            raise ValueError("bit packing is only defined over F_2")
        n = self.n_cols
        return tuple(sum(x << (n - 1 - k) for k, x in enumerate(r)) for r in self._rows)

    # -- algebra ------------------------------------------------------
    def __matmul__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        if self._p != other._p:
            raise ValueError("field mismatch")
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other._rows))
        return PrimeFieldMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows], self._p
        )

    def transpose(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(zip(*self._rows), self._p)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PrimeFieldMatrix":
        rows, cols = list(rows), list(cols)
        return PrimeFieldMatrix([[self[i, j] for j in cols] for i in rows], self._p)

    def permute_rows(self, order: Sequence[int]) -> "PrimeFieldMatrix":
        """New matrix whose ``k``-th row is row ``order[k-1]`` of this one."""
        return PrimeFieldMatrix([self.row(i) for i in order], self._p)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    # -- dunder -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return self._p == other._p and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"PrimeFieldMatrix({self.tolist()}, p={self._p})"


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    @property
    def sign(self) -> int:
        seen = [False] * self.n
        transpositions = 0
        for start in range(self.n):
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = self.images[k] - 1
                length += 1
            if length:
                transpositions += length - 1
        return -1 if transpositions % 2 else 1

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))


def signed_permutations(n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield every permutation of 0..n-1 with its sign (Heap's algorithm).

    Consecutive permutations differ by one transposition, so the sign just
    alternates.
    """
    a = list(range(n))
    c = [0] * n
    sign = 1
    yield tuple(a), sign
    i = 0
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                a[0], a[i] = a[i], a[0]
            else:
                a[c[i]], a[i] = a[i], a[c[i]]
            sign = -sign
            yield tuple(a), sign
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1


def _require_square(A: PrimeFieldMatrix) -> None:
    if not A.is_square:
        raise ValueError(f"matrix is {A.n_rows}x{A.n_cols}, not square")


def _f2_rank_codes(codes: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for v in codes:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                r += 1
                break
    return r


def det_gaussian(A: PrimeFieldMatrix) -> int:
    """Determinant by Gaussian elimination, reduced mod p."""
    _require_square(A)
    n, p = A.n_rows, A.p
    if n == 0:
        return 1
    if p == 2:
        return int(_f2_rank_codes(A.codes()) == n)
    M = [list(r) for r in A.rows]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], p - 2, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            if f:
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


def det_leibniz(A: PrimeFieldMatrix) -> int:
    """Determinant as the signed sum over S_n of products ``a_{σ(i)}^i``."""
    _require_square(A)
    n, p = A.n_rows, A.p
    limits.check("leibniz", n, "matrix dimension")
    rows = A.rows
    total = 0
    for perm, sign in signed_permutations(n):
        prod = 1
        for i in range(n):
            prod *= rows[perm[i]][i]
            if not prod:
                break
        else:
            total += sign * prod
    return total % p


def rank(A: PrimeFieldMatrix) -> int:
    if A.n_rows == 0 or A.n_cols == 0:
        return 0
    if A.p == 2:
        return _f2_rank_codes(A.codes())
    p = A.p
    M = [list(r) for r in A.rows]
    r = 0
    for c in range(A.n_cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        for i in range(r + 1, len(M)):
            f = M[i][c] * inv % p
            if f:
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    M = [[x % p for x in r] for r in rows]
    n_cols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def nullspace(rows: Sequence[Sequence[int]], n_cols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : M x = 0}, one vector per free column in ascending order."""
    if not rows:
        return [tuple(int(k == c) for k in range(n_cols)) for c in range(n_cols)]
    R, pivots = rref(rows, p)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n_cols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = -R[i][f] % p
        basis.append(tuple(x))
    return basis


def is_invertible(A: PrimeFieldMatrix) -> bool:
    return A.is_square and rank(A) == A.n_rows


def inverse(A: PrimeFieldMatrix) -> PrimeFieldMatrix:
    """Inverse via Gauss-Jordan; raises :class:`SingularMatrixError`."""
    _require_square(A)
    n, p = A.n_rows, A.p
    M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], p - 2, p)
        M[c] = [x * inv % p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return PrimeFieldMatrix([row[n:] for row in M], p)


def minor2_is_singular(A: PrimeFieldMatrix, r: int, s: int, i: int, j: int) -> bool:
    """Whether the 2x2 minor on rows ``r, s`` and columns ``i, j`` is singular."""
    if r == s or i == j:
        raise ValueError("a 2x2 minor needs two distinct rows and two distinct columns")
    return (A[r, i] * A[s, j] - A[r, j] * A[s, i]) % A.p == 0


def gl_order(n: int, p: int = 2) -> int:
    """|GL_n(F_p)| = prod_{k<n} (p^n - p^k)."""
    out = 1
    for k in range(n):
        out *= p**n - p**k
    return out


def _check_gl_guard(n: int, p: int) -> None:
    if p != 2:
        raise GuardError("exhaustive enumeration is only supported over F_2")
    if n < 0:
        raise ValueError("n must be non-negative")
    limits.check("enumerate_gl", n, "matrix dimension")


def enumerate_invertible(n: int, p: int = 2) -> Iterator[PrimeFieldMatrix]:
    """Stream every element of GL_n(F_2) exactly once.

    Rows are chosen in increasing lexicographic order among vectors outside
    the span of the rows already chosen; the stream order matches
    :func:`invertible_row_codes`.
    """
    _check_gl_guard(n, p)
    full = 1 << n
    rows: list[int] = []

    def extend(span: frozenset[int]) -> Iterator[PrimeFieldMatrix]:
        if len(rows) == n:
            yield PrimeFieldMatrix.from_codes(rows, n)
            return
        for v in range(1, full):
            if v in span:
                continue
            rows.append(v)
            yield from extend(span | {x ^ v for x in span})
            rows.pop()

    yield from extend(frozenset({0}))


@functools.lru_cache(maxsize=8)
def invertible_row_codes(n: int) -> np.ndarray:
    """All of GL_n(F_2) as an ``(|GL_n|, n)`` array of packed row codes.

    Same order as :func:`enumerate_invertible`; this is the form the
    exhaustive sweeps consume.
    """
    _check_gl_guard(n, 2)
    size = 1 << n
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    vec = np.arange(size)
    prefixes = np.zeros((1, 0), dtype=np.uint8)
    span = np.zeros((1, size), dtype=bool)
    span[0, 0] = True
    for level in range(n):
        prefix_idx, new_rows = np.nonzero(~span)
        prefixes = np.concatenate(
            [prefixes[prefix_idx], new_rows.astype(np.uint8)[:, None]], axis=1
        )
        if level + 1 < n:
            # span(prefix + v) = span(prefix) ∪ (span(prefix) ⊕ v)
            old = span[prefix_idx]
            xor_idx = vec[None, :] ^ new_rows[:, None]
            span = old | np.take_along_axis(old, xor_idx, axis=1)
    prefixes.flags.writeable = False
    return prefixes


def random_invertible(n: int, p: int = 2, seed: int | random.Random | None = None) -> PrimeFieldMatrix:
    """Uniform element of GL_n(F_p) by rejection sampling."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    PrimeField(p)
    while True:
        A = PrimeFieldMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)
        if is_invertible(A):
            return A


def parse_matrix(text: str) -> PrimeFieldMatrix:
    """Parse ``"n_rows n_cols p"`` followed by rows of integers."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n_rows, n_cols, p = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError(f"bad matrix header {lines[0]!r}; expected 'n_rows n_cols p'") from None
    body = lines[1:]
    if len(body) != n_rows:
        raise ParseError(f"expected {n_rows} rows, found {len(body)}")
    rows = []
    for k, ln in enumerate(body, 1):
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise ParseError(f"row {k}: non-integer entry in {ln!r}") from None
        if len(row) != n_cols:
            raise ParseError(f"row {k}: expected {n_cols} entries, found {len(row)}")
        rows.append(row)
    try:
        return PrimeFieldMatrix(rows, p)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_matrix(A: PrimeFieldMatrix) -> str:
    lines = [f"{A.n_rows} {A.n_cols} {A.p}"]
    lines += [" ".join(str(x) for x in r) for r in A.rows]
    return "\n".join(lines) + "\n"
