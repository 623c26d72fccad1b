"""Prime-field arithmetic and the small linear algebra the scheme needs.

Elements are plain ints in [0, p) with the modulus carried by context (a
matrix or an explicit argument), not per element.  Only prime fields: the
construction needs nothing more, and trial division is plenty at the scale
where schemes are built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def smallest_prime_at_least(m: int) -> int:
    """Smallest prime >= m (m >= 2)."""
    if m < 2:
        raise ValueError("need m >= 2")
    p = m
    while not is_prime(p):
        p += 1
    return p


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse in GF(p); a must be nonzero mod p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, p - 2, p)


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    """Evaluate sum(coeffs[i] * x^i) in GF(p) (Horner)."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


@dataclass(frozen=True)
class FieldMatrix:
    """Rectangular matrix over GF(p); rows of ints reduced mod p."""

    rows: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("matrix rows have differing lengths")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def mul_vector(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match matrix width")
        return tuple(sum(a * b for a, b in zip(row, vec)) % self.p for row in self.rows)


def field_matrix(rows: Iterable[Iterable[int]], p: int) -> FieldMatrix:
    return FieldMatrix(tuple(tuple(x % p for x in row) for row in rows), p)


def _eliminate(rows: list[list[int]], p: int) -> int:
    """In-place row echelon reduction; returns the rank."""
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = inv_mod(rows[rank][col], p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def mat_rank(m: FieldMatrix) -> int:
    rows = [list(r) for r in m.rows]
    return _eliminate(rows, m.p)


def rowspace_contains(m: FieldMatrix, vec: Sequence[int]) -> bool:
    """True iff vec lies in the row space of m (rank is unchanged by appending)."""
    if m.rows and len(vec) != m.ncols:
        raise ValueError("vector length does not match matrix width")
    base = mat_rank(m)
    rows = [list(r) for r in m.rows] + [[x % m.p for x in vec]]
    return _eliminate(rows, m.p) == base


def transpose(m: FieldMatrix) -> FieldMatrix:
    return FieldMatrix(tuple(zip(*m.rows)) if m.rows else (), m.p)


def hstack(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.p != b.p or a.nrows != b.nrows:
        raise ValueError("matrices are not compatible")
    return FieldMatrix(tuple(ra + rb for ra, rb in zip(a.rows, b.rows)), a.p)


def solve_linear(matrix: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int]:
    """Solve a square nonsingular system over GF(p) by Gauss-Jordan."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("system is not square")
    aug = [[x % p for x in row] + [rhs[i] % p] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = inv_mod(aug[col][col], p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def interpolate_secret(points: Sequence[tuple[int, int]], c: int, p: int) -> tuple[int, ...]:
    """Coefficients (s_0 .. s_{c-1}) of the unique degree-<c polynomial
    through exactly c points with pairwise distinct abscissae.

    Solves the Vandermonde system by elimination; errors on a repeated
    abscissa or a wrong point count.
    """
    if len(points) != c:
        raise ValueError(f"need exactly {c} points, got {len(points)}")
    xs = [x % p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated evaluation point")
    vander = [[pow(x, k, p) for k in range(c)] for x in xs]
    return tuple(solve_linear(vander, [y % p for _, y in points], p))
