"""Exact arithmetic substrate: rationals, dense univariate polynomials,
Laurent tails of p(X)/(e*X^n), and row-reduction linear algebra over Q.

Scalars are fractions.Fraction throughout (arbitrary precision, always in
lowest terms, positive denominator) and serialize as "p/q" strings, so no
float ever enters the pipeline.  X is the degree-2 generator of the circle's
point cohomology; polynomials in X are dense coefficient tuples; matrices
are immutable row-major rational grids.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotTriangular, SingularDiagonal, ZeroEuler

__all__ = [
    "rat",
    "rat_str",
    "Poly",
    "poly_mul",
    "residue_at_zero",
    "laurent_negative_part",
    "MatrixQ",
    "rref",
    "nullspace",
    "solve_upper_triangular",
    "mat_vec",
    "vstack",
]

RationalLike = Fraction | int | str

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?\Z")


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction.

    Strings must match ``-?digits[/digits]``; float syntax is rejected so
    serialized data can never smuggle in rounding.

    >>> str(rat("-6/4"))
    '-3/2'
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rat_str(value: Fraction) -> str:
    """Canonical string form: "p/q", or just "p" when the denominator is 1."""
    return str(value)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial in X; ``coeffs[k]`` holds the X^k coefficient.

    Trailing zeros are trimmed on construction and the zero polynomial is the
    empty tuple, so structural equality is mathematical equality.

    >>> print(Poly([1, 1]) * Poly([-1, 1]))
    X^2 - 1
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [rat(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def monomial(cls, power: int, coefficient: RationalLike = 1) -> "Poly":
        """The polynomial coefficient * X^power."""
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        c = rat(coefficient)
        if c == 0:
            return cls(())
        return cls((Fraction(0),) * power + (c,))

    @property
    def degree(self) -> int:
        """Degree in X; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return Poly(tuple(c * rat(other) for c in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, x: RationalLike) -> Fraction:
        x = rat(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "X" if k == 1 else f"X^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Convolution product of two polynomials."""
    return p * q


def residue_at_zero(p: Poly, epsilon: RationalLike, n: int) -> Fraction:
    """X^-1 coefficient of the Laurent expansion of p(X) / (epsilon * X^n).

    >>> str(residue_at_zero(Poly.monomial(1, -2), 2, 2))
    '-1'
    """
    eps = rat(epsilon)
    if eps == 0:
        raise ZeroEuler("residue denominator has zero leading scalar")
    if n < 0:
        raise ValueError("denominator exponent must be nonnegative")
    if n == 0:
        return Fraction(0)
    return p.coeff(n - 1) / eps


def laurent_negative_part(p: Poly, epsilon: RationalLike, n: int) -> list[Fraction]:
    """Coefficients of X^-n ... X^-1 in the expansion of p(X) / (epsilon * X^n).

    An all-zero result certifies that the expression is a polynomial, i.e.
    that X^n divides p.
    """
    eps = rat(epsilon)
    if eps == 0:
        raise ZeroEuler("residue denominator has zero leading scalar")
    if n < 0:
        raise ValueError("denominator exponent must be nonnegative")
    return [p.coeff(k) / eps for k in range(n)]


@dataclass(frozen=True)
class MatrixQ:
    """Immutable row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        es = tuple(rat(e) for e in self.entries)
        if len(es) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(es)}"
            )
        object.__setattr__(self, "entries", es)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None
    ) -> "MatrixQ":
        if not rows:
            if cols is None:
                raise ValueError("cols is required for an empty row list")
            return cls(0, cols, ())
        width = len(rows[0])
        if cols is not None and cols != width:
            raise ValueError("cols disagrees with row width")
        flat: list[RationalLike] = []
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(len(rows), width, tuple(rat(e) for e in flat))

    @classmethod
    def identity(cls, k: int) -> "MatrixQ":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(k)] for i in range(k)], cols=k
        )

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        return MatrixQ.from_rows(
            [[self.entry(i, j) for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )


def mat_vec(m: MatrixQ, v: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Matrix-vector product m @ v."""
    if len(v) != m.cols:
        raise ValueError("vector length does not match column count")
    vv = [rat(x) for x in v]
    return tuple(
        sum((m.entry(i, j) * vv[j] for j in range(m.cols)), Fraction(0))
        for i in range(m.rows)
    )


def vstack(matrices: Iterable[MatrixQ]) -> MatrixQ:
    """Stack matrices with equal column counts on top of each other."""
    ms = list(matrices)
    if not ms:
        raise ValueError("nothing to stack")
    cols = ms[0].cols
    rows: list[list[Fraction]] = []
    for m in ms:
        if m.cols != cols:
            raise ValueError("column counts differ")
        rows.extend(m.to_rows())
    return MatrixQ.from_rows(rows, cols=cols)


def rref(m: MatrixQ) -> tuple[MatrixQ, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns.

    Pivot entries are 1, pivot columns are cleared above and below, zero rows
    sink to the bottom, and the result is idempotent, so two row spaces are
    equal exactly when their reduced forms are identical.
    """
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pr = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [e / pv for e in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return MatrixQ.from_rows(rows, cols=m.cols), tuple(pivots)


def nullspace(m: MatrixQ) -> MatrixQ:
    """Canonical (RREF) basis of {v : m @ v = 0}, one basis vector per row.

    The dimension is cols - rank; a full-rank square matrix yields a matrix
    with zero rows.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vecs: list[list[Fraction]] = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.entry(i, f)
        vecs.append(v)
    if not vecs:
        return MatrixQ(0, m.cols, ())
    canonical, _ = rref(MatrixQ.from_rows(vecs, cols=m.cols))
    return canonical


def solve_upper_triangular(
    m: MatrixQ, rhs: Sequence[RationalLike]
) -> tuple[Fraction, ...]:
    """Back-substitution solve of an upper-triangular square system.

    The matrix must be upper triangular in the supplied ordering with nonzero
    diagonal; violations raise NotTriangular / SingularDiagonal.
    """
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match")
    for i in range(m.rows):
        for j in range(i):
            if m.entry(i, j) != 0:
                raise NotTriangular(f"nonzero entry below the diagonal at ({i}, {j})")
    for i in range(m.rows):
        if m.entry(i, i) == 0:
            raise SingularDiagonal(f"zero diagonal entry at position {i}")
    b = [rat(x) for x in rhs]
    x = [Fraction(0)] * m.rows
    for i in range(m.rows - 1, -1, -1):
        acc = b[i]
        for j in range(i + 1, m.cols):
            acc -= m.entry(i, j) * x[j]
        x[i] = acc / m.entry(i, i)
    return tuple(x)
