"""Exact rational dense linear algebra.

Entries are Python ints or ``fractions.Fraction``; nothing here ever rounds.
That exactness is what lets the combinatorial characterizations run with zero
tolerance: every quantity they compare is an integer identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .digraph import Digraph, regularity, strongly_connected
from .errors import DimensionMismatch

Rational = Union[int, Fraction]


def _norm(x: Rational) -> Rational:
    """Collapse integer-valued Fractions back to int (cheaper arithmetic)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix over the rationals."""

    entries: tuple[tuple[Rational, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "RatMatrix":
        return cls(tuple(tuple(_norm(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def ones(cls, rows: int, cols: Optional[int] = None) -> "RatMatrix":
        if cols is None:
            cols = rows
        return cls(tuple((1,) * cols for _ in range(rows)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_01(self) -> bool:
        return all(x in (0, 1) for row in self.entries for x in row)

    def flat(self) -> list[Rational]:
        """Row-major vectorization."""
        return [x for row in self.entries for x in row]

    def scale(self, c: Rational) -> "RatMatrix":
        return RatMatrix(tuple(tuple(_norm(c * x) for x in row) for row in self.entries))

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        return RatMatrix(
            tuple(
                tuple(_norm(a + b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def sub(self, other: "RatMatrix") -> "RatMatrix":
        return self.add(other.scale(-1))


def adjacency_matrix(g: Digraph) -> RatMatrix:
    return RatMatrix(g.adj)


def transpose(a: RatMatrix) -> RatMatrix:
    return RatMatrix(tuple(zip(*a.entries)))


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"mat_mul {a.shape} vs {b.shape}")
    bt = tuple(zip(*b.entries))
    out = []
    for row in a.entries:
        out_row = []
        for col in bt:
            s: Rational = 0
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(_norm(s))
        out.append(tuple(out_row))
    return RatMatrix(tuple(out))


def hadamard(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"hadamard {a.shape} vs {b.shape}")
    return RatMatrix(
        tuple(
            tuple(_norm(x * y) for x, y in zip(ra, rb))
            for ra, rb in zip(a.entries, b.entries)
        )
    )


def hadamard_disjoint(a: RatMatrix, b: RatMatrix) -> bool:
    """True when a and b have no common nonzero position (a o b = O)."""
    return hadamard(a, b).is_zero()


class SpanBasis:
    """Echelon form of a fixed matrix family, prepared for repeated exact
    membership solves.

    Pivots are chosen by largest absolute value to limit coefficient growth
    during elimination.
    """

    def __init__(self, basis: Sequence[RatMatrix]):
        if not basis:
            raise DimensionMismatch("empty basis")
        shape = basis[0].shape
        for b in basis:
            if b.shape != shape:
                raise DimensionMismatch(f"basis shapes differ: {b.shape} vs {shape}")
        self.shape = shape
        self.size = len(basis)
        # Echelon rows: (pivot index, reduced vector, combination over basis).
        self._rows: list[tuple[int, list[Rational], list[Rational]]] = []
        for idx, b in enumerate(basis):
            vec = b.flat()
            combo: list[Rational] = [0] * self.size
            combo[idx] = 1
            self._reduce(vec, combo)
            pivot = self._pick_pivot(vec)
            if pivot is not None:
                self._rows.append((pivot, vec, combo))

    @staticmethod
    def _pick_pivot(vec: list[Rational]) -> Optional[int]:
        best = None
        best_mag: Rational = 0
        for i, x in enumerate(vec):
            if x:
                mag = abs(x)
                if best is None or mag > best_mag:
                    best, best_mag = i, mag
        return best

    def _reduce(self, vec: list[Rational], combo: list[Rational]) -> None:
        for pivot, row, row_combo in self._rows:
            f = vec[pivot]
            if not f:
                continue
            f = Fraction(f) / row[pivot]
            for i, r in enumerate(row):
                if r:
                    vec[i] = _norm(vec[i] - f * r)
            for i, c in enumerate(row_combo):
                if c:
                    combo[i] = _norm(combo[i] - f * c)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def solve(self, target: RatMatrix) -> Optional[tuple[Rational, ...]]:
        """Exact coefficients c with sum(c_i * basis_i) = target, or None."""
        if target.shape != self.shape:
            raise DimensionMismatch(f"target {target.shape} vs basis {self.shape}")
        vec = target.flat()
        combo: list[Rational] = [0] * self.size
        for pivot, row, row_combo in self._rows:
            f = vec[pivot]
            if not f:
                continue
            f = Fraction(f) / row[pivot]
            for i, r in enumerate(row):
                if r:
                    vec[i] = _norm(vec[i] - f * r)
            for i, c in enumerate(row_combo):
                if c:
                    combo[i] = _norm(combo[i] + f * c)
        if any(vec):
            return None
        return tuple(combo)


def span_solve(
    target: RatMatrix, basis: Sequence[RatMatrix]
) -> Optional[tuple[Rational, ...]]:
    """Exact rational coordinates of target in span(basis), or None.

    Gaussian elimination over the row-major vectorized matrices. When the
    basis is dependent, one valid coordinate tuple is returned.
    """
    return SpanBasis(basis).solve(target)


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with exact rational coefficients, lowest power first."""

    coeffs: tuple[Rational, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Rational]) -> "RatPolynomial":
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "RatPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "RatPolynomial":
        return cls((1,))

    @classmethod
    def t(cls) -> "RatPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc)

    def add(self, other: "RatPolynomial") -> "RatPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return RatPolynomial.from_coeffs([x + y for x, y in zip(a, b)])

    def sub(self, other: "RatPolynomial") -> "RatPolynomial":
        return self.add(other.scale(-1))

    def scale(self, c: Rational) -> "RatPolynomial":
        return RatPolynomial.from_coeffs([c * x for x in self.coeffs])

    def times_t(self) -> "RatPolynomial":
        if self.is_zero():
            return self
        return RatPolynomial((0,) + self.coeffs)

    def mul(self, other: "RatPolynomial") -> "RatPolynomial":
        if self.is_zero() or other.is_zero():
            return RatPolynomial.zero()
        out: list[Rational] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return RatPolynomial.from_coeffs(out)

    def divide_linear(self, root: Rational) -> "RatPolynomial":
        """Exact synthetic division by (t - root); raises if root is not a root."""
        if self.is_zero():
            return self
        quot: list[Rational] = []
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quot.append(acc)
        remainder = quot.pop()
        if remainder != 0:
            raise ValueError(f"{root} is not a root (remainder {remainder})")
        quot.reverse()
        return RatPolynomial.from_coeffs(quot)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for p in range(self.degree, -1, -1):
            c = self.coeffs[p]
            if c == 0:
                continue
            if p == 0:
                parts.append(f"{c}")
            else:
                var = "t" if p == 1 else f"t^{p}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


def eval_poly_at_matrix(p: RatPolynomial, a: RatMatrix) -> RatMatrix:
    """Horner evaluation of p at a square matrix, exact."""
    if a.rows != a.cols:
        raise DimensionMismatch("matrix must be square")
    n = a.rows
    if p.is_zero():
        return RatMatrix.zeros(n, n)
    acc = RatMatrix.identity(n).scale(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = mat_mul(acc, a)
        if c:
            acc = acc.add(RatMatrix.identity(n).scale(c))
    return acc


def minimal_polynomial(a: RatMatrix) -> RatPolynomial:
    """Monic least-degree polynomial annihilating a.

    Found at the first linear dependence among the vectorized powers
    I, a, a^2, ... via exact elimination.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("matrix must be square")
    n = a.rows
    rows: list[tuple[int, list[Rational], list[Rational]]] = []
    power = RatMatrix.identity(n)
    k = 0
    while True:
        vec = power.flat()
        combo: list[Rational] = [0] * k + [1]
        for pivot, row, row_combo in rows:
            f = vec[pivot]
            if not f:
                continue
            f = Fraction(f) / row[pivot]
            for i, r in enumerate(row):
                if r:
                    vec[i] = _norm(vec[i] - f * r)
            for i, c in enumerate(row_combo):
                if c:
                    combo[i] = _norm(combo[i] - f * c)
        pivot = SpanBasis._pick_pivot(vec)
        if pivot is None:
            return RatPolynomial.from_coeffs(combo)
        rows.append((pivot, vec, combo))
        power = mat_mul(power, a)
        k += 1
        if k > n:  # Cayley-Hamilton guarantees a dependence by degree n
            raise AssertionError("no dependence found by degree n")


@dataclass(frozen=True)
class HoffmanResult:
    """Least-degree polynomial h with h(A) = J, or the reason it is absent."""

    poly: Optional[RatPolynomial]
    reason: Optional[str]  # "not-strongly-connected" | "not-regular"

    @property
    def exists(self) -> bool:
        return self.poly is not None


def hoffman_polynomial(g: Digraph) -> HoffmanResult:
    """The unique least-degree h with h(A) = J, for strongly connected
    regular digraphs: h = n * s(t) / s(k) where (t - k) * s(t) is the
    minimal polynomial of A. The identity h(A) = J is re-verified exactly.
    """
    if not strongly_connected(g):
        return HoffmanResult(None, "not-strongly-connected")
    k = regularity(g)
    if k is None:
        return HoffmanResult(None, "not-regular")
    a = adjacency_matrix(g)
    mu = minimal_polynomial(a)
    s = mu.divide_linear(k)
    s_at_k = s(k)
    h = s.scale(Fraction(g.n) / s_at_k)
    if eval_poly_at_matrix(h, a) != RatMatrix.ones(g.n):
        raise AssertionError("h(A) != J for a regular strongly connected digraph")
    return HoffmanResult(h, None)
