"""Reed-Solomon codes RS[n, k] evaluated on fixed distinct points.

The membership test interpolates the full word and inspects the degree
(O(n^2) Lagrange).  n stays small here (local views of a regular graph), and
the interpolant itself is needed elsewhere, so no syndrome shortcut is taken.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .errors import FloweringError
from .field import PrimeField


class DuplicatePointError(FloweringError):
    pass


class DimensionOutOfRangeError(FloweringError):
    pass


class FieldTooSmallError(FloweringError):
    """The field must have more elements than evaluation points."""


class LengthMismatchError(FloweringError):
    pass


@dataclass(frozen=True)
class Poly:
    """Polynomial over a prime field, coefficients low-degree first.

    Canonical form has no trailing zero coefficients; the zero polynomial has
    an empty coefficient tuple and degree -1 (standing in for -infinity).
    """

    field: PrimeField
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, field: PrimeField, coeffs) -> Poly:
        cs = [c % field.p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(field, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.field.p
        return acc


def lagrange_interpolate(field: PrimeField, xs: list[int], ys: list[int]) -> Poly:
    """Unique polynomial of degree < len(xs) through the given points."""
    p = field.p
    n = len(xs)
    # master(X) = prod (X - x_i), low-degree first
    master = [1]
    for x in xs:
        master = [0] + master
        for j in range(len(master) - 1):
            master[j] = (master[j] - master[j + 1] * x) % p
    acc = [0] * n
    for i in range(n):
        # num_i = master / (X - x_i) by synthetic division
        num = [0] * n
        num[n - 1] = 1
        for j in range(n - 1, 0, -1):
            num[j - 1] = (master[j] + num[j] * xs[i]) % p
        denom = 0
        power = 1
        for c in num:
            denom = (denom + c * power) % p
            power = power * xs[i] % p
        scale = ys[i] * field.inv(denom) % p
        if scale:
            for j in range(n):
                acc[j] = (acc[j] + num[j] * scale) % p
    return Poly.make(field, acc)


class RSCode:
    """RS[n, k] on pairwise-distinct points x_1..x_n of a field with p > n."""

    def __init__(self, field: PrimeField, points: list[int], k: int):
        points = [x % field.p for x in points]
        n = len(points)
        if len(set(points)) != n:
            raise DuplicatePointError("evaluation points must be pairwise distinct")
        if not 1 <= k <= n:
            raise DimensionOutOfRangeError(f"need 1 <= k <= n, got k={k}, n={n}")
        if field.p <= n:
            raise FieldTooSmallError(f"need p > n, got p={field.p}, n={n}")
        self.field = field
        self.points = tuple(points)
        self.k = k
        self._parity_rows: list[list[int]] | None = None

    @classmethod
    def with_default_points(cls, field: PrimeField, n: int, k: int) -> RSCode:
        """Evaluation points default to x_i = i (1-based)."""
        return cls(field, list(range(1, n + 1)), k)

    @property
    def n(self) -> int:
        return len(self.points)

    def interpolate(self, values: list[int]) -> Poly:
        """The unique degree < n polynomial with P(x_i) = values[i]."""
        if len(values) != self.n:
            raise LengthMismatchError(f"expected {self.n} values, got {len(values)}")
        return lagrange_interpolate(self.field, list(self.points), list(values))

    def evaluate(self, poly: Poly) -> list[int]:
        return [poly.evaluate(x) for x in self.points]

    def is_codeword(self, values: list[int]) -> bool:
        return self.interpolate(values).degree < self.k

    def unit_interpolant(self) -> Poly:
        """The degree k-1 polynomial L with L(x_{n-k+1}) = 1 and L(x_l) = 0
        for l = n-k+2, ..., n.

        L is pinned by k interpolation constraints on the last k points; its
        k-1 prescribed roots force degree exactly k-1.
        """
        xs = list(self.points[self.n - self.k:])
        ys = [1] + [0] * (self.k - 1)
        poly = lagrange_interpolate(self.field, xs, ys)
        assert poly.degree == self.k - 1
        return poly

    def parity_rows(self) -> list[list[int]]:
        """(n-k) x n matrix H with H y = 0 iff y is a codeword.

        Rows k..n-1 of the inverse Vandermonde: entry (i, j) of V^{-1} maps
        values to interpolant coefficient i, so the top coefficients vanish
        exactly on codewords.
        """
        if self._parity_rows is None:
            p = self.field.p
            vand = [[pow(x, j, p) for j in range(self.n)] for x in self.points]
            vinv = linalg.invert(vand, p)
            self._parity_rows = vinv[self.k:]
        return self._parity_rows

    def random_codeword(self, rng: random.Random) -> list[int]:
        coeffs = [self.field.sample(rng) for _ in range(self.k)]
        return self.evaluate(Poly.make(self.field, coeffs))

    def __repr__(self) -> str:
        return f"RSCode(n={self.n}, k={self.k}, p={self.field.p})"
