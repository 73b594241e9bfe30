"""Lattices in ℚⁿ given by generator columns: membership, saturation,
invariant factors, intersection, sum, and canonical coset representatives.

A lattice is the ℤ-span of the (possibly dependent, possibly rational)
columns of its generator matrix.  Saturation is taken inside the integer
ambient lattice ℤⁿ: the largest lattice with the same rational span whose
vectors are integral.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .matrix import Matrix, Scalar, _norm
from .normal_forms import hnf, hnf_pivots, snf


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class LatticeSpec:
    """ℤ-span of generator columns inside ℚⁿ."""

    def __init__(self, generators: Matrix):
        self.ambient_dim = generators.rows
        self.generators = generators
        den = 1
        for _, _, x in generators.items():
            if isinstance(x, Fraction):
                den = _lcm(den, x.denominator)
        self._den = den
        self._scaled = generators.scale(den)  # integer matrix
        self._hnf_cache: tuple[Matrix, list[tuple[int, int]]] | None = None
        self._snf_cache = None

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Scalar]], ambient_dim: int | None = None) -> "LatticeSpec":
        if not cols:
            if ambient_dim is None:
                raise ValueError("empty generator list needs ambient_dim")
            return cls(Matrix(ambient_dim, 0))
        g = Matrix(len(cols[0]), len(cols))
        for j, c in enumerate(cols):
            for i, x in enumerate(c):
                if x:
                    g[i, j] = x
        return cls(g)

    # -- cached normal forms ------------------------------------------------

    def _hnf(self) -> tuple[Matrix, list[tuple[int, int]]]:
        if self._hnf_cache is None:
            H, _ = hnf(self._scaled)
            self._hnf_cache = (H, hnf_pivots(H))
        return self._hnf_cache

    def _snf(self):
        if self._snf_cache is None:
            self._snf_cache = snf(self._scaled)
        return self._snf_cache

    def rank(self) -> int:
        return len(self._hnf()[1])

    def basis_columns(self) -> list[list[Scalar]]:
        """An independent (HNF) basis of the lattice."""
        H, piv = self._hnf()
        out = []
        for _, j in piv:
            col = [_norm(Fraction(H[i, j], self._den)) for i in range(self.ambient_dim)]
            out.append(col)
        return out

    # -- operations ----------------------------------------------------------

    def _reduce_scaled(self, y: list) -> tuple[list, list]:
        """Reduce the scaled vector y against the HNF basis.

        Returns (residue, coefficients); y ∈ L·den iff residue == 0 and the
        coefficients are integers.
        """
        H, piv = self._hnf()
        y = list(y)
        coeffs = []
        for r, j in piv:
            p = H[r, j]
            c = Fraction(y[r], p)
            coeffs.append(c)
            if c:
                for i in range(self.ambient_dim):
                    x = H[i, j]
                    if x:
                        y[i] = _norm(y[i] - c * x)
        return y, coeffs

    def membership(self, v: Sequence[Scalar]) -> bool:
        """Is v an integer combination of the generators?"""
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        y = [_norm(Fraction(x) * self._den) for x in v]
        residue, coeffs = self._reduce_scaled(y)
        if any(residue):
            return False
        return all(Fraction(c).denominator == 1 for c in coeffs)

    def coefficients_of(self, v: Sequence[Scalar]):
        """Integer coordinates of v in the HNF basis, or None."""
        y = [_norm(Fraction(x) * self._den) for x in v]
        residue, coeffs = self._reduce_scaled(y)
        if any(residue) or not all(Fraction(c).denominator == 1 for c in coeffs):
            return None
        return [int(c) for c in coeffs]

    def saturation(self) -> "LatticeSpec":
        """span_ℚ(L) ∩ ℤⁿ — the saturated integer lattice with the same span."""
        dec = self._snf()
        r = dec.rank()
        g = Matrix(self.ambient_dim, r)
        for j in range(r):
            for i in range(self.ambient_dim):
                x = dec.U[i, j]
                if x:
                    g[i, j] = x
        return LatticeSpec(g)

    def invariant_factors_in_ambient(self) -> list[int]:
        """Invariant factors of L ⊆ ℤⁿ (requires integral generators)."""
        if self._den != 1:
            raise ValueError("invariant factors in ℤⁿ need integral generators")
        return [d for d in self._snf().invariant_factors if d != 0]

    def intersection(self, other: "LatticeSpec") -> "LatticeSpec":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        k1, k2 = self.generators.cols, other.generators.cols
        stacked = Matrix(self.ambient_dim, k1 + k2)
        for i, j, x in self._scaled.items():
            stacked[i, j] = x * other._den
        for i, j, x in other._scaled.items():
            stacked[i, j + k1] = -x * self._den
        dec = snf(stacked)
        r = dec.rank()
        gens = []
        for j in range(r, k1 + k2):
            z = [int(dec.V_inv[i, j]) for i in range(k1)]
            gens.append(self.generators.mul_vector(z))
        return LatticeSpec.from_columns(gens, ambient_dim=self.ambient_dim)

    def sum(self, other: "LatticeSpec") -> "LatticeSpec":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        g = Matrix(self.ambient_dim, self.generators.cols + other.generators.cols)
        for i, j, x in self.generators.items():
            g[i, j] = x
        for i, j, x in other.generators.items():
            g[i, j + self.generators.cols] = x
        return LatticeSpec(g)

    def canonical_coset_rep(self, x: Sequence[Scalar]) -> list[Scalar]:
        """The unique representative of x + L with HNF-pivot coordinates in
        [0, pivot); two inputs agree iff they differ by a lattice element."""
        if len(x) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        H, piv = self._hnf()
        y = [_norm(Fraction(v) * self._den) for v in x]
        for r, j in piv:
            p = H[r, j]
            c = math.floor(Fraction(y[r], p))
            if c:
                for i in range(self.ambient_dim):
                    h = H[i, j]
                    if h:
                        y[i] = _norm(y[i] - c * h)
        return [_norm(Fraction(v, self._den)) for v in y]

    def quotient_coords(self, x: Sequence[Scalar]) -> tuple[tuple, tuple]:
        """(torsion, free) coordinates of x + L in ℤⁿ/L via the Smith form.

        Torsion coordinates are reduced mod their invariant factor; free
        coordinates are exact (rational inputs allowed).
        """
        if self._den != 1:
            raise ValueError("quotient coordinates need integral generators")
        dec = self._snf()
        r = dec.rank()
        y = dec.U_inv.mul_vector(list(x))
        tor = []
        for i in range(r):
            d = int(dec.S[i, i])
            if d != 1:
                tor.append(_norm(Fraction(y[i]) % d))
        free = tuple(_norm(Fraction(v)) for v in y[r:])
        return tuple(tor), free

    def __repr__(self) -> str:
        return f"LatticeSpec(dim={self.ambient_dim}, gens={self.generators.cols}, rank={self.rank()})"
