"""Exact linear Diophantine systems: A·x = b over ℤ with certificates.

Infeasibility is a value, not an error: the result either carries a solution
plus a basis of the integer kernel lattice, or a re-verifiable certificate —
a rational witness functional y (y·A = 0, y·b ≠ 0) or an invariant-factor
divisibility failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .matrix import Matrix, Scalar
from .normal_forms import snf


@dataclass
class InfeasibilityWitness:
    """Certificate that A·x = b has no integer solution.

    kind "rational": y·A = 0 but y·b ≠ 0 (no rational solution either).
    kind "divisibility": the invariant factor `factor` at position `index`
    does not divide the transformed right side value `value` = (U⁻¹·b)[index].
    In both cases `functional` y satisfies y·A ≡ 0 mod 1 scaled suitably and
    y·b ∉ ℤ; re-verify with `verify`.
    """

    kind: str
    functional: list[Fraction]
    index: int
    factor: int
    value: int

    def verify(self, A: Matrix, b: Sequence[Scalar]) -> bool:
        yA = [sum(self.functional[i] * A[i, j] for i in range(A.rows)) for j in range(A.cols)]
        yb = sum(self.functional[i] * b[i] for i in range(A.rows))
        if self.kind == "rational":
            return all(v == 0 for v in yA) and yb != 0
        # divisibility: y·A is integral but y·b is not
        return all(Fraction(v).denominator == 1 for v in yA) and Fraction(yb).denominator != 1


@dataclass
class IntegerSolution:
    """x0 and kernel basis: A·x0 = b and A·k = 0 for every kernel column."""

    x0: list[int]
    kernel: Matrix  # columns form a basis of the integer kernel lattice

    def verify(self, A: Matrix, b: Sequence[Scalar]) -> bool:
        if A.mul_vector(self.x0) != [int(x) for x in b]:
            return False
        prod = A @ self.kernel
        return prod.is_zero()


def solve_integer(A: Matrix, b: Sequence[Scalar]):
    """Solve A·x = b in integers.

    Returns an IntegerSolution or an InfeasibilityWitness.
    """
    if len(b) != A.rows:
        raise ValueError("right side length mismatch")
    if not A.is_integer() or any(Fraction(x).denominator != 1 for x in b):
        raise ValueError("solve_integer expects integer data; clear denominators first")
    dec = snf(A)
    r = dec.rank()
    # y = U^{-1} b
    y = dec.U_inv.mul_vector([int(x) for x in b])
    n = min(A.rows, A.cols)
    for i in range(A.rows):
        d = int(dec.S[i, i]) if i < n else 0
        yi = int(y[i])
        if d == 0:
            if yi != 0:
                func = [Fraction(dec.U_inv[i, j]) for j in range(A.rows)]
                return InfeasibilityWitness(
                    kind="rational", functional=func, index=i, factor=0, value=yi
                )
        elif yi % d != 0:
            func = [Fraction(dec.U_inv[i, j], d) for j in range(A.rows)]
            return InfeasibilityWitness(
                kind="divisibility", functional=func, index=i, factor=d, value=yi
            )
    z = [0] * A.cols
    for i in range(r):
        z[i] = int(y[i]) // int(dec.S[i, i])
    x0 = dec.V_inv.mul_vector(z)
    # kernel basis: columns of V^{-1} past the rank
    kern = Matrix(A.cols, A.cols - r)
    for j in range(r, A.cols):
        for i in range(A.cols):
            v = dec.V_inv[i, j]
            if v:
                kern[i, j - r] = v
    return IntegerSolution(x0=[int(v) for v in x0], kernel=kern)


def solve_rational(A: Matrix, b: Sequence[Scalar]) -> Optional[list[Fraction]]:
    """A particular rational solution of A·x = b, or None."""
    m = A.copy()
    rows, cols = A.rows, A.cols
    rhs = [Fraction(x) for x in b]
    piv: list[tuple[int, int]] = []
    used_rows: set[int] = set()
    for j in range(cols):
        pr = None
        for i in range(rows):
            if i not in used_rows and m[i, j]:
                pr = i
                break
        if pr is None:
            continue
        used_rows.add(pr)
        piv.append((pr, j))
        pv = Fraction(m[pr, j])
        for i in range(rows):
            if i != pr and m[i, j]:
                f = Fraction(m[i, j]) / pv
                for jj in range(cols):
                    x = m[pr, jj]
                    if x:
                        m[i, jj] = m[i, jj] - f * x
                rhs[i] -= f * rhs[pr]
    for i in range(rows):
        if i not in used_rows and rhs[i] != 0:
            return None
    x = [Fraction(0)] * cols
    for pr, j in piv:
        x[j] = rhs[pr] / Fraction(m[pr, j])
    return x
