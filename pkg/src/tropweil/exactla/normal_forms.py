"""Hermite and Smith normal forms with unimodular transforms.

Conventions (fixed once, used everywhere):

* ``hnf`` is column-style: H = A·U with U unimodular.  H is in column
  echelon form — pivot rows strictly increase with the column index, pivots
  are positive, entries in a pivot row to the *left* of the pivot are reduced
  into [0, pivot), and zero columns trail.
* ``snf`` returns A = U·S·V with U, V unimodular, S diagonal, invariant
  factors d1 | d2 | ... ≥ 0.
* Pivot selection is deterministic: smallest absolute value first, ties
  broken by (row, col) lexicographic order, so outputs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix


@dataclass
class SmithDecomposition:
    """A = U·S·V with U, V unimodular and S = diag(d1 | d2 | ...)."""

    U: Matrix
    S: Matrix
    V: Matrix
    # integer inverses, tracked during the reduction (unimodular, so exact)
    U_inv: Matrix
    V_inv: Matrix

    @property
    def invariant_factors(self) -> list[int]:
        n = min(self.S.rows, self.S.cols)
        return [int(self.S[i, i]) for i in range(n)]

    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)

    def verify(self, A: Matrix) -> bool:
        if (self.U @ self.S @ self.V) != A:
            return False
        n, m = self.U.rows, self.V.rows
        if (self.U @ self.U_inv) != Matrix.identity(n):
            return False
        if (self.V @ self.V_inv) != Matrix.identity(m):
            return False
        facs = self.invariant_factors
        for a, b in zip(facs, facs[1:]):
            if b and (a == 0 or b % a != 0):
                return False
        return all(d >= 0 for d in facs)


def _check_integer(A: Matrix, what: str) -> None:
    if not A.is_integer():
        raise ValueError(f"{what} requires an integer matrix")


def hnf(A: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form: returns (H, U) with H = A·U, U unimodular."""
    _check_integer(A, "hnf")
    H = A.copy()
    U = Matrix.identity(A.cols)
    rows, cols = A.rows, A.cols
    pivot_col = 0
    for i in range(rows):
        if pivot_col >= cols:
            break
        # clear row i to a single gcd entry at pivot_col using column ops
        while True:
            best = None
            for j in range(pivot_col, cols):
                x = H[i, j]
                if x:
                    key = (abs(x), j)
                    if best is None or key < best[0]:
                        best = (key, j)
            if best is None:
                break  # row is zero beyond pivot_col; move to next row
            j0 = best[1]
            H.swap_cols(pivot_col, j0)
            U.swap_cols(pivot_col, j0)
            p = H[i, pivot_col]
            done = True
            for j in range(pivot_col + 1, cols):
                x = H[i, j]
                if x:
                    q = x // p  # floor division keeps remainders in [0, |p|)
                    H.add_col_multiple(j, pivot_col, -q)
                    U.add_col_multiple(j, pivot_col, -q)
                    if H[i, j]:
                        done = False
            if done:
                break
        if H[i, pivot_col]:
            if H[i, pivot_col] < 0:
                H.scale_col(pivot_col, -1)
                U.scale_col(pivot_col, -1)
            p = H[i, pivot_col]
            # reduce entries to the left of the pivot into [0, p)
            for j in range(pivot_col):
                x = H[i, j]
                q = x // p
                if q:
                    H.add_col_multiple(j, pivot_col, -q)
                    U.add_col_multiple(j, pivot_col, -q)
            pivot_col += 1
    return H, U


def hnf_pivots(H: Matrix) -> list[tuple[int, int]]:
    """Pivot positions (row, col) of a column-HNF matrix."""
    out = []
    for j in range(H.cols):
        for i in range(H.rows):
            if H[i, j]:
                out.append((i, j))
                break
        else:
            break  # zero columns trail
    return out


def snf(A: Matrix) -> SmithDecomposition:
    """Smith normal form A = U·S·V with tracked inverses."""
    _check_integer(A, "snf")
    S = A.copy()
    rows, cols = A.rows, A.cols
    U = Matrix.identity(rows)
    U_inv = Matrix.identity(rows)
    V = Matrix.identity(cols)
    V_inv = Matrix.identity(cols)

    def row_op(dst, src, k):
        # S <- E S  where E adds k*src-row to dst-row; U <- U E^{-1}
        S.add_row_multiple(dst, src, k)
        U.add_col_multiple(src, dst, -k)
        U_inv.add_row_multiple(dst, src, k)

    def col_op(dst, src, k):
        S.add_col_multiple(dst, src, k)
        V.add_row_multiple(src, dst, -k)
        V_inv.add_col_multiple(dst, src, k)

    def row_swap(i, k):
        S.swap_rows(i, k)
        U.swap_cols(i, k)
        U_inv.swap_rows(i, k)

    def col_swap(j, l):
        S.swap_cols(j, l)
        V.swap_rows(j, l)
        V_inv.swap_cols(j, l)

    def row_negate(i):
        S.scale_row(i, -1)
        U.scale_col(i, -1)
        U_inv.scale_row(i, -1)

    n = min(rows, cols)
    for t in range(n):
        # deterministic pivot: minimal |value|, ties by (row, col)
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = S[i, j]
                if x:
                    key = (abs(x), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            # shrink the pivot until it divides its column ...
            restart = False
            for i in range(t + 1, rows):
                if S[i, t] % S[t, t]:
                    row_op(i, t, -(S[i, t] // S[t, t]))
                    row_swap(t, i)  # remainder is strictly smaller
                    restart = True
                    break
            if restart:
                continue
            for i in range(t + 1, rows):
                q = S[i, t] // S[t, t]
                if q:
                    row_op(i, t, -q)
            # ... and its row
            for j in range(t + 1, cols):
                if S[t, j] % S[t, t]:
                    col_op(j, t, -(S[t, j] // S[t, t]))
                    col_swap(t, j)
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, cols):
                q = S[t, j] // S[t, t]
                if q:
                    col_op(j, t, -q)
            if any(S[i, t] for i in range(t + 1, rows)):
                continue  # the column ops refilled the column
            # divisibility: the pivot must divide the whole trailing block,
            # which makes d1 | d2 | ... automatic
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if S[i, j] % S[t, t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, 1)  # pull the offending row up and reduce again
        if S[t, t] < 0:
            row_negate(t)
    return SmithDecomposition(U=U, S=S, V=V, U_inv=U_inv, V_inv=V_inv)
