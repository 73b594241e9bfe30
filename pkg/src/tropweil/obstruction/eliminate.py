"""Exact sparse column-space elimination over ℚ.

Left-looking Gaussian elimination on the columns of a sparse integer matrix:
each incoming column is reduced against the pivots found so far; a nonzero
remainder becomes a new pivot.  The stored data supports, without refactoring:

* cokernel projection q(w): reduce w against all pivots; the residue lives on
  the non-pivot rows and is zero exactly when w lies in the column span;
* particular solutions: the reduction combo expresses w − q(w) as an exact
  column combination;
* left-null functionals: for a non-pivot row k, back-substitution produces y
  with y·A = 0, y_k = 1 (the row of the cokernel projection).

Pivot rows are chosen by a caller-supplied priority (the obstruction solver
prefers constraint rows and ±1 entries); the choice is deterministic, so all
downstream outputs are bit-reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable


def _axpy(dst: dict, src: dict, f: Fraction) -> None:
    """dst += f * src, pruning zeros."""
    if not f:
        return
    for k, v in src.items():
        cur = dst.get(k, 0) + f * v
        if cur:
            dst[k] = cur
        else:
            dst.pop(k, None)


class ColumnEliminator:
    def __init__(self, n_rows: int, row_priority: Callable[[int], tuple] | None = None):
        self.n_rows = n_rows
        self.row_priority = row_priority or (lambda r: (r,))
        # per pivot: (pivot_row, reduced column, combo over original columns)
        self.pivots: list[tuple[int, dict, dict]] = []
        self.pivot_row_set: set[int] = set()
        self.pivot_col_ids: list[Hashable] = []

    def add_column(self, col: dict, col_id: Hashable) -> bool:
        """Reduce and, if independent, record as a new pivot column."""
        work = {k: Fraction(v) for k, v in col.items() if v}
        combo = {col_id: Fraction(1)}
        for prow, pcol, pcombo in self.pivots:
            if prow in work:
                f = -work[prow] / pcol[prow]
                _axpy(work, pcol, f)
                _axpy(combo, pcombo, f)
        if not work:
            return False
        prow = min(work, key=self.row_priority)
        self.pivots.append((prow, work, combo))
        self.pivot_row_set.add(prow)
        self.pivot_col_ids.append(col_id)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def project(self, vec: dict) -> dict:
        """Cokernel projection: the residue of vec after eliminating the
        pivot rows; zero iff vec is in the column span."""
        work = {k: Fraction(v) for k, v in vec.items() if v}
        for prow, pcol, _ in self.pivots:
            if prow in work:
                _axpy(work, pcol, -work[prow] / pcol[prow])
        return work

    def project_with_combo(self, vec: dict) -> tuple[dict, dict]:
        """(residue, x) with vec = Σ x[col_id]·column + residue."""
        work = {k: Fraction(v) for k, v in vec.items() if v}
        x: dict = {}
        for prow, pcol, pcombo in self.pivots:
            if prow in work:
                f = work[prow] / pcol[prow]
                _axpy(work, pcol, -f)
                _axpy(x, pcombo, f)
        return work, x

    def left_null_functional(self, row_k: int) -> dict:
        """y with y·(all added columns) = 0 and y[row_k] = 1.

        Requires row_k to be a non-pivot row.  Supported on row_k plus pivot
        rows; computed by reverse back-substitution (each stored pivot column
        vanishes on earlier pivot rows)."""
        if row_k in self.pivot_row_set:
            raise ValueError("left-null functionals exist only for non-pivot rows")
        y: dict = {row_k: Fraction(1)}
        for t in range(len(self.pivots) - 1, -1, -1):
            prow, pcol, _ = self.pivots[t]
            s = Fraction(0)
            for r, c in pcol.items():
                if r != prow and r in y:
                    s += y[r] * c
            if s:
                y[prow] = -s / pcol[prow]
        return y

    def non_pivot_rows(self) -> list[int]:
        return [r for r in range(self.n_rows) if r not in self.pivot_row_set]
