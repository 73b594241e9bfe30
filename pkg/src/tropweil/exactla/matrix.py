"""Exact integer/rational matrices.

Entries are Python ints or ``fractions.Fraction`` — arbitrary precision, no
floating point anywhere.  Storage is dense (list of lists) below the size
threshold and sparse (dict keyed by (row, col)) above it, as the spec for the
exact-linalg module asks; both behave identically through the public API.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]

# rows*cols above this use the sparse representation by default
SPARSE_THRESHOLD = 10_000


def _norm(x: Scalar) -> Scalar:
    """Collapse integral Fractions to int so integer matrices stay integer."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return x
    return x


class Matrix:
    """An exact matrix over ℚ (or ℤ when every entry is an int)."""

    __slots__ = ("rows", "cols", "_dense", "_data")

    def __init__(self, rows: int, cols: int, sparse: bool | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        if sparse is None:
            sparse = rows * cols > SPARSE_THRESHOLD
        self._dense = not sparse
        if self._dense:
            self._data = [[0] * cols for _ in range(rows)]
        else:
            self._data = {}

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], sparse: bool | None = None) -> "Matrix":
        m = cls(len(rows), len(rows[0]) if rows else 0, sparse=sparse)
        for i, row in enumerate(rows):
            if len(row) != m.cols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                if x:
                    m[i, j] = x
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls(n, n, sparse=False)
        for i in range(n):
            m[i, i] = 1
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def column(cls, entries: Sequence[Scalar]) -> "Matrix":
        return cls.from_rows([[x] for x in entries])

    def copy(self) -> "Matrix":
        m = Matrix(self.rows, self.cols, sparse=not self._dense)
        if self._dense:
            m._data = [row[:] for row in self._data]
        else:
            m._data = dict(self._data)
        return m

    # -- element access ------------------------------------------------

    def __getitem__(self, key) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of bounds for {self.rows}x{self.cols}")
        if self._dense:
            return self._data[i][j]
        return self._data.get((i, j), 0)

    def __setitem__(self, key, value: Scalar) -> None:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of bounds for {self.rows}x{self.cols}")
        value = _norm(value)
        if self._dense:
            self._data[i][j] = value
        elif value:
            self._data[(i, j)] = value
        else:
            self._data.pop((i, j), None)

    def items(self) -> Iterator[tuple[int, int, Scalar]]:
        """Iterate nonzero entries as (i, j, value), row-major order."""
        if self._dense:
            for i, row in enumerate(self._data):
                for j, x in enumerate(row):
                    if x:
                        yield i, j, x
        else:
            for (i, j) in sorted(self._data):
                yield i, j, self._data[(i, j)]

    def row(self, i: int) -> list[Scalar]:
        return [self[i, j] for j in range(self.cols)]

    def col(self, j: int) -> list[Scalar]:
        return [self[i, j] for i in range(self.rows)]

    def nnz(self) -> int:
        return sum(1 for _ in self.items())

    # -- predicates ------------------------------------------------------

    def is_integer(self) -> bool:
        return all(not isinstance(x, Fraction) for _, _, x in self.items())

    def is_zero(self) -> bool:
        return all(not x for _, _, x in self.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return dict(((i, j), x) for i, j, x in self.items()) == dict(
            ((i, j), x) for i, j, x in other.items()
        )

    def __hash__(self):
        raise TypeError("Matrix is mutable; not hashable")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        m = self.copy()
        for i, j, x in other.items():
            m[i, j] = m[i, j] + x
        return m

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        m = self.copy()
        for i, j, x in other.items():
            m[i, j] = m[i, j] - x
        return m

    def __neg__(self) -> "Matrix":
        m = self.copy()
        for i, j, x in list(m.items()):
            m[i, j] = -x
        return m

    def scale(self, k: Scalar) -> "Matrix":
        m = Matrix(self.rows, self.cols, sparse=not self._dense)
        if k:
            for i, j, x in self.items():
                m[i, j] = x * k
        return m

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = Matrix(self.rows, other.cols, sparse=not (self._dense and other._dense))
        # sparse-friendly: group the right factor by row
        right_rows: dict[int, list[tuple[int, Scalar]]] = {}
        for k, j, x in other.items():
            right_rows.setdefault(k, []).append((j, x))
        acc: dict[tuple[int, int], Scalar] = {}
        for i, k, x in self.items():
            for j, y in right_rows.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + x * y
        for (i, j), v in acc.items():
            out[i, j] = v
        return out

    def mul_vector(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out: list[Scalar] = [0] * self.rows
        for i, j, x in self.items():
            if vec[j]:
                out[i] = _norm(out[i] + x * vec[j])
        return out

    def transpose(self) -> "Matrix":
        m = Matrix(self.cols, self.rows, sparse=not self._dense)
        for i, j, x in self.items():
            m[j, i] = x
        return m

    # -- row/col ops used by the normal-form algorithms ----------------------

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        if self._dense:
            self._data[i], self._data[k] = self._data[k], self._data[i]
        else:
            for j in range(self.cols):
                a, b = self[i, j], self[k, j]
                self[i, j], self[k, j] = b, a

    def swap_cols(self, j: int, l: int) -> None:
        if j == l:
            return
        for i in range(self.rows):
            a, b = self[i, j], self[i, l]
            self[i, j], self[i, l] = b, a

    def add_col_multiple(self, dst: int, src: int, k: Scalar) -> None:
        """col[dst] += k * col[src]."""
        if not k:
            return
        for i in range(self.rows):
            x = self[i, src]
            if x:
                self[i, dst] = self[i, dst] + k * x

    def add_row_multiple(self, dst: int, src: int, k: Scalar) -> None:
        if not k:
            return
        for j in range(self.cols):
            x = self[src, j]
            if x:
                self[dst, j] = self[dst, j] + k * x

    def scale_col(self, j: int, k: Scalar) -> None:
        for i in range(self.rows):
            x = self[i, j]
            if x:
                self[i, j] = x * k

    def scale_row(self, i: int, k: Scalar) -> None:
        for j in range(self.cols):
            x = self[i, j]
            if x:
                self[i, j] = x * k

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        """Serialize: first line "rows cols", then row-major entries."""
        parts = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            parts.append(" ".join(_fmt(self[i, j]) for j in range(self.cols)))
        return "\n".join(parts) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix text too short")
        rows, cols = int(tokens[0]), int(tokens[1])
        body = tokens[2:]
        if len(body) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(body)}")
        m = cls(rows, cols)
        for idx, tok in enumerate(body):
            v = _parse(tok)
            if v:
                m[divmod(idx, cols)] = v
        return m

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            body = "; ".join(
                " ".join(_fmt(self[i, j]) for j in range(self.cols)) for i in range(self.rows)
            )
            return f"Matrix({self.rows}x{self.cols}: {body})"
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _fmt(x: Scalar) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _parse(tok: str) -> Scalar:
    if "/" in tok:
        num, den = tok.split("/")
        return _norm(Fraction(int(num), int(den)))
    return int(tok)
