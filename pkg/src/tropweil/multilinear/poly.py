"""Polynomials in the commuting parameters a, b, c, e over ℚ.

The multiplier d of the Weil family is always an explicit integer, never a
symbol, so four variables suffice.  Monomials are exponent 4-tuples; the zero
test is exact by construction (zero coefficients are never stored).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .indexing import PARAM_NAMES, SYM2GP

Monomial = tuple[int, int, int, int]
Coeff = Union[int, Fraction]

_ZERO_MON: Monomial = (0, 0, 0, 0)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class ParamPoly:
    """Sparse polynomial in ℚ[a, b, c, e]."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        self.terms: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = _norm(c)

    @classmethod
    def const(cls, c: Coeff) -> "ParamPoly":
        return cls({_ZERO_MON: c})

    @classmethod
    def var(cls, idx: int) -> "ParamPoly":
        m = [0, 0, 0, 0]
        m[idx] = 1
        return cls({tuple(m): 1})

    @classmethod
    def linear(cls, coeffs: Iterable[Coeff]) -> "ParamPoly":
        """Σ coeffs[p] · (p-th parameter)."""
        out = cls()
        for p, c in enumerate(coeffs):
            if c:
                m = [0, 0, 0, 0]
                m[p] = 1
                out.terms[tuple(m)] = _norm(c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        res = ParamPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        res = ParamPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly()
            res = ParamPoly()
            res.terms = {m: _norm(c * other) for m, c in self.terms.items()}
            return res
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = _norm(v)
                else:
                    out.pop(m, None)
        res = ParamPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def evaluate(self, values) -> Coeff:
        """Evaluate at rational parameter values (a, b, c, e)."""
        total: Coeff = 0
        for m, c in self.terms.items():
            v = c
            for idx, exp in enumerate(m):
                for _ in range(exp):
                    v = v * values[idx]
            total = total + v
        return _norm(Fraction(total))

    def coefficient(self, mono: Monomial) -> Coeff:
        return self.terms.get(mono, 0)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def sym2gp_coords(self):
        """Coordinates in the Sym²Γp basis; requires a homogeneous quadratic."""
        coords = [0] * len(SYM2GP)
        for m, c in self.terms.items():
            if sum(m) != 2:
                raise ValueError(f"not a quadratic monomial: {m}")
            idxs = [i for i, e in enumerate(m) for _ in range(e)]
            coords[SYM2GP.index((idxs[0], idxs[1]))] = c
        return coords

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            name = "".join(
                PARAM_NAMES[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            parts.append(f"{c}" + (f"*{name}" if name else ""))
        return " + ".join(parts)
