"""Exact multilinear operations on the fixed bases: wedge squares, symmetric
products, the symmetric part of γ-wedges, and primitive directions."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from .indexing import (
    SYM2GP,
    SYM2W,
    T_DIM,
    WEDGE_PAIRS,
    sym2gp_of,
    sym2w_of,
    t_index,
    t_name,
    t_unindex,
)
from .poly import ParamPoly, _norm

Coeff = Union[int, Fraction]


def wedge2(u: Sequence[Coeff], v: Sequence[Coeff]) -> list[Coeff]:
    """u ∧ v in the e_{kl} (k<l) basis: the 2×2 minors u_k v_l − u_l v_k."""
    if len(u) != 4 or len(v) != 4:
        raise ValueError("wedge2 expects 4-vectors")
    return [_norm(u[k] * v[l] - u[l] * v[k]) for (k, l) in WEDGE_PAIRS]


def sym_square_embed(p: Sequence[Coeff], q: Sequence[Coeff]) -> list[Coeff]:
    """Symmetric product of two ∧²Γ2 vectors in Sym²(∧²Γ2), polynomial
    convention (coefficient of x·y is p_x q_y + p_y q_x, no 1/2)."""
    out: list[Coeff] = [0] * len(SYM2W)
    for i in range(6):
        if not p[i]:
            continue
        for j in range(6):
            if q[j]:
                idx = sym2w_of(i, j)
                out[idx] = _norm(out[idx] + p[i] * q[j])
    return out


def gamma_wedge_sym_part(g1: Sequence, g2: Sequence) -> list:
    """The Sym²Γp ⊗ ∧²Γ2 component of g1 ∧ g2 for g1, g2 ∈ Γ2⊗Γp written as
    4 Γp-entries in the e-basis: the e_{kl}-coefficient is the 2×2 minor of
    the entries at rows k, l.  Entries may be ParamPoly or plain numbers."""
    if len(g1) != 4 or len(g2) != 4:
        raise ValueError("expected 4 Γp-entries")
    return [g1[k] * g2[l] - g1[l] * g2[k] for (k, l) in WEDGE_PAIRS]


def primitive_direction(u: Sequence[Coeff]) -> tuple[int, ...]:
    """Canonical primitive integer vector parallel to u: divide by content,
    make the first nonzero coordinate positive."""
    if all(not x for x in u):
        raise ValueError("zero vector has no direction")
    den = 1
    for x in u:
        f = Fraction(x)
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(Fraction(x) * den) for x in u]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def gp_sym_square(s: Sequence[Coeff]) -> list[Coeff]:
    """s² ∈ Sym²Γp for s ∈ Γp (polynomial convention)."""
    return gp_sym_product(s, s)


def gp_sym_product(s: Sequence[Coeff], t: Sequence[Coeff]) -> list[Coeff]:
    """The symmetric product s·t ∈ Sym²Γp (polynomial convention)."""
    out: list[Coeff] = [0] * len(SYM2GP)
    for p in range(4):
        if not s[p]:
            continue
        for q in range(4):
            if t[q]:
                idx = sym2gp_of(p, q)
                out[idx] = _norm(out[idx] + s[p] * t[q])
    return out


class TVector:
    """An element of T = Sym²Γp ⊗ Sym²(∧²Γ2): 210 rational coordinates,
    stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Coeff] | None = None):
        self.terms: dict[int, Coeff] = {}
        if terms:
            for i, c in terms.items():
                if c:
                    self.terms[i] = _norm(c)

    @classmethod
    def from_outer(cls, sym2gp_coords: Sequence[Coeff], sym2w_coords: Sequence[Coeff]) -> "TVector":
        out = cls()
        for i, a in enumerate(sym2gp_coords):
            if not a:
                continue
            for j, b in enumerate(sym2w_coords):
                if b:
                    idx = t_index(i, j)
                    out.terms[idx] = _norm(out.terms.get(idx, 0) + a * b)
                    if not out.terms[idx]:
                        del out.terms[idx]
        return out

    @classmethod
    def from_poly_times_sym2w(cls, poly: ParamPoly, sym2w_coords: Sequence[Coeff]) -> "TVector":
        """quadratic ParamPoly ⊗ Sym²(∧²Γ2) coordinates."""
        return cls.from_outer(poly.sym2gp_coords(), sym2w_coords)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("TVector is mutable; not hashable")

    def __add__(self, other: "TVector") -> "TVector":
        out = dict(self.terms)
        for i, c in other.terms.items():
            v = out.get(i, 0) + c
            if v:
                out[i] = _norm(v)
            else:
                out.pop(i, None)
        res = TVector()
        res.terms = out
        return res

    def __sub__(self, other: "TVector") -> "TVector":
        return self + other.scale(-1)

    def scale(self, k: Coeff) -> "TVector":
        if not k:
            return TVector()
        res = TVector()
        res.terms = {i: _norm(c * k) for i, c in self.terms.items()}
        return res

    def coefficient(self, sym2gp_idx: int, sym2w_idx: int) -> Coeff:
        return self.terms.get(t_index(sym2gp_idx, sym2w_idx), 0)

    def to_list(self) -> list[Coeff]:
        return [self.terms.get(i, 0) for i in range(T_DIM)]

    def dot_names(self) -> dict[str, str]:
        """Human-readable coordinate map, for JSON reports."""
        return {t_name(i): str(Fraction(c)) for i, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        if not self.terms:
            return "TVector(0)"
        parts = [f"{Fraction(c)}*{t_name(i)}" for i, c in sorted(self.terms.items())]
        return "TVector(" + " + ".join(parts) + ")"


def t_linear_independent(vectors: Sequence[TVector]) -> bool:
    """ℚ-linear independence of T-vectors by Gaussian elimination."""
    rows = [dict(v.terms) for v in vectors if v.terms]
    if len(rows) != len(vectors):
        return False
    pivots: dict[int, dict[int, Coeff]] = {}
    for row in rows:
        row = dict(row)
        for pcol, prow in pivots.items():
            if pcol in row:
                f = Fraction(row[pcol]) / Fraction(prow[pcol])
                for j, x in prow.items():
                    v = row.get(j, 0) - f * x
                    if v:
                        row[j] = _norm(v)
                    else:
                        row.pop(j, None)
        if not row:
            return False
        pivots[min(row)] = row
    return True


def decompose_in_span(target: TVector, basis: Sequence[TVector]):
    """Coefficients expressing target in the span of basis, or None.

    Exact: solves the 210×len(basis) system and re-verifies the combination.
    """
    from ..exactla import Matrix, solve_rational

    m = Matrix(T_DIM, len(basis), sparse=False)
    for j, b in enumerate(basis):
        for i, c in b.terms.items():
            m[i, j] = c
    sol = solve_rational(m, target.to_list())
    if sol is None:
        return None
    out = TVector()
    for j, b in enumerate(basis):
        out = out + b.scale(sol[j])
    if out != target:
        return None
    return sol
