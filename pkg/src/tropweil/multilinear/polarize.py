"""Formal polarization: turn universally quantified multilinear identities
into finitely many linear coefficient equations.

An identity quantified over lattice vectors is expanded formally in the
coordinates of its vector variables.  Collecting the coefficient of every
monomial yields one linear equation (in the declared unknowns) per
multidegree component; over ℚ the finite set is equivalent to the
universally quantified identity, and integer-point evaluation recombines the
equations with integer monomial values (the cross-check offered below).

Terms are stored as {(monomial, key): coefficient} where `key` is either the
reserved CONST marker or an opaque unknown key supplied by the caller.
Products are only defined when at most one factor carries unknowns.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence, Union

from .poly import _norm

Coeff = Union[int, Fraction]
# monomial: sorted tuple of ((var name, coordinate index), exponent)
Monomial = tuple[tuple[tuple[str, int], int], ...]

CONST: Hashable = ("__const__",)
_ONE: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


class Formal:
    """A polynomial in formal vector coordinates with values that are linear
    in opaque unknown keys (plus a constant part)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Monomial, Hashable], Coeff] | None = None):
        self.terms: dict[tuple[Monomial, Hashable], Coeff] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = _norm(c)

    @classmethod
    def zero(cls) -> "Formal":
        return cls()

    @classmethod
    def const(cls, c: Coeff) -> "Formal":
        return cls({(_ONE, CONST): c})

    @classmethod
    def coord(cls, var: str, idx: int) -> "Formal":
        """The idx-th coordinate of the formal vector variable `var`."""
        return cls({((((var, idx), 1),), CONST): 1})

    @classmethod
    def unknown(cls, key: Hashable, coeff: Coeff = 1) -> "Formal":
        if key == CONST:
            raise ValueError("reserved key")
        return cls({(_ONE, key): coeff})

    def is_const_only(self) -> bool:
        return all(k == CONST for (_, k) in self.terms)

    def __add__(self, other: "Formal") -> "Formal":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        res = Formal()
        res.terms = out
        return res

    def __sub__(self, other: "Formal") -> "Formal":
        return self + other.scale(-1)

    def __neg__(self) -> "Formal":
        return self.scale(-1)

    def scale(self, c: Coeff) -> "Formal":
        if not c:
            return Formal()
        res = Formal()
        res.terms = {k: _norm(v * c) for k, v in self.terms.items()}
        return res

    def __mul__(self, other: "Formal") -> "Formal":
        if not self.is_const_only() and not other.is_const_only():
            raise ValueError("product of two unknown-bearing expressions is not linear")
        out: dict[tuple[Monomial, Hashable], Coeff] = {}
        for (m1, k1), c1 in self.terms.items():
            for (m2, k2), c2 in other.terms.items():
                key = k1 if k2 == CONST else k2
                mk = (_mono_mul(m1, m2), key)
                v = out.get(mk, 0) + c1 * c2
                if v:
                    out[mk] = _norm(v)
                else:
                    out.pop(mk, None)
        res = Formal()
        res.terms = out
        return res

    def monomials(self) -> set[Monomial]:
        return {m for (m, _) in self.terms}

    def collect(self) -> dict[Monomial, dict[Hashable, Coeff]]:
        """Group by monomial: each value is one linear coefficient equation."""
        out: dict[Monomial, dict[Hashable, Coeff]] = {}
        for (m, k), c in self.terms.items():
            out.setdefault(m, {})[k] = c
        return out


def vector(var: str, dim: int) -> list[Formal]:
    return [Formal.coord(var, i) for i in range(dim)]


def mono_value(mono: Monomial, assignment: Mapping[str, Sequence[Coeff]]) -> Coeff:
    v: Coeff = 1
    for (var, idx), exp in mono:
        v = v * assignment[var][idx] ** exp
    return v


class PolarizedEquation:
    """One coefficient equation: Σ coeffs[key]·unknown[key] + const = 0."""

    __slots__ = ("monomial", "coeffs", "const")

    def __init__(self, monomial: Monomial, row: Mapping[Hashable, Coeff]):
        self.monomial = monomial
        self.coeffs = {k: c for k, c in row.items() if k != CONST}
        self.const = row.get(CONST, 0)

    def evaluate(self, unknowns: Mapping[Hashable, Coeff]) -> Coeff:
        return _norm(
            Fraction(sum(c * unknowns.get(k, 0) for k, c in self.coeffs.items()) + self.const)
        )

    def multidegree(self) -> tuple[tuple[str, int], ...]:
        deg: dict[str, int] = {}
        for (var, _), exp in self.monomial:
            deg[var] = deg.get(var, 0) + exp
        return tuple(sorted(deg.items()))

    def __repr__(self) -> str:
        return f"PolarizedEquation({self.monomial}, {len(self.coeffs)} unknowns)"


def polarize_identity(
    schema: Callable[..., Formal],
    variables: Sequence[tuple[str, int]],
    declared_degrees: Mapping[str, int] | None = None,
) -> list[PolarizedEquation]:
    """Expand `schema` formally and return one linear equation per monomial.

    `schema` receives one list of Formal coordinates per declared variable
    and must return the identity as a Formal expression equal to zero (move
    the right side over with a CONST-keyed part).  If `declared_degrees` is
    given, every produced monomial is checked against it.
    """
    vecs = [vector(name, dim) for name, dim in variables]
    expr = schema(*vecs)
    eqs = [PolarizedEquation(m, row) for m, row in sorted(expr.collect().items())]
    if declared_degrees is not None:
        for eq in eqs:
            for var, deg in eq.multidegree():
                want = declared_degrees.get(var)
                if want is not None and deg > want:
                    raise ValueError(
                        f"monomial {eq.monomial} exceeds declared degree of {var}"
                    )
    return eqs


def evaluation_check(
    eqs: Iterable[PolarizedEquation],
    schema: Callable[..., Formal],
    variables: Sequence[tuple[str, int]],
    assignment: Mapping[str, Sequence[Coeff]],
    unknowns: Mapping[Hashable, Coeff],
) -> bool:
    """Recombining the equations with monomial values must reproduce the
    direct evaluation of the schema — the integer-point cross-check."""
    vecs = [vector(name, dim) for name, dim in variables]
    expr = schema(*vecs)
    direct: Coeff = 0
    for (m, k), c in expr.terms.items():
        val = c * mono_value(m, assignment)
        direct += val * (1 if k == CONST else unknowns.get(k, 0))
    recombined: Coeff = 0
    for eq in eqs:
        recombined += mono_value(eq.monomial, assignment) * eq.evaluate(unknowns)
    return Fraction(direct) == Fraction(recombined)
