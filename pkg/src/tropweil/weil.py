"""The Weil family: polarization matrix, positivity, the rank-4 period
lattice inside Γ2⊗Γp, complex multiplication, the classes θ, w1, w2, and
their expansions into T = Sym²Γp ⊗ Sym²(∧²Γ2).

Basis bookkeeping follows tropweil.multilinear.indexing throughout.  The
class space ∧²Γ1 ⊗ ∧²Γ2 is 36-dimensional with coordinates on γ_{ij} ⊗ e_{kl}
(i<j, k<l); γ_{ji} = −γ_{ij} and e_{lk} = −e_{kl} are folded into the index
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exactla import LatticeSpec, Matrix
from .multilinear import (
    CLASS_DIM,
    ParamPoly,
    TVector,
    WEDGE_PAIRS,
    class_index,
    class_unindex,
    gamma_gp_index,
    gamma_wedge_sym_part,
    sym2gp_of,
    sym2w_of,
    sym_square_embed,
    t_index,
)
from .multilinear.poly import _norm

Coeff = Union[int, Fraction]


@dataclass
class WeilParams:
    """Family parameters: positive integer d, plus numeric (a, b, c, e)
    values when a concrete member is meant; symbolic mode leaves them None."""

    d: int
    values: tuple[Coeff, Coeff, Coeff, Coeff] | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def symbolic(self) -> bool:
        return self.values is None


def build_polarization(p: WeilParams) -> list[list]:
    """The 4×4 polarization matrix Q, rows
    (a,b,0,e), (b,c,−e,0), (0,−e,da,db), (e,0,db,dc); symmetric by
    construction.  Entries are ParamPoly in symbolic mode, rationals in
    numeric mode."""
    d = p.d
    a, b, c, e = (ParamPoly.var(i) for i in range(4)) if p.symbolic else (
        p.values[0],
        p.values[1],
        p.values[2],
        p.values[3],
    )
    zero = ParamPoly() if p.symbolic else 0
    q = [
        [a, b, zero, e],
        [b, c, -e, zero],
        [zero, -e, d * a, d * b],
        [e, zero, d * b, d * c],
    ]
    return q


def q_columns(d: int) -> list[list[ParamPoly]]:
    """The columns γ1..γ4 of Q as lists of 4 Γp-linear forms (e-basis rows)."""
    q = build_polarization(WeilParams(d))
    return [[q[k][i] for k in range(4)] for i in range(4)]


def gamma_embedding(d: int) -> Matrix:
    """16×4 integer matrix: column i is γ_i ∈ Γ2⊗Γp in the parameter-major
    basis (index 4p + k for π_p ⊗ e_k)."""
    cols = q_columns(d)
    m = Matrix(16, 4)
    for i, col in enumerate(cols):
        for k in range(4):
            for mono, coeff in col[k].terms.items():
                if sum(mono) != 1:
                    raise AssertionError("Q entries must be linear forms")
                p = mono.index(1)
                m[gamma_gp_index(p, k), i] = coeff
    return m


def gamma_lattice(d: int) -> LatticeSpec:
    """Γ1 as a rank-4 sublattice of ℤ¹⁶ ≅ Γ2⊗Γp."""
    return LatticeSpec(gamma_embedding(d))


def D_polynomial(d: int) -> ParamPoly:
    """D = d(ac − b²) − e² ∈ Sym²Γp."""
    a, b, c, e = (ParamPoly.var(i) for i in range(4))
    return d * (a * c - b * b) - e * e


def positivity_check(p: WeilParams) -> bool:
    """a > 0 and d(ac − b²) − e² > 0; asserts agreement with positivity of
    the leading principal minors of Q."""
    if p.symbolic:
        raise ValueError("positivity needs numeric parameters")
    a, b, c, e = (Fraction(v) for v in p.values)
    d = p.d
    D = d * (a * c - b * b) - e * e
    ok = a > 0 and D > 0
    minors = _leading_minors_numeric(p)
    assert ok == all(m > 0 for m in minors), "positivity/minor test disagreement"
    return ok


def _leading_minors_numeric(p: WeilParams) -> list[Fraction]:
    q = build_polarization(p)
    out = []
    for n in range(1, 5):
        out.append(_det([[Fraction(q[i][j]) for j in range(n)] for i in range(n)]))
    return out


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for j in range(n):
        piv = None
        for i in range(j, n):
            if m[i][j]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = -det
        det *= m[j][j]
        for i in range(j + 1, n):
            if m[i][j]:
                f = m[i][j] / m[j][j]
                for jj in range(j, n):
                    m[i][jj] -= f * m[j][jj]
    return det


def symbolic_minors(d: int) -> list[ParamPoly]:
    """Leading principal minors of Q as polynomials: (a, ac−b², aD, D²)."""
    q = build_polarization(WeilParams(d))
    out = []
    for n in range(1, 5):
        out.append(_poly_det([[q[i][j] for j in range(n)] for i in range(n)]))
    return out


def _poly_det(m: list[list[ParamPoly]]) -> ParamPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = ParamPoly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [[m[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = m[0][j] * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def cm_action(d: int) -> tuple[Matrix, Matrix]:
    """The complex multiplication (√−d)*: returns (M, N).

    M acts on Γ2 coordinates (columns are images): (e1,e2,e3,e4) ↦
    (de3, de4, −e1, −e2).  N re-indexes the period basis: (γ1,γ2,γ3,γ4) ↦
    (γ3, γ4, −dγ1, −dγ2).  Identities (verified in tests): M² = N² = −d·Id,
    M·Q = Q·N entrywise, and M·Q·Mᵀ = d·Q.
    """
    M = Matrix.from_rows(
        [
            [0, 0, -1, 0],
            [0, 0, 0, -1],
            [d, 0, 0, 0],
            [0, d, 0, 0],
        ]
    )
    N = Matrix.from_rows(
        [
            [0, 0, -d, 0],
            [0, 0, 0, -d],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ]
    )
    return M, N


class ClassH22:
    """A (2,2)-class: 36 rational coordinates on γ_{ij} ⊗ e_{kl}, i<j, k<l."""

    __slots__ = ("coords",)

    def __init__(self, coords: dict[int, Coeff] | None = None):
        self.coords: dict[int, Coeff] = {}
        if coords:
            for i, c in coords.items():
                if c:
                    self.coords[i] = _norm(c)

    @classmethod
    def from_terms(cls, terms: Sequence[tuple[int, int, int, int, Coeff]]) -> "ClassH22":
        """terms: (i, j, k, l, coeff) meaning coeff·γ_{ij}⊗e_{kl} with any
        index order; sign conversions γ_{ji} = −γ_{ij} are applied."""
        out = cls()
        for i, j, k, l, c in terms:
            if i == j or k == l:
                raise ValueError("degenerate wedge index")
            sign = 1
            if i > j:
                i, j, sign = j, i, -sign
            if k > l:
                k, l, sign = l, k, -sign
            idx = class_index(WEDGE_PAIRS.index((i, j)), WEDGE_PAIRS.index((k, l)))
            v = out.coords.get(idx, 0) + sign * c
            if v:
                out.coords[idx] = _norm(v)
            else:
                out.coords.pop(idx, None)
        return out

    def coefficient(self, i: int, j: int, k: int, l: int) -> Coeff:
        sign = 1
        if i > j:
            i, j, sign = j, i, -sign
        if k > l:
            k, l, sign = l, k, -sign
        idx = class_index(WEDGE_PAIRS.index((i, j)), WEDGE_PAIRS.index((k, l)))
        return _norm(sign * self.coords.get(idx, 0))

    def to_list(self) -> list[Coeff]:
        return [self.coords.get(i, 0) for i in range(CLASS_DIM)]

    @classmethod
    def from_list(cls, values: Sequence[Coeff]) -> "ClassH22":
        return cls({i: v for i, v in enumerate(values) if v})

    def scale(self, k: Coeff) -> "ClassH22":
        if not k:
            return ClassH22()
        return ClassH22({i: c * k for i, c in self.coords.items()})

    def __add__(self, other: "ClassH22") -> "ClassH22":
        out = dict(self.coords)
        for i, c in other.coords.items():
            v = out.get(i, 0) + c
            if v:
                out[i] = _norm(v)
            else:
                out.pop(i, None)
        res = ClassH22()
        res.coords = out
        return res

    def __sub__(self, other: "ClassH22") -> "ClassH22":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassH22):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        raise TypeError("ClassH22 is mutable; not hashable")

    def is_zero(self) -> bool:
        return not self.coords

    def __repr__(self) -> str:
        from .multilinear import class_name

        if not self.coords:
            return "ClassH22(0)"
        parts = [f"{Fraction(c)}*{class_name(i)}" for i, c in sorted(self.coords.items())]
        return "ClassH22(" + " + ".join(parts) + ")"


def standard_classes(d: int) -> tuple[ClassH22, ClassH22, ClassH22]:
    """(θ, w1, w2): the polarization square and the two Weil classes.

    θ = Σ_{i<j} γ_{ij} ⊗ e_{ij}.  w1 and w2 are entered term by term from
    their defining expansions over the γ-basis (0-based indices here);
    w1 carries the single 1/d coordinate.
    """
    theta = ClassH22.from_terms([(i, j, i, j, 1) for (i, j) in WEDGE_PAIRS])
    dd = Fraction(1, d)
    w1 = ClassH22.from_terms(
        [
            (0, 1, 0, 1, 1),        # γ12⊗e12
            (2, 3, 0, 1, -dd),      # −(1/d) γ34⊗e12
            (0, 3, 0, 3, -1),       # −γ14⊗e14
            (0, 3, 2, 1, -1),       # −γ14⊗e32
            (2, 1, 0, 3, -1),       # −γ32⊗e14
            (2, 1, 2, 1, -1),       # −γ32⊗e32
            (0, 1, 2, 3, -d),       # −d γ12⊗e34
            (2, 3, 2, 3, 1),        # γ34⊗e34
        ]
    )
    w2 = ClassH22.from_terms(
        [
            (0, 3, 0, 1, 1),        # γ14⊗e12
            (0, 3, 2, 3, -d),       # −d γ14⊗e34
            (0, 1, 2, 1, d),        # +d γ12⊗e32
            (2, 3, 2, 1, -1),       # −γ34⊗e32
            (0, 1, 0, 3, d),        # +d γ12⊗e14
            (2, 3, 0, 3, -1),       # −γ34⊗e14
            (2, 1, 0, 1, 1),        # +γ32⊗e12
            (2, 1, 2, 3, -d),       # −d γ32⊗e34
        ]
    )
    return theta, w1, w2


def expand_class_to_T(c: ClassH22, d: int) -> TVector:
    """Replace each γ_{ij} by the symmetric part of γ_i ∧ γ_j and multiply
    symmetrically with the e_{kl} factor; linear in c."""
    cols = q_columns(d)
    out = TVector()
    for idx, coeff in c.coords.items():
        gpair, epair = class_unindex(idx)
        gi, gj = WEDGE_PAIRS[gpair]
        part = gamma_wedge_sym_part(cols[gi], cols[gj])  # 6 quadratic ParamPolys
        for w, poly in enumerate(part):
            if poly.is_zero():
                continue
            sym_w = sym2w_of(w, epair)
            for mono, pc in poly.terms.items():
                idxs = [t for t, e in enumerate(mono) for _ in range(e)]
                sigma = sym2gp_of(idxs[0], idxs[1])
                ti = t_index(sigma, sym_w)
                v = out.terms.get(ti, 0) + coeff * pc
                if v:
                    out.terms[ti] = _norm(v)
                else:
                    out.terms.pop(ti, None)
    return out


def D_element(d: int) -> list[Coeff]:
    """D = d(ac − b²) − e² as Sym²Γp coordinates."""
    coords = [0] * 10
    coords[sym2gp_of(0, 2)] = d    # ac
    coords[sym2gp_of(1, 1)] = -d   # −b²
    coords[sym2gp_of(3, 3)] = -1   # −e²
    return coords


def weil_lattice_T(d: int) -> tuple[TVector, TVector, TVector]:
    """The exact T-expansions of (θ, w1, w2); their ℤ-span is the lattice W."""
    theta, w1, w2 = standard_classes(d)
    return (
        expand_class_to_T(theta, d),
        expand_class_to_T(w1, d),
        expand_class_to_T(w2, d),
    )


def cm_action_on_class(c: ClassH22, d: int) -> ClassH22:
    """(√−d)* on ∧²Γ1 ⊗ ∧²Γ2: γ-indices via N, e-indices via M."""
    M, N = cm_action(d)
    out = ClassH22()
    for idx, coeff in c.coords.items():
        gpair, epair = class_unindex(idx)
        gi, gj = WEDGE_PAIRS[gpair]
        ek, el = WEDGE_PAIRS[epair]
        # image of γ_gi ∧ γ_gj under N (columns are images)
        for gi2 in range(4):
            ci = N[gi2, gi]
            if not ci:
                continue
            for gj2 in range(4):
                cj = N[gj2, gj]
                if not cj or gi2 == gj2:
                    continue
                for ek2 in range(4):
                    ck = M[ek2, ek]
                    if not ck:
                        continue
                    for el2 in range(4):
                        cl = M[el2, el]
                        if not cl or ek2 == el2:
                            continue
                        out = out + ClassH22.from_terms(
                            [(gi2, gj2, ek2, el2, coeff * ci * cj * ck * cl)]
                        )
    return out


def cm_action_on_T(t: TVector, d: int) -> TVector:
    """(√−d)* on T: trivial on Sym²Γp, induced by M on Sym²(∧²Γ2)."""
    M, _ = cm_action(d)
    # image of each wedge basis vector e_{kl} as a 6-vector
    images = []
    for (k, l) in WEDGE_PAIRS:
        vec = [0] * 6
        for k2 in range(4):
            a = M[k2, k]
            if not a:
                continue
            for l2 in range(4):
                b = M[l2, l]
                if not b or k2 == l2:
                    continue
                sign = 1
                kk, ll = k2, l2
                if kk > ll:
                    kk, ll, sign = ll, kk, -sign
                vec[WEDGE_PAIRS.index((kk, ll))] += sign * a * b
        images.append(vec)
    out = TVector()
    from .multilinear import SYM2W, t_unindex

    for ti, coeff in t.terms.items():
        sigma, wpair = t_unindex(ti)
        w1i, w2i = SYM2W[wpair]
        prod = sym_square_embed(images[w1i], images[w2i])
        for wj, pc in enumerate(prod):
            if pc:
                idx = t_index(sigma, wj)
                v = out.terms.get(idx, 0) + coeff * pc
                if v:
                    out.terms[idx] = _norm(v)
                else:
                    out.terms.pop(idx, None)
    return out


# -- printed-display comparisons (typo reports) ------------------------------


def _printed_theta_T(d: int) -> TVector:
    """The θ expansion exactly as printed: d(−(e/d)e12 + a·e13 + b(e14+e23)
    + c·e24 − e·e34)² + D(−(1/d)e12² + e14² + e23² − 2e13e14 + d·e34²)."""
    a, b, c, e = (ParamPoly.var(i) for i in range(4))
    lin = [
        -e * Fraction(1, d),  # e12
        a,                    # e13
        b,                    # e14
        b,                    # e23
        c,                    # e24
        -e,                   # e34
    ]
    out = TVector()
    for i in range(6):
        for j in range(i, 6):
            poly = (lin[i] * lin[j]) * (d * (1 if i == j else 2))
            if poly.is_zero():
                continue
            out = out + TVector.from_poly_times_sym2w(
                poly, [1 if t == sym2w_of(i, j) else 0 for t in range(21)]
            )
    D = D_polynomial(d)
    bracket = [
        (sym2w_of(0, 0), -Fraction(1, d)),  # −(1/d) e12²
        (sym2w_of(2, 2), 1),                # e14²
        (sym2w_of(3, 3), 1),                # e23²
        (sym2w_of(1, 2), -2),               # −2 e13·e14
        (sym2w_of(5, 5), d),                # d e34²
    ]
    for wi, cf in bracket:
        out = out + TVector.from_poly_times_sym2w(
            D * cf, [1 if t == wi else 0 for t in range(21)]
        )
    return out


def _printed_w1_T(d: int) -> TVector:
    """w1 as printed: D((1/d)e12² + 2e12e34 + d·e34²) − D(e14−e23)²."""
    D = D_polynomial(d)
    out = TVector()
    for wi, cf in [
        (sym2w_of(0, 0), Fraction(1, d)),
        (sym2w_of(0, 5), 2),
        (sym2w_of(5, 5), d),
        (sym2w_of(2, 2), -1),
        (sym2w_of(2, 3), 2),   # −(e14−e23)² = −e14² + 2e14e23 − e23²
        (sym2w_of(3, 3), -1),
    ]:
        out = out + TVector.from_poly_times_sym2w(
            D * cf, [1 if t == wi else 0 for t in range(21)]
        )
    return out


def _printed_w2_T(d: int) -> TVector:
    """w2 as printed: 2D(e12 − d·e34)(e14 + e32) = 2D(e12 − d·e34)(e14 − e23)."""
    D = D_polynomial(d)
    left = [0] * 6
    left[0] = 1          # e12
    left[5] = -d         # −d e34
    right = [0] * 6
    right[2] = 1         # e14
    right[3] = -1        # −e23
    prod = sym_square_embed(left, right)
    out = TVector()
    for wi, cf in enumerate(prod):
        if cf:
            out = out + TVector.from_poly_times_sym2w(
                D * (2 * cf), [1 if t == wi else 0 for t in range(21)]
            )
    return out


def display_comparisons(d: int) -> dict:
    """Computed expansions vs. the printed displays: the typo report.

    Each entry lists the T-coordinates where the minor-based computation and
    the printed formula differ (empty list = exact agreement).
    """
    from .multilinear import t_name

    theta_T, w1_T, w2_T = weil_lattice_T(d)
    report = {}
    for name, computed, printed in [
        ("theta", theta_T, _printed_theta_T(d)),
        ("w1", w1_T, _printed_w1_T(d)),
        ("w2", w2_T, _printed_w2_T(d)),
    ]:
        diff = computed - printed
        report[name] = {
            "matches_printed_display": diff.is_zero(),
            "computed_minus_printed": {
                t_name(i): str(Fraction(c)) for i, c in sorted(diff.terms.items())
            },
        }
    return report
