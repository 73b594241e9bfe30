"""The eigenwave action on (2,2)-classes and the tropical Hodge classes of
the Weil family.

The map sends γ_{ij} ⊗ ω to γ_i ⊗ (ḡ_j ∧ ω) − γ_j ⊗ (ḡ_i ∧ ω), where ḡ_k is
the k-th column of the polarization matrix viewed as a vector of symbolic
Γp-linear forms, and the wedge is taken in ∧³ of the e-basis.  With the
symmetric polarization this sign convention kills θ identically (pairwise
cancellation of Q_{kj} against Q_{jk}); the opposite sign would negate the
map and leave the kernel unchanged.  Hodge classes are the classes whose
image vanishes identically in the parameters — the generic-member reading;
kernels at special numeric parameters are larger and exposed only as a
diagnostic.
"""

from __future__ import annotations

from fractions import Fraction

from .exactla import LatticeSpec, Matrix
from .multilinear import ParamPoly, WEDGE_PAIRS, class_unindex
from .multilinear.indexing import TRIPLE_INDEX, TRIPLES
from .weil import ClassH22, q_columns, standard_classes


class EigenwaveImage:
    """Element of Γ1 ⊗ ∧³V: 4 γ-slots × 4 wedge triples, ParamPoly entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict[tuple[int, int], ParamPoly] | None = None):
        self.entries: dict[tuple[int, int], ParamPoly] = {}
        if entries:
            for k, p in entries.items():
                if not p.is_zero():
                    self.entries[k] = p

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, EigenwaveImage):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        if not self.entries:
            return "EigenwaveImage(0)"
        parts = []
        for (g, t), poly in sorted(self.entries.items()):
            k, l, m = TRIPLES[t]
            parts.append(f"({poly})*g{g + 1}⊗e{k + 1}{l + 1}{m + 1}")
        return "EigenwaveImage(" + " + ".join(parts) + ")"


def _perm_sign3(p: tuple[int, int, int]) -> int:
    s = 1
    q = list(p)
    for a in range(3):
        for b in range(a + 1, 3):
            if q[a] > q[b]:
                s = -s
    return s


def eigenwave_apply(c: ClassH22, d: int) -> EigenwaveImage:
    """Apply the eigenwave action to a (2,2)-class, symbolically in the
    parameters."""
    cols = q_columns(d)
    out: dict[tuple[int, int], ParamPoly] = {}
    for idx, coeff in c.coords.items():
        gpair, epair = class_unindex(idx)
        gi, gj = WEDGE_PAIRS[gpair]
        k, l = WEDGE_PAIRS[epair]
        for sgn, gm, col in ((1, gi, cols[gj]), (-1, gj, cols[gi])):
            for m in range(4):
                if m == k or m == l:
                    continue
                poly = col[m]
                if poly.is_zero():
                    continue
                tri = tuple(sorted((m, k, l)))
                s = _perm_sign3((m, k, l))
                key = (gm, TRIPLE_INDEX[tri])
                val = out.get(key, ParamPoly()) + poly * (sgn * s * coeff)
                if val.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = val
    return EigenwaveImage(out)


def is_hodge(c: ClassH22, d: int) -> bool:
    """True iff the eigenwave image vanishes identically in a, b, c, e."""
    return eigenwave_apply(c, d).is_zero()


def _coefficient_matrix(d: int) -> Matrix:
    """Stack the coefficientwise linear conditions: rows indexed by
    (γ-slot, wedge triple, parameter monomial), columns by the 36 class
    coordinates.  Integer entries (multiples of 1 and d)."""
    rows: dict[tuple[int, int, tuple], dict[int, int]] = {}
    for j in range(36):
        img = eigenwave_apply(ClassH22({j: 1}), d)
        for (g, t), poly in img.entries.items():
            for mono, coeff in poly.terms.items():
                rows.setdefault((g, t, mono), {})[j] = int(coeff)
    m = Matrix(len(rows), 36)
    for i, key in enumerate(sorted(rows)):
        for j, v in rows[key].items():
            m[i, j] = v
    return m


def hodge_kernel(d: int) -> LatticeSpec:
    """The saturated lattice of integer classes killed identically by the
    eigenwave action, inside the 36-dimensional class space."""
    from .exactla import solve_integer, IntegerSolution

    m = _coefficient_matrix(d)
    res = solve_integer(m, [0] * m.rows)
    assert isinstance(res, IntegerSolution)
    lat = LatticeSpec(res.kernel)
    return lat.saturation()


def hodge_report(d: int) -> dict:
    """Kernel rank, a saturated basis, and membership verdicts for θ, d·w1
    and w2 (w1 itself has a 1/d coordinate, so its integer multiple is the
    lattice question; its rational span membership is reported too)."""
    kernel = hodge_kernel(d)
    theta, w1, w2 = standard_classes(d)
    dw1 = w1.scale(d)
    sat_basis = [[str(Fraction(x)) for x in col] for col in kernel.basis_columns()]
    span = LatticeSpec.from_columns(
        [c.to_list() for c in (theta, dw1, w2)], ambient_dim=36
    ).saturation()
    contains_span = all(kernel.membership(col) for col in span.basis_columns())
    return {
        "d": d,
        "kernel_rank": kernel.rank(),
        "saturated_basis_columns": sat_basis,
        "membership": {
            "theta": kernel.membership(theta.to_list()),
            "d*w1": kernel.membership(dw1.to_list()),
            "w2": kernel.membership(w2.to_list()),
        },
        "phi_vanishes": {
            "theta": is_hodge(theta, d),
            "w1": is_hodge(w1, d),
            "w2": is_hodge(w2, d),
        },
        "contains_saturation_of_theta_dw1_w2": contains_span,
    }


def numeric_kernel_dimension(d: int, values: tuple) -> int:
    """Diagnostic: kernel dimension of the eigenwave action at one numeric
    parameter point (rational parameter points have excess kernel)."""
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for j in range(36):
        img = eigenwave_apply(ClassH22({j: 1}), d)
        for (g, t), poly in img.entries.items():
            v = poly.evaluate(values)
            if v:
                rows.setdefault((g, t), {})[j] = Fraction(v)
    basis: list[list[Fraction]] = []
    for key in sorted(rows):
        row = [Fraction(rows[key].get(j, 0)) for j in range(36)]
        for b in basis:
            piv = next(j for j, x in enumerate(b) if x)
            if row[piv]:
                f = row[piv] / b[piv]
                row = [x - f * y for x, y in zip(row, b)]
        if any(row):
            basis.append(row)
    return 36 - len(basis)
