"""Assembly of the finite λ-system.

Unknowns: the quadrilinear block λ1 indexed by
(x-slot Γp, x-slot Γ2, scale slot Γp, direction slot Γ2, application ∧²Γ2) —
4·4·4·4·6 = 1536 scalar unknowns, each valued in T (the T-coordinates are
carried by the right-hand sides, so the coefficient matrix is shared by all
210 T-coordinates).  The trilinear block λ0 (96 unknowns) is part of the
unknown layout but provably never occurs in any row; assembly asserts this.

Row families (all produced by formal polarization over the coordinates of
the quantified vectors):

  C1  directional invariance, polarized:  λ1(t⊗u; s; v) + λ1(t⊗v; s; u) = 0
  C2  descent to the torus:               λ1(γ_i; s; u) = 0
  E1  triangle relation, reduced:         λ1(s⊗v; s; u−v)(u∧v) = s²⊗(u∧v)²
  E2  parallelogram relation, reduced:    [λ1(t⊗v; s; u) − λ1(s⊗u; t; v)](u∧v)
                                            = 2st⊗(u∧v)²

Residual blocks attach to E1/E2 rows (per polarized component): each such
row m carries an integer triple c[m] multiplying the T-expansions of
θ, w1, w2.  Exactly duplicated rows (the parallelogram relation's
(s,t,u,v) ↔ (t,s,v,u) symmetry) are merged, keeping their keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..multilinear import (
    TVector,
    WEDGE_PAIRS,
    polarize_identity,
    sym2gp_of,
    sym2w_of,
    t_index,
)
from ..multilinear.polarize import CONST, Formal
from ..weil import gamma_embedding, weil_lattice_T
from ..multilinear.indexing import gamma_gp_unindex

N_LAMBDA1 = 4 * 4 * 4 * 4 * 6  # 1536
N_LAMBDA0 = 4 * 4 * 6          # 96
N_UNKNOWNS = N_LAMBDA1 + N_LAMBDA0


def lam1_index(xp: int, xk: int, q: int, k: int, w: int) -> int:
    """Flat index of λ1[(π_xp ⊗ e_xk); π_q; e_k][e-pair w]."""
    return w + 6 * (k + 4 * (q + 4 * (xk + 4 * xp)))


def lam1_unindex(j: int) -> tuple[int, int, int, int, int]:
    j, w = divmod(j, 6)
    j, k = divmod(j, 4)
    j, q = divmod(j, 4)
    xp, xk = divmod(j, 4)
    return xp, xk, q, k, w


def lam0_index(q: int, k: int, w: int) -> int:
    return N_LAMBDA1 + w + 6 * (k + 4 * q)


@dataclass
class Row:
    """One polarized component: Σ coeffs[j]·λ[j] (+ residual block) = rhs."""

    coeffs: dict[int, int]
    rhs: TVector
    family: str
    key: tuple
    residual: bool
    merged_keys: list = field(default_factory=list)

    def content_key(self):
        return (
            tuple(sorted(self.coeffs.items())),
            tuple(sorted(self.rhs.terms.items())),
            self.residual,
        )


@dataclass
class EquationSystem:
    d: int
    rows: list
    theta_T: TVector
    w1_T: TVector
    w2_T: TVector
    slack_descent: bool
    grading_report: dict

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def residual_rows(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if r.residual]

    def residual_basis(self) -> list[TVector]:
        return [self.theta_T, self.w1_T, self.w2_T]

    def columns(self) -> list[dict[int, int]]:
        """Column-major view of the coefficient matrix (per λ-unknown)."""
        cols: list[dict[int, int]] = [dict() for _ in range(N_LAMBDA1)]
        for i, row in enumerate(self.rows):
            for j, c in row.coeffs.items():
                cols[j][i] = c
        return cols

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.rows:
            out[r.family] = out.get(r.family, 0) + 1
        return out


def _acc(acc: dict, formal: Formal, sign: int = 1) -> None:
    for key, c in formal.terms.items():
        v = acc.get(key, 0) + sign * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def _triangle_schema(s, u, v) -> Formal:
    """LHS − RHS of the reduced triangle relation as a Formal expression.

    λ-unknowns appear under keys ("lam", j); T-coordinates of the RHS under
    keys ("T", τ)."""
    acc: dict = {}
    for xp in range(4):
        for xk in range(4):
            base = s[xp] * v[xk]
            for q in range(4):
                scale = base * s[q]
                for k in range(4):
                    # direction slot carries u − v
                    for dir_sign, dir_vec in ((1, u), (-1, v)):
                        factor = scale * dir_vec[k]
                        for w, (wk, wl) in enumerate(WEDGE_PAIRS):
                            wedge = u[wk] * v[wl] - u[wl] * v[wk]
                            term = factor * wedge * Formal.unknown(
                                ("lam", lam1_index(xp, xk, q, k, w))
                            )
                            _acc(acc, term, dir_sign)
    # RHS: s²⊗(u∧v)², moved to the left with negative sign
    for p in range(4):
        for q in range(4):
            sterm = s[p] * s[q]
            sigma = sym2gp_of(p, q)
            for wa, (ka, la) in enumerate(WEDGE_PAIRS):
                wedge_a = u[ka] * v[la] - u[la] * v[ka]
                for wb, (kb, lb) in enumerate(WEDGE_PAIRS):
                    wedge_b = u[kb] * v[lb] - u[lb] * v[kb]
                    term = sterm * wedge_a * wedge_b * Formal.unknown(
                        ("T", t_index(sigma, sym2w_of(wa, wb)))
                    )
                    _acc(acc, term, -1)
    out = Formal()
    out.terms = acc
    return out


def _parallelogram_schema(s, t, u, v) -> Formal:
    acc: dict = {}
    for xp in range(4):
        for xk in range(4):
            base1 = t[xp] * v[xk]   # λ1(t⊗v; s; u)
            base2 = s[xp] * u[xk]   # λ1(s⊗u; t; v)
            for q in range(4):
                f1 = base1 * s[q]
                f2 = base2 * t[q]
                for k in range(4):
                    g1 = f1 * u[k]
                    g2 = f2 * v[k]
                    for w, (wk, wl) in enumerate(WEDGE_PAIRS):
                        wedge = u[wk] * v[wl] - u[wl] * v[wk]
                        unknown = Formal.unknown(("lam", lam1_index(xp, xk, q, k, w)))
                        _acc(acc, g1 * wedge * unknown, 1)
                        _acc(acc, g2 * wedge * unknown, -1)
    for p in range(4):
        for q in range(4):
            sterm = s[p] * t[q]
            sigma = sym2gp_of(p, q)
            for wa, (ka, la) in enumerate(WEDGE_PAIRS):
                wedge_a = u[ka] * v[la] - u[la] * v[ka]
                for wb, (kb, lb) in enumerate(WEDGE_PAIRS):
                    wedge_b = u[kb] * v[lb] - u[lb] * v[kb]
                    term = sterm * wedge_a * wedge_b * Formal.unknown(
                        ("T", t_index(sigma, sym2w_of(wa, wb)))
                    )
                    _acc(acc, term, -2)
    out = Formal()
    out.terms = acc
    return out


def _rows_from_equations(eqs, family: str, residual: bool) -> list[Row]:
    rows = []
    for eq in eqs:
        coeffs: dict[int, int] = {}
        rhs = TVector()
        for key, c in eq.coeffs.items():
            kind = key[0]
            if kind == "lam":
                frac = Fraction(c)
                assert frac.denominator == 1, "non-integer coefficient"
                coeffs[key[1]] = coeffs.get(key[1], 0) + int(frac)
                if not coeffs[key[1]]:
                    del coeffs[key[1]]
            elif kind == "T":
                # schema encodes LHS − RHS = 0, so RHS coefficients come back
                # with their signs flipped
                cur = rhs.terms.get(key[1], 0) - c
                if cur:
                    rhs.terms[key[1]] = cur
                else:
                    rhs.terms.pop(key[1], None)
            else:
                raise AssertionError(f"unexpected key {key}")
        if eq.const:
            raise AssertionError("unexpected constant term")
        if not coeffs and rhs.is_zero():
            continue
        rows.append(
            Row(coeffs=coeffs, rhs=rhs, family=family, key=(family, eq.monomial), residual=residual)
        )
    return rows


def assemble_system(d: int, slack_descent: bool = False) -> EquationSystem:
    """Build the full sparse system for the given d."""
    rows: list[Row] = []

    # C1: λ1(t⊗u; s; v) + λ1(t⊗v; s; u) = 0, one row per
    # (t-index, s-index, unordered {u,v}, application w)
    for tq in range(4):
        for sp in range(4):
            for i in range(4):
                for j in range(i, 4):
                    for w in range(6):
                        if i == j:
                            coeffs = {lam1_index(tq, i, sp, i, w): 1}
                        else:
                            coeffs = {
                                lam1_index(tq, i, sp, j, w): 1,
                                lam1_index(tq, j, sp, i, w): 1,
                            }
                        rows.append(
                            Row(
                                coeffs=coeffs,
                                rhs=TVector(),
                                family="C1",
                                key=("C1", tq, sp, i, j, w),
                                residual=False,
                            )
                        )

    # C2: λ1(γ_i; s; u) = 0 per (generator, s-index, direction, w)
    emb = gamma_embedding(d)
    for gi in range(4):
        support = [(r, emb[r, gi]) for r in range(16) if emb[r, gi]]
        for sp in range(4):
            for k in range(4):
                for w in range(6):
                    coeffs = {}
                    for r, coef in support:
                        xp, xk = gamma_gp_unindex(r)
                        jdx = lam1_index(xp, xk, sp, k, w)
                        coeffs[jdx] = coeffs.get(jdx, 0) + int(coef)
                    rows.append(
                        Row(
                            coeffs={j: c for j, c in coeffs.items() if c},
                            rhs=TVector(),
                            family="C2",
                            key=("C2", gi, sp, k, w),
                            residual=slack_descent,
                        )
                    )

    # E1/E2 via formal polarization
    e1_eqs = polarize_identity(_triangle_schema, [("s", 4), ("u", 4), ("v", 4)])
    e2_eqs = polarize_identity(
        _parallelogram_schema, [("s", 4), ("t", 4), ("u", 4), ("v", 4)]
    )
    rows.extend(_rows_from_equations(e1_eqs, "E1", True))
    rows.extend(_rows_from_equations(e2_eqs, "E2", True))

    # dedupe exactly identical rows (same coefficients, same rhs)
    seen: dict = {}
    deduped: list[Row] = []
    for row in rows:
        ck = row.content_key()
        if ck in seen:
            seen[ck].merged_keys.append(row.key)
        else:
            seen[ck] = row
            deduped.append(row)

    # λ0 must never occur
    for row in deduped:
        assert all(j < N_LAMBDA1 for j in row.coeffs), "λ0 appeared in a row"

    theta_T, w1_T, w2_T = weil_lattice_T(d)
    grading: dict[str, dict] = {"E1": {}, "E2": {}}
    for eqs, fam in ((e1_eqs, "E1"), (e2_eqs, "E2")):
        for eq in eqs:
            key = str(eq.multidegree())
            grading[fam][key] = grading[fam].get(key, 0) + 1
    sys_ = EquationSystem(
        d=d,
        rows=deduped,
        theta_T=theta_T,
        w1_T=w1_T,
        w2_T=w2_T,
        slack_descent=slack_descent,
        grading_report=grading,
    )
    return sys_


# -- instance recombination (tests and verification) ---------------------------


def triangle_instance_row(s, u, v) -> tuple[dict[int, Fraction], TVector]:
    """Direct expansion of the reduced triangle relation at one integer
    instance: (unknown coefficients, RHS) of
    λ1(s⊗v; s; u−v)(u∧v) = s²⊗(u∧v)²."""
    from ..multilinear import gp_sym_square, sym_square_embed, wedge2

    coeffs: dict[int, Fraction] = {}
    umv = [a - b for a, b in zip(u, v)]
    wed = wedge2(list(u), list(v))
    for xp in range(4):
        if not s[xp]:
            continue
        for xk in range(4):
            if not v[xk]:
                continue
            for q in range(4):
                if not s[q]:
                    continue
                for k in range(4):
                    if not umv[k]:
                        continue
                    for w in range(6):
                        if not wed[w]:
                            continue
                        jdx = lam1_index(xp, xk, q, k, w)
                        val = Fraction(s[xp] * v[xk] * s[q] * umv[k] * wed[w])
                        coeffs[jdx] = coeffs.get(jdx, 0) + val
                        if not coeffs[jdx]:
                            del coeffs[jdx]
    rhs = TVector.from_outer(gp_sym_square(list(s)), sym_square_embed(wed, wed))
    return coeffs, rhs


def parallelogram_instance_row(s, t, u, v) -> tuple[dict[int, Fraction], TVector]:
    """[λ1(t⊗v; s; u) − λ1(s⊗u; t; v)](u∧v) = 2st⊗(u∧v)² at one instance."""
    from ..multilinear import gp_sym_product, sym_square_embed, wedge2

    coeffs: dict[int, Fraction] = {}
    wed = wedge2(list(u), list(v))

    def add(xvec_p, xvec_k, scale, direction, sign):
        for xp in range(4):
            if not xvec_p[xp]:
                continue
            for xk in range(4):
                if not xvec_k[xk]:
                    continue
                for q in range(4):
                    if not scale[q]:
                        continue
                    for k in range(4):
                        if not direction[k]:
                            continue
                        for w in range(6):
                            if not wed[w]:
                                continue
                            jdx = lam1_index(xp, xk, q, k, w)
                            val = Fraction(
                                sign * xvec_p[xp] * xvec_k[xk] * scale[q] * direction[k] * wed[w]
                            )
                            coeffs[jdx] = coeffs.get(jdx, 0) + val
                            if not coeffs[jdx]:
                                del coeffs[jdx]

    add(t, v, s, u, 1)
    add(s, u, t, v, -1)
    gp = [2 * c for c in gp_sym_product(list(s), list(t))]
    rhs = TVector.from_outer(gp, sym_square_embed(wed, wed))
    return coeffs, rhs
