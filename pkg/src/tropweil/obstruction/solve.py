"""Exact solving of the λ-system: on-the-nose infeasibility, solvability
modulo the lattice spanned by θ, w1, w2, and the generic decision for an
arbitrary sublattice.

Strategy (all exact):

1. Eliminate the λ-block over ℚ once (the coefficient matrix is shared by
   all 210 T-coordinates).  The cokernel projection q turns each T-coordinate
   of the right side into a residue vector supported on non-pivot rows.
2. The residues, grouped per non-pivot row k, must decompose over the
   T-expansions of the lattice generators; independence of those expansions
   makes the decomposition coefficients ĉ unique.
3. What remains is integer feasibility: find integer residual coefficients
   c (per residual-bearing row) whose q-image matches ĉ.  In the reduced
   coordinates this is a small exact integer system over the residual-row
   pivots, solved with solve_integer; its kernel lattice describes every
   alternative integer choice and drives the sublattice scans.

λ itself stays rational (the flag maps are only required to be linear over
ℝ); residual coefficients are integers — that is what membership of the
defects in a lattice means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactla import IntegerSolution, Matrix, solve_integer
from ..exactla.lattice import LatticeSpec
from ..multilinear import TVector, decompose_in_span, wedge2
from ..multilinear.poly import _norm
from .assemble import (
    EquationSystem,
    N_LAMBDA1,
    assemble_system,
    lam1_index,
    parallelogram_instance_row,
    triangle_instance_row,
)
from .eliminate import ColumnEliminator


class UnexpectedlyFeasible(AssertionError):
    """The exact system admitted a solution with zero residuals — this would
    contradict the algebraicity of θ; surfaced loudly, never swallowed."""


class Infeasible(AssertionError):
    """The system is not solvable modulo the full lattice W — this would
    contradict the ansatz claim; surfaced loudly, never swallowed."""


@dataclass
class InfeasibilityCertificate:
    """y·A = 0 and y·RHS[·,τ] ≠ 0: no rational solution with zero residuals."""

    functional: dict            # row index -> Fraction
    tau: int
    pairing: Fraction           # y·RHS[·,τ]

    def verify(self, system: EquationSystem) -> bool:
        # y·A = 0: check every unknown column
        col_acc: dict[int, Fraction] = {}
        for i, row in enumerate(system.rows):
            yi = self.functional.get(i)
            if not yi:
                continue
            for j, c in row.coeffs.items():
                cur = col_acc.get(j, 0) + yi * c
                if cur:
                    col_acc[j] = cur
                else:
                    col_acc.pop(j, None)
        if col_acc:
            return False
        pair = sum(
            self.functional.get(i, 0) * row.rhs.terms.get(self.tau, 0)
            for i, row in enumerate(system.rows)
        )
        return pair == self.pairing and pair != 0


@dataclass
class LambdaSolution:
    """A particular rational λ: sparse map unknown-index → T-vector.
    The trilinear block λ0 is unconstrained by the system and is zero here."""

    d: int
    entries: dict[int, TVector] = field(default_factory=dict)

    def tvalue(self, j: int) -> TVector:
        return self.entries.get(j, TVector())

    def lam1_apply(self, xvec_p, xvec_k, scale, direction, wedge6) -> TVector:
        """Multilinear evaluation of λ1(x_p⊗x_k; scale; direction)(wedge)."""
        out = TVector()
        for xp in range(4):
            a = xvec_p[xp]
            if not a:
                continue
            for xk in range(4):
                b = xvec_k[xk]
                if not b:
                    continue
                ab = a * b
                for q in range(4):
                    c = scale[q]
                    if not c:
                        continue
                    abc = ab * c
                    for k in range(4):
                        dd = direction[k]
                        if not dd:
                            continue
                        abcd = abc * dd
                        for w in range(6):
                            e = wedge6[w]
                            if not e:
                                continue
                            t = self.entries.get(lam1_index(xp, xk, q, k, w))
                            if t is not None:
                                out = out + t.scale(abcd * e)
        return out

    def cell_phi_alpha(self, cell) -> TVector:
        """The flag-map value of one cell under the λ-determined Φ (base
        values of Φ cancel within the cell)."""
        wed = wedge2(list(cell.u), list(cell.v))
        if cell.kind == "triangle":
            umv = [a - b for a, b in zip(cell.u, cell.v)]
            return self.lam1_apply(cell.s, cell.v, cell.s, umv, wed)
        out = self.lam1_apply(cell.t, cell.v, cell.s, cell.u, wed)
        return out - self.lam1_apply(cell.s, cell.u, cell.t, cell.v, wed)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "lambda0": "zero (unconstrained by the reduced system)",
            "lambda1": {
                str(j): {str(t): str(Fraction(c)) for t, c in sorted(v.terms.items())}
                for j, v in sorted(self.entries.items())
                if v.terms
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "LambdaSolution":
        from .verify import MalformedLambdaFile

        try:
            d = int(data["d"])
            entries = {}
            for j, tv in data["lambda1"].items():
                vec = TVector({int(t): Fraction(c) for t, c in tv.items()})
                if vec.terms:
                    entries[int(j)] = vec
            return cls(d=d, entries=entries)
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedLambdaFile(str(exc)) from None


@dataclass
class ModLatticeResult:
    solvable: bool
    lattice_basis_W: list            # columns, rational triples in (θ,w1,w2)-coords
    reason: str = ""
    c_rows: dict | None = None       # row index -> tuple of integer coefficients
    c_rows_W: dict | None = None     # row index -> rational triple in W-coords
    lam: LambdaSolution | None = None
    witness: dict | None = None
    residual_lattice_gens: list | None = None   # distinct W-coord triples


class ObstructionSolver:
    """One elimination, many questions; everything cached per (d, slack)."""

    def __init__(self, d: int, slack_descent: bool = False):
        self.d = d
        self.system = assemble_system(d, slack_descent=slack_descent)
        self._elim: ColumnEliminator | None = None
        self._p_rows: dict[int, dict[int, Fraction]] | None = None
        self._u_vectors: dict[int, dict[int, Fraction]] | None = None

    # -- elimination ----------------------------------------------------------

    @property
    def elim(self) -> ColumnEliminator:
        if self._elim is None:
            residual = set(self.system.residual_rows())
            elim = ColumnEliminator(
                self.system.n_rows,
                # prefer constraint rows as pivots so residual rows stay free
                row_priority=lambda r: (r in residual, r),
            )
            cols = self.system.columns()
            for j in range(N_LAMBDA1):
                elim.add_column(cols[j], j)
            self._elim = elim
        return self._elim

    def rhs_column(self, tau: int) -> dict[int, Fraction]:
        return {
            i: Fraction(row.rhs.terms[tau])
            for i, row in enumerate(self.system.rows)
            if tau in row.rhs.terms
        }

    @property
    def p_rows(self) -> dict[int, dict[int, Fraction]]:
        """Residues of the right side grouped per non-pivot row:
        p_rows[k][τ] = q(RHS[·,τ])[k]."""
        if self._p_rows is None:
            taus = set()
            for row in self.system.rows:
                taus.update(row.rhs.terms)
            out: dict[int, dict[int, Fraction]] = {}
            for tau in sorted(taus):
                residue = self.elim.project(self.rhs_column(tau))
                for k, val in residue.items():
                    out.setdefault(k, {})[tau] = val
            self._p_rows = out
        return self._p_rows

    @property
    def e_pivot_rows(self) -> list[int]:
        residual = set(self.system.residual_rows())
        return [prow for (prow, _, _) in self.elim.pivots if prow in residual]

    @property
    def u_vectors(self) -> dict[int, dict[int, Fraction]]:
        """q(e_m) for residual-bearing pivot rows m."""
        if self._u_vectors is None:
            self._u_vectors = {
                m: self.elim.project({m: 1}) for m in self.e_pivot_rows
            }
        return self._u_vectors

    # -- exact infeasibility ---------------------------------------------------

    def exact_infeasibility(self) -> InfeasibilityCertificate:
        """A re-verifiable witness that A·λ = RHS has no rational solution."""
        if not self.p_rows:
            raise UnexpectedlyFeasible(
                "the system is exactly solvable with zero residuals"
            )
        k = min(self.p_rows)
        tau = min(self.p_rows[k])
        y = self.elim.left_null_functional(k)
        pairing = sum(
            y.get(i, 0) * Fraction(row.rhs.terms.get(tau, 0))
            for i, row in enumerate(self.system.rows)
        )
        cert = InfeasibilityCertificate(functional=y, tau=tau, pairing=Fraction(pairing))
        assert cert.pairing != 0
        return cert

    # -- integer residual machinery ---------------------------------------------

    def _reduced_integer_solve(self, targets: list[dict[int, Fraction]]):
        """Find, per target ĉ, an integer vector c over the residual rows with
        q(c) = ĉ; also returns the shared homogeneous kernel lattice.

        Returns (solutions, kernel_columns) where each solution is a dict
        row→int, or (None, info) when some target is infeasible.
        """
        residual_rows = set(self.system.residual_rows())
        e_piv = self.e_pivot_rows
        u_vecs = self.u_vectors
        # every non-pivot row touched by corrections or targets
        touched: set[int] = set()
        for u in u_vecs.values():
            touched.update(u)
        for t in targets:
            touched.update(t)
        pivot_rows = self.elim.pivot_row_set
        touched -= pivot_rows
        exact_rows = sorted(r for r in touched if r not in residual_rows)
        free_rows = sorted(r for r in touched if r in residual_rows)
        # rows where everything is integral need no unknown: the residual
        # coefficient there is determined and automatically integer
        def row_fractional(r, tgt):
            if Fraction(tgt.get(r, 0)).denominator != 1:
                return True
            return any(
                Fraction(u_vecs[m].get(r, 0)).denominator != 1 for m in e_piv
            )

        # the congruence rows must be the same for all targets so the kernel
        # is shared; use the union of fractional patterns
        frac_rows = sorted(
            r for r in free_rows if any(row_fractional(r, t) for t in targets)
        )
        nz, nf = len(e_piv), len(frac_rows)
        n_eq = len(exact_rows) + nf
        A = Matrix(n_eq, nz + nf)
        den = 1
        for m in e_piv:
            for val in u_vecs[m].values():
                den = den * Fraction(val).denominator // math.gcd(
                    den, Fraction(val).denominator
                )
        for t in targets:
            for val in t.values():
                den = den * Fraction(val).denominator // math.gcd(
                    den, Fraction(val).denominator
                )
        for i, r in enumerate(exact_rows):
            for jm, m in enumerate(e_piv):
                val = u_vecs[m].get(r, 0)
                if val:
                    A[i, jm] = int(Fraction(val) * den)
        for i, r in enumerate(frac_rows):
            for jm, m in enumerate(e_piv):
                val = u_vecs[m].get(r, 0)
                if val:
                    A[len(exact_rows) + i, jm] = int(Fraction(val) * den)
            A[len(exact_rows) + i, nz + i] = den
        solutions = []
        kernel_cols = None
        for t in targets:
            b = [int(Fraction(t.get(r, 0)) * den) for r in exact_rows]
            b += [int(Fraction(t.get(r, 0)) * den) for r in frac_rows]
            res = solve_integer(A, b)
            if not isinstance(res, IntegerSolution):
                return None, {"failed_target": t, "witness": res}
            z = res.x0[:nz]
            cfree = res.x0[nz:]
            c: dict[int, int] = {}
            for jm, m in enumerate(e_piv):
                if z[jm]:
                    c[m] = z[jm]
            for i, r in enumerate(frac_rows):
                if cfree[i]:
                    c[r] = cfree[i]
            # integral free rows: determined directly
            for r in free_rows:
                if r in frac_rows:
                    continue
                val = Fraction(t.get(r, 0)) - sum(
                    Fraction(u_vecs[m].get(r, 0)) * c.get(m, 0) for m in e_piv
                )
                assert val.denominator == 1, "integrality bookkeeping failed"
                if val:
                    c[r] = int(val)
            solutions.append(c)
            if kernel_cols is None:
                kernel_cols = []
                for jcol in range(res.kernel.cols):
                    zcol = [int(res.kernel[i, jcol]) for i in range(nz)]
                    ccol = [int(res.kernel[nz + i, jcol]) for i in range(nf)]
                    vec: dict[int, int] = {}
                    for jm, m in enumerate(e_piv):
                        if zcol[jm]:
                            vec[m] = zcol[jm]
                    for i, r in enumerate(frac_rows):
                        if ccol[i]:
                            vec[r] = ccol[i]
                    for r in free_rows:
                        if r in frac_rows:
                            continue
                        val = -sum(
                            Fraction(u_vecs[m].get(r, 0)) * vec.get(m, 0) for m in e_piv
                        )
                        assert val.denominator == 1
                        if val:
                            vec[r] = int(val)
                    kernel_cols.append(vec)
        # verification: q(c) == target, computed from scratch
        for c, t in zip(solutions, targets):
            acc: dict[int, Fraction] = {}
            for m, cm in c.items():
                if m in u_vecs:
                    for r, val in u_vecs[m].items():
                        cur = acc.get(r, 0) + Fraction(val) * cm
                        if cur:
                            acc[r] = cur
                        else:
                            acc.pop(r, None)
                else:
                    cur = acc.get(m, 0) + cm
                    if cur:
                        acc[m] = cur
                    else:
                        acc.pop(m, None)
            want = {r: Fraction(v) for r, v in t.items() if v}
            assert acc == want, "residual reconstruction mismatch"
        return solutions, kernel_cols

    # -- lattice solves -----------------------------------------------------------

    def _normalize_sublattice(self, gens_W) -> list[list[Fraction]]:
        """Independent basis (in W-coordinates) of the sublattice spanned by
        the given rational triples."""
        cols = [list(g) for g in gens_W]
        if not cols:
            return []
        lat = LatticeSpec.from_columns(cols, ambient_dim=3)
        return lat.basis_columns()

    def solve_mod_lattice(self, gens_W) -> ModLatticeResult:
        """Decide integer solvability of A·λ + B·c = RHS with the residual
        triples constrained to the sublattice of W spanned by gens_W
        (rational triples in (θ, w1, w2)-coordinates)."""
        basis_W = self._normalize_sublattice(gens_W)
        w_basis = self.system.residual_basis()
        gens_T = []
        for col in basis_W:
            vec = TVector()
            for i in range(3):
                vec = vec + w_basis[i].scale(col[i])
            gens_T.append(vec)
        # rational stage: decompose every residue row over the generators
        chat: list[dict[int, Fraction]] = [dict() for _ in gens_T]
        for k in sorted(self.p_rows):
            target = TVector({t: v for t, v in self.p_rows[k].items()})
            if not gens_T:
                # only the zero lattice: residues must vanish
                return ModLatticeResult(
                    solvable=False,
                    lattice_basis_W=basis_W,
                    reason="nonzero residue with zero residual lattice",
                    witness={
                        "row": k,
                        "functional_nnz": len(self.elim.left_null_functional(k)),
                    },
                )
            coeffs = decompose_in_span(target, gens_T)
            if coeffs is None:
                return ModLatticeResult(
                    solvable=False,
                    lattice_basis_W=basis_W,
                    reason="residue row not in the rational span of the lattice",
                    witness={"row": k},
                )
            for l, cval in enumerate(coeffs):
                if cval:
                    chat[l][k] = cval
        solutions, kernel_info = self._reduced_integer_solve(chat)
        if solutions is None:
            return ModLatticeResult(
                solvable=False,
                lattice_basis_W=basis_W,
                reason="integer residual system infeasible",
                witness={
                    "divisibility_witness_kind": kernel_info["witness"].kind,
                    "factor": kernel_info["witness"].factor,
                    "value": kernel_info["witness"].value,
                },
            )
        # assemble per-row coefficient tuples and W-coordinates
        rows_touched = sorted(set().union(*[set(c) for c in solutions]) if solutions else set())
        c_rows: dict[int, tuple] = {}
        c_rows_W: dict[int, tuple] = {}
        for r in rows_touched:
            tup = tuple(c.get(r, 0) for c in solutions)
            if any(tup):
                c_rows[r] = tup
                wcoord = [Fraction(0)] * 3
                for l, cl in enumerate(tup):
                    if cl:
                        for i in range(3):
                            wcoord[i] += cl * basis_W[l][i]
                c_rows_W[r] = tuple(_norm(x) for x in wcoord)
        lam = self._particular_lambda(c_rows_W)
        gens = sorted({tuple(v) for v in c_rows_W.values()})
        return ModLatticeResult(
            solvable=True,
            lattice_basis_W=basis_W,
            c_rows=c_rows,
            c_rows_W=c_rows_W,
            lam=lam,
            residual_lattice_gens=gens,
            witness={"kernel_rank": len(kernel_info or [])},
        )

    def solve_mod_W(self) -> ModLatticeResult:
        """The ansatz claim: solvable modulo the full lattice ℤ⟨θ, w1, w2⟩."""
        res = self.solve_mod_lattice([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        if not res.solvable:
            raise Infeasible(f"mod-W solve failed: {res.reason}")
        return res

    def solvable_mod_sublattice(self, gens_W) -> ModLatticeResult:
        return self.solve_mod_lattice(gens_W)

    def _particular_lambda(self, c_rows_W: dict[int, tuple]) -> LambdaSolution:
        """Back-solve A·λ = RHS − B·c exactly, per T-coordinate."""
        w_basis = self.system.residual_basis()
        taus = set()
        for row in self.system.rows:
            taus.update(row.rhs.terms)
        for trip in c_rows_W.values():
            for i in range(3):
                if trip[i]:
                    taus.update(w_basis[i].terms)
        entries: dict[int, TVector] = {}
        for tau in sorted(taus):
            vec = self.rhs_column(tau)
            for r, trip in c_rows_W.items():
                corr = sum(Fraction(trip[i]) * w_basis[i].terms.get(tau, 0) for i in range(3))
                if corr:
                    cur = vec.get(r, 0) - corr
                    if cur:
                        vec[r] = cur
                    else:
                        vec.pop(r, None)
            residue, x = self.elim.project_with_combo(vec)
            assert not residue, "particular λ back-solve left a residue"
            for j, val in x.items():
                if val:
                    tv = entries.setdefault(j, TVector())
                    cur = tv.terms.get(tau, 0) + val
                    if cur:
                        tv.terms[tau] = _norm(cur)
                    else:
                        tv.terms.pop(tau, None)
        entries = {j: v for j, v in entries.items() if v.terms}
        return LambdaSolution(d=self.d, entries=entries)

    # -- homogeneous residual lattice (for scans) -----------------------------------

    def homogeneous_residual_kernel(self) -> list[dict[int, int]]:
        """Integer vectors z over the residual rows with q(z) = 0: every
        alternative integer residual assignment differs by these."""
        _, kernel = self._reduced_integer_solve([{}])
        return kernel or []

    # -- instance checks ---------------------------------------------------------

    def instance_defect(self, lam: LambdaSolution, kind: str, s, u, v, t=None) -> TVector:
        """LHS − RHS of one integer instance of the reduced relations under a
        solved λ."""
        if kind == "triangle":
            coeffs, rhs = triangle_instance_row(s, u, v)
        else:
            coeffs, rhs = parallelogram_instance_row(s, t, u, v)
        lhs = TVector()
        for j, c in coeffs.items():
            tv = lam.entries.get(j)
            if tv is not None:
                lhs = lhs + tv.scale(c)
        return lhs - rhs
