"""Polygonal chains on the torus (Γ2⊗Γp)/Γ1: triangle and parallelogram
cells with rank-1 edges, the tautological area-form map, the flag map, the
balancing test, and subdivision of rank-1-edge polygons into the two cell
primitives.

Orientation convention (frozen; validated against the two defining relations
term by term in the tests): traverse a triangle x → x+su → x+sv → x and a
parallelogram x → x+su → x+su+tv → x+tv → x; at each vertex add
+weight·(u∧v) at the outgoing direction and −weight·(u∧v) at the incoming
direction.  Flag keys use canonical coset representatives and primitive
directions; flag values carry the full u∧v, not its primitive part.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .multilinear import (
    TVector,
    gp_sym_product,
    gp_sym_square,
    primitive_direction,
    sym_square_embed,
    wedge2,
)
from .multilinear.poly import _norm
from .weil import gamma_lattice

Coeff = Union[int, Fraction]


class DegenerateCell(ValueError):
    """u ∥ v, zero scale, or zero weight: the caller may drop the cell."""


class MalformedCell(ValueError):
    """Structurally invalid cell data."""


class NotSubdividable(ValueError):
    """The loop's edges do not fit the triangle/parallelogram taxonomy."""

    def __init__(self, message: str, edge_index: int | None = None):
        super().__init__(message)
        self.edge_index = edge_index


@lru_cache(maxsize=None)
def _lattice(d: int):
    return gamma_lattice(d)


def tensor16(s: Sequence[Coeff], u: Sequence[Coeff]) -> tuple[Coeff, ...]:
    """s ⊗ u ∈ Γ2⊗Γp in the parameter-major 16-coordinate basis."""
    return tuple(_norm(s[p] * u[k]) for p in range(4) for k in range(4))


def _add16(x, y):
    return tuple(_norm(a + b) for a, b in zip(x, y))


def _scale16(x, c):
    return tuple(_norm(a * c) for a in x)


@dataclass(frozen=True)
class Vertex:
    """A point of the torus: a chosen 16-coordinate lift plus its canonical
    coset representative modulo the period lattice."""

    lift: tuple
    d: int

    @property
    def canonical(self) -> tuple:
        return tuple(_lattice(self.d).canonical_coset_rep(list(self.lift)))

    @property
    def quotient_coords(self) -> tuple:
        """Coordinates in (Γ2⊗Γp)/Γ1 ≅ ℤ¹² (rational for rational lifts)."""
        _, free = _lattice(self.d).quotient_coords(list(self.lift))
        return free

    def __eq__(self, other):
        if not isinstance(other, Vertex):
            return NotImplemented
        return self.d == other.d and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.d, self.canonical))


@dataclass
class TriangleCell:
    """Vertices x, x+su, x+sv (su meaning s⊗u); third edge s⊗(u−v)."""

    x: tuple
    s: tuple
    u: tuple
    v: tuple
    weight: Coeff = 1

    kind = "triangle"

    def vertices(self) -> list[tuple]:
        su = tensor16(self.s, self.u)
        sv = tensor16(self.s, self.v)
        return [self.x, _add16(self.x, su), _add16(self.x, sv)]


@dataclass
class ParallelogramCell:
    """Vertices x, x+su, x+su+tv, x+tv."""

    x: tuple
    s: tuple
    t: tuple
    u: tuple
    v: tuple
    weight: Coeff = 1

    kind = "parallelogram"

    def vertices(self) -> list[tuple]:
        su = tensor16(self.s, self.u)
        tv = tensor16(self.t, self.v)
        return [self.x, _add16(self.x, su), _add16(_add16(self.x, su), tv), _add16(self.x, tv)]


Cell = Union[TriangleCell, ParallelogramCell]


@dataclass
class Chain:
    """A weighted list of cells on the torus for one family parameter d."""

    d: int
    cells: list = field(default_factory=list)

    def denominators(self) -> set[int]:
        """The finite set of denominators appearing in lifts, scales,
        directions and weights (1 excluded)."""
        dens: set[int] = set()
        for cell in self.cells:
            data = [*cell.x, *cell.s, *cell.u, *cell.v, cell.weight]
            if cell.kind == "parallelogram":
                data.extend(cell.t)
            for val in data:
                q = Fraction(val).denominator
                if q != 1:
                    dens.add(q)
        return dens


def validate_cell(cell: Cell) -> None:
    """Check the rank-1 edge property (automatic for the two primitives),
    non-parallel frame directions, nonzero scales and weight."""
    for name in ("x", "s", "u", "v"):
        vec = getattr(cell, name)
        want = 16 if name == "x" else 4
        if len(vec) != want:
            raise MalformedCell(f"{name} must have {want} coordinates")
    if cell.kind == "parallelogram" and len(cell.t) != 4:
        raise MalformedCell("t must have 4 coordinates")
    if not any(cell.s):
        raise DegenerateCell("zero scale s")
    if cell.kind == "parallelogram" and not any(cell.t):
        raise DegenerateCell("zero scale t")
    if not cell.weight:
        raise DegenerateCell("zero weight")
    if not any(cell.u) or not any(cell.v):
        raise DegenerateCell("zero direction")
    if not any(wedge2(cell.u, cell.v)):
        raise DegenerateCell("parallel directions u ∥ v")


def validate_chain(chain: Chain) -> None:
    for cell in chain.cells:
        validate_cell(cell)


def cell_area_form(cell: Cell) -> TVector:
    """μ(triangle) = s²⊗(u∧v)², μ(parallelogram) = 2st⊗(u∧v)²."""
    w = wedge2(cell.u, cell.v)
    wsq = sym_square_embed(w, w)
    if cell.kind == "triangle":
        gp = gp_sym_square(cell.s)
    else:
        gp = [2 * c for c in gp_sym_product(cell.s, cell.t)]
    return TVector.from_outer(gp, wsq)


def vol_chain(chain: Chain) -> TVector:
    """The tautological area form of the chain; independent of chosen lifts."""
    out = TVector()
    for cell in chain.cells:
        out = out + cell_area_form(cell).scale(cell.weight)
    return out


class FlagSum:
    """Finitely supported map (vertex canonical form, primitive direction) →
    ∧²Γ2 ⊗ ℚ, with additive accumulation and zero pruning."""

    __slots__ = ("terms",)

    def __init__(self):
        self.terms: dict[tuple[tuple, tuple], list] = {}

    def add(self, vertex_canonical: tuple, direction: Sequence[Coeff], value: Sequence[Coeff], coeff: Coeff = 1):
        key = (tuple(vertex_canonical), primitive_direction(direction))
        cur = self.terms.get(key)
        if cur is None:
            cur = [0] * 6
            self.terms[key] = cur
        for i in range(6):
            cur[i] = _norm(cur[i] + coeff * value[i])
        if not any(cur):
            del self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FlagSum):
            return NotImplemented
        return self.terms == other.terms

    def support(self):
        return sorted(self.terms)

    def __repr__(self):
        return f"FlagSum({len(self.terms)} flags)"


def _cell_boundary(cell: Cell) -> list[tuple[tuple, tuple]]:
    """The oriented boundary as (vertex lift, outgoing displacement) pairs."""
    vs = cell.vertices()
    out = []
    n = len(vs)
    for i in range(n):
        disp = tuple(_norm(a - b) for a, b in zip(vs[(i + 1) % n], vs[i]))
        out.append((vs[i], disp))
    return out


def _edge_direction(cell: Cell, i: int) -> list:
    """Γ2-direction of the i-th traversal edge."""
    if cell.kind == "triangle":
        dirs = [cell.u, [_norm(a - b) for a, b in zip(cell.v, cell.u)], cell.v]
    else:
        dirs = [cell.u, cell.v, cell.u, cell.v]
    return list(dirs[i])


def alpha_chain(chain: Chain) -> FlagSum:
    """Sum of all vertex flags of every cell: +weight·(u∧v) on the outgoing
    direction and −weight·(u∧v) on the incoming direction at each vertex
    along the traversal; reproduces the signed Φ-subscripts of the two
    defining relations term for term."""
    fs = FlagSum()
    for cell in chain.cells:
        w = wedge2(cell.u, cell.v)
        if not any(w):
            continue  # degenerate cells contribute zero
        verts = [Vertex(tuple(v), chain.d).canonical for v in cell.vertices()]
        n = len(verts)
        dirs = [_edge_direction(cell, i) for i in range(n)]
        for i in range(n):
            # outgoing at vertex i along edge i, incoming along edge i-1
            fs.add(verts[i], dirs[i], w, cell.weight)
            fs.add(verts[i], dirs[(i - 1) % n], w, -cell.weight)
    return fs


def is_balanced(chain: Chain) -> bool:
    """True iff the flag map sends the chain to the empty flag sum."""
    return alpha_chain(chain).is_zero()


def phi_alpha_value(chain: Chain, lam) -> TVector:
    """The value of Φ∘α on the chain given only the solved differences λ
    (the base values of Φ cancel cell by cell, so λ suffices).
    `lam` is an obstruction LambdaSolution."""
    out = TVector()
    for cell in chain.cells:
        out = out + lam.cell_phi_alpha(cell).scale(cell.weight)
    return out


# -- rank-1 factorization and subdivision -------------------------------------


def factor_rank_one(disp: Sequence[Coeff]) -> tuple[tuple, tuple]:
    """Factor a 16-coordinate displacement as s ⊗ u with u primitive integral,
    or raise ValueError if the displacement is not rank 1."""
    m = [[Fraction(disp[4 * p + k]) for k in range(4)] for p in range(4)]
    if all(not x for row in m for x in row):
        raise ValueError("zero displacement")
    # u spans the row space; s spans the column space
    urow = next(row for row in m if any(row))
    u = primitive_direction(urow)
    k0 = next(k for k in range(4) if u[k])
    s = tuple(_norm(m[p][k0] / u[k0]) for p in range(4))
    # verify rank 1: disp == s ⊗ u
    if tuple(_norm(x) for x in tensor16(s, u)) != tuple(_norm(Fraction(x)) for x in disp):
        raise ValueError("displacement is not rank 1")
    return s, u


def _collinear_scale(scales: list[tuple]) -> tuple | None:
    """If all Γp-vectors lie on one line, return a primitive generator."""
    base = next((s for s in scales if any(s)), None)
    if base is None:
        return None
    prim = primitive_direction(base)
    for s in scales:
        if any(s):
            # s must be a rational multiple of prim
            k0 = next(k for k in range(4) if prim[k])
            ratio = Fraction(s[k0]) / prim[k0]
            if tuple(_norm(ratio * p) for p in prim) != tuple(_norm(Fraction(x)) for x in s):
                return None
    return prim


def subdivide_polygon(loop: list[Sequence[Coeff]], d: int) -> Chain:
    """Subdivide a closed rank-1-edge polygon into triangle/parallelogram
    cells whose area form and boundary flags reproduce the polygon's.

    `loop` lists the vertex lifts in traversal order (the closing edge back
    to the first vertex is implicit).  Supported shapes per the cell
    taxonomy: a single Γp-scale line with arbitrary coplanar directions
    (fan triangulation), or exactly two direction classes with per-class
    collinear scales (rectangulation by winding number).  Raises
    NotSubdividable otherwise, naming the offending edge.
    """
    n = len(loop)
    if n < 3:
        raise NotSubdividable("a polygon needs at least 3 vertices")
    lifts = [tuple(_norm(Fraction(x)) for x in v) for v in loop]
    disps = []
    for i in range(n):
        nxt = lifts[(i + 1) % n]
        disp = tuple(_norm(a - b) for a, b in zip(nxt, lifts[i]))
        disps.append(disp)
    if any(not any(dv) for dv in disps):
        raise NotSubdividable(
            "zero edge displacement",
            edge_index=next(i for i, dv in enumerate(disps) if not any(dv)),
        )
    factored = []
    for i, disp in enumerate(disps):
        try:
            factored.append(factor_rank_one(disp))
        except ValueError as exc:
            raise NotSubdividable(f"edge {i}: {exc}", edge_index=i) from None
    # closure is implicit: edges are consecutive vertex differences including
    # the wrap-around, so a repeated first vertex shows up as a zero edge.
    directions = [u for (_, u) in factored]
    classes = sorted(set(directions))

    if len(classes) == 2:
        # frame ordered by traversal: the first edge's direction is u, so the
        # face value u∧v matches the parallelogram relation's convention
        u_dir = directions[0]
        v_dir = next(c for c in classes if c != u_dir)
        chain = _subdivide_two_directions(lifts, factored, (u_dir, v_dir), d)
        if chain is not None:
            return chain
    chain = _subdivide_single_scale(lifts, factored, d)
    if chain is not None:
        return chain
    raise NotSubdividable(
        "edges fit neither a single Γp-scale fan nor a two-direction frame "
        f"with collinear per-class scales (direction classes: {len(classes)})"
    )


def _subdivide_single_scale(lifts, factored, d) -> Chain | None:
    """All edges share one Γp-scale line: fan triangulation in the Γ2-plane."""
    scales = [s for (s, _) in factored]
    prim = _collinear_scale(scales)
    if prim is None:
        return None
    k0 = next(k for k in range(4) if prim[k])
    # walk the polygon in Γ2⊗ℚ: p_{i+1} = p_i + c_i · u_i
    pts = [(0, 0, 0, 0)]
    for (s, u) in factored[:-1]:
        c = Fraction(s[k0]) / prim[k0]
        pts.append(tuple(_norm(a + c * b) for a, b in zip(pts[-1], u)))
    # orientation of the plane: first nonzero wedge among the points
    ref = None
    for i in range(1, len(pts)):
        for j in range(i + 1, len(pts)):
            w = wedge2(list(pts[i]), list(pts[j]))
            if any(w):
                ref = w
                break
        if ref:
            break
    if ref is None:
        return Chain(d=d, cells=[])  # everything collinear: zero polygon
    refk = next(i for i, x in enumerate(ref) if x)
    chain = Chain(d=d, cells=[])
    for i in range(1, len(pts) - 1):
        u_i = [_norm(a - b) for a, b in zip(pts[i], pts[0])]
        v_i = [_norm(a - b) for a, b in zip(pts[i + 1], pts[0])]
        w = wedge2(u_i, v_i)
        if not any(w):
            continue  # degenerate fan triangle: contributes nothing
        if any(Fraction(w[t]) * ref[refk] != Fraction(ref[t]) * w[refk] for t in range(6)):
            return None  # points leave the 2-plane
        sign = 1 if Fraction(w[refk]) / ref[refk] > 0 else -1
        chain.cells.append(
            TriangleCell(x=lifts[0], s=prim, u=tuple(u_i), v=tuple(v_i), weight=sign)
        )
    return chain


def _subdivide_two_directions(lifts, factored, frame, d) -> Chain | None:
    """Two direction classes with collinear per-class scales: rectangulate
    the rectilinear loop by winding number."""
    u_dir, v_dir = frame
    s_scales = [s for (s, u) in factored if u == u_dir]
    t_scales = [s for (s, u) in factored if u == v_dir]
    s_prim = _collinear_scale(s_scales)
    t_prim = _collinear_scale(t_scales)
    if s_prim is None or t_prim is None:
        return None
    sk = next(k for k in range(4) if s_prim[k])
    tk = next(k for k in range(4) if t_prim[k])
    # 2D walk: coordinates in units of (s_prim⊗u, t_prim⊗v)
    xy = [(Fraction(0), Fraction(0))]
    for (s, u) in factored:
        x, y = xy[-1]
        if u == u_dir:
            x = x + Fraction(s[sk]) / s_prim[sk]
        else:
            y = y + Fraction(s[tk]) / t_prim[tk]
        xy.append((x, y))
    if xy[-1] != xy[0]:
        return None  # not closed in the frame (cannot happen for true loops)
    xs = sorted({p[0] for p in xy})
    ys = sorted({p[1] for p in xy})
    # vertical directed segments for winding computation
    vsegs = []
    for i in range(len(xy) - 1):
        (x0, y0), (x1, y1) = xy[i], xy[i + 1]
        if x0 == x1 and y0 != y1:
            vsegs.append((x0, y0, y1))
    chain = Chain(d=d, cells=[])
    for ix in range(len(xs) - 1):
        for iy in range(len(ys) - 1):
            cx = (xs[ix] + xs[ix + 1]) / 2
            cy = (ys[iy] + ys[iy + 1]) / 2
            winding = 0
            for (vx, y0, y1) in vsegs:
                if vx > cx and min(y0, y1) < cy < max(y0, y1):
                    winding += 1 if y1 > y0 else -1
            if winding == 0:
                continue
            dx = xs[ix + 1] - xs[ix]
            dy = ys[iy + 1] - ys[iy]
            corner = lifts[0]
            corner = _add16(corner, tensor16([xs[ix] * p for p in s_prim], u_dir))
            corner = _add16(corner, tensor16([ys[iy] * p for p in t_prim], v_dir))
            chain.cells.append(
                ParallelogramCell(
                    x=corner,
                    s=tuple(_norm(dx * p) for p in s_prim),
                    t=tuple(_norm(dy * p) for p in t_prim),
                    u=u_dir,
                    v=v_dir,
                    weight=winding,
                )
            )
    return chain


def loop_flags(loop: list[Sequence[Coeff]], d: int, face: Sequence[Coeff]) -> FlagSum:
    """Direct boundary flags of a polygon loop: ± the face volume element at
    each vertex (outgoing/incoming), for comparison with subdivisions."""
    n = len(loop)
    lifts = [tuple(_norm(Fraction(x)) for x in v) for v in loop]
    fs = FlagSum()
    for i in range(n):
        prv = lifts[(i - 1) % n]
        nxt = lifts[(i + 1) % n]
        out_disp = [_norm(a - b) for a, b in zip(nxt, lifts[i])]
        in_disp = [_norm(a - b) for a, b in zip(lifts[i], prv)]
        v = Vertex(lifts[i], d).canonical
        _, u_out = factor_rank_one(out_disp)
        _, u_in = factor_rank_one(in_disp)
        fs.add(v, u_out, face, 1)
        fs.add(v, u_in, face, -1)
    return fs


# -- JSON schema ---------------------------------------------------------------


def _fmt_val(x) -> str | int:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_val(x) -> Coeff:
    if isinstance(x, str):
        if "/" in x:
            n, q = x.split("/")
            return _norm(Fraction(int(n), int(q)))
        return int(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedCell(f"bad numeric value: {x!r}")
    return x


def chain_to_json(chain: Chain) -> dict:
    cells = []
    for cell in chain.cells:
        entry = {
            "type": cell.kind,
            "x": [_fmt_val(v) for v in cell.x],
            "s": [_fmt_val(v) for v in cell.s],
            "u": [_fmt_val(v) for v in cell.u],
            "v": [_fmt_val(v) for v in cell.v],
            "weight": str(Fraction(cell.weight)),
        }
        if cell.kind == "parallelogram":
            entry["t"] = [_fmt_val(v) for v in cell.t]
        cells.append(entry)
    return {"d": chain.d, "cells": cells}


def chain_from_json(data: dict) -> Chain:
    if not isinstance(data, dict) or "d" not in data or "cells" not in data:
        raise MalformedCell("chain JSON must have 'd' and 'cells'")
    chain = Chain(d=int(data["d"]))
    for entry in data["cells"]:
        kind = entry.get("type")
        try:
            x = tuple(_parse_val(v) for v in entry["x"])
            s = tuple(_parse_val(v) for v in entry["s"])
            u = tuple(_parse_val(v) for v in entry["u"])
            v = tuple(_parse_val(v) for v in entry["v"])
            weight = _parse_val(entry["weight"])
        except (KeyError, ValueError) as exc:
            raise MalformedCell(f"bad cell entry: {exc}") from None
        if kind == "triangle":
            chain.cells.append(TriangleCell(x=x, s=s, u=u, v=v, weight=weight))
        elif kind == "parallelogram":
            t = tuple(_parse_val(w) for w in entry["t"])
            chain.cells.append(ParallelogramCell(x=x, s=s, t=t, u=u, v=v, weight=weight))
        else:
            raise MalformedCell(f"unknown cell type: {kind!r}")
    return chain


def load_chain(path: str) -> Chain:
    with open(path) as fh:
        return chain_from_json(json.load(fh))


def save_chain(chain: Chain, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(chain_to_json(chain), fh, indent=2)
        fh.write("\n")
