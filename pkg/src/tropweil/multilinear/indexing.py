"""Canonical basis orderings shared by every module and exported as JSON.

Fixed once:

* Γ2 basis e1..e4 (indices 0..3), Γp basis a,b,c,e (indices 0..3).
* ∧²Γ2: pairs (k,l), k<l, lexicographic — e12,e13,e14,e23,e24,e34 (6).
* Sym²Γp: unordered pairs of {a,b,c,e}, lexicographic (10).
* Sym²(∧²Γ2): unordered pairs of the 6 wedge indices, lexicographic (21).
* T = Sym²Γp ⊗ Sym²(∧²Γ2): index 21*sym2gp + sym2w (210).
* Γ2⊗Γp: parameter-major, index 4*p + k for the basis vector π_p ⊗ e_k (16).
* ∧²Γ1 ⊗ ∧²Γ2 (the 36-dim class space): index 6*γpair + epair.
* ∧³ of the e-basis: triples (k,l,m), k<l<m, lexicographic (4).
"""

from __future__ import annotations

import itertools
import json

PARAM_NAMES = ("a", "b", "c", "e")
E_NAMES = ("e1", "e2", "e3", "e4")

WEDGE_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (k, l) for k in range(4) for l in range(k + 1, 4)
)
WEDGE_INDEX = {p: i for i, p in enumerate(WEDGE_PAIRS)}

SYM2GP: tuple[tuple[int, int], ...] = tuple(
    (p, q) for p in range(4) for q in range(p, 4)
)
SYM2GP_INDEX = {p: i for i, p in enumerate(SYM2GP)}

SYM2W: tuple[tuple[int, int], ...] = tuple(
    (w1, w2) for w1 in range(6) for w2 in range(w1, 6)
)
SYM2W_INDEX = {p: i for i, p in enumerate(SYM2W)}

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(4), 3))
TRIPLE_INDEX = {t: i for i, t in enumerate(TRIPLES)}

T_DIM = 210  # 10 * 21
GAMMA_GP_DIM = 16
CLASS_DIM = 36


def t_index(sym2gp: int, sym2w: int) -> int:
    return 21 * sym2gp + sym2w


def t_unindex(idx: int) -> tuple[int, int]:
    return divmod(idx, 21)


def sym2gp_of(p: int, q: int) -> int:
    return SYM2GP_INDEX[(p, q) if p <= q else (q, p)]


def sym2w_of(w1: int, w2: int) -> int:
    return SYM2W_INDEX[(w1, w2) if w1 <= w2 else (w2, w1)]


def gamma_gp_index(p: int, k: int) -> int:
    """Index of π_p ⊗ e_k in the parameter-major ordering of Γ2⊗Γp."""
    return 4 * p + k


def gamma_gp_unindex(idx: int) -> tuple[int, int]:
    return divmod(idx, 4)


def class_index(gamma_pair: int, e_pair: int) -> int:
    return 6 * gamma_pair + e_pair


def class_unindex(idx: int) -> tuple[int, int]:
    return divmod(idx, 6)


def wedge_name(w: int) -> str:
    k, l = WEDGE_PAIRS[w]
    return f"e{k + 1}{l + 1}"


def sym2gp_name(i: int) -> str:
    p, q = SYM2GP[i]
    return PARAM_NAMES[p] + PARAM_NAMES[q]


def sym2w_name(i: int) -> str:
    w1, w2 = SYM2W[i]
    return wedge_name(w1) + ("^2" if w1 == w2 else "*" + wedge_name(w2))


def t_name(idx: int) -> str:
    s, w = t_unindex(idx)
    return f"{sym2gp_name(s)}.{sym2w_name(w)}"


def class_name(idx: int) -> str:
    g, e = class_unindex(idx)
    gk, gl = WEDGE_PAIRS[g]
    return f"g{gk + 1}{gl + 1}*{wedge_name(e)}"


def index_tables() -> dict:
    """The canonical orderings, for export so external tools agree."""
    return {
        "gamma2_basis": list(E_NAMES),
        "gamma_p_basis": list(PARAM_NAMES),
        "wedge2_gamma2": [wedge_name(i) for i in range(6)],
        "sym2_gamma_p": [sym2gp_name(i) for i in range(10)],
        "sym2_wedge2": [sym2w_name(i) for i in range(21)],
        "T": [t_name(i) for i in range(T_DIM)],
        "gamma2_tensor_gamma_p": [
            f"{PARAM_NAMES[p]}*{E_NAMES[k]}" for p in range(4) for k in range(4)
        ],
        "class22": [class_name(i) for i in range(CLASS_DIM)],
        "wedge3": [f"e{k + 1}{l + 1}{m + 1}" for (k, l, m) in TRIPLES],
        "conventions": {
            "sym2_products": "polynomial convention x⊗y ↦ x·y, no 1/2 factors",
            "antisymmetry": "e_lk = -e_kl encoded by the k<l index choice",
            "T_index": "21 * sym2_gamma_p_index + sym2_wedge2_index",
            "gamma2_tensor_gamma_p_index": "4 * parameter_index + e_index",
            "class22_index": "6 * gamma_pair_index + e_pair_index",
        },
    }


def dump_index_tables() -> str:
    return json.dumps(index_tables(), indent=2, sort_keys=True)
