"""The Heisenberg algebra h5, gl(3), the nine artifacts and gl(3) -> U(h5)."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .ncalg import AlgebraSpec, NCPoly, Realization, nc_commutator, parse_ncpoly, substitute

__all__ = [
    "GL3_COMMUTATION_TABLE",
    "GL3_STRUCTURE_CONSTANTS",
    "ARTIFACT_TEXT",
    "artifact_symbols",
    "artifacts",
    "gl3_spec",
    "gl3_from_structure_constants",
    "gl3_realization_in_h5",
    "h5_spec",
    "homomorphism_residuals",
]

H5_ORDER = ("qx", "qy", "px", "py")
# descending index: J8 is leftmost in a normal word
GL3_ORDER = ("J8", "J7", "J6", "J5", "J4", "J3", "J2", "J1", "J0")

H5_RELATIONS = """
[px, qx] = 1;  [py, qy] = 1;  [px, qy] = 0;  [py, qx] = 0;
[px, py] = 0;  [qx, qy] = 0
"""

GL3_COMMUTATION_TABLE = """
[J0, J1] = J1;  [J0, J2] = J2;  [J0, J3] = 0;  [J0, J4] = 0;
[J0, J5] = 0;  [J0, J6] = 0;  [J0, J7] = -J7;  [J0, J8] = -J8;
[J1, J2] = 0;  [J1, J3] = J1;  [J1, J4] = 0;  [J1, J5] = J2;
[J1, J6] = 0;  [J1, J7] = J3 - J0;  [J1, J8] = J4;
[J2, J3] = 0;  [J2, J4] = J1;  [J2, J5] = 0;  [J2, J6] = J2;
[J2, J7] = J5;  [J2, J8] = J6 - J0;
[J3, J4] = -J4;  [J3, J5] = J5;  [J3, J6] = 0;  [J3, J7] = J7;
[J3, J8] = 0;
[J4, J5] = -J3 + J6;  [J4, J6] = -J4;  [J4, J7] = J8;  [J4, J8] = 0;
[J5, J6] = J5;  [J5, J7] = 0;  [J5, J8] = J7;
[J6, J7] = 0;  [J6, J8] = J8;  [J7, J8] = 0
"""

# nonvanishing c_ij^k as (i, j, k, value)
GL3_STRUCTURE_CONSTANTS: Tuple[Tuple[int, int, int, int], ...] = (
    (0, 1, 1, 1), (0, 2, 2, 1), (0, 7, 7, -1), (0, 8, 8, -1),
    (1, 3, 1, 1), (1, 5, 2, 1), (1, 7, 3, 1), (1, 7, 0, -1), (1, 8, 4, 1),
    (2, 4, 1, 1), (2, 6, 2, 1), (2, 7, 5, 1), (2, 8, 6, 1), (2, 8, 0, -1),
    (3, 4, 4, -1), (3, 5, 5, 1), (3, 7, 7, 1),
    (4, 5, 3, -1), (4, 5, 6, 1), (4, 6, 4, -1), (4, 7, 8, 1),
    (5, 6, 5, 1), (5, 8, 7, 1), (6, 8, 8, 1),
)

GL3_IN_H5 = {
    "J1": "px",
    "J2": "py",
    "J3": "qx*px",
    "J4": "qy*px",
    "J5": "qx*py",
    "J6": "qy*py",
    "J7": "qx*(qx*px + qy*py + 3*nu)",
    "J8": "qy*(qx*px + qy*py + 3*nu)",
    "J0": "-(qx*px + qy*py + 3*nu)",
}

ARTIFACT_TEXT = (
    "J8*J5 - J7*J6",
    "J8*J3 - J7*J4",
    "J7*J2 + J5*J0 + J5",
    "J8*J1 + J4*J0 + J4",
    "J7*J1 + J3*J0 + J3",
    "J8*J2 + J6*J0 + J6",
    "J6*J3 - J5*J4 + J3",
    "J6*J1 - J4*J2",
    "J5*J1 - J3*J2",
)

_REL = re.compile(r"\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=\s*([^;]+)")


def _parse_relations(text: str) -> Dict[Tuple[str, str], Tuple[Dict[str, Fraction], Fraction]]:
    out = {}
    for a, b, rhs in _REL.findall(text):
        lin: Dict[str, Fraction] = {}
        scalar = Fraction(0)
        rhs = rhs.replace(" ", "").strip()
        if rhs[0] not in "+-":
            rhs = "+" + rhs
        for sign, body in re.findall(r"([+-])([^+-]+)", rhs):
            m = re.fullmatch(r"(\d*)\*?([A-Za-z]\w*)?", body)
            if m is None or not body:
                raise ValueError(f"cannot read relation term {body!r}")
            c = Fraction(int(m.group(1)) if m.group(1) else 1) * (-1 if sign == "-" else 1)
            if m.group(2):
                lin[m.group(2)] = lin.get(m.group(2), 0) + c
            else:
                scalar += c
        out[(a, b)] = (lin, scalar)
    return out


@lru_cache(maxsize=None)
def h5_spec() -> AlgebraSpec:
    """h5 with the central element identified with the identity."""
    return AlgebraSpec(
        "H5",
        H5_ORDER,
        _parse_relations(H5_RELATIONS),
        aliases={"q_x": "qx", "q_y": "qy", "p_x": "px", "p_y": "py",
                 "qu": "qx", "qv": "qy", "pu": "px", "pv": "py"},
    )


@lru_cache(maxsize=None)
def gl3_spec() -> AlgebraSpec:
    index = {f"J{i}": i for i in range(9)}
    aliases = {f"j{i}": f"J{i}" for i in range(9)}
    return AlgebraSpec("GL3", GL3_ORDER, _parse_relations(GL3_COMMUTATION_TABLE), index, aliases)


def gl3_from_structure_constants() -> AlgebraSpec:
    """Second, independent construction of gl(3) from the c_ij^k list."""
    brackets: Dict[Tuple[str, str], Tuple[Dict[str, Fraction], Fraction]] = {}
    for i, j, k, v in GL3_STRUCTURE_CONSTANTS:
        lin, _ = brackets.setdefault((f"J{i}", f"J{j}"), ({}, Fraction(0)))
        lin[f"J{k}"] = Fraction(v)
    index = {f"J{i}": i for i in range(9)}
    return AlgebraSpec("GL3", GL3_ORDER, brackets, index)


@lru_cache(maxsize=None)
def gl3_realization_in_h5() -> Realization:
    h5 = h5_spec()
    images = {name: parse_ncpoly(text, h5).normal() for name, text in GL3_IN_H5.items()}
    return Realization(gl3_spec(), h5, images)


@lru_cache(maxsize=None)
def artifacts() -> Tuple[NCPoly, ...]:
    """A1..A9 in their source word order (not normal-ordered)."""
    g = gl3_spec()
    return tuple(parse_ncpoly(t, g) for t in ARTIFACT_TEXT)


def artifact_symbols() -> Dict[str, NCPoly]:
    return {f"A{i + 1}": a for i, a in enumerate(artifacts())}


def homomorphism_residuals(realization: Realization | None = None) -> List[Tuple[str, str, NCPoly]]:
    """For every unordered generator pair, image of the bracket minus bracket of images.

    All residuals vanish iff the realization respects the commutation table.
    """
    r = realization or gl3_realization_in_h5()
    src = r.source
    out = []
    names = sorted(src.names, key=lambda n: src.generators[src.rank(n)].index)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            lin, scalar = src.bracket(a, b)
            rhs = src.scalar(scalar)
            for k, c in lin.items():
                rhs = rhs + src.gen(k) * c
            lhs = nc_commutator(r.images[a], r.images[b])
            out.append((a, b, substitute(rhs, r) - lhs))
    return out
