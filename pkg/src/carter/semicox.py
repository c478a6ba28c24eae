"""Semi-Coxeter elements of Carter diagrams in the diagram's root basis.

For a bicolored diagram the element is the product of all alpha reflections
followed by all beta reflections (reflections within one color commute, so
each factor is well defined).  On column coordinate vectors over the node
basis the matrix has the block form

    c = [[N N^T - I, N], [-N^T, -I]]

where N is the k x h alpha-beta pairing block of B_L.  The golden tables
store the transpose ``ct`` and its inverse ``ct_inv``; ``ct`` drives the
orbit step on linkage labels vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .diagrams import CarterDiagram, DiagramError, diagram_from_n_block, validate
from .exactalg import (IntMatrix, identity, mat_mul, matrix_order, rat_inverse,
                       to_integer, transpose)


@dataclass(frozen=True)
class SemiCoxeterElement:
    diagram: CarterDiagram
    c: IntMatrix
    c_t: IntMatrix
    c_t_inv: IntMatrix
    order: int


def reflection_in_basis(gram: IntMatrix, j: int) -> IntMatrix:
    """Matrix of the reflection in node j acting on node-basis coordinates."""
    m = len(gram)
    rows = [[1 if r == c else 0 for c in range(m)] for r in range(m)]
    for c in range(m):
        rows[j][c] -= gram[c][j]
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def semi_coxeter(d: CarterDiagram) -> SemiCoxeterElement:
    """Build c = w_alpha * w_beta (beta factor applied first to arguments)."""
    if d.laced != "simply":
        raise DiagramError(f"{d.name}: semi-Coxeter elements need a simply-laced diagram")
    problems = validate(d)
    if problems:
        raise DiagramError(f"{d.name}: " + "; ".join(problems))
    g = d.gram_matrix()
    c = identity(d.size)
    for j in list(range(d.k)) + list(range(d.k, d.size)):
        c = mat_mul(c, reflection_in_basis(g, j))
    c_t = transpose(c)
    c_t_inv = to_integer(rat_inverse(c_t))
    return SemiCoxeterElement(d, c, c_t, c_t_inv, matrix_order(c_t, 1024))


def block_split(c: IntMatrix):
    """All (k, h, N) with c = [[N N^T - I, N], [-N^T, -I]]."""
    m = len(c)
    hits = []
    for h in range(1, m):
        k = m - h
        if not all(c[k + i][k + j] == (-1 if i == j else 0) for i in range(h) for j in range(h)):
            continue
        n = tuple(tuple(c[i][k + j] for j in range(h)) for i in range(k))
        if not all(c[k + j][i] == -n[i][j] for i in range(k) for j in range(h)):
            continue
        nnt = mat_mul(n, transpose(n))
        if all(c[i][j] == nnt[i][j] - (1 if i == j else 0) for i in range(k) for j in range(k)):
            hits.append((k, h, n))
    return hits


def recover_from_semicoxeter(c_t: IntMatrix, name: str = "recovered"):
    """Read (k, h, N) off a transpose semi-Coxeter matrix and rebuild the diagram.

    Round-trips: semi_coxeter(recovered).c_t equals the input.
    """
    hits = block_split(transpose(c_t))
    if not hits:
        raise ValueError("matrix lacks the bicolored block structure")
    if len(hits) > 1:
        raise ValueError(f"ambiguous block structure (splits {[(k, h) for k, h, _ in hits]})")
    k, h, n = hits[0]
    d = diagram_from_n_block(name, n)
    sc = semi_coxeter(d)
    if sc.c_t != tuple(tuple(row) for row in c_t):
        raise ValueError("recovered diagram does not reproduce the input matrix")
    return k, h, n, d


@lru_cache(maxsize=1)
def golden_tables() -> dict:
    with resources.files("carter.data").joinpath("semicox_tables.json").open() as f:
        return json.load(f)


def verify_against_table(d: CarterDiagram) -> list[str]:
    """Diff computed c_t / c_t_inv / order against the golden table entry."""
    tables = golden_tables()
    if d.name not in tables:
        raise KeyError(f"{d.name} has no golden table entry")
    entry = tables[d.name]
    sc = semi_coxeter(d)
    diffs = []
    for label, got, want in (("ct", sc.c_t, entry["ct"]), ("ct_inv", sc.c_t_inv, entry["ct_inv"])):
        want = tuple(tuple(row) for row in want)
        if got != want:
            cell = next((i, j) for i in range(len(got)) for j in range(len(got))
                        if got[i][j] != want[i][j])
            diffs.append(f"{label} differs first at {cell}: computed {got[cell[0]][cell[1]]}, "
                         f"golden {want[cell[0]][cell[1]]}")
    if sc.order != entry["order"]:
        diffs.append(f"order differs: computed {sc.order}, golden {entry['order']}")
    return diffs
