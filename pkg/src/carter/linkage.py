"""Linkage systems: sign vectors of pairings between a root and diagram nodes.

A linkage labels vector is the column of pairings of an extending root gamma
with the diagram's roots, ordered (alpha_1..alpha_k, beta_1..beta_h).  In the
simply-laced case the entries lie in {-1, 0, 1}, and membership in the
linkage system is exactly

    v^T B_L^{-1} v < 2        (strict, exact rational comparison)

i.e. the projection of a norm-2 vector with these pairings onto the node
span is shorter than a root.  The zero vector is excluded.
"""

from __future__ import annotations

from fractions import Fraction as Q
from functools import lru_cache

from .diagrams import CarterDiagram, Realization, default_ambient, realize
from .exactalg import det, rat_inverse
from .rootsys import RootSystem

LinkageVector = tuple


class NotALinkage(ValueError):
    pass


class DependentExtension(ValueError):
    """The extending root lies in the span of the diagram's roots."""


def serialize(v: LinkageVector) -> str:
    return ",".join(str(x) for x in v)


def parse_labels(text: str) -> LinkageVector:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise NotALinkage(f"bad labels string {text!r}") from exc


@lru_cache(maxsize=None)
def dual_form(d: CarterDiagram):
    """(adjugate, determinant) pair so that form(v) = v adj v^T / det exactly."""
    g = d.gram_matrix()
    dt = det(g)
    if dt <= 0:
        raise ValueError(f"{d.name}: Gram matrix not positive definite")
    inv = rat_inverse(g)
    adj = tuple(tuple(int(x * dt) for x in row) for row in inv)
    return adj, dt


def form_value(d: CarterDiagram, v: LinkageVector) -> Q:
    adj, dt = dual_form(d)
    num = sum(v[i] * sum(adj[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))
    return Q(num, dt)


def is_linkage(d: CarterDiagram, v: LinkageVector) -> bool:
    if len(v) != d.size or any(x not in (-1, 0, 1) for x in v) or not any(v):
        return False
    return form_value(d, v) < 2


@lru_cache(maxsize=None)
def enumerate_linkages(d: CarterDiagram) -> tuple[LinkageVector, ...]:
    """All linkage labels vectors, sorted; branch-and-bound over {-1,0,1}^m.

    For a prefix p of length t, the minimum of the dual form over all real
    completions equals p (B_L[:t,:t])^{-1} p^T, so a prefix whose leading-block
    form already reaches 2 cannot extend to a linkage.
    """
    g = d.gram_matrix()
    m = d.size
    blocks = []
    for t in range(1, m + 1):
        lead = tuple(row[:t] for row in g[:t])
        dt = det(lead)
        inv = rat_inverse(lead)
        adj = tuple(tuple(int(x * dt) for x in row) for row in inv)
        blocks.append((adj, dt))
    out = []
    prefix = [0] * m

    def rec(t: int):
        adj, dt = blocks[t - 1]
        val = sum(prefix[i] * sum(adj[i][j] * prefix[j] for j in range(t)) for i in range(t))
        if val >= 2 * dt:
            return
        if t == m:
            if any(prefix):
                out.append(tuple(prefix))
            return
        for x in (-1, 0, 1):
            prefix[t] = x
            rec(t + 1)
        prefix[t] = 0

    for x in (-1, 0, 1):
        prefix[0] = x
        rec(1)
    return tuple(sorted(out))


def unicolored_kind(d: CarterDiagram, v: LinkageVector) -> str:
    """'alpha' if all beta labels vanish, 'beta' if all alpha labels vanish, else 'none'."""
    if not any(v):
        raise NotALinkage("zero vector")
    alpha_part, beta_part = v[:d.k], v[d.k:]
    if not any(beta_part):
        return "alpha"
    if not any(alpha_part):
        return "beta"
    return "none"


def dual_reflect(d: CarterDiagram, j: int, v: LinkageVector) -> LinkageVector:
    """Dual action of the reflection in node j on labels: v -> v - v_j * B_L[j]."""
    g = d.gram_matrix()
    vj = v[j]
    return tuple(x - vj * g[j][i] for i, x in enumerate(v))


def labels_of(r: Realization, gamma) -> LinkageVector:
    """Labels vector of an ambient root against a realization's node roots."""
    amb = r.ambient
    if not amb.is_root(gamma):
        raise NotALinkage(f"{gamma} is not a root of {amb.name}")
    v = tuple(amb.pairing(gamma, root) for root in r.roots)
    if any(x not in (-1, 0, 1) for x in v):
        raise DependentExtension(f"pairings {v} outside {{-1,0,1}}: gamma is a node root")
    if form_value(r.diagram, v) == 2:
        raise DependentExtension("gamma lies in the span of the diagram's roots")
    if not any(v):
        raise NotALinkage("gamma orthogonal to the whole diagram (zero labels excluded)")
    return v


def oracle_enumerate_via_ambient(d: CarterDiagram, ambient: RootSystem) -> frozenset:
    """Definitional enumeration: scan all ambient roots extending a realization."""
    r = realize(d, ambient)
    seen = set()
    for gamma in ambient.roots:
        try:
            seen.add(labels_of(r, gamma))
        except (DependentExtension, NotALinkage):
            continue
    return frozenset(seen)


def oracle_enumerate(d: CarterDiagram) -> frozenset:
    return oracle_enumerate_via_ambient(d, default_ambient(d))
