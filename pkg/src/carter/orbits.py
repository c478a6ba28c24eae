"""Semi-Coxeter orbits: cycles of the transpose semi-Coxeter matrix on linkages.

The orbit step applies ``ct`` (the transpose semi-Coxeter element) to a
labels column vector; its inverse traverses the same cycles backwards, so
orbit partitions and all classification flags are direction-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagrams import CarterDiagram, series_dl, series_dlak
from .exactalg import mat_vec
from .linkage import LinkageVector, enumerate_linkages, is_linkage, unicolored_kind
from .semicox import semi_coxeter


class NotALinkageError(ValueError):
    pass


def orbit_step(d: CarterDiagram, v: LinkageVector) -> LinkageVector:
    """ct . v; the result is again a linkage (the dual group preserves the form)."""
    if not is_linkage(d, v):
        raise NotALinkageError(f"{v} is not in the linkage system of {d.name}")
    w = mat_vec(semi_coxeter(d).c_t, v)
    assert is_linkage(d, w), "orbit step left the linkage system"
    return w


def orbit_step_inv(d: CarterDiagram, v: LinkageVector) -> LinkageVector:
    if not is_linkage(d, v):
        raise NotALinkageError(f"{v} is not in the linkage system of {d.name}")
    return mat_vec(semi_coxeter(d).c_t_inv, v)


@dataclass(frozen=True)
class Orbit:
    diagram: CarterDiagram
    members: tuple[LinkageVector, ...]  # cyclic order under orbit_step, lex-least first
    unicolored: tuple[int, ...]         # indices of unicolored members
    self_opposite: bool

    @property
    def length(self) -> int:
        return len(self.members)

    @property
    def exceptional(self) -> bool:
        return not self.unicolored

    @property
    def representative(self) -> LinkageVector:
        return self.members[0]


@lru_cache(maxsize=None)
def all_orbits(d: CarterDiagram) -> tuple[Orbit, ...]:
    """Partition the linkage system into orbit cycles, sorted by representative."""
    ct = semi_coxeter(d).c_t
    todo = set(enumerate_linkages(d))
    orbits = []
    while todo:
        start = min(todo)
        cycle = [start]
        cur = mat_vec(ct, start)
        while cur != start:
            cycle.append(cur)
            cur = mat_vec(ct, cur)
        todo.difference_update(cycle)
        rep = min(cycle)
        at = cycle.index(rep)
        cycle = cycle[at:] + cycle[:at]
        members = tuple(cycle)
        member_set = set(members)
        uni = tuple(i for i, v in enumerate(members) if unicolored_kind(d, v) != "none")
        self_opp = all(tuple(-x for x in v) in member_set for v in members)
        orbits.append(Orbit(d, members, uni, self_opp))
    return tuple(sorted(orbits, key=lambda o: o.representative))


def orbit_of(d: CarterDiagram, v: LinkageVector) -> Orbit:
    if not is_linkage(d, v):
        raise NotALinkageError(f"{v} is not in the linkage system of {d.name}")
    for orbit in all_orbits(d):
        if v in orbit.members:
            return orbit
    raise AssertionError("linkage not covered by the orbit partition")


def length_multiset(d: CarterDiagram) -> tuple[int, ...]:
    return tuple(sorted((o.length for o in all_orbits(d)), reverse=True))


@dataclass(frozen=True)
class OrbitClassification:
    length: int
    unicolored_count: int
    exceptional: bool
    self_opposite: bool
    opposite_index: int  # index in all_orbits order; own index when self-opposite


def classify_orbit(o: Orbit) -> OrbitClassification:
    orbits = all_orbits(o.diagram)
    neg = tuple(-x for x in o.representative)
    opposite = next(i for i, other in enumerate(orbits) if neg in other.members)
    return OrbitClassification(o.length, len(o.unicolored), o.exceptional,
                               o.self_opposite, opposite)


CENSUS_DIAGRAMS = ("D4a1", "D4", "D5a1", "D5", "E6a1", "E6a2", "E6",
                   "D6a1", "D6a2", "D6", "E7a1", "E7a2", "E7a3", "E7a4", "E7",
                   "D7a1", "D7a2", "D7")


def exceptional_census() -> dict[str, list[Orbit]]:
    """Exceptional orbits (no unicolored member) per fixed catalog diagram."""
    from .diagrams import get_diagram
    out = {}
    for name in CENSUS_DIAGRAMS:
        d = get_diagram(name)
        exc = [o for o in all_orbits(d) if o.exceptional]
        if exc:
            out[name] = exc
    return out


def series_orbits(l: int, k: int | None = None) -> dict:
    """Expected vs computed orbit data for the two infinite families.

    D_l: one orbit of length 2(l-1) plus one of length 2.  D_l(a_k): orbits
    of lengths 2(k+1) and 2(l-k-1).  Exact for l > 7 (2l linkages in total);
    for l <= 7 the expected lengths appear as a sub-multiset alongside the
    extra components of the full linkage system.
    """
    d = series_dl(l) if k is None else series_dlak(l, k)
    if k is None:
        expected = tuple(sorted((2 * (l - 1), 2), reverse=True))
    else:
        kk = min(k, l - 2 - k)
        expected = tuple(sorted((2 * (kk + 1), 2 * (l - kk - 1)), reverse=True))
    computed = length_multiset(d)
    linkage_count = len(enumerate_linkages(d))
    if l > 7:
        ok = computed == expected and linkage_count == 2 * l
    else:
        pool = list(computed)
        ok = True
        for want in expected:
            if want in pool:
                pool.remove(want)
            else:
                ok = False
    return {"diagram": d.name, "expected_lengths": expected, "computed_lengths": computed,
            "linkages": linkage_count, "ok": ok}
