"""Simply-laced root systems over the simple-root basis.

Roots are integer coordinate vectors in the basis of simple roots, so the
bilinear form is given by the Cartan matrix (symmetric, diagonal 2, all roots
of squared length 2).  Families A, D, E only; D_3 is aliased to A_3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactalg import IntMatrix, IntVector, mat_mul, mat_vec, identity, as_matrix

ROOT_COUNTS = {"A": lambda n: n * (n + 1), "D": lambda n: 2 * n * (n - 1),
               "E": lambda n: {6: 72, 7: 126, 8: 240}[n]}


def cartan_matrix(family: str, rank: int) -> IntMatrix:
    """Symmetric Cartan matrix for A_n, D_n, E_6/7/8.

    Node ordering: A_n is the path 1-2-...-n.  D_n is the path 1-...-(n-1)
    with node n attached to node n-2.  E_n is the path 1-...-(n-1) with node
    n attached to node 3.
    """
    if family == "A" and rank >= 1:
        adj = [(i, i + 1) for i in range(1, rank)]
    elif family == "D" and rank >= 3:
        if rank == 3:
            return cartan_matrix("A", 3)
        adj = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    elif family == "E" and rank in (6, 7, 8):
        adj = [(i, i + 1) for i in range(1, rank - 1)] + [(3, rank)]
    else:
        raise ValueError(f"unsupported simply-laced type {family}_{rank}")
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in adj:
        m[i - 1][j - 1] = m[j - 1][i - 1] = -1
    return as_matrix(m)


def pairing(x: IntVector, y: IntVector, gram: IntMatrix) -> int:
    """Bilinear form x . y with respect to gram; roots have self-pairing 2."""
    return sum(x[i] * sum(gram[i][j] * y[j] for j in range(len(y))) for i in range(len(x)))


def reflect(root: IntVector, target: IntVector, gram: IntMatrix) -> IntVector:
    """Reflection of target in the hyperplane orthogonal to root."""
    c = pairing(target, root, gram)
    return tuple(t - c * r for t, r in zip(target, root))


def reflection_matrix(root: IntVector, gram: IntMatrix) -> IntMatrix:
    """Matrix of the reflection s_root on simple-root coordinates (columns = images)."""
    n = len(root)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        cols.append(reflect(root, e, gram))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    gram: IntMatrix
    roots: tuple[IntVector, ...]
    root_set: frozenset = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def pairing(self, x: IntVector, y: IntVector) -> int:
        return pairing(x, y, self.gram)

    def reflect(self, root: IntVector, target: IntVector) -> IntVector:
        return reflect(root, target, self.gram)

    def reflection_matrix(self, root: IntVector) -> IntMatrix:
        return reflection_matrix(root, self.gram)

    def is_root(self, v: IntVector) -> bool:
        return v in self.root_set

    def word_to_matrix(self, roots) -> IntMatrix:
        """Matrix of s_{r1} s_{r2} ... s_{rk} acting on column coordinate vectors.

        Composition order: the last reflection in the word acts first on the
        argument, i.e. the product is taken left to right as written.
        """
        m = identity(self.rank)
        for r in roots:
            m = mat_mul(m, self.reflection_matrix(r))
        return m


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Close the simple roots under all simple reflections; verify the count."""
    if family == "D" and rank == 3:
        family, rank = "A", 3
    gram = cartan_matrix(family, rank)
    simples = [tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for s in simples:
                w = reflect(s, v, gram)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    expected = ROOT_COUNTS[family](rank)
    if len(seen) != expected:
        raise AssertionError(f"{family}{rank}: got {len(seen)} roots, expected {expected}")
    roots = tuple(sorted(seen))
    return RootSystem(family, rank, gram, roots, frozenset(roots))


def word_to_matrix(system: RootSystem, roots) -> IntMatrix:
    for r in roots:
        if not system.is_root(r):
            raise ValueError(f"{r} is not a root of {system.name}")
    return system.word_to_matrix(roots)
