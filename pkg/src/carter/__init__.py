"""Carter diagram calculus: linkage systems, semi-Coxeter orbits, and
two-involution decompositions in Weyl groups, all in exact arithmetic."""

__version__ = "0.1.0"
