"""Monochromatic-pattern avoidance on grids: CNF encodings, solving, enumeration and symmetry."""
from .coloring import Coloring, parse_coloring, render_text
from .encode import ConstraintKind, SymmetryBreakMode, build_cnf
from .lattice import GridSpec, LatticeKind
from .patterns import Family, FamilyName

__version__ = "0.1.0"

__all__ = ["Coloring", "ConstraintKind", "Family", "FamilyName", "GridSpec", "LatticeKind",
           "SymmetryBreakMode", "build_cnf", "parse_coloring", "render_text"]
