"""Exact lattice computations: reflections, chambers, Zariski decompositions,
wall enumeration and fundamental domains."""

from .cones import Cone, contains, fundamental_exceptional_chamber, member, subdivide
from .domains import ball, dirichlet_domain, rank2_boundary_rays, rank2_isometry_generator, tiles
from .exactlat import Lattice, LatticeError, divisibility, orthogonal_complement, pair, signature
from .folding import folded_weyl_order
from .hunt import HuntQuery, cone_bound, enum_negative, walls_meeting
from .roots import WeylWord, chamber_walk, reflect, reflection, weyl_factorize
from .zariski import zariski_decompose

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "HuntQuery",
    "Lattice",
    "LatticeError",
    "WeylWord",
    "ball",
    "chamber_walk",
    "cone_bound",
    "contains",
    "dirichlet_domain",
    "divisibility",
    "enum_negative",
    "folded_weyl_order",
    "fundamental_exceptional_chamber",
    "member",
    "orthogonal_complement",
    "pair",
    "rank2_boundary_rays",
    "rank2_isometry_generator",
    "reflect",
    "reflection",
    "signature",
    "subdivide",
    "tiles",
    "walls_meeting",
    "weyl_factorize",
    "zariski_decompose",
]
