"""Nerves of covers of finite simplicial complexes and posets, with exact homology."""
from .complexes import SimplicialComplex, SimplicialMap, boundary_of_simplex, cone
from .errors import InputError
from .homology import Coefficients, complex_homology, induced_map, poset_homology, range_compare
from .nerves import IndexedCover, completed_nerve, completion, eta_map, hypothesis_check, nerve, vbar
from .posets import Poset, PosetMap, order_complex
from .cech import cech_delta, verify_nerve_theorem
from .fibers import essential_chains, verify_fiber
from .cutsets import is_cutset, r_complex

__version__ = "0.1.0"

__all__ = [
    "Coefficients", "IndexedCover", "InputError", "Poset", "PosetMap", "SimplicialComplex", "SimplicialMap",
    "boundary_of_simplex", "cech_delta", "completed_nerve", "completion", "complex_homology", "cone",
    "essential_chains", "eta_map", "hypothesis_check", "induced_map", "is_cutset", "nerve", "order_complex",
    "poset_homology", "r_complex", "range_compare", "vbar", "verify_fiber", "verify_nerve_theorem",
]
