"""Spectral Turán problems for uniform hypergraphs: constructions, alpha-spectral
radius with residual certificates, exact containment, desk-scale extremal
search and a vertex-peeling lab."""

__version__ = "0.1.0"

from .errors import InvalidInputError, SearchCapError
from .hypergraph import Hypergraph, Pattern, parse_hypergraph, turan_graph, bipartite_like_complete
from .spectral import SolverOptions, SpectralResult, spectral_radius
from .containment import contains_sub, is_cancellative, is_family_free
from .search import SearchResult, canonical_form, ex_search, spex_search
from .stability import PeelParams, peel

__all__ = [
    "InvalidInputError", "SearchCapError", "Hypergraph", "Pattern", "parse_hypergraph",
    "turan_graph", "bipartite_like_complete", "SolverOptions", "SpectralResult",
    "spectral_radius", "contains_sub", "is_cancellative", "is_family_free", "SearchResult",
    "canonical_form", "ex_search", "spex_search", "PeelParams", "peel",
]
