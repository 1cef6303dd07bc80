"""子空间链：构造、提取、最长链与极大链"""

from .chain import Chain, as_chain
from .construct import (
    ChainPoints,
    CondensedChain,
    chain_extensions_above_top,
    chain_from_independent,
    condense_generating_chain,
    independent_from_chain,
    is_basis_chain,
)
from .lattice import enumerate_subspaces, greedy_maximal_chain, iter_maximal_chains, longest_chain, maximal_chain_lengths
from .maximal import extend_to_maximal, is_maximal_chain

__all__ = [
    "Chain",
    "ChainPoints",
    "CondensedChain",
    "as_chain",
    "chain_extensions_above_top",
    "chain_from_independent",
    "condense_generating_chain",
    "enumerate_subspaces",
    "extend_to_maximal",
    "greedy_maximal_chain",
    "independent_from_chain",
    "is_basis_chain",
    "is_maximal_chain",
    "iter_maximal_chains",
    "longest_chain",
    "maximal_chain_lengths",
]
