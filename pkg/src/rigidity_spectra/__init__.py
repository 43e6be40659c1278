"""Spectral sufficient conditions for 2D rigidity, with combinatorial and
randomized oracles to check them against."""

from .certify import Certificate, certify
from .cover import Cover, search_witness_cover, verify_cover
from .graph import Graph, Partition, parse_graph
from .packing import PackingResult, pack_spanning_rigid
from .sparsity import is_globally_rigid, is_redundantly_rigid, is_rigid, rigidity_rank
from .spectral import mu2

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "Cover",
    "Graph",
    "PackingResult",
    "Partition",
    "certify",
    "is_globally_rigid",
    "is_redundantly_rigid",
    "is_rigid",
    "mu2",
    "pack_spanning_rigid",
    "parse_graph",
    "rigidity_rank",
    "search_witness_cover",
    "verify_cover",
]
