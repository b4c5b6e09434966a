"""Arc-diagram posets on set partitions, rook monoid Bruhat order and q-Stirling polynomials."""
from .arc_diagrams import ArcDiagram, PartitionParseError, SetPartition, parse_diagram, parse_partition
from .poset_core import FinitePoset
from .qstirling import QPolynomial
from .rook_monoid import Rook, RookParseError, parse_rook
from .theorems import CheckReport, run_all, run_theorem

__all__ = [
    "ArcDiagram", "SetPartition", "PartitionParseError", "parse_diagram", "parse_partition",
    "FinitePoset", "QPolynomial", "Rook", "RookParseError", "parse_rook",
    "CheckReport", "run_all", "run_theorem",
]
__version__ = "0.1.0"
