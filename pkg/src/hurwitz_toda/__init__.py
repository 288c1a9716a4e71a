"""Exact computations for double Hurwitz numbers and their Toda tau function."""

from .combinat import Partition, partitions_of

__all__ = ["Partition", "partitions_of"]
__version__ = "0.1.0"
