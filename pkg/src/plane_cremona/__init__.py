"""Exact computations with plane Cremona maps: composition, base points,
proximity graphs, and classification of cubic maps into 31 normal forms."""

__version__ = "0.1.0"
