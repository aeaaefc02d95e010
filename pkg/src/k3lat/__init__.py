"""Exact lattice computations for K3 surfaces with genus one fibrations."""

__version__ = "0.1.0"
