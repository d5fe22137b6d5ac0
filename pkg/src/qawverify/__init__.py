"""Exact verification kernel for the Askey-Wilson hierarchy of q-orthogonal polynomials."""

__version__ = "0.1.0"
