"""
extreme-delaunay - Adjacency method for extreme Delaunay polytopes in exact arithmetic
"""

__version__ = "0.1.0"
