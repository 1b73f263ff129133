"""Spectral radii of strongly connected digraphs"""
__version__ = "1.0.0"
