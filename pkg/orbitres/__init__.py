"""
orbitres: equivariant free complexes for orbit closures of E6, F4 and G2 gradings
"""
__version__ = "0.1.0"
