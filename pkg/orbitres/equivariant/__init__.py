"""
Equivariant constructions: based tensor spaces and maps, embeddings into the
case rings, invariants, and the registry of per-case builders.
"""
