"""
Commutative algebra over QQ: graded polynomial rings, matrices, Groebner
bases and syzygies, free complexes and their Betti tables
"""
