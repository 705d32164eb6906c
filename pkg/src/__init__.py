"""
Abelian Structure Toolkit

Decomposes finitely presented abelian p-groups through binomial Groebner bases,
cross-checks every result against a Smith normal form oracle, and builds the
presentations of modules over ZC_p and the pullback {Z -> Z_p <- Z}.
"""

__version__ = "1.0.0"
__author__ = "Abelian Structure Toolkit Team"
