"""
qpsym - exact symmetry computations for linear flows on the n-torus.
"""

__version__ = "0.3.0"
