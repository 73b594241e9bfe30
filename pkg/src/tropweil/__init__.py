"""tropweil: exact-arithmetic workbench for Weil classes on 4-dimensional
tropical abelian varieties of Weil type.

Everything is computed over ℚ with arbitrary-precision arithmetic; there is
no floating point anywhere in the package.
"""

__version__ = "0.1.0"
