"""Dunkl, Cherednik and spherical harmonic analysis in computable form.

Submodules
----------
numerics
    Special functions, hypergeometric series and quadrature.
rootsys
    Root systems, Weyl groups and weights.
dunklops
    Exact Dunkl, Cherednik and Heckman operators on polynomials.
dunkl1d
    Rational Dunkl analysis on the line.
trig1d
    Trigonometric (Cherednik, Opdam) analysis in rank one.
geom
    Spherical analysis on Euclidean spaces, spheres and hyperbolic spaces.
tree
    Exact spherical analysis on homogeneous trees.
checks, registry, cli
    Acceptance checks, the operation registry and the command line.
"""

__version__ = "0.1.0"
