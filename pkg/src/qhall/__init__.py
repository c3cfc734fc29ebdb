"""Exact-arithmetic toolkit for Hall algebras of quivers at q = 0.

Subpackages: quiver combinatorics (quiver), exact q-polynomials (qpoly),
finite-field representation oracles (ffrep), the cyclic-quiver Hall algebra
(cyclic), reflections on quiver flags (flags), tame iso-class families
(tame), the Schur-root / composition monoid machinery (monoid), and the
verification suites (verify) behind the command line interface (cli).
"""

__version__ = "0.1.0"
