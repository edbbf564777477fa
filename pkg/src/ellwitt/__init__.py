"""Supersingular loci of the mod-p elliptic moduli (p > 3), their
Teichmuller/Witt lifts, and formal-group verification of the height-2
structure constants.

Subpackage map:

- arith        F_p / F_{p^2} arithmetic, quadratic residues
- polyseries   dense polynomials and truncated power/Laurent series
- modforms     exact q-expansions, E4/E6 basis, supersingular polynomial
- sslocus      Deuring criterion, point-count oracle, cross-validation
- padicwitt    Z/p^N and W(F_{p^2})/p^N, Teichmuller/Hensel lifts, splitting
- formalgroup  [p]-series, v1/v2, Deligne and Gross-Landweber checks
- cli          ellwitt command-line surface and JSON reports
"""

__version__ = "0.1.0"
