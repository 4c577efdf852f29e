"""Exact engine for quantum cluster algebras attached to quiver gauge theories.

Subpackages:
  coeffs     - Z[v^{±1}] and multivariate Laurent/rational arithmetic
  heisenberg - symbol spaces, label brackets, kernel computations
  seed       - cluster seeds, tropical mutation, named quivers and sequences
  qtorus     - quantum torus elements and exact quantum mutation
  toda       - relativistic Toda Hamiltonians and their symbolic checks
  coulomb    - gauge quivers and q-difference monopole operators
  clustermap - gauge theory -> cluster quiver, fixture catalogs, verification
  cli        - command-line interface
"""

__version__ = "0.1.0"
