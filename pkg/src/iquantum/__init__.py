"""Exact symbolic computation for quasi-split iquantum groups.

Submodules:

* ``qring``: Laurent polynomials, the rational function field Q(q),
  truncated series and quantum binomials.
* ``satake``: Cartan data with involution, iweights and word bookkeeping.
* ``freealg``: the free-type algebra on theta generators with twisted
  derivations and its bilinear forms.
* ``iuea``: b-monomials and (i)divided powers through the recursive
  isometries, the sesquilinear pairing, iSerre and expansion checks.
* ``shapes``: cup/cap/propagating diagram enumeration, degrees, pairing and
  graded rank series.
* ``klr``: the quiver Hecke algebra with signed two-variable parameters,
  normal forms, divided-power idempotents and the Serre complex check.
* ``cli``: configuration parsing and the command line front end
  (``python -m iquantum``).

Every quantity with more than one available algorithm is computed by
independent routes and compared at exact structural equality.
"""

__version__ = "0.1.0"

__all__ = [
    "qring",
    "satake",
    "freealg",
    "iuea",
    "shapes",
    "klr",
    "cli",
]
