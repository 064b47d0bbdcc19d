"""gct: exact-arithmetic tools for the complexity of det vs perm.

Modules:

* ``poly``      exact sparse polynomial arithmetic, substitutions, flattenings
* ``zoo``       named polynomial generators, decompositions, verifiers
* ``flatten``   exact ranks and border-rank lower bounds
* ``hhh``       the Hermite--Hadamard--Howe map and its kernel
* ``reptheory`` symmetric-group character calculus and obstructions
* ``latin``     Latin-square sign counting and determinant pairings
* ``geometry``  Hessians, characteristic-polynomial identities, stabilizers
* ``cli``       the ``gct`` command-line entry point
"""

__version__ = "0.1.0"
