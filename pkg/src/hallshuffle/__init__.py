"""Exact symbolic computations with shuffle algebras of curves over finite fields.

Modules:

* ``exactalg``: rational scalars and multivariate Laurent polynomials.
* ``curvezeta``: curve data, zeta functions and the product kernels.
* ``shufflecore``: weighted symmetrisation, shuffle products, wheel probes.
* ``hallside``: HN types, semistable constant terms, adic convergence.
* ``thetamap``: the dictionary to the K-theoretic side.
* ``oracle_p1``: brute-force Hall algebra of the projective line.
* ``principal``: character-twisted products.
* ``rootsystems``: root data, constant terms and induction for general types.
* ``acceptance`` and ``cli``: shared checks and the command-line front end.
"""

__version__ = "0.1.0"
