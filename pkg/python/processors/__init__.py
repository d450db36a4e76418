"""
Computation Modules

This package contains one module per area of the toolkit:
- borel: Instances, generator enumeration, membership and the closure oracle
- dual: Facets, Alexander dual, SCM ordering and linear quotients
- sortnet: The sorting operator on pairs and tuples
- rees: Rees algebra Gröbner basis, exchange property and fiber invariants
- powers: Powers, depth, the limit-depth witness and associated primes
- oracle: Irreducible decomposition, ideal arithmetic and marked reduction
"""
