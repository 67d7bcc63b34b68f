"""Rediscover the weighted-sum identities by exact experimentation.

Fits power, affine, symmetric and polynomial weight ansaetze against the
weight <= 7 exact reduction tables (assuming algebraic independence of the
basis constants), screens numerically at two higher weights, and prints the
survivors in corpus DSL form so they can be fed straight back to the verifier.
"""
from mzv.search import (
    SearchConfig,
    candidate_dsl,
    search_general,
    search_poly_weights,
    solve_power_base,
)

print("pure power bases a with sum_j a^j zeta(j, s-j) = f(s) zeta(s):")
for w in (5, 6, 7):
    print(f"  weight {w}: {[str(a) for a in solve_power_base(w, H=16)]}")

print()
print("full search at height 8 (power + affine + symmetric-even):")
for i, cand in enumerate(search_general(SearchConfig(H=8)), start=1):
    print(f"  # {cand.describe()}")
    print(f"  {candidate_dsl(cand, f'S{i:02d}')}")

print()
print("degree-2 polynomial weights:")
for i, cand in enumerate(search_poly_weights(SearchConfig(families=('poly',))), start=1):
    print(f"  # {cand.describe()}")
    print(f"  {candidate_dsl(cand, f'P{i:02d}')}")
