#!/usr/bin/env python3
"""Tour 2: orthogonality defect and its exact upper bounds.

The defect prod ||b_i||^2 / det(G) measures how far a basis is from
orthogonal.  For HKZ-reduced bases it is bounded; ranks 1..3 even have exact
maxima (1, 4/3, 25/12), and splitting off the leading rank-3 block gives a
bound that beats the classical product bound at every desk-scale rank.
"""

from fractions import Fraction as Fr

from hkzdefect import (
    GramMatrix,
    bound_table,
    bound_table_csv,
    delta_exact,
    hermite_constant_power,
    hermite_invariant_power,
    lls_bound,
    new_bound,
    orthogonality_defect,
)
from hkzdefect.bounds import decimal_str

hexagonal = GramMatrix.from_rows([[1, Fr(1, 2)], [Fr(1, 2), 1]])
extremal = GramMatrix.from_rows(
    [
        [1, Fr(1, 2), Fr(1, 2)],
        [Fr(1, 2), Fr(5, 4), Fr(3, 4)],
        [Fr(1, 2), Fr(3, 4), Fr(5, 4)],
    ]
)

print("defect of the hexagonal lattice:", orthogonality_defect(hexagonal))
print("  ... equals the exact rank-2 maximum:", delta_exact(2))
print("defect of the extremal rank-3 form:", orthogonality_defect(extremal))
print("  ... equals the exact rank-3 maximum:", delta_exact(3))

# The Hermite invariant is exposed as its n-th power to stay rational; the
# hexagonal lattice attains the rank-2 Hermite constant exactly.
print("\nhexagonal Hermite invariant^2:", hermite_invariant_power(hexagonal))
print("rank-2 Hermite constant^2:    ", hermite_constant_power(2))

# Both defect bounds, exactly, for every rank with a known Hermite constant.
print("\nrank-by-rank bounds (exact, with 12-digit decimals):")
for row in bound_table(8):
    parts = [f"n={row.n}", f"gamma^n={row.gamma_pow}", f"product={row.lls_bound}"]
    if row.new_bound is not None:
        parts.append(
            f"split={row.new_bound} ({decimal_str(row.new_bound, 6)})"
        )
        parts.append("sharper" if row.new_bound_is_sharper else "NOT sharper")
    if row.delta_exact is not None:
        parts.append(f"exact={row.delta_exact}")
    print("  " + "  ".join(parts))

print("\nrank 4 comparison: split", new_bound(4), "vs product", lls_bound(4))
print("\nCSV form:")
print(bound_table_csv(bound_table(5)))
