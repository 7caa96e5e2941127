"""
Which sign at z = -k?
=====================

Two closed forms are in circulation for lim Gamma(nz)/Gamma(z) at z = -k:
one with sign (-1)^k, one with (-1)^(k(n-1)) from the pole residues.  They
disagree when n and k are both odd.  Measure it.
"""

from gammapoles.pole_limits import (
    SignConvention,
    limit_extrapolate,
    ratio_limit_float,
    sign_discrepancy,
    theorem2_product_limit,
)

print(" n  k   measured            (-1)^k form         residue form")
for n in range(2, 6):
    for k in range(1, 4):
        est = limit_extrapolate((n, k))
        alternating = ratio_limit_float((n, k), SignConvention.PAPER_THEOREM2)
        residue = ratio_limit_float((n, k), SignConvention.RESIDUE_ORACLE)
        mark = "  <- differ" if sign_discrepancy((n, k)) else ""
        print(f"{n:2d} {k:2d}   {est.to_float():+.12e}  {alternating:+.12e}  {residue:+.12e}{mark}")

# the product of n-1 reflected factors picks up (-1)^k from each one
for n, k in [(2, 1), (3, 1), (4, 1), (3, 2)]:
    print(f"product limit n={n} k={k}: {theorem2_product_limit(n, k).to_float():+.10f}")
