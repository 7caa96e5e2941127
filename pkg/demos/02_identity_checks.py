"""
Checking the classical identities
=================================

Each check reports the largest residual over its whole grid.
"""

from gammapoles import identities

# a single point first
print("reflection at 2.7+3i:", identities.reflection_residual(2.7 + 3j))
print("prod sin(k pi/6)   :", identities.sine_product(6).to_float(), "(expect 6/2^5 = 0.1875)")
print("prod (1 - w_k), 360:", identities.roots_of_unity_product(360))

# then whole grids; these take a few seconds
for report in (
    identities.check_reflection(),
    identities.check_gauss(),
    identities.check_chord_length(),
    identities.check_gamma_fraction_product(),
    identities.check_sine_product(n_max=2000),
):
    row = report.as_row()
    print(f"{row['id']:<24} {row['max_residual']:.2e}  {row['status']}  [{row['grid']}]")
