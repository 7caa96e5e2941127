"""
Gamma(nz)/Gamma(z) near z = 0
=============================

The ratio tends to 1/n from both sides.  The deviation is linear in z with
slope (1 - n) * gamma_E / n, where gamma_E is the Euler-Mascheroni constant.
Writes the sweep to ratio_n100.csv for plotting with any tool.
"""

from gammapoles import cli
from gammapoles.pole_limits import limit_extrapolate, ratio_stable

n = 100
# z = -j/100 are poles of the numerator, so stay inside (-0.01, 0)
for z in (-5e-3, -1e-3, -1e-4, 1e-4, 1e-3, 1e-2):
    print(f"z = {z:+.0e}   ratio = {ratio_stable(z, n):.10f}")

est = limit_extrapolate((n, 0))
print("extrapolated limit:", est.to_float(), "+/-", est.achieved_tol)

# same as: gammapoles sweep -n 100 -o ratio_n100.csv
cli.main(["sweep", "-n", str(n), "-o", "ratio_n100.csv"])
print("wrote ratio_n100.csv")
