"""Stochastic comparisons of spacings: heterogeneous versus homogeneous.

For any rates, the spacing of the heterogeneous sample dominates the
corresponding spacing of the i.i.d. sample at the mean rate in the usual
stochastic order, the dispersive order, and the star order.  This script
evaluates all three checks on a grid and prints the verdicts.
"""

from exorder import RateVector, check_disp, check_st, check_star, spacing_law

for rates in [(1.0, 2.0), (1.0, 2.0, 3.0), (0.5, 1.0, 2.0, 8.0)]:
    rv = RateVector(rates)
    hom_rv = rv.homogenize()
    print(f"rates {rates} (mean rate {rv.mean_rate():.4f})")
    for i in range(1, rv.n):
        for j in range(i + 1, rv.n + 1):
            hom = spacing_law(hom_rv, i, j)
            het = spacing_law(rv, i, j)
            verdicts = [
                check_st(hom, het),
                check_disp(hom, het),
                check_star(hom, het),
            ]
            summary = "  ".join(
                f"{v.order_name}={'ok' if v.holds else 'VIOLATED'}" for v in verdicts
            )
            print(f"  spacing ({i},{j}):  {summary}")
    print()

# The reverse comparison fails, and the verdict reports where.
rv = RateVector((1.0, 2.0, 3.0))
v = check_disp(spacing_law(rv, 1, 3), spacing_law(rv.homogenize(), 1, 3))
print("reversed dispersive comparison (should fail):")
print(f"  holds={v.holds}  max_violation={v.max_violation:.4f}  witness u-pair={v.witness}")
