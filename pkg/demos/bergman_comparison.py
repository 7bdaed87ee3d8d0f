"""Weighted-shift weights of z_i/|z| on the lowest Landau level and on the Bergman space of the ball.

The two families differ by O(1/|m|): the scaled difference |m| diff approaches 1/8.
"""

from landau_toeplitz.bergman import comparison_rows

for row in comparison_rows(1, 1, 200):
    if row["absm"] in (0, 1, 2, 5, 10, 20, 50, 100, 200):
        print(f"|m| = {row['absm']:3d}: landau {row['lambda_eta']:.6f}, bergman {row['lambda_mu_exact']:.6f}, "
              f"asymptotic {row['lambda_mu_paper']:.6f}, |m| diff {row['diff_times_absm']:.4f}")
