"""Odd Chern character pairing computed by sphere quadrature, compared with the analytic index."""

from landau_toeplitz import coordinate_symbol, odd_chern, su2_symbol, winding_number

z = coordinate_symbol(1, 1)
print(f"winding number of z/|z|: {winding_number(z):+.12f}")
print(f"pairing for z/|z| on S^1: {odd_chern(z).value.real:+.12f}")

result = odd_chern(su2_symbol())
print(f"pairing for su2 on S^3: {result.value.real:+.12f} "
      f"(nodes {result.quadrature_nodes}, refinement change {result.refinement_change:.1e})")
fd = odd_chern(su2_symbol(), derivative="fd")
print(f"same pairing with finite-difference derivatives: {fd.value.real:+.9f}")
