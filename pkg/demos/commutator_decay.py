"""Level projections nearly commute with multiplication by a boundary symbol.

The norm of the commutator on the outermost degree shell shrinks as the cap
grows, and Toeplitz truncations become multiplicative away from the cap.
"""

from landau_toeplitz import LevelSpec, coordinate_symbol, su2_symbol
from landau_toeplitz.symbols import symbol_adjoint
from landau_toeplitz.toeplitz import commutator_decay, multiplicativity_defect

for row in commutator_decay((0,), coordinate_symbol(1, 1), [5, 10, 20], 4):
    print(f"D = {row['D']:2d}: shell norm {row['shell_norm']:.4f}, full norm {row['full_norm']:.4f}")

u = su2_symbol()
for D in (4, 8, 16):
    defect = multiplicativity_defect(LevelSpec(2, (0, 0)), u, symbol_adjoint(u), D)
    print(f"T(u u*) - T(u) T(u*) on D/2 <= |m| <= {D}: {defect:.4f}")
