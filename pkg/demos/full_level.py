"""Full Landau level l = 1 in C^2: the index multiplies by the level multiplicity."""

from landau_toeplitz import LevelSpec, graded_index, landau_prediction, su2_symbol
from landau_toeplitz.chern import multiplicity

u = su2_symbol()
for ell in (0, 1, 2):
    report = graded_index(LevelSpec(2, ell), u, 8)
    print(f"level {ell}: multiplicity {multiplicity(ell, 2)}, graded index {report.index}, "
          f"prediction {landau_prediction(ell, 2, u)}")
