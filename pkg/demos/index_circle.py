"""Index of the compressed unit coordinate z/|z| on the first Landau levels in one dimension.

On every level the compression is a weighted shift, so it is injective and
misses exactly the lowest state: the index is -1 independently of the level.
"""

from landau_toeplitz import LevelSpec, coordinate_symbol, graded_index

a = coordinate_symbol(1, 1)
for k in range(4):
    report = graded_index(LevelSpec(1, (k,)), a, 30)
    print(f"level {k}: ker {report.kernel_dim}, coker {report.cokernel_dim}, index {report.index}, "
          f"stable over caps {[h[0] for h in report.history]}: {report.stabilized}")
