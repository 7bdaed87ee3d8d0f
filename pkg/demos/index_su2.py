"""The SU(2)-valued symbol on the 3-sphere, compressed to three polyanalytic levels of C^2.

The cokernel is one-dimensional and sits on the vacuum of the first component.
"""

import numpy as np

from landau_toeplitz import LevelSpec, graded_index, su2_symbol

u = su2_symbol()
for k in [(0, 0), (1, 0), (0, 1)]:
    report = graded_index(LevelSpec(2, k), u, 10)
    print(f"level {k}: ker {report.kernel_dim}, coker {report.cokernel_dim}, index {report.index}")
    v = report.cokernel_vectors[:, 0]
    top = int(np.argmax(abs(v)))
    print(f"  cokernel vector concentrated on column {top} with weight {abs(v[top]):.6f}")
