# %% [markdown]
# # Roots of unity and weak-star convergence
#
# The `n`-th roots of unity are a row-wise table whose counting measures
# approach the uniform measure on the unit circle. At `z = 2` the
# discrepancy of the potentials is exactly `log 2 - log(2**n - 1)/n`.

# %%
import numpy as np

from mpade import CompactSetSample, RootsOfUnity, UniformCircle, weakstar_discrepancy

probe = CompactSetSample.from_points([2.0])
for n in (5, 10, 20, 40):
    d = weakstar_discrepancy(RootsOfUnity(), UniformCircle(), probe, n)
    print(n, f"{d:.3e}", f"{np.log(2) - np.log(2.0**n - 1) / n:.3e}")
