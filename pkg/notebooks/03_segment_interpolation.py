# %% [markdown]
# # Interpolation on a segment
#
# Chebyshev nodes on `[-1, 1]` distribute like the arcsine measure. For
# `1/(z-2)` the error on the segment decays at rate `1/(2+sqrt 3)`. The
# implied level `(2+sqrt 3)/2` is `exp(-P)` at the pole.

# %%
import numpy as np

from mpade import ArcsineSegment, ChebyshevSegment, CompactSetSample, build_row, error_curve, rate_estimate, rho

mu = ArcsineSegment(-1, 1)
K = CompactSetSample.segment(-1, 1, 401)
row = build_row("1/(z-2)", ChebyshevSegment(-1, 1), 0, range(1, 31))
curve = error_curve("1/(z-2)", row, K, 0.01)
est = rate_estimate(curve, (5, 20)).with_radius(rho(mu, K))
print(f"rate {est.rate:.6f} vs {1 / (2 + np.sqrt(3)):.6f}")
print(f"r_hat {est.r_hat:.6f} vs {(2 + np.sqrt(3)) / 2:.6f}")

# %% [markdown]
# Roundoff takes over in the low twenties, which is why the window stops at 20.

# %%
for n, e, _ in curve.entries[18:]:
    print(n, f"{e:.2e}")
