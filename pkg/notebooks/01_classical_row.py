# %% [markdown]
# # A classical Pade row and its continuation radius
#
# All interpolation nodes sit at the origin, so the approximants are the
# classical ones. With one free pole, the row for `1/((z-2)(z-3))` absorbs
# the pole at 2. The sup-norm error on the unit circle then decays like `(1/3)**n`.

# %%
import numpy as np

from mpade import AllAtPoint, CompactSetSample, Dirac, build_row, error_curve, rate_estimate, rho

f = "1/((z-2)*(z-3))"
row = build_row(f, AllAtPoint(0), 1, range(1, 41))
K = CompactSetSample.circle(0, 1, 512)
curve = error_curve(f, row, K, epsilon=0.01, true_poles=[2.0])
for n, e, _ in curve.entries[::5]:
    print(f"n={n:2d}  error={e:.3e}")

# %% [markdown]
# Fit the rate over the tail and turn it into a radius.

# %%
est = rate_estimate(curve, (15, 40)).with_radius(rho(Dirac(0), K))
print(f"rate {est.rate:.5f}, r_hat {est.r_hat:.5f}")

# %% [markdown]
# The free pole settles onto 2:

# %%
print(np.abs(row[-1].poles - 2))
