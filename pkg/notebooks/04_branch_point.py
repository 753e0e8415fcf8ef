# %% [markdown]
# # A branch point caps the radius
#
# `log(1-z)` has a branch point at 1. No rational approximant can move past
# it, so the estimated radius stays near 1 whatever `m` is.

# %%
from mpade import AllAtPoint, CompactSetSample, Dirac, build_row, error_curve, rate_estimate, rho

K = CompactSetSample.circle(0, 0.5, 512)
for m in (0, 1, 2):
    row = build_row("log(1-z)", AllAtPoint(0), m, range(max(m, 1), 41))
    est = rate_estimate(error_curve("log(1-z)", row, K, 0.01), (15, 40)).with_radius(rho(Dirac(0), K))
    print(f"m={m}: rate {est.rate:.4f}, r_hat {est.r_hat:.4f}")
