# %% [markdown]
# # Tracking denominator zeros
#
# With `m = 2`, the row reproduces `1/((z-2)(z-3))` exactly, so both poles
# are found to machine precision. The tracker links roots across `n` and
# flags clusters that have stopped moving.

# %%
from mpade import AllAtPoint, build_row, pole_tracks

row = build_row("1/((z-2)*(z-3))", AllAtPoint(0), 2, range(2, 31))
for c in pole_tracks(row):
    print(f"center {c.center:.12f}  spread {c.spread:.1e}  converged {c.converged}")

# %% [markdown]
# A function with one pole inside the reachable region and a spare free
# pole: the spare root wanders and is not reported as converged. From
# `n = 20` the entire part of the Taylor tail is below roundoff relative to
# the pole part, the linear system loses a rank, and the spare factor is
# cancelled. Each such `n` emits a `RankDeficiencyWarning`, silenced here.

# %%
import warnings

from mpade import RankDeficiencyWarning

with warnings.catch_warnings():
    warnings.simplefilter("ignore", RankDeficiencyWarning)
    row = build_row("exp(z)/(z-2)", AllAtPoint(0), 2, range(2, 31))
for c in pole_tracks(row):
    print(f"center {c.center:.6f}  spread {c.spread:.1e}  converged {c.converged}")
