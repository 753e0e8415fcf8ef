# %% [markdown]
# # Telescoping coefficients on a nested table
#
# For a nested (newtonian) table, consecutive approximants differ by
# `A_n w_{n+1} / (Q_n Q_{n+1})`. The decay of `A_n` gives a second,
# independent radius estimate.

# %%
from mpade import AllAtPoint, build_row, newton_An, rstar

f = "1/((z-2)*(z-3))"
table = AllAtPoint(0)
row = build_row(f, table, 0, range(0, 42))
a = [(n, newton_An(f, table, n, 0, pair=(row[n], row[n + 1]))) for n in range(41)]
for n, an in a[:6]:
    print(n, an.real, 2.0 ** (-n - 2) - 3.0 ** (-n - 2))
print("R* =", rstar(a, (15, 40)).r_star)
