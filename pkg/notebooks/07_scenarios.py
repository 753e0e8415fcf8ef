# %% [markdown]
# # Running bundled scenarios
#
# Scenarios bundle a function, table, measure and analysis window. The CLI
# runs the same pipeline: `mpade run classical-two-poles --out out/`.

# %%
from mpade.scenario import list_presets, load_scenario, run_pipeline

for name, desc in list_presets():
    res = run_pipeline(load_scenario(name))
    print(f"{name:26s} r_hat={res.rates['r_hat']}")
