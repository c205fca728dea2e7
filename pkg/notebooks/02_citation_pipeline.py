# %% [markdown]
# # From a Pajek file to an indicator table
#
# A synthetic citation matrix: rows are cited classes, columns the citing
# units. We write it as a two-mode `.net` file, run the pipeline, and read
# the CSV back.

# %%
import tempfile
from pathlib import Path

import numpy as np

from interdiv import RunConfig, TwoModeMatrix, network_from_matrix, run, save_net
from interdiv.pipeline import format_indicator_csv

rng = np.random.default_rng(1)
workdir = Path(tempfile.mkdtemp())

# %%
n_classes, n_units = 30, 12
data = rng.poisson(2.0, size=(n_classes, n_units)) * (rng.random((n_classes, n_units)) < 0.25)
m = TwoModeMatrix([f"class{i:02d}" for i in range(n_classes)], [f"unit{j:02d}" for j in range(n_units)], data)
path = workdir / "citations.net"
save_net(network_from_matrix(m), path)
print(path.read_text()[:200])

# %% [markdown]
# Cosine distances among the classes are derived from the matrix itself.
# Every column yields one row, empty columns included.

# %%
rows, log = run(RunConfig(path))
print(format_indicator_csv(rows))
print({k: v for k, v in log.items() if k != "timings"})

# %% [markdown]
# ## Options
#
# `direction="cited"` reads the rows instead of the columns. The number
# of available classes can follow the matrix (`"rows"`), the busiest
# column (`"max-observed"`), or a fixed count.

# %%
flipped, _ = run(RunConfig(path, direction="cited"))
print(len(flipped), "rows when reading the other way")

for policy in ("rows", "max-observed", 100):
    r, _ = run(RunConfig(path, n_policy=policy))
    print(policy, [round(x.variety_rel, 3) for x in r[:4]])

# %%
jac, _ = run(RunConfig(path, measure="jaccard"))
for a, b in zip(rows[:5], jac[:5]):
    print(a.unit_label, round(a.rs, 4), round(b.rs, 4))

# %% [markdown]
# Output files are never silently replaced.

# %%
out = workdir / "div.csv"
run(RunConfig(path, out=out))
try:
    run(RunConfig(path, out=out))
except Exception as exc:
    print(type(exc).__name__, exc)
