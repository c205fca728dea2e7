# %% [markdown]
# # Diversity of a single distribution
#
# A unit (a journal, say) spreads its citations over classes. We look at
# the indicators for one such column and at how they react when the
# distribution or the distances between classes change.

# %%
import numpy as np

from interdiv import ColumnProfile, RSParams, indicator_row, gini, rao_stirling, div_indicator

rng = np.random.default_rng(0)

# %% [markdown]
# Five classes with random distances in [0, 1]. Only the upper triangle
# is drawn so the matrix is symmetric with a zero diagonal.

# %%
n = 5
d = np.triu(rng.random((n, n)), 1)
d = d + d.T
print(np.round(d, 3))

# %%
column = ColumnProfile.from_dense([10, 5, 5, 0, 1], unit_label="journal A")
row = indicator_row(column, d, n_available=n)
for name, value in zip(row.field_names(), row.astuple()):
    print(f"{name:>20}  {value}")

# %% [markdown]
# ## Balance
#
# Flatten the distribution step by step. The Gini coefficient drops to
# zero; DIV rises because its balance factor is `1 - gini`.

# %%
for t in (4.0, 2.0, 1.0, 0.5, 0.0):
    values = np.array([1, 1, 1, 0, 1]) + t * np.array([3, 1, 0, 0, 0.5])
    prof = ColumnProfile.from_dense(values)
    print(f"t={t:<4} gini={gini(prof.values):.4f}  div={div_indicator(prof, d, n):.4f}  rs={rao_stirling(prof, d):.4f}")

# %% [markdown]
# Rao-Stirling need not follow. Below, evening out the weights lowers the
# Gini, yet RS also falls because mass moves off the one distant pair.

# %%
d3 = np.array([[0, 0.1, 0.1], [0.1, 0, 1.0], [0.1, 1.0, 0]])
for weights in ([1, 3, 3], [4, 2, 2]):
    prof = ColumnProfile.from_dense(weights)
    print(weights, f"gini={gini(prof.values):.4f}", f"rs={rao_stirling(prof, d3):.4f}")

# %% [markdown]
# ## Exponents
#
# `alpha` weights the distances and `beta` the proportions. With
# `alpha = 0` every pair counts as fully distant; with `beta = 0` the
# proportions drop out and RS counts ordered pairs.

# %%
for alpha, beta in [(1, 1), (0, 1), (2, 1), (1, 0.5), (1, 0)]:
    print(alpha, beta, round(rao_stirling(column, d, RSParams(alpha, beta)), 4))

# %% [markdown]
# ## Ranges
#
# Over many random columns DIV sits below RS and spreads further, since it
# multiplies three factors that are each at most 1.

# %%
n = 50
d = np.triu(rng.random((n, n)), 1)
d = d + d.T
rs, div = [], []
for _ in range(2000):
    col = rng.exponential(size=n) * (rng.random(n) < rng.uniform(0.05, 1))
    r = indicator_row(ColumnProfile.from_dense(col), d, n)
    rs.append(r.rs)
    div.append(r.div)
print("median rs ", np.median(rs), " iqr", np.subtract(*np.percentile(rs, [75, 25])))
print("median div", np.median(div), " iqr", np.subtract(*np.percentile(div, [75, 25])))
