# %% [markdown]
# # Betweenness versus diversity
#
# Journals that cite across many fields tend to sit between clusters of a
# citation network. Here we build a one-mode network with two dense
# clusters and a few bridging nodes, then correlate betweenness with the
# diversity indicators of the same nodes.

# %%
import math

import numpy as np

from interdiv import (
    Graph,
    Link,
    PajekNetwork,
    betweenness,
    build_disparity,
    column_profile,
    correlation_report,
    descriptives,
    indicator_row,
    largest_component,
    normalize_betweenness,
    to_two_mode,
)
from interdiv.stats import top_k

rng = np.random.default_rng(2)

# %%
size = 15
labels = [f"j{i:02d}" for i in range(2 * size + 3)]
links = []
for block in (range(size), range(size, 2 * size)):
    for u in block:
        for v in block:
            if u != v and rng.random() < 0.3:
                links.append(Link(u + 1, v + 1, float(rng.integers(1, 5))))
for bridge in range(2 * size, 2 * size + 3):
    for v in rng.choice(2 * size, size=6, replace=False):
        links.append(Link(bridge + 1, int(v) + 1, 1.0))
        links.append(Link(int(v) + 1, bridge + 1, 1.0))
net = PajekNetwork(labels, links)

# %%
g = largest_component(Graph.from_network(net))
print(descriptives(g))

# %%
bc = normalize_betweenness(betweenness(g), g.n)
for label, value in sorted(zip(g.labels, bc), key=lambda t: -t[1])[:5]:
    print(label, round(1000 * value, 2))

# %% [markdown]
# Diversity along the columns of the same matrix, i.e. over the journals
# each node is cited by.

# %%
m = to_two_mode(net)
d = build_disparity(m)
table = []
for j in range(m.shape[1]):
    r = indicator_row(column_profile(m, j), d, m.shape[0])
    table.append({"unit": r.unit_label, "rs": r.rs, "div": r.div, "shannon": r.shannon})
bc_by_label = dict(zip(g.labels, bc))
for row in table:
    row["bc"] = bc_by_label.get(row["unit"], math.nan)

# %%
report = correlation_report({k: [row[k] for row in table] for k in ("bc", "rs", "div", "shannon")})
print("pearson\n", np.round(report.r, 3))
print("spearman\n", np.round(report.rho, 3))

# %%
for field in ("bc", "div"):
    print(field, [row["unit"] for row in top_k(table, field, 5)])
