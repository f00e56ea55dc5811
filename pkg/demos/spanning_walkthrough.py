"""
Covering a tournament prefix with an embedded graph
===================================================

The spanning engine embeds an infinite graph into an infinite tournament
while sweeping up every tournament vertex below a horizon.  Each step
pins one uncovered vertex into the current frontier cell of some
component machine, then moves that frontier outward.
"""

from tourlab import SeededRandom, presented_from_name, spanning_embed

G = presented_from_name("interleaved-forest")
K = SeededRandom(7)
result = spanning_embed(G, K, horizon=20)

print(f"embedding {G.name} into {K.name}, horizon 20")
print(f"graph vertices embedded: {len(result.phi)}")
print(f"edge violations: {len(result.phi.violations(G))}")

# Coverage: every K-vertex below the horizon must be someone's image.
covered = sum(1 for k in range(20) if result.phi.has_target(k))
print(f"covered targets 0..19: {covered}/20")

# The step log shows the machine rotation and the frontier drift.
print("\n step  K-vertex  machine  frontier  pinned  chunk")
for s in result.steps:
    arrow = f"{s.frontier_before}->{s.frontier_after}"
    print(f"{len(s.chunk):>5} {s.k_vertex:>9} {s.machine:>8} "
          f"{arrow:>9} {s.pin_vertex:>7}  {s.chunk}")

# Where each machine ended up: frontier cell index, its sign, its size.
print("\nfinal frontiers:")
for idx, sign, cell in result.frontier_cells():
    print(f"  cell {idx} ({sign}): {len(cell)} vertices")
