"""
Which oriented graphs can an infinite tournament dodge?
=======================================================

A finite acyclic graph embeds into every infinite tournament, so the
classifier calls it unavoidable.  Anything with a directed cycle is
avoidable, with the cycle as witness.  Infinite graphs presented as
generators may leave the question open within a finite budget.
"""

from tourlab import (
    FiniteOrientedGraph,
    classify_unavoidability,
    forward_path,
    presented_from_name,
)

# A directed triangle: the canonical avoidable graph.
triangle = FiniteOrientedGraph(3, [(0, 1), (1, 2), (2, 0)], name="triangle")
print(triangle.name, "->", classify_unavoidability(triangle))

# A small diamond DAG: acyclic, hence unavoidable.
diamond = FiniteOrientedGraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)], name="diamond")
print(diamond.name, "->", classify_unavoidability(diamond))

# The one-way infinite path certifies its own infinite directed path,
# so the verdict needs no exploration at all.
ray = forward_path()
print(ray.name, "->", classify_unavoidability(ray, budget=100))

# The anti-directed path alternates edge directions forever.  Its
# forward closures are tiny, so the budgeted analysis stays conclusive.
zigzag = presented_from_name("anti-path")
print(zigzag.name, "->", classify_unavoidability(zigzag, budget=100))
