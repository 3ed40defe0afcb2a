"""Two small companions: distances read off a graph, and stable perturbations.

Run: python3 demos/04_graphs_and_perturbation.py
"""

import random

from moddist import example_regular_plus_two, graph_two_distance_parameter, perturb, place, verify_tight_one_distance

pentagon = [[int((i - j) % 5 in (1, 4)) for j in range(5)] for i in range(5)]
star = [[int((i == 0) != (j == 0)) for j in range(4)] for i in range(4)]
for name, adj in [("pentagon", pentagon), ("star K_{1,3}", star)]:
    res = graph_two_distance_parameter(adj)
    print(f"{name:>13}: status {res.status}, smallest eigenvalue {res.eigenvalue}, a = {res.a}")

X = example_regular_plus_two(3)
P = place(X.field, 5)
rng = random.Random(0)
seeds = [[rng.randint(-4, 4) for _ in range(X.coord_count)] for _ in range(X.n)]
Y = perturb(X, P, seeds)
print("perturbed point 0:", [str(c) for c in Y.points[0]])
print("still tight mod 5:", verify_tight_one_distance(Y, P).is_tight)
