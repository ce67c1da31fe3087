"""Small shared instances for the test modules."""

import random

from qgrkz.rootsys import build
from qgrkz.slice import SliceProblem, weight_multiplicity


def problem(name, lambdas, mu):
    d = build(name)
    return SliceProblem(d, [d.fundamental_coweight(k - 1) for k in lambdas], mu)


A1_WW0 = ("A1", [1, 1], (0,))
A1_W4_0 = ("A1", [1, 1, 1, 1], (0,))
A1_W4_2W = ("A1", [1, 1, 1, 1], (2,))
A2_W1W2_0 = ("A2", [1, 2], (0, 0))
A2_W1X3_0 = ("A2", [1, 1, 1], (0, 0))
A2_W1W1W2_W1 = ("A2", [1, 1, 2], (1, 0))
A3_W2X3_W2 = ("A3", [2, 2, 2], (0, 1, 0))
D4_W1W1_0 = ("D4", [1, 1], (0, 0, 0, 0))
C2_W2W2_0 = ("C2", [2, 2], (0, 0))

SMALL = [A1_WW0, A1_W4_0, A1_W4_2W, A2_W1W2_0, A2_W1X3_0, A2_W1W1W2_W1, D4_W1W1_0, C2_W2W2_0]


def random_instances(count, seed=2024, max_points=120):
    """Random valid problems over A1-A3, D4, C2 with at most five coweights."""
    rng = random.Random(seed)
    out = []
    types = ["A1", "A2", "A3", "D4", "C2"]
    while len(out) < count:
        name = types[len(out) % len(types)]
        d = build(name)
        l = rng.randint(1, 5)
        lams = [rng.choice(d.minuscule_indices()) + 1 for _ in range(l)]
        coweights = [d.fundamental_coweight(k - 1) for k in lams]
        # dominant weights occurring in the tensor product
        acc = {tuple(0 for _ in range(d.rank))}
        for lam in coweights:
            acc = {tuple(a + b for a, b in zip(w, v)) for w in acc for v in d.weyl_orbit(lam)}
        dominant = sorted(w for w in acc if d.is_dominant(w))
        mu = rng.choice(dominant)
        if weight_multiplicity(d, coweights, mu) > max_points:
            continue
        out.append((name, lams, mu))
    return out
