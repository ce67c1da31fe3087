"""
Torus-fixed points of resolved slices and the combinatorics attached to them.

A fixed point is a path: a sequence ``delta = (delta_1, ..., delta_l)`` with
``delta_i`` in the Weyl orbit of ``lambda_i`` and total sum ``mu``.  Everything
else here (tangent weights, line-bundle weights, invariant curves, attractor
indices, wall loci) is read off from the partial sums of that sequence.

Affine roots ``root + n*hbar`` are represented as pairs ``(root, n)`` with
``root`` a tuple in simple-root coordinates.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .rootsys import pair, vec_add, vec_sub


# Crossings of level n + 1/2 are counted in the direction of the half-space
# containing 0.  Set to -1 to count the opposite direction (mutation tests).
CROSSING_DIRECTION = 1


@dataclass(frozen=True)
class FixedPoint:
    delta: tuple

    @cached_property
    def sigma(self):
        out = [tuple(0 for _ in self.delta[0])] if self.delta else [()]
        for d in self.delta:
            out.append(vec_add(out[-1], d))
        return tuple(out)

    def __len__(self):
        return len(self.delta)

    def to_json(self):
        return {"delta": [list(d) for d in self.delta], "sigma": [list(s) for s in self.sigma]}


class SliceProblem:
    """A sequence of minuscule coweights ``lambdas`` and a dominant ``mu``."""

    def __init__(self, datum, lambdas, mu):
        self.datum = datum
        self.lambdas = tuple(tuple(lam) for lam in lambdas)
        self.mu = tuple(mu)
        self._validate()

    def _validate(self):
        d = self.datum
        if not self.lambdas:
            raise ValueError("need at least one coweight in the sequence")
        for lam in self.lambdas + (self.mu,):
            if len(lam) != d.rank:
                raise ValueError(f"coweight {lam} has wrong length for {d.name}")
        for lam in self.lambdas:
            if not d.is_dominant(lam) or not d.is_minuscule(lam):
                raise ValueError(f"coweight {lam} is not dominant minuscule in {d.name}")
        if not d.is_dominant(self.mu):
            raise ValueError(f"mu = {self.mu} is not dominant")
        if not d.in_coroot_cone(vec_sub(self.total_lambda, self.mu)):
            raise ValueError(f"mu = {self.mu} is not below lambda = {self.total_lambda}")

    @property
    def l(self):
        return len(self.lambdas)

    @cached_property
    def total_lambda(self):
        tot = tuple(0 for _ in range(self.datum.rank))
        for lam in self.lambdas:
            tot = vec_add(tot, lam)
        return tot

    @cached_property
    def dimension(self):
        rho = self.datum.rho
        return int(2 * pair(vec_sub(self.total_lambda, self.mu), rho))

    @cached_property
    def orbits(self):
        return [self.datum.weyl_orbit(lam) for lam in self.lambdas]

    @cached_property
    def fixed_points(self):
        return enumerate_fixed_points(self)

    @cached_property
    def index(self):
        return {p: k for k, p in enumerate(self.fixed_points)}

    def describe(self):
        return {
            "datum": self.datum.name,
            "lambdas": [list(lam) for lam in self.lambdas],
            "mu": list(self.mu),
            "dimension": self.dimension,
            "fixed_points": len(self.fixed_points),
        }


def enumerate_fixed_points(problem):
    """All paths, in depth-first order with each orbit sorted decreasingly."""
    orbits = problem.orbits
    l = problem.l
    # reachable[i]: sums of delta_{i+1..l}
    reachable = [None] * (l + 1)
    reachable[l] = {tuple(0 for _ in problem.mu)}
    for i in range(l - 1, -1, -1):
        reachable[i] = {vec_add(d, s) for d in orbits[i] for s in reachable[i + 1]}
    out = []

    def extend(prefix, partial):
        i = len(prefix)
        if i == l:
            out.append(FixedPoint(tuple(prefix)))
            return
        for d in orbits[i]:
            nxt = vec_add(partial, d)
            if vec_sub(problem.mu, nxt) in reachable[i + 1]:
                prefix.append(d)
                extend(prefix, nxt)
                prefix.pop()

    extend([], tuple(0 for _ in problem.mu))
    return out


def weight_multiplicity(datum, lambdas, mu):
    """Multiplicity of ``mu`` in the tensor product, by convolving weight multisets."""
    acc = Counter({tuple(0 for _ in range(datum.rank)): 1})
    for lam in lambdas:
        weights = datum.weyl_orbit(lam)
        nxt = Counter()
        for w, c in acc.items():
            for v in weights:
                nxt[vec_add(w, v)] += c
        acc = nxt
    return acc[tuple(mu)]


def _levels(p, root):
    return [pair(s, root) for s in p.sigma]


def tangent_weights(problem, p):
    """Counter of affine roots ``(root, n)`` in the tangent space at ``p``."""
    out = Counter()
    for r in problem.datum.roots:
        s = _levels(p, r.root)
        for a, b in zip(s, s[1:]):
            if b == a - 1:
                n = b
                counted = n >= 0
            elif b == a + 1:
                n = a
                counted = n < 0
            else:
                continue
            if CROSSING_DIRECTION < 0:
                counted = not counted
            if counted:
                out[(r.root, n)] += 1
    return out


def tangent_multiplicity(problem, p, root, n, strict=False):
    root = tuple(root)
    if root not in problem.datum.root_lookup:
        if strict:
            raise ValueError(f"{root} + {n} hbar is not an affine root")
        return 0
    return tangent_weights(problem, p)[(root, n)]


def a_multiplicities(problem, p):
    """A-weight multiplicities at ``p`` by the pairing count over positive roots."""
    out = {}
    for r in problem.datum.roots:
        probe = r.root if r.positive else tuple(-c for c in r.root)
        out[r.root] = sum(1 for d in p.delta if pair(d, probe) == -1)
    return out


def a_multiplicities_from_crossings(problem, p):
    out = {r.root: 0 for r in problem.datum.roots}
    for (root, _), m in tangent_weights(problem, p).items():
        out[root] += m
    return out


def bundle_weight(problem, p, i, kind="L"):
    """Root coordinates of the A-weight of ``L_i`` (or ``E_i``) at ``p``."""
    l = problem.l
    if kind == "L":
        if not 0 <= i <= l:
            raise IndexError(f"L index {i} out of range 0..{l}")
        return problem.datum.form_functional(p.sigma[i])
    if kind == "E":
        if not 1 <= i <= l:
            raise IndexError(f"E index {i} out of range 1..{l}")
        return problem.datum.form_functional(p.delta[i - 1])
    raise ValueError(f"unknown bundle kind {kind!r}")


# --- invariant curves -------------------------------------------------------

PROJECTIVE = "projective-line"
AFFINE = "affine-line"


@dataclass(frozen=True)
class InvariantCurve:
    i: int
    j: int
    root: tuple
    n: int
    p: FixedPoint
    q: object      # FixedPoint, or None for an affine line
    kind: str

    @property
    def weight(self):
        return (self.root, self.n)

    def to_json(self, problem=None):
        out = {
            "i": self.i,
            "j": self.j,
            "root": list(self.root),
            "n": self.n,
            "kind": self.kind,
            "p": [list(d) for d in self.p.delta],
            "q": None if self.q is None else [list(d) for d in self.q.delta],
        }
        if problem is not None and self.kind == PROJECTIVE:
            out["class"] = list(curve_class(problem, self))
        return out


def _reflect_segment(datum, p, root, n, i, j):
    sigma = list(p.sigma)
    for k in range(i, j + 1):
        sigma[k] = datum.affine_reflect(sigma[k], root, n)
    return FixedPoint(tuple(vec_sub(b, a) for a, b in zip(sigma, sigma[1:])))


def curve_descriptions(problem, p):
    """
    Every curve through ``p``, one per tangent weight.

    The curve with tangent weight ``root + n hbar`` at ``p`` starts at an index
    ``i`` where the levels ``<sigma_k, root>`` step from ``n`` up to ``n + 1``.
    It closes up at the next return to level ``n``; without a return it is an
    affine line when ``n < 0`` and does not exist otherwise.
    """
    out = []
    datum = problem.datum
    l = problem.l
    for r in datum.roots:
        s = _levels(p, r.root)
        for i in range(l):
            n = s[i]
            if s[i + 1] != n + 1:
                continue
            j = next((k for k in range(i + 2, l + 1) if s[k] == n), None)
            if j is not None:
                q = _reflect_segment(datum, p, r.root, n, i, j)
                out.append(InvariantCurve(i, j, r.root, n, p, q, PROJECTIVE))
            elif n < 0:
                out.append(InvariantCurve(i, l, r.root, n, p, None, AFFINE))
    return out


def enumerate_curves(problem):
    """Curves up to the two-sided description of projective lines."""
    seen = set()
    out = []
    for p in problem.fixed_points:
        for c in curve_descriptions(problem, p):
            if c.kind == PROJECTIVE:
                key = frozenset({(c.p, c.root, c.n), (c.q, tuple(-x for x in c.root), -c.n)}) | {(c.i, c.j)}
                if key in seen:
                    continue
                seen.add(key)
            out.append(c)
    return out


def curve_class(problem, c):
    """Coefficients of the curve class in the basis ``e_1, ..., e_l``."""
    if c.kind != PROJECTIVE:
        raise ValueError("non-compact curve has no class")
    r = problem.datum.root_by_vector(c.root)
    scale = r.half_norm
    coeffs = [0] * problem.l
    for k in range(c.i + 1, c.j + 1):
        coeffs[k - 1] = scale * pair(c.p.delta[k - 1], c.root)
    return tuple(int(x) for x in coeffs)


def curve_degree(problem, c, i):
    """Degree of ``L_i`` on a projective curve."""
    if c.kind != PROJECTIVE:
        raise ValueError("non-compact curve has no class")
    r = problem.datum.root_by_vector(c.root)
    diff = vec_sub(c.p.sigma[i], c.q.sigma[i])
    return problem.datum.form(diff, r.coroot) / 2


def is_effective(coeffs):
    """True iff the vector is a nonnegative combination of ``e_i - e_j``, ``i < j``."""
    run = 0
    for x in coeffs:
        run += x
        if run < 0:
            return False
    return run == 0


# --- attractors and Betti numbers -------------------------------------------

def attractor_indices(problem, chamber):
    out = {}
    for p in problem.fixed_points:
        ind = 0
        for (root, n), m in tangent_weights(problem, p).items():
            if n < 0 or (n == 0 and pair(chamber.xi, root) > 0):
                ind += m
        out[p] = ind
    return out


def betti_ranks(problem, chamber):
    """Map ``k -> rank`` of Borel-Moore homology in degree ``2k``."""
    return dict(sorted(Counter(attractor_indices(problem, chamber).values()).items()))


# --- wall fixed loci -------------------------------------------------------

@dataclass
class WallComponent:
    points: list
    m: int
    has_affine_line: bool

    def to_json(self):
        return {
            "points": [[list(d) for d in p.delta] for p in self.points],
            "m": self.m,
            "has_affine_line": self.has_affine_line,
        }


def _matches_wall(root, n, c):
    neg = tuple(-x for x in root)
    return (c.root, c.n) in ((root, n), (neg, -n))


def wall_components(problem, root, n):
    """
    Components of the fixed locus of the kernel of ``root + n hbar``.

    Components are built from the projective curves with that weight (up to
    sign); the affine-line flag is read off from the enumerated curves.  ``m``
    counts tangent weights equal to either sign of the affine root.
    """
    root = tuple(root)
    problem.datum.root_by_vector(root)
    neg = tuple(-x for x in root)
    pts = problem.fixed_points
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    affine = set()
    for c in enumerate_curves(problem):
        if not _matches_wall(root, n, c):
            continue
        if c.kind == PROJECTIVE:
            a, b = find(c.p), find(c.q)
            if a is not b:
                parent[b] = a
        else:
            affine.add(c.p)
    groups = {}
    for p in pts:
        groups.setdefault(find(p), []).append(p)
    out = []
    for members in groups.values():
        ms = {tangent_multiplicity(problem, p, root, n) + tangent_multiplicity(problem, p, neg, -n) for p in members}
        if len(ms) != 1:
            raise AssertionError(f"wall multiplicity not constant on a component: {sorted(ms)}")
        out.append(WallComponent(members, ms.pop(), any(p in affine for p in members)))
    return out


def affine_line_by_formula(problem, root, n):
    """The closed condition ``0 <= n < <mu, root>`` for an affine-line factor."""
    return 0 <= n < pair(problem.mu, tuple(root))
