"""
Finite root data of types A-E.

Conventions: a coweight is stored in fundamental-coweight coordinates, so its
k-th entry is its pairing with the k-th simple root.  A root (an A-weight) is
stored in simple-root coordinates.  The pairing between the two is then a plain
dot product.  ``cartan[i][j]`` is the pairing of the i-th simple coroot with the
j-th simple root (Bourbaki numbering).

The invariant form on coweights is normalized so that the shortest coroot has
square length 2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property


SUPPORTED = {"A", "B", "C", "D", "E"}


def cartan_matrix(letter, rank):
    if letter not in SUPPORTED:
        raise ValueError(f"unsupported type {letter}{rank}: no minuscule coweights (F4, G2) or unknown")
    if letter == "A" and rank >= 1:
        pass
    elif letter in "BC" and rank >= 2:
        pass
    elif letter == "D" and rank >= 3:
        pass
    elif letter == "E" and rank in (6, 7):
        pass
    elif letter == "E" and rank == 8:
        raise ValueError("unsupported type E8: no minuscule coweights")
    else:
        raise ValueError(f"unsupported type {letter}{rank}")
    A = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        A[i][i] = 2
    if letter == "E":
        # Bourbaki: 1-3-4-5-6(-7), with 2 attached to 4
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if rank == 7:
            edges.append((6, 7))
        for a, b in edges:
            A[a - 1][b - 1] = A[b - 1][a - 1] = -1
        return A
    for i in range(rank - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if letter == "B":
        A[rank - 1][rank - 2] = -2
    elif letter == "C":
        A[rank - 2][rank - 1] = -2
    elif letter == "D":
        A[rank - 2][rank - 1] = A[rank - 1][rank - 2] = 0
        A[rank - 3][rank - 1] = A[rank - 1][rank - 3] = -1
    return A


def _mat_inverse(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def pair(coweight, root):
    """The pairing of a coweight with a root (or any weight in root coordinates)."""
    return sum(f * c for f, c in zip(coweight, root))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


@dataclass(frozen=True)
class Root:
    """A root together with its coroot."""

    index: int
    root: tuple       # simple-root coordinates
    coroot: tuple     # fundamental-coweight coordinates
    norm: Fraction    # (coroot, coroot)
    positive: bool    # with respect to the dominant chamber

    @property
    def is_long(self):
        return self.norm > 2

    @property
    def half_norm(self):
        return self.norm / 2


@dataclass
class CartanDatum:
    letter: str
    rank: int
    cartan: list
    symmetrizers: list                 # (alpha_i, alpha_i) / 2 for simple coroots
    gram: list                         # invariant form on coweights, fundamental basis
    roots: list = field(default_factory=list)

    @property
    def name(self):
        return f"{self.letter}{self.rank}"

    @property
    def nvars(self):
        """Number of equivariant parameters: a_1..a_r and hbar."""
        return self.rank + 1

    def form(self, u, v):
        G = self.gram
        return sum(u[i] * G[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def form_functional(self, u):
        """Root coordinates of the A-weight ``(u, .)``."""
        G = self.gram
        return tuple(sum(G[k][i] * u[i] for i in range(self.rank)) for k in range(self.rank))

    @cached_property
    def root_lookup(self):
        return {r.root: r for r in self.roots}

    @cached_property
    def coroot_lookup(self):
        return {r.coroot: r for r in self.roots}

    def root_by_vector(self, vec):
        try:
            return self.root_lookup[tuple(vec)]
        except KeyError:
            raise ValueError(f"{vec} is not a root of {self.name}") from None

    def negative_of(self, r):
        return self.root_lookup[tuple(-c for c in r.root)]

    @property
    def positive_roots(self):
        return [r for r in self.roots if r.positive]

    @cached_property
    def rho(self):
        """Half-sum of positive roots, in root coordinates."""
        tot = [Fraction(0)] * self.rank
        for r in self.positive_roots:
            for k, c in enumerate(r.root):
                tot[k] += c
        return tuple(x / 2 for x in tot)

    @property
    def simply_laced(self):
        return all(r.norm == 2 for r in self.roots)

    def simple_coroot(self, i):
        return tuple(self.cartan[i])

    def simple_root(self, i):
        return tuple(int(k == i) for k in range(self.rank))

    def reflect_coweight(self, nu, r):
        """s_alpha applied to a coweight."""
        return vec_sub(nu, vec_scale(pair(nu, r.root), r.coroot))

    def reflect_root(self, beta, r):
        """s_alpha applied to a root-coordinate vector."""
        return vec_sub(beta, vec_scale(pair(r.coroot, beta), r.root))

    def affine_reflect(self, nu, root_vec, n):
        """Reflection of coweights fixing the hyperplane <., root> = n."""
        r = self.root_by_vector(root_vec)
        return vec_add(nu, vec_scale(n - pair(nu, r.root), r.coroot))

    def is_dominant(self, nu):
        return all(x >= 0 for x in nu)

    def dominant_representative(self, nu):
        nu = tuple(nu)
        while True:
            for i in range(self.rank):
                if nu[i] < 0:
                    nu = vec_sub(nu, vec_scale(nu[i], self.simple_coroot(i)))
                    break
            else:
                return nu

    def weyl_orbit(self, lam):
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise ValueError(f"coweight {lam} is not dominant")
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for nu in frontier:
                for i in range(self.rank):
                    if nu[i]:
                        mu = vec_sub(nu, vec_scale(nu[i], self.simple_coroot(i)))
                        if mu not in seen:
                            seen.add(mu)
                            nxt.append(mu)
            frontier = nxt
        return sorted(seen, reverse=True)

    def is_minuscule(self, lam):
        lam = tuple(lam)
        if not any(lam):
            return False
        return all(pair(nu, r.root) in (-1, 0, 1) for nu in self.weyl_orbit(lam) for r in self.roots)

    def minuscule_indices(self):
        return [k for k in range(self.rank) if self.is_minuscule(tuple(int(i == k) for i in range(self.rank)))]

    def fundamental_coweight(self, k):
        return tuple(int(i == k) for i in range(self.rank))

    def in_coroot_cone(self, nu):
        """True iff nu is a nonnegative integer combination of simple coroots."""
        # coordinates in the simple-coroot basis: nu = c A  (rows of A are coroots)
        inv = _mat_inverse(self.cartan)
        coeffs = [sum(nu[i] * inv[i][k] for i in range(self.rank)) for k in range(self.rank)]
        return all(c >= 0 and c.denominator == 1 for c in coeffs)

    def chamber(self, xi):
        return Chamber(self, tuple(Fraction(x) for x in xi))

    def default_chamber(self):
        return self.chamber(tuple(1 + Fraction(1, 7 * (k + 1)) for k in range(self.rank)))


class Chamber:
    """A Weyl chamber encoded by a generic coweight-space vector."""

    def __init__(self, datum, xi):
        self.datum = datum
        self.xi = tuple(Fraction(x) for x in xi)
        if len(self.xi) != datum.rank:
            raise ValueError("chamber vector has wrong length")
        for r in datum.roots:
            if pair(self.xi, r.root) == 0:
                raise ValueError(f"chamber vector {self.xi} lies on the wall of root {r.root}")

    def is_positive(self, r):
        return pair(self.xi, r.root) > 0

    def opposite(self):
        return Chamber(self.datum, tuple(-x for x in self.xi))

    def positive_roots(self):
        return [r for r in self.datum.roots if self.is_positive(r)]

    def simple_roots(self):
        """Indecomposable C-positive roots."""
        pos = self.positive_roots()
        pos_set = {r.root for r in pos}
        simple = []
        for r in pos:
            decomposable = any(vec_sub(r.root, s.root) in pos_set for s in pos if s is not r)
            if not decomposable:
                simple.append(r)
        return simple

    def __eq__(self, other):
        return isinstance(other, Chamber) and self.xi == other.xi

    def __hash__(self):
        return hash(self.xi)

    def __repr__(self):
        return f"Chamber({', '.join(str(x) for x in self.xi)})"


def _generate_roots(A, symmetrizers, gram):
    rank = len(A)
    simple = []
    for i in range(rank):
        simple.append((tuple(int(k == i) for k in range(rank)), tuple(A[i])))
    seen = {}
    frontier = list(simple)
    for root, coroot in simple:
        seen[root] = coroot
    while frontier:
        nxt = []
        for root, coroot in frontier:
            for i in range(rank):
                ai = tuple(A[i])
                c = pair(ai, root)  # <alpha_i, root>
                if c == 0:
                    continue
                new_root = tuple(x - c * (k == i) for k, x in enumerate(root))
                d = coroot[i]       # <coroot, alpha_i^vee... root_i>
                new_coroot = tuple(x - d * y for x, y in zip(coroot, ai))
                if new_root not in seen:
                    seen[new_root] = new_coroot
                    nxt.append((new_root, new_coroot))
        frontier = nxt
    out = []
    for root, coroot in seen.items():
        norm = sum(coroot[i] * gram[i][j] * coroot[j] for i in range(rank) for j in range(rank))
        positive = all(x >= 0 for x in root)
        out.append(Root(0, root, coroot, Fraction(norm), positive))
    # deterministic order: positive roots by height, then negatives
    out.sort(key=lambda r: (not r.positive, sum(abs(x) for x in r.root), tuple(-abs(x) for x in r.root)))
    return [Root(i, r.root, r.coroot, r.norm, r.positive) for i, r in enumerate(out)]


def build(letter, rank=None):
    """
    Build the root datum of type ``letter`` and ``rank``.

    ``letter`` may also be a full name such as ``"A2"``.
    """
    if rank is None:
        letter, rank = letter[0], int(letter[1:])
    letter = letter.upper()
    A = cartan_matrix(letter, rank)
    # symmetrizers d_i with A[i][j] d_j = A[j][i] d_i, smallest equal to 1
    d = [None] * rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(rank):
            if j != i and A[i][j] and d[j] is None:
                d[j] = d[i] * Fraction(A[j][i], A[i][j])
                stack.append(j)
    m = min(d)
    d = [x / m for x in d]
    inv = _mat_inverse(A)
    G = [[sum(inv[i][k] * (d[k] if k == j else 0) for k in range(rank)) for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            if G[i][j] != G[j][i]:
                raise AssertionError("Gram matrix is not symmetric")
    datum = CartanDatum(letter, rank, A, d, G)
    datum.roots = _generate_roots(A, d, G)
    return datum
