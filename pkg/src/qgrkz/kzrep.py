"""
Minuscule representations and the trigonometric KZ connection on a weight space.

Each minuscule representation has the basis ``v_nu``, ``nu`` in the Weyl orbit
of the highest weight, normalized so that the simple root vectors (simple for
a chosen chamber) act by 0/1 matrices.  Root vectors for non-simple roots are
built as iterated commutators and the Casimir pieces are normalized through
``[e_gamma, e_-gamma] = h_gamma``.

The weight-``mu`` part of the tensor product has the same basis as the fixed
points of the matching slice, so matrices here share their indexing with the
stable-basis operators.
"""

from fractions import Fraction

from .exactalg import TruncatedSeries, pair_monomial, series_geom
from .matrix import OperatorMatrix, simplify
from .rootsys import pair, vec_add, vec_sub
from .stabops import hbar, linear_form


def _commutator(a, b):
    """Commutator of two sparse matrices given as ``{(row, col): value}``."""
    out = {}
    for (r, k), x in a.items():
        for (k2, c), y in b.items():
            if k == k2:
                out[(r, c)] = out.get((r, c), 0) + x * y
    for (r, k), x in b.items():
        for (k2, c), y in a.items():
            if k == k2:
                out[(r, c)] = out.get((r, c), 0) - x * y
    return {key: v for key, v in out.items() if v}


class MinusculeRep:
    def __init__(self, datum, lam, chamber):
        if not datum.simply_laced:
            raise ValueError("representation oracle requires a simply-laced datum")
        if not datum.is_minuscule(lam):
            raise ValueError(f"{lam} is not minuscule")
        self.datum = datum
        self.lam = tuple(lam)
        self.chamber = chamber
        self.weights = datum.weyl_orbit(self.lam)
        self._weight_set = set(self.weights)
        self.simple = chamber.simple_roots()
        self.e = {}
        self.f = {}
        for r in self.simple:
            self.e[r.root] = self._shift(r, raising=True)
            self.f[r.root] = self._shift(r, raising=False)
        self._check_relations()
        self._root_vectors = {}
        for r in chamber.positive_roots():
            self._build_root_vector(r)

    def _shift(self, r, raising):
        out = {}
        want = -1 if raising else 1
        sign = 1 if raising else -1
        for nu in self.weights:
            if pair(nu, r.root) == want:
                target = vec_add(nu, r.coroot) if sign > 0 else vec_sub(nu, r.coroot)
                out[(target, nu)] = Fraction(1)
        return out

    def h(self, root):
        return {(nu, nu): Fraction(pair(nu, root)) for nu in self.weights if pair(nu, root)}

    def _check_relations(self):
        for a in self.simple:
            for b in self.simple:
                comm = _commutator(self.e[a.root], self.f[b.root])
                want = self.h(a.root) if a is b else {}
                if comm != want:
                    raise AssertionError(f"[e, f] relation fails for {a.root}, {b.root}")
                c = pair(b.coroot, a.root)
                if _commutator(self.h(a.root), self.e[b.root]) != {k: c * v for k, v in self.e[b.root].items() if c}:
                    raise AssertionError(f"[h, e] relation fails for {a.root}, {b.root}")
                if a is not b:
                    x = self.e[b.root]
                    for _ in range(1 - c):
                        x = _commutator(self.e[a.root], x)
                    if x:
                        raise AssertionError(f"Serre relation fails for {a.root}, {b.root}")

    def _build_root_vector(self, r):
        if r.root in self._root_vectors:
            return self._root_vectors[r.root]
        d = self.datum
        simple_roots = {s.root: s for s in self.simple}
        if r.root in simple_roots:
            e, f = self.e[r.root], self.f[r.root]
        else:
            for s in self.simple:
                rest = vec_sub(r.root, s.root)
                if rest in d.root_lookup and self.chamber.is_positive(d.root_lookup[rest]):
                    e0, f0, _ = self._build_root_vector(d.root_lookup[rest])
                    e = _commutator(self.e[s.root], e0)
                    f = _commutator(self.f[s.root], f0)
                    break
            else:
                raise AssertionError(f"no decomposition found for {r.root}")
        comm = _commutator(e, f)
        h = self.h(r.root)
        ratios = {comm.get(k, 0) / v for k, v in h.items()}
        if len(ratios) != 1 or set(comm) - set(h):
            raise AssertionError(f"[e, f] is not proportional to h for {r.root}")
        t = ratios.pop()
        self._root_vectors[r.root] = (e, f, t)
        return self._root_vectors[r.root]

    def casimir_factor(self, root):
        """Pieces ``(X, Y, c)`` with ``Omega_root = c * X (x) Y``."""
        r = self.datum.root_by_vector(tuple(root))
        pos = r if self.chamber.is_positive(r) else self.datum.negative_of(r)
        e, f, t = self._root_vectors[pos.root]
        if pos is r:
            return e, f, 1 / t
        return f, e, 1 / t


def build_reps(problem, chamber):
    cache = {}
    return [cache.setdefault(lam, MinusculeRep(problem.datum, lam, chamber)) for lam in problem.lambdas]


def _require_simply_laced(datum):
    if not datum.simply_laced:
        raise ValueError("KZ side is only defined here for simply-laced data")


def casimir_root(problem, i, j, gamma):
    """The orbit-shift rule: 1 whenever both shifted weights stay in their orbits."""
    _require_simply_laced(problem.datum)
    r = problem.datum.root_by_vector(tuple(gamma))
    idx = problem.index
    orbits = [set(o) for o in problem.orbits]
    entries = {}
    for p in problem.fixed_points:
        a = vec_add(p.delta[i - 1], r.coroot)
        b = vec_sub(p.delta[j - 1], r.coroot)
        if a in orbits[i - 1] and b in orbits[j - 1]:
            delta = list(p.delta)
            delta[i - 1], delta[j - 1] = a, b
            entries[(idx[type(p)(tuple(delta))], idx[p])] = Fraction(1)
    return OperatorMatrix(len(idx), entries)


def casimir_root_oracle(problem, reps, i, j, gamma):
    """``Omega_gamma`` in slots ``(i, j)`` from the explicit root-vector matrices."""
    idx = problem.index
    x, _, c = reps[i - 1].casimir_factor(gamma)
    _, y, _ = reps[j - 1].casimir_factor(gamma)
    xcol = {}
    for (row, col), v in x.items():
        xcol.setdefault(col, []).append((row, v))
    ycol = {}
    for (row, col), v in y.items():
        ycol.setdefault(col, []).append((row, v))
    entries = {}
    for p in problem.fixed_points:
        for a, va in xcol.get(p.delta[i - 1], ()):
            for b, vb in ycol.get(p.delta[j - 1], ()):
                delta = list(p.delta)
                delta[i - 1], delta[j - 1] = a, b
                q = type(p)(tuple(delta))
                if q in idx:
                    entries[(idx[q], idx[p])] = entries.get((idx[q], idx[p]), 0) + c * va * vb
    return OperatorMatrix(len(idx), entries)


def casimir_zero(problem, i, j):
    form = problem.datum.form
    return OperatorMatrix.diagonal([form(p.delta[i - 1], p.delta[j - 1]) for p in problem.fixed_points])


def casimir_chamber(problem, reps, i, j, chamber):
    out = casimir_zero(problem, i, j).scale(Fraction(1, 2))
    for r in chamber.positive_roots():
        out = out + casimir_root_oracle(problem, reps, i, j, r.root)
    return out


def casimir_full(problem, reps, i, j):
    out = casimir_zero(problem, i, j)
    for r in problem.datum.roots:
        out = out + casimir_root_oracle(problem, reps, i, j, r.root)
    return out


def hat_h(problem, i):
    d = problem.datum
    vals = []
    for p in problem.fixed_points:
        nu = p.delta[i - 1]
        vals.append(linear_form(d, nu, d.form(nu, problem.mu) / 2))
    return OperatorMatrix.diagonal(vals)


def casimir_invariance_defect(datum, rep_a, rep_b):
    """
    Check that the full Casimir on ``V_a (x) V_b`` commutes with the diagonal
    action of every simple root vector.  Returns ``None`` or a description of
    the first failure.
    """
    pairs = [(x, y) for x in rep_a.weights for y in rep_b.weights]
    omega = {}
    for x, y in pairs:
        v = datum.form(x, y)
        if v:
            omega[((x, y), (x, y))] = v
    for r in datum.roots:
        xa, _, c = rep_a.casimir_factor(r.root)
        _, yb, _ = rep_b.casimir_factor(r.root)
        for (xr, xc), u in xa.items():
            for (yr, yc), w in yb.items():
                key = ((xr, yr), (xc, yc))
                omega[key] = omega.get(key, 0) + c * u * w
    omega = {k: v for k, v in omega.items() if v}

    def diag_action(ma, mb):
        out = {}
        for (r_, c_), v in ma.items():
            for y in rep_b.weights:
                out[((r_, y), (c_, y))] = out.get(((r_, y), (c_, y)), 0) + v
        for (r_, c_), v in mb.items():
            for x in rep_a.weights:
                out[((x, r_), (x, c_))] = out.get(((x, r_), (x, c_)), 0) + v
        return out

    for s in rep_a.simple:
        for name, ma, mb in (("e", rep_a.e[s.root], rep_b.e[s.root]), ("f", rep_a.f[s.root], rep_b.f[s.root])):
            comm = _commutator(omega, diag_action(ma, mb))
            if comm:
                return f"Casimir fails to commute with {name}_{s.root}"
    return None


def kz_matrix(problem, i, chamber, order, reps=None):
    """Non-derivative part of the KZ operator in slot ``i``, as a series matrix."""
    d = problem.datum
    _require_simply_laced(d)
    if reps is None:
        reps = build_reps(problem, chamber)
    nv = problem.l - 1
    h = hbar(d)
    opp = chamber.opposite()
    const = hat_h(problem, i)
    for j in range(1, problem.l + 1):
        if j < i:
            const = const + casimir_chamber(problem, reps, j, i, opp).scale(h)
        elif j > i:
            const = const - casimir_chamber(problem, reps, i, j, opp).scale(h)
    out = OperatorMatrix(const.size, {k: TruncatedSeries.constant(nv, order, v) for k, v in const.entries.items()})
    if order < 1:
        return out.map(simplify)
    for j in range(1, problem.l + 1):
        if j == i:
            continue
        omega = casimir_chamber(problem, reps, i, j, chamber) + casimir_chamber(problem, reps, i, j, opp)
        if j < i:
            g, sgn = series_geom(pair_monomial(j, i, nv), order), 1
        else:
            g, sgn = series_geom(pair_monomial(i, j, nv), order), -1
        out = out + OperatorMatrix(omega.size, {k: g * (sgn * v * h) for k, v in omega.entries.items()})
    return out.map(simplify)
