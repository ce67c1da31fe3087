"""
Operators on the equivariant cohomology of a slice, written in the stable basis.

Rows and columns of every matrix are indexed by ``problem.fixed_points``.
Slot indices ``i, j`` are 1-based.  Equivariant coefficients live in the
polynomial ring in ``a_1, ..., a_r, hbar``; quantum matrices are truncated
series in ``u_k = q^(e_k - e_{k+1})``.
"""

from fractions import Fraction

from .exactalg import EqPolynomial, EqRationalFunction, TruncatedSeries, pair_monomial, series_geom
from .matrix import OperatorMatrix, simplify
from .rootsys import pair, vec_add, vec_sub, vec_scale
from .slice import a_multiplicities_from_crossings

# The diagonal of the split operators is minus the sum of Euler ratios.
OMEGA_TILDE_DIAG_SIGN = -1
# The gauge-transformed connection subtracts the logarithmic derivative of psi.
GAUGE_SIGN = 1

DEFAULT_ETAS = (
    lambda r: tuple(Fraction(1, 3) + Fraction(k, 5) + Fraction(1, 7 * (k + 2) ** 2) for k in range(r)),
)


class FormProduct:
    """
    ``scalar * prod(root ** exponent)`` with roots normalized to be positive.

    Negative roots are folded into the scalar, so two products built from the
    same roots up to sign have a ratio that reduces to a constant.
    """

    __slots__ = ("scalar", "factors")

    def __init__(self, scalar=1, factors=None):
        self.scalar = Fraction(scalar)
        self.factors = {}
        for root, e in (factors or {}).items():
            self._include(tuple(root), e)

    def _include(self, root, e):
        if not e:
            return
        if next(x for x in root if x) < 0:
            root = tuple(-x for x in root)
            if e % 2:
                self.scalar = -self.scalar
        k = self.factors.get(root, 0) + e
        if k:
            self.factors[root] = k
        else:
            self.factors.pop(root, None)

    def __mul__(self, other):
        out = FormProduct(self.scalar * other.scalar, self.factors)
        for root, e in other.factors.items():
            out._include(root, e)
        return out

    def inverse(self):
        return FormProduct(1 / self.scalar, {r: -e for r, e in self.factors.items()})

    def __truediv__(self, other):
        return self * other.inverse()

    def is_constant(self):
        return not self.factors

    def __eq__(self, other):
        return isinstance(other, FormProduct) and self.scalar == other.scalar and self.factors == other.factors

    def to_rational(self, nvars):
        return sum_form_products([(1, self)], nvars)

    def __repr__(self):
        parts = [f"{r}^{e}" for r, e in sorted(self.factors.items())]
        return f"FormProduct({self.scalar}; {' '.join(parts)})"


def _linear(root, nvars):
    return EqPolynomial.linear(tuple(root) + (0,) * (nvars - len(root)))


def sum_form_products(terms, nvars):
    """``sum c * F`` over ``(c, F)`` pairs, brought to one common denominator.

    The coefficients ``c`` may come from any coefficient ring.
    """
    den_exp = {}
    for _, f in terms:
        for root, e in f.factors.items():
            if e < 0:
                den_exp[root] = max(den_exp.get(root, 0), -e)
    num = EqPolynomial.constant(nvars, 0)
    for c, f in terms:
        part = EqPolynomial.constant(nvars, f.scalar)
        for root in set(f.factors) | set(den_exp):
            e = f.factors.get(root, 0) + den_exp.get(root, 0)
            if e:
                part = part * _linear(root, nvars) ** e
        num = num + c * part
    den = EqPolynomial.constant(nvars, 1)
    for root, e in sorted(den_exp.items()):
        den = den * _linear(root, nvars) ** e
    if isinstance(num, EqRationalFunction):
        return simplify(num * EqRationalFunction(EqPolynomial.constant(nvars, 1), den))
    return simplify(EqRationalFunction(num, den))


def _mult_by_positive_root(problem, p):
    """Multiplicity of each standard-positive root (and of its negative) at ``p``."""
    mult = a_multiplicities_from_crossings(problem, p)
    return {r.root: mult[r.root] for r in problem.datum.positive_roots}


def euler_neg(problem, p, chamber):
    """Euler class of the ``chamber``-repelling part of the tangent space at ``p``."""
    out = FormProduct()
    for root, m in _mult_by_positive_root(problem, p).items():
        if m:
            w = root if pair(chamber.xi, root) < 0 else tuple(-x for x in root)
            out._include(w, m)
    return out


def _adjacent_picker(problem, chamber, alpha, side=1, eta=None):
    """
    Sign function of a chamber adjacent to the wall of ``alpha``.

    The chamber vector is pushed onto the wall and then perturbed: first along
    a generic ``eta`` projected to the wall, finally off the wall to ``side``.
    """
    d = problem.datum
    r = d.root_by_vector(alpha)
    if eta is None:
        eta = DEFAULT_ETAS[0](d.rank)

    def project(v):
        return vec_sub(v, vec_scale(pair(v, r.root) / 2, r.coroot))

    xi_w = project(chamber.xi)
    eta_w = project(tuple(Fraction(x) for x in eta))

    def positive(beta):
        for key in (pair(xi_w, beta), pair(eta_w, beta), side * pair(r.coroot, beta)):
            if key:
                return key > 0
        raise ValueError(f"perturbation is not generic for root {beta}")

    return positive


def _flip_count(problem, p, chamber, positive_adj):
    total = 0
    for root, m in _mult_by_positive_root(problem, p).items():
        if m and (pair(chamber.xi, root) > 0) != positive_adj(root):
            total += m
    return total


def exchange(problem, p, i, j, r):
    """The point with ``delta_i += gamma``, ``delta_j -= gamma`` if it exists."""
    di, dj = p.delta[i - 1], p.delta[j - 1]
    if pair(di, r.root) != -1 or pair(dj, r.root) != 1:
        return None
    delta = list(p.delta)
    delta[i - 1] = vec_add(di, r.coroot)
    delta[j - 1] = vec_sub(dj, r.coroot)
    return type(p)(tuple(delta))


def are_related(problem, p, q, root):
    d = problem.datum
    r = d.root_by_vector(root)
    for rr in (r, d.negative_of(r)):
        for i in range(1, problem.l + 1):
            for j in range(1, problem.l + 1):
                if i != j and exchange(problem, p, i, j, rr) == q:
                    return True
    return False


def sigma_sign(problem, p, q, root, chamber, side=1, eta=None):
    """Sign relating the stable-basis normalizations at ``p`` and ``q`` across the wall of ``root``."""
    root = tuple(root)
    if not are_related(problem, p, q, root):
        raise ValueError(f"points are not related by the root {root}")
    positive_adj = _adjacent_picker(problem, chamber, root, side, eta)
    flips = _flip_count(problem, p, chamber, positive_adj) + _flip_count(problem, q, chamber, positive_adj)
    return -1 if flips % 2 else 1


def euler_ratio(problem, p, q, root, chamber, side=1, eta=None):
    """``e(N_p) / e(N_q)`` for the repelling directions of a chamber adjacent to the wall of ``root``."""
    positive_adj = _adjacent_picker(problem, chamber, tuple(root), side, eta)
    out = FormProduct()
    for x, sgn in ((p, 1), (q, -1)):
        for beta, m in _mult_by_positive_root(problem, x).items():
            if m:
                w = tuple(-c for c in beta) if positive_adj(beta) else beta
                out._include(w, sgn * m)
    return out


# --- Casimir-type operators -------------------------------------------------

def _check_pair(problem, i, j):
    if not (1 <= i <= problem.l and 1 <= j <= problem.l) or i == j:
        raise IndexError(f"need distinct slot indices in 1..{problem.l}, got {i}, {j}")


def omega_root(problem, i, j, gamma, polarization):
    """Signs use the canonical polarization of the chamber ``polarization``."""
    _check_pair(problem, i, j)
    r = problem.datum.root_by_vector(tuple(gamma))
    idx = problem.index
    entries = {}
    for p in problem.fixed_points:
        q = exchange(problem, p, i, j, r)
        if q is not None:
            entries[(idx[q], idx[p])] = sigma_sign(problem, p, q, r.root, polarization) * r.half_norm
    return OperatorMatrix(len(idx), entries)


def omega_zero(problem, i, j):
    form = problem.datum.form
    return OperatorMatrix.diagonal([form(p.delta[i - 1], p.delta[j - 1]) for p in problem.fixed_points])


def k_term(problem, i, j):
    return OperatorMatrix.scalar(len(problem.fixed_points), problem.datum.form(problem.lambdas[i - 1], problem.lambdas[j - 1]))


def linear_form(datum, nu, hbar_coeff=0):
    """The polynomial ``(nu, .) + hbar_coeff * hbar``."""
    return EqPolynomial.linear(datum.form_functional(nu) + (Fraction(hbar_coeff),))


def hbar(datum):
    return EqPolynomial.variable(datum.nvars, datum.rank)


def h_term(problem, i):
    d = problem.datum
    return OperatorMatrix.diagonal(
        [linear_form(d, p.delta[i - 1], d.form(p.delta[i - 1], problem.mu) / 2) for p in problem.fixed_points]
    )


def omega_chamber(problem, i, j, chamber, polarization=None):
    out = omega_zero(problem, i, j).scale(Fraction(1, 2))
    for r in chamber.positive_roots():
        out = out + omega_root(problem, i, j, r.root, polarization or chamber)
    return out


def omega_full(problem, i, j, chamber, polarization=None):
    pol = polarization or chamber
    return omega_chamber(problem, i, j, chamber, pol) + omega_chamber(problem, i, j, chamber.opposite(), pol)


def omega_tilde(problem, i, j, kind, chamber):
    if not 1 <= i < j <= problem.l:
        raise IndexError(f"need 1 <= i < j <= {problem.l}")
    if kind not in ("short", "long"):
        raise ValueError(f"unknown root length {kind!r}")
    want_long = kind == "long"
    d = problem.datum
    idx = problem.index
    nvars = d.nvars
    entries = {}
    for p in problem.fixed_points:
        ratios = []
        for r in d.roots:
            if r.is_long != want_long:
                continue
            q = exchange(problem, p, i, j, r)
            if q is None:
                continue
            entries[(idx[q], idx[p])] = sigma_sign(problem, p, q, r.root, chamber) * r.half_norm
            ratios.append((OMEGA_TILDE_DIAG_SIGN * r.half_norm, euler_ratio(problem, p, q, r.root, chamber)))
        entries[(idx[p], idx[p])] = sum_form_products(ratios, nvars)
    return OperatorMatrix(len(idx), entries)


def lemma_residual(problem, i, j, chamber):
    """``Omega_0 - diag(short) - diag(long) - (lambda_i, lambda_j)``; zero when the identity holds."""
    def diag_part(m):
        return OperatorMatrix(m.size, {k: v for k, v in m.entries.items() if k[0] == k[1]})

    st = diag_part(omega_tilde(problem, i, j, "short", chamber))
    lg = diag_part(omega_tilde(problem, i, j, "long", chamber))
    res = omega_zero(problem, i, j) - st - lg - k_term(problem, i, j)
    return res.map(simplify)


def unit_vector(problem, chamber):
    """The vector ``1 / e(N_p)`` of inverse canonical polarizations, as products."""
    return [euler_neg(problem, p, chamber).inverse() for p in problem.fixed_points]


def unit_residual(problem, matrix, chamber):
    """``matrix`` applied to the inverse polarizations; all zero for an annihilating operator."""
    vec = unit_vector(problem, chamber)
    rows = {}
    for (r, c), v in matrix.entries.items():
        rows.setdefault(r, []).append((v, vec[c]))
    nvars = problem.datum.nvars
    return [sum_form_products(rows.get(r, []), nvars) for r in range(matrix.size)]


# --- multiplication operators ----------------------------------------------

def classical_matrix(problem, i, chamber):
    d = problem.datum
    h = hbar(d)
    opp = chamber.opposite()
    out = h_term(problem, i)
    for j in range(1, problem.l + 1):
        if j < i:
            out = out + omega_chamber(problem, j, i, opp, chamber).scale(h)
        elif j > i:
            out = out - omega_chamber(problem, i, j, opp, chamber).scale(h)
    return out


def _series_nvars(problem):
    return problem.l - 1


def _geom(problem, a, b, order, mult=1):
    """``x / (1 - x)`` for ``x = q^(mult (e_a - e_b))``, ``a < b``."""
    x = tuple(mult * k for k in pair_monomial(a, b, _series_nvars(problem)))
    return series_geom(x, order)


def _const(problem, order, c=1):
    return TruncatedSeries.constant(_series_nvars(problem), order, c)


def _series_times(series, matrix, coeff):
    """Entrywise ``series * coeff * matrix``."""
    return OperatorMatrix(matrix.size, {k: series * (coeff * v) for k, v in matrix.entries.items()})


def as_series_matrix(problem, matrix, order):
    return OperatorMatrix(matrix.size, {k: _const(problem, order, v) for k, v in matrix.entries.items()})


def purely_quantum_matrix(problem, i, chamber, order):
    size = len(problem.fixed_points)
    out = OperatorMatrix.zero(size)
    if order < 1:
        return out
    h = hbar(problem.datum)
    for j in range(1, problem.l + 1):
        if j == i:
            continue
        a, b, sgn = (i, j, -1) if j > i else (j, i, 1)
        for kind, mult in (("short", 1), ("long", 2)):
            tilde = omega_tilde(problem, a, b, kind, chamber)
            if tilde.is_zero():
                continue
            g = _geom(problem, a, b, order, mult)
            if g.is_zero():
                continue
            out = out + _series_times(g, tilde, sgn * h)
    return out


def _closed_form_matrix(problem, i, chamber, order):
    d = problem.datum
    if not d.simply_laced:
        raise ValueError("KZ closed form requires simply-laced")
    h = hbar(d)
    opp = chamber.opposite()
    out = as_series_matrix(problem, h_term(problem, i), order)
    one = _const(problem, order)
    for j in range(1, problem.l + 1):
        if j == i:
            continue
        om_c = omega_chamber(problem, i, j, chamber)
        om_o = omega_chamber(problem, i, j, opp, chamber)
        k = k_term(problem, i, j)
        if j > i:
            g = _geom(problem, i, j, order)
            coeff_i, coeff_j = -g, -(one + g)      # q^{e_i}/(q^{e_i}-q^{e_j}), q^{e_j}/(...)
            k_coeff = coeff_i
        else:
            g = _geom(problem, j, i, order)
            coeff_i, coeff_j = one + g, g
            k_coeff = coeff_j
        out = out + _series_times(coeff_i, om_c, h) + _series_times(coeff_j, om_o, h)
        out = out - _series_times(k_coeff, k, h)
    return out


def quantum_matrix(problem, i, chamber, order, path="sum"):
    if path == "sum":
        classical = as_series_matrix(problem, classical_matrix(problem, i, chamber), order)
        return classical + purely_quantum_matrix(problem, i, chamber, order)
    if path == "closed":
        return _closed_form_matrix(problem, i, chamber, order)
    raise ValueError(f"unknown construction path {path!r}")


def gauge_term(problem, i, order):
    """Scalar series ``q d/dq^{e_i}`` of the gauge potential."""
    h = hbar(problem.datum)
    form = problem.datum.form
    out = _const(problem, order, 0)
    for j in range(1, problem.l + 1):
        if j == i:
            continue
        k = form(problem.lambdas[i - 1], problem.lambdas[j - 1])
        if not k:
            continue
        if j > i:
            out = out + _geom(problem, i, j, order) * (k * h)
        else:
            out = out - _geom(problem, j, i, order) * (k * h)
    return out * GAUGE_SIGN


def connection(problem, i, chamber, order, hatted=False, path="sum"):
    """Matrix ``A_i`` of the connection ``q d/dq^{e_i} - A_i``."""
    a = quantum_matrix(problem, i, chamber, order, path)
    if hatted:
        a = a - OperatorMatrix.scalar(a.size, gauge_term(problem, i, order))
    return a.map(simplify)
