"""
Cross-checks between the combinatorial, geometric and representation sides.

Every check returns a :class:`CheckReport`; failures carry a witness locating
the first discrepancy.  Nothing here raises on a failed identity.
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import kzrep, slice as sl, stabops
from .exactalg import TruncatedSeries, coeff_to_json
from .matrix import coeff_equal, simplify

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class CheckReport:
    name: str
    instance: dict
    verdict: str
    witness: dict = field(default=None)

    @property
    def passed(self):
        return self.verdict != FAIL

    def to_json(self):
        out = {"check": self.name, "instance": self.instance, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _jsonable(x):
    if isinstance(x, (int, Fraction)) or hasattr(x, "to_json"):
        return coeff_to_json(x)
    return repr(x)


def describe(problem, chamber=None, order=None):
    out = problem.describe()
    if chamber is not None:
        out["chamber"] = [str(x) for x in chamber.xi]
    if order is not None:
        out["order"] = order
    return out


def _report(name, instance, witness):
    if witness is None:
        return CheckReport(name, instance, PASS)
    return CheckReport(name, instance, FAIL, witness)


def matrix_witness(a, b, label=None):
    """First differing entry of two matrices, down to the monomial for series entries."""
    diff = a.first_difference(b)
    if diff is None:
        return None
    r, c, x, y = diff
    out = {"row": r, "col": c}
    if label:
        out["matrix"] = label
    if isinstance(x, TruncatedSeries) or isinstance(y, TruncatedSeries):
        order = min(s.order for s in (x, y) if isinstance(s, TruncatedSeries))
        xs = x if isinstance(x, TruncatedSeries) else None
        ys = y if isinstance(y, TruncatedSeries) else None
        keys = set(xs.terms if xs else ()) | set(ys.terms if ys else ())
        for e in sorted(keys, key=lambda e: (sum(e), e)):
            if sum(e) > order:
                continue
            u = xs.coefficient(e) if xs else Fraction(0)
            v = ys.coefficient(e) if ys else Fraction(0)
            if not coeff_equal(u, v):
                out.update({"monomial": list(e), "expected": _jsonable(u), "got": _jsonable(v)})
                return out
    out.update({"expected": _jsonable(x), "got": _jsonable(y)})
    return out


# --- combinatorics -----------------------------------------------------------

def check_fixed_point_count(problem):
    got = len(problem.fixed_points)
    want = sl.weight_multiplicity(problem.datum, problem.lambdas, problem.mu)
    return _report("fixed-point-count", describe(problem), None if got == want else {"expected": want, "got": got})


def check_tangent(problem):
    dim = problem.dimension
    for p in problem.fixed_points:
        tw = sl.tangent_weights(problem, p)
        where = {"point": [list(d) for d in p.delta]}
        if sum(tw.values()) != dim:
            return _report("tangent", describe(problem), {**where, "expected": dim, "got": sum(tw.values())})
        by_pair = sl.a_multiplicities(problem, p)
        by_cross = sl.a_multiplicities_from_crossings(problem, p)
        if by_pair != by_cross:
            root = next(r for r in by_pair if by_pair[r] != by_cross[r])
            return _report("tangent", describe(problem), {**where, "root": list(root), "expected": by_pair[root], "got": by_cross[root]})
        for r in problem.datum.roots:
            neg = tuple(-x for x in r.root)
            if by_cross[r.root] != by_cross[neg]:
                return _report("tangent", describe(problem), {**where, "root": list(r.root), "expected": by_cross[neg], "got": by_cross[r.root]})
        curves = Counter(c.weight for c in sl.curve_descriptions(problem, p))
        if curves != tw:
            return _report("tangent", describe(problem), {**where, "detail": "curve weights differ from tangent weights"})
    return _report("tangent", describe(problem), None)


def check_curves(problem):
    for c in sl.enumerate_curves(problem):
        if c.kind != sl.PROJECTIVE:
            continue
        cls = sl.curve_class(problem, c)
        bad = None
        if sum(cls) != 0:
            bad = "class coefficients do not sum to zero"
        elif not sl.is_effective(cls):
            bad = "class outside the effective cone"
        else:
            for k in range(1, problem.l + 1):
                if sl.curve_degree(problem, c, k) - sl.curve_degree(problem, c, k - 1) != cls[k - 1]:
                    bad = f"degree of E_{k} disagrees with the class"
                    break
        if bad:
            return _report("curves", describe(problem), {"curve": c.to_json(), "class": list(cls), "detail": bad})
    return _report("curves", describe(problem), None)


def random_chambers(datum, count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        xi = [Fraction(rng.randint(-60, 60), rng.randint(1, 9)) for _ in range(datum.rank)]
        try:
            out.append(datum.chamber(xi))
        except ValueError:
            continue
    return out


def check_betti_invariance(problem, chambers):
    ranks = [sl.betti_ranks(problem, ch) for ch in chambers]
    for ch, r in zip(chambers, ranks):
        if r != ranks[0]:
            return _report("betti-invariance", describe(problem), {
                "chamber": [str(x) for x in ch.xi], "expected": ranks[0], "got": r})
    return _report("betti-invariance", describe(problem), None)


def check_sign_independence(problem, chamber):
    d = problem.datum
    etas = [None, tuple(range(3, 3 + d.rank)), tuple((-1) ** k * (k + 2) for k in range(d.rank))]
    simple = {r.root for r in chamber.simple_roots()}
    for p in problem.fixed_points:
        for i in range(1, problem.l + 1):
            for j in range(1, problem.l + 1):
                if i == j:
                    continue
                for r in d.roots:
                    q = stabops.exchange(problem, p, i, j, r)
                    if q is None:
                        continue
                    vals = {stabops.sigma_sign(problem, p, q, r.root, chamber, side=s, eta=e)
                            for s in (1, -1) for e in etas}
                    where = {"p": [list(x) for x in p.delta], "q": [list(x) for x in q.delta], "root": list(r.root)}
                    if len(vals) > 1:
                        return _report("sign-independence", describe(problem, chamber), {**where, "detail": "sign depends on the adjacent chamber"})
                    neg = tuple(-x for x in r.root)
                    if (r.root in simple or neg in simple) and vals != {1}:
                        return _report("sign-independence", describe(problem, chamber), {**where, "detail": "simple-root sign is not +1"})
    return _report("sign-independence", describe(problem, chamber), None)


def check_chamber_sum(problem, chamber, others):
    for i in range(1, problem.l + 1):
        for j in range(1, problem.l + 1):
            if i == j:
                continue
            base = stabops.omega_full(problem, i, j, chamber)
            for ch in others:
                w = matrix_witness(base, stabops.omega_full(problem, i, j, ch, chamber), f"Omega^{i}{j}")
                if w:
                    w["chamber"] = [str(x) for x in ch.xi]
                    return _report("chamber-sum", describe(problem, chamber), w)
    return _report("chamber-sum", describe(problem, chamber), None)


def check_classical_diagonal(problem, chamber):
    d = problem.datum
    nv = d.nvars
    for i in range(1, problem.l + 1):
        m = stabops.classical_matrix(problem, i, chamber).map(lambda x: simplify(x.substitute_zero(nv - 1)) if hasattr(x, "substitute_zero") else x)
        want = stabops.OperatorMatrix.diagonal(
            [stabops.linear_form(d, p.delta[i - 1]) for p in problem.fixed_points]).map(simplify)
        w = matrix_witness(want, m, f"classical_{i} at hbar = 0")
        if w:
            return _report("classical-diagonal", describe(problem, chamber), w)
    return _report("classical-diagonal", describe(problem, chamber), None)


# --- operator identities -----------------------------------------------------

def check_lemma_and_unit(problem, chamber=None, order=2):
    if chamber is None:
        chamber = problem.datum.default_chamber()
    inst = describe(problem, chamber)
    for i in range(1, problem.l + 1):
        for j in range(i + 1, problem.l + 1):
            res = stabops.lemma_residual(problem, i, j, chamber)
            if not res.is_zero():
                (r, c), v = next(iter(sorted(res.entries.items())))
                return _report("lemma-and-unit", inst, {"pair": [i, j], "row": r, "col": c, "residual": _jsonable(v), "detail": "diagonal decomposition fails"})
            for kind in ("short", "long"):
                vals = stabops.unit_residual(problem, stabops.omega_tilde(problem, i, j, kind, chamber), chamber)
                bad = next((k for k, v in enumerate(vals) if v != 0), None)
                if bad is not None:
                    return _report("lemma-and-unit", inst, {"pair": [i, j], "kind": kind, "row": bad, "residual": _jsonable(vals[bad]), "detail": "unit is not annihilated"})
    for i in range(1, problem.l + 1):
        pq = stabops.purely_quantum_matrix(problem, i, chamber, order)
        monos = {e for v in pq.entries.values() for e in v.terms}
        for e in sorted(monos):
            coeff = stabops.OperatorMatrix(pq.size, {k: v.coefficient(e) for k, v in pq.entries.items()})
            vals = stabops.unit_residual(problem, coeff, chamber)
            bad = next((k for k, v in enumerate(vals) if v != 0), None)
            if bad is not None:
                return _report("lemma-and-unit", inst, {"slot": i, "monomial": list(e), "row": bad, "residual": _jsonable(vals[bad]), "detail": "purely quantum part does not annihilate the unit"})
    return _report("lemma-and-unit", inst, None)


def check_paths(problem, chamber, order):
    inst = describe(problem, chamber, order)
    if not problem.datum.simply_laced:
        return CheckReport("construction-paths", inst, SKIP, {"detail": "closed form needs a simply-laced type"})
    for i in range(1, problem.l + 1):
        w = matrix_witness(stabops.connection(problem, i, chamber, order, path="closed"),
                           stabops.connection(problem, i, chamber, order, path="sum"), f"A_{i}")
        if w:
            return _report("construction-paths", inst, w)
    return _report("construction-paths", inst, None)


def flatness_witness(matrices, order):
    """First nonzero entry of a curvature component, or ``None``."""
    for a in range(len(matrices)):
        for b in range(a + 1, len(matrices)):
            ai, aj = matrices[a], matrices[b]
            curv = (ai.map(lambda s: s.log_derivative(b + 1)) - aj.map(lambda s: s.log_derivative(a + 1))
                    + ai.commutator(aj))
            curv = curv.map(lambda s: s.truncate(max(order - 1, 0)))
            zero = stabops.OperatorMatrix.zero(curv.size)
            w = matrix_witness(zero, curv, f"F_{a + 1}{b + 1}")
            if w:
                return w
    return None


def check_flatness(matrices, order, instance=None, name="flatness"):
    return _report(name, instance or {}, flatness_witness(matrices, order))


def quantum_connections(problem, chamber, order, hatted=True):
    return [stabops.connection(problem, i, chamber, order, hatted=hatted) for i in range(1, problem.l + 1)]


def kz_connections(problem, chamber, order):
    reps = kzrep.build_reps(problem, chamber)
    return [kzrep.kz_matrix(problem, i, chamber, order, reps) for i in range(1, problem.l + 1)]


def check_kz_equals_quantum(problem, chamber, order, quantum=None, kz=None):
    inst = describe(problem, chamber, order)
    if not problem.datum.simply_laced:
        return CheckReport("kz-equals-quantum", inst, SKIP, {"detail": "KZ side needs a simply-laced type"})
    quantum = quantum or quantum_connections(problem, chamber, order)
    kz = kz or kz_connections(problem, chamber, order)
    for i, (a, b) in enumerate(zip(kz, quantum), start=1):
        w = matrix_witness(a, b, f"A_{i}")
        if w:
            return _report("kz-equals-quantum", inst, w)
    return _report("kz-equals-quantum", inst, None)


def check_casimir_match(problem, chamber):
    """The stable-basis Omega_C agrees with the representation-side Casimir piece."""
    inst = describe(problem, chamber)
    if not problem.datum.simply_laced:
        return CheckReport("casimir-match", inst, SKIP, {"detail": "KZ side needs a simply-laced type"})
    reps = kzrep.build_reps(problem, chamber)
    for a, b in ((reps[0], reps[-1]),):
        defect = kzrep.casimir_invariance_defect(problem.datum, a, b)
        if defect:
            return _report("casimir-match", inst, {"detail": defect})
    for i in range(1, problem.l + 1):
        for j in range(1, problem.l + 1):
            if i != j:
                w = matrix_witness(kzrep.casimir_chamber(problem, reps, i, j, chamber),
                                   stabops.omega_chamber(problem, i, j, chamber), f"Omega_C^{i}{j}")
                if w:
                    return _report("casimir-match", inst, w)
    return _report("casimir-match", inst, None)


def run_suite(problem, chamber=None, order=6, chambers=5):
    if chamber is None:
        chamber = problem.datum.default_chamber()
    others = random_chambers(problem.datum, chambers)
    reports = [
        check_fixed_point_count(problem),
        check_tangent(problem),
        check_curves(problem),
        check_betti_invariance(problem, [chamber] + others),
        check_sign_independence(problem, chamber),
        check_chamber_sum(problem, chamber, others[:2]),
        check_classical_diagonal(problem, chamber),
        check_lemma_and_unit(problem, chamber),
        check_paths(problem, chamber, order),
    ]
    inst = describe(problem, chamber, order)
    if problem.datum.simply_laced:
        quantum = quantum_connections(problem, chamber, order)
        kz = kz_connections(problem, chamber, order)
        q_flat = check_flatness(quantum, order, inst, "flatness-quantum")
        kz_flat = check_flatness(kz, order, inst, "flatness-kz")
        eq = check_kz_equals_quantum(problem, chamber, order, quantum, kz)
        reports += [q_flat, kz_flat, check_casimir_match(problem, chamber), eq]
        consistent = not (eq.verdict == PASS and kz_flat.verdict == PASS and q_flat.verdict != PASS)
        reports.append(_report("consistency", inst, None if consistent else {"detail": "equal connections with different flatness verdicts"}))
    else:
        quantum = quantum_connections(problem, chamber, order)
        reports.append(check_flatness(quantum, order, inst, "flatness-quantum"))
        reports.append(CheckReport("kz-equals-quantum", inst, SKIP, {"detail": "KZ side needs a simply-laced type"}))
    return reports
