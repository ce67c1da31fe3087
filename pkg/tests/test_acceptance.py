"""One test per acceptance criterion; see the summary section printed at the end of the run."""

import time

import pytest

from qgrkz import cli, slice as sl, stabops, verify

from instances import A1_W4_0, A1_W4_2W, A1_WW0, A2_W1W2_0, A2_W1X3_0, D4_W1W1_0, problem, random_instances

KZ_INSTANCES = [(A1_WW0, 10), (A1_W4_0, 10), (A2_W1W2_0, 6), (A2_W1X3_0, 6), (D4_W1W1_0, 4)]
TIME_LIMIT = 10.0


def label(inst):
    return f"{inst[0]} {inst[1]}/{list(inst[2])}"


def catalog():
    out = []
    for path in cli.catalog_entries():
        prob, chamber, order = cli.read_config(path)
        out.append((path.stem, prob, chamber, order))
    return out


def failures(reports):
    return [f"{r.name}@{r.instance.get('datum')}: {r.witness}" for r in reports if not r.passed]


def test_criterion_1_kz_equals_quantum(criterion):
    bad = []
    for inst, order in KZ_INSTANCES:
        prob = problem(*inst)
        if len(prob.fixed_points) > 8:
            bad.append(f"{label(inst)} has weight space dimension {len(prob.fixed_points)}")
        c = prob.datum.default_chamber()
        start = time.perf_counter()
        rep = verify.check_kz_equals_quantum(prob, c, order)
        spent = time.perf_counter() - start
        if rep.verdict != verify.PASS:
            bad.append(f"{label(inst)} N={order}: {rep.witness}")
        if spent > TIME_LIMIT:
            bad.append(f"{label(inst)} took {spent:.1f}s")
    criterion(1, not bad, "; ".join(bad) or f"{len(KZ_INSTANCES)} instances exact")
    assert not bad


def test_criterion_2_flatness(criterion):
    bad = []
    for inst, order in KZ_INSTANCES:
        prob = problem(*inst)
        c = prob.datum.default_chamber()
        for name, build in (("quantum", verify.quantum_connections), ("kz", verify.kz_connections)):
            start = time.perf_counter()
            w = verify.flatness_witness(build(prob, c, order), order)
            spent = time.perf_counter() - start
            if w:
                bad.append(f"{name} {label(inst)}: {w}")
            if spent > TIME_LIMIT:
                bad.append(f"{name} {label(inst)} took {spent:.1f}s")
    criterion(2, not bad, "; ".join(bad) or "quantum and KZ flat on all criterion-1 instances")
    assert not bad


def test_criterion_3_construction_paths(criterion):
    bad, seen = [], 0
    for name, prob, chamber, order in catalog():
        if not prob.datum.simply_laced:
            continue
        seen += 1
        rep = verify.check_paths(prob, chamber, order)
        if rep.verdict != verify.PASS:
            bad.append(f"{name}: {rep.witness}")
    criterion(3, not bad and seen, "; ".join(bad) or f"{seen} simply-laced catalog instances")
    assert not bad and seen


def test_criterion_4_lemma_and_unit(criterion):
    bad, types = [], set()
    for name, prob, chamber, order in catalog():
        types.add(prob.datum.name)
        rep = verify.check_lemma_and_unit(prob, chamber)
        if rep.verdict != verify.PASS:
            bad.append(f"{name}: {rep.witness}")
    if "C2" not in types:
        bad.append("no C2 instance in the catalog")
    criterion(4, not bad, "; ".join(bad) or f"all catalog instances, types {sorted(types)}")
    assert not bad


def test_criterion_5_combinatorics(criterion):
    insts = random_instances(24, seed=5)
    bad = []
    for inst in insts:
        prob = problem(*inst)
        reports = [verify.check_fixed_point_count(prob), verify.check_tangent(prob)]
        bad += [f"{label(inst)}: {f}" for f in failures(reports)]
        # 2 rho as the sum of positive roots, independent of the stored rho
        two_rho = [sum(col) for col in zip(*(r.root for r in prob.datum.positive_roots))]
        want = sum(a * b for a, b in zip(prob.total_lambda, two_rho)) - sum(a * b for a, b in zip(prob.mu, two_rho))
        if want != prob.dimension:
            bad.append(f"{label(inst)}: dimension {prob.dimension}, pairing gives {want}")
    types = sorted({i[0] for i in insts})
    criterion(5, not bad, "; ".join(bad) or f"{len(insts)} random instances over {types}")
    assert not bad


def test_criterion_6_curve_geometry(criterion):
    bad = []
    for name, prob, _, _ in catalog():
        bad += [f"{name}: {f}" for f in failures([verify.check_curves(prob)])]
    for inst in random_instances(10, seed=6, max_points=40):
        bad += [f"{label(inst)}: {f}" for f in failures([verify.check_curves(problem(*inst))])]
    s1 = problem(*A1_WW0)
    classes = {tuple(sl.curve_class(s1, c)) for c in sl.enumerate_curves(s1) if c.kind == sl.PROJECTIVE}
    if classes != {(1, -1)}:
        bad.append(f"S1 curve classes {sorted(classes)}")
    prob = problem(*A1_W4_2W)
    found = sorted(n for n in range(-4, 5) for comp in sl.wall_components(prob, (1,), n) if comp.has_affine_line)
    found = sorted(set(found))
    if found != [0, 1]:
        bad.append(f"A1 (w,w,w,w)/2w affine-line components at n={found}, expected [0, 1]")
    criterion(6, not bad, "; ".join(bad) or "effective classes, S1 class e1-e2, walls n in {0, 1}")
    assert not bad


def test_criterion_7_betti(criterion):
    bad = []
    s1 = problem(*A1_WW0)
    ranks = sl.betti_ranks(s1, s1.datum.default_chamber())
    if {2 * k: v for k, v in ranks.items()} != {2: 1, 4: 1}:
        bad.append(f"T*P1 ranks {ranks}")
    for name, prob, chamber, _ in catalog():
        rep = verify.check_betti_invariance(prob, [chamber] + verify.random_chambers(prob.datum, 5, seed=7))
        bad += [f"{name}: {f}" for f in failures([rep])]
    criterion(7, not bad, "; ".join(bad) or "T*P1 ranks 1,1 in degrees 2,4; invariant over 5 random chambers")
    assert not bad


def test_criterion_8_signs(criterion):
    bad = []
    for name, prob, chamber, _ in catalog():
        bad += [f"{name}: {f}" for f in failures([verify.check_sign_independence(prob, chamber)])]
    criterion(8, not bad, "; ".join(bad) or "adjacent-chamber independent, simple-root signs +1")
    assert not bad


# --- criterion 9: mutations -------------------------------------------------

MUTATION_INSTANCES = [A1_WW0, A2_W1W2_0, A2_W1X3_0]


def criteria_1_to_4(order=3):
    """Witnesses of criteria 1-4 on a few small instances, or an empty list."""
    out = []
    for inst in MUTATION_INSTANCES:
        prob = problem(*inst)
        c = prob.datum.default_chamber()
        quantum = verify.quantum_connections(prob, c, order)
        kz = verify.kz_connections(prob, c, order)
        reports = [
            verify.check_kz_equals_quantum(prob, c, order, quantum, kz),
            verify.check_flatness(quantum, order, verify.describe(prob), "flatness-quantum"),
            verify.check_flatness(kz, order, verify.describe(prob), "flatness-kz"),
            verify.check_paths(prob, c, order),
            verify.check_lemma_and_unit(prob, c),
        ]
        out += [f"{label(inst)} {f}" for f in failures(reports)]
    return out


def test_criteria_1_to_4_baseline():
    assert criteria_1_to_4() == []


@pytest.mark.parametrize("module,attr", [
    (sl, "CROSSING_DIRECTION"),
    (stabops, "OMEGA_TILDE_DIAG_SIGN"),
    (stabops, "GAUGE_SIGN"),
])
def test_criterion_9_mutation(criterion, monkeypatch, module, attr):
    monkeypatch.setattr(module, attr, -getattr(module, attr))
    caught = criteria_1_to_4()
    witness = caught[0][:160] if caught else "no failure among criteria 1-4"
    criterion(9, caught, witness, part=attr)
    assert caught
