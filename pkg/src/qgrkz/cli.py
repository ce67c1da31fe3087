"""Command-line entry point ``qgrkz``."""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import kzrep, rootsys, slice as sl, stabops, verify

CATALOG_DIR = Path(__file__).with_name("catalog")
DEFAULT_ORDER = 6


class ConfigError(ValueError):
    pass


class ScopeError(ValueError):
    pass


def resolve_config_path(path):
    p = Path(path)
    if p.exists():
        return p
    for cand in (CATALOG_DIR / p.name, CATALOG_DIR / f"{p.name}.json"):
        if cand.exists():
            return cand
    raise ConfigError(f"config file not found: {path}")


def parse_chamber(datum, text):
    try:
        xi = [Fraction(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse chamber vector {text!r}: {exc}") from None
    if len(xi) != datum.rank:
        raise ConfigError(f"chamber vector needs {datum.rank} entries, got {len(xi)}")
    try:
        return datum.chamber(xi)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(data):
    """Turn a config mapping into ``(problem, chamber, order)``."""
    try:
        spec = data["datum"]
        kind = str(spec["type"])
        if kind[1:].isdigit():
            # full names like "A2" are accepted; the rank field must then agree
            datum = rootsys.build(kind)
            if "rank" in spec and int(spec["rank"]) != datum.rank:
                raise ConfigError(f"type {kind} does not have rank {spec['rank']}")
        else:
            datum = rootsys.build(kind, int(spec["rank"]))
        lambdas = []
        for k in data["lambdas"]:
            if not 1 <= int(k) <= datum.rank:
                raise ConfigError(f"coweight index {k} out of range 1..{datum.rank}")
            lambdas.append(datum.fundamental_coweight(int(k) - 1))
        mu = tuple(int(x) for x in data["mu"])
        problem = sl.SliceProblem(datum, lambdas, mu)
    except KeyError as exc:
        raise ConfigError(f"missing config field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    chamber = datum.default_chamber()
    if data.get("chamber") is not None:
        ch = data["chamber"]
        chamber = parse_chamber(datum, ch if isinstance(ch, str) else ",".join(str(x) for x in ch))
    order = int(data.get("order", DEFAULT_ORDER))
    return problem, chamber, order


def read_config(path):
    p = resolve_config_path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON: {exc}") from None
    return load_config(data)


def catalog_entries():
    return sorted(CATALOG_DIR.glob("*.json"))


# --- command handlers -------------------------------------------------------

def _slot(problem, i):
    if i is None:
        raise ConfigError("--i is required for this command")
    if not 1 <= i <= problem.l:
        raise ConfigError(f"--i must lie in 1..{problem.l}")
    return i


def cmd_info(problem, chamber, order, args):
    d = problem.datum
    out = problem.describe()
    out.update({
        "roots": len(d.roots),
        "simply_laced": d.simply_laced,
        "minuscule_indices": [k + 1 for k in d.minuscule_indices()],
        "chamber": [str(x) for x in chamber.xi],
        "order": order,
    })
    return out, 0


def cmd_fixed_points(problem, chamber, order, args):
    return [p.to_json() for p in problem.fixed_points], 0


def cmd_tangent(problem, chamber, order, args):
    out = []
    for p in problem.fixed_points:
        tw = sl.tangent_weights(problem, p)
        out.append({
            "point": [list(d) for d in p.delta],
            "weights": [{"root": list(r), "n": n, "mult": m} for (r, n), m in sorted(tw.items())],
        })
    return out, 0


def cmd_curves(problem, chamber, order, args):
    return [c.to_json(problem) for c in sl.enumerate_curves(problem)], 0


def cmd_betti(problem, chamber, order, args):
    ind = sl.attractor_indices(problem, chamber)
    return {
        "chamber": [str(x) for x in chamber.xi],
        "ranks": {str(2 * k): v for k, v in sl.betti_ranks(problem, chamber).items()},
        "indices": [{"point": [list(d) for d in p.delta], "index": ind[p]} for p in problem.fixed_points],
    }, 0


def cmd_walls(problem, chamber, order, args):
    out = []
    reach = problem.l
    for r in problem.datum.positive_roots:
        for n in range(-reach, reach + 1):
            comps = sl.wall_components(problem, r.root, n)
            if any(c.m or c.has_affine_line for c in comps):
                out.append({"root": list(r.root), "n": n, "components": [c.to_json() for c in comps]})
    return out, 0


def cmd_classical(problem, chamber, order, args):
    return stabops.classical_matrix(problem, _slot(problem, args.i), chamber).to_json(), 0


def cmd_quantum(problem, chamber, order, args):
    i = _slot(problem, args.i)
    if args.path == "closed" and not problem.datum.simply_laced:
        raise ScopeError("KZ closed form requires simply-laced")
    return stabops.quantum_matrix(problem, i, chamber, order, args.path).map(stabops.simplify).to_json(), 0


def cmd_kz(problem, chamber, order, args):
    i = _slot(problem, args.i)
    if not problem.datum.simply_laced:
        raise ScopeError(f"KZ side is not covered for type {problem.datum.name}")
    return kzrep.kz_matrix(problem, i, chamber, order).to_json(), 0


def cmd_sign(problem, chamber, order, args):
    pts = problem.fixed_points
    try:
        p, q = pts[int(args.p)], pts[int(args.q)]
        root = tuple(int(x) for x in args.alpha.split(","))
        value = stabops.sigma_sign(problem, p, q, root, chamber)
    except (IndexError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return {"p": [list(d) for d in p.delta], "q": [list(d) for d in q.delta], "root": list(root), "sign": value}, 0


def _verdict(reports):
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify(problem, chamber, order, args):
    what = args.what
    inst = verify.describe(problem, chamber, order)
    if what == "suite":
        reports = verify.run_suite(problem, chamber, order)
    elif what == "kz-eq":
        if not problem.datum.simply_laced:
            raise ScopeError(f"KZ comparison is not covered for type {problem.datum.name}")
        reports = [verify.check_kz_equals_quantum(problem, chamber, order)]
    elif what == "flat":
        reports = [verify.check_flatness(verify.quantum_connections(problem, chamber, order), order, inst, "flatness-quantum")]
        if problem.datum.simply_laced:
            reports.append(verify.check_flatness(verify.kz_connections(problem, chamber, order), order, inst, "flatness-kz"))
    else:
        reports = [verify.check_lemma_and_unit(problem, chamber)]
    return [r.to_json() for r in reports], _verdict(reports)


COMMANDS = {
    "info": cmd_info,
    "fixed-points": cmd_fixed_points,
    "tangent": cmd_tangent,
    "curves": cmd_curves,
    "betti": cmd_betti,
    "walls": cmd_walls,
    "classical": cmd_classical,
    "quantum": cmd_quantum,
    "kz": cmd_kz,
    "sign": cmd_sign,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="instance config (JSON path or catalog name)")
    common.add_argument("--order", type=int, help=f"series truncation order (default {DEFAULT_ORDER})")
    common.add_argument("--chamber", help="generic chamber vector, comma-separated rationals")
    common.add_argument("--i", type=int, help="divisor / tensor slot index, 1-based")

    parser = argparse.ArgumentParser(prog="qgrkz", description="Quantum connections of affine Grassmannian slices and KZ.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("info", "fixed-points", "tangent", "curves", "betti", "walls", "classical", "kz"):
        sub.add_parser(name, parents=[common])
    q = sub.add_parser("quantum", parents=[common])
    q.add_argument("--path", choices=("sum", "closed"), default="sum")
    s = sub.add_parser("sign", parents=[common])
    s.add_argument("p", help="index of the first fixed point")
    s.add_argument("q", help="index of the second fixed point")
    s.add_argument("alpha", help="root in simple-root coordinates, comma-separated")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("what", choices=("suite", "kz-eq", "flat", "lemma"))
    sub.add_parser("catalog", parents=[common])
    return parser


def _emit(payload):
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def run_catalog(args):
    out = []
    code = 0
    for path in catalog_entries():
        problem, chamber, order = read_config(path)
        if args.order is not None:
            order = args.order
        reports = verify.run_suite(problem, chamber, order)
        code = max(code, _verdict(reports))
        out.append({"instance": path.stem, "reports": [r.to_json() for r in reports]})
    return out, code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "catalog":
            payload, code = run_catalog(args)
        else:
            if not args.config:
                raise ConfigError("a config is required (-c/--config)")
            problem, chamber, order = read_config(args.config)
            if args.chamber:
                chamber = parse_chamber(problem.datum, args.chamber)
            if args.order is not None:
                if args.order < 0:
                    raise ConfigError("--order must be nonnegative")
                order = args.order
            payload, code = COMMANDS[args.command](problem, chamber, order, args)
    except (ConfigError, ScopeError) as exc:
        kind = "scope error" if isinstance(exc, ScopeError) else "config error"
        sys.stderr.write(f"qgrkz: {kind}: {exc}\n")
        return 2
    _emit(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
