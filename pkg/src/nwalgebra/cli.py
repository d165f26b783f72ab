"""Command line entry point.

Subcommands construct root systems and graded components, run the
identity suites, search disjoint systems, reduce monomials and emit
machine-readable reports.  Everything that samples is seeded and the
seed is echoed, so identical configurations produce byte-identical
stdout; wall times per phase go to stderr where they cannot perturb
report comparisons.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 degree cap or
memory bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .coxeter import (
    CoxeterError,
    EnumerationBoundExceeded,
    RootSystem,
    cartan_data,
    centralizer_of_longest,
)
from .exactlinalg import DEFAULT_PRIME, QQ, PrimeField
from .nichols_core import (
    AlgebraState,
    DEFAULT_MEMORY_BOUND,
    DegreeCapExceeded,
    MemoryBoundExceeded,
    pairing,
)


class _Phases:
    """Wall-clock bookkeeping, reported on stderr."""

    def __init__(self):
        self.items = []
        self._t = time.perf_counter()

    def mark(self, name):
        now = time.perf_counter()
        self.items.append((name, now - self._t))
        self._t = now

    def emit(self):
        for name, dt in self.items:
            print(f"[phase] {name}: {dt:.3f}s", file=sys.stderr)


def _config(args):
    return {
        "engine_version": __version__,
        "type": args.type,
        "rank": args.rank,
        "field": args.field,
        "prime": args.prime if args.field == "prime" else None,
        "degree_cap": args.degree_cap,
        "seed": args.seed,
        "trials": args.trials,
        "format": args.format,
        "memory_bound": args.memory_bound,
    }


def _emit(args, payload):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv" and "csv" in payload:
        print(payload["csv"], end="")
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def _system(args) -> RootSystem:
    return RootSystem(cartan_data(args.type, args.rank))


def _field(args):
    if args.field == "prime":
        return PrimeField(args.prime)
    return QQ


def _state(args, system=None) -> AlgebraState:
    system = system or _system(args)
    return AlgebraState(system, field=_field(args), degree_cap=args.degree_cap,
                        memory_bound=args.memory_bound)


def _dims_payload(args, state):
    dims = state.dims()
    if state.finite_top is not None:
        dims = dims[: state.finite_top + 1]
    label = "exact" if args.field == "rational" else "mod-p lower-bound certified"
    csv = "degree,dim\n" + "".join(f"{n},{d}\n" for n, d in enumerate(dims))
    return {
        "config": _config(args),
        "dims": dims,
        "certification": label,
        "top_degree": state.finite_top,
        "truncated": state.truncated,
        "total": sum(dims),
        "csv": csv,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_roots(args, phases):
    system = _system(args)
    phases.mark("roots")
    roots = []
    for i, r in enumerate(system.roots):
        entry = {"index": i, "coeffs": list(r), "height": system.heights[i]}
        if system._is_type_a:
            entry["transposition"] = list(system.pair_of_root[i])
        roots.append(entry)
    csv = "index,height,coeffs\n" + "".join(
        f"{e['index']},{e['height']},{' '.join(map(str, e['coeffs']))}\n" for e in roots)
    _emit(args, {"config": _config(args), "positive_roots": roots,
                 "count": system.nroots, "csv": csv})
    return 0


def cmd_group(args, phases):
    system = _system(args)
    wo = system.longest_element()
    payload = {
        "config": _config(args),
        "rank": system.rank,
        "reflections": system.nroots,
        "longest_element": wo.to_json(),
        "longest_length": wo.length(),
        "exponent": system.exponent(),
        "centralizer_of_longest_size": len(centralizer_of_longest(system)),
    }
    if args.element:
        w = _parse_element(system, args.element)
        payload["element"] = {
            "value": w.to_json(),
            "length": w.length(),
            "reduced_word": list(w.reduced_word()),
            "t_set": sorted(w.t_set()),
            "centralizes_longest": w * wo == wo * w,
        }
    phases.mark("group")
    _emit(args, payload)
    return 0


def _parse_element(system, text):
    data = json.loads(text)
    if isinstance(data, list):
        data = {"perm": data}
    from .coxeter import element_from_json

    return element_from_json(system, data)


def cmd_dims(args, phases):
    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    _emit(args, _dims_payload(args, state))
    return 0


def cmd_hilbert(args, phases):
    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    payload = _dims_payload(args, state)
    dims = payload["dims"]
    poly = " + ".join(f"{d}*t^{n}" if n else str(d) for n, d in enumerate(dims) if d)
    payload["hilbert_series"] = poly
    _emit(args, payload)
    return 0


def cmd_verify(args, phases):
    from . import calculus
    from .disjoint import search_complete

    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    system = state.system
    wo = system.longest_element()
    cap = args.max_degree
    reports = []
    which = args.identity

    def want(name):
        return which in (name, "all")

    if want("rhoD"):
        reports.append(calculus.check_rhoD(state, args.trials, args.seed, cap))
        phases.mark("rhoD")
    if want("nz-antipode"):
        reports.append(calculus.check_nz_antipode(state, cap))
        phases.mark("nz-antipode")
    if want("gen-leibniz"):
        reports.append(calculus.check_gen_leibniz(
            state, system.identity(), wo, system.identity(),
            max(1, args.trials // 10), args.seed, cap))
        phases.mark("gen-leibniz")
    if want("tower"):
        reports.append(calculus.check_tower_invariance(
            state, wo, system.identity(), max(1, args.trials // 10), args.seed, cap))
        phases.mark("tower")
    if want("skew-commutation"):
        sols = search_complete(system)
        if sols:
            w = next(w for w in sols[0].elements if not w.is_identity())
        else:
            w = wo
        reports.append(calculus.check_skew_commutation(
            state, w, system.identity(), max(1, args.trials // 10), args.seed, cap))
        phases.mark("skew-commutation")
    if want("basic-rev"):
        reports.append(calculus.check_basic_rev(state, args.trials, args.seed, cap))
        phases.mark("basic-rev")
    if not reports:
        print(f"unknown identity: {which}", file=sys.stderr)
        return 2
    payload = {"config": _config(args), "reports": [r.to_json() for r in reports]}
    _emit(args, payload)
    return 0 if all(r.status in ("pass", "skipped") for r in reports) else 1


def cmd_integral(args, phases):
    from .disjoint import search_complete
    from .integrals import integral_character, invariance_suite, top_integral

    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    cert = top_integral(state)
    integral_character(cert, state)
    sols = search_complete(state.system)
    order2 = None
    if sols and state.finite_top is not None:
        d0 = sols[0]
        if d0.order >= 2:
            from .disjoint import classify

            sub = classify(list(d0.elements)[:2], state.system)
            order2 = sub
    inv = invariance_suite(cert, state, order2)
    phases.mark("integral")
    payload = {"config": _config(args), "certificate": cert.to_json(),
               "invariance": inv.to_json()}
    _emit(args, payload)
    return 0 if inv.passed else 1


def cmd_hypo(args, phases):
    from .integrals import hypothetical_checks, nonsimple_roots, subalgebra_build

    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    sub = subalgebra_build(nonsimple_roots(state), state)
    report = hypothetical_checks(sub, state)
    phases.mark("hypo")
    payload = {"config": _config(args), "subalgebra": sub.to_json(),
               "report": report.to_json()}
    _emit(args, payload)
    return 0 if report.status in ("pass", "skipped") else 1


def cmd_reduce(args, phases):
    from .reduction import reduce_mod_left_ideal, reduce_mod_right_ideal

    system = _system(args)
    word = tuple(int(x) for x in args.monomial.split(",") if x.strip() != "")
    for a in word:
        if not 0 <= a < system.nroots:
            print(f"root index out of range: {a}", file=sys.stderr)
            return 2
    side = args.side
    fn = reduce_mod_right_ideal if side == "right" else reduce_mod_left_ideal
    result = fn(word, system)
    phases.mark("reduce")
    payload = {"config": _config(args), "side": side, "monomial": list(word)}
    payload.update(result.to_json())
    _emit(args, payload)
    return 0


def cmd_disjoint(args, phases):
    from .disjoint import DisjointSystem, classify, search_complete

    system = _system(args)
    if args.check:
        elements = []
        for part in args.check.split(";"):
            elements.append(_parse_element(system, part))
        result = classify(elements, system)
        phases.mark("classify")
        ok = isinstance(result, DisjointSystem)
        payload = {"config": _config(args),
                   "result": "system" if ok else "violation",
                   "detail": result.to_json()}
        _emit(args, payload)
        return 0 if ok else 1
    if args.find_complete:
        sols = search_complete(system)
        phases.mark("search")
        payload = {"config": _config(args), "count": len(sols),
                   "systems": [d.to_json() for d in sols]}
        _emit(args, payload)
        return 0
    print("disjoint requires --find-complete or --check", file=sys.stderr)
    return 2


def cmd_pairing(args, phases):
    from .nilcoxeter import embed_element

    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    system = state.system
    elements = system.elements()
    bad = []
    for u in elements:
        for v in elements:
            val = pairing(embed_element(state, u), embed_element(state, v))
            expect = state.field.one if u == v.inverse() else state.field.zero
            if val != expect:
                bad.append({"u": u.to_json(), "v": v.to_json(), "value": str(val)})
    phases.mark("pairing")
    payload = {"config": _config(args), "pairs": len(elements) ** 2,
               "orthonormal": not bad, "violations": bad}
    _emit(args, payload)
    return 0 if not bad else 1


def cmd_bracket(args, phases):
    from .calculus import bracket_matrix
    from .disjoint import classify, search_complete

    state = _state(args)
    state.construct_all()
    phases.mark("construct")
    system = state.system
    r = args.order
    if r == 1:
        d = classify([system.identity()], system)
    else:
        sols = search_complete(system)
        sols = [s for s in sols if s.order >= r]
        if not sols:
            print("no complete disjoint system of sufficient order", file=sys.stderr)
            return 1
        d = classify(list(sols[0].elements)[:r], system)
    matrix, report = bracket_matrix(d, list(d.elements), state)
    phases.mark("bracket")
    payload = {"config": _config(args),
               "system": d.to_json(),
               "matrix": [[str(x) for x in row] for row in matrix],
               "report": report.to_json()}
    _emit(args, payload)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nwalg",
        description="exact engine for Nichols-Woronowicz algebras over Weyl groups")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A", choices=["A", "D", "E"])
    common.add_argument("--rank", type=int, default=2)
    common.add_argument("--field", default="rational", choices=["rational", "prime"])
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--format", default="json", choices=["json", "text", "csv"])
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument(
        "--memory-bound", type=int,
        default=int(os.environ.get("NWALGEBRA_MEMORY_BOUND", DEFAULT_MEMORY_BOUND)))
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("roots", parents=[common]).set_defaults(fn=cmd_roots)
    g = sub.add_parser("group", parents=[common])
    g.add_argument("--element", default=None, help="JSON element or one-line permutation")
    g.set_defaults(fn=cmd_group)
    sub.add_parser("dims", parents=[common]).set_defaults(fn=cmd_dims)
    sub.add_parser("hilbert", parents=[common]).set_defaults(fn=cmd_hilbert)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("identity", choices=[
        "rhoD", "nz-antipode", "gen-leibniz", "tower", "skew-commutation",
        "basic-rev", "all"])
    v.set_defaults(fn=cmd_verify)
    sub.add_parser("integral", parents=[common]).set_defaults(fn=cmd_integral)
    sub.add_parser("hypo", parents=[common]).set_defaults(fn=cmd_hypo)
    r = sub.add_parser("reduce", parents=[common])
    r.add_argument("--monomial", required=True, help="comma-separated root indices")
    r.add_argument("--side", default="right", choices=["left", "right"])
    r.set_defaults(fn=cmd_reduce)
    d = sub.add_parser("disjoint", parents=[common])
    d.add_argument("--find-complete", action="store_true")
    d.add_argument("--check", default=None,
                   help="semicolon-separated one-line permutations or JSON elements")
    d.set_defaults(fn=cmd_disjoint)
    sub.add_parser("pairing", parents=[common]).set_defaults(fn=cmd_pairing)
    b = sub.add_parser("bracket", parents=[common])
    b.add_argument("--order", type=int, default=2)
    b.set_defaults(fn=cmd_bracket)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    phases = _Phases()
    try:
        code = args.fn(args, phases)
    except (DegreeCapExceeded, MemoryBoundExceeded, EnumerationBoundExceeded) as e:
        print(f"resource bound exceeded: {e}", file=sys.stderr)
        return 3
    except CoxeterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RuntimeError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    phases.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
