"""Command line front end.

Subcommands: eta, polytope, cocycle, mixing, sample, joining verify.
Every command prints one canonical JSON report to stdout (sorted keys,
"p/q" rationals, trailing newline) so identical invocations produce
byte-identical output; wall-clock time goes to stderr only.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .config import parse_config
from .errors import InvalidInputError, JoinlabError, PreconditionError, ResourceLimitError
from .joinings import (
    diagonal_invariance_defect,
    face_independence_defect,
    marginal,
    product_joining,
    sup_distance,
)
from .mixing import (
    OffsetVector,
    correlation,
    mixing_deviation_sweep_detail,
)
from .polytope import SIZE_CAP, PolytopeSpec, certify_triviality, optimize
from .rationals import parse_rational
from .report import input_digest, render_report
from .serialize import data_to_raw, joining_to_data, skew_to_data
from .skew import (
    as_automorphism,
    is_ergodic,
    relative_mixing_fraction,
    relative_product,
    relative_weak_mixing_average,
    rigidity_statistic,
    sample_random_extension,
)
from .spaces import iter_tuples, orbit_count, shape_of, tuple_to_index
from .torus import Z2kContext, full_action, triple_sum_joining


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def _json_from_bytes(blob: bytes, path: str):
    try:
        return json.loads(blob)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_config(path: str):
    blob = _read_bytes(path)
    return parse_config(_json_from_bytes(blob, path), origin=path), blob


def _int_list(text: str, flag: str) -> tuple[int, ...]:
    parts = [p for p in text.split(",") if p != ""]
    if not parts:
        raise InvalidInputError(f"{flag}: expected a comma-separated list")
    out = []
    for p in parts:
        try:
            out.append(int(p))
        except ValueError:
            raise InvalidInputError(f"{flag}: {p!r} is not an int") from None
    return tuple(out)


def _name_list(text: str, flag: str) -> list[str]:
    names = [p for p in text.split(",") if p != ""]
    if not names:
        raise InvalidInputError(f"{flag}: expected a comma-separated list of names")
    return names


def _require(args, flag_values: dict, context: str):
    missing = [flag for flag, value in flag_values.items() if value is None]
    if missing:
        raise InvalidInputError(f"{context} requires {', '.join(missing)}")


def _cmd_eta(args):
    ctx = Z2kContext(args.k)
    v = triple_sum_joining(ctx)
    action = full_action(ctx)
    mass = sum(v.entries, Fraction(0))
    edge = Fraction(0)
    for i, sp in enumerate(v.factors):
        edge_marg = marginal(v, (i,))
        for a in sp.atoms():
            edge = max(edge, abs(edge_marg.entries[a] - sp.weights[a]))
    three = face_independence_defect(v, 3)
    invariance = diagonal_invariance_defect(v, action)
    sup_product = sup_distance(v, product_joining(v.factors))
    passed = mass == 1 and edge == 0 and three == 0 and invariance == 0
    payload = {
        "command": "eta",
        "k": args.k,
        "mass": mass,
        "edge_marginal_defect": edge,
        "three_face_defect": three,
        "invariance_defect": invariance,
        "sup_distance_to_product": sup_product,
        "pass": passed,
    }
    return payload, (passed if args.verify else True), b""


def _cmd_polytope(args):
    cfg, blob = _load_config(args.config)
    action = cfg.lookup("actions", args.action)
    spec = PolytopeSpec(action, args.order, args.independence)
    payload = {
        "command": "polytope",
        "action": args.action,
        "order": args.order,
        "independence": args.independence,
    }
    if args.certify:
        if args.minimize:
            raise InvalidInputError("--minimize only applies with --objective")
        cert = certify_triviality(spec)
        payload.update(
            {
                "mode": "certify",
                "trivial": cert.trivial,
                "max_deviation": cert.max_deviation,
                "witness": joining_to_data(cert.witness) if cert.witness else None,
            }
        )
    else:
        pairs = cfg.lookup("objectives", args.objective)
        dense = [Fraction(0)] * spec.size
        for tup, coeff in pairs:
            if len(tup) != spec.order:
                raise InvalidInputError(
                    f"objective '{args.objective}': index {tup} has "
                    f"{len(tup)} coordinates, expected {spec.order}"
                )
            n = spec.action.space.atom_count
            for t in tup:
                if t >= n:
                    raise InvalidInputError(
                        f"objective '{args.objective}': index {tup} out of "
                        f"range for {n} atoms"
                    )
            dense[tuple_to_index(spec.shape, tup)] = coeff
        sense = "min" if args.minimize else "max"
        outcome = optimize(spec, dense, sense=sense)
        payload.update(
            {
                "mode": "objective",
                "objective": args.objective,
                "sense": sense,
                "status": outcome.status,
                "optimum": outcome.optimum,
                "witness": joining_to_data(outcome.witness) if outcome.witness else None,
            }
        )
    return payload, True, blob


def _cmd_cocycle(args):
    cfg, blob = _load_config(args.config)
    r = cfg.lookup("cocycles", args.cocycle)
    payload = {"command": "cocycle", "cocycle": args.cocycle, "stat": args.stat}
    if args.stat == "rigidity":
        _require(
            args,
            {"--set": args.set, "--sequence": args.sequence, "--n-param": args.n_param},
            "stat 'rigidity'",
        )
        a = cfg.lookup("sets", args.set)
        seq = cfg.lookup("sequences", args.sequence)
        values = [
            [p, rigidity_statistic(r, a, args.n_param, p)] for p in seq.times
        ]
        payload.update(
            {"set": args.set, "sequence": args.sequence, "n_param": args.n_param,
             "values": values}
        )
    elif args.stat == "fraction":
        _require(
            args, {"--sequence": args.sequence, "--eps": args.eps}, "stat 'fraction'"
        )
        eps = parse_rational(args.eps)
        seq = cfg.lookup("sequences", args.sequence)
        values = [[p, relative_mixing_fraction(r, p, eps)] for p in seq.times]
        payload.update({"sequence": args.sequence, "eps": eps, "values": values})
    else:
        _require(
            args,
            {
                "--fiber-set-a": args.fiber_set_a,
                "--fiber-set-b": args.fiber_set_b,
                "--horizon": args.horizon,
            },
            "stat 'average'",
        )
        a = cfg.lookup("sets", args.fiber_set_a)
        b = cfg.lookup("sets", args.fiber_set_b)
        value = relative_weak_mixing_average(r, a, b, args.horizon)
        payload.update(
            {
                "set_a": args.fiber_set_a,
                "set_b": args.fiber_set_b,
                "horizon": args.horizon,
                "value": value,
            }
        )
    return payload, True, blob


def _cmd_mixing(args):
    cfg, blob = _load_config(args.config)
    t = cfg.lookup("automorphisms", args.automorphism)
    set_names = _name_list(args.sets, "--sets")
    if len(set_names) < 2:
        raise InvalidInputError("--sets: need at least two set names")
    sets = [cfg.lookup("sets", name) for name in set_names]
    payload = {
        "command": "mixing",
        "automorphism": args.automorphism,
        "sets": set_names,
    }
    if args.offsets is not None:
        k = OffsetVector(_int_list(args.offsets, "--offsets"))
        value = correlation(t, sets, k)
        product_value = Fraction(1)
        for a in sets:
            product_value *= a.measure
        payload.update(
            {
                "mode": "correlation",
                "offsets": list(k.offsets),
                "value": value,
                "product_value": product_value,
                "deviation": abs(value - product_value),
            }
        )
    else:
        detail = mixing_deviation_sweep_detail(t, sets, args.sweep)
        payload.update(
            {
                "mode": "sweep",
                "k_range": args.sweep,
                "max_deviation": detail.max_deviation,
                "argmax_offsets": list(detail.argmax_offsets),
                "product_value": detail.product_value,
            }
        )
    return payload, True, blob


def _cmd_sample(args):
    cfg, blob = _load_config(args.config)
    s = cfg.lookup("automorphisms", args.base)
    fiber = cfg.lookup("spaces", args.fiber)
    r = sample_random_extension(s, fiber, args.seed, args.mode)
    payload = {
        "command": "sample",
        "base": args.base,
        "fiber": args.fiber,
        "seed": args.seed,
        "mode": args.mode,
        "skew": skew_to_data(r),
    }
    if args.analyze:
        big = as_automorphism(r)
        payload["analysis"] = {
            "orbit_count": orbit_count(big),
            "ergodic": is_ergodic(big),
            "fiber_square_ergodic": is_ergodic(relative_product(r)),
        }
    return payload, True, blob


def _cmd_joining_verify(args):
    file_blob = _read_bytes(args.file)
    raw = data_to_raw(_json_from_bytes(file_blob, args.file), path=args.file)
    digest_bytes = file_blob
    action = None
    if args.action is not None:
        if args.config is None:
            raise InvalidInputError("--action requires --config")
        cfg, cfg_blob = _load_config(args.config)
        digest_bytes = file_blob + cfg_blob
        action = cfg.lookup("actions", args.action)
        for sp in raw.factors:
            if sp != action.space:
                raise InvalidInputError(
                    "invariance check needs every factor equal to the action's space"
                )
    elif args.config is not None:
        digest_bytes = file_blob + _read_bytes(args.config)

    shape = shape_of(raw.factors)
    size = len(raw.entries)
    if size > SIZE_CAP:
        raise ResourceLimitError(f"{size} entries exceed the cap of {SIZE_CAP}")
    mass = sum(raw.entries, Fraction(0))
    min_entry = min(raw.entries)
    marginal_defect = Fraction(0)
    for coord, sp in enumerate(raw.factors):
        sums = [Fraction(0)] * sp.atom_count
        for tup, idx in zip(iter_tuples(shape), range(size)):
            sums[tup[coord]] += raw.entries[idx]
        for a in sp.atoms():
            marginal_defect = max(marginal_defect, abs(sums[a] - sp.weights[a]))
    invariance_defect = None
    if action is not None:
        invariance_defect = Fraction(0)
        for g in action.generators:
            inv = g.inverse().perm
            for tup, idx in zip(iter_tuples(shape), range(size)):
                pre = tuple_to_index(shape, tuple(inv[z] for z in tup))
                invariance_defect = max(
                    invariance_defect, abs(raw.entries[idx] - raw.entries[pre])
                )
    passed = (
        mass == 1
        and min_entry >= 0
        and marginal_defect == 0
        and (invariance_defect is None or invariance_defect == 0)
    )
    payload = {
        "command": "joining-verify",
        "file": args.file,
        "mass": mass,
        "mass_defect": abs(mass - 1),
        "min_entry": min_entry,
        "marginal_defect": marginal_defect,
        "invariance_defect": invariance_defect,
        "pass": passed,
    }
    return payload, passed, digest_bytes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="also write the report here")
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="upper bound on worker threads (the exact kernels are "
        "single-threaded, so this only caps what gets used)",
    )

    parser = argparse.ArgumentParser(
        prog="joinlab",
        description="exact joining computations on finite systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "eta", parents=[common], help="order-4 interdependence measure checks"
    )
    p.add_argument("--k", type=int, required=True, help="number of bits")
    p.add_argument(
        "--verify", action="store_true", help="exit 1 unless all defects vanish"
    )
    p.set_defaults(handler=_cmd_eta)

    p = sub.add_parser(
        "polytope", parents=[common], help="joining polytope linear programs"
    )
    p.add_argument("--config", required=True)
    p.add_argument("--action", required=True, metavar="NAME")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--independence", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--certify", action="store_true")
    mode.add_argument("--objective", metavar="NAME")
    p.add_argument("--minimize", action="store_true")
    p.set_defaults(handler=_cmd_polytope)

    p = sub.add_parser(
        "cocycle", parents=[common], help="skew product statistics"
    )
    p.add_argument("--config", required=True)
    p.add_argument("--cocycle", required=True, metavar="NAME")
    p.add_argument(
        "--stat", required=True, choices=("rigidity", "fraction", "average")
    )
    p.add_argument("--set", metavar="NAME")
    p.add_argument("--sequence", metavar="NAME")
    p.add_argument("--n-param", type=int, metavar="N")
    p.add_argument("--eps", metavar="P/Q")
    p.add_argument("--fiber-set-a", metavar="NAME")
    p.add_argument("--fiber-set-b", metavar="NAME")
    p.add_argument("--horizon", type=int, metavar="N")
    p.set_defaults(handler=_cmd_cocycle)

    p = sub.add_parser(
        "mixing", parents=[common], help="higher-order correlation sweeps"
    )
    p.add_argument("--config", required=True)
    p.add_argument("--automorphism", required=True, metavar="NAME")
    p.add_argument(
        "--sets", required=True, metavar="A0,A1,...", help="comma-separated set names"
    )
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--offsets", metavar="K1,K2,...")
    mode.add_argument("--sweep", type=int, metavar="K")
    p.set_defaults(handler=_cmd_mixing)

    p = sub.add_parser(
        "sample", parents=[common], help="seed-deterministic random extensions"
    )
    p.add_argument("--config", required=True)
    p.add_argument("--base", required=True, metavar="NAME")
    p.add_argument("--fiber", required=True, metavar="NAME")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--mode", required=True, choices=("iid-cocycle", "random-coboundary")
    )
    p.add_argument("--analyze", action="store_true")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("joining", help="joining file operations")
    jsub = p.add_subparsers(dest="joining_command", required=True)
    pv = jsub.add_parser(
        "verify", parents=[common], help="check the joining axioms of a tensor file"
    )
    pv.add_argument("--file", required=True)
    pv.add_argument("--config", help="config defining the action for --action")
    pv.add_argument("--action", metavar="NAME")
    pv.set_defaults(handler=_cmd_joining_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 2
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        payload, passed, digest_bytes = args.handler(args)
    except (InvalidInputError, PreconditionError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JoinlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload["digest"] = input_digest(argv, digest_bytes)
    text = render_report(payload)
    sys.stdout.write(text)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    elapsed = time.perf_counter() - start
    print(f"wall time: {elapsed:.3f} s", file=sys.stderr)
    return 0 if passed else 1
