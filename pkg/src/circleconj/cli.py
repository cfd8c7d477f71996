"""Command-line front end.

Commands: analyze, reduce, verify, rotnum, growth, measure, sample.
Reports are written as sorted-key JSON (and CSV for tables), so identical
inputs and flags produce byte-identical outputs.

Exit codes: 0 success; 2 unreadable or malformed input; 3 orbit matching
failed at the working tolerance; 4 a requested conjugation to a
diffeomorphism is impossible (nontrivial orbit jump product); 5 the
reduction residual exceeded its tolerance.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

from . import instances, specio
from .analysis import has_d_property, jumps_report, orbit_connections
from .circle import JUMP_TOL, POINT_TOL, circle_dist
from .diagnostics import break_growth, invariant_measure_histogram
from .errors import AmbiguousMatch, CircleMapError, DPropertyFails
from .reduction import (CASE_TOL, REDUCE_TOL, conjugate_to_diffeo,
                        normalize_rotation_zero, reduce_to_prescribed,
                        two_break_to_rotation)
from .rotation import rotation_number
from .words import MapWord

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_AMBIGUOUS = 3
EXIT_NO_D = 4
EXIT_RESIDUAL = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    k_vector: Optional[tuple]
    family: str
    tol_point: float
    tol_jump: float
    tol_reduce: float
    iters: int
    seed: Optional[int]
    out: str

    def as_payload(self) -> dict:
        return asdict(self)


def _tolerances_payload(cfg: RunConfig) -> dict:
    return {"point": cfg.tol_point, "jump": cfg.tol_jump, "reduce": cfg.tol_reduce}


def _break_table(f: MapWord, cfg: RunConfig) -> list:
    return [{"point": r.point.value, "d_minus": r.d_minus, "d_plus": r.d_plus,
             "jump": r.jump}
            for r in jumps_report(f, cfg.tol_jump, cfg.tol_point)]


def _connections_payload(conns) -> list:
    return [{"representative": c.representative.value,
             "offsets": list(c.offsets),
             "jumps": list(c.jumps),
             "points": list(c.points),
             "span": c.N,
             "orbit_jump_product": c.pi_s_orbit(),
             "weighted_orbit_product": c.pi_orbit()}
            for c in conns]


def _rotation_payload(est) -> dict:
    return {"value": est.value, "n_iter": est.n_iter,
            "error_bound": est.error_bound, "base_point": est.base_point,
            "continued_fraction": list(est.cf), "rationality": est.rationality,
            "rational_approx": list(est.rational_approx) if est.rational_approx else None}


def _out_path(cfg: RunConfig, name: str) -> str:
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def cmd_analyze(cfg: RunConfig) -> int:
    f = specio.read_word(cfg.inputs[0])
    conns = orbit_connections(f, tol=cfg.tol_point, jump_tol=cfg.tol_jump)
    ok, sheet = has_d_property(f, conns, cfg.tol_jump)
    est = rotation_number(f, cfg.iters, point_tol=cfg.tol_point)
    report = {
        "input": cfg.inputs[0],
        "tolerances": _tolerances_payload(cfg),
        "breaks": _break_table(f, cfg),
        "connections": _connections_payload(conns),
        "invariants": {
            "total_jump_product": sheet.pi_s,
            "weighted_product": sheet.pi,
            "bookkeeping_product": sheet.sigma,
            "d_property": ok,
            "orbit_products": list(sheet.orbit_products),
        },
        "rotation": _rotation_payload(est),
    }
    path = _out_path(cfg, f"{_stem(cfg.inputs[0])}.analysis.json")
    specio.write_json(path, report)
    print(f"breaks: {len(report['breaks'])}, connections: {len(conns)}, "
          f"d_property: {ok} (jump tol {cfg.tol_jump:g})")
    print(f"rotation number ~ {est.value:.9f} +- {est.error_bound:g}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_reduce(cfg: RunConfig, to_diffeo: bool, normalize_rho: bool) -> int:
    f = specio.read_word(cfg.inputs[0])
    if normalize_rho:
        result = normalize_rotation_zero(f, cfg.family, strict=False,
                                         reduce_tol=cfg.tol_reduce,
                                         point_tol=cfg.tol_point,
                                         jump_tol=cfg.tol_jump)
    elif to_diffeo:
        result = conjugate_to_diffeo(f, cfg.family, strict=False,
                                     reduce_tol=cfg.tol_reduce,
                                     point_tol=cfg.tol_point,
                                     jump_tol=cfg.tol_jump)
    else:
        ks = list(cfg.k_vector) if cfg.k_vector else None
        family = cfg.family if cfg.family != "auto" else "pe"
        result = reduce_to_prescribed(f, ks, family, point_tol=cfg.tol_point,
                                      jump_tol=cfg.tol_jump)
    stem = _stem(cfg.inputs[0])
    specio.write_word(_out_path(cfg, f"{stem}.conjugator.json"), result.conjugator)
    specio.write_word(_out_path(cfg, f"{stem}.reduced.json"), result.reduced)
    report = {
        "input": cfg.inputs[0],
        "tolerances": _tolerances_payload(cfg),
        "family": result.family,
        "case": result.case,
        "k_vector": list(result.k_vector),
        "bookkeeping_product": result.sigma,
        "weighted_product": result.pi,
        "total_jump_product": result.pi_s,
        "d_property": result.d_property,
        "fixed_point": result.fixed_point,
        "predicted": [{"point": p.point.value, "jump": p.jump,
                       "connection": p.connection, "offset": p.offset}
                      for p in result.predicted],
        "measured": [{"point": r.point.value, "jump": r.jump}
                     for r in result.measured],
        "residual": result.residual,
    }
    path = _out_path(cfg, f"{stem}.reduction.json")
    specio.write_json(path, report)
    print(f"family {result.family}, case {result.case}, "
          f"residual {result.residual:.3e} (tol {cfg.tol_reduce:g})")
    print(f"wrote {path}")
    if result.residual > cfg.tol_reduce:
        print("residual exceeds tolerance", file=sys.stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_verify(cfg: RunConfig, grid: int) -> int:
    f = specio.read_word(cfg.inputs[0])
    h = specio.read_word(cfg.inputs[1])
    F = specio.read_word(cfg.inputs[2])
    sup = 0.0
    for i in range(grid):
        x = i / grid
        sup = max(sup, circle_dist(F(h(x)), h(f(x))))
    built = h @ f @ h.inverse()
    jump_rows = []
    jump_dev = 0.0
    for p in sorted(set(F.candidate_breaks(cfg.tol_point))
                    | set(built.candidate_breaks(cfg.tol_point))):
        ja = F.jump(p, cfg.tol_point)
        jb = built.jump(p, cfg.tol_point)
        jump_rows.append({"point": p, "jump_given": ja, "jump_conjugated": jb})
        jump_dev = max(jump_dev, abs(ja - jb))
    report = {
        "inputs": {"f": cfg.inputs[0], "h": cfg.inputs[1], "F": cfg.inputs[2]},
        "tolerances": _tolerances_payload(cfg),
        "grid": grid,
        "conjugacy_sup_distance": sup,
        "jump_table": jump_rows,
        "max_jump_deviation": jump_dev,
    }
    path = _out_path(cfg, f"{_stem(cfg.inputs[2])}.verification.json")
    specio.write_json(path, report)
    ok = sup <= cfg.tol_reduce and jump_dev <= cfg.tol_reduce
    print(f"conjugacy sup distance {sup:.3e}, max jump deviation {jump_dev:.3e} "
          f"(tol {cfg.tol_reduce:g})")
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_RESIDUAL


def cmd_rotnum(cfg: RunConfig, base: float) -> int:
    f = specio.read_word(cfg.inputs[0])
    est = rotation_number(f, cfg.iters, base_point=base, point_tol=cfg.tol_point)
    path = _out_path(cfg, f"{_stem(cfg.inputs[0])}.rotnum.json")
    specio.write_json(path, {"input": cfg.inputs[0],
                             "rotation": _rotation_payload(est)})
    print(f"rotation number ~ {est.value:.9f} +- {est.error_bound:g} "
          f"({est.rationality})")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_growth(cfg: RunConfig, n_max: int) -> int:
    f = specio.read_word(cfg.inputs[0])
    table = break_growth(f, n_max, cfg.tol_jump, cfg.tol_point)
    lines = ["n,breaks,max_abs_log_jump"]
    lines += [f"{n},{c},{m!r}" for n, c, m in table.csv_rows()]
    path = _out_path(cfg, f"{_stem(cfg.inputs[0])}.growth.csv")
    specio.write_text(path, "\n".join(lines) + "\n")
    last = table.rows[-1]
    print(f"breaks of the n-th iterate, n <= {n_max}: "
          f"final count {last.break_count} (jump tol {cfg.tol_jump:g})")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_measure(cfg: RunConfig, bins: int) -> int:
    f = specio.read_word(cfg.inputs[0])
    hist = invariant_measure_histogram(f, cfg.iters, bins, seed=cfg.seed)
    lines = ["bin_left,mass"]
    lines += [f"{left!r},{mass!r}" for left, mass in hist.csv_rows()]
    path = _out_path(cfg, f"{_stem(cfg.inputs[0])}.measure.csv")
    specio.write_text(path, "\n".join(lines) + "\n")
    print(f"orbit histogram over {bins} bins, {cfg.iters} points: "
          f"top-decile mass {hist.top_decile_mass:.4f}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sample(cfg: RunConfig, name: Optional[str], list_only: bool) -> int:
    if list_only or name is None:
        for inst in instances.suite():
            flag = "D" if inst.d_property else "-"
            print(f"{inst.name:18s} [{flag}] {inst.description}")
        return EXIT_OK
    inst = instances.get(name)
    path = _out_path(cfg, f"{inst.name}.json")
    specio.write_word(path, inst.f, provenance=inst.provenance,
                      meta={"name": inst.name, "description": inst.description})
    print(f"wrote {path}")
    return EXIT_OK


def _parse_k(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad k vector {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-point", type=float, default=POINT_TOL,
                        help="circle-point identity tolerance")
    common.add_argument("--tol-jump", type=float, default=JUMP_TOL,
                        help="|jump-1| threshold for a genuine break")
    common.add_argument("--tol-reduce", type=float, default=REDUCE_TOL,
                        help="allowed measured-vs-predicted jump deviation")
    common.add_argument("--iters", type=int, default=100_000,
                        help="orbit length for rotation numbers / histograms")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for sampled starts")
    common.add_argument("--out", default=".", help="output directory")

    ap = argparse.ArgumentParser(
        prog="circleconj",
        description="Analyze and constructively conjugate piecewise-smooth "
                    "circle homeomorphisms.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="break table, connections, invariants")
    p.add_argument("input")
    p.add_argument("--k", type=_parse_k, default=None)

    p = sub.add_parser("reduce", parents=[common], help="construct a conjugator")
    p.add_argument("input")
    p.add_argument("--k", type=_parse_k, default=None)
    p.add_argument("--family", choices=("pl", "pq", "pe", "auto"), default="auto")
    p.add_argument("--to-diffeo", action="store_true",
                   help="require a numerically smooth result")
    p.add_argument("--normalize-rho", action="store_true",
                   help="additionally make the conjugator fix a point")

    p = sub.add_parser("verify", parents=[common],
                       help="check F = h o f o h^-1 and the jumps")
    p.add_argument("map_f")
    p.add_argument("conjugator")
    p.add_argument("reduced")
    p.add_argument("--grid", type=int, default=1000)

    p = sub.add_parser("rotnum", parents=[common], help="rotation number estimate")
    p.add_argument("input")
    p.add_argument("--base", type=float, default=0.0)

    p = sub.add_parser("growth", parents=[common],
                       help="break counts of the iterates, as CSV")
    p.add_argument("input")
    p.add_argument("--n-max", type=int, default=32)

    p = sub.add_parser("measure", parents=[common], help="orbit histogram, as CSV")
    p.add_argument("input")
    p.add_argument("--bins", type=int, default=100)

    p = sub.add_parser("sample", parents=[common], help="emit a bundled instance")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    inputs: tuple = ()
    if args.command == "verify":
        inputs = (args.map_f, args.conjugator, args.reduced)
    elif args.command != "sample":
        inputs = (args.input,)
    cfg = RunConfig(
        command=args.command,
        inputs=inputs,
        k_vector=getattr(args, "k", None),
        family=getattr(args, "family", "auto"),
        tol_point=args.tol_point,
        tol_jump=args.tol_jump,
        tol_reduce=args.tol_reduce,
        iters=args.iters,
        seed=args.seed,
        out=args.out,
    )
    try:
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "reduce":
            return cmd_reduce(cfg, args.to_diffeo, args.normalize_rho)
        if args.command == "verify":
            return cmd_verify(cfg, args.grid)
        if args.command == "rotnum":
            return cmd_rotnum(cfg, args.base)
        if args.command == "growth":
            return cmd_growth(cfg, args.n_max)
        if args.command == "measure":
            return cmd_measure(cfg, args.bins)
        if args.command == "sample":
            return cmd_sample(cfg, args.name, args.list)
        raise AssertionError(args.command)
    except specio.SpecError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except AmbiguousMatch as e:
        print(f"orbit matching failed: {e}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except DPropertyFails as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_NO_D
    except CircleMapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
