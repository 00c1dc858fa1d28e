"""Command-line entry point: experiments and acceptance suites, each emitting a report.

Exit status is 0 when no case failed.  Inconclusive cases (horizon-bounded
refutations) are listed but do not fail the run.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from pathlib import Path

import numpy as np

from . import acceptance
from .classical.disc import disc_nonminimality_experiment
from .classical.odometer import (
    OdometerSpace,
    odometer_clopen_periodicity,
    odometer_periodic_density,
    random_points,
)
from .classical.tower import tower_check
from .constructions.el_tower import build_el_tower, build_el_set_family
from .constructions.block_schedule import build_block_schedule, enumerate_C_prefixes
from .metric import SpaceHandle, circle_space, euclidean_space, hausdorff_distance, load_family, load_set, real_line
from .report import Case, Report, status_of
from .symbolic.classify import classify
from .symbolic.petersen import PetersenHypothesisError, petersen_construct
from .symbolic.points import shift_space
from .symbolic.subshift import InadmissibleError, hitting_set, parse_subshift
from .torus import PlanePoint, base_points, segment_collapse_experiment, stable_decay, torus_space


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {v}")
    return v


def space_from_label(label: str) -> SpaceHandle:
    """Rebuild a space handle from the label written on the first line of a set file."""
    if label == "real":
        return real_line()
    if label == "plane":
        return euclidean_space()
    if label == "circle":
        return circle_space()
    if label == "torus:thom":
        return torus_space()
    if label.startswith("shift:"):
        parts = label.split(":")
        try:
            two_sided = parts[1] == "two-sided"
            depth = int(parts[2].split("=")[1])
        except (IndexError, ValueError):
            raise UsageError(f"malformed shift label {label!r}") from None
        return shift_space(depth, two_sided)
    raise UsageError(f"unknown space label {label!r}")


def _read_label(path: str) -> str:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    return first


# -- subcommands --------------------------------------------------------------------


def cmd_hausdorff(args, rep: Report) -> None:
    label = _read_label(args.a)
    if _read_label(args.b) != label:
        raise UsageError("--a and --b files carry different space labels")
    space = space_from_label(label)
    A = load_set(space, Path(args.a).read_text())
    B = load_set(space, Path(args.b).read_text())
    d = hausdorff_distance(space, A, B)
    rep.add(Case("hausdorff", "pass", d, None, None, f"space {label}, |A|={len(A)}, |B|={len(B)}"))


def cmd_hitset(args, rep: Report) -> None:
    S = parse_subshift(args.shift, args.two_sided)
    try:
        h = hitting_set(S, args.u, args.v, args.horizon)
    except InadmissibleError as e:
        raise UsageError(str(e)) from None
    rep.add(Case("hitset", "pass", list(h.members), args.horizon, None,
                 f"N([{args.u}],[{args.v}]) on {S.description}"))


def cmd_petersen(args, rep: Report) -> None:
    S = parse_subshift(args.shift)
    try:
        r = petersen_construct(S, args.u1, args.v1, args.u2, args.v2, horizon=args.horizon)
    except PetersenHypothesisError as e:
        rep.add(Case("petersen-hypothesis", "inconclusive", None, args.horizon, None,
                     f"{e} (horizon-bounded)"))
        return
    rep.add(Case("petersen-inclusion", status_of(r.inclusion_holds),
                 {"n1": r.n1, "n2": r.n2, "n0": r.n0, "n": r.n, "N(U3,V3)": list(r.n_u3v3)},
                 list(r.n_target), None,
                 f"U3={r.U3} V3={r.V3}; violations {list(r.violations)}"))


def cmd_classify(args, rep: Report) -> None:
    S = parse_subshift(args.shift, args.two_sided)
    res = classify(S, depth=args.depth, horizon=args.horizon, test_period=args.test_period)
    for flag, value in res.flags().items():
        if value:
            rep.add(Case(flag, "pass", True, None, None, f"holds at depth {res.depth}, horizon {res.horizon}"))
        else:
            fails = res.failures.get(flag, [])
            rep.add(Case(flag, "inconclusive", False, None, None,
                         f"refuted up to horizon {res.horizon} (horizon-bounded); first failure {fails[:1]}"))


def cmd_construct(args, rep: Report) -> None:
    if args.which == "c4":
        sched = build_block_schedule(args.max_n, args.perm_mode)
        if args.depth > sched.total_length:
            raise UsageError(f"--depth {args.depth} exceeds schedule length {sched.total_length}; raise --max-n")
        fam = enumerate_C_prefixes(sched, args.depth)
    else:
        tower = build_el_tower(args.k_max, args.max_len)
        if args.depth > tower.N(tower.k_max):
            raise UsageError(f"--depth {args.depth} exceeds N_{tower.k_max} = {tower.N(tower.k_max)}")
        fam = build_el_set_family(tower, args.depth)
    if args.out:
        Path(args.out).write_text(fam.dump())
    rep.add(Case(f"construct-{args.which}", "pass", len(fam), None, None, fam.generator))


def _write_csv(rows, header, dest) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    if dest:
        Path(dest).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def cmd_torus(args, rep: Report) -> None:
    if args.which == "decay":
        rng = np.random.default_rng(args.seed)
        rows, worst, above = [], 0.0, 0
        for _ in range(args.trials):
            a = PlanePoint(*map(float, rng.random(2)))
            s = float(rng.uniform(-1.0, 1.0))
            for r in stable_decay(a, s, args.jmax)[1:]:
                rows.append((r.j, r.measured, r.predicted, r.bound))
                if r.predicted:
                    worst = max(worst, abs(r.measured / r.predicted - 1.0))
                above += not r.measured < r.bound
        _write_csv(rows, ("j", "measured", "predicted", "bound"), args.csv)
        rep.add(Case("decay-ratio", status_of(worst <= 1e-9), worst, 0.0, 1e-9, "max relative deviation"))
        rep.add(Case("decay-bound", status_of(above == 0), above, 0, 0, "rows at or above |s| 2^-j"))
    else:
        rows = segment_collapse_experiment(base_points(args.bases, args.seed), args.m, args.samples, args.jmax)
        _write_csv([(r.j, r.hausdorff, r.bound, r.bound + r.slack, r.cdiam) for r in rows],
                   ("j", "measured", "predicted", "bound", "cdiam"), args.csv)
        excess = max(r.hausdorff - r.bound - r.slack for r in rows)
        rep.add(Case("collapse-hausdorff", status_of(excess <= 1e-12), excess, 0.0, 1e-12,
                     "max of d_H minus (M lambda_-^j + slack)"))


def cmd_odometer(args, rep: Report) -> None:
    if args.eps_exp > args.levels:
        raise UsageError("--eps-exp must not exceed --levels")
    S = OdometerSpace.dyadic(args.levels)
    n = S.modulus(args.eps_exp)
    rng = np.random.default_rng(args.seed)
    bad = []
    for _ in range(args.samples):
        k = int(rng.integers(1, n + 1))
        res = sorted(set(int(x) for x in rng.integers(0, n, k)))
        p = odometer_clopen_periodicity(S, args.eps_exp, res, n)
        if p.inconclusive or n % p.period:
            bad.append(res)
    rep.add(Case("clopen-periods-divide", status_of(not bad), len(bad), 0, 0,
                 f"random level-{args.eps_exp} clopen sets whose period does not divide {n}"))
    dens = odometer_periodic_density(S, args.eps_exp, random_points(S, args.samples, args.seed))
    rep.add(Case("periodic-density", status_of(dens.ok), dens.worst, dens.eps, 0,
                 "max d_H({x}, cylinder of x); compared with <="))


def cmd_disc(args, rep: Report) -> None:
    e = disc_nonminimality_experiment(n_terms=args.terms, horizon=args.horizon, eps=args.eps)
    rep.add(Case("orbit-approaches", status_of(e.q1 < args.eps), e.q1, args.eps, 0,
                 f"min d_H(f^m A, B') at m={e.q1_step}"))
    rep.add(Case("orbit-stays-away", status_of(e.q2 >= e.delta0), e.q2, e.delta0, 0,
                 f"min d_H(f^m B', A); delta0 fixed before iterating; {e.approximation}"))


def cmd_tower(args, rep: Report) -> None:
    space = space_from_label(_read_label(args.family))
    fam = load_family(space, Path(args.family).read_text())
    r = tower_check(space, fam)
    rep.add(Case("tower-square", status_of(r.ok), len(r.left), len(r.right), 0,
                 f"|union f_**(F)| vs |f_*(union F)| over {len(fam)} members"))


def cmd_verify(args, rep: Report) -> None:
    sub = acceptance.run_suite(args.suite, args.seed)
    for c in sub.cases:
        rep.add(c)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonneg_int, default=0, help="seed for random sampling (default 0)")
    common.add_argument("--out", metavar="FILE",
                        help="write the JSON report here instead of stdout (construct: the window file)")

    p = argparse.ArgumentParser(prog="hyperdyn", description="Hyperspace dynamics experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hausdorff", parents=[common], help="Hausdorff distance of two set files")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_hausdorff)

    s = sub.add_parser("hitset", parents=[common], help="hitting-time set N(U, V) on a subshift")
    s.add_argument("--shift", required=True)
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--horizon", type=_positive_int, required=True)
    s.add_argument("--two-sided", action="store_true")
    s.set_defaults(func=cmd_hitset)

    s = sub.add_parser("petersen", parents=[common], help="build (U3, V3) from two cylinder pairs")
    s.add_argument("--shift", required=True)
    for name in ("u1", "v1", "u2", "v2"):
        s.add_argument(f"--{name}", required=True)
    s.add_argument("--horizon", type=_positive_int, default=64)
    s.set_defaults(func=cmd_petersen)

    s = sub.add_parser("classify", parents=[common], help="transitivity, mixing, exactness at finite scale")
    s.add_argument("--shift", required=True)
    s.add_argument("--depth", type=_positive_int, default=2)
    s.add_argument("--horizon", type=_positive_int, default=32)
    s.add_argument("--test-period", type=_positive_int, default=3)
    s.add_argument("--two-sided", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", parents=[common], help="enumerate a constructed transitive set")
    s.add_argument("which", choices=("c4", "el"))
    s.add_argument("--depth", type=_positive_int, required=True)
    s.add_argument("--max-n", type=_positive_int, default=2)
    s.add_argument("--perm-mode", choices=("independent", "tour"), default="independent")
    s.add_argument("--max-len", type=_positive_int, default=3)
    s.add_argument("--k-max", type=_positive_int, default=6)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("torus", parents=[common], help="stable contraction and segment collapse")
    s.add_argument("which", choices=("decay", "collapse"))
    s.add_argument("--trials", type=_positive_int, default=1)
    s.add_argument("--jmax", type=_positive_int, default=15)
    s.add_argument("--m", type=_positive_float, default=1.0)
    s.add_argument("--samples", type=_positive_int, default=33)
    s.add_argument("--bases", type=_positive_int, default=16)
    s.add_argument("--csv", metavar="FILE", help="write the CSV table here instead of stdout")
    s.set_defaults(func=cmd_torus)

    s = sub.add_parser("odometer", parents=[common], help="dyadic odometer periodicity and density")
    s.add_argument("--levels", type=_positive_int, default=8)
    s.add_argument("--eps-exp", type=_nonneg_int, default=3)
    s.add_argument("--samples", type=_positive_int, default=64)
    s.set_defaults(func=cmd_odometer)

    s = sub.add_parser("disc", parents=[common], help="disc-map non-minimality experiment")
    s.add_argument("--terms", type=_positive_int, default=8)
    s.add_argument("--horizon", type=_nonneg_int, default=100_000)
    s.add_argument("--eps", type=_positive_float, default=0.05)
    s.set_defaults(func=cmd_disc)

    s = sub.add_parser("tower", parents=[common], help="union/induced-map square on a family file")
    s.add_argument("--family", required=True)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    s.add_argument("suite", choices=acceptance.SUITES + ("all",))
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> tuple[Report, int]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "torus" and args.which == "collapse" and args.m > 0 and args.samples < 2:
        parser.error("argument --samples: must be at least 2 when --m > 0")
    name = args.command + (f" {args.which}" if hasattr(args, "which") else "")
    if args.command == "verify":
        name = f"verify {args.suite}"
    rep = Report(name, args.seed)
    t0 = time.perf_counter()
    try:
        args.func(args, rep)
    except (UsageError, ValueError) as e:
        parser.error(str(e))
    rep.runtime_ms = (time.perf_counter() - t0) * 1000
    text = rep.to_json()
    # construct uses --out for the window file, torus prints CSV on stdout
    if args.out and args.command != "construct":
        Path(args.out).write_text(text)
    elif args.command != "torus":
        sys.stdout.write(text)
    for line in rep.summary_lines():
        if args.command == "verify" or not line.startswith("PASS"):
            print(line, file=sys.stderr)
    return rep, 0 if rep.ok else 1


def main(argv: list[str] | None = None) -> int:
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
