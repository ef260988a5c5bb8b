#!python3
import argparse
import cProfile
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from manifold.errors import ManifoldError
from manifold.families import build
from manifold.homology import h1
from manifold.modes import Family_Id, Preset_Id, Tree_Strategy
from manifold.presentation import (
    preset_presentation,
    presentation_from_cw,
    presentation_from_pairings,
    product_relator_matches_display,
    reduced_family_presentation,
    reduction_steps,
    simplify,
)
from manifold.symmetry import singularity_report
from ui.documents import parse_complex, serialize_complex, serialize_presentation
from ui.info import get_analysis_lines, get_components_summary, get_report_lines, get_table_lines
from utils import defaults
from utils.timer import timing_wrapper

logger = logging.getLogger(__name__)

PRESETS = {
    "g25": Preset_Id.G25,
    "h25": Preset_Id.H25,
    "dual24": Preset_Id.DUAL24,
    "seifert": Preset_Id.SEIFERT_M24_2,
}


def _family(text):
    try:
        return Family_Id.parse(text)
    except ManifoldError:
        raise argparse.ArgumentTypeError(f"unknown family '{text}'") from None


def _presentation(args):
    if getattr(args, "preset", None):
        return preset_presentation(PRESETS[args.preset], 1 if args.n is None else args.n)
    complex_ = build(args.family, args.n)
    tree = Tree_Strategy[args.tree.upper()]
    if args.mode == "cw":
        p = presentation_from_cw(complex_, tree)
        return simplify(p) if args.simplify else p
    if not args.simplify:
        return presentation_from_pairings(complex_)
    if args.verbose:
        for step in reduction_steps(args.family, args.n)[1:]:
            print(f"# eliminated {step.eliminated}: {len(step.presentation.generators)} generators")
    if args.family == Family_Id.M24:
        product_relator_matches_display(args.n)
    return reduced_family_presentation(args.family, args.n)


def run_gen(args):
    text = serialize_complex(build(args.family, args.n))
    if args.out:
        Path(args.out).write_text(text)
        logger.info(f"Saved {args.family.name}({args.n}) to {args.out}")
    else:
        sys.stdout.write(text)


def run_analyze(args):
    if args.file:
        complex_ = parse_complex(Path(args.file).read_text())
    else:
        complex_ = build(args.family, args.n)
    print("\n".join(get_analysis_lines(complex_, traces=args.verbose > 0)))


def run_pi1(args):
    sys.stdout.write(serialize_presentation(_presentation(args)))


def run_h1(args):
    print(h1(_presentation(args)))


def run_symmetry(args):
    print("\n".join(get_report_lines(singularity_report(args.family, args.n, args.step))))


@timing_wrapper
def table_row(family: Family_Id, n: int) -> tuple:
    homology = h1(presentation_from_pairings(build(family, n)))
    report = singularity_report(family, n, defaults.rotation_step(family, n))
    return n, str(homology), get_components_summary(report)


def run_table(args):
    numbers = list(range(args.first, args.last + 1))
    families = [args.family] * len(numbers)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(table_row, families, numbers))
    else:
        rows = list(map(table_row, families, numbers))
    print("\n".join(get_table_lines(rows)))


def run_crosscheck(args):
    complex_ = build(args.family, args.n)
    routes = {
        "pairing": presentation_from_pairings(complex_),
        "cw first": presentation_from_cw(complex_, Tree_Strategy.FIRST),
        "cw last": presentation_from_cw(complex_, Tree_Strategy.LAST),
        "reduced": reduced_family_presentation(args.family, args.n),
    }
    if args.family == Family_Id.M24:
        routes["dual24"] = preset_presentation(Preset_Id.DUAL24, args.n)
    elif args.n % 2:
        routes["g25"] = preset_presentation(Preset_Id.G25, args.n)
    else:
        routes["h25"] = preset_presentation(Preset_Id.H25, args.n)
    groups = {route: h1(p) for route, p in routes.items()}
    for route, group in groups.items():
        print(f"{route}: {group}")
    if len(set(groups.values())) != 1:
        raise ManifoldError(f"{args.family.name}({args.n}): extraction routes disagree on H_1")


def _add_complex_arguments(parser, required=True):
    parser.add_argument("-f", "--family", type=_family, required=required, help="m24 or m25")
    parser.add_argument("-n", "--n", type=int, required=required)


def _add_presentation_arguments(parser):
    _add_complex_arguments(parser, required=False)
    parser.add_argument("-m", "--mode", choices=("pairing", "cw"), default="pairing")
    parser.add_argument("--simplify", action="store_true", help="reduce with Tietze moves")
    parser.add_argument("--tree", choices=("first", "last"), default=defaults.tree_strategy.name.lower())
    parser.add_argument("--preset", choices=sorted(PRESETS), help="closed-form presentation instead of a complex")


def get_parser():
    parser = argparse.ArgumentParser(prog="polyman", description="Face-pairing manifolds M24(n) and M25(n)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="orbit traces; repeat for debug logs")
    parser.add_argument("-p", "--profile", help="activate profiling", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="write a complex document")
    _add_complex_arguments(gen)
    gen.add_argument("-o", "--out", help="output file")
    gen.set_defaults(run=run_gen)

    analyze = commands.add_parser("analyze", help="cell counts, Euler characteristic, orbit census")
    _add_complex_arguments(analyze, required=False)
    analyze.add_argument("--file", help="complex document to read instead of a family")
    analyze.set_defaults(run=run_analyze)

    pi1 = commands.add_parser("pi1", help="print a presentation document")
    _add_presentation_arguments(pi1)
    pi1.set_defaults(run=run_pi1)

    homology = commands.add_parser("h1", help="first homology as invariant factors")
    _add_presentation_arguments(homology)
    homology.set_defaults(run=run_h1)

    symmetry = commands.add_parser("symmetry", help="singular set of the rotation quotient")
    _add_complex_arguments(symmetry)
    symmetry.add_argument("-s", "--step", type=int, default=1)
    symmetry.set_defaults(run=run_symmetry)

    table = commands.add_parser("table", help="homology and singular components for a range of n")
    table.add_argument("-f", "--family", type=_family, required=True)
    table.add_argument("--from", dest="first", type=int, default=defaults.table_first)
    table.add_argument("--to", dest="last", type=int, default=defaults.table_last)
    table.add_argument("-j", "--jobs", type=int, default=defaults.table_jobs)
    table.set_defaults(run=run_table)

    crosscheck = commands.add_parser("crosscheck", help="compare H_1 across every extraction route")
    _add_complex_arguments(crosscheck)
    crosscheck.set_defaults(run=run_crosscheck)
    return parser


def check_arguments(parser, args):
    """Usage errors argparse cannot express: a complex needs both --family and --n."""
    complete = getattr(args, "family", None) is not None and getattr(args, "n", None) is not None
    if args.command in ("pi1", "h1"):
        if args.preset:
            if args.n is None and PRESETS[args.preset] != Preset_Id.SEIFERT_M24_2:
                parser.error(f"--preset {args.preset} needs --n")
        elif not complete:
            parser.error("give --family and --n, or --preset")
    elif args.command == "analyze" and not args.file and not complete:
        parser.error("give --family and --n, or --file")


def main(argv=None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)
    check_arguments(parser, args)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)
    try:
        if args.profile:
            # https://docs.python.org/3/library/profile.html#module-cProfile
            cProfile.runctx("args.run(args)", globals(), {"args": args}, sort="cumtime")
        else:
            args.run(args)
    except (ManifoldError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
