"""
orbitres command line

Exit status: 0 on success, 1 when a computed table or certificate disagrees
with the catalog (a unified diff is printed), 2 on usage errors.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from orbitres import __version__
from orbitres.algebra.polyring import total_degree
from orbitres.catalog import CASE_IDS, BettiKind, load_case, normalize_case_id
from orbitres.core.exceptions import (
    ExtendedScopeError,
    InputError,
    NotRegisteredError,
    OrbitresError,
    VerificationMismatch,
)
from orbitres.core.logging import get_logger, setup_logging
from orbitres.equivariant.registry import registered_labels
from orbitres.services import AcceptanceService, CatalogService


logger = get_logger("cli")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# verbs and the options each one cannot do without
REQUIRED = {
    "case-list": (),
    "ideal": ("case", "orbit"),
    "resolve": ("case", "orbit"),
    "betti": ("case", "orbit"),
    "certify": ("case", "orbit"),
    "table": ("case",),
    "cone": ("case", "orbit"),
    "verify-all": (),
    "registry": (),
    "matrix": ("case", "label"),
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitres",
        description="Equivariant free resolutions of orbit closures in graded Lie algebra representations",
    )
    parser.add_argument("verb", choices=sorted(REQUIRED), help="Operation to run")
    parser.add_argument("--version", "-v", action="version", version=f"orbitres {__version__}")
    parser.add_argument("--case", "-c", help="Case id, e.g. E6a4 or G2a2")
    parser.add_argument("--orbit", "-o", type=int, help="Orbit id")
    parser.add_argument("--label", help="Registered differential label (matrix)")
    parser.add_argument("--target", choices=[k.value for k in BettiKind], default=BettiKind.RING.value,
                        help="Module to resolve: coordinate ring, normalization or cokernel")
    parser.add_argument("--degree-limit", type=int, help="Degree limit for the cone homology")
    parser.add_argument("--length-limit", type=int, help="Stop the resolution after this many steps")
    parser.add_argument("--format", choices=["grid", "triples"], default="grid", help="Betti table layout")
    parser.add_argument("--check", action="store_true", help="Compare with the stored table")
    parser.add_argument("--order", action="store_true", help="Also print the degeneration order (table)")
    parser.add_argument("--seed", type=int, help="Seed for random representatives")
    parser.add_argument("--desk-scale", action="store_true", help="Run only the acceptance criteria (verify-all)")
    parser.add_argument("--extended", action="store_true", help="Allow computations above desk scale")
    parser.add_argument("--output", help="Write the output to this file instead of standard output")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return parser


def _validate(args: argparse.Namespace) -> None:
    missing = [f"--{name}" for name in REQUIRED[args.verb] if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.verb} needs {' and '.join(missing)}")
    if args.case is not None:
        try:
            args.case = normalize_case_id(args.case)
        except InputError as exc:
            raise UsageError(str(exc))
    if args.verb in ("betti", "resolve") and args.check and args.format == "triples":
        raise UsageError("--check compares the table layout; drop --format triples")


def _service(args: argparse.Namespace) -> CatalogService:
    svc = CatalogService(args.case, seed=args.seed, extended=args.extended or None)
    if args.orbit is not None and args.orbit not in [o.id for o in svc.case.orbits]:
        raise UsageError(f"{args.case} has no orbit {args.orbit}; orbits are "
                         f"{', '.join(str(o.id) for o in svc.case.orbits)}")
    return svc


# -- verbs ---------------------------------------------------------------------------

def case_list(args) -> str:
    lines = []
    for case_id in CASE_IDS:
        case = load_case(case_id, seed=args.seed)
        stored = sorted({k for k, _ in case.expected_betti})
        lines.append(f"{case_id:5} {case.title}")
        lines.append(f"      ambient dimension {case.ambient_dimension}, {len(case.orbits)} orbits, "
                     f"table: {'yes' if case.table is not None else 'no'}, "
                     f"Betti tables for orbits {stored or 'none'}")
    return "\n".join(lines) + "\n"


def ideal(args) -> str:
    svc = _service(args)
    gens = svc.orbit_ideal(args.orbit)
    lines = [f"# {svc.case.id} orbit {args.orbit}: {len(gens)} generators"]
    lines.extend(f"{total_degree(p)}: {p.as_expr()}" for p in gens)
    return "\n".join(lines) + "\n"


def _render(table, fmt: str) -> str:
    return table.triples() if fmt == "triples" else table.render()


def resolve(args) -> str:
    svc = _service(args)
    C = svc.complex(args.orbit, args.target, args.length_limit)
    lines = [f"# {svc.case.id} orbit {args.orbit} {args.target}"]
    for i, module in enumerate(C.modules):
        twists = sorted(module.twists)
        summands = " + ".join(f"R({-t})^{twists.count(t)}" for t in sorted(set(twists))) or "0"
        lines.append(f"F{i}: {summands}")
    table = svc.betti(args.orbit, args.target, args.length_limit)
    return "\n".join(lines) + "\n" + _render(table, args.format)


def betti(args) -> str:
    svc = _service(args)
    if args.check:
        table = svc.check_betti(args.orbit, args.target, args.length_limit)
    else:
        table = svc.betti(args.orbit, args.target, args.length_limit)
    return _render(table, args.format)


def certify(args) -> str:
    svc = _service(args)
    cert = svc.certify(args.orbit)
    out = cert.summary() + cert.exactness.summary() + "\n"
    if not cert.passed:
        raise VerificationMismatch(f"{svc.case.id} orbit {args.orbit}: certificate failed", out)
    return out


def table(args) -> str:
    svc = _service(args)
    if svc.case.table is None and args.check:
        raise UsageError(f"{svc.case.id} has no stored containment table")
    result = svc.check_table() if args.check else svc.table()
    out = result.render()
    if result.partial:
        out += f"# columns {', '.join(map(str, result.unavailable))} need --extended\n"
    if args.order:
        out += svc.order(computed=True).hasse()
    return out


def cone(args) -> str:
    svc = _service(args)
    H = svc.cone(args.orbit, args.degree_limit)
    lines = [f"# {svc.case.id} orbit {args.orbit}: cone homology with {H.nrows} generators "
             f"of degrees {sorted(H.target.twists)}, {H.ncols} relations"]
    if H.nrows == 1:
        for p in svc.cone_ideal(args.orbit, args.degree_limit):
            lines.append(f"{total_degree(p)}: {p.as_expr()}")
    return "\n".join(lines) + "\n"


def verify_all(args) -> str:
    suite = AcceptanceService(extended=args.extended or None, seed=args.seed)
    results = suite.run()
    if not args.desk_scale:
        results += suite.stored_tables()
    lines = []
    for r in results:
        lines.append(r.line() if r.number else f"[{'PASS' if r.passed else 'FAIL'}] {r.title}")
        if r.detail and (not r.passed or r.number):
            lines.extend(f"    {d}" for d in r.detail.splitlines())
    out = "\n".join(lines) + "\n"
    failed = [r for r in results if not r.passed]
    if failed:
        raise VerificationMismatch(f"{len(failed)} of {len(results)} checks failed", out)
    return out


def registry(args) -> str:
    cases = [args.case] if args.case else list(CASE_IDS)
    lines = []
    for case_id in cases:
        labels = registered_labels(case_id)
        if labels:
            lines.append(f"{case_id}: {' '.join(labels)}")
    return "\n".join(lines) + "\n"


def matrix(args) -> str:
    return _service(args).export_matrix(args.label)


VERBS = {
    "case-list": case_list,
    "ideal": ideal,
    "resolve": resolve,
    "betti": betti,
    "certify": certify,
    "table": table,
    "cone": cone,
    "verify-all": verify_all,
    "registry": registry,
    "matrix": matrix,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    logger.debug("orbitres started", verb=args.verb, version=__version__)

    try:
        _validate(args)
        text = VERBS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"orbitres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, NotRegisteredError, ExtendedScopeError) as exc:
        print(f"orbitres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationMismatch as exc:
        _emit(exc.diff, args.output)
        print(f"orbitres: mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OrbitresError as exc:
        logger.error("verb failed", verb=args.verb, error=str(exc))
        print(f"orbitres: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH

    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
