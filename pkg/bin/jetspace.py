#!/usr/bin/env python3
"""jetspace: Witt vectors, jet algebras and formal groups over a ramified p-adic base, and checks of the
kernel and torsion theorems on finite test algebras.

    jetspace witt-poly --p 3 --n 2 --op add --format json     universal S_i / P_i / N_i / F_i
    jetspace ghost --vector 1,2,3                             ghost components over O (--inverse: back)
    jetspace lateral --n 3 --iterate 2                        first entry of (F⁺)^i(0; b_1, …, b_n)
    jetspace jet-coords --n 3                                 Witt coordinates p_i and p_i⁺
    jetspace group-law --law Gm --op certify --D 64           law transformations, log/exp, certificate
    jetspace verify main --n 1..3 --algebras catalog.json     verification suites (or `all`)

Every subcommand takes the global flags (--p --e --eisenstein --n --D --seed --format --report --config
--algebras --workers --size-limit). Values come from defaults, then JETSPACE_* variables (a `.env` in the
working directory counts), then the --config JSON5 file, then the flags.

Exit status: 0 success, 1 a red or skipped check, 2 a bad config, catalog, law file or argument. Reports go to stdout
(and to --report); ✓/✗ verdict lines and progress go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from formal_groups import (
    certify_additive_iso,
    exponential,
    kernel_law,
    law_to_data,
    logarithm,
    named_law,
    scale_law,
    twist_phi,
)
from jet_algebras import kernel_coordinates_inverse, kernel_frobenius_pullback, kernel_ring, witt_coordinates
from padic_base import JetspaceError
from reports import Check, header_line, print_verdicts, render, report
from run_config import SUITES, RunConfig, load_config
from suites import run_suites
from witt_core import (
    UNIVERSAL_OPS,
    ghost,
    ghost_inverse,
    ghost_vector,
    polynomial_terms,
    universal_polynomials,
    universal_ring,
    witt_vector,
)
from witt_shifted import iterate_closed_form, iterate_first_entry

LAW_OPS = ("scale", "twist", "kernel", "log", "exp", "certify")
UNIVERSAL_NAMES = {"add": "S", "mul": "P", "neg": "N", "frobenius": "F"}


# ── output ───────────────────────────────────────────────────────────────────


def emit(config: RunConfig, document: Mapping[str, Any], lines: Sequence[str]) -> None:
    """The document as JSON, or the header and `lines` as text; to stdout and to --report when given."""
    header = config.header()
    if config.format == "json":
        text = json.dumps({"header": header, **document}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        text = "\n".join([header_line(header), *lines]) + "\n"
    sys.stdout.write(text)
    if config.report:
        Path(config.report).write_text(text, encoding="utf-8")


# ── subcommands ──────────────────────────────────────────────────────────────


def witt_poly(config: RunConfig, args: argparse.Namespace) -> int:
    base = config.base
    n = config.n[1]
    letter = UNIVERSAL_NAMES[args.op]
    polynomials = universal_polynomials(base, n, args.op)
    ring = universal_ring(base, n)
    document = {
        "op": args.op,
        "polynomials": [
            {"index": i, "name": f"{letter}_{i}", "terms": polynomial_terms(base, n, poly)} for i, poly in enumerate(polynomials)
        ],
    }
    lines = [f"{letter}_{i} = {ring.format(poly)}" for i, poly in enumerate(polynomials)]
    emit(config, document, lines)
    return 0


def _integers(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as bad:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from bad


def ghost_command(config: RunConfig, args: argparse.Namespace) -> int:
    base = config.base
    if args.inverse:
        vector = ghost_inverse(ghost_vector(base, args.vector))
        document = {"ghost": [str(c) for c in args.vector], "vector": [str(c) for c in vector.components]}
        lines = [f"a_{i} = {c}" for i, c in enumerate(vector.components)]
    else:
        image = ghost(witt_vector(base, args.vector))
        document = {"vector": [str(c) for c in args.vector], "ghost": [str(c) for c in image.components]}
        lines = [f"w_{i} = {c}" for i, c in enumerate(image.components)]
    emit(config, document, lines)
    return 0


def lateral(config: RunConfig, args: argparse.Namespace) -> int:
    base = config.base
    n = config.n[1]
    i = args.iterate
    ring, entry = iterate_first_entry(base, n, i)
    readings = {f"b_{last}": ring.equal(entry, iterate_closed_form(ring, i, last)) for last in (i, i + 1)}
    confirmed = [name for name, ok in readings.items() if ok]
    document = {"iterate": i, "n": n, "first_entry": ring.format(entry), "readings": readings}
    lines = [
        f"(F⁺)^{i}(0; b_1, …, b_{n}) first entry = {ring.format(entry)}",
        f"ghost oracle confirms the reading ending in π^{i}·{', '.join(confirmed) or 'neither'}",
    ]
    emit(config, document, lines)
    return 0


def jet_coords(config: RunConfig, args: argparse.Namespace) -> int:
    base = config.base
    n = config.n[1]
    coordinates = witt_coordinates(base, n)
    ring = coordinates.algebra.ring
    p = [ring.format(value) for value in coordinates["x"]]
    p_plus = [ring.format(value) for value in coordinates.kernel["x"]]
    document: dict[str, Any] = {"n": n, "p": p, "p_plus": p_plus}
    lines = [f"p_{i} = {value}" for i, value in enumerate(p)]
    lines += [f"p_{i}⁺ = {value}" for i, value in enumerate(p_plus, start=1)]
    if n >= 1:
        kernel = kernel_ring(base, n)
        inverse = [kernel.format(x) for x in kernel_coordinates_inverse(base, n)]
        pullback = [kernel.format(f) for f in kernel_frobenius_pullback(base, n)]
        document["kernel_jets"] = inverse
        document["lateral_pullback"] = pullback
        lines += [f"x^({k})|x=0 = {value}" for k, value in enumerate(inverse, start=1)]
        lines += [f"f*(p{k}) = {value}" for k, value in enumerate(pullback, start=1)]
    emit(config, document, lines)
    return 0


def group_law(config: RunConfig, args: argparse.Namespace) -> int:
    base = config.base
    D = config.D
    F = named_law(base, config.law, D, config.rng("group-law"))
    if args.op in ("scale", "twist", "kernel"):
        if args.op == "scale":
            result = scale_law(F, args.scale)
        elif args.op == "twist":
            result = twist_phi(F)
        else:
            result = kernel_law(F)
        data = law_to_data(result)
        lines = [f"{result.name} = {result.ring.format(result.series)} + O(deg {D + 1})"]
        emit(config, {"law": data}, lines)
        return 0
    if args.op in ("log", "exp"):
        series = logarithm(F, D) if args.op == "log" else exponential(F, D)
        rows = [{"j": j, "coefficient": str(c), "valuation": series.valuations[j]} for j, c in enumerate(series.coefficients) if j]
        lines = [f"{series.name}: {series.format()}"]
        lines += [f"v(c_{row['j']}) = {row['valuation']:g}" for row in rows]
        emit(config, {"series": series.name, "coefficients": rows}, lines)
        return 0
    certificate = certify_additive_iso(F, D)
    check = Check.of(f"{F.name} ≅ Ĝ_a certified to degree {D}", certificate.certified, certificate.reason)
    result = report(f"certify {F.name} D={D}", [check])
    _write_reports(config, [result])
    return 0 if result.green else 1


def _write_reports(config: RunConfig, reports: Sequence) -> None:
    text = render(reports, config.header(), config.format)
    sys.stdout.write(text)
    if config.report:
        Path(config.report).write_text(text, encoding="utf-8")
    print_verdicts(reports)


def verify(config: RunConfig, args: argparse.Namespace) -> int:
    reports = run_suites(config)
    _write_reports(config, reports)
    return 0 if all(r.green for r in reports) else 1


# ── arguments ────────────────────────────────────────────────────────────────


def _global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--p", type=int, help="residue characteristic (default 3)")
    flags.add_argument("--e", type=int, help="ramification index (default 1)")
    flags.add_argument("--eisenstein", help="E highest degree first, comma separated (default T^e − p)")
    flags.add_argument("--n", help="jet order or range a..b")
    flags.add_argument("--D", type=int, help="degree bound for laws and series")
    flags.add_argument("--seed", type=int, help="seed of every sampled check")
    flags.add_argument("--format", choices=["json", "text"], help="report format (default text)")
    flags.add_argument("--report", help="also write the report to this path")
    flags.add_argument("--config", help="JSON5 config file")
    flags.add_argument("--algebras", help="JSON5 catalog of test algebras")
    flags.add_argument("--workers", type=int, help="processes for verification tasks (default 1)")
    flags.add_argument("--size-limit", dest="size_limit", type=int, help="largest enumerated group")
    return flags


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(prog="jetspace", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("witt-poly", parents=[flags], help="universal Witt polynomials")
    command.add_argument("--op", choices=UNIVERSAL_OPS, default="add")
    command.set_defaults(run=witt_poly)

    command = commands.add_parser("ghost", parents=[flags], help="ghost components of a Witt vector over O")
    command.add_argument("--vector", type=_integers, required=True, help="components (or ghosts) a_0,…,a_n")
    command.add_argument("--inverse", action="store_true", help="read --vector as ghost components and invert")
    command.set_defaults(run=ghost_command)

    command = commands.add_parser("lateral", parents=[flags], help="iterated lateral Frobenius")
    command.add_argument("--iterate", type=int, default=1, help="i in (F⁺)^i, 1 ≤ i ≤ n − 1")
    command.set_defaults(run=lateral)

    command = commands.add_parser("jet-coords", parents=[flags], help="Witt coordinates of J_nA")
    command.set_defaults(run=jet_coords)

    command = commands.add_parser("group-law", parents=[flags], help="formal group law operations")
    command.add_argument("--law", help="Ga, Gm, Gm{n}, elliptic, random or a law file (default Gm)")
    command.add_argument("--op", choices=LAW_OPS, default="certify")
    command.add_argument("--scale", type=int, default=1, help="n for --op scale")
    command.set_defaults(run=group_law)

    command = commands.add_parser("verify", parents=[flags], help="run verification suites")
    command.add_argument("suites", nargs="*", metavar="suite", help=f"{', '.join(SUITES)} or all (default all)")
    command.set_defaults(run=verify)
    return parser


def config_from(args: argparse.Namespace) -> RunConfig:
    flags = {
        key: getattr(args, key, None)
        for key in ("p", "e", "eisenstein", "n", "D", "seed", "format", "report", "algebras", "workers", "size_limit", "law")
    }
    if args.command == "verify" and args.suites:
        flags["suites"] = args.suites
    return load_config(flags, args.config)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from(args)
        return args.run(config, args)
    except JetspaceError as failure:
        sys.stderr.write(f"jetspace: {failure}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
