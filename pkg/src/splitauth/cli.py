"""Command-line interface.

Subcommands compose into pipelines over three JSON artifact kinds:

  base-block family  {"v", "u", "c", "base_blocks"}
  design             {"v", "t", "blocks"} (+ "orbit_lengths" provenance)
  code               {"u", "v", "rules", "key_dist", "source_dist"
                      [, "split_dist"]}, rationals as "p/q" strings

Exit codes: 0 = all checks pass, 1 = a verification or security claim
fails, 2 = malformed input.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .acode import (
    SplittingACode,
    code_from_design,
    render_matrix,
    rule_defects,
    subscript,
)
from .construct import (
    BaseBlockFamily,
    OrbitInfo,
    SplittingDesign,
    develop_cyclic,
    family_u2,
)
from .security import SecurityReport, analyze, rule_count_floor
from .verify import VerificationResult, verify_design


class _InputError(Exception):
    """Malformed input: unreadable file, bad JSON, schema violation."""


class _ClaimError(Exception):
    """A verification or security claim failed; carries report lines."""

    def __init__(self, lines: list[str]):
        super().__init__("\n".join(lines))
        self.lines = lines


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: invalid JSON: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise _InputError(f"cannot write {out}: {exc}") from exc


def _require_int(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise _InputError(f"{where}: field {key!r} must be an integer")
    return value


def _parse_blocks(raw, where: str) -> tuple[tuple[tuple[int, ...], ...], ...]:
    if not isinstance(raw, list):
        raise _InputError(f"{where}: must be a list of blocks")
    blocks = []
    for block in raw:
        if not isinstance(block, list):
            raise _InputError(f"{where}: block {block!r} must be a list of parts")
        parts = []
        for part in block:
            if not isinstance(part, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in part
            ):
                raise _InputError(f"{where}: part {part!r} must be a list of integers")
            parts.append(tuple(part))
        blocks.append(tuple(parts))
    return tuple(blocks)


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise _InputError(f"{where}: {value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise _InputError(f"{where}: {value!r} is not a rational") from exc
    raise _InputError(
        f"{where}: {value!r} is not exact; use \"p/q\" strings, not floats"
    )


def _parse_dist(raw, where: str) -> tuple[Fraction, ...]:
    if not isinstance(raw, list):
        raise _InputError(f"{where}: must be a list of rationals")
    return tuple(_parse_rational(x, where) for x in raw)


def _load_family(obj, where: str) -> BaseBlockFamily:
    if not isinstance(obj, dict):
        raise _InputError(f"{where}: expected a JSON object")
    v = _require_int(obj, "v", where)
    u = _require_int(obj, "u", where)
    c = _require_int(obj, "c", where)
    base_blocks = _parse_blocks(obj.get("base_blocks"), f"{where}: base_blocks")
    try:
        return BaseBlockFamily(v=v, u=u, c=c, base_blocks=base_blocks)
    except ValueError as exc:
        raise _InputError(f"{where}: {exc}") from exc


def _load_design(obj, where: str) -> SplittingDesign:
    if not isinstance(obj, dict):
        raise _InputError(f"{where}: expected a JSON object")
    if "base_blocks" in obj:
        return develop_cyclic(_load_family(obj, where))
    v = _require_int(obj, "v", where)
    t = _require_int(obj, "t", where) if "t" in obj else 2
    blocks = _parse_blocks(obj.get("blocks"), f"{where}: blocks")
    orbits: tuple[OrbitInfo, ...] = ()
    if "orbit_lengths" in obj:
        raw = obj["orbit_lengths"]
        if not isinstance(raw, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in raw
        ):
            raise _InputError(f"{where}: orbit_lengths must be a list of integers")
        orbits = tuple(
            OrbitInfo(base_index=i, length=n, is_full=n == v)
            for i, n in enumerate(raw)
        )
    try:
        return SplittingDesign(v=v, blocks=blocks, t=t, orbits=orbits)
    except ValueError as exc:
        raise _InputError(f"{where}: {exc}") from exc


def _load_code(obj, where: str) -> SplittingACode:
    """Build a code from JSON.

    Schema and distribution problems are input errors (exit 2); rule
    sets violating the code invariants are failed claims (exit 1) so
    that analyzing a damaged code names the broken property.
    """
    if not isinstance(obj, dict):
        raise _InputError(f"{where}: expected a JSON object")
    u = _require_int(obj, "u", where)
    v = _require_int(obj, "v", where)
    rules = _parse_blocks(obj.get("rules"), f"{where}: rules")
    key_dist = (
        _parse_dist(obj["key_dist"], f"{where}: key_dist")
        if "key_dist" in obj
        else ()
    )
    source_dist = (
        _parse_dist(obj["source_dist"], f"{where}: source_dist")
        if "source_dist" in obj
        else ()
    )
    split_dist = None
    if "split_dist" in obj:
        raw = obj["split_dist"]
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise _InputError(f"{where}: split_dist must be a list of lists")
        split_dist = tuple(
            tuple(_parse_dist(cell, f"{where}: split_dist") for cell in rule)
            for rule in raw
        )
    defects = rule_defects(rules, v)
    if defects:
        raise _ClaimError([f"structure: FAIL ({d})" for d in defects])
    if rules and len(rules[0]) != u:
        raise _ClaimError(
            [f"structure: FAIL (rules have {len(rules[0])} cells, expected u={u})"]
        )
    try:
        return SplittingACode(
            u=u,
            v=v,
            rules=rules,
            key_dist=key_dist,
            source_dist=source_dist,
            split_dist=split_dist,
        )
    except ValueError as exc:
        raise _InputError(f"{where}: {exc}") from exc


def _dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _family_json(family: BaseBlockFamily) -> str:
    return _dump_json(
        {
            "v": family.v,
            "u": family.u,
            "c": family.c,
            "base_blocks": [
                [list(part) for part in block] for block in family.base_blocks
            ],
        }
    )


def _design_json(design: SplittingDesign) -> str:
    obj = {
        "v": design.v,
        "t": design.t,
        "blocks": [[list(part) for part in block] for block in design.blocks],
    }
    if design.orbits:
        obj["orbit_lengths"] = list(design.orbit_lengths)
    return _dump_json(obj)


def _code_json(code: SplittingACode) -> str:
    obj = {
        "u": code.u,
        "v": code.v,
        "rules": [[list(cell) for cell in rule] for rule in code.rules],
        "key_dist": [str(p) for p in code.key_dist],
        "source_dist": [str(p) for p in code.source_dist],
    }
    if code.split_dist is not None:
        obj["split_dist"] = [
            [[str(p) for p in weights] for weights in rule]
            for rule in code.split_dist
        ]
    return _dump_json(obj)


_FOLD_NAMES = ("zero", "one", "two", "three", "four", "five", "six", "seven")


def _fold_name(i: int) -> str:
    return _FOLD_NAMES[i] if 0 <= i < len(_FOLD_NAMES) else str(i)


def _secrecy_failure(report: SecurityReport) -> str:
    table = report.posteriors
    if table.unreachable:
        shown = ", ".join(str(m) for m in table.unreachable[:5])
        return f"messages {{{shown}}} can never be sent"
    for (s, m), post in sorted(table.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if post != table.priors[s]:
            return (
                f"p(s{subscript(s)} | m={m}) = {post} differs from the "
                f"prior {table.priors[s]}"
            )
    return "no failure"


def _report_lines(
    code: SplittingACode,
    design_result: VerificationResult,
    report: SecurityReport,
    i_max: int,
) -> tuple[list[str], bool]:
    """Human-readable claim-by-claim report and the overall verdict."""
    lines: list[str] = []
    ok = True
    if design_result.ok and design_result.params is not None:
        params = design_result.params
        lines.append(f"rules form a splitting design: {params}, λ={params.lam}")
        if params.lam != 1:
            lines.append(f"λ-uniformity: FAIL (index λ={params.lam}, need 1)")
            ok = False
    else:
        lines.append("λ-uniformity: FAIL (" + design_result.defects[0] + ")")
        ok = False
    for i in range(i_max + 1):
        pd, bound = report.deception[i], report.bounds[i]
        if pd == bound:
            lines.append(f"P_d{i} = {pd} (floor {bound}, met exactly)")
        else:
            lines.append(f"P_d{i} = {pd} (floor {bound}, exceeded)")
            ok = False
    if report.level >= i_max:
        lines.append(f"{_fold_name(report.level)}-fold secure against spoofing")
    else:
        lines.append(
            f"security level: {report.level}, short of {_fold_name(i_max)}-fold"
        )
        ok = False
    floor = rule_count_floor(code, i_max + 1)
    if report.optimal is True:
        lines.append(
            f"encoding rules: {code.num_rules}, minimum possible: {floor}, optimal"
        )
    elif report.optimal is False:
        lines.append(
            f"encoding rules: {code.num_rules}, minimum possible: {floor}, "
            "NOT optimal"
        )
        ok = False
    else:
        lines.append(
            "optimality: not applicable (the rule-count floor requires "
            f"{_fold_name(i_max)}-fold security)"
        )
        ok = False
    if report.secrecy_ok:
        lines.append("perfect secrecy")
    else:
        lines.append("perfect secrecy: FAIL (" + _secrecy_failure(report) + ")")
        ok = False
    return lines, ok


def cmd_gen_family(args: argparse.Namespace) -> int:
    try:
        family = family_u2(args.c, args.n)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    _emit(_family_json(family), args.out)
    return 0


def cmd_develop(args: argparse.Namespace) -> int:
    obj = _read_json(args.input)
    family = _load_family(obj, args.input)
    design = develop_cyclic(family)
    for orbit in design.orbits:
        note = "full" if orbit.is_full else "short"
        print(
            f"orbit of base block {orbit.base_index + 1}: "
            f"length {orbit.length} ({note})",
            file=sys.stderr,
        )
    _emit(_design_json(design), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    obj = _read_json(args.input)
    design = _load_design(obj, args.input)
    t = args.strength if args.strength is not None else design.t
    try:
        result = verify_design(design, t)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    if result.ok and result.params is not None:
        _emit(f"{result.params}, λ={result.params.lam}\n", args.out)
        return 0
    raise _ClaimError([f"defect: {d}" for d in result.defects])


def cmd_to_code(args: argparse.Namespace) -> int:
    obj = _read_json(args.input)
    design = _load_design(obj, args.input)
    try:
        code = code_from_design(design)
    except ValueError as exc:
        raise _ClaimError([str(exc)]) from exc
    _emit(_code_json(code), args.out)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    obj = _read_json(args.input)
    code = _load_code(obj, args.input)
    i_max = args.orders
    if not 0 <= i_max <= code.u - 1:
        raise _InputError(
            f"--orders {i_max} out of range 0..{code.u - 1} for u={code.u} sources"
        )
    design = SplittingDesign(v=code.v, blocks=code.rules, t=i_max + 1)
    design_result = verify_design(design, i_max + 1)
    report = analyze(code, i_max=i_max)
    lines, ok = _report_lines(code, design_result, report, i_max)
    lines.append("PASS" if ok else "FAIL")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def cmd_export(args: argparse.Namespace) -> int:
    obj = _read_json(args.input)
    code = _load_code(obj, args.input)
    matrix = render_matrix(code)
    if args.format == "json":
        _emit(_code_json(code), args.out)
        return 0
    if args.format == "markdown":
        header = "| rule | " + " | ".join(matrix.source_labels) + " |"
        ruler = "| --- |" + " --- |" * code.u
        rows = [
            "| " + label + " | " + " | ".join(cells) + " |"
            for label, cells in zip(matrix.rule_labels, matrix.cells)
        ]
        _emit("\n".join([header, ruler, *rows]) + "\n", args.out)
        return 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rule"] + [f"s{j}" for j in range(1, code.u + 1)])
    for i, rule in enumerate(code.rules, start=1):
        writer.writerow(
            [f"e{i}"] + ["{" + ",".join(str(m) for m in cell) + "}" for cell in rule]
        )
    _emit(buffer.getvalue(), args.out)
    return 0


def cmd_demo(args: argparse.Namespace) -> int:
    n = {"table1": 1, "table2": 2}[args.which]
    design = develop_cyclic(family_u2(2, n))
    code = code_from_design(design)
    matrix = render_matrix(code, group_sizes=design.orbit_lengths)
    design_result = verify_design(design, 2)
    report = analyze(code, i_max=1)
    lines, ok = _report_lines(code, design_result, report, 1)
    lines.append("PASS" if ok else "FAIL")
    sys.stdout.write(matrix.render() + "\n\n" + "\n".join(lines) + "\n")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitauth",
        description=(
            "Construct splitting designs, convert them to splitting "
            "authentication codes, and verify security claims exactly."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "gen-family",
        help="generate the two-source base-block family for part size c, n blocks",
    )
    p.add_argument("c", type=int, help="part size (splitting number)")
    p.add_argument("n", type=int, help="number of base blocks")
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen_family)

    p = sub.add_parser(
        "develop", help="develop a base-block family cyclically into a design"
    )
    p.add_argument("input", help="family JSON path, or - for stdin")
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser(
        "verify", help="exhaustively verify a design (or a family, developed first)"
    )
    p.add_argument("input", help="design or family JSON path, or - for stdin")
    p.add_argument(
        "-t",
        "--strength",
        type=int,
        help="strength to verify at (default: the design's declared t, or 2)",
    )
    p.add_argument("-o", "--out", help="report path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "to-code",
        help="turn a verified index-1 design into a uniform authentication code",
    )
    p.add_argument("input", help="design or family JSON path, or - for stdin")
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_to_code)

    p = sub.add_parser(
        "analyze", help="exact security report for a code; exit 1 on any failed claim"
    )
    p.add_argument("input", help="code JSON path, or - for stdin")
    p.add_argument(
        "--orders",
        type=int,
        default=1,
        help="largest spoofing order to check (default 1)",
    )
    p.add_argument("-o", "--out", help="report path (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export", help="export a code's encoding matrix")
    p.add_argument("input", help="code JSON path, or - for stdin")
    p.add_argument(
        "-f",
        "--format",
        choices=("csv", "markdown", "json"),
        default="csv",
        help="output format (default csv)",
    )
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser(
        "demo",
        help="rebuild a reference code, print its matrix and full security report",
    )
    p.add_argument("which", choices=("table1", "table2"))
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ClaimError as exc:
        print("\n".join(exc.lines + ["FAIL"]))
        return 1
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
